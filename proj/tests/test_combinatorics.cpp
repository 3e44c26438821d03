#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <vector>

#include "pfcorr/partition.hpp"

using namespace pfcorr;

namespace {

// Independent oracle: partition counts by the pentagonal-number recurrence.
std::vector<long> partition_counts(long n) {
    std::vector<long> p(static_cast<size_t>(n) + 1, 0);
    p[0] = 1;
    for (long m = 1; m <= n; ++m) {
        long acc = 0;
        for (long k = 1;; ++k) {
            long g1 = k * (3 * k - 1) / 2;
            long g2 = k * (3 * k + 1) / 2;
            if (g1 > m && g2 > m) break;
            long sign = (k % 2 == 1) ? 1 : -1;
            if (g1 <= m) acc += sign * p[static_cast<size_t>(m - g1)];
            if (g2 <= m) acc += sign * p[static_cast<size_t>(m - g2)];
        }
        p[static_cast<size_t>(m)] = acc;
    }
    return p;
}

// Brute-force count of semistandard tableaux of the given shape with
// entries <= n, by row-filling backtracking.
long ssyt_count(const Partition& shape, long n) {
    std::vector<std::vector<long>> rows(static_cast<size_t>(shape.size()));
    long total = 0;
    auto rec = [&](auto&& self, long r, long c) -> void {
        if (r == shape.size()) {
            ++total;
            return;
        }
        long len = shape.part(r + 1);
        long next_r = r, next_c = c + 1;
        if (next_c == len) {
            next_r = r + 1;
            next_c = 0;
        }
        long lo = 1;
        if (c > 0) lo = std::max(lo, rows[static_cast<size_t>(r)][static_cast<size_t>(c - 1)]);
        if (r > 0) lo = std::max(lo, rows[static_cast<size_t>(r - 1)][static_cast<size_t>(c)] + 1);
        for (long v = lo; v <= n; ++v) {
            rows[static_cast<size_t>(r)].push_back(v);
            self(self, next_r, next_c);
            rows[static_cast<size_t>(r)].pop_back();
        }
    };
    rec(rec, 0, 0);
    return total;
}

}  // namespace

TEST_CASE("enumeration examples and counts") {
    auto p0 = enumerate_partitions(0);
    REQUIRE(p0.size() == 1);
    CHECK(p0[0].parts.empty());

    auto p3 = enumerate_partitions(3);
    REQUIRE(p3.size() == 7);
    CHECK(p3[1] == Partition({1}));
    CHECK(p3[2] == Partition({2}));
    CHECK(p3[3] == Partition({1, 1}));
    CHECK(p3[4] == Partition({3}));
    CHECK(p3[5] == Partition({2, 1}));
    CHECK(p3[6] == Partition({1, 1, 1}));

    auto counts = partition_counts(8);
    long expect = 0;
    for (long c : counts) expect += c;
    CHECK(enumerate_partitions(8).size() == static_cast<size_t>(expect));
    CHECK(expect == 67);
}

TEST_CASE("conjugation") {
    CHECK(Partition({3, 2, 2}).conjugate() == Partition({3, 3, 1}));
    CHECK(Partition().conjugate() == Partition());
    CHECK(Partition({1, 1, 1, 1}).conjugate() == Partition({4}));
    for (const auto& lam : enumerate_partitions(12))
        CHECK(lam.conjugate().conjugate() == lam);
}

TEST_CASE("frobenius coordinates") {
    auto fc = frobenius(Partition({3, 2, 2}));
    CHECK(fc.alpha == std::vector<long>{2, 0});
    CHECK(fc.beta == std::vector<long>{2, 1});
    CHECK(frobenius(Partition({1})).alpha == std::vector<long>{0});
    CHECK(frobenius(Partition()).length() == 0);
    for (const auto& lam : enumerate_partitions(12))
        CHECK(from_frobenius(frobenius(lam)) == lam);
}

TEST_CASE("shape classes") {
    CHECK(shape_class(Partition({2, 2})) == ShapeClass::FrobZero);
    CHECK(shape_class(Partition({1, 1})) == ShapeClass::FrobMinus);
    CHECK(shape_class(Partition({2})) == ShapeClass::FrobPlus);
    CHECK(in_shape_class(Partition(), ShapeClass::FrobMinus));
    CHECK(in_shape_class(Partition(), ShapeClass::FrobPlus));
    CHECK(in_shape_class(Partition(), ShapeClass::FrobZero));
    CHECK(!in_shape_class(Partition({2}), ShapeClass::FrobMinus));
}

TEST_CASE("descent membership") {
    Partition empty;
    CHECK(!descent_member(empty, 0));
    CHECK(descent_member(empty, -1));
    CHECK(descent_member(empty, -2));

    Partition one({1});
    CHECK(descent_member(one, 0));
    CHECK(!descent_member(one, -1));
    CHECK(descent_member(one, -2));

    Partition p31({3, 1});
    CHECK(descent_window(p31, -4, 3) == std::vector<long>{-4, -3, -1, 2});
}

TEST_CASE("balance check") {
    CHECK(balance_check(Partition()) == std::pair<long, long>{0, 0});
    CHECK(balance_check(Partition({3, 1})) == std::pair<long, long>{1, 1});
    CHECK(balance_check(Partition({4, 4, 2})) == std::pair<long, long>{2, 2});
    for (const auto& lam : enumerate_partitions(12)) {
        auto [a, b] = balance_check(lam);
        CHECK(a == b);
    }
}

TEST_CASE("partition stats") {
    auto s22 = partition_stats(Partition({2, 2}));
    CHECK(s22.f_even_conj == 2);
    CHECK(s22.odd_parts == 0);
    auto s31 = partition_stats(Partition({3, 1}));
    CHECK(s31.f_even_conj == 1);
    CHECK(s31.odd_parts == 2);
    auto se = partition_stats(Partition());
    CHECK(se.f_even_conj == 0);
    CHECK(se.odd_parts == 0);
    CHECK(se.weight == 0);
}

TEST_CASE("schur dual weights") {
    ParameterSet q1{{Rational(1)}, {}, Rational(0)};
    CHECK(schur_dual_weight(Partition(), q1, 8) == USeries::one(8));
    CHECK(schur_dual_weight(Partition({1}), q1, 8) == USeries::monomial(GaussianRational(1), 1, 8));

    ParameterSet q11{{Rational(1), Rational(1)}, {}, Rational(0)};
    CHECK(schur_dual_weight(Partition({2, 1}), q11, 8) == USeries::monomial(GaussianRational(2), 3, 8));

    // Cross-check against tableau enumeration: weight is u^{|lam|} times the
    // number of SSYT of shape lam' with entries <= n, at q = (1,...,1).
    for (long n = 1; n <= 3; ++n) {
        ParameterSet p;
        for (long i = 0; i < n; ++i) p.q.emplace_back(1);
        for (const auto& lam : enumerate_partitions(6)) {
            USeries w = schur_dual_weight(lam, p, 8);
            long count = ssyt_count(lam.conjugate(), n);
            CHECK(w == USeries::monomial(GaussianRational(count), lam.weight(), 8));
        }
    }
}

TEST_CASE("schur weight vanishes when columns exceed the variable count") {
    ParameterSet p{{Rational(1), Rational(2)}, {}, Rational(0)};
    for (const auto& lam : enumerate_partitions(8)) {
        if (lam.part(1) > 2) CHECK(schur_dual_weight(lam, p, 8).is_zero());
    }
}
