#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pfcorr/params.hpp"
#include "pfcorr/useries.hpp"

using namespace pfcorr;

namespace {

USeries random_series(std::mt19937& rng, int order) {
    USeries s(order);
    for (int k = 0; k <= order; ++k) {
        long num = static_cast<long>(rng() % 9) - 4;
        long den = 1 + static_cast<long>(rng() % 3);
        s.coeff_mut(k) = GaussianRational(Rational(num, den), Rational(static_cast<long>(rng() % 3) - 1));
    }
    return s;
}

ParameterSet random_params(std::mt19937& rng) {
    ParameterSet p;
    size_t nq = rng() % 4, nr = rng() % 4;
    for (size_t i = 0; i < nq; ++i) p.q.emplace_back(static_cast<long>(rng() % 5) - 2, 1 + static_cast<long>(rng() % 3));
    for (size_t i = 0; i < nr; ++i) p.r.emplace_back(static_cast<long>(rng() % 5) - 2, 1 + static_cast<long>(rng() % 3));
    p.gamma = Rational(static_cast<long>(rng() % 3) - 1, 1 + static_cast<long>(rng() % 2));
    return p;
}

}  // namespace

TEST_CASE("rational parsing and normalization") {
    CHECK(Rational::parse("2/4") == Rational(1, 2));
    CHECK(Rational::parse("-6/4") == Rational(-3, 2));
    CHECK(Rational::parse("7") == Rational(7));
    CHECK(Rational::parse("-3/2").str() == "-3/2");
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK_THROWS_AS(Rational::parse("1.5"), ParseError);
    CHECK_THROWS_AS(Rational::parse(""), ParseError);
    CHECK_THROWS_AS(Rational(1, 0), InvertNonUnit);
    CHECK(Rational(3, 4).pow(0) == Rational(1));
    CHECK(Rational(0).pow(0) == Rational(1));
    CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
}

TEST_CASE("gaussian rational field ops") {
    GaussianRational i = GaussianRational::i();
    CHECK(i * i == GaussianRational(-1));
    GaussianRational z(Rational(1, 2), Rational(-1, 3));
    CHECK(z * z.inverse() == GaussianRational(1));
    CHECK((z + z.conj()).im.is_zero());
    CHECK(i_power(5) == i);
    CHECK(i_power(-1) == -i);
    CHECK(i_power(2) == GaussianRational(-1));
}

TEST_CASE("series identities from the contract") {
    int n = 8;
    USeries one_plus_u = USeries::one(n) + USeries::monomial(GaussianRational(1), 1, n);
    USeries one_minus_u = USeries::one(n) - USeries::monomial(GaussianRational(1), 1, n);
    USeries prod = one_plus_u * one_minus_u;
    USeries expect = USeries::one(n) - USeries::monomial(GaussianRational(1), 2, n);
    CHECK(prod == expect);

    USeries inv = one_minus_u.truncated(3).inverted();
    for (int k = 0; k <= 3; ++k) CHECK(inv.coeff(k) == GaussianRational(1));

    USeries one_minus_u2 = USeries::one(8) - USeries::monomial(GaussianRational(1), 2, 8);
    CHECK(one_minus_u2 * one_minus_u2.inverted() == USeries::one(8));

    CHECK_THROWS_AS(USeries::monomial(GaussianRational(1), 1, 4).inverted(), InvertNonUnit);
}

TEST_CASE("order mismatch truncates to the smaller order") {
    USeries a = USeries::monomial(GaussianRational(1), 5, 9);
    USeries b = USeries::one(3);
    USeries s = a + b;
    CHECK(s.order() == 3);
    CHECK(s == USeries::one(3));
    CHECK(a == USeries::zero(3));  // equality compares through the smaller order
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937 rng(12);
    for (int rep = 0; rep < 40; ++rep) {
        USeries a = random_series(rng, 12), b = random_series(rng, 12), c = random_series(rng, 12);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == USeries::zero(12));
    }
}

TEST_CASE("series sqrt") {
    std::mt19937 rng(5);
    for (int rep = 0; rep < 10; ++rep) {
        USeries a = random_series(rng, 10);
        a.coeff_mut(0) = GaussianRational(1);
        USeries sq = a * a;
        CHECK(sq.sqrt_with_constant(GaussianRational(1)) == a);
    }
}

TEST_CASE("e-sequence examples") {
    ParameterSet p1{{Rational(1)}, {}, Rational(0)};
    auto e1 = e_sequence(p1, 3);
    CHECK(e1 == ESequence{Rational(1), Rational(1), Rational(0), Rational(0)});

    ParameterSet p2{{}, {Rational(1, 2)}, Rational(0)};
    auto e2 = e_sequence(p2, 3);
    CHECK(e2 == ESequence{Rational(1), Rational(1, 2), Rational(1, 4), Rational(1, 8)});

    ParameterSet p3{{}, {}, Rational(1)};
    auto e3 = e_sequence(p3, 3);
    CHECK(e3 == ESequence{Rational(1), Rational(1), Rational(1, 2), Rational(1, 6)});
}

TEST_CASE("e-inverse sequence examples and convolution identity") {
    ParameterSet empty;
    auto einv_empty = e_inverse_sequence(empty, 4);
    CHECK(einv_empty[0] == Rational(1));
    for (int j = 1; j <= 4; ++j) CHECK(einv_empty[static_cast<size_t>(j)] == Rational(0));

    ParameterSet p1{{Rational(1)}, {}, Rational(0)};
    auto inv1 = e_inverse_sequence(p1, 3);
    CHECK(inv1 == ESequence{Rational(1), Rational(-1), Rational(1), Rational(-1)});

    std::mt19937 rng(77);
    for (int rep = 0; rep < 20; ++rep) {
        ParameterSet p = random_params(rng);
        auto e = e_sequence(p, 8);
        auto inv = e_inverse_sequence(p, 8);
        for (int nn = 0; nn <= 8; ++nn) {
            Rational acc(0);
            for (int k = 0; k <= nn; ++k) acc += e[static_cast<size_t>(k)] * inv[static_cast<size_t>(nn - k)];
            CHECK(acc == (nn == 0 ? Rational(1) : Rational(0)));
        }
    }
}

TEST_CASE("conjugation swaps the parameter lists and fixes gamma") {
    ParameterSet p{{Rational(1)}, {}, Rational(0)};
    ParameterSet c = p.conjugated();
    CHECK(c.q.empty());
    CHECK(c.r.size() == 1);
    CHECK(c.r[0] == Rational(1));

    ParameterSet g{{}, {}, Rational(2)};
    CHECK(g.conjugated().gamma == Rational(2));

    ParameterSet mixed{{Rational(1, 2)}, {Rational(1, 3)}, Rational(1)};
    ParameterSet twice = mixed.conjugated().conjugated();
    CHECK(twice.q == mixed.q);
    CHECK(twice.r == mixed.r);
    CHECK(twice.gamma == mixed.gamma);
}

TEST_CASE("e-sequence of a disjoint union is the convolution") {
    std::mt19937 rng(99);
    for (int rep = 0; rep < 10; ++rep) {
        ParameterSet a = random_params(rng), b = random_params(rng);
        auto ea = e_sequence(a, 8), eb = e_sequence(b, 8);
        auto eu = e_sequence(ParameterSet::disjoint_union(a, b), 8);
        for (int nn = 0; nn <= 8; ++nn) {
            Rational acc(0);
            for (int k = 0; k <= nn; ++k) acc += ea[static_cast<size_t>(k)] * eb[static_cast<size_t>(nn - k)];
            CHECK(acc == eu[static_cast<size_t>(nn)]);
        }
    }
}

TEST_CASE("conjugate spec is the h-sequence") {
    // For p = {q:[a]}, E(z;p') = 1/(1-az): h_j = a^j.
    ParameterSet p{{Rational(1, 2)}, {}, Rational(0)};
    Spec s = Spec::from_params(p, 6);
    Spec c = s.conjugated();
    for (long j = 0; j <= 6; ++j) CHECK(c.at(j) == GaussianRational(Rational(1, 2).pow(j)));
    Spec viaParams = Spec::from_params(p.conjugated(), 6);
    for (long j = 0; j <= 6; ++j) CHECK(c.at(j) == viaParams.at(j));
}

TEST_CASE("substituted sequences") {
    ParameterSet p{{Rational(1)}, {}, Rational(0)};
    Spec uu = Spec::uu_substituted(p, 8);
    CHECK(uu.at(0) == GaussianRational(1));
    CHECK(uu.at(1) == GaussianRational(0));
    CHECK(uu.at(2) == GaussianRational(-1));
    CHECK(uu.at(4) == GaussianRational(0));

    Spec rot = Spec::rot_substituted(p, 8);
    CHECK(rot.at(2) == GaussianRational::i());
    CHECK(rot.at(4) == GaussianRational(0));  // e_2 = 0 for a single q-parameter
}
