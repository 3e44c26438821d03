#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pfcorr/linalg.hpp"

using namespace pfcorr;

namespace {

const GaussianField F{};

// Independent oracle: cofactor expansion along the first row.
template <class R>
typename R::V cofactor_det(const Matrix<typename R::V>& m, const R& ring) {
    long n = m.n_rows;
    if (n == 0) return ring.one();
    if (n == 1) return m.at(0, 0);
    typename R::V acc = ring.zero();
    for (long j = 0; j < n; ++j) {
        Matrix<typename R::V> sub(n - 1, n - 1, ring.zero());
        for (long r = 1; r < n; ++r)
            for (long c = 0, cc = 0; c < n; ++c) {
                if (c == j) continue;
                sub.at(r - 1, cc++) = m.at(r, c);
            }
        auto t = m.at(0, j) * cofactor_det(sub, ring);
        acc += (j % 2 == 0) ? t : ring.zero() - t;
    }
    return acc;
}

Matrix<GaussianRational> random_matrix(std::mt19937& rng, long n) {
    Matrix<GaussianRational> m(n, n, GaussianRational{});
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            m.at(i, j) = GaussianRational(Rational(static_cast<long>(rng() % 9) - 4),
                                          Rational(static_cast<long>(rng() % 3) - 1));
    return m;
}

Matrix<GaussianRational> random_antisym(std::mt19937& rng, long n) {
    Matrix<GaussianRational> m(n, n, GaussianRational{});
    for (long i = 0; i < n; ++i)
        for (long j = i + 1; j < n; ++j) {
            m.at(i, j) = GaussianRational(Rational(static_cast<long>(rng() % 9) - 4));
            m.at(j, i) = -m.at(i, j);
        }
    return m;
}

Matrix<USeries> random_series_antisym(std::mt19937& rng, long n, int order) {
    Matrix<USeries> m(n, n, USeries::zero(order));
    for (long i = 0; i < n; ++i)
        for (long j = i + 1; j < n; ++j) {
            USeries s(order);
            for (int k = 0; k <= order; ++k)
                s.coeff_mut(k) = GaussianRational(Rational(static_cast<long>(rng() % 7) - 3));
            m.at(i, j) = s;
            m.at(j, i) = -s;
        }
    return m;
}

}  // namespace

TEST_CASE("determinant basics") {
    SeriesRing ring(6);
    auto id = identity_matrix(3, ring);
    CHECK(det_berkowitz(id, ring) == ring.one());

    Matrix<USeries> m(2, 2, ring.zero());
    USeries a = USeries::monomial(GaussianRational(2), 1, 6) + USeries::one(6);
    m.at(0, 1) = a;
    m.at(1, 0) = -a;
    CHECK(det_berkowitz(m, ring) == a * a);
    CHECK_THROWS_AS(det_berkowitz(Matrix<USeries>(2, 3, ring.zero()), ring), NonSquare);
}

TEST_CASE("berkowitz matches the cofactor oracle") {
    std::mt19937 rng(3);
    for (long n = 1; n <= 5; ++n)
        for (int rep = 0; rep < 6; ++rep) {
            auto m = random_matrix(rng, n);
            CHECK(det_berkowitz(m, F) == cofactor_det(m, F));
            CHECK(field_det(m) == cofactor_det(m, F));
        }
}

TEST_CASE("elimination determinant agrees with berkowitz over the series ring") {
    std::mt19937 rng(17);
    SeriesRing ring(8);
    for (int rep = 0; rep < 6; ++rep) {
        long n = 4;
        Matrix<USeries> m(n, n, ring.zero());
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) {
                USeries s(8);
                for (int k = 0; k <= 8; ++k)
                    s.coeff_mut(k) = GaussianRational(Rational(static_cast<long>(rng() % 7) - 3));
                if (i == j) s.coeff_mut(0) = GaussianRational(1);  // keep pivots available
                m.at(i, j) = s;
            }
        CHECK(det_elimination(m, ring) == det_berkowitz(m, ring));
    }
}

TEST_CASE("pfaffian conventions and formulas") {
    SeriesRing ring(6);
    Matrix<USeries> empty(0, 0, ring.zero());
    CHECK(pfaffian_memo(empty, ring) == ring.one());

    Matrix<USeries> odd(3, 3, ring.zero());
    CHECK(pfaffian_memo(odd, ring) == ring.zero());

    USeries a = USeries::monomial(GaussianRational(3), 2, 6);
    Matrix<USeries> two(2, 2, ring.zero());
    two.at(0, 1) = a;
    two.at(1, 0) = -a;
    CHECK(pfaffian_memo(two, ring) == a);

    // 4x4 classical formula pf = af - be + cd for upper entries a..f.
    std::mt19937 rng(9);
    auto m = random_antisym(rng, 4);
    GaussianRational pf = m.at(0, 1) * m.at(2, 3) - m.at(0, 2) * m.at(1, 3) + m.at(0, 3) * m.at(1, 2);
    CHECK(pfaffian_memo(m, F) == pf);

    Matrix<USeries> bad(2, 2, ring.zero());
    bad.at(0, 1) = a;
    CHECK_THROWS_AS(pfaffian_memo(bad, ring), NotAntisymmetric);
}

TEST_CASE("pf squared equals det") {
    std::mt19937 rng(21);
    for (long n : {2L, 4L, 6L, 8L}) {
        auto m = random_antisym(rng, n);
        auto pf = pfaffian_memo(m, F);
        CHECK(pf * pf == field_det(m));
    }
    SeriesRing ring(8);
    for (long n : {2L, 4L, 6L}) {
        auto m = random_series_antisym(rng, n, 8);
        auto pf = pfaffian_memo(m, ring);
        CHECK(pf * pf == det_berkowitz(m, ring));
    }
}

TEST_CASE("pf(B A B^t) = det(B) pf(A)") {
    std::mt19937 rng(31);
    for (long n : {2L, 4L, 6L}) {
        auto a = random_antisym(rng, n);
        auto b = random_matrix(rng, n);
        auto bab = b * a * b.transposed();
        CHECK(pfaffian_memo(bab, F) == field_det(b) * pfaffian_memo(a, F));
    }
}

TEST_CASE("pfaffian invariant under simultaneous block reordering") {
    std::mt19937 rng(41);
    auto m = random_series_antisym(rng, 8, 6);
    SeriesRing ring(6);
    auto pf = pfaffian_memo(m, ring);
    // Swap point blocks {0,1} and {2,3} simultaneously in rows and columns.
    Matrix<USeries> p(8, 8, ring.zero());
    std::vector<long> perm{2, 3, 0, 1, 4, 5, 6, 7};
    Matrix<USeries> m2(8, 8, ring.zero());
    for (long i = 0; i < 8; ++i)
        for (long j = 0; j < 8; ++j) m2.at(i, j) = m.at(perm[i], perm[j]);
    (void)p;
    CHECK(pfaffian_memo(m2, ring) == pf);
}

TEST_CASE("elimination pfaffian agrees with the subset expansion") {
    std::mt19937 rng(51);
    SeriesRing ring(8);
    for (int rep = 0; rep < 5; ++rep) {
        long n = 8;
        auto m = random_series_antisym(rng, n, 8);
        for (long i = 0; i + 1 < n; i += 2) {
            m.at(i, i + 1) += USeries::one(8);  // make the constant part nonsingular
            m.at(i + 1, i) -= USeries::one(8);
        }
        CHECK(pfaffian_elimination(m, ring) == pfaffian_memo(m, ring));
    }
}

TEST_CASE("inverse via adjugate") {
    SeriesRing ring(8);
    auto id = identity_matrix(3, ring);
    CHECK(matrices_equal(inverse_unit(id, ring), id, ring));

    Matrix<USeries> m(2, 2, ring.zero());
    m.at(0, 0) = ring.one();
    m.at(1, 1) = ring.one();
    m.at(0, 1) = USeries::monomial(GaussianRational(1), 1, 8);
    auto inv = inverse_unit(m, ring);
    CHECK(inv.at(0, 1) == -m.at(0, 1));
    CHECK(matrices_equal(m * inv, identity_matrix(2, ring), ring));

    std::mt19937 rng(61);
    Matrix<USeries> r(4, 4, ring.zero());
    for (long i = 0; i < 4; ++i)
        for (long j = 0; j < 4; ++j) {
            USeries s(8);
            for (int k = 1; k <= 8; ++k)
                s.coeff_mut(k) = GaussianRational(Rational(static_cast<long>(rng() % 5) - 2));
            if (i == j) s.coeff_mut(0) = GaussianRational(1);
            r.at(i, j) = s;
        }
    CHECK(matrices_equal(r * inverse_unit(r, ring), identity_matrix(4, ring), ring));

    Matrix<USeries> sing(2, 2, ring.zero());
    sing.at(0, 1) = USeries::monomial(GaussianRational(1), 1, 8);
    sing.at(1, 0) = USeries::monomial(GaussianRational(1), 1, 8);
    CHECK_THROWS_AS(inverse_unit(sing, ring), SingularConstantTerm);
}

TEST_CASE("principal minor") {
    SeriesRing ring(4);
    auto id = identity_matrix(4, ring);
    CHECK(matrices_equal(principal_minor(id, 2), identity_matrix(2, ring), ring));
    CHECK_THROWS_AS(principal_minor(id, 5), IndexOutOfRange);
}
