#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "pfcorr/errors.hpp"
#include "pfcorr/gaussian.hpp"
#include "pfcorr/useries.hpp"

namespace pfcorr {

template <class V>
struct Matrix {
    long n_rows = 0;
    long n_cols = 0;
    std::vector<V> a;

    Matrix() = default;
    Matrix(long rows, long cols, const V& fill)
        : n_rows(rows), n_cols(cols), a(static_cast<size_t>(rows * cols), fill) {}
    Matrix(long rows, long cols) : Matrix(rows, cols, V{}) {}

    V& at(long i, long j) { return a[static_cast<size_t>(i * n_cols + j)]; }
    const V& at(long i, long j) const { return a[static_cast<size_t>(i * n_cols + j)]; }

    bool square() const { return n_rows == n_cols; }

    Matrix transposed() const {
        Matrix t(n_cols, n_rows, a.empty() ? V{} : a[0]);
        for (long i = 0; i < n_rows; ++i)
            for (long j = 0; j < n_cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    void swap_rows(long i, long j) {
        for (long c = 0; c < n_cols; ++c) std::swap(at(i, c), at(j, c));
    }
    void swap_cols(long i, long j) {
        for (long r = 0; r < n_rows; ++r) std::swap(at(r, i), at(r, j));
    }
};

/// Coefficient-ring context for the truncated series ring.
struct SeriesRing {
    int order;
    using V = USeries;
    explicit SeriesRing(int n) : order(n) {}
    USeries zero() const { return USeries::zero(order); }
    USeries one() const { return USeries::one(order); }
    bool is_unit(const USeries& s) const { return !s.constant_term().is_zero(); }
    bool is_zero(const USeries& s) const { return s.is_zero(); }
    USeries inv(const USeries& s) const { return s.inverted(); }
    static constexpr bool field = false;
};

struct GaussianField {
    using V = GaussianRational;
    GaussianRational zero() const { return {}; }
    GaussianRational one() const { return GaussianRational(1); }
    bool is_unit(const GaussianRational& x) const { return !x.is_zero(); }
    bool is_zero(const GaussianRational& x) const { return x.is_zero(); }
    GaussianRational inv(const GaussianRational& x) const { return x.inverse(); }
    static constexpr bool field = true;
};

template <class R>
Matrix<typename R::V> identity_matrix(long n, const R& ring) {
    Matrix<typename R::V> m(n, n, ring.zero());
    for (long i = 0; i < n; ++i) m.at(i, i) = ring.one();
    return m;
}

template <class V>
Matrix<V> operator*(const Matrix<V>& x, const Matrix<V>& y) {
    if (x.n_cols != y.n_rows) throw NonSquare("matrix product dimension mismatch");
    Matrix<V> z(x.n_rows, y.n_cols, x.a.empty() ? V{} : x.a[0] - x.a[0]);
    for (long i = 0; i < x.n_rows; ++i)
        for (long k = 0; k < x.n_cols; ++k)
            for (long j = 0; j < y.n_cols; ++j) z.at(i, j) += x.at(i, k) * y.at(k, j);
    return z;
}

template <class V>
Matrix<V> operator+(const Matrix<V>& x, const Matrix<V>& y) {
    Matrix<V> z = x;
    for (size_t i = 0; i < z.a.size(); ++i) z.a[i] += y.a[i];
    return z;
}

template <class V>
Matrix<V> operator-(const Matrix<V>& x, const Matrix<V>& y) {
    Matrix<V> z = x;
    for (size_t i = 0; i < z.a.size(); ++i) z.a[i] -= y.a[i];
    return z;
}

template <class R>
bool matrices_equal(const Matrix<typename R::V>& x, const Matrix<typename R::V>& y, const R& ring) {
    if (x.n_rows != y.n_rows || x.n_cols != y.n_cols) return false;
    for (size_t i = 0; i < x.a.size(); ++i)
        if (!ring.is_zero(x.a[i] - y.a[i])) return false;
    return true;
}

/// Top-left m x m section.
template <class V>
Matrix<V> principal_minor(const Matrix<V>& m, long size) {
    if (size > m.n_rows || size > m.n_cols) throw IndexOutOfRange("principal minor larger than matrix");
    Matrix<V> s(size, size, m.a.empty() ? V{} : m.a[0]);
    for (long i = 0; i < size; ++i)
        for (long j = 0; j < size; ++j) s.at(i, j) = m.at(i, j);
    return s;
}

/// Division-free determinant (Samuelson-Berkowitz), valid over any
/// commutative ring including rings with zero divisors.
template <class R>
typename R::V det_berkowitz(const Matrix<typename R::V>& m, const R& ring) {
    using V = typename R::V;
    if (!m.square()) throw NonSquare();
    long n = m.n_rows;
    if (n == 0) return ring.one();
    // vect holds the characteristic polynomial coefficients of the leading
    // minor processed so far, highest degree first.
    std::vector<V> vect{ring.one(), ring.zero() - m.at(0, 0)};
    for (long i = 1; i < n; ++i) {
        // First column of the Toeplitz factor: 1, -A[i][i], -(R C), -(R M C), ...
        std::vector<V> col;
        col.reserve(static_cast<size_t>(i) + 2);
        col.push_back(ring.one());
        col.push_back(ring.zero() - m.at(i, i));
        std::vector<V> tmp(static_cast<size_t>(i), ring.zero());
        for (long k = 0; k < i; ++k) tmp[static_cast<size_t>(k)] = m.at(k, i);
        for (long step = 0; step < i; ++step) {
            V dot = ring.zero();
            for (long k = 0; k < i; ++k) dot += m.at(i, k) * tmp[static_cast<size_t>(k)];
            col.push_back(ring.zero() - dot);
            if (step + 1 < i) {
                std::vector<V> next(static_cast<size_t>(i), ring.zero());
                for (long r = 0; r < i; ++r)
                    for (long c = 0; c < i; ++c) next[static_cast<size_t>(r)] += m.at(r, c) * tmp[static_cast<size_t>(c)];
                tmp = std::move(next);
            }
        }
        std::vector<V> next(col.size(), ring.zero());
        for (size_t r = 0; r < col.size(); ++r)
            for (size_t c = 0; c < vect.size() && c <= r; ++c) next[r] += col[r - c] * vect[c];
        vect = std::move(next);
    }
    V det = vect.back();
    if (n % 2 == 1) det = ring.zero() - det;
    return det;
}

/// Elimination determinant; pivots must be units (exact over the truncated
/// ring because division happens only by invertible elements). Throws
/// SingularConstantTerm when no unit pivot is available but the matrix is
/// not visibly singular.
template <class R>
typename R::V det_elimination(Matrix<typename R::V> m, const R& ring) {
    using V = typename R::V;
    if (!m.square()) throw NonSquare();
    long n = m.n_rows;
    V det = ring.one();
    int sign = 1;
    for (long k = 0; k < n; ++k) {
        long piv = -1, nz = -1;
        for (long i = k; i < n; ++i) {
            if (!ring.is_zero(m.at(i, k)) && nz < 0) nz = i;
            if (ring.is_unit(m.at(i, k))) {
                piv = i;
                break;
            }
        }
        if (piv < 0) {
            if (nz < 0) return ring.zero();  // column is exactly zero
            throw SingularConstantTerm("no unit pivot in elimination");
        }
        if (piv != k) {
            m.swap_rows(piv, k);
            sign = -sign;
        }
        V inv = ring.inv(m.at(k, k));
        det = det * m.at(k, k);
        for (long i = k + 1; i < n; ++i) {
            if (ring.is_zero(m.at(i, k))) continue;
            V f = m.at(i, k) * inv;
            for (long j = k; j < n; ++j) m.at(i, j) -= f * m.at(k, j);
        }
    }
    return sign < 0 ? ring.zero() - det : det;
}

/// Field determinant (rational/Gaussian entries): plain elimination.
template <class R>
typename R::V field_det(Matrix<typename R::V> m, const R& ring) {
    static_assert(R::field);
    return det_elimination(std::move(m), ring);
}

inline GaussianRational field_det(Matrix<GaussianRational> m) {
    return det_elimination(std::move(m), GaussianField{});
}

/// Default determinant: division-free for small sections, unit-pivot
/// elimination for larger ones (falling back to Berkowitz if a pivot is
/// missing).
template <class R>
typename R::V det(const Matrix<typename R::V>& m, const R& ring) {
    if (m.n_rows <= 12) return det_berkowitz(m, ring);
    try {
        return det_elimination(m, ring);
    } catch (const SingularConstantTerm&) {
        return det_berkowitz(m, ring);
    }
}

template <class R>
void check_antisymmetric(const Matrix<typename R::V>& m, const R& ring) {
    if (!m.square()) throw NonSquare();
    for (long i = 0; i < m.n_rows; ++i)
        for (long j = i; j < m.n_cols; ++j)
            if (!ring.is_zero(m.at(i, j) + m.at(j, i))) throw NotAntisymmetric();
}

/// Subset-memoized pfaffian (division-free first-row expansion).
/// Odd dimension gives 0; the 0x0 pfaffian is 1.
template <class R>
typename R::V pfaffian_memo(const Matrix<typename R::V>& m, const R& ring) {
    using V = typename R::V;
    check_antisymmetric(m, ring);
    long n = m.n_rows;
    if (n == 0) return ring.one();
    if (n % 2 == 1) return ring.zero();
    if (n > 22) throw Error("pfaffian_memo: dimension too large for subset expansion");
    std::unordered_map<std::uint32_t, V> memo;
    auto rec = [&](auto&& self, std::uint32_t mask) -> V {
        if (mask == 0) return ring.one();
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        long first = 0;
        while (!(mask & (1u << first))) ++first;
        V acc = ring.zero();
        std::uint32_t rest0 = mask & ~(1u << first);
        int sgn = 1;
        for (long j = first + 1; j < n; ++j) {
            if (!(rest0 & (1u << j))) continue;
            if (!ring.is_zero(m.at(first, j))) {
                V sub = self(self, rest0 & ~(1u << j));
                V term = m.at(first, j) * sub;
                acc += (sgn > 0 ? term : ring.zero() - term);
            }
            sgn = -sgn;
        }
        memo.emplace(mask, acc);
        return acc;
    };
    std::uint32_t full = (n >= 32) ? 0xffffffffu : ((1u << n) - 1u);
    return rec(rec, full);
}

/// Elimination pfaffian with unit pivots; sound over the truncated ring.
/// Falls back (by throwing SingularConstantTerm) when the constant-term
/// matrix cannot supply a unit pivot.
template <class R>
typename R::V pfaffian_elimination(Matrix<typename R::V> m, const R& ring) {
    using V = typename R::V;
    check_antisymmetric(m, ring);
    long n = m.n_rows;
    if (n % 2 == 1) return ring.zero();
    V result = ring.one();
    int sign = 1;
    long base = 0;
    while (base < n) {
        // Find a unit entry in the remaining block and move it to (base, base+1).
        long pi = -1, pj = -1;
        bool any_nonzero = false;
        for (long i = base; i < n && pi < 0; ++i)
            for (long j = i + 1; j < n; ++j) {
                if (!ring.is_zero(m.at(i, j))) any_nonzero = true;
                if (ring.is_unit(m.at(i, j))) {
                    pi = i;
                    pj = j;
                    break;
                }
            }
        if (pi < 0) {
            if (!any_nonzero) return ring.zero();  // remaining block is exactly zero
            throw SingularConstantTerm("no unit pivot in pfaffian elimination");
        }
        if (pi != base) {
            m.swap_rows(pi, base);
            m.swap_cols(pi, base);
            sign = -sign;
            if (pj == base) pj = pi;
        }
        if (pj != base + 1) {
            m.swap_rows(pj, base + 1);
            m.swap_cols(pj, base + 1);
            sign = -sign;
        }
        V p = m.at(base, base + 1);
        V pinv = ring.inv(p);
        result = result * p;
        for (long i = base + 2; i < n; ++i)
            for (long j = i + 1; j < n; ++j) {
                V upd = (m.at(base, i) * m.at(base + 1, j) - m.at(base, j) * m.at(base + 1, i)) * pinv;
                m.at(i, j) -= upd;
                m.at(j, i) = ring.zero() - m.at(i, j);
            }
        base += 2;
    }
    return sign < 0 ? ring.zero() - result : result;
}

/// Default pfaffian: subset expansion for small matrices (the reference
/// algorithm), elimination with unit pivots beyond that.
template <class R>
typename R::V pfaffian(const Matrix<typename R::V>& m, const R& ring) {
    if (m.n_rows <= 14) return pfaffian_memo(m, ring);
    try {
        return pfaffian_elimination(m, ring);
    } catch (const SingularConstantTerm&) {
        if (m.n_rows <= 22) return pfaffian_memo(m, ring);
        throw;
    }
}

/// Inverse as adjugate over determinant; requires the determinant to be a
/// unit (nonzero constant term over the series ring).
template <class R>
Matrix<typename R::V> inverse_unit(const Matrix<typename R::V>& m, const R& ring) {
    using V = typename R::V;
    if (!m.square()) throw NonSquare();
    long n = m.n_rows;
    V d = det(m, ring);
    if (!ring.is_unit(d)) throw SingularConstantTerm("inverse of matrix with non-unit determinant");
    V dinv = ring.inv(d);
    Matrix<V> out(n, n, ring.zero());
    if (n == 0) return out;
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            Matrix<V> sub(n - 1, n - 1, ring.zero());
            for (long r = 0, rr = 0; r < n; ++r) {
                if (r == i) continue;
                for (long c = 0, cc = 0; c < n; ++c) {
                    if (c == j) continue;
                    sub.at(rr, cc) = m.at(r, c);
                    ++cc;
                }
                ++rr;
            }
            V cof = det(sub, ring);
            if ((i + j) % 2 == 1) cof = ring.zero() - cof;
            out.at(j, i) = cof * dinv;  // adjugate transposes the cofactor grid
        }
    return out;
}

}  // namespace pfcorr
