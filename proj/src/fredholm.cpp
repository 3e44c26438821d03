#include "pfcorr/fredholm.hpp"

#include <random>

namespace pfcorr {

std::vector<long> window_points(const Window& w) {
    std::vector<long> pts;
    for (long a = w.lo; a <= w.hi; ++a) pts.push_back(a);
    return pts;
}

namespace {

Matrix<USeries> assemble_j_plus(const BlockKernel& k, const std::vector<long>& pts,
                                const Rational& scale, bool minus_j_inside = false,
                                long chi_below = 0, bool add_chi = false) {
    // J + scale*K, optionally J + scale*(chi J chi - K) pieces for the
    // whole-line identity; chi projects onto points < chi_below.
    if (k.arity != 2) throw Error("fredholm assembly needs a block kernel");
    int order = k.order;
    long n = static_cast<long>(pts.size());
    Matrix<USeries> m(2 * n, 2 * n, USeries::zero(order));
    GaussianRational sc(scale);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            Block2 blk = k.block(pts[static_cast<size_t>(i)], pts[static_cast<size_t>(j)]);
            USeries e00 = blk.e00.scaled(sc), e01 = blk.e01.scaled(sc), e10 = blk.e10.scaled(sc),
                    e11 = blk.e11.scaled(sc);
            if (minus_j_inside) {
                e00 = -e00;
                e01 = -e01;
                e10 = -e10;
                e11 = -e11;
            }
            if (i == j) {
                USeries one = USeries::one(order);
                e01 += one;
                e10 -= one;
                if (add_chi && pts[static_cast<size_t>(i)] < chi_below) {
                    // J + scale*(K - chi J chi): the projection term enters
                    // with -scale.
                    e01 -= one.scaled(sc);
                    e10 += one.scaled(sc);
                }
            }
            m.at(2 * i, 2 * j) = e00;
            m.at(2 * i, 2 * j + 1) = e01;
            m.at(2 * i + 1, 2 * j) = e10;
            m.at(2 * i + 1, 2 * j + 1) = e11;
        }
    return m;
}

}  // namespace

USeries fredholm_pf_points(const BlockKernel& k, const std::vector<long>& pts, const Rational& scale) {
    SeriesRing ring(k.order);
    return pfaffian(assemble_j_plus(k, pts, scale), ring);
}

USeries fredholm_pf(const BlockKernel& k, const Window& w, const Rational& scale) {
    return fredholm_pf_points(k, window_points(w), scale);
}

USeries fredholm_det(const BlockKernel& k, const Window& w, const Rational& scale) {
    if (k.arity != 1) throw Error("fredholm_det needs a scalar kernel");
    std::vector<long> pts = window_points(w);
    long n = static_cast<long>(pts.size());
    SeriesRing ring(k.order);
    Matrix<USeries> m(n, n, ring.zero());
    GaussianRational sc(scale);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            m.at(i, j) = k.scalar(pts[static_cast<size_t>(i)], pts[static_cast<size_t>(j)]).scaled(sc);
            if (i == j) m.at(i, j) += USeries::one(k.order);
        }
    return det(m, ring);
}

USeries correls_functional(const BlockKernel& k, const std::map<long, Rational>& f) {
    BlockKernel kk = (k.arity == 2) ? k : representing_kernel(k);
    std::vector<long> pts;
    for (const auto& [x, fx] : f) {
        (void)fx;
        pts.push_back(x);
    }
    long n = static_cast<long>(pts.size());
    SeriesRing ring(kk.order);
    Matrix<USeries> m(2 * n, 2 * n, ring.zero());
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            long a = pts[static_cast<size_t>(i)], b = pts[static_cast<size_t>(j)];
            GaussianRational fa(f.at(a)), fb(f.at(b));
            Block2 blk = kk.block(a, b);
            // Congruence by diag(f(a), 1) per point keeps pf exact without
            // square roots: pf picks up prod f(x) over the subset.
            m.at(2 * i, 2 * j) = blk.e00.scaled(fa * fb);
            m.at(2 * i, 2 * j + 1) = blk.e01.scaled(fa);
            m.at(2 * i + 1, 2 * j) = blk.e10.scaled(fb);
            m.at(2 * i + 1, 2 * j + 1) = blk.e11;
            if (i == j) {
                m.at(2 * i, 2 * j + 1) += USeries::one(kk.order);
                m.at(2 * i + 1, 2 * j) -= USeries::one(kk.order);
            }
        }
    return pfaffian(m, ring);
}

USeries fredholm_pf_subset_sum(const BlockKernel& k, const Window& w, const Rational& scale) {
    std::vector<long> pts = window_points(w);
    long n = static_cast<long>(pts.size());
    if (n > 16) throw Error("subset sum window too large");
    SeriesRing ring(k.order);
    USeries acc(k.order);
    GaussianRational sc(scale);
    for (long mask = 0; mask < (1L << n); ++mask) {
        std::vector<long> s;
        for (long i = 0; i < n; ++i)
            if (mask & (1L << i)) s.push_back(pts[static_cast<size_t>(i)]);
        Matrix<USeries> m = restrict_block(k, s);
        for (auto& e : m.a) e = e.scaled(sc);
        acc += pfaffian_memo(m, ring);
    }
    return acc;
}

namespace {

int gap_margin(int order) { return order + 3; }

}  // namespace

USeries gap_probability_u(const ParameterSet& p_plus, const ParameterSet& p_minus, long l, int order) {
    BlockKernel k = kernel_u_class(p_plus, p_minus, order);
    return fredholm_det(k, {l, l + gap_margin(order)}, Rational(-1));
}

USeries gap_probability_uu(const ParameterSet& p_plus, const ParameterSet& p_minus, long l, int order) {
    BlockKernel k = kernel_uu_class(p_plus, p_minus, order);
    return fredholm_det(k, {l, l + gap_margin(order)}, Rational(-1));
}

USeries gap_probability_o(const ParameterSet& p, const Rational& alpha, long l, int order) {
    BlockKernel k = kernel_o_mixed(p, alpha, order);
    return fredholm_pf(k, {l, l + gap_margin(order)}, Rational(-1));
}

USeries gap_probability_s(const ParameterSet& p, const Rational& beta, long l, int order) {
    BlockKernel k = kernel_s_mixed(p, beta, order);
    return fredholm_pf(k, {l, l + gap_margin(order)}, Rational(-1));
}

DisccontReport disccont_check(const BlockKernel& scalar_kernel, long n, const Rational& s, int order) {
    BlockKernel k = (scalar_kernel.arity == 1) ? representing_kernel(scalar_kernel) : scalar_kernel;
    SeriesRing ring(order);
    long margin = order + 4;
    Rational s2 = s * s, s4 = s2 * s2;

    DisccontReport rep;
    {
        // pf(J - t^{1/4} (K - chi J chi) t^{1/4}): the quarter powers combine
        // to sqrt(t) = s^2.
        std::vector<long> pts;
        for (long a = n - margin; a <= n + margin; ++a) pts.push_back(a);
        Matrix<USeries> m = assemble_j_plus(k, pts, -s2, false, n, true);
        rep.whole_line = pfaffian(m, ring);
    }
    {
        // pf(J - sqrt(t) K sqrt(t))_{N+}: the half powers combine to t = s^4.
        Window w{n, n + margin};
        USeries pf_plus = fredholm_pf(k, w, -s4);
        long exp = std::max<long>(0, n) - std::max<long>(0, -n);  // |N-+| - |N+-|
        Rational pre = (Rational(1) + s2).pow(exp);
        rep.plus_side = pf_plus.scaled(GaussianRational(pre));
    }
    {
        // J - t (J - K): diagonal (1 - t) J plus t K.
        std::vector<long> pts;
        for (long a = n - margin; a <= n - 1; ++a) pts.push_back(a);
        long count = static_cast<long>(pts.size());
        Matrix<USeries> m(2 * count, 2 * count, ring.zero());
        GaussianRational sc{s4};
        for (long i = 0; i < count; ++i)
            for (long j = 0; j < count; ++j) {
                Block2 blk = k.block(pts[static_cast<size_t>(i)], pts[static_cast<size_t>(j)]);
                m.at(2 * i, 2 * j) = blk.e00.scaled(sc);
                m.at(2 * i, 2 * j + 1) = blk.e01.scaled(sc);
                m.at(2 * i + 1, 2 * j) = blk.e10.scaled(sc);
                m.at(2 * i + 1, 2 * j + 1) = blk.e11.scaled(sc);
                if (i == j) {
                    GaussianRational c = GaussianRational(Rational(1) - s4);
                    m.at(2 * i, 2 * j + 1) += USeries(order, c);
                    m.at(2 * i + 1, 2 * j) -= USeries(order, c);
                }
            }
        USeries pf_minus = pfaffian(m, ring);
        long exp = std::max<long>(0, -n) - std::max<long>(0, n);  // |N+-| - |N-+|
        Rational base = Rational(1) - s2;
        if (base.is_zero() && exp < 0) throw Error("disccont prefactor pole at s^2 = 1");
        Rational pre = base.is_zero() && exp == 0 ? Rational(1) : base.pow(exp);
        rep.minus_side = pf_minus.scaled(GaussianRational(pre));
    }
    rep.ok = (rep.whole_line == rep.plus_side) && (rep.whole_line == rep.minus_side);
    return rep;
}

DisccontReport disccont_check_scalar(const BlockKernel& scalar_kernel, long n, const Rational& s,
                                     int order) {
    if (scalar_kernel.arity != 1) throw Error("scalar corollary needs a scalar kernel");
    SeriesRing ring(order);
    long margin = order + 4;
    Rational s2 = s * s, s4 = s2 * s2;
    auto scalar_det = [&](long lo, long hi, const Rational& diag_const, const Rational& kscale,
                          long chi_below, const Rational& chi_scale) {
        std::vector<long> pts;
        for (long a = lo; a <= hi; ++a) pts.push_back(a);
        long count = static_cast<long>(pts.size());
        Matrix<USeries> m(count, count, ring.zero());
        for (long i = 0; i < count; ++i)
            for (long j = 0; j < count; ++j) {
                long a = pts[static_cast<size_t>(i)], b = pts[static_cast<size_t>(j)];
                m.at(i, j) = scalar_kernel.scalar(a, b).scaled(GaussianRational(kscale));
                if (i == j) {
                    Rational d = diag_const;
                    if (a < chi_below) d += chi_scale;
                    m.at(i, j) += USeries(order, GaussianRational(d));
                }
            }
        return det(m, ring);
    };

    DisccontReport rep;
    rep.whole_line = scalar_det(n - margin, n + margin, Rational(1), -s2, n, s2);
    {
        USeries d = scalar_det(n, n + margin, Rational(1), -s4, n, Rational(0));
        long exp = std::max<long>(0, n) - std::max<long>(0, -n);
        rep.plus_side = d.scaled(GaussianRational((Rational(1) + s2).pow(exp)));
    }
    {
        USeries d = scalar_det(n - margin, n - 1, Rational(1) - s4, s4, n, Rational(0));
        long exp = std::max<long>(0, -n) - std::max<long>(0, n);
        Rational base = Rational(1) - s2;
        if (base.is_zero() && exp < 0) throw Error("disccont prefactor pole at s^2 = 1");
        Rational pre = base.is_zero() && exp == 0 ? Rational(1) : base.pow(exp);
        rep.minus_side = d.scaled(GaussianRational(pre));
    }
    rep.ok = (rep.whole_line == rep.plus_side) && (rep.whole_line == rep.minus_side);
    return rep;
}

int IdentityReport::passed() const {
    int n = 0;
    for (const auto& item : items)
        if (item.second) ++n;
    return n;
}

int IdentityReport::failed() const { return static_cast<int>(items.size()) - passed(); }

namespace {

USeries random_series(std::mt19937& rng, int order, int min_val) {
    USeries s(order);
    for (int k = min_val; k <= order; ++k)
        s.coeff_mut(k) = GaussianRational(Rational(static_cast<long>(rng() % 7) - 3));
    return s;
}

Matrix<USeries> random_antisym(std::mt19937& rng, long n, int order, int min_val) {
    Matrix<USeries> m(n, n, USeries::zero(order));
    for (long i = 0; i < n; ++i)
        for (long j = i + 1; j < n; ++j) {
            USeries s = random_series(rng, order, min_val);
            m.at(i, j) = s;
            m.at(j, i) = -s;
        }
    return m;
}

Matrix<USeries> j_matrix(long points, int order) {
    Matrix<USeries> m(2 * points, 2 * points, USeries::zero(order));
    for (long i = 0; i < points; ++i) {
        m.at(2 * i, 2 * i + 1) = USeries::one(order);
        m.at(2 * i + 1, 2 * i) = -USeries::one(order);
    }
    return m;
}

}  // namespace

IdentityReport pf_identity_suite(unsigned seed, int order, int instances) {
    std::mt19937 rng(seed);
    SeriesRing ring(order);
    IdentityReport rep;
    for (int inst = 0; inst < instances; ++inst) {
        long points = 2 + static_cast<long>(rng() % 2);  // 4 or 6 rows
        long dim = 2 * points;

        // (1) pf(J+K)^2 = det(I + J^{-1} K).
        {
            Matrix<USeries> kmat = random_antisym(rng, dim, order, 0);
            Matrix<USeries> jm = j_matrix(points, order);
            USeries pf = pfaffian_memo(jm + kmat, ring);
            Matrix<USeries> jinv_k = jm.transposed() * kmat;  // J^{-1} = J^t
            USeries dt = det_berkowitz(identity_matrix(dim, ring) + jinv_k, ring);
            rep.items.emplace_back("pf(J+K)^2 = det(I+J^{-1}K)", pf * pf == dt);
        }
        // (2) pf((I+K0)(J+K)(I+K0^t)) = det(I+K0) pf(J+K).
        {
            Matrix<USeries> kmat = random_antisym(rng, dim, order, 0);
            Matrix<USeries> jm = j_matrix(points, order);
            Matrix<USeries> k0(dim, dim, ring.zero());
            for (auto& e : k0.a) e = random_series(rng, order, 1);
            Matrix<USeries> ik0 = identity_matrix(dim, ring) + k0;
            Matrix<USeries> lhs_m = ik0 * (jm + kmat) * ik0.transposed();
            USeries lhs = pfaffian_memo(lhs_m, ring);
            USeries rhs = det_berkowitz(ik0, ring) * pfaffian_memo(jm + kmat, ring);
            rep.items.emplace_back("pf((I+K0)(J+K)(I+K0^t)) = det(I+K0) pf(J+K)", lhs == rhs);
        }
        // (3) pf(M_Y) pf(M_Y^{-t} + A M_X A^t) = pf(M_X) pf(M_X^{-t} + A^t M_Y A).
        {
            long dx = 4, dy = 4 + 2 * static_cast<long>(rng() % 2);
            Matrix<USeries> mx = random_antisym(rng, dx, order, 1);
            Matrix<USeries> my = random_antisym(rng, dy, order, 1);
            // Shift by J to make both invertible.
            for (long i = 0; i + 1 < dx; i += 2) {
                mx.at(i, i + 1) += USeries::one(order);
                mx.at(i + 1, i) -= USeries::one(order);
            }
            for (long i = 0; i + 1 < dy; i += 2) {
                my.at(i, i + 1) += USeries::one(order);
                my.at(i + 1, i) -= USeries::one(order);
            }
            Matrix<USeries> a(dy, dx, ring.zero());
            for (auto& e : a.a) e = random_series(rng, order, 0);
            auto neg = [&](Matrix<USeries> m) {
                for (auto& e : m.a) e = -e;
                return m;
            };
            Matrix<USeries> mxinv_t = neg(inverse_unit(mx, ring));
            Matrix<USeries> myinv_t = neg(inverse_unit(my, ring));
            USeries lhs = pfaffian_memo(my, ring) *
                          pfaffian_memo(myinv_t + a * mx * a.transposed(), ring);
            USeries rhs = pfaffian_memo(mx, ring) *
                          pfaffian_memo(mxinv_t + a.transposed() * my * a, ring);
            rep.items.emplace_back("pf(M_Y) pf(M_Y^{-t}+A M_X A^t) = pf(M_X) pf(M_X^{-t}+A^t M_Y A)",
                                   lhs == rhs);
        }
    }
    return rep;
}

}  // namespace pfcorr
