#include "pfcorr/oracle.hpp"

#include <atomic>

#include "pfcorr/errors.hpp"
#include "pfcorr/linalg.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pfcorr {

namespace {

std::atomic<SumMode> g_sum_mode{SumMode::Parallel};

}  // namespace

SumMode default_sum_mode() { return g_sum_mode.load(); }
void set_default_sum_mode(SumMode m) { g_sum_mode.store(m); }

USeries partition_sum(long max_weight, int order,
                      const std::function<USeries(const Partition&)>& term, SumMode mode) {
    std::vector<Partition> lams = enumerate_partitions(max_weight);
    long n = static_cast<long>(lams.size());
    std::vector<USeries> vals(static_cast<size_t>(n), USeries::zero(order));
#ifdef _OPENMP
    if (mode == SumMode::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < n; ++i) vals[static_cast<size_t>(i)] = term(lams[static_cast<size_t>(i)]);
    } else {
        for (long i = 0; i < n; ++i) vals[static_cast<size_t>(i)] = term(lams[static_cast<size_t>(i)]);
    }
#else
    (void)mode;
    for (long i = 0; i < n; ++i) vals[static_cast<size_t>(i)] = term(lams[static_cast<size_t>(i)]);
#endif
    // Deterministic fold in enumeration order regardless of thread count.
    USeries acc(order);
    for (const auto& v : vals) acc += v;
    return acc;
}

USeries partition_sum(long max_weight, int order,
                      const std::function<USeries(const Partition&)>& term) {
    return partition_sum(max_weight, order, term, default_sum_mode());
}

namespace {

struct MeasureCtx {
    MeasureSpec spec;
    Spec xp;  // single-parameter classes and U/UU first slot
    Spec xm;  // U/UU second slot
};

MeasureCtx build_ctx(const MeasureSpec& spec) {
    MeasureCtx c;
    c.spec = spec;
    int n = spec.order;
    switch (spec.cls) {
        case MeasureClass::U:
            c.xp = Spec::from_params(spec.p_plus, n);
            c.xm = Spec::from_params(spec.p_minus, n);
            break;
        case MeasureClass::UU:
            c.xp = Spec::uu_substituted(spec.p_plus, n);
            c.xm = Spec::uu_substituted(spec.p_minus, n);
            break;
        case MeasureClass::Rot:
            c.xp = Spec::rot_substituted(spec.p_plus, n);
            break;
        default:
            c.xp = Spec::from_params(spec.p_plus, n);
            break;
    }
    return c;
}

long frob_parts(const Partition& lam) { return frobenius(lam).length(); }

USeries ctx_weight(const MeasureCtx& c, const Partition& lam) {
    int n = c.spec.order;
    long w = lam.weight();
    switch (c.spec.cls) {
        case MeasureClass::U:
        case MeasureClass::UU: {
            if (2 * w > n) return USeries::zero(n);
            GaussianRational v = schur_dual_value(lam, c.xp) * schur_dual_value(lam, c.xm);
            return USeries::monomial(v, 2 * w, n);
        }
        case MeasureClass::O: {
            long k = odd_conjugate_parts(lam);
            if (w + k > n) return USeries::zero(n);
            GaussianRational v = schur_dual_value(lam, c.xp) * GaussianRational(c.spec.alpha.pow(k));
            return USeries::monomial(v, w + k, n);
        }
        case MeasureClass::S: {
            long k = partition_stats(lam).odd_parts;
            if (w + k > n) return USeries::zero(n);
            GaussianRational v = schur_dual_value(lam, c.xp) * GaussianRational(c.spec.beta.pow(k));
            return USeries::monomial(v, w + k, n);
        }
        case MeasureClass::FrobMinus:
            if (w > n || !in_shape_class(lam, ShapeClass::FrobMinus)) return USeries::zero(n);
            return USeries::monomial(schur_dual_value(lam, c.xp), w, n);
        case MeasureClass::FrobPlus:
            if (w > n || !in_shape_class(lam, ShapeClass::FrobPlus)) return USeries::zero(n);
            return USeries::monomial(schur_dual_value(lam, c.xp), w, n);
        case MeasureClass::FrobHalf:
        case MeasureClass::Rot: {
            if (w > n || !in_shape_class(lam, ShapeClass::FrobZero)) return USeries::zero(n);
            long d = frob_parts(lam);
            GaussianRational v = schur_dual_value(lam, c.xp);
            if (((w - d) / 2) % 2 != 0) v = -v;
            return USeries::monomial(v, w, n);
        }
        case MeasureClass::Hyper:
            throw UnsupportedClass("hyper measure lives on pairs; use hyper_weight");
    }
    throw UnsupportedClass();
}

bool single_set_class(MeasureClass cls) { return cls != MeasureClass::Hyper; }

bool point_membership(const MeasureCtx& c, const Partition& lam, long a) {
    switch (c.spec.cls) {
        case MeasureClass::U:
        case MeasureClass::UU:
        case MeasureClass::O:
        case MeasureClass::S:
            return descent_member(lam, a);
        case MeasureClass::FrobMinus:
        case MeasureClass::FrobPlus:
            return descent_member(lam, a - 1);
        case MeasureClass::FrobHalf:
        case MeasureClass::Rot: {
            if (((a % 2) + 2) % 2 == 0) throw Error("half-integer point must be an odd doubled integer");
            return descent_member(lam, (a - 1) / 2);
        }
        case MeasureClass::Hyper:
            throw UnsupportedClass();
    }
    return false;
}

USeries hyper_pair_sum(const MeasureSpec& spec,
                       const std::function<bool(const Partition&, const Partition&)>& keep) {
    int n = spec.order;
    Spec x = Spec::from_params(spec.p_plus, n);
    std::vector<Partition> nus = enumerate_partitions(n);
    std::vector<USeries> vals(nus.size(), USeries::zero(n));
    auto term = [&](size_t i) {
        const Partition& nu = nus[i];
        USeries acc(n);
        if (2 * nu.weight() > n) return acc;
        GaussianRational snu = schur_dual_value(nu, x);
        if (snu.is_zero()) return acc;
        for (const Partition& mu : enumerate_partitions(nu.weight())) {
            if (!hyper_supported(mu, nu)) continue;
            long deg = nu.weight() + mu.weight() + (nu.weight() - mu.weight());
            if (deg > n) continue;
            if (!keep(mu, nu)) continue;
            GaussianRational v = schur_dual_value(mu, x) * snu *
                                 GaussianRational(spec.alpha.pow(nu.weight() - mu.weight()));
            acc += USeries::monomial(v, deg, n);
        }
        return acc;
    };
    long count = static_cast<long>(nus.size());
#ifdef _OPENMP
    if (default_sum_mode() == SumMode::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < count; ++i) vals[static_cast<size_t>(i)] = term(static_cast<size_t>(i));
    } else {
        for (long i = 0; i < count; ++i) vals[static_cast<size_t>(i)] = term(static_cast<size_t>(i));
    }
#else
    for (long i = 0; i < count; ++i) vals[static_cast<size_t>(i)] = term(static_cast<size_t>(i));
#endif
    USeries acc(n);
    for (const auto& v : vals) acc += v;
    return acc;
}

}  // namespace

bool hyper_supported(const Partition& mu, const Partition& nu) {
    // Interlacing nu_1 >= mu_1 >= nu_2 >= mu_2 >= ...; exactly the pairs on
    // which the kappa determinant of the reconstruction is nonzero.
    long len = std::max(mu.size(), nu.size()) + 1;
    for (long j = 1; j <= len; ++j) {
        if (nu.part(j) < mu.part(j)) return false;
        if (mu.part(j) < nu.part(j + 1)) return false;
    }
    return true;
}

USeries measure_weight(const MeasureSpec& spec, const Partition& lam) {
    return ctx_weight(build_ctx(spec), lam);
}

USeries hyper_weight(const MeasureSpec& spec, const Partition& mu, const Partition& nu) {
    int n = spec.order;
    if (!hyper_supported(mu, nu)) return USeries::zero(n);
    Spec x = Spec::from_params(spec.p_plus, n);
    long deg = 2 * nu.weight();
    if (deg > n) return USeries::zero(n);
    GaussianRational v = schur_dual_value(mu, x) * schur_dual_value(nu, x) *
                         GaussianRational(spec.alpha.pow(nu.weight() - mu.weight()));
    return USeries::monomial(v, deg, n);
}

USeries normalization(const MeasureSpec& spec) {
    if (spec.cls == MeasureClass::Hyper)
        return hyper_pair_sum(spec, [](const Partition&, const Partition&) { return true; });
    MeasureCtx c = build_ctx(spec);
    return partition_sum(spec.order, spec.order,
                         [&](const Partition& lam) { return ctx_weight(c, lam); });
}

USeries correlation_oracle(const MeasureSpec& spec, const std::vector<long>& s) {
    if (!single_set_class(spec.cls)) throw UnsupportedClass("split class needs correlation_oracle_split");
    MeasureCtx c = build_ctx(spec);
    USeries z = partition_sum(spec.order, spec.order,
                              [&](const Partition& lam) { return ctx_weight(c, lam); });
    USeries num = partition_sum(spec.order, spec.order, [&](const Partition& lam) {
        for (long a : s)
            if (!point_membership(c, lam, a)) return USeries::zero(spec.order);
        return ctx_weight(c, lam);
    });
    return num / z;
}

bool split_membership(const Partition& lam, int row_type, long a) {
    long jmax = lam.size() / 2 + std::abs(a) + 2;
    for (long j = 1; j <= jmax; ++j) {
        long i = (row_type == 0) ? 2 * j : 2 * j - 1;
        if (lam.part(i) - i == a) return true;
    }
    return false;
}

bool half_membership(const Partition& lam, long doubled) {
    if (((doubled % 2) + 2) % 2 == 0) throw Error("half-integer point must be odd");
    return descent_member(lam, (doubled - 1) / 2);
}

USeries correlation_oracle_split(const MeasureSpec& spec, const std::vector<long>& s0,
                                 const std::vector<long>& s1) {
    if (spec.cls == MeasureClass::Hyper) {
        USeries z = hyper_pair_sum(spec, [](const Partition&, const Partition&) { return true; });
        USeries num = hyper_pair_sum(spec, [&](const Partition& mu, const Partition& nu) {
            for (long a : s0)
                if (!descent_member(mu, a)) return false;
            for (long a : s1)
                if (!descent_member(nu, a)) return false;
            return true;
        });
        return num / z;
    }
    if (spec.cls != MeasureClass::O && spec.cls != MeasureClass::S)
        throw UnsupportedClass("split correlations exist for classes O, S, u");
    MeasureCtx c = build_ctx(spec);
    USeries z = partition_sum(spec.order, spec.order,
                              [&](const Partition& lam) { return ctx_weight(c, lam); });
    USeries num = partition_sum(spec.order, spec.order, [&](const Partition& lam) {
        for (long a : s0)
            if (!split_membership(lam, 0, a)) return USeries::zero(spec.order);
        for (long a : s1)
            if (!split_membership(lam, 1, a)) return USeries::zero(spec.order);
        return ctx_weight(c, lam);
    });
    return num / z;
}

USeries superset_disjoint_oracle(const MeasureSpec& spec, const std::vector<long>& s_plus,
                                 const std::vector<long>& s_minus) {
    for (long a : s_plus)
        for (long b : s_minus)
            if (a == b) throw OverlappingSets();
    MeasureCtx c = build_ctx(spec);
    USeries z = partition_sum(spec.order, spec.order,
                              [&](const Partition& lam) { return ctx_weight(c, lam); });
    USeries num = partition_sum(spec.order, spec.order, [&](const Partition& lam) {
        for (long a : s_plus)
            if (!point_membership(c, lam, a)) return USeries::zero(spec.order);
        for (long a : s_minus)
            if (point_membership(c, lam, a)) return USeries::zero(spec.order);
        return ctx_weight(c, lam);
    });
    return num / z;
}

USeries row_cdf_oracle(const MeasureSpec& spec, long l) {
    if (spec.cls == MeasureClass::Hyper) throw UnsupportedClass();
    MeasureCtx c = build_ctx(spec);
    USeries z = partition_sum(spec.order, spec.order,
                              [&](const Partition& lam) { return ctx_weight(c, lam); });
    USeries num = partition_sum(spec.order, spec.order, [&](const Partition& lam) {
        if (lam.part(1) > l) return USeries::zero(spec.order);
        return ctx_weight(c, lam);
    });
    return num / z;
}

USeries generating_functional_oracle(const MeasureSpec& spec, const std::map<long, Rational>& f) {
    MeasureCtx c = build_ctx(spec);
    USeries z = partition_sum(spec.order, spec.order,
                              [&](const Partition& lam) { return ctx_weight(c, lam); });
    USeries num = partition_sum(spec.order, spec.order, [&](const Partition& lam) {
        Rational factor(1);
        for (const auto& [x, fx] : f)
            if (point_membership(c, lam, x)) factor *= Rational(1) + fx;
        return ctx_weight(c, lam).scaled(GaussianRational(factor));
    });
    return num / z;
}

USeries littlewood_shape_sum(LittlewoodVariant variant, const ParameterSet& p,
                             const std::vector<long>& s, int order) {
    ShapeClass cls = variant == LittlewoodVariant::Minus  ? ShapeClass::FrobMinus
                     : variant == LittlewoodVariant::Plus ? ShapeClass::FrobPlus
                                                          : ShapeClass::FrobZero;
    Spec x = Spec::from_params(p, order);
    return partition_sum(order, order, [&](const Partition& lam) {
        if (!in_shape_class(lam, cls)) return USeries::zero(order);
        for (long a : s)
            if (!descent_member(lam, a - 1)) return USeries::zero(order);
        GaussianRational v = schur_dual_value(lam, x);
        if (variant == LittlewoodVariant::ZeroSigned) {
            long d = frobenius(lam).length();
            if (((lam.weight() - d) / 2) % 2 != 0) v = -v;
        }
        return USeries::monomial(v, lam.weight(), order);
    });
}

namespace {

// Proof-pattern index pairs: a_k from even-indexed rows, b_k from odd rows,
// for lambda padded to 2m parts.
void split_indices(const Partition& lam, long m, std::vector<long>& a, std::vector<long>& b) {
    a.resize(static_cast<size_t>(m));
    b.resize(static_cast<size_t>(m));
    for (long k = 1; k <= m; ++k) {
        a[static_cast<size_t>(k - 1)] = lam.part(2 * m - 2 * k + 2) - (2 * m - 2 * k + 2);
        b[static_cast<size_t>(k - 1)] = lam.part(2 * m - 2 * k + 1) - (2 * m - 2 * k + 1);
    }
}

// Graded determinant of the interleaved 2m x 2m matrix with columns
// (a_1, b_1, a_2, b_2, ...): entries e_{col + j}. Homogeneous of degree
// |lambda|, so the numeric determinant is graded afterwards.
USeries interleaved_e_det(const std::vector<long>& a, const std::vector<long>& b,
                          const ParameterSet& p, long degree, int order) {
    long m = static_cast<long>(a.size());
    long need = 0;
    for (long k = 0; k < m; ++k) need = std::max({need, a[static_cast<size_t>(k)] + 2 * m, b[static_cast<size_t>(k)] + 2 * m});
    Spec x = Spec::from_params(p, static_cast<int>(std::max<long>(need, 1)));
    Matrix<GaussianRational> mat(2 * m, 2 * m, GaussianRational{});
    for (long j = 1; j <= 2 * m; ++j)
        for (long k = 1; k <= m; ++k) {
            mat.at(j - 1, 2 * k - 2) = x.at(a[static_cast<size_t>(k - 1)] + j);
            mat.at(j - 1, 2 * k - 1) = x.at(b[static_cast<size_t>(k - 1)] + j);
        }
    GaussianRational d = field_det(mat);
    if (degree > order) return USeries::zero(order);
    return USeries::monomial(d, degree, order);
}

}  // namespace

USeries s_weight_reconstruction(const Partition& lam, const ParameterSet& p, const Rational& beta,
                                long m, int order) {
    if (2 * m < lam.size()) throw Error("padding too small");
    std::vector<long> a, b;
    split_indices(lam, m, a, b);
    USeries edet = interleaved_e_det(a, b, p, lam.weight(), order);
    SeriesRing ring(order);
    Matrix<USeries> kap(m, m, ring.zero());
    for (long j = 0; j < m; ++j)
        for (long k = 0; k < m; ++k) {
            long aj = a[static_cast<size_t>(j)], bk = b[static_cast<size_t>(k)];
            if (bk > aj) {
                long bits = (((aj % 2) + 2) % 2) + (((bk + 1) % 2 + 2) % 2);
                kap.at(j, k) = USeries::monomial(GaussianRational(beta.pow(bits)), bits, order);
            }
        }
    USeries kdet = det_berkowitz(kap, ring);
    USeries out = edet * kdet;
    return (m % 2 == 1) ? -out : out;
}

USeries o_weight_reconstruction(const Partition& lam, const ParameterSet& p, const Rational& alpha,
                                long m, int order) {
    if (2 * m < lam.size()) throw Error("padding too small");
    std::vector<long> a, b;
    split_indices(lam, m, a, b);
    USeries edet = interleaved_e_det(a, b, p, lam.weight(), order);
    SeriesRing ring(order);
    Matrix<USeries> kap(m, m, ring.zero());
    for (long j = 0; j < m; ++j)
        for (long k = 0; k < m; ++k) {
            long aj = a[static_cast<size_t>(j)], bk = b[static_cast<size_t>(k)];
            if (bk > aj)
                kap.at(j, k) = USeries::monomial(GaussianRational(alpha.pow(bk - aj - 1)), bk - aj - 1, order);
        }
    USeries kdet = det_berkowitz(kap, ring);
    USeries out = edet * kdet;
    return (m % 2 == 1) ? -out : out;
}

USeries hyper_weight_reconstruction(const Partition& mu, const Partition& nu, const ParameterSet& p,
                                    const Rational& alpha, long m, int order) {
    if (m < std::max(mu.size(), nu.size())) throw Error("padding too small");
    std::vector<long> xs(static_cast<size_t>(m)), ys(static_cast<size_t>(m));
    for (long k = 1; k <= m; ++k) {
        xs[static_cast<size_t>(k - 1)] = mu.part(m + 1 - k) - (m + 1 - k);
        ys[static_cast<size_t>(k - 1)] = nu.part(m + 1 - k) - (m + 1 - k);
    }
    long need = std::max<long>(mu.part(1) + m, nu.part(1) + m) + 1;
    Spec x = Spec::from_params(p, static_cast<int>(need));
    Matrix<GaussianRational> mx(m, m, GaussianRational{}), my(m, m, GaussianRational{});
    for (long j = 1; j <= m; ++j)
        for (long k = 1; k <= m; ++k) {
            mx.at(j - 1, k - 1) = x.at(xs[static_cast<size_t>(k - 1)] + j);
            my.at(j - 1, k - 1) = x.at(ys[static_cast<size_t>(k - 1)] + j);
        }
    GaussianRational dx = field_det(mx), dy = field_det(my);
    SeriesRing ring(order);
    Matrix<USeries> kap(m, m, ring.zero());
    for (long j = 0; j < m; ++j)
        for (long k = 0; k < m; ++k) {
            long xj = xs[static_cast<size_t>(j)], yk = ys[static_cast<size_t>(k)];
            if (yk >= xj)
                kap.at(j, k) = USeries::monomial(GaussianRational(alpha.pow(yk - xj)), yk - xj, order);
        }
    USeries kdet = det_berkowitz(kap, ring);
    long deg = mu.weight() + nu.weight();
    if (deg > order) return USeries::zero(order);
    return USeries::monomial(dx * dy, deg, order) * kdet;
}

}  // namespace pfcorr
