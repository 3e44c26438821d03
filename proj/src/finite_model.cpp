#include "pfcorr/finite_model.hpp"

#include <algorithm>

namespace pfcorr {

namespace {

const GaussianField kField{};

Rational factorial_long(long n) { return factorial(n); }

// All tuples in {0..n-1}^len, visited in lexicographic order.
template <class F>
void for_each_tuple(long n, long len, F&& visit) {
    std::vector<long> t(static_cast<size_t>(len), 0);
    if (len == 0) {
        visit(t);
        return;
    }
    while (true) {
        visit(t);
        long pos = len - 1;
        while (pos >= 0 && t[static_cast<size_t>(pos)] == n - 1) {
            t[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++t[static_cast<size_t>(pos)];
    }
}

}  // namespace

void FiniteModel::validate() const {
    long f = function_count();
    if (phi.n_rows != f || phi.n_cols != nx) throw Error("phi dimensions do not match model");
    switch (kind) {
        case ModelKind::PfOneSpace:
            if (eps.n_rows != nx || eps.n_cols != nx) throw Error("eps dimensions");
            check_antisymmetric(eps, kField);
            break;
        case ModelKind::PfTwoSpace:
        case ModelKind::DetTwoSpace:
            if (psi.n_rows != f || psi.n_cols != ny) throw Error("psi dimensions");
            if (kappa.n_rows != nx || kappa.n_cols != ny) throw Error("kappa dimensions");
            break;
        case ModelKind::DetOneSpace:
            if (psi.n_rows != f || psi.n_cols != nx) throw Error("psi dimensions");
            break;
    }
}

Matrix<GaussianRational> gram_matrix(const FiniteModel& model) {
    long f = model.function_count();
    Matrix<GaussianRational> m(f, f, GaussianRational{});
    auto wx = [&](long x) { return GaussianRational(model.weight_x[static_cast<size_t>(x)]); };
    auto wy = [&](long y) { return GaussianRational(model.weight_y[static_cast<size_t>(y)]); };
    switch (model.kind) {
        case ModelKind::PfOneSpace:
            for (long j = 0; j < f; ++j)
                for (long k = 0; k < f; ++k) {
                    GaussianRational acc;
                    for (long x = 0; x < model.nx; ++x)
                        for (long y = 0; y < model.nx; ++y) {
                            if (model.eps.at(x, y).is_zero()) continue;
                            acc += model.phi.at(j, x) * model.eps.at(x, y) * model.phi.at(k, y) * wx(x) * wx(y);
                        }
                    m.at(j, k) = acc;
                }
            break;
        case ModelKind::PfTwoSpace:
            for (long j = 0; j < f; ++j)
                for (long k = 0; k < f; ++k) {
                    GaussianRational acc;
                    for (long x = 0; x < model.nx; ++x)
                        for (long y = 0; y < model.ny; ++y) {
                            if (model.kappa.at(x, y).is_zero()) continue;
                            acc += (model.phi.at(j, x) * model.psi.at(k, y) -
                                    model.phi.at(k, x) * model.psi.at(j, y)) *
                                   model.kappa.at(x, y) * wx(x) * wy(y);
                        }
                    m.at(j, k) = acc;
                }
            break;
        case ModelKind::DetTwoSpace:
            for (long j = 0; j < f; ++j)
                for (long k = 0; k < f; ++k) {
                    GaussianRational acc;
                    for (long x = 0; x < model.nx; ++x)
                        for (long y = 0; y < model.ny; ++y)
                            acc += model.phi.at(j, x) * model.kappa.at(x, y) * model.psi.at(k, y) * wx(x) * wy(y);
                    m.at(j, k) = acc;
                }
            break;
        case ModelKind::DetOneSpace:
            for (long j = 0; j < f; ++j)
                for (long k = 0; k < f; ++k) {
                    GaussianRational acc;
                    for (long x = 0; x < model.nx; ++x)
                        acc += model.phi.at(j, x) * model.psi.at(k, x) * wx(x);
                    m.at(j, k) = acc;
                }
            break;
    }
    return m;
}

GaussianRational gram_normalizer(const FiniteModel& model) {
    Matrix<GaussianRational> m = gram_matrix(model);
    GaussianRational z = (model.kind == ModelKind::PfOneSpace || model.kind == ModelKind::PfTwoSpace)
                             ? pfaffian_memo(m, kField)
                             : field_det(m);
    if (z.is_zero()) throw SingularGram();
    return z;
}

GaussianRational correlation_direct(const FiniteModel& model, const std::vector<long>& s) {
    if (model.kind == ModelKind::PfOneSpace) {
        long f = 2 * model.m;
        long l = static_cast<long>(s.size());
        if (l > f) return {};
        GaussianRational norm = gram_normalizer(model);
        long free = f - l;
        GaussianRational total;
        for_each_tuple(model.nx, free, [&](const std::vector<long>& t) {
            std::vector<long> pts = s;
            pts.insert(pts.end(), t.begin(), t.end());
            Matrix<GaussianRational> a(f, f, GaussianRational{});
            for (long j = 0; j < f; ++j)
                for (long k = 0; k < f; ++k) a.at(j, k) = model.phi.at(j, pts[static_cast<size_t>(k)]);
            Matrix<GaussianRational> e(f, f, GaussianRational{});
            for (long j = 0; j < f; ++j)
                for (long k = 0; k < f; ++k)
                    e.at(j, k) = model.eps.at(pts[static_cast<size_t>(j)], pts[static_cast<size_t>(k)]);
            GaussianRational w(Rational(1));
            for (long j = 0; j < free; ++j)
                w *= GaussianRational(model.weight_x[static_cast<size_t>(t[static_cast<size_t>(j)])]);
            total += field_det(a) * pfaffian_memo(e, kField) * w;
        });
        return total / (GaussianRational(factorial_long(free)) * norm);
    }
    if (model.kind == ModelKind::DetOneSpace) {
        long f = model.m;
        long l = static_cast<long>(s.size());
        if (l > f) return {};
        GaussianRational norm = gram_normalizer(model);
        long free = f - l;
        GaussianRational total;
        for_each_tuple(model.nx, free, [&](const std::vector<long>& t) {
            std::vector<long> pts = s;
            pts.insert(pts.end(), t.begin(), t.end());
            Matrix<GaussianRational> a(f, f, GaussianRational{}), b(f, f, GaussianRational{});
            for (long j = 0; j < f; ++j)
                for (long k = 0; k < f; ++k) {
                    a.at(j, k) = model.phi.at(j, pts[static_cast<size_t>(k)]);
                    b.at(j, k) = model.psi.at(j, pts[static_cast<size_t>(k)]);
                }
            GaussianRational w(Rational(1));
            for (long j = 0; j < free; ++j)
                w *= GaussianRational(model.weight_x[static_cast<size_t>(t[static_cast<size_t>(j)])]);
            total += field_det(a) * field_det(b) * w;
        });
        return total / (GaussianRational(factorial_long(free)) * norm);
    }
    throw Error("one-space correlation on a two-space model");
}

GaussianRational correlation_direct(const FiniteModel& model, const std::vector<long>& s0,
                                    const std::vector<long>& s1) {
    long m = model.m;
    long l0 = static_cast<long>(s0.size()), l1 = static_cast<long>(s1.size());
    if (l0 > m || l1 > m) return {};
    GaussianRational norm = gram_normalizer(model);
    long f0 = m - l0, f1 = m - l1;
    GaussianRational total;
    for_each_tuple(model.nx, f0, [&](const std::vector<long>& tx) {
        std::vector<long> xs = s0;
        xs.insert(xs.end(), tx.begin(), tx.end());
        GaussianRational wxp(Rational(1));
        for (long j = 0; j < f0; ++j)
            wxp *= GaussianRational(model.weight_x[static_cast<size_t>(tx[static_cast<size_t>(j)])]);
        for_each_tuple(model.ny, f1, [&](const std::vector<long>& ty) {
            std::vector<long> ys = s1;
            ys.insert(ys.end(), ty.begin(), ty.end());
            GaussianRational wyp = wxp;
            for (long j = 0; j < f1; ++j)
                wyp *= GaussianRational(model.weight_y[static_cast<size_t>(ty[static_cast<size_t>(j)])]);
            Matrix<GaussianRational> kap(m, m, GaussianRational{});
            for (long j = 0; j < m; ++j)
                for (long k = 0; k < m; ++k)
                    kap.at(j, k) = model.kappa.at(xs[static_cast<size_t>(j)], ys[static_cast<size_t>(k)]);
            GaussianRational dk = field_det(kap);
            if (dk.is_zero()) return;
            if (model.kind == ModelKind::PfTwoSpace) {
                long f = 2 * m;
                Matrix<GaussianRational> a(f, f, GaussianRational{});
                for (long j = 0; j < f; ++j) {
                    for (long k = 0; k < m; ++k) a.at(j, k) = model.phi.at(j, xs[static_cast<size_t>(k)]);
                    for (long k = 0; k < m; ++k) a.at(j, m + k) = model.psi.at(j, ys[static_cast<size_t>(k)]);
                }
                total += field_det(a) * dk * wyp;
            } else {
                Matrix<GaussianRational> a(m, m, GaussianRational{}), b(m, m, GaussianRational{});
                for (long j = 0; j < m; ++j)
                    for (long k = 0; k < m; ++k) {
                        a.at(j, k) = model.phi.at(j, xs[static_cast<size_t>(k)]);
                        b.at(j, k) = model.psi.at(j, ys[static_cast<size_t>(k)]);
                    }
                total += field_det(a) * field_det(b) * dk * wyp;
            }
        });
    });
    return total / (GaussianRational(factorial_long(f0)) * GaussianRational(factorial_long(f1)) * norm);
}

ModelKernel closed_kernel(const FiniteModel& model) {
    model.validate();
    Matrix<GaussianRational> m = gram_matrix(model);
    GaussianRational z = (model.kind == ModelKind::PfOneSpace || model.kind == ModelKind::PfTwoSpace)
                             ? pfaffian_memo(m, kField)
                             : field_det(m);
    if (z.is_zero()) throw SingularGram();
    Matrix<GaussianRational> minv = inverse_unit(m, kField);

    ModelKernel k;
    k.model = &model;
    k.minv_t = minv.transposed();
    long f = model.function_count();
    auto wx = [&](long x) { return GaussianRational(model.weight_x[static_cast<size_t>(x)]); };
    auto wy = [&](long y) { return GaussianRational(model.weight_y[static_cast<size_t>(y)]); };
    if (model.kind == ModelKind::PfOneSpace) {
        k.eps_phi = Matrix<GaussianRational>(f, model.nx, GaussianRational{});
        for (long j = 0; j < f; ++j)
            for (long x = 0; x < model.nx; ++x) {
                GaussianRational acc;
                for (long y = 0; y < model.nx; ++y)
                    acc += model.eps.at(x, y) * model.phi.at(j, y) * wx(y);
                k.eps_phi.at(j, x) = acc;
            }
    } else if (model.kind == ModelKind::PfTwoSpace || model.kind == ModelKind::DetTwoSpace) {
        k.kappa_psi = Matrix<GaussianRational>(f, model.nx, GaussianRational{});
        k.kappat_phi = Matrix<GaussianRational>(f, model.ny, GaussianRational{});
        for (long j = 0; j < f; ++j) {
            for (long x = 0; x < model.nx; ++x) {
                GaussianRational acc;
                for (long y = 0; y < model.ny; ++y)
                    acc += model.kappa.at(x, y) * model.psi.at(j, y) * wy(y);
                k.kappa_psi.at(j, x) = acc;
            }
            for (long y = 0; y < model.ny; ++y) {
                GaussianRational acc;
                for (long x = 0; x < model.nx; ++x)
                    acc += model.kappa.at(x, y) * model.phi.at(j, x) * wx(x);
                k.kappat_phi.at(j, y) = acc;
            }
        }
    }
    return k;
}

namespace {

GaussianRational pair_form(const Matrix<GaussianRational>& mt, const Matrix<GaussianRational>& u,
                           long a, const Matrix<GaussianRational>& v, long b) {
    GaussianRational acc;
    long f = mt.n_rows;
    for (long j = 0; j < f; ++j) {
        if (u.at(j, a).is_zero()) continue;
        GaussianRational row;
        for (long kk = 0; kk < f; ++kk) {
            if (v.at(kk, b).is_zero()) continue;
            row += mt.at(j, kk) * v.at(kk, b);
        }
        acc += u.at(j, a) * row;
    }
    return acc;
}

}  // namespace

std::vector<GaussianRational> ModelKernel::block(const ModelPoint& a, const ModelPoint& b) const {
    const FiniteModel& mo = *model;
    const auto& mt = minv_t;
    switch (mo.kind) {
        case ModelKind::PfOneSpace: {
            long x = a.index, y = b.index;
            return {pair_form(mt, mo.phi, x, mo.phi, y), pair_form(mt, mo.phi, x, eps_phi, y),
                    pair_form(mt, eps_phi, x, mo.phi, y),
                    -mo.eps.at(x, y) + pair_form(mt, eps_phi, x, eps_phi, y)};
        }
        case ModelKind::PfTwoSpace: {
            if (a.space == 0 && b.space == 0) {
                long x = a.index, y = b.index;
                return {pair_form(mt, mo.phi, x, mo.phi, y), pair_form(mt, mo.phi, x, kappa_psi, y),
                        pair_form(mt, kappa_psi, x, mo.phi, y), pair_form(mt, kappa_psi, x, kappa_psi, y)};
            }
            if (a.space == 0 && b.space == 1) {
                long x = a.index, y = b.index;
                return {pair_form(mt, mo.phi, x, kappat_phi, y), pair_form(mt, mo.phi, x, mo.psi, y),
                        mo.kappa.at(x, y) + pair_form(mt, kappa_psi, x, kappat_phi, y),
                        pair_form(mt, kappa_psi, x, mo.psi, y)};
            }
            if (a.space == 1 && b.space == 0) {
                long y = a.index, x = b.index;
                return {pair_form(mt, kappat_phi, y, mo.phi, x),
                        -mo.kappa.at(x, y) + pair_form(mt, kappat_phi, y, kappa_psi, x),
                        pair_form(mt, mo.psi, y, mo.phi, x), pair_form(mt, mo.psi, y, kappa_psi, x)};
            }
            long y = a.index, yp = b.index;
            return {pair_form(mt, kappat_phi, y, kappat_phi, yp), pair_form(mt, kappat_phi, y, mo.psi, yp),
                    pair_form(mt, mo.psi, y, kappat_phi, yp), pair_form(mt, mo.psi, y, mo.psi, yp)};
        }
        case ModelKind::DetTwoSpace: {
            if (a.space == 0 && b.space == 0)
                return {pair_form(mt, mo.phi, a.index, kappa_psi, b.index)};
            if (a.space == 0 && b.space == 1)
                return {pair_form(mt, mo.phi, a.index, mo.psi, b.index)};
            if (a.space == 1 && b.space == 0)
                return {-mo.kappa.at(b.index, a.index) + pair_form(mt, kappat_phi, a.index, kappa_psi, b.index)};
            return {pair_form(mt, kappat_phi, a.index, mo.psi, b.index)};
        }
        case ModelKind::DetOneSpace:
            return {pair_form(mt, mo.phi, a.index, mo.psi, b.index)};
    }
    throw Error("unreachable");
}

namespace {

GaussianRational closed_eval(const ModelKernel& k, const std::vector<ModelPoint>& pts, bool pfaff) {
    long n = static_cast<long>(pts.size());
    if (pfaff) {
        Matrix<GaussianRational> m(2 * n, 2 * n, GaussianRational{});
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) {
                auto blk = k.block(pts[static_cast<size_t>(i)], pts[static_cast<size_t>(j)]);
                m.at(2 * i, 2 * j) = blk[0];
                m.at(2 * i, 2 * j + 1) = blk[1];
                m.at(2 * i + 1, 2 * j) = blk[2];
                m.at(2 * i + 1, 2 * j + 1) = blk[3];
            }
        return pfaffian_memo(m, kField);
    }
    Matrix<GaussianRational> m(n, n, GaussianRational{});
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            m.at(i, j) = k.block(pts[static_cast<size_t>(i)], pts[static_cast<size_t>(j)])[0];
    return field_det(m);
}

}  // namespace

GaussianRational correlation_closed(const ModelKernel& kernel, const std::vector<long>& s) {
    std::vector<ModelPoint> pts;
    for (long x : s) pts.push_back({0, x});
    bool pfaff = kernel.model->kind == ModelKind::PfOneSpace;
    return closed_eval(kernel, pts, pfaff);
}

GaussianRational correlation_closed(const ModelKernel& kernel, const std::vector<long>& s0,
                                    const std::vector<long>& s1) {
    std::vector<ModelPoint> pts;
    for (long x : s0) pts.push_back({0, x});
    for (long y : s1) pts.push_back({1, y});
    bool pfaff = kernel.model->kind == ModelKind::PfTwoSpace;
    return closed_eval(kernel, pts, pfaff);
}

GaussianRational correlation_closed(const FiniteModel& model, const std::vector<long>& s) {
    ModelKernel k = closed_kernel(model);
    return correlation_closed(k, s);
}

GaussianRational correlation_closed(const FiniteModel& model, const std::vector<long>& s0,
                                    const std::vector<long>& s1) {
    ModelKernel k = closed_kernel(model);
    return correlation_closed(k, s0, s1);
}

GaussianRational debruijn_constant(const FiniteModel& model) {
    if (model.kind != ModelKind::PfOneSpace) throw Error("de Bruijn sum needs a one-space pf model");
    long f = 2 * model.m;
    GaussianRational total;
    for_each_tuple(model.nx, f, [&](const std::vector<long>& pts) {
        Matrix<GaussianRational> a(f, f, GaussianRational{});
        for (long j = 0; j < f; ++j)
            for (long k = 0; k < f; ++k) a.at(j, k) = model.phi.at(j, pts[static_cast<size_t>(k)]);
        Matrix<GaussianRational> e(f, f, GaussianRational{});
        for (long j = 0; j < f; ++j)
            for (long k = 0; k < f; ++k)
                e.at(j, k) = model.eps.at(pts[static_cast<size_t>(j)], pts[static_cast<size_t>(k)]);
        GaussianRational w(Rational(1));
        for (long x : pts) w *= GaussianRational(model.weight_x[static_cast<size_t>(x)]);
        total += field_det(a) * pfaffian_memo(e, kField) * w;
    });
    return total / GaussianRational(factorial_long(f));
}

GaussianRational correlation_closed_conjugated(
    const ModelKernel& kernel, const std::vector<long>& s,
    const std::vector<Matrix<GaussianRational>>& transform) {
    long n = static_cast<long>(s.size());
    Matrix<GaussianRational> m(2 * n, 2 * n, GaussianRational{});
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            auto blk = kernel.block({0, s[static_cast<size_t>(i)]}, {0, s[static_cast<size_t>(j)]});
            const auto& ti = transform[static_cast<size_t>(s[static_cast<size_t>(i)])];
            const auto& tj = transform[static_cast<size_t>(s[static_cast<size_t>(j)])];
            Matrix<GaussianRational> b(2, 2, GaussianRational{});
            b.at(0, 0) = blk[0];
            b.at(0, 1) = blk[1];
            b.at(1, 0) = blk[2];
            b.at(1, 1) = blk[3];
            Matrix<GaussianRational> c = ti * b * tj.transposed();
            m.at(2 * i, 2 * j) = c.at(0, 0);
            m.at(2 * i, 2 * j + 1) = c.at(0, 1);
            m.at(2 * i + 1, 2 * j) = c.at(1, 0);
            m.at(2 * i + 1, 2 * j + 1) = c.at(1, 1);
        }
    return pfaffian_memo(m, kField);
}

}  // namespace pfcorr
