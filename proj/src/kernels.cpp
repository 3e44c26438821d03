#include "pfcorr/kernels.hpp"

#include <algorithm>

namespace pfcorr {

namespace {

long mod2(long a) { return ((a % 2) + 2) % 2; }

int parity_sign(long e) { return mod2(e) == 0 ? 1 : -1; }

// (c*u)^k as a monomial, k >= 0.
USeries graded_power(const Rational& c, long k, int order) {
    return USeries::monomial(GaussianRational(c.pow(k)), k, order);
}

}  // namespace

USeries LTable::at(long a) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = memo_.find(a);
        if (it != memo_.end()) return it->second;
    }
    USeries s(order_);
    if (std::abs(a) <= order_) {
        for (long k = std::max<long>(0, -a); a + 2 * k <= order_; ++k) {
            GaussianRational c = x_.at(a + k) * y_.inv_at(k);
            if (!c.is_zero()) s.coeff_mut(static_cast<int>(a + 2 * k)) += c;
        }
    }
    std::lock_guard<std::mutex> lock(mu_);
    memo_.emplace(a, s);
    return s;
}

USeries l_transfer(long a, const ParameterSet& p_plus, const ParameterSet& p_minus, int order) {
    LTable t(Spec::from_params(p_plus, order), Spec::from_params(p_minus, order), order);
    return t.at(a);
}

BlockKernel representing_kernel(const BlockKernel& scalar_kernel) {
    if (scalar_kernel.arity != 1) throw Error("representing_kernel needs a scalar kernel");
    BlockKernel k;
    k.arity = 2;
    k.half_domain = scalar_kernel.half_domain;
    k.order = scalar_kernel.order;
    auto base = scalar_kernel.scalar;
    int order = scalar_kernel.order;
    k.block = [base, order](long a, long b) {
        Block2 blk{USeries::zero(order), base(a, b), -base(b, a), USeries::zero(order)};
        return blk;
    };
    return k;
}

namespace {

struct ScalarMemo {
    std::map<std::pair<long, long>, USeries> memo;
    std::mutex mu;
};

BlockKernel make_scalar_kernel(int order, bool half_domain,
                               std::function<USeries(long, long)> eval) {
    auto memo = std::make_shared<ScalarMemo>();
    BlockKernel k;
    k.arity = 1;
    k.half_domain = half_domain;
    k.order = order;
    k.scalar = [memo, eval](long a, long b) {
        {
            std::lock_guard<std::mutex> lock(memo->mu);
            auto it = memo->memo.find({a, b});
            if (it != memo->memo.end()) return it->second;
        }
        USeries v = eval(a, b);
        std::lock_guard<std::mutex> lock(memo->mu);
        memo->memo.emplace(std::make_pair(a, b), v);
        return v;
    };
    return k;
}

}  // namespace

// ---- class U / UU -----------------------------------------------------------

BlockKernel kernel_u_class(const ParameterSet& p_plus, const ParameterSet& p_minus, int order,
                           KernelOptions opt) {
    auto lpm = std::make_shared<LTable>(Spec::from_params(p_plus, order), Spec::from_params(p_minus, order), order);
    auto lmp = std::make_shared<LTable>(Spec::from_params(p_minus, order), Spec::from_params(p_plus, order), order);
    int boost = opt.cutoff_boost;
    return make_scalar_kernel(order, false, [lpm, lmp, order, boost](long a, long b) {
        USeries acc(order);
        long lmax = order + std::max<long>({0, -a, -b}) + 2 + boost;
        for (long l = 1; l <= lmax; ++l) acc += lpm->at(a + l) * lmp->at(b + l);
        return acc;
    });
}

BlockKernel kernel_uu_class(const ParameterSet& p_plus, const ParameterSet& p_minus, int order,
                            KernelOptions opt) {
    auto lpm = std::make_shared<LTable>(Spec::from_params(p_plus, order), Spec::from_params(p_minus, order), order);
    auto lmp = std::make_shared<LTable>(Spec::from_params(p_minus, order), Spec::from_params(p_plus, order), order);
    int boost = opt.cutoff_boost;
    return make_scalar_kernel(order, false, [lpm, lmp, order, boost](long a, long b) {
        USeries acc(order);
        if (mod2(a) != mod2(b)) return acc;  // one of the halved arguments is non-integral
        long lmax = order + std::max<long>({0, -a, -b}) + 2 + boost;
        for (long l = 1; l <= lmax; ++l) {
            if (mod2(a + l) != 0) continue;
            acc += lpm->at((a + l) / 2).stretched(2) * lmp->at((b + l) / 2).stretched(2);
        }
        return acc;
    });
}

// ---- class O ----------------------------------------------------------------

namespace {

// L-style alternating tail: delta_{arg even} - sum_{j>0} l(arg - 2j).
USeries one_sided_sum(const LTable& table, long arg, int order) {
    USeries acc(order);
    if (mod2(arg) == 0) acc += USeries::one(order);
    for (long d = arg - 2; d >= -order; d -= 2) acc -= table.at(d);
    return acc;
}

}  // namespace

OSplitKernel::OSplitKernel(const ParameterSet& p, const Rational& alpha, int order, KernelOptions opt)
    : alpha_(alpha), order_(order), boost_(opt.cutoff_boost) {
    ParameterSet pplus = p.with_r(alpha);
    pp_ = std::make_shared<LTable>(Spec::from_params(p, order), Spec::from_params(p, order), order);
    pplus_ = std::make_shared<LTable>(Spec::from_params(pplus, order), Spec::from_params(pplus, order), order);
}

USeries OSplitKernel::l0(long a) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = l0_memo_.find(a);
        if (it != l0_memo_.end()) return it->second;
    }
    USeries v = one_sided_sum(*pp_, a, order_);
    std::lock_guard<std::mutex> lock(mu_);
    l0_memo_.emplace(a, v);
    return v;
}

USeries OSplitKernel::l1(long a) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = l1_memo_.find(a);
        if (it != l1_memo_.end()) return it->second;
    }
    USeries v = one_sided_sum(*pplus_, a - 1, order_);
    std::lock_guard<std::mutex> lock(mu_);
    l1_memo_.emplace(a, v);
    return v;
}

USeries OSplitKernel::s_sum(int tu, int tv, long a, long b) const {
    auto key = std::make_tuple(tu, tv, a, b);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = s_memo_.find(key);
        if (it != s_memo_.end()) return it->second;
    }
    auto lu = [&](long c) { return tu == 0 ? l0(c) : l1(c); };
    auto lv = [&](long c) { return tv == 0 ? l0(c) : l1(c); };
    USeries acc(order_);
    long lmax = order_ + std::max<long>({0, -a, -b}) + 6 + boost_;
    if (lmax % 2 == 1) ++lmax;  // keep cancelling tail pairs complete
    for (long l = 1; l <= lmax; ++l)
        acc += lu(a + l + 1) * lv(b + l) - lu(a + l) * lv(b + l + 1);
    std::lock_guard<std::mutex> lock(mu_);
    s_memo_.emplace(key, acc);
    return acc;
}

Block2 OSplitKernel::block(int tr, int tc, long a, long b) const {
    Block2 blk{s_sum(tr, tc, a, b), s_sum(tr, tc, a, b + 1), s_sum(tr, tc, a + 1, b),
               s_sum(tr, tc, a + 1, b + 1)};
    if (tr == 0 && tc == 1 && b > a) {
        blk.e00 += graded_power(alpha_, b - a, order_);
        blk.e01 += graded_power(alpha_, b - a + 1, order_);
        blk.e10 += graded_power(alpha_, b - a - 1, order_);
        blk.e11 += graded_power(alpha_, b - a, order_);
    }
    if (tr == 1 && tc == 0 && a > b) {
        blk.e00 -= graded_power(alpha_, a - b, order_);
        blk.e01 -= graded_power(alpha_, a - b - 1, order_);
        blk.e10 -= graded_power(alpha_, a - b + 1, order_);
        blk.e11 -= graded_power(alpha_, a - b, order_);
    }
    return blk;
}

OSplitAlphaOne::OSplitAlphaOne(const ParameterSet& p, int order) : order_(order) {
    pp_ = std::make_shared<LTable>(Spec::from_params(p, order), Spec::from_params(p, order), order);
    ESequence e = e_sequence(p, order);
    ESequence inv = e_inverse_sequence(p, order);
    // E+(z) = E(z) / (1 - z) with the adjoined parameter ungraded: the
    // coefficient of z^j is the partial sum of the graded e-sequence.
    eplus_.assign(static_cast<size_t>(order) + 2, USeries(order));
    USeries acc(order);
    for (long j = 0; j <= order + 1; ++j) {
        if (j <= order) acc += USeries::monomial(GaussianRational(e[static_cast<size_t>(j)]), j, order);
        eplus_[static_cast<size_t>(j)] = acc;
    }
    // E+(z)^{-1} = (1 - z) E(z)^{-1}.
    invplus_.assign(static_cast<size_t>(order) + 2, USeries(order));
    for (long k = 0; k <= order + 1; ++k) {
        USeries v(order);
        if (k <= order) v += USeries::monomial(GaussianRational(inv[static_cast<size_t>(k)]), k, order);
        if (k >= 1 && k - 1 <= order)
            v -= USeries::monomial(GaussianRational(inv[static_cast<size_t>(k - 1)]), k - 1, order);
        invplus_[static_cast<size_t>(k)] = v;
    }
}

USeries OSplitAlphaOne::lplus(long c) const {
    USeries acc(order_);
    for (long k = std::max<long>(0, -c); k <= order_ + 1; ++k) {
        long j = c + k;
        if (j < 0) continue;
        const USeries& ej = eplus_[static_cast<size_t>(std::min<long>(j, order_ + 1))];
        acc += ej * invplus_[static_cast<size_t>(k)];
    }
    return acc;
}

USeries OSplitAlphaOne::l0(long a) const {
    auto key = std::make_pair(0, a);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = l_memo_.find(key);
        if (it != l_memo_.end()) return it->second;
    }
    USeries v = one_sided_sum(*pp_, a, order_);
    std::lock_guard<std::mutex> lock(mu_);
    l_memo_.emplace(key, v);
    return v;
}

USeries OSplitAlphaOne::l1(long a) const {
    auto key = std::make_pair(1, a);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = l_memo_.find(key);
        if (it != l_memo_.end()) return it->second;
    }
    USeries v(order_);
    if (mod2(a - 1) == 0) v += USeries::one(order_);
    for (long d = a - 3; d >= -order_ - 2; d -= 2) v -= lplus(d);
    std::lock_guard<std::mutex> lock(mu_);
    l_memo_.emplace(key, v);
    return v;
}

USeries OSplitAlphaOne::s_sum(int tu, int tv, long a, long b) const {
    auto lu = [&](long c) { return tu == 0 ? l0(c) : l1(c); };
    auto lv = [&](long c) { return tv == 0 ? l0(c) : l1(c); };
    USeries acc(order_);
    long lmax = order_ + std::max<long>({0, -a, -b}) + 8;
    if (lmax % 2 == 1) ++lmax;
    for (long l = 1; l <= lmax; ++l)
        acc += lu(a + l + 1) * lv(b + l) - lu(a + l) * lv(b + l + 1);
    return acc;
}

OMixedParts::OMixedParts(const ParameterSet& p, const Rational& alpha, int order, KernelOptions opt)
    : alpha_(alpha), order_(order), boost_(opt.cutoff_boost) {
    ParameterSet pplus = p.with_r(alpha);
    p_pplus_ = std::make_shared<LTable>(Spec::from_params(p, order), Spec::from_params(pplus, order), order);
    pplus_p_ = std::make_shared<LTable>(Spec::from_params(pplus, order), Spec::from_params(p, order), order);
}

USeries OMixedParts::l0(long a) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = l0_memo_.find(a);
        if (it != l0_memo_.end()) return it->second;
    }
    USeries v(order_);
    if (mod2(a) == 0)
        v += USeries::one(order_);
    else
        v -= USeries::monomial(GaussianRational(alpha_), 1, order_);
    for (long d = a - 2; d >= -order_; d -= 2) v -= p_pplus_->at(d);
    std::lock_guard<std::mutex> lock(mu_);
    l0_memo_.emplace(a, v);
    return v;
}

USeries OMixedParts::l1(long a) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = l1_memo_.find(a);
        if (it != l1_memo_.end()) return it->second;
    }
    USeries v = -pplus_p_->at(a - 1);
    std::lock_guard<std::mutex> lock(mu_);
    l1_memo_.emplace(a, v);
    return v;
}

USeries OMixedParts::s_sum(int tu, int tv, long a, long b) const {
    auto key = std::make_tuple(tu, tv, a, b);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = s_memo_.find(key);
        if (it != s_memo_.end()) return it->second;
    }
    auto lu = [&](long c) { return tu == 0 ? l0(c) : l1(c); };
    auto lv = [&](long c) { return tv == 0 ? l0(c) : l1(c); };
    USeries acc(order_);
    long lmax = order_ + std::max<long>({0, -a, -b}) + 6 + boost_;
    if (lmax % 2 == 1) ++lmax;
    for (long l = 1; l <= lmax; ++l)
        acc += lu(a + l + 1) * lv(b + l) - lu(a + l) * lv(b + l + 1);
    std::lock_guard<std::mutex> lock(mu_);
    s_memo_.emplace(key, acc);
    return acc;
}

USeries OMixedParts::eps(long a, long b) const {
    if (a == b) return USeries::zero(order_);
    USeries v = graded_power(alpha_, std::abs(b - a) - 1, order_);
    return b > a ? v : -v;
}

Block2 OMixedParts::block(long a, long b) const {
    return {s_sum(0, 0, a, b), s_sum(0, 1, a, b), s_sum(1, 0, a, b), s_sum(1, 1, a, b) - eps(a, b)};
}

BlockKernel kernel_o_mixed(const ParameterSet& p, const Rational& alpha, int order, KernelOptions opt) {
    auto parts = std::make_shared<OMixedParts>(p, alpha, order, opt);
    BlockKernel k;
    k.arity = 2;
    k.order = order;
    k.block = [parts](long a, long b) { return parts->block(a, b); };
    return k;
}

// ---- class S ----------------------------------------------------------------

SSplitKernel::SSplitKernel(const ParameterSet& p, const Rational& beta, int order, KernelOptions opt)
    : beta_(beta), order_(order), boost_(opt.cutoff_boost) {
    ParameterSet pplus = p.with_q(beta);
    p_pplus_ = std::make_shared<LTable>(Spec::from_params(p, order), Spec::from_params(pplus, order), order);
    pp_ = std::make_shared<LTable>(Spec::from_params(p, order), Spec::from_params(p, order), order);
    pplusplus_ = std::make_shared<LTable>(Spec::from_params(pplus, order), Spec::from_params(pplus, order), order);
}

namespace {

// sum_{j >= 0} table(start + 2j) truncated by valuation on both sides.
USeries ascending_sum(const LTable& table, long start, int order) {
    USeries acc(order);
    long first = start;
    if (first < -static_cast<long>(order)) first += 2 * ((-static_cast<long>(order) - first + 1) / 2);
    for (long arg = first; arg <= order; arg += 2) acc += table.at(arg);
    return acc;
}

}  // namespace

USeries SSplitKernel::lfn(int which, int point_parity, long arg) const {
    auto key = std::make_tuple(which, point_parity, arg);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = l_memo_.find(key);
        if (it != l_memo_.end()) return it->second;
    }
    USeries v(order_);
    USeries beta_u = USeries::monomial(GaussianRational(beta_), 1, order_);
    if (which == 0) {
        v = p_pplus_->at(arg);
    } else if (which == 1) {
        if (point_parity == 0)
            v = ascending_sum(*pp_, arg + 1, order_);
        else
            v = beta_u * ascending_sum(*pplusplus_, arg + 2, order_);
    } else {
        if (point_parity == 0)
            v = beta_u * (USeries::one(order_) - ascending_sum(*pp_, arg, order_));
        else
            v = USeries::one(order_) - ascending_sum(*pplusplus_, arg + 1, order_);
    }
    std::lock_guard<std::mutex> lock(mu_);
    l_memo_.emplace(key, v);
    return v;
}

USeries SSplitKernel::s_sum(int tu, int tv, long a, long b) const {
    auto key = std::make_tuple(tu, tv, a, b);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = s_memo_.find(key);
        if (it != s_memo_.end()) return it->second;
    }
    int pa = static_cast<int>(mod2(a)), pb = static_cast<int>(mod2(b));
    USeries acc(order_);
    long lmax = order_ + std::max<long>({0, -a, -b}) + 8 + boost_;
    if (lmax % 2 == 1) ++lmax;
    for (long l = 1; l <= lmax; ++l)
        acc += lfn(tu, pa, a + l + 1) * lfn(tv, pb, b + l) -
               lfn(tu, pa, a + l) * lfn(tv, pb, b + l + 1);
    std::lock_guard<std::mutex> lock(mu_);
    s_memo_.emplace(key, acc);
    return acc;
}

Block2 SSplitKernel::block(int tr, int tc, long a, long b) const {
    auto beta_bits = [&](long e1, long e2) {
        return graded_power(beta_, mod2(e1) + mod2(e2), order_);
    };
    if (tr == 0 && tc == 0)
        return {s_sum(0, 0, a, b), s_sum(0, 1, a, b), s_sum(1, 0, a, b), s_sum(1, 1, a, b)};
    if (tr == 0 && tc == 1) {
        Block2 blk{s_sum(0, 2, a, b), s_sum(0, 0, a, b), s_sum(1, 2, a, b), s_sum(1, 0, a, b)};
        if (b > a) blk.e10 += beta_bits(a, b + 1);
        return blk;
    }
    if (tr == 1 && tc == 0) {
        Block2 blk{s_sum(2, 0, a, b), s_sum(2, 1, a, b), s_sum(0, 0, a, b), s_sum(0, 1, a, b)};
        if (a > b) blk.e01 -= beta_bits(a + 1, b);
        return blk;
    }
    return {s_sum(2, 2, a, b), s_sum(2, 0, a, b), s_sum(0, 2, a, b), s_sum(0, 0, a, b)};
}

namespace {

struct SMixedParts {
    Rational beta;
    int order;
    int boost;
    std::shared_ptr<LTable> p_pplus;   // (p, p+)
    std::shared_ptr<LTable> pplus_p;   // (p+, p)
    std::map<std::pair<int, long>, USeries> l_memo;
    std::map<std::tuple<int, int, long, long>, USeries> s_memo;
    std::mutex mu;

    USeries l(int which, long a) {
        auto key = std::make_pair(which, a);
        {
            std::lock_guard<std::mutex> lock(mu);
            auto it = l_memo.find(key);
            if (it != l_memo.end()) return it->second;
        }
        USeries v(order);
        if (which == 0) {
            v = p_pplus->at(a);
        } else {
            v = -graded_power(beta, mod2(a + 1), order);
            long first = a + 1;
            if (first < -static_cast<long>(order)) first += 2 * ((-static_cast<long>(order) - first + 1) / 2);
            for (long arg = first; arg <= order; arg += 2) v += pplus_p->at(arg);
        }
        std::lock_guard<std::mutex> lock(mu);
        l_memo.emplace(key, v);
        return v;
    }

    USeries s_sum(int tu, int tv, long a, long b) {
        auto key = std::make_tuple(tu, tv, a, b);
        {
            std::lock_guard<std::mutex> lock(mu);
            auto it = s_memo.find(key);
            if (it != s_memo.end()) return it->second;
        }
        USeries acc(order);
        long lmax = order + std::max<long>({0, -a, -b}) + 8 + boost;
        if (lmax % 2 == 1) ++lmax;
        for (long ll = 1; ll <= lmax; ++ll)
            acc += l(tu, a + ll + 1) * l(tv, b + ll) - l(tu, a + ll) * l(tv, b + ll + 1);
        std::lock_guard<std::mutex> lock(mu);
        s_memo.emplace(key, acc);
        return acc;
    }

    USeries eps(long a, long b) {
        if (a == b) return USeries::zero(order);
        USeries v = graded_power(beta, mod2(std::max(a, b) + 1) + mod2(std::min(a, b)), order);
        return b > a ? v : -v;
    }
};

}  // namespace

BlockKernel kernel_s_mixed(const ParameterSet& p, const Rational& beta, int order, KernelOptions opt) {
    auto parts = std::make_shared<SMixedParts>();
    parts->beta = beta;
    parts->order = order;
    parts->boost = opt.cutoff_boost;
    ParameterSet pplus = p.with_q(beta);
    parts->p_pplus = std::make_shared<LTable>(Spec::from_params(p, order), Spec::from_params(pplus, order), order);
    parts->pplus_p = std::make_shared<LTable>(Spec::from_params(pplus, order), Spec::from_params(p, order), order);
    BlockKernel k;
    k.arity = 2;
    k.order = order;
    k.block = [parts](long a, long b) {
        return Block2{parts->s_sum(0, 0, a, b), parts->s_sum(0, 1, a, b), parts->s_sum(1, 0, a, b),
                      parts->s_sum(1, 1, a, b) - parts->eps(a, b)};
    };
    return k;
}

// ---- class u ----------------------------------------------------------------

HyperKernel::HyperKernel(const ParameterSet& p, const Rational& alpha, int order, KernelOptions opt)
    : alpha_(alpha), order_(order), boost_(opt.cutoff_boost) {
    ParameterSet pplus = p.with_r(alpha);
    pp_ = std::make_shared<LTable>(Spec::from_params(p, order), Spec::from_params(p, order), order);
    p_pplus_ = std::make_shared<LTable>(Spec::from_params(p, order), Spec::from_params(pplus, order), order);
    pplus_p_ = std::make_shared<LTable>(Spec::from_params(pplus, order), Spec::from_params(p, order), order);
}

USeries HyperKernel::entry(int tr, int tc, long a, long b) const {
    auto key = std::make_tuple(tr, tc, a, b);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    const LTable& first = (tr == 0) ? *pp_ : *pplus_p_;
    const LTable& second = (tc == 0) ? *pp_ : *p_pplus_;
    USeries acc(order_);
    long lmax = order_ + std::max<long>({0, -a, -b}) + 2 + boost_;
    for (long l = 1; l <= lmax; ++l) acc += first.at(a + l) * second.at(b + l);
    if (tr == 1 && tc == 0 && a >= b) acc -= graded_power(alpha_, a - b, order_);
    std::lock_guard<std::mutex> lock(mu_);
    memo_.emplace(key, acc);
    return acc;
}

// ---- Frobenius-shape kernels -------------------------------------------------

namespace {

struct FrobTables {
    std::shared_ptr<LTable> xc;  // l over (x, x')
    std::shared_ptr<LTable> cx;  // l over (x', x)
};

FrobTables frob_tables(const ParameterSet& p, int order) {
    Spec x = Spec::from_params(p, order);
    Spec xc = x.conjugated();
    return {std::make_shared<LTable>(x, xc, order), std::make_shared<LTable>(xc, x, order)};
}

}  // namespace

BlockKernel kernel_frob_minus(const ParameterSet& p, int order, KernelOptions opt) {
    FrobTables t = frob_tables(p, order);
    int boost = opt.cutoff_boost;
    return make_scalar_kernel(order, false, [t, order, boost](long a, long b) {
        USeries acc(order);
        long lmax = order + std::abs(a) + std::abs(b) + 2 + boost;
        for (long l = -lmax; l <= lmax; ++l) {
            USeries term = t.xc->at(a + std::abs(l)) * t.cx->at(std::abs(b) + l);
            if (term.is_zero()) continue;
            if (l < 0 && parity_sign(l) < 0) term = -term;
            acc += term;
        }
        if (b < 0 && parity_sign(b) < 0) acc = -acc;
        return acc;
    });
}

BlockKernel kernel_frob_plus(const ParameterSet& p, int order, KernelOptions opt) {
    // A partition lies in the plus class exactly when its conjugate lies in
    // the minus class, and a belongs to {lambda_i - i + 1} exactly when 1 - a
    // avoids the conjugate's shifted descent set. Correlations therefore
    // reduce, through inclusion-exclusion, to det(I - K(S)) with the minus
    // kernel of the conjugate parameter set reflected through 1 - a.
    BlockKernel minus = kernel_frob_minus(p.conjugated(), order, opt);
    auto base = minus.scalar;
    return make_scalar_kernel(order, false,
                              [base](long a, long b) { return base(1 - a, 1 - b); });
}

namespace {

// Product-side coefficient tables for the half-integer kernel:
// P(c) = [z^c] E(z)E(1/z), Q(c) = [w^c] (E(w)E(1/w))^{-1}, graded.
struct HalfTables {
    Spec x;
    int order;
    std::map<long, USeries> pmemo, qmemo;
    std::mutex mu;

    USeries p(long c) {
        std::lock_guard<std::mutex> lock(mu);
        auto it = pmemo.find(c);
        if (it != pmemo.end()) return it->second;
        USeries s(order);
        for (long k = std::max<long>(0, -c); c + 2 * k <= order; ++k) {
            GaussianRational v = x.at(c + k) * x.at(k);
            if (!v.is_zero()) s.coeff_mut(static_cast<int>(c + 2 * k)) += v;
        }
        pmemo.emplace(c, s);
        return s;
    }
    USeries q(long c) {
        std::lock_guard<std::mutex> lock(mu);
        auto it = qmemo.find(c);
        if (it != qmemo.end()) return it->second;
        USeries s(order);
        for (long k = std::max<long>(0, -c); c + 2 * k <= order; ++k) {
            GaussianRational v = x.inv_at(c + k) * x.inv_at(k);
            if (!v.is_zero()) s.coeff_mut(static_cast<int>(c + 2 * k)) += v;
        }
        qmemo.emplace(c, s);
        return s;
    }
};

}  // namespace

BlockKernel kernel_frob_half_spec(const Spec& x, int order, KernelOptions opt) {
    auto tab = std::make_shared<HalfTables>();
    tab->x = x;
    tab->order = order;
    int boost = opt.cutoff_boost;
    return make_scalar_kernel(order, true, [tab, order, boost](long da, long db) {
        // Arguments are doubled half-integers (odd).
        if (mod2(da) == 0 || mod2(db) == 0) throw Error("half-integer kernel needs odd doubled points");
        USeries acc(order);
        long lmax = 2 * (order + boost) + std::abs(da) + std::abs(db) + 4;
        if (mod2(lmax) == 0) ++lmax;
        for (long dl = -lmax; dl <= lmax; dl += 2) {
            long zc = (da + std::abs(dl)) / 2;
            long wc = (std::abs(db) - dl) / 2;
            acc += tab->p(zc) * tab->q(wc);
        }
        return acc;
    });
}

BlockKernel kernel_frob_half(const ParameterSet& p, int order, KernelOptions opt) {
    return kernel_frob_half_spec(Spec::from_params(p, order), order, opt);
}

BlockKernel kernel_rot(const ParameterSet& p, int order, KernelOptions opt) {
    return kernel_frob_half_spec(Spec::rot_substituted(p, order), order, opt);
}

// ---- restrictions and extensions ---------------------------------------------

namespace {

void check_distinct(const std::vector<long>& s) {
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = i + 1; j < s.size(); ++j)
            if (s[i] == s[j]) throw DuplicateIndex();
}

}  // namespace

Matrix<USeries> restrict_scalar(const BlockKernel& k, const std::vector<long>& s) {
    if (k.arity != 1) throw Error("restrict_scalar on a block kernel");
    check_distinct(s);
    long n = static_cast<long>(s.size());
    Matrix<USeries> m(n, n, USeries::zero(k.order));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            m.at(i, j) = k.scalar(s[static_cast<size_t>(i)], s[static_cast<size_t>(j)]);
    return m;
}

Matrix<USeries> restrict_block(const BlockKernel& k, const std::vector<long>& s) {
    if (k.arity != 2) throw Error("restrict_block on a scalar kernel");
    check_distinct(s);
    long n = static_cast<long>(s.size());
    Matrix<USeries> m(2 * n, 2 * n, USeries::zero(k.order));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            Block2 blk = k.block(s[static_cast<size_t>(i)], s[static_cast<size_t>(j)]);
            m.at(2 * i, 2 * j) = blk.e00;
            m.at(2 * i, 2 * j + 1) = blk.e01;
            m.at(2 * i + 1, 2 * j) = blk.e10;
            m.at(2 * i + 1, 2 * j + 1) = blk.e11;
        }
    return m;
}

Matrix<USeries> extension_matrix(const BlockKernel& k, const std::vector<long>& s_plus,
                                 const std::vector<long>& s_minus) {
    for (long a : s_plus)
        for (long b : s_minus)
            if (a == b) throw OverlappingSets();
    check_distinct(s_plus);
    check_distinct(s_minus);
    GaussianRational iu = GaussianRational::i();
    long np = static_cast<long>(s_plus.size()), nm = static_cast<long>(s_minus.size());
    if (k.arity == 1) {
        Matrix<USeries> m(np + nm, np + nm, USeries::zero(k.order));
        auto val = [&](long r, long c) {
            long a = r < np ? s_plus[static_cast<size_t>(r)] : s_minus[static_cast<size_t>(r - np)];
            long b = c < np ? s_plus[static_cast<size_t>(c)] : s_minus[static_cast<size_t>(c - np)];
            USeries v = k.scalar(a, b);
            bool rp = r < np, cp = c < np;
            if (rp != cp) return v.scaled(iu);
            if (!rp && !cp) {
                USeries d = -v;
                if (r == c) d += USeries::one(k.order);
                return d;
            }
            return v;
        };
        for (long r = 0; r < np + nm; ++r)
            for (long c = 0; c < np + nm; ++c) m.at(r, c) = val(r, c);
        return m;
    }
    Matrix<USeries> m(2 * (np + nm), 2 * (np + nm), USeries::zero(k.order));
    for (long r = 0; r < np + nm; ++r)
        for (long c = 0; c < np + nm; ++c) {
            long a = r < np ? s_plus[static_cast<size_t>(r)] : s_minus[static_cast<size_t>(r - np)];
            long b = c < np ? s_plus[static_cast<size_t>(c)] : s_minus[static_cast<size_t>(c - np)];
            Block2 blk = k.block(a, b);
            bool rp = r < np, cp = c < np;
            if (rp != cp) {
                blk.e00 = blk.e00.scaled(iu);
                blk.e01 = blk.e01.scaled(iu);
                blk.e10 = blk.e10.scaled(iu);
                blk.e11 = blk.e11.scaled(iu);
            } else if (!rp && !cp) {
                blk.e00 = -blk.e00;
                blk.e01 = -blk.e01;
                blk.e10 = -blk.e10;
                blk.e11 = -blk.e11;
                if (r == c) {
                    blk.e01 += USeries::one(k.order);
                    blk.e10 -= USeries::one(k.order);
                }
            }
            m.at(2 * r, 2 * c) = blk.e00;
            m.at(2 * r, 2 * c + 1) = blk.e01;
            m.at(2 * r + 1, 2 * c) = blk.e10;
            m.at(2 * r + 1, 2 * c + 1) = blk.e11;
        }
    return m;
}

namespace {

template <class KernelT>
USeries split_correlation_impl(const KernelT& k, const std::vector<long>& s0,
                               const std::vector<long>& s1, int order) {
    check_distinct(s0);
    check_distinct(s1);
    long n0 = static_cast<long>(s0.size()), n1 = static_cast<long>(s1.size());
    long n = n0 + n1;
    Matrix<USeries> m(2 * n, 2 * n, USeries::zero(order));
    auto type_of = [&](long i) { return i < n0 ? 0 : 1; };
    auto point_of = [&](long i) {
        return i < n0 ? s0[static_cast<size_t>(i)] : s1[static_cast<size_t>(i - n0)];
    };
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            Block2 blk = k.block(type_of(i), type_of(j), point_of(i), point_of(j));
            m.at(2 * i, 2 * j) = blk.e00;
            m.at(2 * i, 2 * j + 1) = blk.e01;
            m.at(2 * i + 1, 2 * j) = blk.e10;
            m.at(2 * i + 1, 2 * j + 1) = blk.e11;
        }
    SeriesRing ring(order);
    return pfaffian(m, ring);
}

}  // namespace

USeries split_correlation_o(const OSplitKernel& k, const std::vector<long>& s0,
                            const std::vector<long>& s1) {
    return split_correlation_impl(k, s0, s1, k.order());
}

USeries split_correlation_s(const SSplitKernel& k, const std::vector<long>& s0,
                            const std::vector<long>& s1) {
    return split_correlation_impl(k, s0, s1, k.order());
}

USeries split_correlation_hyper(const HyperKernel& k, const std::vector<long>& s0,
                                const std::vector<long>& s1) {
    check_distinct(s0);
    check_distinct(s1);
    long n0 = static_cast<long>(s0.size()), n1 = static_cast<long>(s1.size());
    long n = n0 + n1;
    Matrix<USeries> m(n, n, USeries::zero(k.order()));
    auto type_of = [&](long i) { return i < n0 ? 0 : 1; };
    auto point_of = [&](long i) {
        return i < n0 ? s0[static_cast<size_t>(i)] : s1[static_cast<size_t>(i - n0)];
    };
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            m.at(i, j) = k.entry(type_of(i), type_of(j), point_of(i), point_of(j));
    SeriesRing ring(k.order());
    return det(m, ring);
}

// ---- F-matrix and Toeplitz sections -------------------------------------------

namespace {

// Graded F(alpha,beta) entry for 1-based indices j < k; the caller supplies
// whether each slot is u-graded.
USeries f_upper_entry(long j, long k, const Rational& alpha, bool grade_alpha, const Rational& beta,
                      bool grade_beta, int order) {
    long apow = k - j - 1;
    long b1 = mod2(j + 1), b2 = mod2(k);
    Rational coeff = alpha.pow(apow) * beta.pow(b1 + b2);
    long degree = (grade_alpha ? apow : 0) + (grade_beta ? b1 + b2 : 0);
    return USeries::monomial(GaussianRational(coeff), degree, order);
}

}  // namespace

Matrix<USeries> f_matrix(const Rational& alpha, const Rational& beta, long size, int order) {
    Matrix<USeries> m(size, size, USeries::zero(order));
    for (long j = 1; j <= size; ++j)
        for (long k = j + 1; k <= size; ++k) {
            USeries v = f_upper_entry(j, k, alpha, true, beta, true, order);
            m.at(j - 1, k - 1) = v;
            m.at(k - 1, j - 1) = -v;
        }
    return m;
}

Matrix<USeries> toeplitz_section(const std::function<USeries(long)>& sym, long size) {
    USeries probe = sym(0);
    Matrix<USeries> m(size, size, USeries::zero(probe.order()));
    for (long j = 0; j < size; ++j)
        for (long k = 0; k < size; ++k) m.at(j, k) = sym(k - j);
    return m;
}

// ---- factored gram matrices and the minor-inversion probes --------------------

namespace {

Rational seq_coef(const ESequence& s, long idx) {
    if (idx < 0 || idx >= static_cast<long>(s.size())) return Rational(0);
    return s[static_cast<size_t>(idx)];
}

}  // namespace

FactoredGram gram_u_class(const ParameterSet& x, const ParameterSet& y, int order) {
    auto ex = std::make_shared<ESequence>(e_sequence(x, order));
    auto ey = std::make_shared<ESequence>(e_sequence(y, order));
    auto ix = std::make_shared<ESequence>(e_inverse_sequence(x, order));
    auto iy = std::make_shared<ESequence>(e_inverse_sequence(y, order));
    FactoredGram g;
    g.order = order;
    g.entry = [ex, ey, order](long j, long k) {
        USeries s(order);
        for (long l = std::max(j, k); 2 * l - j - k <= order; ++l) {
            Rational c = seq_coef(*ey, l - j) * seq_coef(*ex, l - k);
            if (!c.is_zero()) s.coeff_mut(static_cast<int>(2 * l - j - k)) += GaussianRational(c);
        }
        return s;
    };
    g.inv_entry = [ix, iy, order](long j, long k) {
        USeries s(order);
        for (long l = 1; l <= std::min(j, k); ++l) {
            long deg = (j - l) + (k - l);
            if (deg > order) continue;
            Rational c = seq_coef(*ix, j - l) * seq_coef(*iy, k - l);
            if (!c.is_zero()) s.coeff_mut(static_cast<int>(deg)) += GaussianRational(c);
        }
        return s;
    };
    return g;
}

namespace {

// The definitional pairing sums come out as -T(E) F T(E)^t in this index
// convention, so both the matrix and its inverse carry a global sign
// relative to the bare Toeplitz product.
FactoredGram gram_f_core(const ParameterSet& x, const Rational& fa, bool ga, const Rational& fb,
                         bool gb, const Rational& ia, bool gia, const Rational& ib, bool gib,
                         int order) {
    auto e = std::make_shared<ESequence>(e_sequence(x, order));
    auto einv = std::make_shared<ESequence>(e_inverse_sequence(x, order));
    FactoredGram g;
    g.order = order;
    g.entry = [e, fa, ga, fb, gb, order](long j, long k) {
        USeries s(order);
        for (long l = j; l - j <= order; ++l) {
            Rational cl = seq_coef(*e, l - j);
            if (cl.is_zero()) continue;
            for (long m = k; (l - j) + (m - k) <= order; ++m) {
                if (l == m) continue;
                Rational cm = seq_coef(*e, m - k);
                if (cm.is_zero()) continue;
                USeries f = (m > l) ? f_upper_entry(l, m, fa, ga, fb, gb, order)
                                    : -f_upper_entry(m, l, fa, ga, fb, gb, order);
                s -= f.scaled(GaussianRational(cl * cm)) *
                     USeries::monomial(GaussianRational(1), (l - j) + (m - k), order);
            }
        }
        return s;
    };
    g.inv_entry = [einv, ia, gia, ib, gib, order](long j, long k) {
        USeries s(order);
        for (long l = 1; l <= j; ++l) {
            Rational cl = seq_coef(*einv, j - l);
            if (cl.is_zero()) continue;
            for (long m = 1; m <= k; ++m) {
                if (l == m) continue;
                if ((j - l) + (k - m) > order) continue;
                Rational cm = seq_coef(*einv, k - m);
                if (cm.is_zero()) continue;
                USeries f = (m > l) ? f_upper_entry(l, m, ia, gia, ib, gib, order)
                                    : -f_upper_entry(m, l, ia, gia, ib, gib, order);
                s += f.scaled(GaussianRational(cl * cm)) *
                     USeries::monomial(GaussianRational(1), (j - l) + (k - m), order);
            }
        }
        return s;
    };
    return g;
}

}  // namespace

FactoredGram gram_o_class(const ParameterSet& x, const Rational& alpha, int order) {
    // M = T(E) F(alpha, 1) T(E)^t;  M^{-1} = -T(E(1/z)^{-1}) F(1, -alpha) T(...)^t.
    return gram_f_core(x, alpha, true, Rational(1), false, Rational(1), false, -alpha, true, order);
}

FactoredGram gram_s_class(const ParameterSet& x, const Rational& beta, int order) {
    // M = T(E) F(1, beta) T(E)^t;  M^{-1} = -T(E(1/z)^{-1}) F(-beta, 1) T(...)^t.
    return gram_f_core(x, Rational(1), false, beta, true, -beta, true, Rational(1), false, order);
}

FactoredGram gram_hyper_class(const ParameterSet& x, const Rational& s, const Rational& t, int order) {
    auto e = std::make_shared<ESequence>(e_sequence(x, order));
    auto einv = std::make_shared<ESequence>(e_inverse_sequence(x, order));
    FactoredGram g;
    g.order = order;
    g.entry = [e, s, t, order](long j, long k) {
        USeries acc(order);
        for (long l = j; (l - j) / 2 <= order; l += 2) {
            Rational cl = seq_coef(*e, (l - j) / 2);
            if (cl.is_zero()) continue;
            for (long m = k; (l - j) / 2 + (m - k) / 2 <= order; m += 2) {
                if (l == m) continue;
                Rational cm = seq_coef(*e, (m - k) / 2);
                if (cm.is_zero()) continue;
                USeries f = (m > l) ? f_upper_entry(l, m, s, true, t, true, order)
                                    : -f_upper_entry(m, l, s, true, t, true, order);
                acc -= f.scaled(GaussianRational(cl * cm)) *
                       USeries::monomial(GaussianRational(1), (l - j) / 2 + (m - k) / 2, order);
            }
        }
        return acc;
    };
    g.inv_entry = [einv, s, t, order](long j, long k) {
        USeries acc(order);
        for (long l = j % 2 == 1 ? 1 : 2; l <= j; l += 2) {
            Rational cl = seq_coef(*einv, (j - l) / 2);
            if (cl.is_zero()) continue;
            for (long m = k % 2 == 1 ? 1 : 2; m <= k; m += 2) {
                if (l == m) continue;
                if ((j - l) / 2 + (k - m) / 2 > order) continue;
                Rational cm = seq_coef(*einv, (k - m) / 2);
                if (cm.is_zero()) continue;
                USeries f = (m > l) ? f_upper_entry(l, m, -t, true, s, true, order)
                                    : -f_upper_entry(m, l, -t, true, s, true, order);
                acc += f.scaled(GaussianRational(cl * cm)) *
                       USeries::monomial(GaussianRational(1), (j - l) / 2 + (k - m) / 2, order);
            }
        }
        return acc;
    };
    return g;
}

MinorProbeResult minor_inverse_probe(const FactoredGram& g, long m) {
    SeriesRing ring(g.order);
    Matrix<USeries> section(m, m, ring.zero());
    Matrix<USeries> inv_section(m, m, ring.zero());
    for (long j = 1; j <= m; ++j)
        for (long k = 1; k <= m; ++k) {
            section.at(j - 1, k - 1) = g.entry(j, k);
            inv_section.at(j - 1, k - 1) = g.inv_entry(j, k);
        }
    Matrix<USeries> section_inv = inverse_unit(section, ring);
    Matrix<USeries> inv_section_inv = inverse_unit(inv_section, ring);
    MinorProbeResult res;
    res.inv_defect_ord = Matrix<int>(m, m, 0);
    res.section_defect_ord = Matrix<int>(m, m, 0);
    for (long j = 0; j < m; ++j)
        for (long k = 0; k < m; ++k) {
            res.inv_defect_ord.at(j, k) = (section_inv.at(j, k) - inv_section.at(j, k)).ord();
            res.section_defect_ord.at(j, k) = (section.at(j, k) - inv_section_inv.at(j, k)).ord();
        }
    return res;
}

}  // namespace pfcorr
