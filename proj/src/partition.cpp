#include "pfcorr/partition.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "pfcorr/errors.hpp"
#include "pfcorr/linalg.hpp"

namespace pfcorr {

Partition::Partition(std::vector<long> p) : parts(std::move(p)) {
    for (size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] < 1) throw Error("partition parts must be positive");
        if (i > 0 && parts[i] > parts[i - 1]) throw Error("partition parts must be weakly decreasing");
    }
}

long Partition::weight() const {
    long w = 0;
    for (long p : parts) w += p;
    return w;
}

Partition Partition::conjugate() const {
    Partition c;
    if (parts.empty()) return c;
    c.parts.resize(static_cast<size_t>(parts[0]));
    for (long col = 1; col <= parts[0]; ++col) {
        long h = 0;
        while (h < size() && parts[static_cast<size_t>(h)] >= col) ++h;
        c.parts[static_cast<size_t>(col - 1)] = h;
    }
    return c;
}

std::string Partition::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i];
    os << "]";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Partition& p) {
    return os << p.str();
}

namespace {

void gen_rec(long remaining, long max_part, std::vector<long>& cur, std::vector<Partition>& out) {
    if (remaining == 0) {
        Partition p;
        p.parts = cur;
        out.push_back(std::move(p));
        return;
    }
    for (long first = std::min(remaining, max_part); first >= 1; --first) {
        cur.push_back(first);
        gen_rec(remaining - first, first, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Partition> enumerate_partitions(long max_weight) {
    std::vector<Partition> out;
    std::vector<long> cur;
    for (long w = 0; w <= max_weight; ++w) gen_rec(w, w, cur, out);
    return out;
}

FrobeniusCoords frobenius(const Partition& lam) {
    FrobeniusCoords fc;
    Partition conj = lam.conjugate();
    for (long i = 1; i <= lam.size() && lam.part(i) >= i; ++i) {
        fc.alpha.push_back(lam.part(i) - i);
        fc.beta.push_back(conj.part(i) - i);
    }
    return fc;
}

Partition from_frobenius(const FrobeniusCoords& fc) {
    long d = fc.length();
    std::vector<long> parts;
    for (long i = 1; i <= d; ++i) parts.push_back(fc.alpha[static_cast<size_t>(i - 1)] + i);
    // Rows below the diagonal block from the beta legs.
    long max_beta = d > 0 ? fc.beta[0] : -1;
    for (long row = d + 1; row <= d + max_beta; ++row) {
        long cnt = 0;
        for (long j = 0; j < d; ++j)
            if (fc.beta[static_cast<size_t>(j)] + (j + 1) >= row) ++cnt;
        if (cnt == 0) break;
        parts.push_back(cnt);
    }
    return Partition(std::move(parts));
}

ShapeClass shape_class(const Partition& lam) {
    FrobeniusCoords fc = frobenius(lam);
    bool minus = true, plus = true, zero = true;
    for (long i = 0; i < fc.length(); ++i) {
        long a = fc.alpha[static_cast<size_t>(i)], b = fc.beta[static_cast<size_t>(i)];
        if (a != b - 1) minus = false;
        if (a != b + 1) plus = false;
        if (a != b) zero = false;
    }
    if (fc.length() == 0) return ShapeClass::FrobZero;  // empty shape is in every class; report Zero
    if (minus) return ShapeClass::FrobMinus;
    if (plus) return ShapeClass::FrobPlus;
    if (zero) return ShapeClass::FrobZero;
    return ShapeClass::Other;
}

bool in_shape_class(const Partition& lam, ShapeClass cls) {
    if (cls == ShapeClass::Other) return shape_class(lam) == ShapeClass::Other;
    FrobeniusCoords fc = frobenius(lam);
    long shift = cls == ShapeClass::FrobMinus ? -1 : cls == ShapeClass::FrobPlus ? 1 : 0;
    for (long i = 0; i < fc.length(); ++i)
        if (fc.alpha[static_cast<size_t>(i)] != fc.beta[static_cast<size_t>(i)] + shift) return false;
    return true;
}

bool descent_member(const Partition& lam, long a) {
    if (a < -lam.size()) return true;  // lambda_i = 0 for i = -a > length
    for (long i = 1; i <= lam.size(); ++i)
        if (lam.part(i) - i == a) return true;
    return false;
}

std::vector<long> descent_window(const Partition& lam, long lo, long hi) {
    std::vector<long> out;
    for (long a = lo; a <= hi; ++a)
        if (descent_member(lam, a)) out.push_back(a);
    return out;
}

std::pair<long, long> balance_check(const Partition& lam) {
    long nonneg = 0;
    for (long i = 1; i <= lam.size(); ++i)
        if (lam.part(i) - i >= 0) ++nonneg;
    long missing = 0;
    for (long a = -lam.size(); a <= -1; ++a)
        if (!descent_member(lam, a)) ++missing;
    return {nonneg, missing};
}

PartitionStats partition_stats(const Partition& lam) {
    Partition conj = lam.conjugate();
    long f = 0;
    for (long p : conj.parts)
        if (p % 2 == 0) ++f;
    long odd = 0;
    for (long p : lam.parts)
        if (p % 2 == 1) ++odd;
    return {f, odd, lam.weight()};
}

long odd_conjugate_parts(const Partition& lam) {
    Partition conj = lam.conjugate();
    long odd = 0;
    for (long p : conj.parts)
        if (p % 2 == 1) ++odd;
    return odd;
}

GaussianRational schur_dual_value(const Partition& lam, const Spec& x) {
    long n = lam.size();
    if (n == 0) return GaussianRational(1);
    Matrix<GaussianRational> m(n, n);
    for (long j = 1; j <= n; ++j)
        for (long k = 1; k <= n; ++k) m.at(j - 1, k - 1) = x.at(lam.part(k) - k + j);
    return field_det(m);
}

USeries schur_dual_weight(const Partition& lam, const Spec& x, int order) {
    if (lam.weight() > order) return USeries::zero(order);
    return USeries::monomial(schur_dual_value(lam, x), lam.weight(), order);
}

USeries schur_dual_weight(const Partition& lam, const ParameterSet& p, int order) {
    // Jacobi-Trudi indices never exceed lambda_1 + length - 1 <= |lambda|.
    int need = static_cast<int>(std::max<long>(order, lam.weight()));
    return schur_dual_weight(lam, Spec::from_params(p, need), order);
}

}  // namespace pfcorr
