#include "pfcorr/params.hpp"

#include <cstddef>

namespace pfcorr {

ParameterSet ParameterSet::disjoint_union(const ParameterSet& a, const ParameterSet& b) {
    ParameterSet p = a;
    p.q.insert(p.q.end(), b.q.begin(), b.q.end());
    p.r.insert(p.r.end(), b.r.begin(), b.r.end());
    p.gamma += b.gamma;
    return p;
}

namespace {

// c *= (1 + a z) truncated.
void mul_linear(ESequence& c, const Rational& a) {
    for (size_t j = c.size(); j-- > 1;) c[j] += a * c[j - 1];
}

// c *= (1 - a z)^{-1} truncated, i.e. c[j] += a * c[j-1] cumulatively.
void mul_geometric(ESequence& c, const Rational& a) {
    for (size_t j = 1; j < c.size(); ++j) c[j] += a * c[j - 1];
}

// c *= exp(g z) truncated.
void mul_exp(ESequence& c, const Rational& g) {
    if (g.is_zero()) return;
    ESequence out(c.size(), Rational(0));
    Rational gk(1);  // g^k / k!
    for (size_t k = 0; k < c.size(); ++k) {
        if (k > 0) gk = gk * g / Rational(static_cast<long>(k));
        for (size_t j = 0; j + k < c.size(); ++j) out[j + k] += c[j] * gk;
    }
    c = std::move(out);
}

}  // namespace

ESequence e_sequence(const ParameterSet& p, int order) {
    ESequence c(static_cast<size_t>(order) + 1, Rational(0));
    c[0] = Rational(1);
    for (const auto& a : p.q) mul_linear(c, a);
    for (const auto& a : p.r) mul_geometric(c, a);
    mul_exp(c, p.gamma);
    return c;
}

ESequence e_inverse_sequence(const ParameterSet& p, int order) {
    // E(z)^{-1} has the roles of q and r swapped with negated values.
    ESequence c(static_cast<size_t>(order) + 1, Rational(0));
    c[0] = Rational(1);
    for (const auto& a : p.r) mul_linear(c, -a);
    for (const auto& a : p.q) mul_geometric(c, -a);
    mul_exp(c, -p.gamma);
    return c;
}

namespace {

std::vector<GaussianRational> invert_sequence(const std::vector<GaussianRational>& e) {
    std::vector<GaussianRational> inv(e.size());
    inv[0] = e[0].inverse();
    for (size_t n = 1; n < e.size(); ++n) {
        GaussianRational acc;
        for (size_t k = 1; k <= n; ++k) acc += e[k] * inv[n - k];
        inv[n] = -(acc * inv[0]);
    }
    return inv;
}

}  // namespace

Spec Spec::from_sequence(std::vector<GaussianRational> seq) {
    Spec s;
    s.e = std::move(seq);
    s.inv = invert_sequence(s.e);
    return s;
}

Spec Spec::from_params(const ParameterSet& p, int order) {
    ESequence e = e_sequence(p, order);
    ESequence ei = e_inverse_sequence(p, order);
    Spec s;
    s.e.assign(e.begin(), e.end());
    s.inv.assign(ei.begin(), ei.end());
    return s;
}

Spec Spec::conjugated() const {
    // [z^j] E(-z)^{-1}: inverse sequence with alternating signs.
    std::vector<GaussianRational> h(inv.size());
    for (size_t j = 0; j < inv.size(); ++j) h[j] = (j % 2 == 0) ? inv[j] : -inv[j];
    return from_sequence(std::move(h));
}

Spec Spec::uu_substituted(const ParameterSet& p, int order) {
    ESequence e = e_sequence(p, order / 2);
    std::vector<GaussianRational> seq(static_cast<size_t>(order) + 1);
    for (size_t m = 0; 2 * m < seq.size(); ++m)
        seq[2 * m] = GaussianRational((m % 2 == 0) ? e[m] : -e[m]);
    return from_sequence(std::move(seq));
}

Spec Spec::rot_substituted(const ParameterSet& p, int order) {
    ESequence e = e_sequence(p, order / 2);
    std::vector<GaussianRational> seq(static_cast<size_t>(order) + 1);
    for (size_t m = 0; 2 * m < seq.size(); ++m)
        seq[2 * m] = i_power(static_cast<long>(m)) * GaussianRational(e[m]);
    return from_sequence(std::move(seq));
}

}  // namespace pfcorr
