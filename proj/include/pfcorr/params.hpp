#pragma once

#include <vector>

#include "pfcorr/rational.hpp"
#include "pfcorr/useries.hpp"

namespace pfcorr {

/// Specialization data for the generating series E(z) = exp(gamma*z) *
/// prod_i (1 + q_i z) * prod_j (1 - r_j z)^{-1}.
struct ParameterSet {
    std::vector<Rational> q;
    std::vector<Rational> r;
    Rational gamma;

    bool empty() const { return q.empty() && r.empty() && gamma.is_zero(); }

    /// Swaps the q- and r-lists; gamma is fixed. Involution.
    ParameterSet conjugated() const { return ParameterSet{r, q, gamma}; }

    /// Adjoins a value to the r-list (geometric factor (1 - a z)^{-1}).
    ParameterSet with_r(const Rational& a) const {
        ParameterSet p = *this;
        p.r.push_back(a);
        return p;
    }
    /// Adjoins a value to the q-list (linear factor (1 + b z)).
    ParameterSet with_q(const Rational& b) const {
        ParameterSet p = *this;
        p.q.push_back(b);
        return p;
    }

    /// Concatenation of parameter lists; E-series multiply.
    static ParameterSet disjoint_union(const ParameterSet& a, const ParameterSet& b);
};

/// Coefficients of E(z): coeffs[j] = [z^j] E(z), coeffs[0] = 1.
using ESequence = std::vector<Rational>;

ESequence e_sequence(const ParameterSet& p, int order);
/// Coefficients of E(z)^{-1}; convolving with e_sequence gives (1,0,...,0).
ESequence e_inverse_sequence(const ParameterSet& p, int order);

/// A generalized specialization: coefficient sequence of a formal E-series
/// over Q(i) together with its inverse sequence. Entry j is graded to
/// u-degree j by all consumers. Covers parameter sets, their conjugates, and
/// the substituted sequences used by the signed/rotated measures.
struct Spec {
    std::vector<GaussianRational> e;    // [z^j] E(z), e[0] = 1
    std::vector<GaussianRational> inv;  // [z^j] E(z)^{-1}

    int order() const { return static_cast<int>(e.size()) - 1; }
    GaussianRational at(long j) const {
        if (j < 0 || j >= static_cast<long>(e.size())) return {};
        return e[static_cast<size_t>(j)];
    }
    GaussianRational inv_at(long j) const {
        if (j < 0 || j >= static_cast<long>(inv.size())) return {};
        return inv[static_cast<size_t>(j)];
    }

    static Spec from_sequence(std::vector<GaussianRational> seq);
    static Spec from_params(const ParameterSet& p, int order);
    /// Conjugate specialization: e'[j] = [z^j] E(-z)^{-1} (the h-sequence).
    Spec conjugated() const;
    /// Substitution z^2 with alternating signs: e~[j] = [z^j] E(-z^2).
    static Spec uu_substituted(const ParameterSet& p, int order);
    /// Substitution e~[j] = [z^j] E(i z^2), Gaussian-rational entries.
    static Spec rot_substituted(const ParameterSet& p, int order);
};

/// Jacobi-Trudi column entry helper: graded weight u^{|lambda|} s_{lambda'}
/// lives in partitions.hpp; this module only provides sequences.

}  // namespace pfcorr
