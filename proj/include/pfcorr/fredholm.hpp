#pragma once

#include <map>
#include <string>

#include "pfcorr/kernels.hpp"

namespace pfcorr {

/// Inclusive integer index range; empty when hi < lo. Soundness of a window
/// (invariance under enlargement) is a tested property, not an assumption.
struct Window {
    long lo;
    long hi;
};

std::vector<long> window_points(const Window& w);

/// pf((J + scale * K)(W)) for an antisymmetric block kernel.
USeries fredholm_pf(const BlockKernel& k, const Window& w, const Rational& scale = Rational(1));
USeries fredholm_pf_points(const BlockKernel& k, const std::vector<long>& pts, const Rational& scale);

/// det((I + scale * K)(W)) for a scalar kernel; equals the pfaffian of the
/// embedded 2x2 kernel.
USeries fredholm_det(const BlockKernel& k, const Window& w, const Rational& scale = Rational(1));

/// pf(J + K) under the measure reweighted by 1 + f: equals
/// E prod_{x in T} (1 + f(x)) for the represented point process. Scalar
/// kernels are embedded first.
USeries correls_functional(const BlockKernel& k, const std::map<long, Rational>& f);

/// Subset-sum evaluation of pf(J+K) over a small window (definition check).
USeries fredholm_pf_subset_sum(const BlockKernel& k, const Window& w, const Rational& scale = Rational(1));

/// Gap probabilities Pr(lambda_1 <= l) through the kernels.
USeries gap_probability_u(const ParameterSet& p_plus, const ParameterSet& p_minus, long l, int order);
USeries gap_probability_uu(const ParameterSet& p_plus, const ParameterSet& p_minus, long l, int order);
USeries gap_probability_o(const ParameterSet& p, const Rational& alpha, long l, int order);
USeries gap_probability_s(const ParameterSet& p, const Rational& beta, long l, int order);

/// Three-way identity linking the whole-line pfaffian with the two
/// half-line pfaffians, at t = s^4 (all radicals exact).
struct DisccontReport {
    USeries whole_line;
    USeries plus_side;
    USeries minus_side;
    bool ok = false;
};
DisccontReport disccont_check(const BlockKernel& scalar_kernel, long n, const Rational& s, int order);
/// Scalar-kernel corollary (determinant form).
DisccontReport disccont_check_scalar(const BlockKernel& scalar_kernel, long n, const Rational& s,
                                     int order);

/// Randomized checks of the three Fredholm-pfaffian properties
/// (pf^2 = det(I + J^{-1}K), congruence multiplicativity, and the
/// conjugation identity).
struct IdentityReport {
    std::vector<std::pair<std::string, bool>> items;
    int passed() const;
    int failed() const;
    bool ok() const { return failed() == 0; }
};
IdentityReport pf_identity_suite(unsigned seed, int order, int instances = 3);

}  // namespace pfcorr
