#pragma once

#include <functional>
#include <map>
#include <vector>

#include "pfcorr/partition.hpp"

namespace pfcorr {

enum class MeasureClass { U, UU, O, S, Hyper, FrobMinus, FrobPlus, FrobHalf, Rot };

/// A partition measure, weighted and graded so that every infinite sum
/// truncates at u^(order+1): alpha and beta enter with one power of u each,
/// Schur weights with u^|lambda|.
struct MeasureSpec {
    MeasureClass cls = MeasureClass::U;
    ParameterSet p_plus;   // U/UU: first parameter set; all other classes: p
    ParameterSet p_minus;  // U/UU: second parameter set
    Rational alpha;        // O, Hyper
    Rational beta;         // S
    int order = 8;
};

/// Serial/parallel switch for the enumeration sums. The parallel path is an
/// OpenMP reduction over the partition list with a deterministic fold; the
/// serial path is the reference the tests compare against.
enum class SumMode { Serial, Parallel };
SumMode default_sum_mode();
void set_default_sum_mode(SumMode m);

/// Sum of term(lambda) over all |lambda| <= max_weight.
USeries partition_sum(long max_weight, int order,
                      const std::function<USeries(const Partition&)>& term, SumMode mode);
USeries partition_sum(long max_weight, int order,
                      const std::function<USeries(const Partition&)>& term);

/// Graded weight of one partition under the measure (unnormalized).
/// Hyper measures live on interlacing pairs; use hyper_weight for those.
USeries measure_weight(const MeasureSpec& spec, const Partition& lam);
USeries hyper_weight(const MeasureSpec& spec, const Partition& mu, const Partition& nu);
bool hyper_supported(const Partition& mu, const Partition& nu);

/// Normalization Z = sum of weights (constant term 1).
USeries normalization(const MeasureSpec& spec);

/// Pr(S subset of the class's point configuration), exact through u^order.
/// For FrobMinus/FrobPlus the configuration is {lambda_i - i + 1}; for
/// FrobHalf/Rot it is {lambda_i - i + 1/2} with doubled integer points.
USeries correlation_oracle(const MeasureSpec& spec, const std::vector<long>& s);

/// Split-row variants (classes O, S: even-row set S0 and odd-row set S1;
/// class Hyper: halved even rows S0 and halved odd rows S1).
USeries correlation_oracle_split(const MeasureSpec& spec, const std::vector<long>& s0,
                                 const std::vector<long>& s1);

/// Pr(S+ contained, S- avoided).
USeries superset_disjoint_oracle(const MeasureSpec& spec, const std::vector<long>& s_plus,
                                 const std::vector<long>& s_minus);

/// Pr(lambda_1 <= l).
USeries row_cdf_oracle(const MeasureSpec& spec, long l);

/// E prod_{x in T} (1 + f(x)) for finitely supported f.
USeries generating_functional_oracle(const MeasureSpec& spec, const std::map<long, Rational>& f);

/// Restricted (optionally signed) shape sums behind the Littlewood
/// identities: sum over lambda in the class with S inside {lambda_i - i + 1}
/// (ignored when S is empty) of sign * u^|lambda| s_{lambda'}(p).
enum class LittlewoodVariant { Minus, Plus, Zero, ZeroSigned };
USeries littlewood_shape_sum(LittlewoodVariant variant, const ParameterSet& p,
                             const std::vector<long>& s, int order);

/// Membership helpers shared with tests.
bool split_membership(const Partition& lam, int row_type, long a);
bool half_membership(const Partition& lam, long doubled);

/// The kappa-determinant reconstruction fixtures that validate the derived
/// class-S and class-u weights (interleaved column convention with a
/// (-1)^m prefactor; padding-independent).
USeries s_weight_reconstruction(const Partition& lam, const ParameterSet& p, const Rational& beta,
                                long m, int order);
USeries hyper_weight_reconstruction(const Partition& mu, const Partition& nu, const ParameterSet& p,
                                    const Rational& alpha, long m, int order);
USeries o_weight_reconstruction(const Partition& lam, const ParameterSet& p, const Rational& alpha,
                                long m, int order);

}  // namespace pfcorr
