#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pfcorr/params.hpp"

namespace pfcorr {

/// Weakly decreasing positive parts; empty list is the empty partition.
struct Partition {
    std::vector<long> parts;

    Partition() = default;
    explicit Partition(std::vector<long> p);

    long size() const { return static_cast<long>(parts.size()); }
    long weight() const;
    /// Part i (1-based); zero beyond the length.
    long part(long i) const {
        return (i >= 1 && i <= size()) ? parts[static_cast<size_t>(i - 1)] : 0;
    }

    Partition conjugate() const;

    friend bool operator==(const Partition& a, const Partition& b) { return a.parts == b.parts; }
    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const Partition& p);
};

struct FrobeniusCoords {
    std::vector<long> alpha;  // lambda_i - i on the diagonal, strictly decreasing
    std::vector<long> beta;   // lambda'_i - i, strictly decreasing

    long length() const { return static_cast<long>(alpha.size()); }
};

enum class ShapeClass { FrobMinus, FrobPlus, FrobZero, Other };

/// All partitions with |lambda| <= max_weight, graded by weight, within a
/// weight in decreasing lexicographic order (fixture-stable).
std::vector<Partition> enumerate_partitions(long max_weight);

FrobeniusCoords frobenius(const Partition& lam);
Partition from_frobenius(const FrobeniusCoords& fc);
ShapeClass shape_class(const Partition& lam);
/// Vacuously true for the empty partition (it belongs to every class).
bool in_shape_class(const Partition& lam, ShapeClass cls);

/// Membership in the descent set T(lambda) = { lambda_i - i : i >= 1 }
/// (parts beyond the length count as zero, so T contains the ray below
/// -length).
bool descent_member(const Partition& lam, long a);
std::vector<long> descent_window(const Partition& lam, long lo, long hi);

/// (|T ∩ N|, |Z^- \ T|); the two counts agree for every partition.
std::pair<long, long> balance_check(const Partition& lam);

/// (number of even parts of lambda', number of odd parts of lambda, |lambda|).
struct PartitionStats {
    long f_even_conj;
    long odd_parts;
    long weight;
};
PartitionStats partition_stats(const Partition& lam);

long odd_conjugate_parts(const Partition& lam);

/// Graded dual Jacobi-Trudi weight u^{|lambda|} * s_{lambda'} evaluated on a
/// generalized specialization: det(e_{lambda_k - k + j}).
USeries schur_dual_weight(const Partition& lam, const Spec& x, int order);
USeries schur_dual_weight(const Partition& lam, const ParameterSet& p, int order);

/// Ungraded s_{lambda'} value.
GaussianRational schur_dual_value(const Partition& lam, const Spec& x);

}  // namespace pfcorr
