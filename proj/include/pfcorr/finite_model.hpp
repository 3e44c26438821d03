#pragma once

#include <vector>

#include "pfcorr/linalg.hpp"

namespace pfcorr {

/// Which of the four correlation constructions a model instantiates:
/// a pfaffian model on one space (functions phi_1..phi_2m and an
/// antisymmetric pairing eps), a pfaffian model on two spaces (phi on X,
/// psi on Y, pairing kappa), and their determinantal variants (m functions,
/// det instead of pf).
enum class ModelKind { PfOneSpace, PfTwoSpace, DetTwoSpace, DetOneSpace };

struct FiniteModel {
    ModelKind kind;
    long m = 0;  // half the function count for pf kinds; the count for det kinds

    long nx = 0;
    long ny = 0;                         // 0 for one-space kinds
    std::vector<Rational> weight_x;      // measure on X
    std::vector<Rational> weight_y;      // measure on Y
    Matrix<GaussianRational> phi;        // (2m or m) x nx
    Matrix<GaussianRational> psi;        // (2m or m) x ny (DetOneSpace: x nx)
    Matrix<GaussianRational> eps;        // nx x nx antisymmetric (PfOneSpace)
    Matrix<GaussianRational> kappa;      // nx x ny (two-space kinds)

    long function_count() const {
        return (kind == ModelKind::PfOneSpace || kind == ModelKind::PfTwoSpace) ? 2 * m : m;
    }
    void validate() const;
};

/// A point of the (possibly two-space) ground set: space 0 = X, 1 = Y.
struct ModelPoint {
    int space;
    long index;
};

Matrix<GaussianRational> gram_matrix(const FiniteModel& model);

/// pf (or det for the determinantal kinds) of the gram matrix; throws
/// SingularGram when zero.
GaussianRational gram_normalizer(const FiniteModel& model);

/// Brute-force correlation by definitional tuple summation.
GaussianRational correlation_direct(const FiniteModel& model, const std::vector<long>& s);
GaussianRational correlation_direct(const FiniteModel& model, const std::vector<long>& s0,
                                    const std::vector<long>& s1);

/// Closed-form kernel of the model, evaluated pointwise. For pf kinds the
/// block is 2x2 (returned row-major), for det kinds only e00 is meaningful.
struct ModelKernel {
    const FiniteModel* model;
    Matrix<GaussianRational> minv_t;  // M^{-t}
    // cached smeared functions
    Matrix<GaussianRational> eps_phi;    // (eps . phi_j)(x)
    Matrix<GaussianRational> kappa_psi;  // (kappa . psi_j)(x)
    Matrix<GaussianRational> kappat_phi; // (kappa^t . phi_j)(y)

    std::vector<GaussianRational> block(const ModelPoint& a, const ModelPoint& b) const;
};

ModelKernel closed_kernel(const FiniteModel& model);

GaussianRational correlation_closed(const FiniteModel& model, const std::vector<long>& s);
GaussianRational correlation_closed(const FiniteModel& model, const std::vector<long>& s0,
                                    const std::vector<long>& s1);
GaussianRational correlation_closed(const ModelKernel& kernel, const std::vector<long>& s);
GaussianRational correlation_closed(const ModelKernel& kernel, const std::vector<long>& s0,
                                    const std::vector<long>& s1);

/// Left side of the de Bruijn identity: the full 2m-fold sum divided by (2m)!;
/// contract: equals pf(gram_matrix).
GaussianRational debruijn_constant(const FiniteModel& model);

/// pf(K(S)) is invariant under pointwise conjugation by unit-determinant
/// 2x2 maps; helper applying the transform for tests.
GaussianRational correlation_closed_conjugated(
    const ModelKernel& kernel, const std::vector<long>& s,
    const std::vector<Matrix<GaussianRational>>& transform);

}  // namespace pfcorr
