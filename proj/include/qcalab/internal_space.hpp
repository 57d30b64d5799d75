#pragma once

#include <array>
#include <optional>

#include "qcalab/complex_matrix.hpp"

namespace qcalab {

enum class Species { Fermion, Boson, BosonDoubled };

/// Coin-space operator set for one particle species: shift projectors per
/// axis, their differences DeltaP_j = P_j^+ - P_j^-, the coin generator Q and
/// (where it exists) the parity operator.
struct InternalSpace {
    Species species = Species::Fermion;
    std::size_t dim = 0;
    ComplexMatrix Q;  // zero matrix for the massless boson
    std::array<ComplexMatrix, 3> P_plus;
    std::array<ComplexMatrix, 3> P_minus;
    std::optional<std::array<ComplexMatrix, 3>> P_zero;  // bosons only
    std::array<ComplexMatrix, 3> DeltaP;
    std::optional<ComplexMatrix> parity;  // absent for the undoubled boson
};

/// Measured equal-norm constants. c is the cross-axis +/- overlap constant,
/// c_prime the boson 0-sector constant, max_violation the largest deviation
/// over every checked sandwich identity.
struct EqualNormReport {
    double c = 0.0;
    std::optional<double> c_prime;
    double max_violation = 0.0;
};

/// Dirac-representation gamma matrices {gamma_0, gamma_1, gamma_2, gamma_3}.
std::array<ComplexMatrix, 4> dirac_gammas();

/// Spin-1 generators {J_X, J_Y, J_Z}.
std::array<ComplexMatrix, 3> spin1_generators();

/// Four-dimensional coin space with Q = gamma_0, DeltaP_j = gamma_0 gamma_j,
/// P_j^± = (I ± gamma_0 gamma_j)/2.
InternalSpace build_fermion_space();

/// Spin-1 coin space: P^± = (J² ± J)/2, P⁰ = I - J². With `doubled`, the
/// six-dimensional version with DeltaP_j = sigma_Z ⊗ J_j and parity
/// sigma_X ⊗ I.
InternalSpace build_boson_space(bool doubled);

/// Checks every sandwich identity P_i^k P_j^k' P_i^k = c P_i^k (and the
/// 0-sector variants for bosons) for i≠j. Throws
/// ViolationAboveToleranceError when the worst deviation exceeds 1e-12.
EqualNormReport verify_equal_norm(const InternalSpace& space);

}  // namespace qcalab
