#pragma once

#include <array>
#include <utility>
#include <vector>

#include "qcalab/complex_matrix.hpp"
#include "qcalab/internal_space.hpp"

namespace qcalab {

/// Walk parameters: coin space, mass angle theta (theta/dt is the rest
/// energy; must be 0 for boson species), lattice spacing dx and time step dt
/// (c = dx/dt).
struct WalkConfig {
    InternalSpace space;
    double theta = 0.0;
    double dx = 1.0;
    double dt = 1.0;
};

WalkConfig make_walk_config(Species species, double theta, double dx = 1.0, double dt = 1.0);

/// Momentum inside the Brillouin zone, components in (-pi/dx, pi/dx].
struct MomentumPoint {
    double kx = 0.0;
    double ky = 0.0;
    double kz = 0.0;

    double norm() const;
};

/// Eigenphases (ascending, in (-pi, pi]) and eigenvectors of one momentum
/// block of the walk unitary.
struct DispersionResult {
    std::vector<double> phases;
    ComplexMatrix vectors;
};

/// One momentum block of the walk unitary:
///   exp(-i theta Q) * prod_j exp(i k_j dx DeltaP_j).
ComplexMatrix walk_unitary_at_k(const WalkConfig& cfg, const MomentumPoint& k);

DispersionResult dispersion(const WalkConfig& cfg, const MomentumPoint& k);

using Vec3c = std::array<cdouble, 3>;

/// Longitudinal / right- / left-circular unit vectors for momentum k:
/// (k.J) v0 = 0, (k.J) v± = ±|k| v±, k·v± = 0. The |k|-degenerate ray
/// k ∥ ŷ is handled by rotating the k ∥ x̂ basis.
struct PolarizationBasis {
    Vec3c v0;
    Vec3c v_plus;
    Vec3c v_minus;
};

PolarizationBasis polarization_basis(const MomentumPoint& k);

/// Consistency defect of the plane-wave field equations: builds the
/// six-component field (Psi+, Psi-) = (E+iB, E-iB) from transverse
/// amplitudes, applies H = c sigma_Z ⊗ (k.J) and compares against the curl
/// action i c k x (block-signed). Returns ||difference|| / ||Psi||.
double maxwell_residual(const MomentumPoint& k, cdouble amplitude_plus, cdouble amplitude_minus,
                        double c_light = 1.0);

enum class Axis { X, Y, Z };

/// Momentum-space neighbor-swap and on-site-swap factors of the bosonic
/// lattice automaton, for one axis. Returned as (expA, expB), each 3x3
/// unitary.
std::pair<ComplexMatrix, ComplexMatrix> qca_ab_factors(Axis axis, const MomentumPoint& k, double dx);

/// Six-factor product expB_x expA_x expB_y expA_y expB_z expA_z (3x3), or its
/// doubled 6x6 version (block diag of the product at k and at -k).
ComplexMatrix qca_c_matrix(const MomentumPoint& k, double dx, bool doubled);

/// Closed-form 3x3 product: entries built from cos/sin of k_j dx.
ComplexMatrix qca_c_closed_form(const MomentumPoint& k, double dx);

struct QcaEigenphases {
    double phi0 = 0.0;
    double phi_plus = 0.0;
    double phi_minus = 0.0;
};

/// Closed-form eigenphases {0, ±arccos(G/2)} of the undoubled product, with
/// G = cx cy + cy cz + cz cx - sx sy sz - 1. Throws GOutOfRangeError if
/// |G| > 2 + 1e-12.
QcaEigenphases qca_c_eigenphases(const MomentumPoint& k, double dx);

}  // namespace qcalab
