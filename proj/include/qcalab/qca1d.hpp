#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "qcalab/complex_matrix.hpp"

namespace qcalab {

enum class LatticeSpecies { Fermion, Boson };

/// Periodic 1D lattice of N sites, two modes per site labeled (x,+) and
/// (x,-). Fermion modes are qubits; boson modes are oscillator modes
/// truncated by total occupation number.
struct Lattice1DConfig {
    std::size_t n_sites = 2;
    LatticeSpecies species = LatticeSpecies::Fermion;
    double theta = 0.0;             // mass angle, fermions only
    std::size_t boson_truncation = 0;  // max total boson number
};

void validate_config(const Lattice1DConfig& cfg);

/// Mode index: site-major, + before -, so mode(x, s) = 2x + (s == '-').
inline std::size_t mode_index(std::size_t x, bool minus) { return 2 * x + (minus ? 1 : 0); }

/// Occupation basis for bosons: all occupation vectors over n_modes modes
/// with total <= max_total, ordered lexicographically.
class BosonBasis {
public:
    BosonBasis(std::size_t n_modes, std::size_t max_total);

    std::size_t n_modes() const { return n_modes_; }
    std::size_t max_total() const { return max_total_; }
    std::size_t dim() const { return states_.size(); }
    const std::vector<std::uint8_t>& state(std::size_t idx) const { return states_[idx]; }
    std::size_t index_of(const std::vector<std::uint8_t>& occ) const;

private:
    std::size_t n_modes_;
    std::size_t max_total_;
    std::vector<std::vector<std::uint8_t>> states_;
};

std::size_t state_dimension(const Lattice1DConfig& cfg);

/// Two-qubit coin gate: fixes |00>, mixes |01>,|10> with angle theta, and
/// flips the sign of |11> (the crossing phase). Basis order 00,01,10,11.
ComplexMatrix coin_gate(double theta);

/// Two-qubit shift gate: swap of |01>,|10> with the same |11> sign flip.
ComplexMatrix shift_gate();

/// State vector on the occupation basis of one lattice.
struct LatticeState1D {
    Lattice1DConfig cfg;
    std::vector<cdouble> amplitudes;
};

LatticeState1D vacuum_state(const Lattice1DConfig& cfg);
/// a†_{x,s} |vac> for bosons; the single-qubit excitation for fermions.
LatticeState1D single_excitation_state(const Lattice1DConfig& cfg, std::size_t x, bool minus);
double state_norm(const LatticeState1D& s);

std::string basis_label(const Lattice1DConfig& cfg, std::size_t idx, const BosonBasis* basis);
std::vector<std::tuple<std::string, double, double>> export_records(const LatticeState1D& s);
LatticeState1D state_from_records(const Lattice1DConfig& cfg,
                                  const std::vector<std::tuple<std::string, double, double>>& recs);

/// One step of the free automaton, U = C_layer * Shift_layer. The shift layer
/// couples (x,+) with (x+1,-); the coin layer couples (x,+) with (x,-).
/// Fermions use the explicit gate tables; bosons use the number-conserving
/// two-mode swap exponentials restricted to the truncated space.
class Evolution1D {
public:
    explicit Evolution1D(const Lattice1DConfig& cfg);

    const Lattice1DConfig& config() const { return cfg_; }
    std::size_t dim() const { return dim_; }
    const BosonBasis* boson_basis() const { return basis_ ? &*basis_ : nullptr; }

    // `inner` copies of the inner tensor factor trail each basis index
    // (used to act on one factor of a joint space or on packed columns).
    void apply(std::vector<cdouble>& v, std::size_t inner = 1) const;
    void apply_dagger(std::vector<cdouble>& v, std::size_t inner = 1) const;
    void apply_coin(std::vector<cdouble>& v, bool dagger, std::size_t inner = 1) const;
    void apply_shift(std::vector<cdouble>& v, bool dagger, std::size_t inner = 1) const;
    /// Diagonal sign (-1)^{sum_x n_{x,+}} (the operator V of the time-reversal
    /// construction; self-inverse).
    void apply_plus_mode_sign(std::vector<cdouble>& v, std::size_t inner = 1) const;

    /// tau U tau† = U†. For the boson exponential gates tau = C_layer V†; the
    /// fermion gate tables are real symmetric involutions, so tau = C_layer.
    void apply_tau(std::vector<cdouble>& v, bool dagger, std::size_t inner = 1) const;

    ComplexMatrix to_matrix(std::size_t max_dim = 8192) const;

    /// Restriction to the one-excitation sector, a 2N x 2N unitary indexed by
    /// mode (site-major, + before -).
    ComplexMatrix single_particle_block() const;

    LatticeState1D step(const LatticeState1D& in, std::size_t n_steps) const;

private:
    void apply_fermion_gate(std::vector<cdouble>& v, const ComplexMatrix& g, std::size_t q1,
                            std::size_t q2, std::size_t inner) const;
    void apply_boson_swap(std::vector<cdouble>& v, std::size_t p, std::size_t q, bool dagger,
                          std::size_t inner) const;

    Lattice1DConfig cfg_;
    std::size_t dim_ = 0;
    std::optional<BosonBasis> basis_;
    std::vector<ComplexMatrix> swap_blocks_;  // boson: exp(-i pi/2 H_t) per total t
};

Evolution1D build_evolution(const Lattice1DConfig& cfg);
ComplexMatrix single_particle_block(const Lattice1DConfig& cfg);

/// ||tau U tau† - U†||_F, computed column-blockwise.
double time_reversal_defect(const Lattice1DConfig& cfg);

/// Interaction coefficients alpha_{l,m,n} (indices in {+,-}; slot = 4l+2m+n
/// with 0 for + and 1 for -), an even range M and a per-offset profile for
/// offsets y = -M/2..M/2 (empty profile means the strictly on-site form).
/// site_scale, when present, multiplies the term anchored at site x (used to
/// break translation invariance on purpose).
struct InteractionCoeffs {
    std::array<cdouble, 8> alpha{};
    std::size_t range = 0;
    std::vector<cdouble> profile;
    std::vector<double> site_scale;
};

std::size_t alpha_slot(bool l_minus, bool m_minus, bool n_minus);

/// exp(-i H_I) on the joint (fermion ⊗ boson) space, H_I the number-
/// conserving fermion-bilinear / boson-linear coupling. Exponentiated
/// exactly per fermion-number sector, so the result is exactly unitary on
/// the truncated space.
class InteractionUnitary {
public:
    InteractionUnitary(const Lattice1DConfig& cfg_f, const Lattice1DConfig& cfg_b,
                       const InteractionCoeffs& coeffs);

    std::size_t dim() const { return dim_f_ * dim_b_; }
    std::size_t dim_fermion() const { return dim_f_; }
    std::size_t dim_boson() const { return dim_b_; }

    void apply(std::vector<cdouble>& v) const;
    /// Left-multiplies a dense matrix whose row index lives on the joint
    /// space: returns U_I * w.
    ComplexMatrix multiply_dense(const ComplexMatrix& w) const;
    ComplexMatrix to_matrix(std::size_t max_dim = 8192) const;

private:
    std::size_t dim_f_, dim_b_;
    // one dense unitary block per fermion-number sector
    std::vector<std::vector<std::size_t>> sector_fermion_states_;
    std::vector<ComplexMatrix> sector_blocks_;
};

/// Dense H_I on the joint space (diagnostic sizes only).
ComplexMatrix interaction_hamiltonian(const Lattice1DConfig& cfg_f, const Lattice1DConfig& cfg_b,
                                      const InteractionCoeffs& coeffs, std::size_t max_dim = 8192);

/// Basis permutation of the one-site translation x -> x+1.
std::vector<std::size_t> translation_permutation(const Lattice1DConfig& cfg);
std::vector<std::size_t> joint_translation_permutation(const Lattice1DConfig& cfg_f,
                                                       const Lattice1DConfig& cfg_b);

/// ||U P - P U||_F for a permutation operator P given as index map.
double translation_commutator_norm(const ComplexMatrix& u, const std::vector<std::size_t>& perm);
/// Same, with P the one-site translation of both lattices; u acts on the
/// joint space (fermion-major).
double translation_commutator(const ComplexMatrix& u, const Lattice1DConfig& cfg_f,
                              const Lattice1DConfig& cfg_b);

/// Per-momentum occupation of positive- and negative-energy modes of a boson
/// state. Momenta k_l = 2 pi l / N, l in (-N/2, N/2]. Branch bookkeeping:
/// (k,+) counts positive for 0 <= l < N/2 and negative otherwise; (k,-)
/// mirrors it ((k,-) positive for -N/2 < l <= 0).
struct ModePopulations {
    std::vector<double> k;
    std::vector<double> positive;
    std::vector<double> negative;

    double total_positive() const;
    double total_negative() const;
};

ModePopulations negative_mode_population(const LatticeState1D& state);

/// Same populations for the boson factor of a joint (fermion ⊗ boson,
/// fermion-major) state vector.
ModePopulations joint_negative_mode_population(const std::vector<cdouble>& joint,
                                               const Lattice1DConfig& cfg_f,
                                               const Lattice1DConfig& cfg_b);

/// Momentum-mode creation: a†_{k,s} |vac> with a_{k,s} = (1/sqrt N) sum_x
/// e^{+ixk} a_{x,s}, k = 2 pi l / N.
LatticeState1D momentum_excitation_state(const Lattice1DConfig& cfg, long l, bool minus);

}  // namespace qcalab
