#pragma once

#include <optional>
#include <vector>

#include "qcalab/complex_matrix.hpp"

namespace qcalab {

/// Coupling-matrix family: (M+1) x (M+1) with M even (M/2 is the interaction
/// range); N is the exact lattice size, absent for the large-N limit. The
/// exact form requires N > 2M.
struct ToeplitzSpec {
    std::size_t M = 0;
    std::optional<std::size_t> N;
};

void validate_spec(const ToeplitzSpec& spec);

/// Symbol of the Toeplitz family: f(0) = 1/2, f vanishes on even n != 0, and
/// f(odd n) = (-1)^{(n-1)/2}/(n pi). Even in n.
double symbol_f(long long n);

/// Real symmetric matrix with entries sin(pi(j-j')/2)/(N sin(pi(j-j')/N)) for
/// finite N, or f(j-j') in the large-N limit. Returned row-major,
/// (M+1)*(M+1) doubles.
std::vector<double> dbar_matrix(const ToeplitzSpec& spec);

/// Complex Hermitian variant, entries (1/N) sum_{l=1..N/2} e^{-2 i pi (j-j') l / N}
/// in closed form: -i e^{-i pi n / N} / (N sin(pi n / N)) on odd diagonals,
/// 1/2 on the main diagonal, 0 on even ones. Same eigenvalues as the real
/// matrix (the diagonal phase conjugation drops out).
ComplexMatrix d_complex_matrix(const ToeplitzSpec& spec);

cdouble d_complex_entry(long long n, std::size_t N);

/// Partial Fourier sum 1/2 + sum_{odd n<=terms} 2 f(n) cos(n k); converges to
/// the unit square wave (1 on |k|<pi/2, 0 on pi/2<|k|<=pi).
double f_tilde(double k, std::size_t terms);

/// Interaction profile: coefficients per offset, one vector per branch.
struct CouplingProfile {
    std::vector<cdouble> v_plus;
    std::vector<cdouble> v_minus;
};

/// Total squared weight of negative-energy modes of a range-M coupling:
/// v_-† D v_- + v_+† D* v_+ with D the complex coupling matrix. Equals the
/// direct momentum sum with mode kernel e^{+iyk}, k_l = 2 pi l/(N dx), and
/// the negative-energy set {(k,-): l=1..N/2} U {(k,+): l=-N/2..-1}.
double negative_coupling(const CouplingProfile& profile, const ToeplitzSpec& spec);

/// The brute-force momentum sum behind negative_coupling (diagnostics; the
/// independent test oracle re-derives the same sum from scratch).
double negative_coupling_momentum_sum(const CouplingProfile& profile, const ToeplitzSpec& spec);

}  // namespace qcalab
