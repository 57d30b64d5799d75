#pragma once

#include <cstddef>
#include <vector>

#include "qcalab/bigreal.hpp"

namespace qcalab {

/// Dense symmetric matrix over BigReal.
class BigMatrix {
public:
    BigMatrix(std::size_t n, long digits);

    std::size_t size() const { return n_; }
    long digits() const { return digits_; }
    BigReal& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const BigReal& at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    double symmetry_defect() const;
    BigReal frobenius_norm() const;

private:
    std::size_t n_;
    long digits_;
    std::vector<BigReal> a_;
};

/// Working precision policy: the minimum eigenvalue shrinks roughly like
/// 10^{-0.762 M}, so ceil(0.80 M) + 30 leaves >= 25 guard digits.
long required_digits(std::size_t M);

/// Coupling matrix in the large-N limit at working precision: diagonal 1/2,
/// odd diagonals ±1/(n pi). Throws PrecisionTooLowError below the policy.
BigMatrix build_dbar_bigreal(std::size_t M, long precision);

struct MinEigResult {
    BigReal lambda_min;
    std::vector<BigReal> eigenvector;  // unit norm
    BigReal residual;                  // ||A v - lambda v||
    long digits_used;

    MinEigResult(long digits)
        : lambda_min(digits), residual(digits), digits_used(digits) {}
};

/// Full spectrum by cyclic Jacobi at working precision. Eigenvalues
/// ascending; columns of `vectors` (row-major n*n) are the eigenvectors.
struct BigSpectrum {
    std::vector<BigReal> values;
    std::vector<BigReal> vectors;
    std::size_t n = 0;

    const BigReal& vector_entry(std::size_t row, std::size_t col) const {
        return vectors[row * n + col];
    }
};

BigSpectrum jacobi_spectrum(const BigMatrix& a);

/// Smallest eigenvalue with eigenvector and residual. Convergence: off-norm
/// below 10^{-(precision-10)} * ||A||; throws NoConvergenceError past the
/// sweep cap. Residual contract: <= 10^{-(precision-15)} * ||A||.
MinEigResult min_eigpair(const BigMatrix& a, long precision);

struct SeriesPoint {
    std::size_t M;
    BigReal lambda_min;
    BigReal residual;
    long digits_used;
};

/// Smallest eigenvalue per range, each at max(policy_floor, required_digits(M))
/// digits; entries computed concurrently.
std::vector<SeriesPoint> min_eig_series(const std::vector<std::size_t>& m_values,
                                        long policy_floor);

}  // namespace qcalab
