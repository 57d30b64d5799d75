#pragma once

#include <vector>

#include "qcalab/complex_matrix.hpp"

namespace qcalab {

/// Spectral decomposition A = V diag(values) V†, columns of `vectors` are the
/// unit-norm eigenvectors.
struct EigenDecomposition {
    std::vector<cdouble> values;
    ComplexMatrix vectors;
};

/// Hermitian eigendecomposition, eigenvalues ascending (zero imaginary part).
/// Cyclic Jacobi for dims <= 64, LAPACK zheev above. Throws NotHermitianError.
EigenDecomposition eig_hermitian(const ComplexMatrix& h);

/// Unitary eigendecomposition: eigenvalues e^{i phi} with phases reported in
/// (-pi, pi], sorted ascending by phase. Joint diagonalization of the
/// commuting Hermitian pair (U+U†)/2, (U-U†)/2i; degenerate phase clusters
/// keep an orthonormal basis (ordering inside a cluster is unspecified).
/// Throws NotUnitaryError.
EigenDecomposition eig_unitary(const ComplexMatrix& u);

std::vector<double> unitary_phases(const EigenDecomposition& d);

/// exp(i * scale * g) for Hermitian g, via spectral decomposition.
ComplexMatrix exp_i_generator(const ComplexMatrix& g, double scale);

}  // namespace qcalab
