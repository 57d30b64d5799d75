#pragma once

#include <complex>
#include <random>

#include "qcalab/complex_matrix.hpp"

namespace qcalab::testing {

inline ComplexMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols) {
    std::normal_distribution<double> dist;
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = cdouble(dist(rng), dist(rng));
    return m;
}

inline ComplexMatrix random_hermitian(std::mt19937& rng, std::size_t n) {
    ComplexMatrix b = random_matrix(rng, n, n);
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (b(i, j) + std::conj(b(j, i)));
    return h;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).max_abs();
}

}  // namespace qcalab::testing
