#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace qcalab {

using cdouble = std::complex<double>;

/// Dense row-major complex matrix. Workhorse for all finite-dimensional
/// operator algebra (projectors, walk unitaries, momentum blocks, gates).
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}
    ComplexMatrix(std::initializer_list<std::initializer_list<cdouble>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t rows, std::size_t cols);
    static ComplexMatrix diagonal(const std::vector<cdouble>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return a_.empty(); }

    cdouble& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cdouble& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    cdouble* data() { return a_.data(); }
    const cdouble* data() const { return a_.data(); }

    ComplexMatrix dagger() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conj() const;
    cdouble trace() const;
    double frobenius_norm() const;
    double max_abs() const;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(cdouble s);

    friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
    friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
    friend ComplexMatrix operator*(ComplexMatrix lhs, cdouble s) { return lhs *= s; }
    friend ComplexMatrix operator*(cdouble s, ComplexMatrix rhs) { return rhs *= s; }

    /// Matrix product (BLAS-backed).
    friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

    std::vector<cdouble> apply(const std::vector<cdouble>& v) const;

    // ||A - A†||_F and ||A†A - I||_F, the quantities behind the Hermitian /
    // unitary flags.
    double hermiticity_defect() const;
    double unitarity_defect() const;
    bool is_hermitian(double tol = 1e-13) const { return hermiticity_defect() <= tol; }
    bool is_unitary(double tol = 1e-12) const { return unitarity_defect() <= tol; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cdouble> a_;
};

/// Kronecker product; dims multiply.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qcalab
