#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace gaborlab {

using Complex = std::complex<double>;

// Dense complex matrix, row-major.
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Complex> entries;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c, Complex{0.0, 0.0}) {}

    Complex& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    const Complex& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }

    // Hermitian to within max|M - M*| <= 1e-12 * max|M|.
    bool is_hermitian() const;
    double max_abs() const;
};

DenseMatrix adjoint(const DenseMatrix& m);
DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix identity_matrix(std::size_t n);

// Real eigenvalues of a Hermitian matrix, descending.
std::vector<double> hermitian_eigenvalues(const DenseMatrix& m);

// Singular values, descending (all min(rows, cols) of them).
std::vector<double> singular_values(const DenseMatrix& m);

// Largest singular value; operator norm of the matrix.
double operator_norm(const DenseMatrix& m);

// Solve M x = b for Hermitian positive definite M.  Throws SingularOperator
// (with the smallest eigenvalue attached) when M is numerically singular.
std::vector<Complex> solve_hpd(const DenseMatrix& m, const std::vector<Complex>& b);

// Inverse of a Hermitian positive definite matrix; same error contract.
DenseMatrix inverse_hpd(const DenseMatrix& m);

} // namespace gaborlab
