#include "gaborlab/numerics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "gaborlab/errors.hpp"

namespace gaborlab {

namespace {

Eigen::MatrixXcd to_eigen(const DenseMatrix& m) {
    Eigen::MatrixXcd out(static_cast<Eigen::Index>(m.rows), static_cast<Eigen::Index>(m.cols));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m.at(i, j);
    return out;
}

DenseMatrix from_eigen(const Eigen::MatrixXcd& m) {
    DenseMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
    return out;
}

} // namespace

double DenseMatrix::max_abs() const {
    double m = 0.0;
    for (const Complex& z : entries) m = std::max(m, std::abs(z));
    return m;
}

bool DenseMatrix::is_hermitian() const {
    if (rows != cols) return false;
    double dev = 0.0;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            dev = std::max(dev, std::abs(at(i, j) - std::conj(at(j, i))));
    return dev <= 1e-12 * std::max(1e-300, max_abs());
}

DenseMatrix adjoint(const DenseMatrix& m) {
    DenseMatrix out(m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) out.at(j, i) = std::conj(m.at(i, j));
    return out;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols != b.rows) throw InvalidInput("multiply: inner dimensions disagree");
    return from_eigen(to_eigen(a) * to_eigen(b));
}

DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw InvalidInput("subtract: shape mismatch");
    DenseMatrix out(a.rows, a.cols);
    for (std::size_t k = 0; k < a.entries.size(); ++k) out.entries[k] = a.entries[k] - b.entries[k];
    return out;
}

DenseMatrix identity_matrix(std::size_t n) {
    DenseMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out.at(i, i) = 1.0;
    return out;
}

std::vector<double> hermitian_eigenvalues(const DenseMatrix& m) {
    if (!m.is_hermitian()) throw InvalidInput("hermitian_eigenvalues: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m),
                                                           Eigen::EigenvaluesOnly);
    std::vector<double> vals(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + solver.eigenvalues().size());
    std::sort(vals.begin(), vals.end(), std::greater<double>());
    return vals;
}

std::vector<double> singular_values(const DenseMatrix& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
    std::vector<double> vals(svd.singularValues().data(),
                             svd.singularValues().data() + svd.singularValues().size());
    std::sort(vals.begin(), vals.end(), std::greater<double>());
    return vals;
}

double operator_norm(const DenseMatrix& m) {
    if (m.rows == 0 || m.cols == 0) return 0.0;
    return singular_values(m).front();
}

std::vector<Complex> solve_hpd(const DenseMatrix& m, const std::vector<Complex>& b) {
    if (m.rows != m.cols) throw InvalidInput("solve_hpd: matrix not square");
    if (b.size() != m.rows) throw InvalidInput("solve_hpd: right-hand side length mismatch");
    if (!m.is_hermitian()) throw InvalidInput("solve_hpd: matrix is not Hermitian");

    const std::vector<double> eig = hermitian_eigenvalues(m);
    const double lambda_min = eig.empty() ? 0.0 : eig.back();
    const double lambda_max = eig.empty() ? 0.0 : eig.front();
    if (lambda_min <= 1e-12 * std::max(1.0, lambda_max))
        throw SingularOperator("solve_hpd: numerically singular operator", lambda_min);

    Eigen::VectorXcd rhs(static_cast<Eigen::Index>(b.size()));
    for (std::size_t i = 0; i < b.size(); ++i) rhs(static_cast<Eigen::Index>(i)) = b[i];
    Eigen::VectorXcd x = to_eigen(m).llt().solve(rhs);
    return {x.data(), x.data() + x.size()};
}

DenseMatrix inverse_hpd(const DenseMatrix& m) {
    if (m.rows != m.cols) throw InvalidInput("inverse_hpd: matrix not square");
    if (!m.is_hermitian()) throw InvalidInput("inverse_hpd: matrix is not Hermitian");
    const std::vector<double> eig = hermitian_eigenvalues(m);
    const double lambda_min = eig.empty() ? 0.0 : eig.back();
    const double lambda_max = eig.empty() ? 0.0 : eig.front();
    if (lambda_min <= 1e-12 * std::max(1.0, lambda_max))
        throw SingularOperator("inverse_hpd: numerically singular operator", lambda_min);
    const Eigen::MatrixXcd em = to_eigen(m);
    return from_eigen(em.llt().solve(Eigen::MatrixXcd::Identity(em.rows(), em.cols())));
}

} // namespace gaborlab
