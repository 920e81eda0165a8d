#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gaborlab/errors.hpp"
#include "gaborlab/numerics.hpp"
#include "gaborlab/rng.hpp"

using namespace gaborlab;

namespace {

DenseMatrix random_matrix(std::uint64_t seed, std::size_t r, std::size_t c) {
    DenseMatrix m(r, c);
    m.entries = random_complex_values(seed, r * c);
    return m;
}

DenseMatrix random_hermitian(std::uint64_t seed, std::size_t n) {
    const DenseMatrix a = random_matrix(seed, n, n);
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.at(i, j) = 0.5 * (a.at(i, j) + std::conj(a.at(j, i)));
    return m;
}

// Unitary factor from Gram-Schmidt on a random square matrix.
DenseMatrix random_unitary(std::uint64_t seed, std::size_t n) {
    DenseMatrix a = random_matrix(seed, n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            Complex proj{0.0, 0.0};
            for (std::size_t i = 0; i < n; ++i) proj += a.at(i, j) * std::conj(a.at(i, k));
            for (std::size_t i = 0; i < n; ++i) a.at(i, j) -= proj * a.at(i, k);
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm += std::norm(a.at(i, j));
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < n; ++i) a.at(i, j) /= norm;
    }
    return a;
}

} // namespace

TEST_CASE("hermitian_eigenvalues: known spectra") {
    CHECK(hermitian_eigenvalues(identity_matrix(3)) == std::vector<double>{1.0, 1.0, 1.0});

    DenseMatrix d(2, 2);
    d.at(0, 0) = 2.0;
    d.at(1, 1) = 0.0;
    CHECK(hermitian_eigenvalues(d) == std::vector<double>{2.0, 0.0});

    DenseMatrix nonherm(2, 2);
    nonherm.at(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eigenvalues(nonherm), InvalidInput);
}

TEST_CASE("hermitian_eigenvalues: trace identity on random 8x8") {
    const DenseMatrix m = random_hermitian(42, 8);
    const auto eig = hermitian_eigenvalues(m);
    double trace = 0.0;
    for (std::size_t i = 0; i < 8; ++i) trace += m.at(i, i).real();
    double sum = 0.0;
    for (double v : eig) sum += v;
    CHECK(std::abs(sum - trace) < 1e-12 * std::max(1.0, std::abs(trace)));
    CHECK(std::is_sorted(eig.rbegin(), eig.rend()));
}

TEST_CASE("singular_values: known and cross-kernel") {
    CHECK(singular_values(DenseMatrix(3, 2)) == std::vector<double>{0.0, 0.0});

    const DenseMatrix u = random_unitary(7, 4);
    for (double s : singular_values(u)) CHECK(std::abs(s - 1.0) < 1e-12);

    const DenseMatrix m = random_matrix(9, 4, 2);
    const auto sigma = singular_values(m);
    const auto eig = hermitian_eigenvalues(multiply(adjoint(m), m));
    REQUIRE(sigma.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) CHECK(std::abs(sigma[i] * sigma[i] - eig[i]) < 1e-11);
}

TEST_CASE("singular values invariant under unitary factors") {
    const DenseMatrix m = random_matrix(11, 5, 3);
    const DenseMatrix u = random_unitary(13, 5);
    const DenseMatrix v = random_unitary(17, 3);
    const auto s0 = singular_values(m);
    const auto s1 = singular_values(multiply(u, multiply(m, v)));
    REQUIRE(s0.size() == s1.size());
    for (std::size_t i = 0; i < s0.size(); ++i) CHECK(std::abs(s0[i] - s1[i]) < 1e-11);
}

TEST_CASE("solve_hpd") {
    const std::vector<Complex> b = random_complex_values(3, 4);
    CHECK(solve_hpd(identity_matrix(4), b) == b);

    DenseMatrix two = identity_matrix(4);
    for (std::size_t i = 0; i < 4; ++i) two.at(i, i) = 2.0;
    const auto x = solve_hpd(two, b);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(x[i] - b[i] / 2.0) < 1e-14);

    // Random HPD 16x16: residual check.
    const DenseMatrix a = random_matrix(21, 16, 16);
    DenseMatrix hpd = multiply(adjoint(a), a);
    for (std::size_t i = 0; i < 16; ++i) hpd.at(i, i) += 1.0;
    const std::vector<Complex> rhs = random_complex_values(23, 16);
    const auto sol = solve_hpd(hpd, rhs);
    double resid = 0.0, bnorm = 0.0;
    for (std::size_t i = 0; i < 16; ++i) {
        Complex acc{0.0, 0.0};
        for (std::size_t j = 0; j < 16; ++j) acc += hpd.at(i, j) * sol[j];
        resid += std::norm(acc - rhs[i]);
        bnorm += std::norm(rhs[i]);
    }
    CHECK(std::sqrt(resid) <= 1e-10 * std::sqrt(bnorm) * 100.0);

    DenseMatrix singular(2, 2);
    singular.at(0, 0) = 1.0;
    try {
        solve_hpd(singular, {Complex{1.0, 0.0}, Complex{0.0, 0.0}});
        FAIL("expected SingularOperator");
    } catch (const SingularOperator& e) {
        CHECK(e.lambda_min <= 1e-12);
    }
}

TEST_CASE("inverse_hpd round-trips") {
    const DenseMatrix a = random_matrix(31, 6, 6);
    DenseMatrix hpd = multiply(adjoint(a), a);
    for (std::size_t i = 0; i < 6; ++i) hpd.at(i, i) += 0.5;
    const DenseMatrix prod = multiply(hpd, inverse_hpd(hpd));
    CHECK(operator_norm(subtract(prod, identity_matrix(6))) < 1e-11);
}
