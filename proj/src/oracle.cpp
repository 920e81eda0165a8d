#include "gaborlab/oracle.hpp"

#include <cmath>

#include "gaborlab/errors.hpp"

namespace gaborlab {

namespace {

void check_window(const FiniteAbelianGroup& g_group, const std::vector<Complex>& g,
                  const char* what) {
    if (static_cast<Index>(g.size()) != g_group.order)
        throw InvalidInput(std::string(what) + ": window length must equal group order");
}

// (E_w T_a u)(x) = <w, x> u(x - a)
struct Shifter {
    const FiniteAbelianGroup& group;
    std::vector<Complex> roots;
    explicit Shifter(const FiniteAbelianGroup& g) : group(g), roots(unit_roots(g)) {}
    Complex operator()(const std::vector<Complex>& u, Index a, Index w, Index x) const {
        const Index y = add_index(group, x, negate_index(group, a));
        return roots[static_cast<std::size_t>(pair_phase_numerator(group, w, x))] *
               u[static_cast<std::size_t>(y)];
    }
};

} // namespace

DenseMatrix oracle_frame_matrix(const FiniteAbelianGroup& g_group,
                                const std::vector<Complex>& g,
                                const std::vector<Complex>& h,
                                const Subgroup& lambda, const Subgroup& gamma,
                                const MeasureWeights& weights) {
    check_window(g_group, g, "oracle_frame_matrix");
    check_window(g_group, h, "oracle_frame_matrix");
    const std::size_t n = static_cast<std::size_t>(g_group.order);
    const double scale =
        (weights.c_Lambda * weights.c_Gamma * weights.c_G).to_double();
    const Shifter shift(g_group);

    DenseMatrix s(n, n);
    for (Index x = 0; x < g_group.order; ++x) {
        for (Index y = 0; y < g_group.order; ++y) {
            Complex acc{0.0, 0.0};
            for (Index lam : lambda.element_indices) {
                for (Index gam : gamma.element_indices) {
                    acc += std::conj(shift(g, lam, gam, y)) * shift(h, lam, gam, x);
                }
            }
            s.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = scale * acc;
        }
    }
    return s;
}

FrameBounds oracle_frame_bounds(const FiniteAbelianGroup& g_group,
                                const std::vector<Complex>& g,
                                const Subgroup& lambda, const Subgroup& gamma,
                                const MeasureWeights& weights, double tol) {
    const DenseMatrix s = oracle_frame_matrix(g_group, g, g, lambda, gamma, weights);
    const std::vector<double> eig = hermitian_eigenvalues(s);
    return make_frame_bounds(eig.back(), eig.front(), tol);
}

DenseMatrix oracle_gram_matrix(const FiniteAbelianGroup& g_group,
                               const std::vector<Complex>& g,
                               const std::vector<Index>& alphas,
                               const std::vector<Index>& betas,
                               const MeasureWeights& weights) {
    check_window(g_group, g, "oracle_gram_matrix");
    const std::size_t n = alphas.size() * betas.size();
    const double cg = weights.c_G.to_double();
    const Shifter shift(g_group);
    DenseMatrix gram(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const Index ai = alphas[i / betas.size()];
        const Index bi = betas[i % betas.size()];
        for (std::size_t j = 0; j < n; ++j) {
            const Index aj = alphas[j / betas.size()];
            const Index bj = betas[j % betas.size()];
            Complex acc{0.0, 0.0};
            for (Index x = 0; x < g_group.order; ++x)
                acc += shift(g, ai, bi, x) * std::conj(shift(g, aj, bj, x));
            gram.at(i, j) = cg * acc;
        }
    }
    return gram;
}

FrameBounds oracle_riesz_bounds(const FiniteAbelianGroup& g_group,
                                const std::vector<Complex>& g,
                                const std::vector<Index>& alphas,
                                const std::vector<Index>& betas,
                                const MeasureWeights& weights, double tol) {
    const DenseMatrix gram = oracle_gram_matrix(g_group, g, alphas, betas, weights);
    const std::vector<double> eig = hermitian_eigenvalues(gram);
    return make_frame_bounds(eig.back(), eig.front(), tol);
}

double oracle_dual_residual(const FiniteAbelianGroup& g_group,
                            const std::vector<Complex>& g,
                            const std::vector<Complex>& h,
                            const Subgroup& lambda, const Subgroup& gamma,
                            const MeasureWeights& weights) {
    check_window(g_group, g, "oracle_dual_residual");
    check_window(g_group, h, "oracle_dual_residual");
    const double scale =
        (weights.c_Lambda * weights.c_Gamma * weights.c_G * weights.c_G).to_double();
    const Shifter shift(g_group);
    double residual = 0.0;
    for (Index i = 0; i < g_group.order; ++i) {
        for (Index j = 0; j < g_group.order; ++j) {
            Complex acc{0.0, 0.0};
            for (Index lam : lambda.element_indices)
                for (Index gam : gamma.element_indices)
                    acc += std::conj(shift(h, lam, gam, i)) * shift(g, lam, gam, j);
            const Complex expected =
                (i == j) ? Complex{weights.c_G.to_double(), 0.0} : Complex{0.0, 0.0};
            residual = std::max(residual, std::abs(expected - scale * acc));
        }
    }
    return residual;
}

OracleReport oracle_report(const FiniteAbelianGroup& g_group,
                           const std::vector<Complex>& g,
                           const Subgroup& lambda, const Subgroup& gamma,
                           const MeasureWeights& weights, double tol) {
    OracleReport rep;
    rep.frame_bounds = oracle_frame_bounds(g_group, g, lambda, gamma, weights, tol);
    rep.bessel_bound = rep.frame_bounds.B_opt;
    const Subgroup gamma_perp = annihilator(g_group, gamma);
    const Subgroup lambda_perp = annihilator(g_group, lambda);
    rep.riesz_bounds = oracle_riesz_bounds(g_group, g, gamma_perp.element_indices,
                                           lambda_perp.element_indices, weights, tol);
    rep.dual_residual = oracle_dual_residual(g_group, g, g, lambda, gamma, weights);
    return rep;
}

} // namespace gaborlab
