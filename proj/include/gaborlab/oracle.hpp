#pragma once

// Brute-force reference path.  Everything here is built entry by entry from
// the definitions, reusing only group arithmetic and the dense linear-algebra
// kernel; no Zak/fiber machinery from the other modules is involved.

#include <vector>

#include "gaborlab/frame_bounds.hpp"
#include "gaborlab/group.hpp"
#include "gaborlab/numerics.hpp"

namespace gaborlab {

struct OracleReport {
    FrameBounds frame_bounds;  // from eig of the frame-operator matrix
    FrameBounds riesz_bounds;  // from eig of the adjoint Gram matrix
    double bessel_bound = 0.0; // largest eigenvalue of the frame operator
    double dual_residual = 0.0;
};

// Matrix of the mixed frame operator
//   S_{g,h} f = c_Lambda c_Gamma sum_{lambda, gamma} <f, E_g T_l g> E_g T_l h
// with c_G-weighted inner products, assembled by the direct quadruple loop.
DenseMatrix oracle_frame_matrix(const FiniteAbelianGroup& g_group,
                                const std::vector<Complex>& g,
                                const std::vector<Complex>& h,
                                const Subgroup& lambda, const Subgroup& gamma,
                                const MeasureWeights& weights);

// Extreme eigenvalues of oracle_frame_matrix(g, g).
FrameBounds oracle_frame_bounds(const FiniteAbelianGroup& g_group,
                                const std::vector<Complex>& g,
                                const Subgroup& lambda, const Subgroup& gamma,
                                const MeasureWeights& weights,
                                double tol = kDefaultTolerance);

// Gram matrix of the family { E_beta T_alpha g : alpha in alphas, beta in betas }
// under counting measure, index order (alpha major, beta minor).
DenseMatrix oracle_gram_matrix(const FiniteAbelianGroup& g_group,
                               const std::vector<Complex>& g,
                               const std::vector<Index>& alphas,
                               const std::vector<Index>& betas,
                               const MeasureWeights& weights);

// Riesz-sequence bounds of the same family: extreme Gram eigenvalues
// (A = 0 flags "not a Riesz sequence").
FrameBounds oracle_riesz_bounds(const FiniteAbelianGroup& g_group,
                                const std::vector<Complex>& g,
                                const std::vector<Index>& alphas,
                                const std::vector<Index>& betas,
                                const MeasureWeights& weights,
                                double tol = kDefaultTolerance);

// max over basis pairs (e_i, e_j) of
//   | <e_i, e_j> - c_Lambda c_Gamma sum_{lambda, gamma}
//                  <e_i, E_g T_l h> <E_g T_l g, e_j> |,
// zero exactly when (g, h) generate dual frames.
double oracle_dual_residual(const FiniteAbelianGroup& g_group,
                            const std::vector<Complex>& g,
                            const std::vector<Complex>& h,
                            const Subgroup& lambda, const Subgroup& gamma,
                            const MeasureWeights& weights);

OracleReport oracle_report(const FiniteAbelianGroup& g_group,
                           const std::vector<Complex>& g,
                           const Subgroup& lambda, const Subgroup& gamma,
                           const MeasureWeights& weights,
                           double tol = kDefaultTolerance);

} // namespace gaborlab
