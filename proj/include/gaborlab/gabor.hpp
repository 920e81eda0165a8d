#pragma once

#include <cstddef>
#include <vector>

#include "gaborlab/frame_bounds.hpp"
#include "gaborlab/group.hpp"
#include "gaborlab/numerics.hpp"
#include "gaborlab/transforms.hpp"

namespace gaborlab {

// Gabor system { E_gamma T_lambda g : lambda in Lambda, gamma in Gamma } with
// the Weil-consistent weights derived from (G, Lambda, Gamma).  Annihilators
// are cached since every structural result below runs through them.
struct GaborSystem {
    FiniteAbelianGroup group;
    Signal window;
    Subgroup lambda;      // translation subgroup of G
    Subgroup gamma;       // modulation subgroup of dual(G)
    Subgroup lambda_perp; // in dual(G)
    Subgroup gamma_perp;  // in G
    MeasureWeights weights;
};

GaborSystem make_gabor_system(const Signal& window, const Subgroup& lambda,
                              const Subgroup& gamma);

// Per-fiber spectra (eigenvalues or squared/scaled singular values) of the
// fiber matrices over (x, omega), each list sorted descending, with global
// reductions.  `min_nonzero` applies the relative rank cutoff and backs
// basic-frame (frame-for-its-span) verdicts.
struct SpectralField {
    struct Fiber {
        Index x_rep;
        Index omega_rep;
        std::vector<double> values; // descending
    };
    std::vector<Fiber> fibers;
    double global_min = 0.0;     // min over fibers of the smallest value
    double global_max = 0.0;     // max over fibers of the largest value
    double min_nonzero = 0.0;    // min over fibers of the smallest value above cutoff
    std::size_t deficient_fiber_count = 0; // fibers whose smallest value is below cutoff
};

struct SpectralBounds {
    SpectralField field;
    FrameBounds bounds;
    Index p = 1;
    Index q = 1;
};

struct AdjointSystem {
    FiniteAbelianGroup group;
    Signal window;
    Subgroup gamma_perp; // translations, subgroup of G, counting measure
    Subgroup lambda_perp; // modulations, subgroup of dual(G), counting measure
};

struct JanssenResult {
    DenseMatrix matrix;
    double condition_A = 0.0; // sum of |<h, E_beta T_alpha g>|
};

struct DualPairResiduals {
    double weak_duality = 0.0; // reproducing identity on the full basis
    double s_side = 0.0;       // max |s_alpha - delta_{alpha,0}|
    double t_side = 0.0;       // max |t_beta - delta_{beta,0}|
    double max() const;
};

struct RieszReport {
    FrameBounds bounds;                   // extreme Gram eigenvalues
    bool is_riesz_sequence = false;
    bool has_biorthogonal = false;
    double biorthogonality_residual = 0.0; // max |<f_j, h_k> - delta_jk|
    double path_agreement = 0.0;           // |A_eig - 1/BesselBound(biorthogonal)|
};

struct CriticalDensityReport {
    double zak_abs_sq_min_nonzero = 0.0; // extremes of |Z_Lambda g|^2 over
    double zak_abs_sq_max = 0.0;         //   non-vanishing fibers
    std::size_t zero_fiber_count = 0;
    FrameBounds bounds;        // scaled; A counts vanishing fibers
    FrameBounds basic_bounds;  // scaled; over non-vanishing fibers only
    bool is_frame = false;
    bool is_riesz_basis = false;
    double frame_riesz_gap = 0.0; // bound deviation between the two verdicts
};

struct CalderonIntervals {
    double time_min = 0.0, time_max = 0.0; // of c_Lambda sum_lambda |g(x+lambda)|^2
    double freq_min = 0.0, freq_max = 0.0; // of c_Gamma sum_gamma |ghat(w+gamma)|^2
};

struct DualityReport {
    FrameBounds oracle_bounds;
    FrameBounds gramian_bounds;
    FrameBounds zz;
    FrameBounds frequency_bounds;
    FrameBounds adjoint_riesz_bounds;
    double five_way_deviation = 0.0; // relative, across all five (A and B)

    double walnut_residual = 0.0;  // operator-norm gap to the oracle matrix
    double janssen_residual = 0.0; // operator-norm gap to the oracle matrix
    double figa_residual = 0.0;    // max over seeded probe pairs
    double condition_A = 0.0;
    double bessel_duality_gap = 0.0; // |lambda_max(S) - lambda_max(adjoint Gram)|

    // Populated only when the system is a frame (NaN otherwise).
    double wexler_raz_residual = 0.0;
    double dual_pair_residual = 0.0;

    CalderonIntervals calderon;
    bool calderon_ok = false;
    double bessel_estimate_value = 0.0;
    bool bessel_estimate_ok = false;

    bool is_frame = false;
    bool is_parseval = false;
    bool is_tight = false;
    bool adjoint_orthogonal = false;
    bool tight_iff_orthogonal = false;
    bool consistent = false;
    double tolerance = kDefaultTolerance;
};

// Analysis coefficients <f, E_gamma T_lambda g> as a |Lambda| x |Gamma| matrix
// (rows follow lambda.elements, columns gamma.elements).
DenseMatrix coefficients(const GaborSystem& sys, const Signal& f);

// S_{g,h} f = c_Lambda c_Gamma sum_{lambda, gamma} <f, E_g T_l g> E_g T_l h.
// The Signal overload takes the synthesis window h directly (h may be zero);
// the two-system overload checks that both systems share Lambda and Gamma.
Signal frame_operator_apply(const GaborSystem& sys, const Signal& h, const Signal& f);
Signal frame_operator_apply(const GaborSystem& sys_g, const GaborSystem& sys_h,
                            const Signal& f);
DenseMatrix frame_operator_matrix(const GaborSystem& sys, const Signal& h);
DenseMatrix frame_operator_matrix(const GaborSystem& sys_g, const GaborSystem& sys_h);

// max_k || S E_chi T_a e_k - E_chi T_a S e_k || over the standard basis; no
// membership requirement on (a, chi), so it doubles as a negative control.
double shift_commutation_residual(const GaborSystem& sys, Index a, Index chi);
// Same residual with lambda in Lambda and gamma in Gamma enforced.
double commutation_residual(const GaborSystem& sys, const GroupElement& lambda,
                            const Character& gamma);

// s_alpha(x) = c_Lambda sum_lambda conj(g(x-lambda-alpha)) h(x-lambda), alpha in Gamma-perp.
Signal s_alpha(const GaborSystem& sys, const Signal& h, const GroupElement& alpha);
// t_beta(w) = c_Gamma sum_gamma conj(ghat(w-gamma-beta)) hhat(w-gamma), beta in Lambda-perp.
Signal t_beta(const GaborSystem& sys, const Signal& h, const Character& beta);

// Walnut representation: S_{g,h} f = sum_{alpha in Gamma-perp} s_alpha . T_alpha f.
Signal walnut_apply(const GaborSystem& sys, const Signal& h, const Signal& f);

// Janssen representation
//   S_{g,h} = sum_{alpha in Gamma-perp} sum_{beta in Lambda-perp}
//             <h, E_beta T_alpha g> E_beta T_alpha
// returned as a dense matrix together with the condition-A sum.
JanssenResult janssen_operator(const GaborSystem& sys, const Signal& h);

// | <S_{g,h} f1, f2> - sum_{alpha,beta} <h, E_b T_a g> <E_b T_a f1, f2> |.
double figa_residual(const GaborSystem& sys, const Signal& h, const Signal& f1,
                     const Signal& f2);

// max over Gamma-perp x Lambda-perp of |<h, E_beta T_alpha g> - delta delta|.
double wexler_raz_residual(const GaborSystem& sys, const Signal& h);

// h = S^{-1} g.  Throws SingularOperator (A_opt attached) when not a frame.
Signal canonical_dual(const GaborSystem& sys, double tol = kDefaultTolerance);

DualPairResiduals verify_dual_pair(const GaborSystem& sys, const Signal& h);

// Frame bounds from the p x p dual Gramian fibers
//   Gt(x,w)_{ij} = w_K sum_{kappa in K} Z g(x+kappa, w+chi_i) conj(Z g(x+kappa, w+chi_j)).
SpectralBounds dual_gramian_bounds(const GaborSystem& sys, double tol = kDefaultTolerance);

// Frame bounds from extreme singular values of the q x p Zibulski-Zeevi fibers
// Phi(x,w)_{ij} = Z g(x+kappa_i, w+chi_j), scaled by c_Lambda / p.
SpectralBounds zz_bounds(const GaborSystem& sys, double tol = kDefaultTolerance);

// Same machinery applied to ghat on the dual group with the roles of Lambda
// and Gamma swapped; agrees with the time-side bounds.
FrameBounds frequency_side_bounds(const GaborSystem& sys, double tol = kDefaultTolerance);

// Requires Lambda = Gamma-perp.  Scans |Z_Lambda g|^2 over fibers and checks
// the frame <-> Riesz-basis equivalence that holds at critical density.
CriticalDensityReport critical_density_check(const GaborSystem& sys,
                                             double tol = kDefaultTolerance);

AdjointSystem adjoint_system(const GaborSystem& sys);

// Riesz-sequence bounds of the adjoint family via its Gram matrix, plus the
// biorthogonal-system route when the Gram is invertible.
RieszReport riesz_bounds(const AdjointSystem& adj, double tol = kDefaultTolerance);

// Aggregates the five bound computations, the representation residuals, and
// the duality checks into one report.
DualityReport duality_report(const GaborSystem& sys, double tol = kDefaultTolerance);

CalderonIntervals calderon_bounds(const GaborSystem& sys);

// Proof-chain Bessel bound
//   M = max_{x, alpha'} c_Lambda sum_lambda |g(x-lambda-alpha')| *
//                        sum_alpha |g(x-lambda-alpha)|  >=  lambda_max(S).
double bessel_estimate(const GaborSystem& sys);

// Residual, maximized over lambda in Lambda, of
//   c_Gamma sum_gamma |<f, E_g T_l g>|^2 =
//   c_G sum_x sum_{alpha in Gamma-perp} f(x) conj(f(x-alpha))
//       conj(T_l g(x)) T_l g(x-alpha).
double gamma_energy_identity_residual(const GaborSystem& sys, const Signal& f);

// Weighted B-spline Parseval window: W_r = (g_1 1_X) * ... * (g_r 1_X) with X
// a transversal of Lambda, returned as sqrt(W_r / (C_r |X|)) where C_r is the
// constant value of the Lambda-periodization of W_r.  The Gabor system with
// modulation along the full dual group is then a Parseval frame.
Signal build_parseval_bspline(const FiniteAbelianGroup& g, const Subgroup& lambda,
                              std::size_t order,
                              const std::vector<std::vector<double>>& factors);

} // namespace gaborlab
