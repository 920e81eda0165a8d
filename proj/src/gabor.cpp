#include "gaborlab/gabor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gaborlab/errors.hpp"
#include "gaborlab/oracle.hpp"
#include "gaborlab/rng.hpp"

namespace gaborlab {

namespace {

// Coset representatives of `sub` inside `ambient` (ambient must contain sub),
// each the lex-smallest member of its coset, ascending.
std::vector<Index> coset_reps_within(const FiniteAbelianGroup& g, const Subgroup& ambient,
                                     const Subgroup& sub) {
    std::vector<Index> reps;
    std::vector<char> covered(static_cast<std::size_t>(g.order), 0);
    for (Index x : ambient.element_indices) {
        if (covered[static_cast<std::size_t>(x)]) continue;
        reps.push_back(x);
        for (Index s : sub.element_indices)
            covered[static_cast<std::size_t>(add_index(g, x, s))] = 1;
    }
    return reps;
}

void check_same_system(const GaborSystem& a, const GaborSystem& b, const char* what) {
    if (!a.group.same_factors(b.group) ||
        a.lambda.element_indices != b.lambda.element_indices ||
        a.gamma.element_indices != b.gamma.element_indices)
        throw InvalidInput(std::string(what) + ": systems must share group, Lambda and Gamma");
}

void check_signal_on(const FiniteAbelianGroup& g, const Signal& f, const char* what) {
    if (!f.group.same_factors(g)) throw InvalidInput(std::string(what) + ": group mismatch");
    validate_signal(f);
}

// Everything needed to evaluate the fiber matrices of a (semi) co-compact
// system: window u on the base group, translations Theta (weight c_theta),
// modulations M in the dual.  The same machinery serves the time side
// (G, g, Lambda, Gamma) and the frequency side (G-hat, ghat, Gamma, Lambda).
struct FiberSetup {
    FiniteAbelianGroup base;
    Subgroup m_perp; // annihilator of the modulation subgroup, inside base
    Subgroup cap;    // translations intersect m_perp
    Index p = 1;     // |m_perp / cap|
    Index q = 1;     // |translations / cap|
    std::vector<Index> chis;   // characters of m_perp killing cap (as dual elements)
    std::vector<Index> kappas; // coset reps of cap in translations
    Transversal x_reps;        // transversal of m_perp in base
    ZakArray zak_table;        // Z_{m_perp} u, with its character transversal
    double w_k = 1.0;          // c_translations / p
};

FiberSetup make_fiber_setup(const FiniteAbelianGroup& base, const Signal& window,
                            const Subgroup& translations, const Rational& c_translations,
                            const Subgroup& modulations) {
    FiberSetup fs;
    fs.base = base;
    fs.m_perp = annihilator(base, modulations);
    fs.cap = intersect(translations, fs.m_perp);
    fs.p = fs.m_perp.order / fs.cap.order;
    fs.q = translations.order / fs.cap.order;
    const Subgroup ann_cap = annihilator(base, fs.cap);
    fs.chis = coset_reps_within(dual_group(base), ann_cap, modulations);
    fs.kappas = coset_reps_within(base, translations, fs.cap);
    fs.x_reps = transversal(base, fs.m_perp);
    fs.zak_table = zak(fs.m_perp, window);
    fs.w_k = (c_translations / Rational(fs.p)).to_double();
    return fs;
}

// Zibulski-Zeevi fiber: q x p matrix Phi(i,j) = Z u(x + kappa_i, w + chi_j).
DenseMatrix zz_fiber(const FiberSetup& fs, Index x, Index w) {
    DenseMatrix phi(static_cast<std::size_t>(fs.q), static_cast<std::size_t>(fs.p));
    for (Index i = 0; i < fs.q; ++i) {
        const Index xs = add_index(fs.base, x, fs.kappas[static_cast<std::size_t>(i)]);
        for (Index j = 0; j < fs.p; ++j) {
            const Index ws = add_index(fs.base, w, fs.chis[static_cast<std::size_t>(j)]);
            phi.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                zak_at(fs.zak_table, xs, ws);
        }
    }
    return phi;
}

// Dual Gramian fiber, built from the literal formula rather than as Phi*Phi.
DenseMatrix dual_gramian_fiber(const FiberSetup& fs, Index x, Index w) {
    DenseMatrix gt(static_cast<std::size_t>(fs.p), static_cast<std::size_t>(fs.p));
    for (Index i = 0; i < fs.p; ++i) {
        const Index wi = add_index(fs.base, w, fs.chis[static_cast<std::size_t>(i)]);
        for (Index j = 0; j < fs.p; ++j) {
            const Index wj = add_index(fs.base, w, fs.chis[static_cast<std::size_t>(j)]);
            Complex acc{0.0, 0.0};
            for (Index kappa : fs.kappas) {
                const Index xs = add_index(fs.base, x, kappa);
                acc += zak_at(fs.zak_table, xs, wi) * std::conj(zak_at(fs.zak_table, xs, wj));
            }
            gt.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = fs.w_k * acc;
        }
    }
    return gt;
}

SpectralBounds fiber_bounds(const FiberSetup& fs, bool singular_value_path, double tol) {
    SpectralBounds sb;
    sb.p = fs.p;
    sb.q = fs.q;
    SpectralField& field = sb.field;
    field.global_min = std::numeric_limits<double>::infinity();
    field.global_max = 0.0;

    for (Index xr : fs.x_reps.rep_indices) {
        for (Index wr : fs.zak_table.character_reps.rep_indices) {
            std::vector<double> vals;
            if (singular_value_path) {
                const std::vector<double> sigma = singular_values(zz_fiber(fs, xr, wr));
                vals.assign(static_cast<std::size_t>(fs.p), 0.0);
                for (std::size_t k = 0; k < sigma.size() && k < vals.size(); ++k)
                    vals[k] = fs.w_k * sigma[k] * sigma[k]; // w_k = c_translations / p
            } else {
                vals = hermitian_eigenvalues(dual_gramian_fiber(fs, xr, wr));
                for (double& v : vals) v = std::max(v, 0.0);
            }
            field.global_min = std::min(field.global_min, vals.back());
            field.global_max = std::max(field.global_max, vals.front());
            field.fibers.push_back({xr, wr, std::move(vals)});
        }
    }

    const double cutoff = kRankCutoff * field.global_max;
    field.min_nonzero = std::numeric_limits<double>::infinity();
    for (const auto& fiber : field.fibers) {
        double smallest_nonzero = std::numeric_limits<double>::infinity();
        for (double v : fiber.values)
            if (v > cutoff) smallest_nonzero = std::min(smallest_nonzero, v);
        if (fiber.values.back() <= cutoff) ++field.deficient_fiber_count;
        field.min_nonzero = std::min(field.min_nonzero, smallest_nonzero);
    }
    if (!std::isfinite(field.min_nonzero)) field.min_nonzero = 0.0;
    if (!std::isfinite(field.global_min)) field.global_min = 0.0;

    sb.bounds = make_frame_bounds(field.global_min, field.global_max, tol);
    return sb;
}

std::vector<Complex> signal_values(const Signal& f) { return f.values; }

} // namespace

double DualPairResiduals::max() const {
    return std::max(weak_duality, std::max(s_side, t_side));
}

GaborSystem make_gabor_system(const Signal& window, const Subgroup& lambda,
                              const Subgroup& gamma) {
    check_signal_on(lambda.parent, window, "make_gabor_system");
    if (!gamma.parent.same_factors(window.group))
        throw InvalidInput("make_gabor_system: Gamma lives on a different dual group");
    if (norm_squared(window, Rational(1)) <= 0.0)
        throw InvalidInput("make_gabor_system: window must be nonzero");

    GaborSystem sys;
    sys.group = window.group;
    sys.window = window;
    sys.lambda = lambda;
    sys.gamma = gamma;
    sys.lambda_perp = annihilator(sys.group, lambda);
    sys.gamma_perp = annihilator(sys.group, gamma);
    sys.weights = derive_weights(sys.group, lambda, gamma);
    return sys;
}

DenseMatrix coefficients(const GaborSystem& sys, const Signal& f) {
    check_signal_on(sys.group, f, "coefficients");
    const FiniteAbelianGroup& g = sys.group;
    const std::vector<Complex> roots = unit_roots(g);
    const double cg = sys.weights.c_G.to_double();

    DenseMatrix c(sys.lambda.element_indices.size(), sys.gamma.element_indices.size());
    for (std::size_t li = 0; li < sys.lambda.element_indices.size(); ++li) {
        const Index lam = sys.lambda.element_indices[li];
        for (std::size_t gi = 0; gi < sys.gamma.element_indices.size(); ++gi) {
            const Index gam = sys.gamma.element_indices[gi];
            Complex acc{0.0, 0.0};
            for (Index x = 0; x < g.order; ++x) {
                const Index y = add_index(g, x, negate_index(g, lam));
                acc += f[x] *
                       std::conj(roots[static_cast<std::size_t>(pair_phase_numerator(g, gam, x))] *
                                 sys.window[y]);
            }
            c.at(li, gi) = cg * acc;
        }
    }
    return c;
}

Signal frame_operator_apply(const GaborSystem& sys, const Signal& h, const Signal& f) {
    check_signal_on(sys.group, h, "frame_operator_apply");
    check_signal_on(sys.group, f, "frame_operator_apply");
    const FiniteAbelianGroup& g = sys.group;
    const std::vector<Complex> roots = unit_roots(g);
    const double scale =
        (sys.weights.c_Lambda * sys.weights.c_Gamma * sys.weights.c_G).to_double();

    Signal out = zero_signal(g);
    for (Index lam : sys.lambda.element_indices) {
        const Index neg_lam = negate_index(g, lam);
        for (Index gam : sys.gamma.element_indices) {
            Complex coeff{0.0, 0.0};
            for (Index x = 0; x < g.order; ++x) {
                const Index y = add_index(g, x, neg_lam);
                coeff += f[x] *
                         std::conj(roots[static_cast<std::size_t>(
                                       pair_phase_numerator(g, gam, x))] *
                                   sys.window[y]);
            }
            coeff *= scale;
            for (Index x = 0; x < g.order; ++x) {
                const Index y = add_index(g, x, neg_lam);
                out[x] += coeff *
                          roots[static_cast<std::size_t>(pair_phase_numerator(g, gam, x))] *
                          h[y];
            }
        }
    }
    return out;
}

Signal frame_operator_apply(const GaborSystem& sys_g, const GaborSystem& sys_h,
                            const Signal& f) {
    check_same_system(sys_g, sys_h, "frame_operator_apply");
    return frame_operator_apply(sys_g, sys_h.window, f);
}

DenseMatrix frame_operator_matrix(const GaborSystem& sys, const Signal& h) {
    const std::size_t n = static_cast<std::size_t>(sys.group.order);
    DenseMatrix s(n, n);
    for (Index y = 0; y < sys.group.order; ++y) {
        const Signal column = frame_operator_apply(sys, h, delta_signal(sys.group, y));
        for (Index x = 0; x < sys.group.order; ++x)
            s.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = column[x];
    }
    return s;
}

DenseMatrix frame_operator_matrix(const GaborSystem& sys_g, const GaborSystem& sys_h) {
    check_same_system(sys_g, sys_h, "frame_operator_matrix");
    return frame_operator_matrix(sys_g, sys_h.window);
}

double shift_commutation_residual(const GaborSystem& sys, Index a, Index chi) {
    const FiniteAbelianGroup& g = sys.group;
    double residual = 0.0;
    for (Index k = 0; k < g.order; ++k) {
        const Signal e = delta_signal(g, k);
        const Signal lhs = frame_operator_apply(sys, sys, time_frequency_shift(e, a, chi));
        const Signal rhs = time_frequency_shift(frame_operator_apply(sys, sys, e), a, chi);
        double acc = 0.0;
        for (Index x = 0; x < g.order; ++x) acc += std::norm(lhs[x] - rhs[x]);
        residual = std::max(residual, std::sqrt(acc * sys.weights.c_G.to_double()));
    }
    return residual;
}

double commutation_residual(const GaborSystem& sys, const GroupElement& lambda,
                            const Character& gamma) {
    const Index a = index_of(sys.group, lambda);
    GroupElement chi_elem{gamma.coords};
    const Index chi = index_of(dual_group(sys.group), chi_elem);
    if (!sys.lambda.contains_index(a))
        throw InvalidInput("commutation_residual: lambda is not in Lambda");
    if (!sys.gamma.contains_index(chi))
        throw InvalidInput("commutation_residual: gamma is not in Gamma");
    return shift_commutation_residual(sys, a, chi);
}

Signal s_alpha(const GaborSystem& sys, const Signal& h, const GroupElement& alpha) {
    check_signal_on(sys.group, h, "s_alpha");
    const FiniteAbelianGroup& g = sys.group;
    const Index a = index_of(g, alpha);
    if (!sys.gamma_perp.contains_index(a))
        throw InvalidInput("s_alpha: alpha is not in Gamma-perp");

    const double cl = sys.weights.c_Lambda.to_double();
    Signal out = zero_signal(g);
    for (Index x = 0; x < g.order; ++x) {
        Complex acc{0.0, 0.0};
        for (Index lam : sys.lambda.element_indices) {
            const Index xl = add_index(g, x, negate_index(g, lam));
            const Index xla = add_index(g, xl, negate_index(g, a));
            acc += std::conj(sys.window[xla]) * h[xl];
        }
        out[x] = cl * acc;
    }
    return out;
}

Signal t_beta(const GaborSystem& sys, const Signal& h, const Character& beta) {
    check_signal_on(sys.group, h, "t_beta");
    const FiniteAbelianGroup& gd = dual_group(sys.group);
    GroupElement beta_elem{beta.coords};
    const Index b = index_of(gd, beta_elem);
    if (!sys.lambda_perp.contains_index(b))
        throw InvalidInput("t_beta: beta is not in Lambda-perp");

    const Signal ghat = fourier(sys.window, sys.weights);
    const Signal hhat = fourier(h, sys.weights);
    const double cgam = sys.weights.c_Gamma.to_double();
    Signal out = zero_signal(gd);
    for (Index w = 0; w < gd.order; ++w) {
        Complex acc{0.0, 0.0};
        for (Index gam : sys.gamma.element_indices) {
            const Index wg = add_index(gd, w, negate_index(gd, gam));
            const Index wgb = add_index(gd, wg, negate_index(gd, b));
            acc += std::conj(ghat[wgb]) * hhat[wg];
        }
        out[w] = cgam * acc;
    }
    return out;
}

Signal walnut_apply(const GaborSystem& sys, const Signal& h, const Signal& f) {
    check_signal_on(sys.group, h, "walnut_apply");
    check_signal_on(sys.group, f, "walnut_apply");
    const FiniteAbelianGroup& g = sys.group;
    Signal out = zero_signal(g);
    for (const GroupElement& alpha : sys.gamma_perp.elements) {
        const Signal symbol = s_alpha(sys, h, alpha);
        const Signal shifted = translate(f, index_of(g, alpha));
        for (Index x = 0; x < g.order; ++x) out[x] += symbol[x] * shifted[x];
    }
    return out;
}

JanssenResult janssen_operator(const GaborSystem& sys, const Signal& h) {
    check_signal_on(sys.group, h, "janssen_operator");
    const FiniteAbelianGroup& g = sys.group;
    const std::vector<Complex> roots = unit_roots(g);
    const std::size_t n = static_cast<std::size_t>(g.order);
    const double cg = sys.weights.c_G.to_double();

    JanssenResult result;
    result.matrix = DenseMatrix(n, n);
    for (Index alpha : sys.gamma_perp.element_indices) {
        const Index neg_alpha = negate_index(g, alpha);
        for (Index beta : sys.lambda_perp.element_indices) {
            Complex coeff{0.0, 0.0}; // <h, E_beta T_alpha g>
            for (Index x = 0; x < g.order; ++x) {
                const Index y = add_index(g, x, neg_alpha);
                coeff += h[x] * std::conj(roots[static_cast<std::size_t>(
                                              pair_phase_numerator(g, beta, x))] *
                                          sys.window[y]);
            }
            coeff *= cg;
            result.condition_A += std::abs(coeff);
            // E_beta T_alpha contributes <w,x> at entry (x, x - alpha).
            for (Index x = 0; x < g.order; ++x) {
                const Index y = add_index(g, x, neg_alpha);
                result.matrix.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) +=
                    coeff * roots[static_cast<std::size_t>(pair_phase_numerator(g, beta, x))];
            }
        }
    }
    return result;
}

double figa_residual(const GaborSystem& sys, const Signal& h, const Signal& f1,
                     const Signal& f2) {
    check_signal_on(sys.group, h, "figa_residual");
    check_signal_on(sys.group, f1, "figa_residual");
    check_signal_on(sys.group, f2, "figa_residual");
    const Rational& cg = sys.weights.c_G;

    const Signal sf1 = frame_operator_apply(sys, h, f1);
    const Complex lhs = inner_product(sf1, f2, cg);

    Complex rhs{0.0, 0.0};
    for (Index alpha : sys.gamma_perp.element_indices) {
        for (Index beta : sys.lambda_perp.element_indices) {
            const Signal shifted_g = time_frequency_shift(sys.window, alpha, beta);
            const Signal shifted_f1 = time_frequency_shift(f1, alpha, beta);
            rhs += inner_product(h, shifted_g, cg) * inner_product(shifted_f1, f2, cg);
        }
    }
    return std::abs(lhs - rhs);
}

double wexler_raz_residual(const GaborSystem& sys, const Signal& h) {
    check_signal_on(sys.group, h, "wexler_raz_residual");
    double residual = 0.0;
    for (Index alpha : sys.gamma_perp.element_indices) {
        for (Index beta : sys.lambda_perp.element_indices) {
            const Signal shifted = time_frequency_shift(sys.window, alpha, beta);
            const Complex c = inner_product(h, shifted, sys.weights.c_G);
            const Complex expected =
                (alpha == 0 && beta == 0) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
            residual = std::max(residual, std::abs(c - expected));
        }
    }
    return residual;
}

Signal canonical_dual(const GaborSystem& sys, double tol) {
    const DenseMatrix s = frame_operator_matrix(sys, sys);
    const std::vector<double> eig = hermitian_eigenvalues(s);
    const double a_opt = std::max(eig.back(), 0.0);
    if (a_opt <= tol)
        throw SingularOperator("canonical_dual: system is not a frame", a_opt);
    const std::vector<Complex> hv = solve_hpd(s, sys.window.values);
    Signal h{sys.group, hv};
    return h;
}

DualPairResiduals verify_dual_pair(const GaborSystem& sys, const Signal& h) {
    check_signal_on(sys.group, h, "verify_dual_pair");
    const FiniteAbelianGroup& g = sys.group;
    const std::vector<Complex> roots = unit_roots(g);
    DualPairResiduals res;

    // Reproducing identity on the full standard basis:
    // delta_{xy} = c_L c_G sum <e_y, E T h> (E T g)(x) with c_G-weighted pairings.
    const double scale =
        (sys.weights.c_Lambda * sys.weights.c_Gamma * sys.weights.c_G * sys.weights.c_G)
            .to_double();
    for (Index y = 0; y < g.order; ++y) {
        for (Index x = 0; x < g.order; ++x) {
            Complex acc{0.0, 0.0};
            for (Index lam : sys.lambda.element_indices) {
                const Index neg_lam = negate_index(g, lam);
                const Index yl = add_index(g, y, neg_lam);
                const Index xl = add_index(g, x, neg_lam);
                for (Index gam : sys.gamma.element_indices) {
                    const Complex py =
                        roots[static_cast<std::size_t>(pair_phase_numerator(g, gam, y))];
                    const Complex px =
                        roots[static_cast<std::size_t>(pair_phase_numerator(g, gam, x))];
                    acc += std::conj(py * h[yl]) * px * sys.window[xl];
                }
            }
            const double expected = (x == y) ? sys.weights.c_G.to_double() : 0.0;
            res.weak_duality = std::max(res.weak_duality, std::abs(scale * acc - expected));
        }
    }

    for (const GroupElement& alpha : sys.gamma_perp.elements) {
        const Signal sa = s_alpha(sys, h, alpha);
        const bool is_zero = index_of(g, alpha) == 0;
        for (Index x = 0; x < g.order; ++x) {
            const Complex expected = is_zero ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
            res.s_side = std::max(res.s_side, std::abs(sa[x] - expected));
        }
    }

    const FiniteAbelianGroup gd = dual_group(g);
    for (const GroupElement& beta_elem : sys.lambda_perp.elements) {
        const Signal tb = t_beta(sys, h, Character{beta_elem.coords});
        const bool is_zero = index_of(gd, beta_elem) == 0;
        for (Index w = 0; w < gd.order; ++w) {
            const Complex expected = is_zero ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
            res.t_side = std::max(res.t_side, std::abs(tb[w] - expected));
        }
    }
    return res;
}

SpectralBounds dual_gramian_bounds(const GaborSystem& sys, double tol) {
    const FiberSetup fs =
        make_fiber_setup(sys.group, sys.window, sys.lambda, sys.weights.c_Lambda, sys.gamma);
    return fiber_bounds(fs, /*singular_value_path=*/false, tol);
}

SpectralBounds zz_bounds(const GaborSystem& sys, double tol) {
    const FiberSetup fs =
        make_fiber_setup(sys.group, sys.window, sys.lambda, sys.weights.c_Lambda, sys.gamma);
    return fiber_bounds(fs, /*singular_value_path=*/true, tol);
}

FrameBounds frequency_side_bounds(const GaborSystem& sys, double tol) {
    const Signal ghat = fourier(sys.window, sys.weights);
    const FiberSetup fs =
        make_fiber_setup(dual_group(sys.group), ghat, sys.gamma, sys.weights.c_Gamma, sys.lambda);
    return fiber_bounds(fs, /*singular_value_path=*/false, tol).bounds;
}

CriticalDensityReport critical_density_check(const GaborSystem& sys, double tol) {
    if (sys.lambda.element_indices != sys.gamma_perp.element_indices)
        throw InvalidInput("critical_density_check: requires Lambda = Gamma-perp");
    const FiniteAbelianGroup& g = sys.group;
    const double cl = sys.weights.c_Lambda.to_double();

    CriticalDensityReport rep;
    const ZakArray z = zak(sys.lambda, sys.window);
    const std::size_t rows = z.x_reps.reps.size();
    const std::size_t cols = z.character_reps.reps.size();

    double vmax = 0.0;
    std::vector<double> scaled(rows * cols, 0.0);
    for (std::size_t k = 0; k < rows * cols; ++k) {
        scaled[k] = cl * std::norm(z.values[k]);
        vmax = std::max(vmax, scaled[k]);
    }
    const double cutoff = kRankCutoff * vmax;
    double vmin = vmax;
    double vmin_nonzero = vmax;
    for (double v : scaled) {
        vmin = std::min(vmin, v);
        if (v <= cutoff)
            ++rep.zero_fiber_count;
        else
            vmin_nonzero = std::min(vmin_nonzero, v);
    }

    rep.bounds = make_frame_bounds(vmin, vmax, tol);
    rep.basic_bounds = make_frame_bounds(rep.zero_fiber_count == rows * cols ? 0.0 : vmin_nonzero,
                                         vmax, tol);
    rep.zak_abs_sq_max = vmax / cl;
    rep.zak_abs_sq_min_nonzero = rep.basic_bounds.A_opt / cl;
    rep.is_frame = rep.bounds.is_frame;

    // Riesz side: Gram of the weighted family sqrt(c_L c_Gamma) E_gamma T_lambda g;
    // at critical density the family has exactly |G| members.
    const std::vector<Complex> roots = unit_roots(g);
    const std::size_t m =
        sys.lambda.element_indices.size() * sys.gamma.element_indices.size();
    const double wscale = (sys.weights.c_Lambda * sys.weights.c_Gamma).to_double();
    std::vector<Signal> family;
    family.reserve(m);
    for (Index lam : sys.lambda.element_indices)
        for (Index gam : sys.gamma.element_indices)
            family.push_back(time_frequency_shift(sys.window, lam, gam));
    DenseMatrix gram(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            gram.at(i, j) =
                wscale * inner_product(family[i], family[j], sys.weights.c_G);
    const std::vector<double> eig = hermitian_eigenvalues(gram);
    const FrameBounds riesz = make_frame_bounds(eig.back(), eig.front(), tol);
    rep.is_riesz_basis = riesz.is_frame && m == static_cast<std::size_t>(g.order);
    rep.frame_riesz_gap = std::max(std::abs(rep.bounds.A_opt - riesz.A_opt),
                                   std::abs(rep.bounds.B_opt - riesz.B_opt));
    return rep;
}

AdjointSystem adjoint_system(const GaborSystem& sys) {
    return AdjointSystem{sys.group, sys.window, sys.gamma_perp, sys.lambda_perp};
}

RieszReport riesz_bounds(const AdjointSystem& adj, double tol) {
    const FiniteAbelianGroup& g = adj.group;
    const std::size_t na = adj.gamma_perp.element_indices.size();
    const std::size_t nb = adj.lambda_perp.element_indices.size();
    const std::size_t m = na * nb;
    const Rational cg{1}; // counting measure family, c_G-weighted inner products

    std::vector<Signal> family;
    family.reserve(m);
    for (Index alpha : adj.gamma_perp.element_indices)
        for (Index beta : adj.lambda_perp.element_indices)
            family.push_back(time_frequency_shift(adj.window, alpha, beta));

    DenseMatrix gram(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            gram.at(i, j) = inner_product(family[i], family[j], cg);

    RieszReport rep;
    const std::vector<double> eig = hermitian_eigenvalues(gram);
    rep.bounds = make_frame_bounds(eig.back(), eig.front(), tol);
    rep.is_riesz_sequence = rep.bounds.is_frame;

    if (eig.back() > kRankCutoff * std::max(1.0, eig.front())) {
        // Biorthogonal route: h_k synthesized through the Gram inverse, then
        // checked by explicit inner products.  The Bessel bound of the
        // biorthogonal family recovers 1/A.
        rep.has_biorthogonal = true;
        const DenseMatrix ginv = inverse_hpd(gram);
        std::vector<Signal> biorth(m, zero_signal(g));
        for (std::size_t k = 0; k < m; ++k)
            for (std::size_t j = 0; j < m; ++j) {
                // conj: gram(i,j) = <f_i, f_j> while the synthesis needs (V^H V)^{-1}.
                const Complex w = std::conj(ginv.at(j, k));
                for (Index x = 0; x < g.order; ++x) biorth[k][x] += w * family[j][x];
            }
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < m; ++k) {
                const Complex ip = inner_product(family[j], biorth[k], cg);
                const Complex expected = (j == k) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
                rep.biorthogonality_residual =
                    std::max(rep.biorthogonality_residual, std::abs(ip - expected));
            }
        DenseMatrix bgram(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                bgram.at(i, j) = inner_product(biorth[i], biorth[j], cg);
        const std::vector<double> beig = hermitian_eigenvalues(bgram);
        rep.path_agreement = std::abs(1.0 / beig.front() - rep.bounds.A_opt);
    }
    return rep;
}

CalderonIntervals calderon_bounds(const GaborSystem& sys) {
    const FiniteAbelianGroup& g = sys.group;
    CalderonIntervals ci;
    ci.time_min = std::numeric_limits<double>::infinity();
    ci.freq_min = std::numeric_limits<double>::infinity();
    const double cl = sys.weights.c_Lambda.to_double();
    for (Index x = 0; x < g.order; ++x) {
        double acc = 0.0;
        for (Index lam : sys.lambda.element_indices)
            acc += std::norm(sys.window[add_index(g, x, lam)]);
        acc *= cl;
        ci.time_min = std::min(ci.time_min, acc);
        ci.time_max = std::max(ci.time_max, acc);
    }
    const Signal ghat = fourier(sys.window, sys.weights);
    const FiniteAbelianGroup gd = dual_group(g);
    const double cgam = sys.weights.c_Gamma.to_double();
    for (Index w = 0; w < gd.order; ++w) {
        double acc = 0.0;
        for (Index gam : sys.gamma.element_indices)
            acc += std::norm(ghat[add_index(gd, w, gam)]);
        acc *= cgam;
        ci.freq_min = std::min(ci.freq_min, acc);
        ci.freq_max = std::max(ci.freq_max, acc);
    }
    return ci;
}

double bessel_estimate(const GaborSystem& sys) {
    const FiniteAbelianGroup& g = sys.group;
    const double cl = sys.weights.c_Lambda.to_double();
    double m = 0.0;
    for (Index x = 0; x < g.order; ++x) {
        for (Index ap : sys.gamma_perp.element_indices) {
            double acc = 0.0;
            for (Index lam : sys.lambda.element_indices) {
                const Index xl = add_index(g, x, negate_index(g, lam));
                const double outer =
                    std::abs(sys.window[add_index(g, xl, negate_index(g, ap))]);
                double inner = 0.0;
                for (Index a : sys.gamma_perp.element_indices)
                    inner += std::abs(sys.window[add_index(g, xl, negate_index(g, a))]);
                acc += outer * inner;
            }
            m = std::max(m, cl * acc);
        }
    }
    return m;
}

double gamma_energy_identity_residual(const GaborSystem& sys, const Signal& f) {
    check_signal_on(sys.group, f, "gamma_energy_identity_residual");
    const FiniteAbelianGroup& g = sys.group;
    const std::vector<Complex> roots = unit_roots(g);
    const double cg = sys.weights.c_G.to_double();
    const double cgam = sys.weights.c_Gamma.to_double();

    double residual = 0.0;
    for (Index lam : sys.lambda.element_indices) {
        const Signal tg = translate(sys.window, lam);
        double lhs = 0.0;
        for (Index gam : sys.gamma.element_indices) {
            Complex acc{0.0, 0.0};
            for (Index x = 0; x < g.order; ++x)
                acc += f[x] *
                       std::conj(roots[static_cast<std::size_t>(pair_phase_numerator(g, gam, x))] *
                                 tg[x]);
            acc *= cg;
            lhs += std::norm(acc);
        }
        lhs *= cgam;

        Complex rhs{0.0, 0.0};
        for (Index x = 0; x < g.order; ++x) {
            for (Index alpha : sys.gamma_perp.element_indices) {
                const Index xa = add_index(g, x, negate_index(g, alpha));
                rhs += f[x] * std::conj(f[xa]) * std::conj(tg[x]) * tg[xa];
            }
        }
        rhs *= cg;
        residual = std::max(residual, std::abs(Complex{lhs, 0.0} - rhs));
    }
    return residual;
}

Signal build_parseval_bspline(const FiniteAbelianGroup& g, const Subgroup& lambda,
                              std::size_t order,
                              const std::vector<std::vector<double>>& factors) {
    if (!lambda.parent.same_factors(g))
        throw InvalidInput("build_parseval_bspline: Lambda not a subgroup of G");
    if (lambda.order >= g.order)
        throw InvalidInput("build_parseval_bspline: Lambda must be a proper subgroup");
    if (order == 0 || factors.size() != order)
        throw InvalidInput("build_parseval_bspline: need exactly `order` factors");

    const Transversal x_reps = transversal(g, lambda);
    const std::size_t nx = x_reps.reps.size();
    for (const auto& f : factors) {
        if (f.size() != nx)
            throw InvalidInput("build_parseval_bspline: factor length must equal |X|");
        for (double v : f)
            if (!(v > 0.0))
                throw InvalidInput("build_parseval_bspline: factors must be positive on X");
    }

    // u_i = g_i 1_X, then W = u_1 * ... * u_r (plain convolution on G).
    auto factor_signal = [&](const std::vector<double>& f) {
        Signal u = zero_signal(g);
        for (std::size_t k = 0; k < nx; ++k) u[x_reps.rep_indices[k]] = f[k];
        return u;
    };
    Signal w = factor_signal(factors[0]);
    for (std::size_t i = 1; i < order; ++i) {
        const Signal u = factor_signal(factors[i]);
        Signal conv = zero_signal(g);
        for (Index x = 0; x < g.order; ++x) {
            Complex acc{0.0, 0.0};
            for (Index y = 0; y < g.order; ++y)
                acc += w[y] * u[add_index(g, x, negate_index(g, y))];
            conv[x] = acc;
        }
        w = std::move(conv);
    }

    // Lambda-periodization of W must be constant (= C_r).
    std::vector<double> periodization(static_cast<std::size_t>(g.order), 0.0);
    for (Index x = 0; x < g.order; ++x) {
        double acc = 0.0;
        for (Index lam : lambda.element_indices)
            acc += w[add_index(g, x, negate_index(g, lam))].real();
        periodization[static_cast<std::size_t>(x)] = acc;
    }
    const double c_r = periodization[0];
    for (double v : periodization)
        if (std::abs(v - c_r) > 1e-12 * std::max(1.0, std::abs(c_r)))
            throw ConstructionFailed(
                "build_parseval_bspline: periodization of W_r is not constant");

    Signal out = zero_signal(g);
    const double denom = c_r * static_cast<double>(nx);
    for (Index x = 0; x < g.order; ++x)
        out[x] = std::sqrt(std::max(0.0, w[x].real()) / denom);
    return out;
}

DualityReport duality_report(const GaborSystem& sys, double tol) {
    DualityReport rep;
    rep.tolerance = tol;
    const FiniteAbelianGroup& g = sys.group;

    const DenseMatrix s_oracle = oracle_frame_matrix(g, signal_values(sys.window),
                                                     signal_values(sys.window), sys.lambda,
                                                     sys.gamma, sys.weights);
    const std::vector<double> eig_oracle = hermitian_eigenvalues(s_oracle);
    rep.oracle_bounds = make_frame_bounds(eig_oracle.back(), eig_oracle.front(), tol);
    rep.is_frame = rep.oracle_bounds.is_frame;
    rep.is_parseval = rep.oracle_bounds.is_parseval;

    rep.gramian_bounds = dual_gramian_bounds(sys, tol).bounds;
    rep.zz = zz_bounds(sys, tol).bounds;
    rep.frequency_bounds = frequency_side_bounds(sys, tol);
    const AdjointSystem adj = adjoint_system(sys);
    const RieszReport riesz = riesz_bounds(adj, tol);
    rep.adjoint_riesz_bounds = riesz.bounds;

    const double a_vals[5] = {rep.oracle_bounds.A_opt, rep.gramian_bounds.A_opt, rep.zz.A_opt,
                              rep.frequency_bounds.A_opt, rep.adjoint_riesz_bounds.A_opt};
    const double b_vals[5] = {rep.oracle_bounds.B_opt, rep.gramian_bounds.B_opt, rep.zz.B_opt,
                              rep.frequency_bounds.B_opt, rep.adjoint_riesz_bounds.B_opt};
    double dev = 0.0;
    double scale_ref = 1.0;
    for (double v : b_vals) scale_ref = std::max(scale_ref, v);
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) {
            dev = std::max(dev, std::abs(a_vals[i] - a_vals[j]));
            dev = std::max(dev, std::abs(b_vals[i] - b_vals[j]));
        }
    rep.five_way_deviation = dev / scale_ref;

    // Representation residuals against the oracle matrix.
    DenseMatrix s_walnut(static_cast<std::size_t>(g.order), static_cast<std::size_t>(g.order));
    for (Index y = 0; y < g.order; ++y) {
        const Signal col = walnut_apply(sys, sys.window, delta_signal(g, y));
        for (Index x = 0; x < g.order; ++x)
            s_walnut.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = col[x];
    }
    rep.walnut_residual = operator_norm(subtract(s_walnut, s_oracle));

    const JanssenResult janssen = janssen_operator(sys, sys.window);
    rep.janssen_residual = operator_norm(subtract(janssen.matrix, s_oracle));
    rep.condition_A = janssen.condition_A;

    double figa = 0.0;
    for (std::uint64_t k = 0; k < 5; ++k) {
        const Signal f1{g, random_complex_values(0x51D0 + 2 * k, static_cast<std::size_t>(g.order))};
        const Signal f2{g,
                        random_complex_values(0x51D1 + 2 * k, static_cast<std::size_t>(g.order))};
        figa = std::max(figa, figa_residual(sys, sys.window, f1, f2));
    }
    rep.figa_residual = figa;

    rep.bessel_duality_gap = std::abs(rep.oracle_bounds.B_opt - rep.adjoint_riesz_bounds.B_opt);

    if (rep.is_frame) {
        const Signal dual = canonical_dual(sys, tol);
        rep.wexler_raz_residual = wexler_raz_residual(sys, dual);
        rep.dual_pair_residual = verify_dual_pair(sys, dual).max();
    } else {
        rep.wexler_raz_residual = std::numeric_limits<double>::quiet_NaN();
        rep.dual_pair_residual = std::numeric_limits<double>::quiet_NaN();
    }

    rep.calderon = calderon_bounds(sys);
    const double cal_tol = tol * std::max(1.0, rep.oracle_bounds.B_opt);
    const bool upper_ok = rep.calderon.time_max <= rep.oracle_bounds.B_opt + cal_tol &&
                          rep.calderon.freq_max <= rep.oracle_bounds.B_opt + cal_tol;
    if (rep.is_frame)
        rep.calderon_ok = upper_ok &&
                          rep.calderon.time_min >= rep.oracle_bounds.A_opt - cal_tol &&
                          rep.calderon.freq_min >= rep.oracle_bounds.A_opt - cal_tol;
    else
        rep.calderon_ok = upper_ok;

    rep.bessel_estimate_value = bessel_estimate(sys);
    rep.bessel_estimate_ok = rep.bessel_estimate_value >= rep.oracle_bounds.B_opt - cal_tol;

    rep.is_tight = rep.is_frame && rep.oracle_bounds.B_opt - rep.oracle_bounds.A_opt <=
                                       tol * std::max(1.0, rep.oracle_bounds.B_opt);
    // Adjoint orthogonality: vanishing off-diagonal Gram entries.
    {
        const std::size_t na = adj.gamma_perp.element_indices.size();
        const std::size_t nb = adj.lambda_perp.element_indices.size();
        double offdiag = 0.0;
        std::vector<Signal> family;
        family.reserve(na * nb);
        for (Index alpha : adj.gamma_perp.element_indices)
            for (Index beta : adj.lambda_perp.element_indices)
                family.push_back(time_frequency_shift(adj.window, alpha, beta));
        for (std::size_t i = 0; i < family.size(); ++i)
            for (std::size_t j = i + 1; j < family.size(); ++j)
                offdiag = std::max(
                    offdiag, std::abs(inner_product(family[i], family[j], sys.weights.c_G)));
        rep.adjoint_orthogonal = offdiag <= tol * std::max(1.0, rep.adjoint_riesz_bounds.B_opt);
    }
    const double window_energy = norm_squared(sys.window, sys.weights.c_G);
    rep.tight_iff_orthogonal =
        (rep.is_tight == rep.adjoint_orthogonal) &&
        (!rep.is_tight || std::abs(rep.oracle_bounds.A_opt - window_energy) <=
                              tol * std::max(1.0, window_energy));

    const double op_tol = tol * std::max(1.0, rep.oracle_bounds.B_opt);
    rep.consistent = rep.five_way_deviation <= tol && rep.walnut_residual <= op_tol &&
                     rep.janssen_residual <= op_tol && rep.figa_residual <= op_tol &&
                     rep.bessel_duality_gap <= op_tol && rep.calderon_ok &&
                     rep.bessel_estimate_ok && rep.tight_iff_orthogonal &&
                     (!rep.is_frame ||
                      (rep.wexler_raz_residual <= tol && rep.dual_pair_residual <= tol));
    return rep;
}

} // namespace gaborlab
