#include "gaborlab/transforms.hpp"

#include <cmath>

#include "gaborlab/errors.hpp"

namespace gaborlab {

Signal zero_signal(const FiniteAbelianGroup& g) {
    return Signal{g, std::vector<Complex>(static_cast<std::size_t>(g.order), Complex{0.0, 0.0})};
}

Signal delta_signal(const FiniteAbelianGroup& g, Index at) {
    Signal f = zero_signal(g);
    f[at] = 1.0;
    return f;
}

Signal constant_signal(const FiniteAbelianGroup& g, Complex value) {
    return Signal{g, std::vector<Complex>(static_cast<std::size_t>(g.order), value)};
}

void validate_signal(const Signal& f) {
    if (static_cast<Index>(f.values.size()) != f.group.order)
        throw InvalidInput("signal: length must equal group order");
    for (const Complex& z : f.values)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw InvalidInput("signal: entries must be finite");
}

Signal translate(const Signal& f, Index a) {
    Signal out = zero_signal(f.group);
    for (Index x = 0; x < f.group.order; ++x)
        out[x] = f[add_index(f.group, x, negate_index(f.group, a))];
    return out;
}

Signal modulate(const Signal& f, Index omega) {
    Signal out = f;
    for (Index x = 0; x < f.group.order; ++x) out[x] *= pair_index(f.group, omega, x);
    return out;
}

Signal time_frequency_shift(const Signal& f, Index a, Index omega) {
    return modulate(translate(f, a), omega);
}

Complex inner_product(const Signal& f, const Signal& g, const Rational& c) {
    if (!f.group.same_factors(g.group)) throw InvalidInput("inner_product: group mismatch");
    Complex acc{0.0, 0.0};
    for (Index x = 0; x < f.group.order; ++x) acc += f[x] * std::conj(g[x]);
    return acc * c.to_double();
}

double norm_squared(const Signal& f, const Rational& c) {
    double acc = 0.0;
    for (const Complex& z : f.values) acc += std::norm(z);
    return acc * c.to_double();
}

// Dual measures satisfy c_G * c_Ghat * |G| = 1; anything else means the
// weights were derived for a different group.
static void check_dual_weights(const FiniteAbelianGroup& g, const MeasureWeights& weights,
                               const char* what) {
    if (weights.c_G * weights.c_Ghat * Rational(g.order) != Rational(1))
        throw InvalidInput(std::string(what) + ": weights inconsistent with the group");
}

Signal fourier(const Signal& f, const MeasureWeights& weights) {
    validate_signal(f);
    check_dual_weights(f.group, weights, "fourier");
    const FiniteAbelianGroup& g = f.group;
    Signal out = zero_signal(dual_group(g));
    const double c = weights.c_G.to_double();
    for (Index w = 0; w < g.order; ++w) {
        Complex acc{0.0, 0.0};
        for (Index x = 0; x < g.order; ++x) acc += f[x] * std::conj(pair_index(g, w, x));
        out[w] = c * acc;
    }
    return out;
}

Signal inverse_fourier(const Signal& fhat, const MeasureWeights& weights) {
    validate_signal(fhat);
    check_dual_weights(fhat.group, weights, "inverse_fourier");
    const FiniteAbelianGroup& g = fhat.group;
    Signal out = zero_signal(g);
    const double c = weights.c_Ghat.to_double();
    for (Index x = 0; x < g.order; ++x) {
        Complex acc{0.0, 0.0};
        for (Index w = 0; w < g.order; ++w) acc += fhat[w] * pair_index(g, w, x);
        out[x] = c * acc;
    }
    return out;
}

ZakArray zak(const Subgroup& h, const Signal& f) {
    if (!h.parent.same_factors(f.group)) throw InvalidInput("zak: subgroup of a different group");
    validate_signal(f);
    const FiniteAbelianGroup& g = f.group;

    ZakArray z;
    z.base_subgroup = h;
    z.x_reps = transversal(g, h);
    z.character_reps = transversal(dual_group(g), annihilator(g, h));

    const std::size_t n_rows = z.x_reps.reps.size();
    const std::size_t n_cols = z.character_reps.reps.size(); // = |H|
    z.values.assign(n_rows * n_cols, Complex{0.0, 0.0});
    for (std::size_t r = 0; r < n_rows; ++r) {
        const Index x = z.x_reps.rep_indices[r];
        for (std::size_t c = 0; c < n_cols; ++c) {
            const Index w = z.character_reps.rep_indices[c];
            Complex acc{0.0, 0.0};
            for (Index hh : h.element_indices)
                acc += f[add_index(g, x, hh)] * std::conj(pair_index(g, w, hh));
            z.values[r * n_cols + c] = acc;
        }
    }
    return z;
}

Complex zak_at(const ZakArray& z, Index x_flat, Index xi_flat) {
    const FiniteAbelianGroup& g = z.base_subgroup.parent;
    const std::size_t n_cols = z.character_reps.reps.size();
    const Index row = z.x_reps.coset_pos[static_cast<std::size_t>(x_flat)];
    const Index member = z.x_reps.member_pos[static_cast<std::size_t>(x_flat)];
    const Index h_part = z.base_subgroup.element_indices[static_cast<std::size_t>(member)];
    const Index col = z.character_reps.coset_pos[static_cast<std::size_t>(xi_flat)];
    // Z(rep + h, xi) = <xi, h> Z(rep, xi); the column reduction is exact since
    // xi and its rep differ by an element of H-perp.
    return pair_index(g, xi_flat, h_part) *
           z.values[static_cast<std::size_t>(row) * n_cols + static_cast<std::size_t>(col)];
}

FiberArray fiberize(const Subgroup& h, const Signal& f, const MeasureWeights& weights) {
    if (!h.parent.same_factors(f.group)) throw InvalidInput("fiberize: subgroup of a different group");
    const FiniteAbelianGroup& g = f.group;
    const Signal fhat = fourier(f, weights);

    FiberArray fa;
    fa.subgroup = h;
    fa.h_perp = annihilator(g, h);
    fa.omega_reps = transversal(dual_group(g), fa.h_perp);
    fa.fibers.resize(fa.omega_reps.reps.size());
    for (std::size_t r = 0; r < fa.omega_reps.reps.size(); ++r) {
        const Index w = fa.omega_reps.rep_indices[r];
        auto& fiber = fa.fibers[r];
        fiber.reserve(fa.h_perp.element_indices.size());
        for (Index a : fa.h_perp.element_indices)
            fiber.push_back(fhat[add_index(g, w, a)]);
    }
    return fa;
}

DenseMatrix stft(const Signal& g0, const Signal& f, const MeasureWeights& weights) {
    if (!g0.group.same_factors(f.group)) throw InvalidInput("stft: group mismatch");
    validate_signal(g0);
    validate_signal(f);
    if (norm_squared(g0, Rational(1)) == 0.0) throw InvalidInput("stft: zero window");

    const FiniteAbelianGroup& g = f.group;
    const double c = weights.c_G.to_double();
    DenseMatrix v(static_cast<std::size_t>(g.order), static_cast<std::size_t>(g.order));
    for (Index x = 0; x < g.order; ++x) {
        for (Index w = 0; w < g.order; ++w) {
            Complex acc{0.0, 0.0};
            for (Index t = 0; t < g.order; ++t) {
                const Index shifted = add_index(g, t, negate_index(g, x));
                acc += f[t] * std::conj(pair_index(g, w, t)) * std::conj(g0[shifted]);
            }
            v.at(static_cast<std::size_t>(x), static_cast<std::size_t>(w)) = c * acc;
        }
    }
    return v;
}

} // namespace gaborlab
