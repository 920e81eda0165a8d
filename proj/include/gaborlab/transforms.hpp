#pragma once

#include <complex>
#include <vector>

#include "gaborlab/group.hpp"
#include "gaborlab/numerics.hpp"

namespace gaborlab {

// Complex signal on a finite abelian group, indexed in canonical element order.
struct Signal {
    FiniteAbelianGroup group;
    std::vector<Complex> values;

    Complex& operator[](Index flat) { return values[static_cast<std::size_t>(flat)]; }
    const Complex& operator[](Index flat) const { return values[static_cast<std::size_t>(flat)]; }
};

Signal zero_signal(const FiniteAbelianGroup& g);
Signal delta_signal(const FiniteAbelianGroup& g, Index at = 0);
Signal constant_signal(const FiniteAbelianGroup& g, Complex value = {1.0, 0.0});

// Rejects signals with NaN/Inf entries or the wrong length.
void validate_signal(const Signal& f);

// (T_a f)(x) = f(x - a)
Signal translate(const Signal& f, Index a);
// (E_w f)(x) = <w, x> f(x)
Signal modulate(const Signal& f, Index omega);
// (E_w T_a f)(x) = <w, x> f(x - a)
Signal time_frequency_shift(const Signal& f, Index a, Index omega);

// c-weighted inner product c * sum_x f(x) conj(g(x)) and the induced norm.
Complex inner_product(const Signal& f, const Signal& g, const Rational& c);
double norm_squared(const Signal& f, const Rational& c);

// Zak transform of f with respect to H (counting measure on H):
//   Z_H f(x, w) = sum_{h in H} f(x + h) conj(<w, h>),
// rows indexed by the transversal of H in G, columns by the characters of H
// enumerated through a transversal of H-perp in the dual group.
struct ZakArray {
    Subgroup base_subgroup;
    Transversal x_reps;        // transversal of H in G
    Transversal character_reps; // transversal of H-perp in dual(G); one rep per character of H
    std::vector<Complex> values; // row-major, |G|/|H| rows, |H| columns

    Complex at(std::size_t row, std::size_t col) const {
        return values[row * static_cast<std::size_t>(base_subgroup.order) + col];
    }
};

// Frequency fibers of f with respect to H:
//   T f(w) = ( fhat(w + a) )_{a in H-perp},  w over a transversal of H-perp.
struct FiberArray {
    Subgroup subgroup;          // H
    Subgroup h_perp;            // H-perp in dual(G)
    Transversal omega_reps;     // transversal of H-perp in dual(G)
    std::vector<std::vector<Complex>> fibers; // fibers[w][a], |H| fibers of length |H-perp|
};

// Fourier transform fhat(w) = c_G sum_x f(x) conj(<w, x>) and its inverse
// f(x) = c_Ghat sum_w fhat(w) <w, x>; the pair is unitary for dual weights.
Signal fourier(const Signal& f, const MeasureWeights& weights);
Signal inverse_fourier(const Signal& fhat, const MeasureWeights& weights);

ZakArray zak(const Subgroup& h, const Signal& f);

// Evaluate Z_H f at arbitrary (x, xi) from the stored table via
// quasi-periodicity: Z(x + h, xi) = <xi, h> Z(x, xi), Z(x, xi + beta) = Z(x, xi)
// for beta in H-perp.
Complex zak_at(const ZakArray& z, Index x_flat, Index xi_flat);

FiberArray fiberize(const Subgroup& h, const Signal& f, const MeasureWeights& weights);

// Short-time Fourier transform V_g0 f(x, w) = <f, E_w T_x g0>, returned as a
// |G| x |G| matrix with rows indexed by x and columns by w.
DenseMatrix stft(const Signal& g0, const Signal& f, const MeasureWeights& weights);

} // namespace gaborlab
