#pragma once

// Shared helpers for the test suites.

#include <vector>

#include "gaborlab/gabor.hpp"
#include "gaborlab/rng.hpp"
#include "gaborlab/transforms.hpp"

namespace gaborlab::testing {

inline Signal random_signal(const FiniteAbelianGroup& g, std::uint64_t seed) {
    return Signal{g, random_complex_values(seed, static_cast<std::size_t>(g.order))};
}

inline Subgroup cyclic(const FiniteAbelianGroup& g, std::vector<Index> coords) {
    return subgroup_from_generators(g, {GroupElement{std::move(coords)}});
}

// Inverse of the Zak transform with respect to H (counting measure):
//   f(x + h) = (1/|H|) sum_{w in H-hat} Z(x, w) <w, h>
// for x over the transversal of H and h in H.  `field[row][col]` follows the
// ZakArray layout (rows: transversal of H, cols: characters of H).
inline Signal inverse_zak(const FiniteAbelianGroup& g, const Subgroup& h,
                          const std::vector<std::vector<Complex>>& field) {
    const Transversal x_reps = transversal(g, h);
    const Transversal char_reps = transversal(dual_group(g), annihilator(g, h));
    Signal f = zero_signal(g);
    for (std::size_t r = 0; r < x_reps.reps.size(); ++r) {
        for (std::size_t m = 0; m < h.element_indices.size(); ++m) {
            Complex acc{0.0, 0.0};
            for (std::size_t c = 0; c < char_reps.reps.size(); ++c)
                acc += field[r][c] *
                       pair_index(g, char_reps.rep_indices[c], h.element_indices[m]);
            f[add_index(g, x_reps.rep_indices[r], h.element_indices[m])] =
                acc / static_cast<double>(h.order);
        }
    }
    return f;
}

} // namespace gaborlab::testing
