#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "gaborlab/rational.hpp"

namespace gaborlab {

using Index = std::int64_t;

constexpr Index kDefaultMaxOrder = 4096;

// Finite abelian group Z_{n_1} x ... x Z_{n_k} given by its invariant factors.
// Elements are k-tuples of residues; the canonical order is lexicographic in
// the tuple, which coincides with the mixed-radix flat index used internally.
// The dual group is represented by the same factor tuple (finite abelian
// groups are self-dual); the Character type marks dual-side intent.
struct FiniteAbelianGroup {
    std::vector<Index> invariant_factors;
    Index order = 1;
    std::vector<Index> strides; // strides[j] = prod of factors after j

    bool same_factors(const FiniteAbelianGroup& other) const {
        return invariant_factors == other.invariant_factors;
    }
};

struct GroupElement {
    std::vector<Index> coords;
    friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.coords == b.coords; }
};

// An element of the dual group under the canonical identification.
struct Character {
    std::vector<Index> coords;
    friend bool operator==(const Character& a, const Character& b) { return a.coords == b.coords; }
};

struct Subgroup {
    FiniteAbelianGroup parent;
    std::vector<GroupElement> generators;
    std::vector<GroupElement> elements;       // sorted in canonical tuple order
    std::vector<Index> element_indices;       // same list as flat indices, sorted
    Index order = 1;

    bool contains_index(Index flat) const;
};

// One representative per coset of `subgroup`, each the lexicographically
// smallest member of its coset; reps are listed in canonical order.
struct Transversal {
    Subgroup subgroup;
    std::vector<GroupElement> reps;
    std::vector<Index> rep_indices;
    // Per group element x (flat index): x = reps[coset_pos[x]] + subgroup.elements[member_pos[x]].
    std::vector<Index> coset_pos;
    std::vector<Index> member_pos;
};

// Weil-consistent Haar weights for the groups appearing in a Gabor scenario.
// Base normalization is counting measure on G (c_G = 1); annihilators carry
// counting measure; everything else follows from dual measures plus Weil's
// formula.  Stored exactly.
struct MeasureWeights {
    Rational c_G{1};
    Rational c_Ghat{1};
    Rational c_Lambda{1};
    Rational c_Gamma{1};
    Rational w_G_mod_Lambda{1};
    Rational w_Ghat_mod_Gamma{1};
    Rational c_LambdaPerp{1};
    Rational c_GammaPerp{1};
    Rational w_K{1};
    Index p = 1; // card(Gamma-perp / (Lambda intersect Gamma-perp)); w_K = c_Lambda / p
};

FiniteAbelianGroup make_group(const std::vector<Index>& invariant_factors,
                              Index max_order = kDefaultMaxOrder);

// The dual group under the canonical self-duality (same invariant factors).
FiniteAbelianGroup dual_group(const FiniteAbelianGroup& g);

Index index_of(const FiniteAbelianGroup& g, const GroupElement& x);
GroupElement element_at(const FiniteAbelianGroup& g, Index flat);

Index add_index(const FiniteAbelianGroup& g, Index a, Index b);
Index negate_index(const FiniteAbelianGroup& g, Index a);
GroupElement add(const FiniteAbelianGroup& g, const GroupElement& a, const GroupElement& b);
GroupElement negate(const FiniteAbelianGroup& g, const GroupElement& a);

// Character pairing <omega, x> = exp(2*pi*i * sum_j omega_j x_j / n_j).
// The phase numerator k with value exp(2*pi*i*k/order) is exact integer data.
Index pair_phase_numerator(const FiniteAbelianGroup& g, Index omega_flat, Index x_flat);
std::complex<double> pair(const FiniteAbelianGroup& g, const Character& omega, const GroupElement& x);
std::complex<double> pair_index(const FiniteAbelianGroup& g, Index omega_flat, Index x_flat);

// roots[k] = exp(2*pi*i*k / order); pairing in inner loops goes through
// pair_phase_numerator plus this table.
std::vector<std::complex<double>> unit_roots(const FiniteAbelianGroup& g);

Subgroup subgroup_from_generators(const FiniteAbelianGroup& g,
                                  const std::vector<GroupElement>& gens);
Subgroup trivial_subgroup(const FiniteAbelianGroup& g);
Subgroup full_subgroup(const FiniteAbelianGroup& g);

// Annihilator H-perp = { omega in dual(G) : <omega, h> = 1 for all h in H },
// computed exactly in integer arithmetic.  |H| * |H-perp| = |G|.
Subgroup annihilator(const FiniteAbelianGroup& g, const Subgroup& h);

Transversal transversal(const FiniteAbelianGroup& g, const Subgroup& h);

Subgroup intersect(const Subgroup& h1, const Subgroup& h2);
Subgroup subgroup_sum(const Subgroup& h1, const Subgroup& h2);

// Solves the measure normalization chain for the scenario (G, Lambda, Gamma):
// c_G = 1, dual measures on (G, G-hat), counting measure on both annihilators,
// Weil's formula linking (G, Lambda, G/Lambda) and (G-hat, Gamma, G-hat/Gamma).
// The closed forms are re-derived from the chain and asserted.
MeasureWeights derive_weights(const FiniteAbelianGroup& g, const Subgroup& lambda,
                              const Subgroup& gamma);

// All subgroups of g (closure lattice walk), sorted by (order, element list).
// Throws ResourceLimit if more than `max_count` subgroups are found.
std::vector<Subgroup> enumerate_subgroups(const FiniteAbelianGroup& g, std::size_t max_count = 4096);

} // namespace gaborlab
