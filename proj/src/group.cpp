#include "gaborlab/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>

#include "gaborlab/errors.hpp"

namespace gaborlab {

bool Subgroup::contains_index(Index flat) const {
    return std::binary_search(element_indices.begin(), element_indices.end(), flat);
}

FiniteAbelianGroup make_group(const std::vector<Index>& invariant_factors, Index max_order) {
    if (invariant_factors.empty())
        throw InvalidInput("make_group: at least one invariant factor required");
    FiniteAbelianGroup g;
    g.invariant_factors = invariant_factors;
    g.order = 1;
    for (Index n : invariant_factors) {
        if (n < 1) throw InvalidInput("make_group: invariant factors must be >= 1");
        if (g.order > max_order / n)
            throw ResourceLimit("make_group: group order exceeds cap " + std::to_string(max_order));
        g.order *= n;
    }
    g.strides.assign(invariant_factors.size(), 1);
    for (std::size_t j = invariant_factors.size(); j-- > 1;)
        g.strides[j - 1] = g.strides[j] * invariant_factors[j];
    return g;
}

FiniteAbelianGroup dual_group(const FiniteAbelianGroup& g) { return g; }

static void check_coords(const FiniteAbelianGroup& g, const std::vector<Index>& coords,
                         const char* what) {
    if (coords.size() != g.invariant_factors.size())
        throw InvalidInput(std::string(what) + ": coordinate arity mismatch");
    for (std::size_t j = 0; j < coords.size(); ++j)
        if (coords[j] < 0 || coords[j] >= g.invariant_factors[j])
            throw InvalidInput(std::string(what) + ": coordinate out of range");
}

Index index_of(const FiniteAbelianGroup& g, const GroupElement& x) {
    check_coords(g, x.coords, "index_of");
    Index flat = 0;
    for (std::size_t j = 0; j < x.coords.size(); ++j) flat += x.coords[j] * g.strides[j];
    return flat;
}

GroupElement element_at(const FiniteAbelianGroup& g, Index flat) {
    if (flat < 0 || flat >= g.order) throw InvalidInput("element_at: index out of range");
    GroupElement x;
    x.coords.resize(g.invariant_factors.size());
    for (std::size_t j = 0; j < x.coords.size(); ++j) {
        x.coords[j] = flat / g.strides[j];
        flat %= g.strides[j];
    }
    return x;
}

Index add_index(const FiniteAbelianGroup& g, Index a, Index b) {
    Index flat = 0;
    for (std::size_t j = 0; j < g.invariant_factors.size(); ++j) {
        const Index n = g.invariant_factors[j];
        const Index ca = (a / g.strides[j]) % n;
        const Index cb = (b / g.strides[j]) % n;
        flat += ((ca + cb) % n) * g.strides[j];
    }
    return flat;
}

Index negate_index(const FiniteAbelianGroup& g, Index a) {
    Index flat = 0;
    for (std::size_t j = 0; j < g.invariant_factors.size(); ++j) {
        const Index n = g.invariant_factors[j];
        const Index ca = (a / g.strides[j]) % n;
        flat += ((n - ca) % n) * g.strides[j];
    }
    return flat;
}

GroupElement add(const FiniteAbelianGroup& g, const GroupElement& a, const GroupElement& b) {
    return element_at(g, add_index(g, index_of(g, a), index_of(g, b)));
}

GroupElement negate(const FiniteAbelianGroup& g, const GroupElement& a) {
    return element_at(g, negate_index(g, index_of(g, a)));
}

Index pair_phase_numerator(const FiniteAbelianGroup& g, Index omega_flat, Index x_flat) {
    // sum_j omega_j x_j / n_j = (sum_j omega_j x_j (order/n_j)) / order
    Index k = 0;
    for (std::size_t j = 0; j < g.invariant_factors.size(); ++j) {
        const Index n = g.invariant_factors[j];
        const Index wj = (omega_flat / g.strides[j]) % n;
        const Index xj = (x_flat / g.strides[j]) % n;
        k = (k + ((wj * xj) % n) * (g.order / n)) % g.order;
    }
    return k;
}

std::complex<double> pair_index(const FiniteAbelianGroup& g, Index omega_flat, Index x_flat) {
    const Index k = pair_phase_numerator(g, omega_flat, x_flat);
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) /
                               static_cast<double>(g.order));
}

std::vector<std::complex<double>> unit_roots(const FiniteAbelianGroup& g) {
    std::vector<std::complex<double>> roots(static_cast<std::size_t>(g.order));
    for (Index k = 0; k < g.order; ++k)
        roots[static_cast<std::size_t>(k)] =
            std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) /
                                static_cast<double>(g.order));
    return roots;
}

std::complex<double> pair(const FiniteAbelianGroup& g, const Character& omega,
                          const GroupElement& x) {
    check_coords(g, omega.coords, "pair");
    check_coords(g, x.coords, "pair");
    GroupElement w{omega.coords};
    return pair_index(g, index_of(g, w), index_of(g, x));
}

static Subgroup subgroup_from_index_set(const FiniteAbelianGroup& g, std::vector<Index> indices,
                                        std::vector<GroupElement> generators) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    Subgroup h;
    h.parent = g;
    h.generators = std::move(generators);
    h.element_indices = std::move(indices);
    h.order = static_cast<Index>(h.element_indices.size());
    h.elements.reserve(h.element_indices.size());
    for (Index flat : h.element_indices) h.elements.push_back(element_at(g, flat));
    return h;
}

Subgroup subgroup_from_generators(const FiniteAbelianGroup& g,
                                  const std::vector<GroupElement>& gens) {
    std::vector<Index> gen_indices;
    gen_indices.reserve(gens.size());
    for (const auto& x : gens) gen_indices.push_back(index_of(g, x));

    // Closure under addition from 0; negatives arrive via cyclic wrap-around.
    std::vector<char> in_set(static_cast<std::size_t>(g.order), 0);
    std::vector<Index> elements{0};
    in_set[0] = 1;
    std::vector<Index> frontier{0};
    while (!frontier.empty()) {
        std::vector<Index> next;
        for (Index x : frontier) {
            for (Index gen : gen_indices) {
                const Index y = add_index(g, x, gen);
                if (!in_set[static_cast<std::size_t>(y)]) {
                    in_set[static_cast<std::size_t>(y)] = 1;
                    elements.push_back(y);
                    next.push_back(y);
                }
            }
        }
        frontier = std::move(next);
    }
    return subgroup_from_index_set(g, std::move(elements), gens);
}

Subgroup trivial_subgroup(const FiniteAbelianGroup& g) {
    return subgroup_from_generators(g, {});
}

Subgroup full_subgroup(const FiniteAbelianGroup& g) {
    std::vector<GroupElement> gens;
    for (std::size_t j = 0; j < g.invariant_factors.size(); ++j) {
        GroupElement e;
        e.coords.assign(g.invariant_factors.size(), 0);
        if (g.invariant_factors[j] > 1) e.coords[j] = 1;
        gens.push_back(e);
    }
    return subgroup_from_generators(g, gens);
}

Subgroup annihilator(const FiniteAbelianGroup& g, const Subgroup& h) {
    if (!h.parent.same_factors(g)) throw InvalidInput("annihilator: subgroup of a different group");
    // omega annihilates H iff it annihilates the generators; fall back to the
    // element list when the generating set is empty (trivial subgroup).
    const std::vector<Index>* probe = nullptr;
    std::vector<Index> gen_indices;
    for (const auto& x : h.generators) gen_indices.push_back(index_of(g, x));
    probe = gen_indices.empty() ? &h.element_indices : &gen_indices;

    std::vector<Index> out;
    std::vector<GroupElement> out_elems;
    for (Index w = 0; w < g.order; ++w) {
        bool kills = true;
        for (Index x : *probe) {
            if (pair_phase_numerator(g, w, x) != 0) { kills = false; break; }
        }
        if (kills) out.push_back(w);
    }
    Subgroup a = subgroup_from_index_set(dual_group(g), std::move(out), {});
    a.generators = a.elements;
    return a;
}

Transversal transversal(const FiniteAbelianGroup& g, const Subgroup& h) {
    if (!h.parent.same_factors(g)) throw InvalidInput("transversal: subgroup of a different group");
    Transversal t;
    t.subgroup = h;
    t.coset_pos.assign(static_cast<std::size_t>(g.order), -1);
    t.member_pos.assign(static_cast<std::size_t>(g.order), -1);
    // Ascending scan: the first unseen element of a coset is its lex-smallest
    // member, so reps come out deterministic and sorted.
    for (Index x = 0; x < g.order; ++x) {
        if (t.coset_pos[static_cast<std::size_t>(x)] >= 0) continue;
        const Index rep_pos = static_cast<Index>(t.rep_indices.size());
        t.rep_indices.push_back(x);
        t.reps.push_back(element_at(g, x));
        for (std::size_t m = 0; m < h.element_indices.size(); ++m) {
            const Index y = add_index(g, x, h.element_indices[m]);
            t.coset_pos[static_cast<std::size_t>(y)] = rep_pos;
            t.member_pos[static_cast<std::size_t>(y)] = static_cast<Index>(m);
        }
    }
    return t;
}

static void verify_closed(const Subgroup& h, const char* what) {
    for (Index a : h.element_indices)
        for (Index b : h.element_indices)
            if (!h.contains_index(add_index(h.parent, a, b)))
                throw std::logic_error(std::string(what) + ": result is not closed");
}

Subgroup intersect(const Subgroup& h1, const Subgroup& h2) {
    if (!h1.parent.same_factors(h2.parent)) throw InvalidInput("intersect: parent mismatch");
    std::vector<Index> out;
    std::set_intersection(h1.element_indices.begin(), h1.element_indices.end(),
                          h2.element_indices.begin(), h2.element_indices.end(),
                          std::back_inserter(out));
    Subgroup s = subgroup_from_index_set(h1.parent, std::move(out), {});
    s.generators = s.elements;
    verify_closed(s, "intersect");
    return s;
}

Subgroup subgroup_sum(const Subgroup& h1, const Subgroup& h2) {
    if (!h1.parent.same_factors(h2.parent)) throw InvalidInput("subgroup_sum: parent mismatch");
    std::vector<GroupElement> gens = h1.elements;
    gens.insert(gens.end(), h2.elements.begin(), h2.elements.end());
    Subgroup s = subgroup_from_generators(h1.parent, gens);
    verify_closed(s, "subgroup_sum");
    return s;
}

MeasureWeights derive_weights(const FiniteAbelianGroup& g, const Subgroup& lambda,
                              const Subgroup& gamma) {
    if (!lambda.parent.same_factors(g)) throw InvalidInput("derive_weights: Lambda not in G");
    if (!gamma.parent.same_factors(g)) throw InvalidInput("derive_weights: Gamma not in dual(G)");

    MeasureWeights w;
    w.c_G = Rational(1);
    w.c_LambdaPerp = Rational(1);
    w.c_GammaPerp = Rational(1);

    // Dual measure on G-hat: Plancherel forces c_G * c_Ghat * |G| = 1.
    w.c_Ghat = Rational(1) / (w.c_G * Rational(g.order));

    // G/Lambda is Plancherel-dual to (Lambda-perp, counting):
    //   w_{G/Lambda} * c_LambdaPerp * |G/Lambda| = 1,
    // and Weil on (G, Lambda, G/Lambda): c_G = w_{G/Lambda} * c_Lambda.
    const Index q_order = g.order / lambda.order;
    w.w_G_mod_Lambda = Rational(1) / (w.c_LambdaPerp * Rational(q_order));
    w.c_Lambda = w.c_G / w.w_G_mod_Lambda;

    // Same chain on the dual side for (G-hat, Gamma, G-hat/Gamma).
    const Index qhat_order = g.order / gamma.order;
    w.w_Ghat_mod_Gamma = Rational(1) / (w.c_GammaPerp * Rational(qhat_order));
    w.c_Gamma = w.c_Ghat / w.w_Ghat_mod_Gamma;

    // Closed forms the chain must reproduce.
    if (w.c_Ghat != Rational(1, g.order) || w.c_Lambda != Rational(g.order, lambda.order) ||
        w.w_G_mod_Lambda != Rational(lambda.order, g.order) ||
        w.c_Gamma != Rational(1, gamma.order) ||
        w.w_Ghat_mod_Gamma != Rational(gamma.order, g.order))
        throw std::logic_error("derive_weights: normalization chain broke its closed forms");

    const Subgroup gamma_perp = annihilator(g, gamma);
    const Subgroup cap = intersect(lambda, gamma_perp);
    w.p = gamma_perp.order / cap.order;
    w.w_K = w.c_Lambda / Rational(w.p);
    return w;
}

std::vector<Subgroup> enumerate_subgroups(const FiniteAbelianGroup& g, std::size_t max_count) {
    std::set<std::vector<Index>> seen;
    std::vector<Subgroup> out;
    std::vector<Subgroup> frontier;

    Subgroup triv = trivial_subgroup(g);
    seen.insert(triv.element_indices);
    out.push_back(triv);
    frontier.push_back(std::move(triv));

    while (!frontier.empty()) {
        std::vector<Subgroup> next;
        for (const Subgroup& h : frontier) {
            for (Index x = 1; x < g.order; ++x) {
                if (h.contains_index(x)) continue;
                std::vector<GroupElement> gens = h.generators;
                gens.push_back(element_at(g, x));
                Subgroup bigger = subgroup_from_generators(g, gens);
                if (seen.insert(bigger.element_indices).second) {
                    if (out.size() >= max_count)
                        throw ResourceLimit("enumerate_subgroups: more than " +
                                            std::to_string(max_count) + " subgroups");
                    out.push_back(bigger);
                    next.push_back(std::move(bigger));
                }
            }
        }
        frontier = std::move(next);
    }
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order != b.order) return a.order < b.order;
        return a.element_indices < b.element_indices;
    });
    return out;
}

} // namespace gaborlab
