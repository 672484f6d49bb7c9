#pragma once

/* Filtered chain complexes of capped generators.
 *
 * A complex stores abstract one-periodic orbits (label, base action, base
 * degree) and a boundary matrix over the downward Novikov ring.  A capped
 * generator is an orbit together with a lattice index A; its action is
 * base_action - omega(A) and its degree is base_degree - factor*c1(A).
 *
 * The boundary operator must be strictly action-decreasing term by term,
 * have degree -1 term by term, square to zero over the ring, and carry a
 * unique leading term in every entry.  validate_complex checks all of it
 * and localizes failures to the offending entry.
 */

#include "linalg.hpp"
#include "novikov.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>

namespace floer {
inline namespace filtered_complex {

struct orbit {
    std::string label;
    rat base_action;
    int base_degree = 0;
};

struct floer_complex {
    std::string name;
    gamma_group group;
    int degree_factor = 2;            // multiplier on c1 in the capped degree
    int dim2n = 0;                    // ambient dimension, used by time reversal
    std::optional<std::int64_t> box_radius;  // |A_i| <= radius for enumerated caps
    std::vector<orbit> orbits;
    /* (source index, target index) -> downward element; entry e means
     * boundary(source) contains e * target */
    std::map<std::pair<std::size_t, std::size_t>, novikov_element> boundary;

    std::optional<std::size_t> orbit_index(const std::string& label) const {
        for (std::size_t i = 0; i < orbits.size(); ++i)
            if (orbits[i].label == label) return i;
        return std::nullopt;
    }

    std::size_t require_orbit(const std::string& label) const {
        auto i = orbit_index(label);
        if (!i) fail(errc::unknown_orbit, name + ": '" + label + "'");
        return *i;
    }

    rat action(std::size_t orb, const expvec& a) const {
        return orbits[orb].base_action - group.eval_omega(a);
    }

    int degree(std::size_t orb, const expvec& a) const {
        return orbits[orb].base_degree
             - degree_factor * static_cast<int>(group.eval_c1(a));
    }
};

/* A Novikov chain: finitely many orbits, each with a downward coefficient.
 * The supported capped generators are the pairs (orbit, index) running over
 * each coefficient's terms. */
struct novikov_chain {
    std::map<std::size_t, novikov_element> coeffs;   // orbit index -> element

    bool is_zero() const { return coeffs.empty(); }
};

inline void chain_insert(novikov_chain& c, std::size_t orb, const novikov_element& e) {
    if (e.is_zero()) return;
    auto it = c.coeffs.find(orb);
    if (it == c.coeffs.end()) {
        c.coeffs.emplace(orb, e);
    } else {
        it->second = nov_add(it->second, e);
        if (it->second.is_zero()) c.coeffs.erase(it);
    }
}

inline novikov_chain chain_add(const novikov_chain& x, const novikov_chain& y) {
    novikov_chain z = x;
    for (const auto& [orb, e] : y.coeffs) chain_insert(z, orb, e);
    return z;
}

inline novikov_chain chain_scale(const rat& c, const novikov_chain& x) {
    novikov_chain z;
    if (c == 0) return z;
    for (const auto& [orb, e] : x.coeffs) z.coeffs.emplace(orb, nov_scale(c, e));
    return z;
}

/* coefficient-wise multiplication by a ring element */
inline novikov_chain chain_scale_nov(const novikov_element& c, const novikov_chain& x) {
    novikov_chain z;
    for (const auto& [orb, e] : x.coeffs) chain_insert(z, orb, nov_mul(c, e));
    return z;
}

inline novikov_chain chain_sub(const novikov_chain& x, const novikov_chain& y) {
    return chain_add(x, chain_scale(-1, y));
}

inline bool chain_eq(const novikov_chain& x, const novikov_chain& y) {
    return x.coeffs == y.coeffs;
}

/* level (the max action over the support); empty sentinel +inf for the zero
 * chain, which every consumer branches on explicitly */
inline std::optional<rat> level(const floer_complex& cx, const novikov_chain& c) {
    std::optional<rat> best;
    for (const auto& [orb, e] : c.coeffs)
        for (const auto& [a, coef] : e.terms) {
            rat act = cx.action(orb, a);
            if (!best || act > *best) best = act;
        }
    return best;
}

/* matrix-vector product over the ring */
inline novikov_chain boundary_apply(const floer_complex& cx, const novikov_chain& c) {
    novikov_chain out;
    for (const auto& [src, e] : c.coeffs)
        for (const auto& [key, entry] : cx.boundary) {
            if (key.first != src) continue;
            chain_insert(out, key.second, nov_mul(entry, e));
        }
    return out;
}

struct finding {
    std::string check;     // which rule failed
    std::string where;     // source/target localization
    std::string detail;
};

struct validation_report {
    bool ok = true;
    std::vector<finding> findings;

    void add(std::string check, std::string where, std::string detail) {
        ok = false;
        findings.push_back({std::move(check), std::move(where), std::move(detail)});
    }
};

inline validation_report validate_complex(const floer_complex& cx) {
    validation_report rep;
    try {
        validate_group(cx.group);
    } catch (const error& e) {
        rep.add("group", cx.name, e.what());
        return rep;
    }
    std::set<std::string> seen;
    for (const auto& o : cx.orbits)
        if (!seen.insert(o.label).second)
            rep.add("orbit-labels", o.label, "duplicate orbit label");

    for (const auto& [key, e] : cx.boundary) {
        const auto& [src, tgt] = key;
        std::string where = cx.orbits[src].label + " -> " + cx.orbits[tgt].label;
        if (e.dir != direction::downward) {
            rep.add("entry-direction", where, "boundary entry must be downward");
            continue;
        }
        if (!(e.group == cx.group)) {
            rep.add("entry-group", where, "entry group differs from complex group");
            continue;
        }
        if (e.is_zero()) continue;
        for (const auto& [a, coef] : e.terms) {
            // strict filtration: action(target ⊗ q^a) < action(source)
            if (!(cx.action(tgt, a) < cx.orbits[src].base_action))
                rep.add("strict-filtration", where,
                        "term q^" + expvec_str(a) + " does not strictly drop the action");
            // degree -1 term by term
            if (cx.degree(tgt, a) != cx.orbits[src].base_degree - 1)
                rep.add("degree", where,
                        "term q^" + expvec_str(a) + " is not of degree -1");
        }
        if (!has_unique_leading_term(e))
            rep.add("leading-term", where, "entry valuation attained by several terms");
    }

    /* boundary squared, symbolically over the ring */
    for (std::size_t s = 0; s < cx.orbits.size(); ++s) {
        std::map<std::size_t, novikov_element> acc;
        for (const auto& [k1, e1] : cx.boundary) {
            if (k1.first != s) continue;
            for (const auto& [k2, e2] : cx.boundary) {
                if (k2.first != k1.second) continue;
                auto it = acc.find(k2.second);
                novikov_element prod = nov_mul(e2, e1);
                if (it == acc.end()) {
                    if (!prod.is_zero()) acc.emplace(k2.second, std::move(prod));
                } else {
                    it->second = nov_add(it->second, prod);
                    if (it->second.is_zero()) acc.erase(it);
                }
            }
        }
        for (const auto& [u, e] : acc)
            rep.add("boundary-squared", cx.orbits[s].label + " ~> " + cx.orbits[u].label,
                    "d(d(x)) has residue " + nov_str(e));
    }
    return rep;
}

/* enumerate lattice points of the cube |A_i| <= radius, lexicographically */
inline std::vector<expvec> box_points(std::size_t rank, std::int64_t radius) {
    std::vector<expvec> out;
    expvec cur(rank, -radius);
    if (rank == 0) { out.push_back({}); return out; }
    for (;;) {
        out.push_back(cur);
        std::size_t i = 0;
        while (i < rank && cur[i] == radius) { cur[i] = -radius; ++i; }
        if (i == rank) break;
        ++cur[i];
    }
    return out;
}

inline bool in_box(const expvec& a, std::int64_t radius) {
    for (auto v : a)
        if (v < -radius || v > radius) return false;
    return true;
}

struct windowed_homology_result {
    int degree = 0;
    std::size_t dimension = 0;
    std::vector<novikov_chain> basis;   // cycle representatives, reduced mod image
};

/* Homology of the quotient complex spanned by boxed capped generators with
 * action in (lo, hi], in one degree.  Unbounded lo/hi are allowed.  The
 * boxed population must be closed under the induced boundary (checked); a
 * rank >= 1 group with no configured box is rejected outright. */
inline windowed_homology_result
windowed_homology(const floer_complex& cx, std::optional<rat> lo, std::optional<rat> hi,
                  int k) {
    if (cx.group.rank > 0 && !cx.box_radius)
        fail(errc::infinite_window_population,
             cx.name + ": group rank >= 1 and no exponent box configured");
    std::int64_t radius = cx.box_radius ? *cx.box_radius : 0;

    using pos = std::pair<std::size_t, expvec>;  // (orbit, index)
    auto in_window = [&](std::size_t orb, const expvec& a) {
        rat act = cx.action(orb, a);
        if (lo && !(act > *lo)) return false;
        if (hi && !(act <= *hi)) return false;
        return true;
    };
    auto positions_of_degree = [&](int d) {
        std::vector<pos> ps;
        for (std::size_t orb = 0; orb < cx.orbits.size(); ++orb)
            for (const auto& a : box_points(cx.group.rank, radius))
                if (cx.degree(orb, a) == d && in_window(orb, a)) ps.emplace_back(orb, a);
        return ps;
    };
    std::vector<pos> gen_k = positions_of_degree(k);
    std::vector<pos> gen_k1 = positions_of_degree(k + 1);
    std::map<pos, std::size_t> index_k;
    for (std::size_t i = 0; i < gen_k.size(); ++i) index_k.emplace(gen_k[i], i);

    /* boundary of one boxed generator, restricted to the boxed window; an
     * in-window image index outside the box means the box fails to close
     * the window population */
    auto restricted_column = [&](const pos& g, const std::vector<pos>& target_univ,
                                 const std::map<pos, std::size_t>& target_index)
        -> std::vector<rat> {
        std::vector<rat> col(target_univ.size(), rat(0));
        for (const auto& [key, e] : cx.boundary) {
            if (key.first != g.first) continue;
            for (const auto& [b, c] : e.terms) {
                expvec a2 = exp_add(g.second, b);
                if (!in_window(key.second, a2)) continue;
                if (!in_box(a2, radius))
                    fail(errc::infinite_window_population,
                         cx.name + ": window population exceeds the configured box at "
                             + cx.orbits[key.second].label + " q^" + expvec_str(a2));
                col[target_index.at({key.second, a2})] += c;
            }
        }
        return col;
    };

    // kernel of the induced boundary on degree k
    std::vector<pos> gen_km1 = positions_of_degree(k - 1);
    std::map<pos, std::size_t> index_km1;
    for (std::size_t i = 0; i < gen_km1.size(); ++i) index_km1.emplace(gen_km1[i], i);

    qmatrix dk(gen_km1.size(), gen_k.size());
    for (std::size_t j = 0; j < gen_k.size(); ++j) {
        auto col = restricted_column(gen_k[j], gen_km1, index_km1);
        for (std::size_t i = 0; i < gen_km1.size(); ++i) dk.at(i, j) = col[i];
    }
    std::vector<std::vector<rat>> cycles = kernel_basis(dk);

    std::vector<std::vector<rat>> image;
    for (const auto& g : gen_k1) {
        auto col = restricted_column(g, gen_k, index_k);
        bool nz = false;
        for (const auto& v : col)
            if (v != 0) { nz = true; break; }
        if (nz) image.push_back(col);
    }

    /* quotient sanity: induced boundary must still square to zero */
    for (const auto& col : image) {
        std::vector<rat> img(gen_km1.size(), rat(0));
        for (std::size_t j = 0; j < gen_k.size(); ++j) {
            if (col[j] == 0) continue;
            auto c2 = restricted_column(gen_k[j], gen_km1, index_km1);
            for (std::size_t i = 0; i < gen_km1.size(); ++i) img[i] += col[j] * c2[i];
        }
        for (const auto& v : img)
            if (v != 0)
                fail(errc::infinite_window_population,
                     cx.name + ": boxed window is not closed under the boundary");
    }

    auto reduced = reduce_mod_span(image, cycles);
    // echelonize the reduced cycles to get an independent homology basis
    std::vector<std::vector<rat>> hbasis;
    {
        std::vector<std::vector<rat>> acc;
        for (auto v : reduced) {
            auto r = reduce_mod_span(acc, {v}).front();
            bool nz = false;
            for (const auto& x : r)
                if (x != 0) { nz = true; break; }
            if (nz) {
                acc.push_back(r);
                hbasis.push_back(std::move(r));
            }
        }
    }

    windowed_homology_result res;
    res.degree = k;
    res.dimension = hbasis.size();
    for (const auto& v : hbasis) {
        novikov_chain ch;
        for (std::size_t j = 0; j < gen_k.size(); ++j)
            if (v[j] != 0)
                chain_insert(ch, gen_k[j].first,
                             nov_monomial(cx.group, direction::downward, gen_k[j].second,
                                          v[j]));
        res.basis.push_back(std::move(ch));
    }
    return res;
}

/* Time reversal: actions negate, degree k becomes dim2n - k, and the
 * boundary matrix transposes.  At generator level the correspondence sends
 * (z, A) to (z~, -A); pushing that through the ring-linear structure leaves
 * the matrix entry indices unchanged, which is exactly what keeps the
 * strict filtration and the degree -1 rule intact.  Applying the map twice
 * returns the original complex. */
inline floer_complex time_reversal(const floer_complex& cx) {
    floer_complex out;
    out.name = cx.name + "~";
    out.group = cx.group;
    out.degree_factor = cx.degree_factor;
    out.dim2n = cx.dim2n;
    out.box_radius = cx.box_radius;
    out.orbits.reserve(cx.orbits.size());
    for (const auto& o : cx.orbits)
        out.orbits.push_back({o.label, -o.base_action, cx.dim2n - o.base_degree});
    for (const auto& [key, e] : cx.boundary)
        out.boundary.emplace(std::make_pair(key.second, key.first), e);
    return out;
}

inline std::string chain_str(const floer_complex& cx, const novikov_chain& c) {
    if (c.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [orb, e] : c.coeffs) {
        if (!first) out += "  +  ";
        first = false;
        out += cx.orbits[orb].label + " * (" + nov_str(e) + ")";
    }
    return out;
}

} // namespace filtered_complex
} // namespace floer
