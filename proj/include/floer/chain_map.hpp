#pragma once

/* Degree-zero chain maps between filtered complexes, each carrying a
 * declared action-shift bound C: every matrix term must land at action at
 * most C above its source's base action.  Shift bounds add under
 * composition, and the level of an image chain never exceeds the level of
 * the source chain plus C.
 */

#include "complex.hpp"

namespace floer {
inline namespace filtered_complex {

struct chain_map_data {
    std::string name;
    std::string source, target;   // complex names, resolved by the caller
    rat shift_bound;              // C
    /* (source orbit, target orbit) -> downward element */
    std::map<std::pair<std::size_t, std::size_t>, novikov_element> entries;
};

inline validation_report validate_chain_map(const floer_complex& src,
                                            const floer_complex& tgt,
                                            const chain_map_data& m) {
    validation_report rep;
    require_same_group(src.group, tgt.group, "chain map across groups");
    for (const auto& [key, e] : m.entries) {
        const auto& [s, t] = key;
        std::string where = src.orbits[s].label + " -> " + tgt.orbits[t].label;
        if (e.dir != direction::downward) {
            rep.add("entry-direction", where, "chain map entry must be downward");
            continue;
        }
        for (const auto& [a, c] : e.terms) {
            if (tgt.degree(t, a) != src.orbits[s].base_degree)
                rep.add("degree", where,
                        "term q^" + expvec_str(a) + " is not of degree 0");
            // action(t ⊗ q^a) <= base_action(s) + C
            if (!(tgt.action(t, a) <= src.orbits[s].base_action + m.shift_bound))
                rep.add("shift-bound", where,
                        "term q^" + expvec_str(a) + " exceeds the declared shift "
                            + rat_str(m.shift_bound));
        }
    }

    /* chain map identity over the ring: boundary_tgt . h == h . boundary_src */
    for (std::size_t s = 0; s < src.orbits.size(); ++s) {
        std::map<std::size_t, novikov_element> lhs, rhs;
        auto put = [](std::map<std::size_t, novikov_element>& acc, std::size_t i,
                      const novikov_element& e) {
            auto it = acc.find(i);
            if (it == acc.end()) {
                if (!e.is_zero()) acc.emplace(i, e);
            } else {
                it->second = nov_add(it->second, e);
                if (it->second.is_zero()) acc.erase(it);
            }
        };
        for (const auto& [hk, he] : m.entries) {
            if (hk.first != s) continue;
            for (const auto& [dk, de] : tgt.boundary) {
                if (dk.first != hk.second) continue;
                put(lhs, dk.second, nov_mul(de, he));
            }
        }
        for (const auto& [dk, de] : src.boundary) {
            if (dk.first != s) continue;
            for (const auto& [hk, he] : m.entries) {
                if (hk.first != dk.second) continue;
                put(rhs, hk.second, nov_mul(he, de));
            }
        }
        if (lhs != rhs)
            rep.add("chain-map-identity", src.orbits[s].label,
                    "boundary . h differs from h . boundary on this orbit");
    }
    return rep;
}

inline novikov_chain apply_chain_map(const chain_map_data& m, const novikov_chain& c) {
    novikov_chain out;
    for (const auto& [s, e] : c.coeffs)
        for (const auto& [key, he] : m.entries) {
            if (key.first != s) continue;
            chain_insert(out, key.second, nov_mul(he, e));
        }
    return out;
}

/* g . f with shift bounds adding */
inline chain_map_data compose_chain_maps(const chain_map_data& f, const chain_map_data& g) {
    if (f.target != g.source)
        fail(errc::source_target_mismatch,
             "compose: " + f.name + " targets '" + f.target + "' but " + g.name
                 + " starts at '" + g.source + "'");
    chain_map_data out;
    out.name = g.name + "." + f.name;
    out.source = f.source;
    out.target = g.target;
    out.shift_bound = f.shift_bound + g.shift_bound;
    for (const auto& [fk, fe] : f.entries)
        for (const auto& [gk, ge] : g.entries) {
            if (gk.first != fk.second) continue;
            auto key = std::make_pair(fk.first, gk.second);
            auto it = out.entries.find(key);
            if (it == out.entries.end()) {
                novikov_element p = nov_mul(ge, fe);
                if (!p.is_zero()) out.entries.emplace(key, std::move(p));
            } else {
                it->second = nov_add(it->second, nov_mul(ge, fe));
                if (it->second.is_zero()) out.entries.erase(it);
            }
        }
    return out;
}

} // namespace filtered_complex
} // namespace floer
