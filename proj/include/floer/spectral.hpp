#pragma once

/* Min-max spectral numbers of homology classes in a filtered complex.
 *
 * rho(class) is the smallest level attainable among in-box representatives
 * representative + boundary(beta).  The engine is a leading-term reduction:
 * boundary columns of boxed generators are echelonized against the total
 * order (action descending, then orbit label, then index), and the
 * representative's top term is cancelled while any echelon pivot matches
 * it.  The surviving top cannot be cancelled by the boxed boundary space,
 * which is what makes the final level the exact minimum.
 *
 * A brute-force oracle enumerates beta over F_p coefficients on the same
 * boxed generators; certificates for comparing it against the exact
 * rational answer are recorded alongside (see brute_force_result).
 */

#include "chain_map.hpp"

#include <algorithm>
#include <tuple>

namespace floer {
inline namespace spectral {

using cap_pos = std::pair<std::size_t, expvec>;  // (orbit index, cap index)

/* total reduction order: action descending, orbit label, index lex */
struct position_order {
    const floer_complex* cx;
    bool operator()(const cap_pos& p, const cap_pos& q) const {
        rat pa = cx->action(p.first, p.second);
        rat qa = cx->action(q.first, q.second);
        if (pa != qa) return pa > qa;
        const auto& pl = cx->orbits[p.first].label;
        const auto& ql = cx->orbits[q.first].label;
        if (pl != ql) return pl < ql;
        return p.second < q.second;
    }
};

struct spectral_result {
    std::optional<rat> rho;          // empty sentinel: +inf (zero witness)
    novikov_chain witness;           // representative attaining rho
    bool upper_bound_only = false;   // a cancelling cap would leave the box
    std::string witness_orbit;       // level-attaining generator of the witness
    expvec witness_exponent;
    /* the reducing chain beta (boxed source generator -> coefficient) with
     * witness == representative + boundary(beta) */
    std::map<cap_pos, rat> beta;
};

namespace detail {

struct ech_column {
    std::map<std::size_t, rat> body;      // universe rank -> coefficient
    std::map<cap_pos, rat> combo;         // provenance over original sources
};

inline void column_axpy(ech_column& dst, const rat& f, const ech_column& src) {
    for (const auto& [r, c] : src.body) {
        auto it = dst.body.find(r);
        if (it == dst.body.end()) {
            rat v = f * c;
            if (v != 0) dst.body.emplace(r, std::move(v));
        } else {
            it->second += f * c;
            if (it->second == 0) dst.body.erase(it);
        }
    }
    for (const auto& [s, c] : src.combo) {
        auto it = dst.combo.find(s);
        if (it == dst.combo.end()) {
            rat v = f * c;
            if (v != 0) dst.combo.emplace(s, std::move(v));
        } else {
            it->second += f * c;
            if (it->second == 0) dst.combo.erase(it);
        }
    }
}

struct reduction_setup {
    std::vector<cap_pos> universe;               // sorted by position_order
    std::map<cap_pos, std::size_t> rank_of;
    std::vector<cap_pos> sources;                // boxed generators, label/index order
    std::vector<std::map<cap_pos, rat>> columns; // boundary of each source, by position
};

/* boundary column of one boxed source generator */
inline std::map<cap_pos, rat> raw_column(const floer_complex& cx, const cap_pos& g) {
    std::map<cap_pos, rat> col;
    for (const auto& [key, e] : cx.boundary) {
        if (key.first != g.first) continue;
        for (const auto& [b, c] : e.terms) {
            cap_pos p{key.second, exp_add(g.second, b)};
            auto it = col.find(p);
            if (it == col.end()) {
                col.emplace(std::move(p), c);
            } else {
                it->second += c;
                if (it->second == 0) col.erase(it);
            }
        }
    }
    return col;
}

inline reduction_setup
prepare_reduction(const floer_complex& cx, const novikov_chain& rep) {
    if (cx.group.rank > 0 && !cx.box_radius)
        fail(errc::bad_argument,
             cx.name + ": group rank >= 1 and no exponent box configured");
    std::int64_t radius = cx.box_radius ? *cx.box_radius : 0;

    std::set<int> degrees;
    for (const auto& [orb, e] : rep.coeffs)
        for (const auto& [a, c] : e.terms) degrees.insert(cx.degree(orb, a));

    reduction_setup su;
    /* candidate sources sorted by (orbit label, index) -- the tie rule */
    std::vector<std::size_t> orbs(cx.orbits.size());
    for (std::size_t i = 0; i < orbs.size(); ++i) orbs[i] = i;
    std::sort(orbs.begin(), orbs.end(), [&](std::size_t a, std::size_t b) {
        return cx.orbits[a].label < cx.orbits[b].label;
    });
    for (auto orb : orbs)
        for (const auto& a : box_points(cx.group.rank, radius)) {
            if (!degrees.count(cx.degree(orb, a) - 1)) continue;
            auto col = raw_column(cx, {orb, a});
            if (col.empty()) continue;
            su.sources.push_back({orb, a});
            su.columns.push_back(std::move(col));
        }

    std::set<cap_pos> posset;
    for (const auto& [orb, e] : rep.coeffs)
        for (const auto& [a, c] : e.terms) posset.insert({orb, a});
    for (const auto& col : su.columns)
        for (const auto& [p, c] : col) posset.insert(p);
    su.universe.assign(posset.begin(), posset.end());
    std::sort(su.universe.begin(), su.universe.end(), position_order{&cx});
    for (std::size_t i = 0; i < su.universe.size(); ++i) su.rank_of.emplace(su.universe[i], i);
    return su;
}

} // namespace detail

/* boundary column of one capped generator, indexed by capped positions */
inline std::map<cap_pos, rat> boundary_column(const floer_complex& cx, const cap_pos& g) {
    return detail::raw_column(cx, g);
}

inline spectral_result spectral_number(const floer_complex& cx, const novikov_chain& rep) {
    if (!boundary_apply(cx, rep).is_zero())
        fail(errc::not_a_cycle, cx.name + ": the representative has nonzero boundary");
    auto su = detail::prepare_reduction(cx, rep);
    std::int64_t radius = cx.box_radius ? *cx.box_radius : 0;

    /* echelonize the boundary columns; pivots are distinct universe ranks */
    std::map<std::size_t, detail::ech_column> pivot_table;
    for (std::size_t j = 0; j < su.columns.size(); ++j) {
        detail::ech_column col;
        for (const auto& [p, c] : su.columns[j]) col.body.emplace(su.rank_of.at(p), c);
        col.combo.emplace(su.sources[j], rat(1));
        while (!col.body.empty()) {
            std::size_t piv = col.body.begin()->first;
            auto it = pivot_table.find(piv);
            if (it == pivot_table.end()) {
                pivot_table.emplace(piv, std::move(col));
                break;
            }
            rat f = -col.body.begin()->second / it->second.body.begin()->second;
            detail::column_axpy(col, f, it->second);
        }
    }

    /* reduce the representative's top while a pivot matches it */
    detail::ech_column cur;
    for (const auto& [orb, e] : rep.coeffs)
        for (const auto& [a, c] : e.terms) cur.body.emplace(su.rank_of.at({orb, a}), c);

    while (!cur.body.empty()) {
        std::size_t top = cur.body.begin()->first;
        auto it = pivot_table.find(top);
        if (it == pivot_table.end()) break;
        rat f = -cur.body.begin()->second / it->second.body.begin()->second;
        detail::column_axpy(cur, f, it->second);
    }

    spectral_result res;
    if (cur.body.empty()) {
        /* in-box boundary class: the lowest nonzero boundary element (the
         * last echelon pivot) attains the minimum; with no boundary at all
         * the only representative is zero and rho stays at the sentinel */
        if (!pivot_table.empty()) {
            const auto& last = *pivot_table.rbegin();
            for (const auto& [r, c] : last.second.body)
                chain_insert(res.witness, su.universe[r].first,
                             nov_monomial(cx.group, direction::downward,
                                          su.universe[r].second, c));
            for (const auto& [s, c] : last.second.combo) res.beta[s] = c;
            // fold in the beta that cancelled the representative itself
            for (const auto& [s, c] : cur.combo) {
                res.beta[s] += c;
                if (res.beta[s] == 0) res.beta.erase(s);
            }
            const auto& top = su.universe[last.second.body.begin()->first];
            res.rho = cx.action(top.first, top.second);
            res.witness_orbit = cx.orbits[top.first].label;
            res.witness_exponent = top.second;
        } else {
            for (const auto& [s, c] : cur.combo) res.beta[s] = c;
        }
    } else {
        for (const auto& [r, c] : cur.body)
            chain_insert(res.witness, su.universe[r].first,
                         nov_monomial(cx.group, direction::downward,
                                      su.universe[r].second, c));
        for (const auto& [s, c] : cur.combo) res.beta[s] = c;
        const auto& top = su.universe[cur.body.begin()->first];
        res.rho = cx.action(top.first, top.second);
        res.witness_orbit = cx.orbits[top.first].label;
        res.witness_exponent = top.second;

        /* would an out-of-box cap open another cancellation at the top? */
        for (const auto& [key, e] : cx.boundary) {
            if (key.second != top.first) continue;
            for (const auto& [b, c] : e.terms) {
                expvec a = exp_sub(top.second, b);
                if (!in_box(a, radius)) res.upper_bound_only = true;
            }
        }
    }
    return res;
}

/* ---- F_p brute force oracle ---- */

struct brute_force_result {
    std::optional<rat> value;            // min level over the F_p enumeration
    std::uint64_t enumerated = 0;
    /* the first enumerated beta attaining the minimum, as integer digits */
    std::map<cap_pos, std::int64_t> argmin;
    /* certificate: level over Q of representative + boundary(lift(argmin))
     * equals `value`, hence rho_Q <= value */
    bool le_certified = false;
};

namespace detail {

inline std::int64_t mod_inv(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, nt = 1, r = p, nr = a % p;
    if (nr < 0) nr += p;
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (r != 1) fail(errc::bad_argument, "non-invertible residue");
    return t < 0 ? t + p : t;
}

inline std::int64_t rat_mod_p(const rat& x, std::int64_t p) {
    bigint num = numerator(x) % p, den = denominator(x) % p;
    if (den == 0)
        fail(errc::bad_argument, "coefficient denominator divisible by p");
    std::int64_t n = static_cast<std::int64_t>(num);
    std::int64_t d = static_cast<std::int64_t>(den);
    if (n < 0) n += p;
    std::int64_t v = (n * mod_inv(d, p)) % p;
    return v;
}

} // namespace detail

inline brute_force_result
brute_force_spectral(const floer_complex& cx, const novikov_chain& rep, std::int64_t p,
                     std::uint64_t guard_limit = (1u << 20)) {
    if (p < 2) fail(errc::bad_argument, "p must be at least 2");
    if (!boundary_apply(cx, rep).is_zero())
        fail(errc::not_a_cycle, cx.name + ": the representative has nonzero boundary");
    auto su = detail::prepare_reduction(cx, rep);

    std::size_t n = su.sources.size();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (total > guard_limit / static_cast<std::uint64_t>(p))
            fail(errc::explosion_guard,
                 "enumeration would exceed " + std::to_string(guard_limit)
                     + " assignments");
        total *= static_cast<std::uint64_t>(p);
    }

    std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> cols_p(n);
    for (std::size_t j = 0; j < n; ++j)
        for (const auto& [pos, c] : su.columns[j])
            cols_p[j].emplace_back(su.rank_of.at(pos), detail::rat_mod_p(c, p));

    std::vector<std::int64_t> vec(su.universe.size(), 0);
    for (const auto& [orb, e] : rep.coeffs)
        for (const auto& [a, c] : e.terms)
            vec[su.rank_of.at({orb, a})] = detail::rat_mod_p(c, p);

    auto level_of_vec = [&]() -> std::optional<rat> {
        for (std::size_t r = 0; r < vec.size(); ++r)
            if (vec[r] % p != 0)
                return cx.action(su.universe[r].first, su.universe[r].second);
        return std::nullopt;   // zero chain: +inf sentinel
    };

    brute_force_result out;
    std::vector<std::int64_t> digits(n, 0);
    std::optional<rat> best;
    std::vector<std::int64_t> best_digits;
    std::uint64_t count = 0;
    for (;;) {
        ++count;
        auto lv = level_of_vec();
        if (lv && (!best || *lv < *best)) {
            best = lv;
            best_digits = digits;
        }
        // odometer step; every digit increment adds its column once mod p
        std::size_t i = 0;
        while (i < n) {
            for (const auto& [r, c] : cols_p[i]) vec[r] = (vec[r] + c) % p;
            if (++digits[i] < p) break;
            digits[i] = 0;
            ++i;
        }
        if (i == n) break;
    }
    out.enumerated = count;
    out.value = best;
    if (best) {
        for (std::size_t j = 0; j < n; ++j)
            if (best_digits[j] != 0) out.argmin.emplace(su.sources[j], best_digits[j]);
        /* lift argmin to Z and re-run over Q: if some lift of the digits
         * reproduces the oracle value exactly over the rationals, the value
         * is an honest member of the rational coset, so rho_Q <= value.
         * Each nonzero digit d has two natural lifts, d and d - p; try all
         * sign combinations while the count stays small. */
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j < n; ++j)
            if (best_digits[j] != 0) nz.push_back(j);
        std::uint64_t combos =
            nz.size() <= 12 ? (std::uint64_t{1} << nz.size()) : 1;
        for (std::uint64_t mask = 0; mask < combos && !out.le_certified; ++mask) {
            novikov_chain lifted = rep;
            for (std::size_t k = 0; k < nz.size(); ++k) {
                std::size_t j = nz[k];
                std::int64_t d = best_digits[j];
                if (mask >> k & 1) d -= p;
                novikov_chain unit;
                chain_insert(unit, su.sources[j].first,
                             nov_monomial(cx.group, direction::downward,
                                          su.sources[j].second, rat(d)));
                lifted = chain_add(lifted, boundary_apply(cx, unit));
            }
            auto lq = level(cx, lifted);
            out.le_certified = lq.has_value() && *lq == *best;
        }
    }
    return out;
}

/* Greedy-side certificate for comparing the exact engine against the F_p
 * oracle.  When the exact result's beta and witness both have denominators
 * coprime to p, the witness's mod-p shadow is a member of the oracle's
 * enumeration; if in addition some witness numerator is nonzero mod p, the
 * shadow is a nonzero member, so oracle <= level(shadow) <= rho.  Together
 * with le_certified (rho <= oracle) that pins equality.  The vanishing
 * guard is essential: a witness all of whose numerators p divides reduces
 * to the zero vector and gives the oracle no bound at all. */
inline bool oracle_ge_certified(const spectral_result& r, std::int64_t p) {
    if (!r.rho || r.upper_bound_only) return false;
    for (const auto& [s, c] : r.beta)
        if (denominator(c) % p == 0) return false;
    bool survives = false;
    for (const auto& [orb, e] : r.witness.coeffs)
        for (const auto& [a, c] : e.terms) {
            if (denominator(c) % p == 0) return false;
            if (numerator(c) % p != 0) survives = true;
        }
    return survives;
}

/* ---- spectrality ---- */

struct spectrality_result {
    bool member = false;
    std::string orbit;     // witness orbit with rho = base_action - omega(A)
    expvec exponent;
};

inline spectrality_result spectrality_check(const floer_complex& cx, const rat& rho) {
    for (const auto& o : cx.orbits) {
        auto a = omega_lattice_solve(cx.group, o.base_action - rho);
        if (a) return {true, o.label, *a};
    }
    return {};
}

/* ---- two-term gap bound window ---- */

struct gap_bound_result {
    bool precondition_ok = false;   // eps * osc(f) < c(a)/2
    rat gap;                        // c(a)
    rat lo, hi;                     // the window
    bool inside = false;
};

inline gap_bound_result gap_bound_check(const std::vector<rat>& levels, const rat& eps,
                                        const rat& fmin, const rat& fmax, const rat& rho) {
    if (levels.empty()) fail(errc::bad_argument, "gap bound needs at least one level");
    for (std::size_t i = 1; i < levels.size(); ++i)
        if (!(levels[i - 1] > levels[i]))
            fail(errc::bad_argument, "levels must be strictly decreasing");
    gap_bound_result res;
    rat l1 = levels[0];
    res.gap = abs(l1);
    if (levels.size() > 1 && levels[0] - levels[1] < res.gap) res.gap = levels[0] - levels[1];
    res.precondition_ok = eps * (fmax - fmin) < res.gap / 2;
    res.lo = l1 - eps * fmax;
    res.hi = l1 + eps * fmax;
    if (levels.size() > 1) {
        rat alt = levels[1] + eps * fmin;
        if (alt > res.lo) res.lo = alt;
        if (alt > res.hi) res.hi = alt;
    }
    res.inside = res.lo <= rho && rho <= res.hi;
    return res;
}

/* ---- continuity: shift-bounded maps pin the difference of rho ---- */

struct continuity_result {
    rat rho_src, rho_tgt;
    rat s_plus, s_minus;            // declared window for rho_tgt - rho_src
    bool ok = false;
};

inline continuity_result
continuity_check(const floer_complex& cx_src, const novikov_chain& class_src,
                 const floer_complex& cx_tgt, const chain_map_data& fwd,
                 const chain_map_data& bwd) {
    auto vr = validate_chain_map(cx_src, cx_tgt, fwd);
    if (!vr.ok)
        fail(errc::bad_argument, "forward map fails validation: "
                                     + vr.findings.front().check);
    auto vb = validate_chain_map(cx_tgt, cx_src, bwd);
    if (!vb.ok)
        fail(errc::bad_argument, "backward map fails validation: "
                                     + vb.findings.front().check);
    auto r1 = spectral_number(cx_src, class_src);
    auto img = apply_chain_map(fwd, class_src);
    auto r2 = spectral_number(cx_tgt, img);
    if (!r1.rho || !r2.rho)
        fail(errc::bad_argument, "continuity check needs nonzero classes");
    continuity_result res;
    res.rho_src = *r1.rho;
    res.rho_tgt = *r2.rho;
    res.s_plus = fwd.shift_bound;
    res.s_minus = -bwd.shift_bound;
    rat diff = res.rho_tgt - res.rho_src;
    res.ok = res.s_minus <= diff && diff <= res.s_plus;
    return res;
}

/* ---- loop action: uniform action shift plus an orbit relabeling ---- */

struct loop_relabel_entry {
    std::string source, target;
    expvec offset;
    std::optional<int> expected_degree;
};

struct loop_action_result {
    floer_complex complex;
    /* transport of chains: coefficients move to the relabeled orbit and
     * pick up the cap offset */
    std::map<std::size_t, std::pair<std::size_t, expvec>> transport; // old -> (new, offset)
};

inline loop_action_result apply_loop_action(const floer_complex& cx, const rat& shift,
                                            const std::vector<loop_relabel_entry>& relabel) {
    if (relabel.size() != cx.orbits.size())
        fail(errc::bad_argument, "relabel must cover every orbit exactly once");
    std::set<std::string> targets;
    std::set<std::size_t> sources_seen;
    loop_action_result out;
    out.complex.name = cx.name + "'";
    out.complex.group = cx.group;
    out.complex.degree_factor = cx.degree_factor;
    out.complex.dim2n = cx.dim2n;
    out.complex.box_radius = cx.box_radius;
    out.complex.orbits.resize(cx.orbits.size());

    std::vector<expvec> offsets(cx.orbits.size());
    for (const auto& r : relabel) {
        std::size_t s = cx.require_orbit(r.source);
        if (!sources_seen.insert(s).second)
            fail(errc::bad_argument, "relabel source '" + r.source + "' repeated");
        if (!targets.insert(r.target).second)
            fail(errc::bad_argument, "relabel target '" + r.target + "' repeated");
        if (r.offset.size() != cx.group.rank)
            fail(errc::group_mismatch, "offset length differs from group rank");
        int deg = cx.orbits[s].base_degree
                - cx.degree_factor * static_cast<int>(cx.group.eval_c1(r.offset));
        if (r.expected_degree && *r.expected_degree != deg)
            fail(errc::degree_mismatch,
                 "relabel of '" + r.source + "' declares degree "
                     + std::to_string(*r.expected_degree) + " but transport gives "
                     + std::to_string(deg));
        /* the new orbit sits where the transported generator lands: action
         * base + I, carried cap offset absorbed into the base data */
        out.complex.orbits[s] =
            orbit{r.target, cx.orbits[s].base_action + shift + cx.group.eval_omega(r.offset),
                  deg};
        offsets[s] = r.offset;
        out.transport.emplace(s, std::make_pair(s, r.offset));
    }
    for (const auto& [key, e] : cx.boundary) {
        const auto& [s, t] = key;
        novikov_element shifted =
            nov_mul(nov_monomial(cx.group, direction::downward,
                                 exp_sub(offsets[t], offsets[s]), 1),
                    e);
        out.complex.boundary.emplace(key, std::move(shifted));
    }
    return out;
}

inline novikov_chain transport_chain(const loop_action_result& la, const gamma_group& g,
                                     const novikov_chain& c) {
    novikov_chain out;
    for (const auto& [orb, e] : c.coeffs) {
        const auto& [tgt, off] = la.transport.at(orb);
        chain_insert(out, tgt, nov_mul(nov_monomial(g, direction::downward, off, 1), e));
    }
    return out;
}

/* The candidate value set {base_action(z) - omega(A)}, presented exactly:
 * the finite set of base actions together with the positive generator of
 * omega(Z^r) as a subgroup of Q (0 when the subgroup is trivial).  Every
 * spectral number the engine emits lies in this set; membership is decided
 * by spectrality_check without any box. */
struct spectrum_presentation_t {
    std::vector<rat> base_actions;   // sorted, deduplicated
    rat generator;                   // omega(Z^r) = generator * Z
};

inline spectrum_presentation_t spectrum_presentation(const floer_complex& cx) {
    spectrum_presentation_t out;
    for (const auto& o : cx.orbits) out.base_actions.push_back(o.base_action);
    std::sort(out.base_actions.begin(), out.base_actions.end());
    out.base_actions.erase(std::unique(out.base_actions.begin(), out.base_actions.end()),
                           out.base_actions.end());
    out.generator = omega_lattice_generator(cx.group);
    return out;
}

} // namespace spectral
} // namespace floer
