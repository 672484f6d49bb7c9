#pragma once

/* Finite-support formal series over the coefficient group, in the two
 * completion directions that appear on the cohomology and chain sides.
 *
 * A term is stored as (index A, coefficient a_A).  An upward element reads
 * sum a_A q^{-A} and is valued by v(x) = min over support of omega(-A); a
 * downward element reads sum b_B q^{+B} and is valued by v(x) = max over
 * support of omega(B).  With this convention the index maps of the two
 * directions match up term by term (the flat/sharp correspondence and the
 * pairing both match equal indices), and multiplication adds indices in
 * both directions.
 *
 * The valuation of the zero element is the empty sentinel: plus infinity
 * upward, minus infinity downward.  Callers branch on it explicitly.
 */

#include "gamma_group.hpp"

#include <map>
#include <optional>
#include <utility>

namespace floer {
inline namespace novikov_ring {

enum class direction { upward, downward };

inline const char* direction_name(direction d) {
    return d == direction::upward ? "upward" : "downward";
}

struct novikov_element {
    gamma_group group;
    direction dir = direction::downward;
    std::map<expvec, rat> terms;   // index -> coefficient, no zero coefficients

    bool is_zero() const { return terms.empty(); }

    bool operator==(const novikov_element& o) const {
        return group == o.group && dir == o.dir && terms == o.terms;
    }
};

inline novikov_element nov_zero(const gamma_group& g, direction d) {
    return novikov_element{g, d, {}};
}

inline novikov_element nov_monomial(const gamma_group& g, direction d,
                                    const expvec& a, const rat& c) {
    novikov_element x{g, d, {}};
    if (a.size() != g.rank) fail(errc::group_mismatch, "exponent length differs from rank");
    if (c != 0) x.terms.emplace(a, c);
    return x;
}

inline novikov_element nov_one(const gamma_group& g, direction d) {
    return nov_monomial(g, d, g.zero(), 1);
}

/* omega-level of a single stored index, by direction */
inline rat term_level(const novikov_element& x, const expvec& a) {
    rat w = x.group.eval_omega(a);
    return x.dir == direction::upward ? -w : w;
}

inline void require_compatible(const novikov_element& x, const novikov_element& y,
                               const char* where) {
    require_same_group(x.group, y.group, where);
    if (x.dir != y.dir) fail(errc::direction_mismatch, where);
}

inline novikov_element nov_add(const novikov_element& x, const novikov_element& y) {
    require_compatible(x, y, "nov_add");
    novikov_element z = x;
    for (const auto& [a, c] : y.terms) {
        auto it = z.terms.find(a);
        if (it == z.terms.end()) {
            z.terms.emplace(a, c);
        } else {
            it->second += c;
            if (it->second == 0) z.terms.erase(it);
        }
    }
    return z;
}

inline novikov_element nov_scale(const rat& c, const novikov_element& x) {
    novikov_element z{x.group, x.dir, {}};
    if (c == 0) return z;
    for (const auto& [a, v] : x.terms) z.terms.emplace(a, c * v);
    return z;
}

inline novikov_element nov_neg(const novikov_element& x) { return nov_scale(-1, x); }

inline novikov_element nov_sub(const novikov_element& x, const novikov_element& y) {
    return nov_add(x, nov_neg(y));
}

inline novikov_element nov_mul(const novikov_element& x, const novikov_element& y) {
    require_compatible(x, y, "nov_mul");
    novikov_element z{x.group, x.dir, {}};
    for (const auto& [a, ca] : x.terms)
        for (const auto& [b, cb] : y.terms) {
            expvec s = exp_add(a, b);
            auto it = z.terms.find(s);
            if (it == z.terms.end()) {
                rat c = ca * cb;
                if (c != 0) z.terms.emplace(std::move(s), std::move(c));
            } else {
                it->second += ca * cb;
                if (it->second == 0) z.terms.erase(it);
            }
        }
    return z;
}

/* v(x); empty sentinel (nullopt) for the zero element: +inf upward, -inf
 * downward.  v(xy) = v(x) + v(y); v(x+y) >= min upward, <= max downward. */
inline std::optional<rat> valuation(const novikov_element& x) {
    if (x.terms.empty()) return std::nullopt;
    std::optional<rat> best;
    for (const auto& [a, c] : x.terms) {
        rat lv = term_level(x, a);
        if (!best) {
            best = lv;
        } else if (x.dir == direction::upward ? lv < *best : lv > *best) {
            best = lv;
        }
    }
    return best;
}

/* the unique valuation-attaining term; ties are rejected because every
 * consumer (truncated inversion, reduction pivots) needs a single monomial */
inline std::pair<rat, expvec> leading_term(const novikov_element& x) {
    if (x.terms.empty()) fail(errc::empty_element, "leading_term of zero");
    std::optional<rat> best;
    const expvec* arg = nullptr;
    int hits = 0;
    for (const auto& [a, c] : x.terms) {
        rat lv = term_level(x, a);
        if (!best || (x.dir == direction::upward ? lv < *best : lv > *best)) {
            best = lv;
            arg = &a;
            hits = 1;
        } else if (lv == *best) {
            ++hits;
        }
    }
    if (hits != 1)
        fail(errc::nonunit_leading_term, "valuation attained by more than one term");
    return {x.terms.at(*arg), *arg};
}

inline bool has_unique_leading_term(const novikov_element& x) {
    if (x.terms.empty()) return false;
    std::optional<rat> best;
    int hits = 0;
    for (const auto& [a, c] : x.terms) {
        rat lv = term_level(x, a);
        if (!best || (x.dir == direction::upward ? lv < *best : lv > *best)) {
            best = lv;
            hits = 1;
        } else if (lv == *best) {
            ++hits;
        }
    }
    return hits == 1;
}

/* Truncated geometric-series inverse.  Returns y with x*y = 1 + r where
 * every term of r sits strictly beyond the window: valuation below -W for
 * downward elements, above +W for upward ones.  Requires a unique,
 * invertible leading monomial. */
inline novikov_element nov_invert_truncated(const novikov_element& x, const rat& W) {
    if (x.terms.empty()) fail(errc::empty_element, "invert of zero");
    auto [lc, la] = leading_term(x);   // throws NonunitLeadingTerm on ties
    novikov_element inv_lead = nov_monomial(x.group, x.dir, exp_neg(la), rat(1) / lc);
    // x * inv_lead = 1 - u with every term of u strictly past valuation 0
    novikov_element u = nov_sub(nov_one(x.group, x.dir), nov_mul(x, inv_lead));
    novikov_element geom = nov_one(x.group, x.dir);
    novikov_element pw = u;
    while (!pw.is_zero()) {
        rat v = *valuation(pw);
        if (x.dir == direction::downward ? v < -W : v > W) break;
        geom = nov_add(geom, pw);
        pw = nov_mul(pw, u);
    }
    return nov_mul(inv_lead, geom);
}

inline std::string nov_str(const novikov_element& x) {
    if (x.terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [a, c] : x.terms) {
        if (!first) out += " + ";
        first = false;
        out += rat_str(c);
        out += x.dir == direction::upward ? " q^-" : " q^";
        out += expvec_str(a);
    }
    return out;
}

} // namespace novikov_ring
} // namespace floer
