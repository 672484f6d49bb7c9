#pragma once

/* Hofer-type quantities on sampled Hamiltonians.
 *
 * A Hamiltonian is sampled on T+1 uniform time rows over a finite weighted
 * point set; all quadrature is the trapezoid rule on that grid, which is
 * exact on time-constant data.  Flows are authored as per-row point
 * bijections, so composition and inversion are pointwise table operations
 * and every identity below holds exactly.
 */

#include "chain_map.hpp"
#include "spectral.hpp"

#include <algorithm>

namespace floer {
inline namespace norms {

struct sampled_hamiltonian {
    std::string name;
    std::size_t time_steps = 0;              // T; the grid has T+1 rows
    std::vector<std::string> points;         // labels of the sampled point set
    std::vector<rat> weights;                // positive measure weights per point
    std::vector<std::vector<rat>> values;    // (T+1) x |points|
    bool normalized = false;                 // declared: weighted row sums vanish
};

inline validation_report validate_hamiltonian(const sampled_hamiltonian& h) {
    validation_report rep;
    if (h.time_steps < 1) rep.add("grid", h.name, "time grid needs at least two samples");
    if (h.points.empty()) rep.add("points", h.name, "empty point set");
    std::set<std::string> seen;
    for (const auto& p : h.points)
        if (!seen.insert(p).second) rep.add("points", p, "duplicate point label");
    if (h.weights.size() != h.points.size())
        rep.add("weights", h.name, "weight count differs from point count");
    else
        for (std::size_t i = 0; i < h.weights.size(); ++i)
            if (h.weights[i] <= 0)
                rep.add("weights", h.points[i], "weight is not positive");
    if (h.values.size() != h.time_steps + 1)
        rep.add("values", h.name, "row count differs from the time grid");
    else
        for (std::size_t t = 0; t < h.values.size(); ++t)
            if (h.values[t].size() != h.points.size())
                rep.add("values", h.name + " row " + std::to_string(t),
                        "column count differs from the point count");
    if (rep.ok && h.normalized)
        for (std::size_t t = 0; t < h.values.size(); ++t) {
            rat s = 0;
            for (std::size_t j = 0; j < h.points.size(); ++j)
                s += h.weights[j] * h.values[t][j];
            if (s != 0)
                rep.add("normalization", h.name + " row " + std::to_string(t),
                        "weighted sum " + rat_str(s) + " is nonzero");
        }
    return rep;
}

inline void require_normalized(const sampled_hamiltonian& h) {
    if (!h.normalized)
        fail(errc::not_normalized, h.name + " is not declared normalized");
    auto rep = validate_hamiltonian(h);
    if (!rep.ok)
        fail(errc::not_normalized, h.name + ": " + rep.findings.front().detail);
}

/* subtract the weighted mean from every time row */
inline sampled_hamiltonian normalize(const sampled_hamiltonian& h) {
    sampled_hamiltonian out = h;
    rat total = 0;
    for (const auto& w : h.weights) total += w;
    if (total == 0) fail(errc::bad_argument, h.name + ": total measure is zero");
    for (auto& row : out.values) {
        rat mean = 0;
        for (std::size_t j = 0; j < row.size(); ++j) mean += h.weights[j] * row[j];
        mean /= total;
        for (auto& v : row) v -= mean;
    }
    out.normalized = true;
    return out;
}

/* (1/T) * (g_0/2 + g_1 + ... + g_{T-1} + g_T/2) */
inline rat trapezoid(const std::vector<rat>& g, std::size_t steps) {
    rat s = 0;
    for (std::size_t i = 0; i <= steps; ++i)
        s += (i == 0 || i == steps) ? g[i] / 2 : g[i];
    return s / rat(steps);
}

struct hofer_quantities_t {
    rat hofer_norm, e_plus, e_minus;
};

inline hofer_quantities_t hofer_quantities(const sampled_hamiltonian& h) {
    require_normalized(h);
    std::vector<rat> mx(h.time_steps + 1), mn(h.time_steps + 1), os(h.time_steps + 1);
    for (std::size_t t = 0; t <= h.time_steps; ++t) {
        mx[t] = *std::max_element(h.values[t].begin(), h.values[t].end());
        mn[t] = *std::min_element(h.values[t].begin(), h.values[t].end());
        os[t] = mx[t] - mn[t];
    }
    hofer_quantities_t q;
    q.hofer_norm = trapezoid(os, h.time_steps);
    q.e_plus = trapezoid(mx, h.time_steps);
    std::vector<rat> neg(mn.size());
    for (std::size_t t = 0; t < mn.size(); ++t) neg[t] = -mn[t];
    q.e_minus = trapezoid(neg, h.time_steps);
    return q;
}

/* a point bijection per time row: the discrete stand-in for a flow */
using point_transport = std::vector<std::vector<std::size_t>>;

inline void require_transport(const point_transport& tr, std::size_t rows,
                              std::size_t n_points, const std::string& where) {
    if (tr.size() != rows)
        fail(errc::transport_not_bijective,
             where + ": transport row count differs from the time grid");
    for (std::size_t t = 0; t < rows; ++t) {
        if (tr[t].size() != n_points)
            fail(errc::transport_not_bijective,
                 where + ": row " + std::to_string(t) + " has the wrong length");
        std::vector<bool> hit(n_points, false);
        for (auto v : tr[t]) {
            if (v >= n_points || hit[v])
                fail(errc::transport_not_bijective,
                     where + ": row " + std::to_string(t) + " is not a bijection");
            hit[v] = true;
        }
    }
}

inline point_transport identity_transport(std::size_t rows, std::size_t n_points) {
    point_transport tr(rows, std::vector<std::size_t>(n_points));
    for (auto& row : tr)
        for (std::size_t j = 0; j < n_points; ++j) row[j] = j;
    return tr;
}

inline point_transport invert_transport(const point_transport& tr) {
    point_transport out(tr.size());
    for (std::size_t t = 0; t < tr.size(); ++t) {
        out[t].assign(tr[t].size(), 0);
        for (std::size_t j = 0; j < tr[t].size(); ++j) out[t][tr[t][j]] = j;
    }
    return out;
}

/* (F#G)(t, x) = F(t, x) + G(t, transport_t(x)); the transport plays the
 * inverse flow of F.  Result is re-normalized when both inputs were. */
inline sampled_hamiltonian compose_hamiltonians(const sampled_hamiltonian& f,
                                                const sampled_hamiltonian& g,
                                                const point_transport& transport) {
    if (f.time_steps != g.time_steps || f.points != g.points || f.weights != g.weights)
        fail(errc::bad_argument,
             f.name + " # " + g.name + ": incompatible grids or point sets");
    require_transport(transport, f.time_steps + 1, f.points.size(),
                      f.name + " # " + g.name);
    sampled_hamiltonian out = f;
    out.name = f.name + "#" + g.name;
    for (std::size_t t = 0; t <= f.time_steps; ++t)
        for (std::size_t j = 0; j < f.points.size(); ++j)
            out.values[t][j] = f.values[t][j] + g.values[t][transport[t][j]];
    out.normalized = false;
    if (f.normalized && g.normalized) out = normalize(out);
    return out;
}

/* inverse law: Gbar(t, x) = -G(t, flow_t(x)), flow being G's own flow */
inline sampled_hamiltonian hamiltonian_inverse(const sampled_hamiltonian& g,
                                               const point_transport& flow) {
    require_transport(flow, g.time_steps + 1, g.points.size(), g.name + " inverse");
    sampled_hamiltonian out = g;
    out.name = g.name + "~inv";
    for (std::size_t t = 0; t <= g.time_steps; ++t)
        for (std::size_t j = 0; j < g.points.size(); ++j)
            out.values[t][j] = -g.values[t][flow[t][j]];
    out.normalized = false;
    if (g.normalized) out = normalize(out);
    return out;
}

/* Htilde(t, x) = -H(1 - t, x): reflect the grid, negate the values */
inline sampled_hamiltonian time_reversal_hamiltonian(const sampled_hamiltonian& h) {
    sampled_hamiltonian out = h;
    out.name = h.name + "~";
    for (std::size_t t = 0; t <= h.time_steps; ++t)
        for (std::size_t j = 0; j < h.points.size(); ++j)
            out.values[t][j] = -h.values[h.time_steps - t][j];
    return out;
}

inline rat gamma_tilde(const rat& rho_forward, const rat& rho_reversed) {
    return rho_forward + rho_reversed;
}

/* minimum over a finite list of lifts; an upper bound for the true norm */
inline rat gamma_over_lifts(const std::vector<rat>& tilde_values) {
    if (tilde_values.empty())
        fail(errc::empty_lift_list, "gamma needs at least one lift");
    return *std::min_element(tilde_values.begin(), tilde_values.end());
}

inline bool is_positive(const rat& rho_of_unit) { return rho_of_unit <= 0; }

/* f >= g iff the supplied rho(f g^{-1}; unit) is nonpositive */
inline bool partial_order_ge(const rat& rho_of_quotient) { return rho_of_quotient <= 0; }

inline rat osc(const std::vector<rat>& values) {
    if (values.empty()) fail(errc::empty_list, "osc of an empty list");
    return *std::max_element(values.begin(), values.end())
         - *std::min_element(values.begin(), values.end());
}

/* Energy bound: a validated chain map out of the one-generator trivial
 * complex whose shift bound is e_minus forces rho(image of the unit) to
 * stay at or below e_minus. */
struct energy_bound_report {
    bool ok = false;
    std::optional<rat> rho_image;
    rat e_minus;
    std::string detail;
};

inline energy_bound_report energy_bound_check(const floer_complex& trivial,
                                              const floer_complex& target,
                                              const chain_map_data& map,
                                              const rat& e_minus) {
    energy_bound_report out;
    out.e_minus = e_minus;
    if (trivial.orbits.size() != 1 || !trivial.boundary.empty()
        || trivial.orbits[0].base_action != 0) {
        out.detail = "source is not the trivial one-generator complex at action 0";
        return out;
    }
    auto rep = validate_chain_map(trivial, target, map);
    if (!rep.ok) {
        out.detail = "chain map fails validation: " + rep.findings.front().detail;
        return out;
    }
    if (map.shift_bound > e_minus) {
        out.detail = "declared shift bound exceeds e_minus";
        return out;
    }
    novikov_chain unit;
    chain_insert(unit, 0, nov_one(trivial.group, direction::downward));
    novikov_chain image = apply_chain_map(map, unit);
    out.rho_image = spectral_number(target, image).rho;
    out.ok = out.rho_image && *out.rho_image <= e_minus;
    if (!out.rho_image) out.detail = "image class is zero";
    return out;
}

} // namespace norms
} // namespace floer
