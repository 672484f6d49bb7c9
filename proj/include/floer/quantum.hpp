#pragma once

/* Quantum cohomology as authored data: a graded basis, a nondegenerate
 * pairing matrix, and structure constants keyed by (i, j, lattice index).
 * The grading equation deg(k) = deg(i) + deg(j) - factor*c1(A) is what
 * validation enforces; the A = 0 slice is the declared classical product.
 *
 * Quantum classes are upward elements with basis-vector coefficients; their
 * flats live on the homology side in Poincare-dual coordinates, so flat and
 * sharp are coordinate-identical and the pairing contracts matching indices
 * through the Gram matrix.
 *
 * The Morse model builds an honest filtered complex out of critical-point
 * data: base action -eps*f(p), base degree 2n - index_f(p), boundary the
 * signed incidence tensored with the ring.  Bounded functionals and the
 * sigma embedding realize the bounded-dual picture on the boxed generating
 * set.
 */

#include "spectral.hpp"

namespace floer {
inline namespace quantum {

struct basis_element {
    std::string name;
    int degree = 0;
};

struct cohomology_model {
    std::string name;
    gamma_group group;
    int dim2n = 0;
    int degree_factor = 2;
    std::string unit;                       // name of the unit basis element
    std::vector<basis_element> basis;
    std::vector<std::vector<rat>> pairing;  // Gram matrix of <e_i, flat(e_j)>
    /* structure constants: (i, j, index A) -> vector over basis; the
     * product e_i * e_j contributes q^{-A} * vector */
    std::map<std::tuple<std::size_t, std::size_t, expvec>, std::vector<rat>> constants;

    std::optional<std::size_t> basis_index(const std::string& n) const {
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (basis[i].name == n) return i;
        return std::nullopt;
    }

    std::size_t require_basis(const std::string& n) const {
        auto i = basis_index(n);
        if (!i) fail(errc::unknown_basis_element, name + ": '" + n + "'");
        return *i;
    }
};

inline validation_report validate_model(const cohomology_model& m) {
    validation_report rep;
    try {
        validate_group(m.group);
    } catch (const error& e) {
        rep.add("group", m.name, e.what());
        return rep;
    }
    std::set<std::string> seen;
    for (const auto& b : m.basis)
        if (!seen.insert(b.name).second) rep.add("basis", b.name, "duplicate basis name");
    if (m.pairing.size() != m.basis.size())
        rep.add("pairing", m.name, "pairing matrix size differs from basis");
    else
        for (const auto& row : m.pairing)
            if (row.size() != m.basis.size())
                rep.add("pairing", m.name, "pairing matrix is not square");
    if (rep.ok) {
        qmatrix p(m.basis.size(), m.basis.size());
        for (std::size_t i = 0; i < m.basis.size(); ++i)
            for (std::size_t j = 0; j < m.basis.size(); ++j) p.at(i, j) = m.pairing[i][j];
        if (rank(p) != m.basis.size())
            rep.add("pairing", m.name, "pairing matrix is singular");
    }
    if (!m.unit.empty() && !m.basis_index(m.unit))
        rep.add("unit", m.unit, "unit is not a basis element");

    for (const auto& [key, vec] : m.constants) {
        const auto& [i, j, a] = key;
        if (i >= m.basis.size() || j >= m.basis.size()
            || a.size() != static_cast<std::size_t>(m.group.rank)) {
            rep.add("constants", m.name, "constant key is out of range");
            continue;
        }
        std::string where = m.basis[i].name + " * " + m.basis[j].name
                          + " q^" + expvec_str(a);
        if (vec.size() != m.basis.size()) {
            rep.add("constants", where, "constant vector length differs from basis");
            continue;
        }
        int shift = m.degree_factor * static_cast<int>(m.group.eval_c1(a));
        for (std::size_t k = 0; k < vec.size(); ++k)
            if (vec[k] != 0
                && m.basis[k].degree != m.basis[i].degree + m.basis[j].degree - shift)
                rep.add("grading", where,
                        "component '" + m.basis[k].name + "' violates the grading equation");
    }
    if (auto ui = m.basis_index(m.unit); ui && !m.unit.empty()) {
        std::size_t u = *ui;
        for (const auto& [key, vec] : m.constants) {
            const auto& [i, j, a] = key;
            if (i >= m.basis.size() || j >= m.basis.size()) continue;
            if (i != u && j != u) continue;
            std::size_t other = i == u ? j : i;
            bool zero_index = exp_is_zero(a);
            for (std::size_t k = 0; k < vec.size(); ++k) {
                rat want = (zero_index && k == other) ? rat(1) : rat(0);
                if (vec[k] != want) {
                    rep.add("unit", m.basis[other].name,
                            "product with the unit is not the identity");
                    break;
                }
            }
        }
    }
    return rep;
}

/* upward class: index A -> coefficient vector (the q^{-A} part) */
struct quantum_class {
    std::map<expvec, std::vector<rat>> terms;

    bool is_zero() const { return terms.empty(); }
};

/* downward homology class in Poincare-dual coordinates */
struct quantum_homology_class {
    std::map<expvec, std::vector<rat>> terms;

    bool is_zero() const { return terms.empty(); }
};

namespace detail {

inline void qc_accumulate(std::map<expvec, std::vector<rat>>& acc, const expvec& a,
                          std::size_t k, const rat& c, std::size_t dim) {
    if (c == 0) return;
    auto it = acc.find(a);
    if (it == acc.end()) it = acc.emplace(a, std::vector<rat>(dim, rat(0))).first;
    it->second[k] += c;
    for (const auto& v : it->second)
        if (v != 0) return;
    acc.erase(it);
}

} // namespace detail

inline quantum_class qc_add(const cohomology_model& m, const quantum_class& x,
                            const quantum_class& y) {
    quantum_class z = x;
    for (const auto& [a, vec] : y.terms)
        for (std::size_t k = 0; k < vec.size(); ++k)
            detail::qc_accumulate(z.terms, a, k, vec[k], m.basis.size());
    return z;
}

inline quantum_class qc_scale(const cohomology_model&, const rat& c,
                              const quantum_class& x) {
    quantum_class z;
    if (c == 0) return z;
    for (const auto& [a, vec] : x.terms) {
        std::vector<rat> w(vec.size());
        for (std::size_t k = 0; k < vec.size(); ++k) w[k] = c * vec[k];
        z.terms.emplace(a, std::move(w));
    }
    return z;
}

inline quantum_class quantum_product(const cohomology_model& m, const quantum_class& x,
                                     const quantum_class& y) {
    quantum_class z;
    for (const auto& [a, va] : x.terms)
        for (const auto& [b, vb] : y.terms)
            for (const auto& [key, cv] : m.constants) {
                const auto& [i, j, c] = key;
                if (va[i] == 0 || vb[j] == 0) continue;
                expvec idx = exp_add(exp_add(a, b), c);
                rat f = va[i] * vb[j];
                for (std::size_t k = 0; k < cv.size(); ++k)
                    detail::qc_accumulate(z.terms, idx, k, f * cv[k], m.basis.size());
            }
    return z;
}

/* v(a) = min over support of omega(-A); empty sentinel +inf */
inline std::optional<rat> qh_valuation(const cohomology_model& m, const quantum_class& x) {
    std::optional<rat> best;
    for (const auto& [a, vec] : x.terms) {
        rat lv = -m.group.eval_omega(a);
        if (!best || lv < *best) best = lv;
    }
    return best;
}

/* flat and sharp: Poincare duality term by term; in dual coordinates the
 * coefficient data is carried across unchanged and only the side flips */
inline quantum_homology_class flat(const cohomology_model&, const quantum_class& x) {
    return quantum_homology_class{x.terms};
}

inline quantum_class sharp(const cohomology_model&, const quantum_homology_class& x) {
    return quantum_class{x.terms};
}

/* sum over matching indices of the Gram pairing of coefficients */
inline rat pairing_value(const cohomology_model& m, const quantum_class& x,
                         const quantum_homology_class& y) {
    rat s = 0;
    for (const auto& [a, va] : x.terms) {
        auto it = y.terms.find(a);
        if (it == y.terms.end()) continue;
        for (std::size_t i = 0; i < va.size(); ++i) {
            if (va[i] == 0) continue;
            for (std::size_t j = 0; j < it->second.size(); ++j)
                s += va[i] * m.pairing[i][j] * it->second[j];
        }
    }
    return s;
}

/* the Gram matrix restricted to boxed matching indices stays nondegenerate:
 * block diagonal with one pairing block per boxed index */
inline bool pairing_nondegenerate_on_box(const cohomology_model& m, std::int64_t radius) {
    qmatrix p(m.basis.size(), m.basis.size());
    for (std::size_t i = 0; i < m.basis.size(); ++i)
        for (std::size_t j = 0; j < m.basis.size(); ++j) p.at(i, j) = m.pairing[i][j];
    bool block_ok = rank(p) == m.basis.size();
    // every boxed index contributes the same block, so one check suffices;
    // an empty box (rank 0 group) still pairs the single index 0
    (void)radius;
    return block_ok;
}

/* ---- Morse models ---- */

struct morse_point {
    std::string label;
    rat value;      // f(p)
    int index = 0;  // Morse index of p for f
};

struct morse_model {
    std::string name;
    std::vector<morse_point> points;
    /* signed incidence: (source label, target label) -> integer count; a
     * nonzero count needs index_f(target) = index_f(source) + 1 (the
     * complex is graded by the index of -f) */
    std::map<std::pair<std::string, std::string>, std::int64_t> incidence;
};

inline floer_complex quantum_complex_from_morse(const morse_model& mm,
                                                const gamma_group& g, const rat& eps,
                                                int dim2n, int degree_factor,
                                                std::optional<std::int64_t> box_radius) {
    floer_complex cx;
    cx.name = mm.name;
    cx.group = g;
    cx.degree_factor = degree_factor;
    cx.dim2n = dim2n;
    cx.box_radius = box_radius;
    for (const auto& p : mm.points)
        cx.orbits.push_back({p.label, -eps * p.value, dim2n - p.index});

    std::map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < mm.points.size(); ++i) idx.emplace(mm.points[i].label, i);
    for (const auto& [key, n] : mm.incidence) {
        if (n == 0) continue;
        auto si = idx.find(key.first), ti = idx.find(key.second);
        if (si == idx.end() || ti == idx.end())
            fail(errc::unknown_orbit, mm.name + ": incidence names unknown point");
        const auto& sp = mm.points[si->second];
        const auto& tp = mm.points[ti->second];
        if (tp.index != sp.index + 1)
            fail(errc::degree_mismatch,
                 mm.name + ": incidence " + sp.label + " -> " + tp.label
                     + " is not between adjacent indices");
        if (!(tp.value > sp.value))
            fail(errc::action_order_violation,
                 mm.name + ": incidence " + sp.label + " -> " + tp.label
                     + " does not strictly increase f");
        cx.boundary.emplace(std::make_pair(si->second, ti->second),
                            nov_monomial(g, direction::downward, g.zero(), rat(n)));
    }

    /* square-zero over the integers before handing the complex out */
    std::size_t n = mm.points.size();
    std::vector<std::vector<std::int64_t>> d(n, std::vector<std::int64_t>(n, 0));
    for (const auto& [key, c] : mm.incidence)
        d[idx.at(key.second)][idx.at(key.first)] = c;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::int64_t s = 0;
            for (std::size_t k = 0; k < n; ++k) s += d[i][k] * d[k][j];
            if (s != 0)
                fail(errc::morse_boundary_not_square_zero,
                     mm.name + ": incidence does not square to zero at "
                         + mm.points[j].label + " ~> " + mm.points[i].label);
        }
    return cx;
}

/* sum of the top-degree generators with unit caps */
inline novikov_chain fundamental_class(const floer_complex& cx) {
    novikov_chain c;
    for (std::size_t i = 0; i < cx.orbits.size(); ++i)
        if (cx.orbits[i].base_degree == cx.dim2n)
            chain_insert(c, i, nov_one(cx.group, direction::downward));
    return c;
}

/* no boxed boundary image meets the top degree: the fundamental Novikov
 * cycle admits no other representative */
inline bool fundamental_uniqueness_check(const floer_complex& cx) {
    std::int64_t radius = cx.box_radius ? *cx.box_radius : 0;
    for (std::size_t orb = 0; orb < cx.orbits.size(); ++orb)
        for (const auto& a : box_points(cx.group.rank, radius)) {
            if (cx.degree(orb, a) != cx.dim2n + 1) continue;
            for (const auto& [p, c] : boundary_column(cx, {orb, a}))
                if (cx.degree(p.first, p.second) == cx.dim2n) return false;
        }
    return true;
}

/* ---- bounded functionals and the pairing embedding ---- */

struct bounded_functional {
    std::map<cap_pos, rat> values;   // boxed generator -> value
    rat threshold;                   // lambda_mu

    rat value_at(const cap_pos& p) const {
        auto it = values.find(p);
        return it == values.end() ? rat(0) : it->second;
    }
};

/* vanishing at or below the threshold, over the boxed generating set */
struct bounded_check_result {
    bool bounded = true;
    std::string offender_orbit;
    expvec offender_exponent;
};

inline bounded_check_result bounded_check(const floer_complex& cx,
                                          const bounded_functional& mu) {
    std::int64_t radius = cx.box_radius ? *cx.box_radius : 0;
    for (std::size_t orb = 0; orb < cx.orbits.size(); ++orb)
        for (const auto& a : box_points(cx.group.rank, radius)) {
            rat lv = -cx.group.eval_omega(a);
            if (lv <= mu.threshold && mu.value_at({orb, a}) != 0)
                return {false, cx.orbits[orb].label, a};
        }
    return {};
}

/* an upward cochain over the orbit set */
struct cochain {
    std::map<std::size_t, novikov_element> coeffs;   // orbit -> upward element
};

/* sigma: a |-> <a, .>.  With the basis-dual pairing the functional reads
 * off a's own coefficients; the threshold is the largest boxed cap level
 * strictly below the cochain's valuation, which is the tightest value that
 * keeps the vanishing clause exact on the box. */
inline bounded_functional sigma_embed(const floer_complex& cx, const cochain& a) {
    bounded_functional mu;
    std::optional<rat> v;
    for (const auto& [orb, e] : a.coeffs) {
        if (e.dir != direction::upward)
            fail(errc::direction_mismatch, "sigma expects an upward cochain");
        for (const auto& [k, c] : e.terms) {
            mu.values[{orb, k}] = c;
            rat lv = -cx.group.eval_omega(k);
            if (!v || lv < *v) v = lv;
        }
    }
    if (!v) fail(errc::empty_element, "sigma of the zero cochain has no threshold");
    std::int64_t radius = cx.box_radius ? *cx.box_radius : 0;
    std::optional<rat> best;
    for (const auto& a2 : box_points(cx.group.rank, radius)) {
        rat lv = -cx.group.eval_omega(a2);
        if (lv < *v && (!best || lv > *best)) best = lv;
    }
    mu.threshold = best ? *best : *v - 1;
    return mu;
}

/* (boundary* mu)(x) = mu(boundary x) */
inline bounded_functional boundary_dual_apply(const floer_complex& cx,
                                              const bounded_functional& mu) {
    bounded_functional out;
    out.threshold = mu.threshold;
    std::int64_t radius = cx.box_radius ? *cx.box_radius : 0;
    for (std::size_t orb = 0; orb < cx.orbits.size(); ++orb)
        for (const auto& a : box_points(cx.group.rank, radius)) {
            rat s = 0;
            for (const auto& [p, c] : boundary_column(cx, {orb, a}))
                s += c * mu.value_at(p);
            if (s != 0) out.values[{orb, a}] = s;
        }
    return out;
}

/* coboundary matrix adjoint to the boundary through the basis-dual
 * pairing: delta(p, t)[K] must equal boundary(t, p)[-K] */
struct adjointness_report {
    bool ok = true;
    std::string where;
};

inline adjointness_report
cochain_adjointness_check(const floer_complex& cx,
                          const std::map<std::pair<std::size_t, std::size_t>,
                                         novikov_element>& delta) {
    auto entry_term = [](const std::map<std::pair<std::size_t, std::size_t>,
                                        novikov_element>& m,
                         std::size_t i, std::size_t j, const expvec& k) -> rat {
        auto it = m.find({i, j});
        if (it == m.end()) return 0;
        auto t = it->second.terms.find(k);
        return t == it->second.terms.end() ? rat(0) : t->second;
    };
    for (const auto& [key, e] : delta) {
        if (e.dir != direction::upward)
            return {false, "entry " + std::to_string(key.first) + "->"
                               + std::to_string(key.second) + " is not upward"};
        for (const auto& [k, c] : e.terms)
            if (entry_term(cx.boundary, key.second, key.first, exp_neg(k)) != c)
                return {false, cx.orbits[key.first].label + " -> "
                                   + cx.orbits[key.second].label + " at q^-"
                                   + expvec_str(k)};
    }
    for (const auto& [key, e] : cx.boundary)
        for (const auto& [k, c] : e.terms)
            if (entry_term(delta, key.second, key.first, exp_neg(k)) != c)
                return {false, cx.orbits[key.second].label + " -> "
                                   + cx.orbits[key.first].label + " misses q^"
                                   + expvec_str(k)};
    return {};
}

} // namespace quantum
} // namespace floer
