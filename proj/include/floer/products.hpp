#pragma once

/* Pants products as authored bilinear data: a table of chains indexed by
 * generator pairs, extended to whole chains by ring bilinearity (caps add
 * because the coefficient elements multiply).  Validation localizes three
 * contracts per table entry: the grading sum, the level contract with the
 * declared tolerance, and the Leibniz rule against both boundaries.
 *
 * The tensor builder manufactures product instances that satisfy all three
 * contracts on the nose; randomized suites perturb those to exercise the
 * failure localization.
 */

#include "spectral.hpp"

namespace floer {
inline namespace products {

struct pants_product_data {
    std::string name;
    std::string source_a, source_b, target;   // complex names
    rat tolerance;                             // lambda in the level contract
    /* (orbit index in source_a, orbit index in source_b) -> target chain */
    std::map<std::pair<std::size_t, std::size_t>, novikov_chain> constants;
};

inline novikov_chain product_apply(const pants_product_data& prod,
                                   const novikov_chain& x, const novikov_chain& y) {
    novikov_chain out;
    for (const auto& [i, ei] : x.coeffs)
        for (const auto& [j, ej] : y.coeffs) {
            auto it = prod.constants.find({i, j});
            if (it == prod.constants.end()) continue;
            out = chain_add(out, chain_scale_nov(nov_mul(ei, ej), it->second));
        }
    return out;
}

inline validation_report validate_product(const floer_complex& ca, const floer_complex& cb,
                                          const floer_complex& ct,
                                          const pants_product_data& prod) {
    validation_report rep;
    auto table_chain = [&](std::size_t i, std::size_t j) {
        auto it = prod.constants.find({i, j});
        return it == prod.constants.end() ? novikov_chain{} : it->second;
    };
    for (const auto& [key, chain] : prod.constants) {
        auto [i, j] = key;
        if (i >= ca.orbits.size() || j >= cb.orbits.size()) {
            rep.add("constants", prod.name, "pair index outside the source complexes");
            continue;
        }
        std::string where = ca.orbits[i].label + " * " + cb.orbits[j].label;
        int want_degree = ca.orbits[i].base_degree + cb.orbits[j].base_degree;
        rat level_cap = ca.orbits[i].base_action + cb.orbits[j].base_action
                      + prod.tolerance;
        for (const auto& [t, e] : chain.coeffs) {
            if (t >= ct.orbits.size()) {
                rep.add("constants", where, "target orbit index out of range");
                continue;
            }
            if (e.dir != direction::downward) {
                rep.add("constants", where, "target coefficient is not downward");
                continue;
            }
            for (const auto& [k, c] : e.terms) {
                (void)c;
                if (ct.degree(t, k) != want_degree)
                    rep.add("grading", where,
                            "term at " + ct.orbits[t].label + " q^" + expvec_str(k)
                                + " has degree " + std::to_string(ct.degree(t, k))
                                + ", expected " + std::to_string(want_degree));
                if (ct.action(t, k) > level_cap)
                    rep.add("level", where,
                            "term at " + ct.orbits[t].label + " q^" + expvec_str(k)
                                + " has action " + rat_str(ct.action(t, k))
                                + " above the contract bound " + rat_str(level_cap));
            }
        }
    }

    /* Leibniz needs every table cell to be a well-formed chain (valid
     * indices, downward coefficients), because the product rule for one
     * pair consults the cells of its boundary neighbours; with structural
     * findings present the rule is not evaluable */
    for (const auto& f : rep.findings)
        if (f.check == "constants") return rep;

    for (const auto& [key, chain] : prod.constants) {
        auto [i, j] = key;
        std::string where = ca.orbits[i].label + " * " + cb.orbits[j].label;
        /* Leibniz on the generator pair: d(x*y) = dx*y + (-1)^{deg x} x*dy */
        novikov_chain lhs = boundary_apply(ct, chain);
        novikov_chain rhs;
        for (const auto& [bk, e] : ca.boundary)
            if (bk.first == i)
                rhs = chain_add(rhs, chain_scale_nov(e, table_chain(bk.second, j)));
        rat sign = ca.orbits[i].base_degree % 2 == 0 ? rat(1) : rat(-1);
        for (const auto& [bk, e] : cb.boundary)
            if (bk.first == j)
                rhs = chain_add(rhs,
                                chain_scale(sign, chain_scale_nov(e, table_chain(i, bk.second))));
        if (!chain_eq(lhs, rhs))
            rep.add("leibniz", where, "boundary of the product differs from the product rule");
    }
    return rep;
}

struct triangle_report {
    std::optional<rat> rho_a, rho_b, rho_product;
    rat tolerance;
    bool ok = false;
};

inline triangle_report triangle_check(const floer_complex& ca, const floer_complex& cb,
                                      const floer_complex& ct,
                                      const pants_product_data& prod,
                                      const novikov_chain& x, const novikov_chain& y) {
    triangle_report out;
    out.tolerance = prod.tolerance;
    out.rho_a = spectral_number(ca, x).rho;
    out.rho_b = spectral_number(cb, y).rho;
    novikov_chain p = product_apply(prod, x, y);
    out.rho_product = spectral_number(ct, p).rho;
    if (!out.rho_product)
        out.ok = true;   // the product class is a boundary-free zero: vacuous bound
    else
        out.ok = out.rho_a && out.rho_b
                 && *out.rho_product <= *out.rho_a + *out.rho_b + prod.tolerance;
    return out;
}

/* ---- tensor instances: products that satisfy every contract exactly ---- */

struct tensor_instance {
    floer_complex target;
    pants_product_data product;
};

inline tensor_instance tensor_product_instance(const floer_complex& ca,
                                               const floer_complex& cb,
                                               const std::string& name) {
    require_same_group(ca.group, cb.group);
    tensor_instance out;
    floer_complex& t = out.target;
    t.name = name;
    t.group = ca.group;
    t.degree_factor = ca.degree_factor;
    t.dim2n = ca.dim2n + cb.dim2n;
    if (ca.box_radius && cb.box_radius)
        t.box_radius = std::min(*ca.box_radius, *cb.box_radius);
    else
        t.box_radius = ca.box_radius ? ca.box_radius : cb.box_radius;

    auto pair_index = [&](std::size_t i, std::size_t j) {
        return i * cb.orbits.size() + j;
    };
    for (const auto& oa : ca.orbits)
        for (const auto& ob : cb.orbits)
            t.orbits.push_back({oa.label + "*" + ob.label,
                                oa.base_action + ob.base_action,
                                oa.base_degree + ob.base_degree});
    for (const auto& [bk, e] : ca.boundary)
        for (std::size_t j = 0; j < cb.orbits.size(); ++j)
            t.boundary.emplace(std::make_pair(pair_index(bk.first, j),
                                              pair_index(bk.second, j)),
                               e);
    for (const auto& [bk, e] : cb.boundary)
        for (std::size_t i = 0; i < ca.orbits.size(); ++i) {
            rat sign = ca.orbits[i].base_degree % 2 == 0 ? rat(1) : rat(-1);
            t.boundary.emplace(std::make_pair(pair_index(i, bk.first),
                                              pair_index(i, bk.second)),
                               nov_scale(sign, e));
        }

    pants_product_data& p = out.product;
    p.name = name + ".product";
    p.source_a = ca.name;
    p.source_b = cb.name;
    p.target = name;
    p.tolerance = 0;
    for (std::size_t i = 0; i < ca.orbits.size(); ++i)
        for (std::size_t j = 0; j < cb.orbits.size(); ++j) {
            novikov_chain c;
            chain_insert(c, pair_index(i, j), nov_one(t.group, direction::downward));
            p.constants.emplace(std::make_pair(i, j), std::move(c));
        }
    return out;
}

} // namespace products
} // namespace floer
