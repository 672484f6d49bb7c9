#pragma once

/* Task dispatch over a loaded document.  Every task produces a report whose
 * bytes are a pure function of (document, task, seed); check failures mark
 * the report failed (exit 1), malformed requests and engine errors throw
 * (exit 2).
 */

#include "io.hpp"
#include "report.hpp"

namespace floer {
inline namespace cli_io {

namespace detail {

inline std::string opt_rat_str(const std::optional<rat>& x) {
    return x ? rat_str(*x) : "-infinity";
}

inline std::string pos_str(const floer_complex& cx, const cap_pos& p) {
    return cx.orbits[p.first].label + " q" + expvec_str(p.second);
}

inline void report_validation(task_report& rep, const std::string& kind,
                              const std::string& name, const validation_report& vr) {
    if (vr.ok) {
        rep.pass(kind, name);
        return;
    }
    for (const auto& f : vr.findings)
        rep.fail(kind + "." + f.check, name + " at " + f.where, f.detail);
}

/* classes declared on a complex, in document order */
inline std::vector<const class_decl*> classes_on(const document& doc,
                                                 const std::string& cx_name) {
    std::vector<const class_decl*> out;
    for (const auto& c : doc.classes)
        if (c.complex == cx_name) out.push_back(&c);
    return out;
}

inline void check_spectrality(task_report& rep, const floer_complex& cx,
                              const std::string& subject, const std::optional<rat>& rho) {
    if (!rho) {
        rep.skip("spectrality", subject, "class reduces to a boundary-free zero");
        return;
    }
    auto sr = spectrality_check(cx, *rho);
    if (sr.member)
        rep.pass("spectrality", subject,
                 "rho = " + rat_str(*rho) + " = action(" + sr.orbit + ") - omega"
                     + expvec_str(sr.exponent));
    else
        rep.fail("spectrality", subject,
                 "rho = " + rat_str(*rho) + " is outside the action spectrum");
}

inline bool boundary_preserves_caps(const floer_complex& cx) {
    for (const auto& [key, e] : cx.boundary)
        for (const auto& [a, c] : e.terms)
            if (!exp_is_zero(a)) return false;
    return true;
}

} // namespace detail

/* ---- individual tasks ---- */

inline void task_validate(const document& doc, task_report& rep) {
    if (doc.has_group) {
        try {
            validate_group(doc.group);
            rep.pass("group", "coefficient group");
        } catch (const error& e) {
            rep.fail("group", "coefficient group", e.what());
        }
    }
    for (const auto& m : doc.models)
        detail::report_validation(rep, "model", m.name, validate_model(m));
    for (const auto& cd : doc.complexes)
        detail::report_validation(rep, "complex", cd.cx.name, validate_complex(cd.cx));
    for (const auto& m : doc.maps)
        detail::report_validation(rep, "map", m.name,
                                  validate_chain_map(doc.find_complex(m.source),
                                                     doc.find_complex(m.target), m));
    for (const auto& p : doc.products)
        detail::report_validation(rep, "product", p.data.name,
                                  validate_product(doc.find_complex(p.data.source_a),
                                                   doc.find_complex(p.data.source_b),
                                                   doc.find_complex(p.data.target),
                                                   p.data));
    for (const auto& h : doc.hamiltonians) {
        detail::report_validation(rep, "hamiltonian", h.h.name, validate_hamiltonian(h.h));
        if (h.flow) {
            try {
                require_transport(*h.flow, h.h.time_steps + 1, h.h.points.size(), h.h.name);
                rep.pass("hamiltonian.flow", h.h.name);
            } catch (const error& e) {
                rep.fail("hamiltonian.flow", h.h.name, e.what());
            }
        }
    }
    for (const auto& f : doc.functionals) {
        const floer_complex& cx = doc.find_complex(f.complex);
        auto bc = bounded_check(cx, f.mu);
        if (bc.bounded)
            rep.pass("functional", f.name);
        else
            rep.fail("functional", f.name,
                     "nonzero value at " + detail::pos_str(cx, {cx.require_orbit(
                                               bc.offender_orbit),
                                                               bc.offender_exponent})
                         + " at or below the threshold " + rat_str(f.mu.threshold));
    }
    for (const auto& c : doc.comatrices) {
        const floer_complex& cx = doc.find_complex(c.complex);
        auto ar = cochain_adjointness_check(cx, c.delta);
        if (ar.ok)
            rep.pass("comatrix", c.name);
        else
            rep.fail("comatrix", c.name, "adjointness fails at " + ar.where);
    }
}

inline void task_spectral(const document& doc, const std::string& class_name,
                          task_report& rep) {
    const class_decl& cd = doc.find_class(class_name);
    const floer_complex& cx = doc.find_complex(cd.complex);
    auto res = spectral_number(cx, cd.chain);
    rep.value("rho", detail::opt_rat_str(res.rho));
    if (res.rho) {
        rep.value("witness", chain_str(cx, res.witness));
        rep.value("witness.top", res.witness_orbit + " q" + expvec_str(res.witness_exponent));
        rep.value("exactness", res.upper_bound_only
                                   ? "upper bound only (a cancelling cap leaves the box)"
                                   : "exact within the box");
    }
    detail::check_spectrality(rep, cx, class_name, res.rho);
}

inline void task_spectrum(const document& doc, const std::string& cx_name,
                          task_report& rep) {
    const floer_complex& cx = doc.find_complex(cx_name);
    auto sp = spectrum_presentation(cx);
    std::string base;
    for (std::size_t i = 0; i < sp.base_actions.size(); ++i) {
        if (i) base += " ";
        base += rat_str(sp.base_actions[i]);
    }
    rep.value("base-actions", base);
    rep.value("lattice-generator", rat_str(sp.generator));
    rep.value("presentation",
              "{ base - " + rat_str(sp.generator) + " * Z }");
}

inline void task_windowed_homology(const document& doc, const std::string& cx_name,
                                   const rat& lo, const rat& hi, int k,
                                   task_report& rep) {
    const floer_complex& cx = doc.find_complex(cx_name);
    auto wh = windowed_homology(cx, lo, hi, k);
    rep.value("dimension", std::to_string(wh.dimension));
    for (std::size_t i = 0; i < wh.basis.size(); ++i)
        rep.value("basis." + std::to_string(i), chain_str(cx, wh.basis[i]));
}

inline void task_triangle(const document& doc, const std::string& product_name,
                          const std::string& class_a, const std::string& class_b,
                          task_report& rep) {
    const product_decl& pd = doc.find_product(product_name);
    const floer_complex& ca = doc.find_complex(pd.data.source_a);
    const floer_complex& cb = doc.find_complex(pd.data.source_b);
    const floer_complex& ct = doc.find_complex(pd.data.target);
    detail::report_validation(rep, "product", pd.data.name,
                              validate_product(ca, cb, ct, pd.data));
    if (rep.failed) return;
    const class_decl& a = doc.find_class(class_a);
    const class_decl& b = doc.find_class(class_b);
    if (a.complex != pd.data.source_a || b.complex != pd.data.source_b)
        fail(errc::bad_argument, "classes do not live on the product's source complexes");
    auto tr = triangle_check(ca, cb, ct, pd.data, a.chain, b.chain);
    rep.value("rho.a", detail::opt_rat_str(tr.rho_a));
    rep.value("rho.b", detail::opt_rat_str(tr.rho_b));
    rep.value("rho.product", detail::opt_rat_str(tr.rho_product));
    rep.value("tolerance", rat_str(tr.tolerance));
    if (tr.ok)
        rep.pass("triangle", product_name,
                 "rho(a*b) <= rho(a) + rho(b) + tolerance");
    else
        rep.fail("triangle", product_name,
                 "rho(a*b) exceeds rho(a) + rho(b) + tolerance");
    detail::check_spectrality(rep, ca, class_a, tr.rho_a);
    detail::check_spectrality(rep, cb, class_b, tr.rho_b);
    detail::check_spectrality(rep, ct, product_name, tr.rho_product);
}

inline void task_gamma(const document& doc, const std::vector<std::string>& cx_names,
                       task_report& rep) {
    if (cx_names.empty()) fail(errc::empty_lift_list, "gamma needs at least one complex");
    std::vector<rat> tildes;
    for (const auto& n : cx_names) {
        const floer_complex& cx = doc.find_complex(n);
        novikov_chain fund = fundamental_class(cx);
        if (fund.coeffs.empty()) {
            rep.fail("gamma", n, "no top-degree generators: fundamental class is zero");
            continue;
        }
        auto fwd = spectral_number(cx, fund);
        floer_complex rev = time_reversal(cx);
        novikov_chain fund_rev = fundamental_class(rev);
        if (fund_rev.coeffs.empty()) {
            rep.fail("gamma", n, "reversal has no top-degree generators");
            continue;
        }
        auto bwd = spectral_number(rev, fund_rev);
        if (!fwd.rho || !bwd.rho) {
            rep.fail("gamma", n, "a fundamental class reduces to zero");
            continue;
        }
        rat tilde = gamma_tilde(*fwd.rho, *bwd.rho);
        rep.value("rho." + n, rat_str(*fwd.rho));
        rep.value("rho." + n + "~", rat_str(*bwd.rho));
        rep.value("gamma~." + n, rat_str(tilde));
        detail::check_spectrality(rep, cx, n, fwd.rho);
        detail::check_spectrality(rep, rev, n + "~", bwd.rho);
        tildes.push_back(tilde);
    }
    if (!tildes.empty()) {
        rep.value("gamma", rat_str(gamma_over_lifts(tildes)));
        rep.value("gamma.note", "upper bound over supplied representatives");
    }
}

inline void task_hofer(const document& doc, const std::string& h_name, task_report& rep) {
    const hamiltonian_decl& hd = doc.find_hamiltonian(h_name);
    detail::report_validation(rep, "hamiltonian", h_name, validate_hamiltonian(hd.h));
    if (rep.failed) return;
    auto q = hofer_quantities(hd.h);
    rep.value("hofer", rat_str(q.hofer_norm));
    rep.value("e.plus", rat_str(q.e_plus));
    rep.value("e.minus", rat_str(q.e_minus));
    if (q.e_plus + q.e_minus == q.hofer_norm && q.hofer_norm >= 0)
        rep.pass("energy-split", h_name, "0 <= e.plus + e.minus = hofer");
    else
        rep.fail("energy-split", h_name, "one-sided energies do not split the norm");
}

/* the axioms bundle: every spectral-invariant property the document's data
 * can exercise for one complex */
inline void task_axioms(const document& doc, const std::string& cx_name,
                        task_report& rep) {
    const floer_complex& cx = doc.find_complex(cx_name);
    auto classes = detail::classes_on(doc, cx_name);

    /* structural validity first: nothing downstream means much without it */
    detail::report_validation(rep, "structure", cx_name, validate_complex(cx));

    /* (1) spectrality of every class */
    if (classes.empty()) rep.skip("spectrality", cx_name, "no classes declared");
    std::map<std::string, std::optional<rat>> rho_of;
    for (const auto* c : classes) {
        auto res = spectral_number(cx, c->chain);
        rho_of[c->name] = res.rho;
        rep.value("rho." + c->name, detail::opt_rat_str(res.rho));
        detail::check_spectrality(rep, cx, c->name, res.rho);
    }

    /* (2) normalization against the generating Morse data */
    if (const morse_decl* md = doc.find_morse_for(cx_name)) {
        rat fmin = md->model.points.front().value;
        for (const auto& p : md->model.points) fmin = std::min(fmin, p.value);
        rat expect = -md->eps * fmin;
        auto it = rho_of.find(cx_name + ".fund");
        if (it == rho_of.end() || !it->second)
            rep.fail("normalization", cx_name, "fundamental class has no finite rho");
        else if (*it->second == expect)
            rep.pass("normalization", cx_name,
                     "rho(fund) = " + rat_str(expect) + " = -eps * min f");
        else
            rep.fail("normalization", cx_name,
                     "rho(fund) = " + rat_str(*it->second) + ", expected " + rat_str(expect));
    } else {
        rep.skip("normalization", cx_name, "complex is not generated from Morse data");
    }

    /* (3) continuity windows from declared pair sections */
    bool any_pair = false;
    for (const auto& p : doc.pairs) {
        if (p.source != cx_name) continue;
        any_pair = true;
        try {
            auto cr = continuity_check(cx, doc.find_class(p.class_name).chain,
                                       doc.find_complex(p.target), doc.find_map(p.forward),
                                       doc.find_map(p.backward));
            if (cr.ok)
                rep.pass("continuity", p.name,
                         rat_str(cr.s_minus) + " <= " + rat_str(cr.rho_tgt - cr.rho_src)
                             + " <= " + rat_str(cr.s_plus));
            else
                rep.fail("continuity", p.name,
                         "rho difference " + rat_str(cr.rho_tgt - cr.rho_src)
                             + " leaves the declared window");
        } catch (const error& e) {
            rep.fail("continuity", p.name, e.what());
        }
    }
    if (!any_pair) rep.skip("continuity", cx_name, "no continuity pairs declared");

    /* (4)+(5) loop actions: conjugation invariance at shift 0, uniform
     * monodromy shift otherwise, with additivity when iterable */
    bool any_loop = false;
    for (const auto& l : doc.loops) {
        if (l.complex != cx_name) continue;
        any_loop = true;
        const char* check = l.shift == 0 ? "conjugation" : "monodromy-shift";
        try {
            auto la = apply_loop_action(cx, l.shift, l.relabel);
            for (const auto* c : classes) {
                auto before = rho_of.at(c->name);
                auto after =
                    spectral_number(la.complex, transport_chain(la, cx.group, c->chain)).rho;
                bool ok = (!before && !after)
                       || (before && after && *after == *before + l.shift);
                if (ok)
                    rep.pass(check, l.name + " on " + c->name,
                             "rho shifts by exactly " + rat_str(l.shift));
                else
                    rep.fail(check, l.name + " on " + c->name,
                             "rho(" + detail::opt_rat_str(before) + ") -> rho("
                                 + detail::opt_rat_str(after) + "), expected shift "
                                 + rat_str(l.shift));
            }
            bool relabels_identically = true;
            for (const auto& r : l.relabel)
                if (r.source != r.target) relabels_identically = false;
            if (l.shift != 0 && relabels_identically && !classes.empty()) {
                auto la2 = apply_loop_action(la.complex, l.shift, l.relabel);
                const auto* c = classes.front();
                auto twice = spectral_number(
                    la2.complex,
                    transport_chain(la2, cx.group, transport_chain(la, cx.group, c->chain)));
                auto before = rho_of.at(c->name);
                bool ok = before && twice.rho && *twice.rho == *before + 2 * l.shift;
                if (ok)
                    rep.pass("monodromy-additivity", l.name,
                             "double application shifts rho by " + rat_str(2 * l.shift));
                else
                    rep.fail("monodromy-additivity", l.name,
                             "double application does not shift rho by "
                                 + rat_str(2 * l.shift));
            }
        } catch (const error& e) {
            rep.fail(check, l.name, e.what());
        }
    }
    if (!any_loop) rep.skip("monodromy-shift", cx_name, "no loops declared");

    /* (6) triangle inequality over declared products touching this complex */
    bool any_triangle = false;
    for (const auto& pd : doc.products) {
        const pants_product_data& p = pd.data;
        if (p.source_a != cx_name && p.source_b != cx_name && p.target != cx_name)
            continue;
        const floer_complex& ca = doc.find_complex(p.source_a);
        const floer_complex& cb = doc.find_complex(p.source_b);
        const floer_complex& ct = doc.find_complex(p.target);
        auto vr = validate_product(ca, cb, ct, p);
        if (!vr.ok) {
            detail::report_validation(rep, "product", p.name, vr);
            continue;
        }
        for (const auto* a : detail::classes_on(doc, p.source_a))
            for (const auto* b : detail::classes_on(doc, p.source_b)) {
                any_triangle = true;
                auto tr = triangle_check(ca, cb, ct, p, a->chain, b->chain);
                std::string subject = p.name + ": " + a->name + " * " + b->name;
                if (tr.ok)
                    rep.pass("triangle", subject,
                             "rho(" + detail::opt_rat_str(tr.rho_product) + ") <= "
                                 + detail::opt_rat_str(tr.rho_a) + " + "
                                 + detail::opt_rat_str(tr.rho_b) + " + "
                                 + rat_str(tr.tolerance));
                else
                    rep.fail("triangle", subject, "level contract violated at rho level");
            }
    }
    if (!any_triangle) rep.skip("triangle", cx_name, "no products with classes declared");

    /* (7) bounded functionals, the sigma embedding, and dual boundedness */
    bool any_dual = false;
    for (const auto& f : doc.functionals) {
        if (f.complex != cx_name) continue;
        any_dual = true;
        auto bc = bounded_check(cx, f.mu);
        if (bc.bounded)
            rep.pass("bounded", f.name,
                     "vanishes at levels <= " + rat_str(f.mu.threshold));
        else
            rep.fail("bounded", f.name,
                     "nonzero below the threshold at " + bc.offender_orbit + " q"
                         + expvec_str(bc.offender_exponent));
        if (detail::boundary_preserves_caps(cx)) {
            auto dual = boundary_dual_apply(cx, f.mu);
            auto bc2 = bounded_check(cx, dual);
            if (bc2.bounded)
                rep.pass("bounded-dual", f.name, "boundary-dual keeps the threshold");
            else
                rep.fail("bounded-dual", f.name,
                         "boundary-dual violates the threshold at " + bc2.offender_orbit
                             + " q" + expvec_str(bc2.offender_exponent));
        } else {
            rep.skip("bounded-dual", f.name, "boundary does not preserve caps");
        }
    }
    for (const auto& c : doc.cochains) {
        if (c.complex != cx_name) continue;
        any_dual = true;
        try {
            auto mu = sigma_embed(cx, c.a);
            auto bc = bounded_check(cx, mu);
            if (bc.bounded)
                rep.pass("sigma", c.name,
                         "sigma image is bounded with threshold " + rat_str(mu.threshold));
            else
                rep.fail("sigma", c.name, "sigma image violates its own threshold");
        } catch (const error& e) {
            rep.fail("sigma", c.name, e.what());
        }
    }
    for (const auto& c : doc.comatrices) {
        if (c.complex != cx_name) continue;
        any_dual = true;
        auto ar = cochain_adjointness_check(cx, c.delta);
        if (ar.ok)
            rep.pass("sigma-chain-map", c.name,
                     "declared coboundary is adjoint to the boundary");
        else
            rep.fail("sigma-chain-map", c.name, "adjointness fails at " + ar.where);
    }
    if (!any_dual) rep.skip("bounded", cx_name, "no dual-side data declared");
}

/* ---- dispatch ---- */

struct run_options {
    std::uint64_t seed = 0;
    std::optional<std::int64_t> box;
    std::optional<int> degree_factor;
};

inline task_report run_task(document doc, const std::vector<std::string>& args,
                            const std::string& document_path, const run_options& opt) {
    if (args.empty()) fail(errc::unknown_task, "no task given");
    apply_overrides(doc, opt.box, opt.degree_factor);
    task_report rep;
    rep.document_path = document_path;
    rep.seed = opt.seed;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) rep.task += " ";
        rep.task += args[i];
    }
    const std::string& t = args[0];
    auto want = [&](std::size_t n, const char* usage) {
        if (args.size() != n + 1)
            fail(errc::bad_argument, std::string("usage: ") + usage);
    };
    if (t == "validate") {
        want(0, "validate");
        task_validate(doc, rep);
    } else if (t == "spectral") {
        want(1, "spectral <class>");
        task_spectral(doc, args[1], rep);
    } else if (t == "spectrum") {
        want(1, "spectrum <complex>");
        task_spectrum(doc, args[1], rep);
    } else if (t == "axioms") {
        want(1, "axioms <complex>");
        task_axioms(doc, args[1], rep);
    } else if (t == "triangle") {
        want(3, "triangle <product> <classA> <classB>");
        task_triangle(doc, args[1], args[2], args[3], rep);
    } else if (t == "gamma") {
        if (args.size() < 2) fail(errc::empty_lift_list, "usage: gamma <complex> [...]");
        task_gamma(doc, {args.begin() + 1, args.end()}, rep);
    } else if (t == "hofer") {
        want(1, "hofer <hamiltonian>");
        task_hofer(doc, args[1], rep);
    } else if (t == "windowed-homology") {
        want(4, "windowed-homology <complex> <lo> <hi> <k>");
        rat lo = parse_rat(args[2]);
        rat hi = parse_rat(args[3]);
        int k = 0;
        try {
            std::size_t used = 0;
            k = std::stoi(args[4], &used);
            if (used != args[4].size()) throw std::invalid_argument(args[4]);
        } catch (const std::exception&) {
            fail(errc::bad_argument, "degree must be an integer, got '" + args[4] + "'");
        }
        task_windowed_homology(doc, args[1], lo, hi, k, rep);
    } else {
        fail(errc::unknown_task, "'" + t + "' is not a task");
    }
    return rep;
}

} // namespace cli_io
} // namespace floer
