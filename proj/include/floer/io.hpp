#pragma once

/* Workspace documents: one text file holds a coefficient group and any
 * number of named models, complexes, classes, maps, continuity pairs,
 * loops, products, Hamiltonians, functionals, cochains, coboundary
 * matrices, and task lines.
 *
 * The grammar is line-agnostic (tokens only; '#' starts a comment) with a
 * fixed field order inside every section, and the writer emits exactly that
 * order, so save(load(text)) reproduces canonical documents byte for byte.
 * Rationals are always written "num/den"; decimal notation is rejected.
 * The full grammar lives in docs/format.md.
 *
 * Sections generated from others (a morse section materializes a complex
 * and its fundamental class) are flagged derived and never re-emitted.
 */

#include "norms.hpp"
#include "products.hpp"
#include "quantum.hpp"

#include <fstream>
#include <sstream>

namespace floer {
inline namespace cli_io {

struct morse_decl {
    std::string name;
    morse_model model;
    std::string complex_name;
    rat eps;
    int dim2n = 0;
    int degree_factor = 2;
    std::optional<std::int64_t> box;
};

struct complex_decl {
    floer_complex cx;
    bool derived = false;
    std::string derived_from;   // morse section name when derived
};

struct class_decl {
    std::string name;
    std::string complex;
    novikov_chain chain;
    bool derived = false;
};

struct pair_decl {
    std::string name;
    std::string source, target, class_name, forward, backward;
};

struct loop_decl {
    std::string name;
    std::string complex;
    rat shift;
    std::vector<loop_relabel_entry> relabel;
};

struct product_decl {
    pants_product_data data;   // carries its own name
};

struct hamiltonian_decl {
    sampled_hamiltonian h;     // carries its own name
    std::optional<point_transport> flow;
};

struct functional_decl {
    std::string name;
    std::string complex;
    bounded_functional mu;
};

struct cochain_decl {
    std::string name;
    std::string complex;
    cochain a;
};

struct comatrix_decl {
    std::string name;
    std::string complex;
    std::map<std::pair<std::size_t, std::size_t>, novikov_element> delta;
};

struct document {
    bool has_group = false;
    gamma_group group;
    std::vector<cohomology_model> models;
    std::vector<morse_decl> morse;
    std::vector<complex_decl> complexes;
    std::vector<class_decl> classes;
    std::vector<chain_map_data> maps;
    std::vector<pair_decl> pairs;
    std::vector<loop_decl> loops;
    std::vector<product_decl> products;
    std::vector<hamiltonian_decl> hamiltonians;
    std::vector<functional_decl> functionals;
    std::vector<cochain_decl> cochains;
    std::vector<comatrix_decl> comatrices;
    std::vector<std::vector<std::string>> tasks;

    const floer_complex& find_complex(const std::string& n) const {
        for (const auto& c : complexes)
            if (c.cx.name == n) return c.cx;
        fail(errc::dangling_reference, "complex '" + n + "' is not defined");
    }
    const class_decl& find_class(const std::string& n) const {
        for (const auto& c : classes)
            if (c.name == n) return c;
        fail(errc::dangling_reference, "class '" + n + "' is not defined");
    }
    const chain_map_data& find_map(const std::string& n) const {
        for (const auto& m : maps)
            if (m.name == n) return m;
        fail(errc::dangling_reference, "map '" + n + "' is not defined");
    }
    const product_decl& find_product(const std::string& n) const {
        for (const auto& p : products)
            if (p.data.name == n) return p;
        fail(errc::dangling_reference, "product '" + n + "' is not defined");
    }
    const hamiltonian_decl& find_hamiltonian(const std::string& n) const {
        for (const auto& h : hamiltonians)
            if (h.h.name == n) return h;
        fail(errc::dangling_reference, "hamiltonian '" + n + "' is not defined");
    }
    const morse_decl* find_morse_for(const std::string& complex_name) const {
        for (const auto& m : morse)
            if (m.complex_name == complex_name) return &m;
        return nullptr;
    }
};

/* ---- tokenizer ---- */

namespace detail {

struct token {
    enum kind_t { word, punct, eof } kind = eof;
    std::string text;
    int line = 0, col = 0;
};

inline bool is_punct_char(char c) {
    return c == '{' || c == '}' || c == '[' || c == ']' || c == ':' || c == ';'
        || c == '*' || c == '+';
}

inline std::vector<token> tokenize(const std::string& text) {
    std::vector<token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (text[i + k] == '\n') { ++line; col = 1; }
            else ++col;
        }
        i += n;
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') { advance(1); continue; }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        if (is_punct_char(c)) {
            out.push_back({token::punct, std::string(1, c), line, col});
            advance(1);
            continue;
        }
        if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            out.push_back({token::punct, "->", line, col});
            advance(2);
            continue;
        }
        int sl = line, sc = col;
        std::string w;
        while (i < text.size()) {
            char d = text[i];
            if (d == ' ' || d == '\t' || d == '\r' || d == '\n' || d == '#'
                || is_punct_char(d))
                break;
            if (d == '-' && i + 1 < text.size() && text[i + 1] == '>') break;
            w += d;
            advance(1);
        }
        out.push_back({token::word, std::move(w), sl, sc});
    }
    out.push_back({token::eof, "", line, col});
    return out;
}

struct parser {
    std::vector<token> toks;
    std::size_t pos = 0;

    const token& peek() const { return toks[pos]; }
    token next() { return toks[pos + 1 < toks.size() ? pos++ : pos]; }

    [[noreturn]] void err(const token& t, const std::string& msg) const {
        fail(errc::parse_error,
             "line " + std::to_string(t.line) + " col " + std::to_string(t.col) + ": "
                 + msg);
    }

    bool at_punct(const char* p) const {
        return peek().kind == token::punct && peek().text == p;
    }
    void expect_punct(const char* p) {
        if (!at_punct(p)) err(peek(), std::string("expected '") + p + "'");
        next();
    }
    bool at_word(const char* w) const {
        return peek().kind == token::word && peek().text == w;
    }
    bool eat_word(const char* w) {
        if (!at_word(w)) return false;
        next();
        return true;
    }
    void expect_word(const char* w) {
        if (!eat_word(w)) err(peek(), std::string("expected '") + w + "'");
    }
    std::string name(const char* what) {
        if (peek().kind != token::word) err(peek(), std::string("expected ") + what);
        return next().text;
    }
    std::int64_t integer(const char* what) {
        const token& t = peek();
        std::string w = name(what);
        try {
            std::size_t used = 0;
            long long v = std::stoll(w, &used);
            if (used != w.size()) throw std::invalid_argument(w);
            return v;
        } catch (const std::exception&) {
            err(t, std::string("expected integer ") + what + ", got '" + w + "'");
        }
    }
    rat rational(const char* what) {
        const token& t = peek();
        std::string w = name(what);
        if (w.find('.') != std::string::npos)
            err(t, std::string("decimal notation is not accepted for ") + what);
        try {
            return parse_rat(w);
        } catch (const error&) {
            err(t, std::string("expected rational ") + what + ", got '" + w + "'");
        }
    }
    bool boolean(const char* what) {
        const token& t = peek();
        std::string w = name(what);
        if (w == "true") return true;
        if (w == "false") return false;
        err(t, std::string("expected true/false ") + what + ", got '" + w + "'");
    }
    expvec exponent(std::size_t rank) {
        const token& open = peek();
        expect_punct("[");
        expvec a;
        while (!at_punct("]")) a.push_back(integer("exponent entry"));
        expect_punct("]");
        if (a.size() != rank)
            err(open, "exponent has " + std::to_string(a.size()) + " entries, group rank is "
                          + std::to_string(rank));
        return a;
    }
    novikov_element element(const gamma_group& g, direction d) {
        novikov_element e = nov_zero(g, d);
        while (true) {
            rat c = rational("coefficient");
            expect_word("q");
            expvec a = exponent(g.rank);
            e = nov_add(e, nov_monomial(g, d, a, c));
            if (!at_punct("+")) break;
            next();
        }
        return e;
    }
};

inline std::size_t orbit_of(parser& ps, const token& t, const floer_complex& cx,
                            const std::string& label) {
    auto i = cx.orbit_index(label);
    if (!i) ps.err(t, "orbit '" + label + "' is not defined in complex '" + cx.name + "'");
    return *i;
}

} // namespace detail

/* ---- parsing ---- */

inline document parse_document(const std::string& text) {
    using detail::token;
    detail::parser ps{detail::tokenize(text)};
    document doc;

    auto require_group = [&](const token& t) {
        if (!doc.has_group)
            ps.err(t, "a group section must precede everything else");
    };
    auto check_fresh = [&](const token& t, const std::string& kind, const std::string& n) {
        auto dup = [&](bool hit) {
            if (hit)
                fail(errc::duplicate_label,
                     "line " + std::to_string(t.line) + ": " + kind + " '" + n
                         + "' is defined twice");
        };
        for (const auto& m : doc.models) dup(m.name == n && kind == "model");
        for (const auto& m : doc.morse) dup(m.name == n && kind == "morse");
        for (const auto& c : doc.complexes) dup(c.cx.name == n && kind == "complex");
        for (const auto& c : doc.classes) dup(c.name == n && kind == "class");
        for (const auto& m : doc.maps) dup(m.name == n && kind == "map");
        for (const auto& p : doc.pairs) dup(p.name == n && kind == "pair");
        for (const auto& l : doc.loops) dup(l.name == n && kind == "loop");
        for (const auto& p : doc.products) dup(p.data.name == n && kind == "product");
        for (const auto& h : doc.hamiltonians) dup(h.h.name == n && kind == "hamiltonian");
        for (const auto& f : doc.functionals) dup(f.name == n && kind == "functional");
        for (const auto& c : doc.cochains) dup(c.name == n && kind == "cochain");
        for (const auto& c : doc.comatrices) dup(c.name == n && kind == "comatrix");
    };

    while (ps.peek().kind != token::eof) {
        const token head = ps.peek();
        std::string kw = ps.name("section keyword");

        if (kw == "group") {
            if (doc.has_group) ps.err(head, "duplicate group section");
            if (!doc.models.empty() || !doc.complexes.empty() || !doc.morse.empty())
                ps.err(head, "the group section must come first");
            ps.expect_punct("{");
            ps.expect_word("rank");
            std::int64_t r = ps.integer("rank");
            if (r < 0) ps.err(head, "rank must be nonnegative");
            doc.group.rank = static_cast<std::size_t>(r);
            ps.expect_word("omega");
            for (std::size_t i = 0; i < doc.group.rank; ++i)
                doc.group.omega.push_back(ps.rational("omega entry"));
            ps.expect_word("c1");
            for (std::size_t i = 0; i < doc.group.rank; ++i)
                doc.group.c1.push_back(ps.integer("c1 entry"));
            ps.expect_punct("}");
            doc.has_group = true;
            continue;
        }
        require_group(head);

        if (kw == "model") {
            cohomology_model m;
            m.group = doc.group;
            m.name = ps.name("model name");
            check_fresh(head, "model", m.name);
            ps.expect_punct("{");
            ps.expect_word("dim2n");
            m.dim2n = static_cast<int>(ps.integer("dim2n"));
            ps.expect_word("degree-factor");
            m.degree_factor = static_cast<int>(ps.integer("degree-factor"));
            if (ps.eat_word("unit")) m.unit = ps.name("unit basis name");
            while (ps.eat_word("basis")) {
                basis_element b;
                b.name = ps.name("basis name");
                b.degree = static_cast<int>(ps.integer("basis degree"));
                m.basis.push_back(std::move(b));
            }
            while (ps.eat_word("pairing-row")) {
                std::vector<rat> row;
                for (std::size_t i = 0; i < m.basis.size(); ++i)
                    row.push_back(ps.rational("pairing entry"));
                m.pairing.push_back(std::move(row));
            }
            while (ps.eat_word("constant")) {
                const token t = ps.peek();
                std::string bi = ps.name("basis name");
                std::string bj = ps.name("basis name");
                expvec a = ps.exponent(doc.group.rank);
                ps.expect_punct(":");
                std::vector<rat> v;
                for (std::size_t i = 0; i < m.basis.size(); ++i)
                    v.push_back(ps.rational("constant entry"));
                auto ii = m.basis_index(bi), jj = m.basis_index(bj);
                if (!ii || !jj) ps.err(t, "constant references an unknown basis element");
                m.constants.emplace(std::make_tuple(*ii, *jj, a), std::move(v));
            }
            ps.expect_punct("}");
            doc.models.push_back(std::move(m));
            continue;
        }

        if (kw == "complex") {
            complex_decl cd;
            floer_complex& cx = cd.cx;
            cx.group = doc.group;
            cx.name = ps.name("complex name");
            check_fresh(head, "complex", cx.name);
            ps.expect_punct("{");
            ps.expect_word("degree-factor");
            cx.degree_factor = static_cast<int>(ps.integer("degree-factor"));
            ps.expect_word("dim2n");
            cx.dim2n = static_cast<int>(ps.integer("dim2n"));
            if (ps.eat_word("box")) cx.box_radius = ps.integer("box radius");
            while (ps.eat_word("orbit")) {
                const token t = ps.peek();
                orbit o;
                o.label = ps.name("orbit label");
                if (cx.orbit_index(o.label))
                    fail(errc::duplicate_label,
                         "line " + std::to_string(t.line) + ": orbit '" + o.label
                             + "' is defined twice in complex '" + cx.name + "'");
                ps.expect_word("action");
                o.base_action = ps.rational("action");
                ps.expect_word("degree");
                o.base_degree = static_cast<int>(ps.integer("degree"));
                cx.orbits.push_back(std::move(o));
            }
            while (ps.eat_word("boundary")) {
                const token t = ps.peek();
                std::string s = ps.name("source orbit");
                ps.expect_punct("->");
                std::string u = ps.name("target orbit");
                ps.expect_punct(":");
                novikov_element e = ps.element(doc.group, direction::downward);
                std::size_t si = detail::orbit_of(ps, t, cx, s);
                std::size_t ti = detail::orbit_of(ps, t, cx, u);
                if (!cx.boundary.emplace(std::make_pair(si, ti), std::move(e)).second)
                    ps.err(t, "boundary entry " + s + " -> " + u + " repeated");
            }
            ps.expect_punct("}");
            doc.complexes.push_back(std::move(cd));
            continue;
        }

        if (kw == "morse") {
            morse_decl md;
            md.name = ps.name("morse section name");
            check_fresh(head, "morse", md.name);
            md.model.name = md.name;
            ps.expect_punct("{");
            ps.expect_word("complex");
            md.complex_name = ps.name("generated complex name");
            check_fresh(head, "complex", md.complex_name);
            ps.expect_word("eps");
            md.eps = ps.rational("eps");
            ps.expect_word("dim2n");
            md.dim2n = static_cast<int>(ps.integer("dim2n"));
            ps.expect_word("degree-factor");
            md.degree_factor = static_cast<int>(ps.integer("degree-factor"));
            if (ps.eat_word("box")) md.box = ps.integer("box radius");
            while (ps.eat_word("point")) {
                morse_point p;
                p.label = ps.name("point label");
                ps.expect_word("value");
                p.value = ps.rational("value");
                ps.expect_word("index");
                p.index = static_cast<int>(ps.integer("index"));
                md.model.points.push_back(std::move(p));
            }
            while (ps.eat_word("incidence")) {
                std::string s = ps.name("source point");
                ps.expect_punct("->");
                std::string u = ps.name("target point");
                ps.expect_punct(":");
                md.model.incidence[{s, u}] = ps.integer("incidence count");
            }
            ps.expect_punct("}");

            complex_decl cd;
            cd.cx = quantum_complex_from_morse(md.model, doc.group, md.eps, md.dim2n,
                                               md.degree_factor, md.box);
            cd.cx.name = md.complex_name;
            cd.derived = true;
            cd.derived_from = md.name;
            class_decl fund;
            fund.name = md.complex_name + ".fund";
            check_fresh(head, "class", fund.name);
            fund.complex = md.complex_name;
            fund.chain = fundamental_class(cd.cx);
            fund.derived = true;
            doc.morse.push_back(std::move(md));
            doc.complexes.push_back(std::move(cd));
            doc.classes.push_back(std::move(fund));
            continue;
        }

        if (kw == "class") {
            class_decl cd;
            cd.name = ps.name("class name");
            check_fresh(head, "class", cd.name);
            ps.expect_punct("{");
            ps.expect_word("complex");
            cd.complex = ps.name("complex name");
            const floer_complex& cx = doc.find_complex(cd.complex);
            while (ps.eat_word("term")) {
                const token t = ps.peek();
                std::string lbl = ps.name("orbit label");
                ps.expect_punct(":");
                novikov_element e = ps.element(doc.group, direction::downward);
                chain_insert(cd.chain, detail::orbit_of(ps, t, cx, lbl), e);
            }
            ps.expect_punct("}");
            doc.classes.push_back(std::move(cd));
            continue;
        }

        if (kw == "map") {
            chain_map_data m;
            m.name = ps.name("map name");
            check_fresh(head, "map", m.name);
            ps.expect_punct("{");
            ps.expect_word("source");
            m.source = ps.name("source complex");
            ps.expect_word("target");
            m.target = ps.name("target complex");
            const floer_complex& src = doc.find_complex(m.source);
            const floer_complex& tgt = doc.find_complex(m.target);
            ps.expect_word("shift");
            m.shift_bound = ps.rational("shift bound");
            while (ps.eat_word("entry")) {
                const token t = ps.peek();
                std::string s = ps.name("source orbit");
                ps.expect_punct("->");
                std::string u = ps.name("target orbit");
                ps.expect_punct(":");
                novikov_element e = ps.element(doc.group, direction::downward);
                auto key = std::make_pair(detail::orbit_of(ps, t, src, s),
                                          detail::orbit_of(ps, t, tgt, u));
                if (!m.entries.emplace(key, std::move(e)).second)
                    ps.err(t, "map entry " + s + " -> " + u + " repeated");
            }
            ps.expect_punct("}");
            doc.maps.push_back(std::move(m));
            continue;
        }

        if (kw == "pair") {
            pair_decl p;
            p.name = ps.name("pair name");
            check_fresh(head, "pair", p.name);
            ps.expect_punct("{");
            ps.expect_word("source");
            p.source = ps.name("source complex");
            ps.expect_word("target");
            p.target = ps.name("target complex");
            ps.expect_word("class");
            p.class_name = ps.name("class name");
            ps.expect_word("forward");
            p.forward = ps.name("map name");
            ps.expect_word("backward");
            p.backward = ps.name("map name");
            ps.expect_punct("}");
            doc.find_complex(p.source);
            doc.find_complex(p.target);
            doc.find_class(p.class_name);
            doc.find_map(p.forward);
            doc.find_map(p.backward);
            doc.pairs.push_back(std::move(p));
            continue;
        }

        if (kw == "loop") {
            loop_decl l;
            l.name = ps.name("loop name");
            check_fresh(head, "loop", l.name);
            ps.expect_punct("{");
            ps.expect_word("complex");
            l.complex = ps.name("complex name");
            doc.find_complex(l.complex);
            ps.expect_word("shift");
            l.shift = ps.rational("shift");
            while (ps.eat_word("relabel")) {
                loop_relabel_entry r;
                r.source = ps.name("source orbit");
                ps.expect_punct("->");
                r.target = ps.name("target orbit");
                ps.expect_word("offset");
                r.offset = ps.exponent(doc.group.rank);
                if (ps.eat_word("degree"))
                    r.expected_degree = static_cast<int>(ps.integer("degree"));
                l.relabel.push_back(std::move(r));
            }
            ps.expect_punct("}");
            doc.loops.push_back(std::move(l));
            continue;
        }

        if (kw == "product") {
            product_decl pd;
            pants_product_data& p = pd.data;
            p.name = ps.name("product name");
            check_fresh(head, "product", p.name);
            ps.expect_punct("{");
            ps.expect_word("source-a");
            p.source_a = ps.name("complex name");
            ps.expect_word("source-b");
            p.source_b = ps.name("complex name");
            ps.expect_word("target");
            p.target = ps.name("complex name");
            const floer_complex& ca = doc.find_complex(p.source_a);
            const floer_complex& cb = doc.find_complex(p.source_b);
            const floer_complex& ct = doc.find_complex(p.target);
            ps.expect_word("tolerance");
            p.tolerance = ps.rational("tolerance");
            while (ps.eat_word("entry")) {
                const token t = ps.peek();
                std::string la = ps.name("orbit label");
                ps.expect_punct("*");
                std::string lb = ps.name("orbit label");
                auto key = std::make_pair(detail::orbit_of(ps, t, ca, la),
                                          detail::orbit_of(ps, t, cb, lb));
                ps.expect_punct("{");
                novikov_chain chain;
                while (ps.eat_word("term")) {
                    const token t2 = ps.peek();
                    std::string lt = ps.name("orbit label");
                    ps.expect_punct(":");
                    novikov_element e = ps.element(doc.group, direction::downward);
                    chain_insert(chain, detail::orbit_of(ps, t2, ct, lt), e);
                }
                ps.expect_punct("}");
                if (!p.constants.emplace(key, std::move(chain)).second)
                    ps.err(t, "product entry " + la + " * " + lb + " repeated");
            }
            ps.expect_punct("}");
            doc.products.push_back(std::move(pd));
            continue;
        }

        if (kw == "hamiltonian") {
            hamiltonian_decl hd;
            sampled_hamiltonian& h = hd.h;
            h.name = ps.name("hamiltonian name");
            check_fresh(head, "hamiltonian", h.name);
            ps.expect_punct("{");
            ps.expect_word("steps");
            std::int64_t steps = ps.integer("steps");
            if (steps < 1) ps.err(head, "steps must be at least 1");
            h.time_steps = static_cast<std::size_t>(steps);
            while (ps.eat_word("point")) {
                h.points.push_back(ps.name("point label"));
                h.weights.push_back(ps.rational("weight"));
            }
            ps.expect_word("normalized");
            h.normalized = ps.boolean("normalized");
            while (ps.eat_word("row")) {
                std::vector<rat> row;
                for (std::size_t i = 0; i < h.points.size(); ++i)
                    row.push_back(ps.rational("sample"));
                h.values.push_back(std::move(row));
            }
            while (ps.eat_word("flow")) {
                if (!hd.flow) hd.flow.emplace();
                std::vector<std::size_t> row;
                for (std::size_t i = 0; i < h.points.size(); ++i) {
                    std::int64_t v = ps.integer("flow image");
                    if (v < 0) ps.err(head, "flow image must be nonnegative");
                    row.push_back(static_cast<std::size_t>(v));
                }
                hd.flow->push_back(std::move(row));
            }
            ps.expect_punct("}");
            doc.hamiltonians.push_back(std::move(hd));
            continue;
        }

        if (kw == "functional") {
            functional_decl f;
            f.name = ps.name("functional name");
            check_fresh(head, "functional", f.name);
            ps.expect_punct("{");
            ps.expect_word("complex");
            f.complex = ps.name("complex name");
            const floer_complex& cx = doc.find_complex(f.complex);
            ps.expect_word("threshold");
            f.mu.threshold = ps.rational("threshold");
            while (ps.eat_word("value")) {
                const token t = ps.peek();
                std::string lbl = ps.name("orbit label");
                ps.expect_word("q");
                expvec a = ps.exponent(doc.group.rank);
                ps.expect_punct(":");
                f.mu.values[{detail::orbit_of(ps, t, cx, lbl), a}] = ps.rational("value");
            }
            ps.expect_punct("}");
            doc.functionals.push_back(std::move(f));
            continue;
        }

        if (kw == "cochain") {
            cochain_decl c;
            c.name = ps.name("cochain name");
            check_fresh(head, "cochain", c.name);
            ps.expect_punct("{");
            ps.expect_word("complex");
            c.complex = ps.name("complex name");
            const floer_complex& cx = doc.find_complex(c.complex);
            while (ps.eat_word("term")) {
                const token t = ps.peek();
                std::string lbl = ps.name("orbit label");
                ps.expect_punct(":");
                novikov_element e = ps.element(doc.group, direction::upward);
                std::size_t orb = detail::orbit_of(ps, t, cx, lbl);
                auto it = c.a.coeffs.find(orb);
                if (it == c.a.coeffs.end()) c.a.coeffs.emplace(orb, std::move(e));
                else it->second = nov_add(it->second, e);
            }
            ps.expect_punct("}");
            doc.cochains.push_back(std::move(c));
            continue;
        }

        if (kw == "comatrix") {
            comatrix_decl c;
            c.name = ps.name("comatrix name");
            check_fresh(head, "comatrix", c.name);
            ps.expect_punct("{");
            ps.expect_word("complex");
            c.complex = ps.name("complex name");
            const floer_complex& cx = doc.find_complex(c.complex);
            while (ps.eat_word("entry")) {
                const token t = ps.peek();
                std::string s = ps.name("source orbit");
                ps.expect_punct("->");
                std::string u = ps.name("target orbit");
                ps.expect_punct(":");
                novikov_element e = ps.element(doc.group, direction::upward);
                auto key = std::make_pair(detail::orbit_of(ps, t, cx, s),
                                          detail::orbit_of(ps, t, cx, u));
                if (!c.delta.emplace(key, std::move(e)).second)
                    ps.err(t, "comatrix entry " + s + " -> " + u + " repeated");
            }
            ps.expect_punct("}");
            doc.comatrices.push_back(std::move(c));
            continue;
        }

        if (kw == "tasks") {
            ps.expect_punct("{");
            while (ps.eat_word("task")) {
                std::vector<std::string> words;
                while (!ps.at_punct(";")) words.push_back(ps.name("task word"));
                ps.expect_punct(";");
                if (words.empty()) ps.err(head, "empty task line");
                doc.tasks.push_back(std::move(words));
            }
            ps.expect_punct("}");
            continue;
        }

        ps.err(head, "unknown section '" + kw + "'");
    }
    return doc;
}

/* ---- canonical writer ---- */

namespace detail {

inline std::string element_str(const novikov_element& e) {
    std::string out;
    bool first = true;
    for (const auto& [a, c] : e.terms) {
        if (!first) out += " + ";
        first = false;
        out += rat_str(c) + " q" + expvec_str(a);
    }
    if (first) out += "0/1 q" + expvec_str(expvec(e.group.rank, 0));
    return out;
}

} // namespace detail

inline std::string save_document(const document& doc) {
    std::string o;
    auto blank = [&] {
        if (!o.empty()) o += "\n";
    };
    if (doc.has_group) {
        o += "group {\n";
        o += "  rank " + std::to_string(doc.group.rank) + "\n";
        o += "  omega";
        for (const auto& w : doc.group.omega) o += " " + rat_str(w);
        o += "\n  c1";
        for (auto v : doc.group.c1) o += " " + std::to_string(v);
        o += "\n}\n";
    }
    for (const auto& m : doc.models) {
        blank();
        o += "model " + m.name + " {\n";
        o += "  dim2n " + std::to_string(m.dim2n) + "\n";
        o += "  degree-factor " + std::to_string(m.degree_factor) + "\n";
        if (!m.unit.empty()) o += "  unit " + m.unit + "\n";
        for (const auto& b : m.basis)
            o += "  basis " + b.name + " " + std::to_string(b.degree) + "\n";
        for (const auto& row : m.pairing) {
            o += "  pairing-row";
            for (const auto& v : row) o += " " + rat_str(v);
            o += "\n";
        }
        for (const auto& [key, v] : m.constants) {
            const auto& [i, j, a] = key;
            o += "  constant " + m.basis[i].name + " " + m.basis[j].name + " "
               + expvec_str(a) + " :";
            for (const auto& c : v) o += " " + rat_str(c);
            o += "\n";
        }
        o += "}\n";
    }
    for (const auto& md : doc.morse) {
        blank();
        o += "morse " + md.name + " {\n";
        o += "  complex " + md.complex_name + "\n";
        o += "  eps " + rat_str(md.eps) + "\n";
        o += "  dim2n " + std::to_string(md.dim2n) + "\n";
        o += "  degree-factor " + std::to_string(md.degree_factor) + "\n";
        if (md.box) o += "  box " + std::to_string(*md.box) + "\n";
        for (const auto& p : md.model.points)
            o += "  point " + p.label + " value " + rat_str(p.value) + " index "
               + std::to_string(p.index) + "\n";
        for (const auto& [key, n] : md.model.incidence)
            o += "  incidence " + key.first + " -> " + key.second + " : "
               + std::to_string(n) + "\n";
        o += "}\n";
    }
    for (const auto& cd : doc.complexes) {
        if (cd.derived) continue;
        blank();
        const floer_complex& cx = cd.cx;
        o += "complex " + cx.name + " {\n";
        o += "  degree-factor " + std::to_string(cx.degree_factor) + "\n";
        o += "  dim2n " + std::to_string(cx.dim2n) + "\n";
        if (cx.box_radius) o += "  box " + std::to_string(*cx.box_radius) + "\n";
        for (const auto& orb : cx.orbits)
            o += "  orbit " + orb.label + " action " + rat_str(orb.base_action)
               + " degree " + std::to_string(orb.base_degree) + "\n";
        for (const auto& [key, e] : cx.boundary)
            o += "  boundary " + cx.orbits[key.first].label + " -> "
               + cx.orbits[key.second].label + " : " + detail::element_str(e) + "\n";
        o += "}\n";
    }
    for (const auto& cd : doc.classes) {
        if (cd.derived) continue;
        blank();
        o += "class " + cd.name + " {\n";
        o += "  complex " + cd.complex + "\n";
        const floer_complex& cx = doc.find_complex(cd.complex);
        for (const auto& [orb, e] : cd.chain.coeffs)
            o += "  term " + cx.orbits[orb].label + " : " + detail::element_str(e) + "\n";
        o += "}\n";
    }
    for (const auto& m : doc.maps) {
        blank();
        o += "map " + m.name + " {\n";
        o += "  source " + m.source + "\n";
        o += "  target " + m.target + "\n";
        o += "  shift " + rat_str(m.shift_bound) + "\n";
        const floer_complex& src = doc.find_complex(m.source);
        const floer_complex& tgt = doc.find_complex(m.target);
        for (const auto& [key, e] : m.entries)
            o += "  entry " + src.orbits[key.first].label + " -> "
               + tgt.orbits[key.second].label + " : " + detail::element_str(e) + "\n";
        o += "}\n";
    }
    for (const auto& p : doc.pairs) {
        blank();
        o += "pair " + p.name + " {\n";
        o += "  source " + p.source + "\n";
        o += "  target " + p.target + "\n";
        o += "  class " + p.class_name + "\n";
        o += "  forward " + p.forward + "\n";
        o += "  backward " + p.backward + "\n";
        o += "}\n";
    }
    for (const auto& l : doc.loops) {
        blank();
        o += "loop " + l.name + " {\n";
        o += "  complex " + l.complex + "\n";
        o += "  shift " + rat_str(l.shift) + "\n";
        for (const auto& r : l.relabel) {
            o += "  relabel " + r.source + " -> " + r.target + " offset "
               + expvec_str(r.offset);
            if (r.expected_degree) o += " degree " + std::to_string(*r.expected_degree);
            o += "\n";
        }
        o += "}\n";
    }
    for (const auto& pd : doc.products) {
        blank();
        const pants_product_data& p = pd.data;
        o += "product " + p.name + " {\n";
        o += "  source-a " + p.source_a + "\n";
        o += "  source-b " + p.source_b + "\n";
        o += "  target " + p.target + "\n";
        o += "  tolerance " + rat_str(p.tolerance) + "\n";
        const floer_complex& ca = doc.find_complex(p.source_a);
        const floer_complex& cb = doc.find_complex(p.source_b);
        const floer_complex& ct = doc.find_complex(p.target);
        for (const auto& [key, chain] : p.constants) {
            o += "  entry " + ca.orbits[key.first].label + " * "
               + cb.orbits[key.second].label + " {\n";
            for (const auto& [orb, e] : chain.coeffs)
                o += "    term " + ct.orbits[orb].label + " : " + detail::element_str(e)
                   + "\n";
            o += "  }\n";
        }
        o += "}\n";
    }
    for (const auto& hd : doc.hamiltonians) {
        blank();
        const sampled_hamiltonian& h = hd.h;
        o += "hamiltonian " + h.name + " {\n";
        o += "  steps " + std::to_string(h.time_steps) + "\n";
        for (std::size_t i = 0; i < h.points.size(); ++i)
            o += "  point " + h.points[i] + " " + rat_str(h.weights[i]) + "\n";
        o += std::string("  normalized ") + (h.normalized ? "true" : "false") + "\n";
        for (const auto& row : h.values) {
            o += "  row";
            for (const auto& v : row) o += " " + rat_str(v);
            o += "\n";
        }
        if (hd.flow)
            for (const auto& row : *hd.flow) {
                o += "  flow";
                for (auto v : row) o += " " + std::to_string(v);
                o += "\n";
            }
        o += "}\n";
    }
    for (const auto& f : doc.functionals) {
        blank();
        o += "functional " + f.name + " {\n";
        o += "  complex " + f.complex + "\n";
        o += "  threshold " + rat_str(f.mu.threshold) + "\n";
        const floer_complex& cx = doc.find_complex(f.complex);
        for (const auto& [p, v] : f.mu.values)
            o += "  value " + cx.orbits[p.first].label + " q" + expvec_str(p.second)
               + " : " + rat_str(v) + "\n";
        o += "}\n";
    }
    for (const auto& c : doc.cochains) {
        blank();
        o += "cochain " + c.name + " {\n";
        o += "  complex " + c.complex + "\n";
        const floer_complex& cx = doc.find_complex(c.complex);
        for (const auto& [orb, e] : c.a.coeffs)
            o += "  term " + cx.orbits[orb].label + " : " + detail::element_str(e) + "\n";
        o += "}\n";
    }
    for (const auto& c : doc.comatrices) {
        blank();
        o += "comatrix " + c.name + " {\n";
        o += "  complex " + c.complex + "\n";
        const floer_complex& cx = doc.find_complex(c.complex);
        for (const auto& [key, e] : c.delta)
            o += "  entry " + cx.orbits[key.first].label + " -> "
               + cx.orbits[key.second].label + " : " + detail::element_str(e) + "\n";
        o += "}\n";
    }
    if (!doc.tasks.empty()) {
        blank();
        o += "tasks {\n";
        for (const auto& words : doc.tasks) {
            o += "  task";
            for (const auto& w : words) o += " " + w;
            o += " ;\n";
        }
        o += "}\n";
    }
    return o;
}

inline document load_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::bad_argument, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

inline void save_document_file(const document& doc, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(errc::bad_argument, "cannot write '" + path + "'");
    out << save_document(doc);
}

/* CLI overrides: force a box radius / degree factor on every complex */
inline void apply_overrides(document& doc, std::optional<std::int64_t> box,
                            std::optional<int> degree_factor) {
    for (auto& cd : doc.complexes) {
        if (box) cd.cx.box_radius = *box;
        if (degree_factor) cd.cx.degree_factor = *degree_factor;
    }
}

} // namespace cli_io
} // namespace floer
