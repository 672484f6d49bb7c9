#include "helpers.hpp"

#include <floer/tasks.hpp>

using namespace floer;

namespace {

const char* kitchen_sink = R"(# workspace exercising every section kind
group { rank 1 omega 1/3 c1 1 }

model s2 {
  dim2n 2 degree-factor 2 unit one
  basis one 0
  basis pt 2
  pairing-row 0 1
  pairing-row 1 0
  constant one one [0] : 1 0
  constant one pt [0] : 0 1
  constant pt one [0] : 0 1
  constant pt pt [2] : 1 0   # quantum relation
}

morse bowl {
  complex ball eps 1/10 dim2n 2 degree-factor 2 box 2
  point bottom value -1 index 0
  point top value 1 index 2
}

complex cx {
  degree-factor 2 dim2n 2 box 2
  orbit x action 2 degree 0
  orbit y action 1 degree 0
  orbit z action 5/2 degree 1
  boundary z -> x : 1 q[0]
  boundary z -> y : -1 q[0]
}

class xcls { complex cx term x : 1 q[0] }

map selfid {
  source cx target cx shift 0
  entry x -> x : 1 q[0]
  entry y -> y : 1 q[0]
  entry z -> z : 1 q[0]
}

pair still { source cx target cx class xcls forward selfid backward selfid }

loop turn { complex cx shift 3/2 relabel x -> x offset [0] relabel y -> y offset [0] relabel z -> z offset [0] }

product cup {
  source-a cx source-b cx target cx tolerance 0
  entry x * x { term x : 1 q[0] }
}

hamiltonian wave {
  steps 1
  point p 1
  point q 1
  normalized true
  row 1 -1
  row 2 -2
  flow 1 0
  flow 0 1
}

functional mu { complex cx threshold -1/3 value x q[0] : 1 }

cochain alpha { complex cx term x : 1 q[0] }

comatrix delta { complex cx entry x -> z : 1 q[0] entry y -> z : -1 q[0] }

tasks {
  task validate ;
  task axioms cx ;
}
)";

}  // namespace

TEST_CASE("parsing reads every section kind", "[io]") {
    document doc = parse_document(kitchen_sink);
    CHECK(doc.has_group);
    CHECK(doc.group.rank == 1);
    CHECK(doc.group.omega == std::vector<rat>{rat(1, 3)});
    CHECK(doc.group.c1 == std::vector<std::int64_t>{1});
    REQUIRE(doc.models.size() == 1);
    CHECK(doc.models[0].constants.size() == 4);
    REQUIRE(doc.morse.size() == 1);
    // the morse section derives a complex and its fundamental class
    REQUIRE(doc.complexes.size() == 2);
    CHECK(doc.complexes[0].cx.name == "ball");
    CHECK(doc.complexes[0].derived);
    CHECK(doc.complexes[0].derived_from == "bowl");
    CHECK(doc.complexes[0].cx.orbits.size() == 2);
    CHECK(doc.complexes[0].cx.orbits[0].base_action == rat(1, 10));
    REQUIRE(doc.classes.size() == 2);
    CHECK(doc.classes[0].name == "ball.fund");
    CHECK(doc.classes[0].derived);
    CHECK(doc.classes[0].chain.coeffs.count(0) == 1);

    const floer_complex& cx = doc.find_complex("cx");
    CHECK(cx.orbits.size() == 3);
    CHECK(cx.boundary.at({2, 0}).terms.at({0}) == 1);
    CHECK(cx.boundary.at({2, 1}).terms.at({0}) == -1);
    CHECK(doc.find_class("xcls").chain.coeffs.count(0) == 1);
    CHECK(doc.find_map("selfid").entries.size() == 3);
    CHECK(doc.pairs.size() == 1);
    REQUIRE(doc.loops.size() == 1);
    CHECK(doc.loops[0].shift == rat(3, 2));
    CHECK(doc.loops[0].relabel.size() == 3);
    CHECK(doc.find_product("cup").data.constants.size() == 1);
    const auto& hd = doc.find_hamiltonian("wave");
    CHECK(hd.h.time_steps == 1);
    REQUIRE(hd.flow.has_value());
    CHECK((*hd.flow)[0] == std::vector<std::size_t>{1, 0});
    REQUIRE(doc.functionals.size() == 1);
    CHECK(doc.functionals[0].mu.threshold == rat(-1, 3));
    REQUIRE(doc.cochains.size() == 1);
    CHECK(doc.cochains[0].a.coeffs.at(0).dir == direction::upward);
    REQUIRE(doc.comatrices.size() == 1);
    CHECK(doc.comatrices[0].delta.size() == 2);
    REQUIRE(doc.tasks.size() == 2);
    CHECK(doc.tasks[0] == std::vector<std::string>{"validate"});
    CHECK(doc.tasks[1] == std::vector<std::string>{"axioms", "cx"});
}

TEST_CASE("the canonical writer is a fixed point of parsing", "[io]") {
    document doc = parse_document(kitchen_sink);
    std::string s1 = save_document(doc);
    document doc2 = parse_document(s1);
    std::string s2 = save_document(doc2);
    CHECK(s1 == s2);

    // derived sections are regenerated, not re-emitted ("complex ball" at
    // line start would be a standalone section; inside morse it is indented)
    CHECK(s1.find("\ncomplex ball") == std::string::npos);
    CHECK(s1.find("ball.fund") == std::string::npos);
    CHECK(s1.find("morse bowl") != std::string::npos);
    CHECK(doc2.complexes.size() == doc.complexes.size());
    CHECK(doc2.classes.size() == doc.classes.size());

    // and the reparse preserves the payload exactly
    CHECK(doc2.find_complex("cx").boundary == doc.find_complex("cx").boundary);
    CHECK(doc2.find_hamiltonian("wave").h.values == doc.find_hamiltonian("wave").h.values);
    CHECK(doc2.tasks == doc.tasks);
}

TEST_CASE("parse errors carry line and column", "[io]") {
    auto fails_with = [](const std::string& text, const char* needle,
                         errc kind = errc::parse_error) {
        try {
            parse_document(text);
            FAIL("expected a parse error for: " << needle);
        } catch (const error& e) {
            CHECK(e.code == kind);
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };

    fails_with("group { rank x }", "expected integer rank");
    fails_with("group {\n  rank 1 omega 1/3 c1 0 }\ncomplex a {\n  degree-factor 2 dim2n 0\n  orbit p action 1.5 degree 0\n}",
               "line 5");
    fails_with("group {\n  rank 1 omega 1/3 c1 0 }\ncomplex a {\n  degree-factor 2 dim2n 0\n  orbit p action 1.5 degree 0\n}",
               "decimal notation is not accepted");
    fails_with("complex a { degree-factor 2 dim2n 0 }",
               "a group section must precede everything else");
    fails_with("group { rank 1 omega 1 c1 0 }\ngroup { rank 1 omega 1 c1 0 }",
               "duplicate group section");
    fails_with("group { rank -1 omega c1 }", "rank must be nonnegative");
    fails_with("group { rank 0 omega c1 }\nwobble x {}", "unknown section 'wobble'");
    fails_with("group { rank 1 omega 1 c1 0 }\ncomplex a { degree-factor 2 dim2n 0\n"
               "  orbit p action 0 degree 0\n  boundary p -> w : 1 q[0]\n}",
               "orbit 'w' is not defined");
    fails_with("group { rank 1 omega 1 c1 0 }\ncomplex a { degree-factor 2 dim2n 1\n"
               "  orbit p action 0 degree 0\n  orbit w action 1 degree 1\n"
               "  boundary w -> p : 1 q[0]\n  boundary w -> p : 1 q[0]\n}",
               "repeated");
    fails_with("group { rank 1 omega 1 c1 0 }\nclass c { complex a }",
               "complex 'a' is not defined", errc::dangling_reference);
    fails_with("group { rank 1 omega 1 c1 0 }\ncomplex a { degree-factor 2 dim2n 0\n"
               "  orbit p action 0 degree 0 }\nclass c { complex a term p : 1 q[0 1] }",
               "exponent has 2 entries, group rank is 1");
    fails_with("group { rank 0 omega c1 }\ntasks { task ; }", "empty task line");

    try {
        parse_document(
            "group { rank 0 omega c1 }\n"
            "complex a { degree-factor 2 dim2n 0 orbit p action 0 degree 0 }\n"
            "complex a { degree-factor 2 dim2n 0 orbit p action 0 degree 0 }\n");
        FAIL("duplicate complex accepted");
    } catch (const error& e) {
        CHECK(e.code == errc::duplicate_label);
    }
    try {
        parse_document(
            "group { rank 0 omega c1 }\n"
            "complex a { degree-factor 2 dim2n 0 orbit p action 0 degree 0"
            " orbit p action 1 degree 0 }\n");
        FAIL("duplicate orbit accepted");
    } catch (const error& e) {
        CHECK(e.code == errc::duplicate_label);
    }
}

TEST_CASE("dangling references are typed lookups", "[io]") {
    document doc = parse_document("group { rank 0 omega c1 }");
    CHECK_FAILS(doc.find_complex("ghost"), dangling_reference);
    CHECK_FAILS(doc.find_class("ghost"), dangling_reference);
    CHECK_FAILS(doc.find_map("ghost"), dangling_reference);
    CHECK_FAILS(doc.find_product("ghost"), dangling_reference);
    CHECK_FAILS(doc.find_hamiltonian("ghost"), dangling_reference);
    CHECK(doc.find_morse_for("ghost") == nullptr);
}

TEST_CASE("comments and whitespace never reach the grammar", "[io]") {
    document doc = parse_document(
        "# leading comment\n"
        "group {   rank 1\n\tomega 2/4 # trailing comment\n c1 1 }\n");
    CHECK(doc.group.omega == std::vector<rat>{rat(1, 2)});
    CHECK(doc.group.c1 == std::vector<std::int64_t>{1});
}

TEST_CASE("task dispatch over a document", "[io][tasks]") {
    document doc = parse_document(kitchen_sink);
    run_options opt;

    SECTION("validate passes and renders deterministically") {
        auto rep = run_task(doc, {"validate"}, "mem", opt);
        CHECK_FALSE(rep.failed);
        std::string text = render_text(rep);
        CHECK(text.find("result: PASS") != std::string::npos);
        CHECK(text.find("[pass] complex cx") != std::string::npos);
        CHECK(text.find("[pass] comatrix delta") != std::string::npos);
        std::string js = render_json(rep);
        CHECK(js.find("\"result\": \"PASS\"") != std::string::npos);
        CHECK(js.find("\"status\": \"fail\"") == std::string::npos);
    }
    SECTION("spectral reports rho and its witness") {
        auto rep = run_task(doc, {"spectral", "xcls"}, "mem", opt);
        CHECK_FALSE(rep.failed);
        std::string text = render_text(rep);
        CHECK(text.find("rho = 1/1") != std::string::npos);
        CHECK(text.find("[pass] spectrality") != std::string::npos);
    }
    SECTION("axioms bundles the per-complex checks") {
        auto rep = run_task(doc, {"axioms", "cx"}, "mem", opt);
        CHECK_FALSE(rep.failed);
        std::string text = render_text(rep);
        CHECK(text.find("[pass] monodromy-shift") != std::string::npos);
        CHECK(text.find("[pass] continuity") != std::string::npos);
        CHECK(text.find("[pass] triangle") != std::string::npos);
        CHECK(text.find("[pass] bounded mu") != std::string::npos);
        CHECK(text.find("[pass] sigma alpha") != std::string::npos);
        CHECK(text.find("[pass] sigma-chain-map delta") != std::string::npos);
        CHECK(text.find("[pass] normalization") == std::string::npos);  // not Morse-derived
    }
    SECTION("axioms on the derived morse complex checks normalization") {
        auto rep = run_task(doc, {"axioms", "ball"}, "mem", opt);
        CHECK_FALSE(rep.failed);
        std::string text = render_text(rep);
        CHECK(text.find("[pass] normalization ball") != std::string::npos);
        CHECK(text.find("rho(fund) = 1/10 = -eps * min f") != std::string::npos);
    }
    SECTION("hofer and gamma tasks") {
        auto rep = run_task(doc, {"hofer", "wave"}, "mem", opt);
        CHECK_FALSE(rep.failed);
        CHECK(render_text(rep).find("[pass] energy-split") != std::string::npos);
        auto rg = run_task(doc, {"gamma", "ball"}, "mem", opt);
        CHECK_FALSE(rg.failed);
        CHECK(render_text(rg).find("gamma = ") != std::string::npos);
    }
    SECTION("failures mark the report failed") {
        document bad = doc;
        bad.functionals[0].mu.values[{0, {2}}] = 1;   // level -2/3 under the threshold
        auto rep = run_task(bad, {"validate"}, "mem", opt);
        CHECK(rep.failed);
        CHECK(render_text(rep).find("result: FAIL") != std::string::npos);
        CHECK(render_text(rep).find("[fail] functional mu") != std::string::npos);
    }
    SECTION("unknown tasks and bad arity throw") {
        CHECK_FAILS(run_task(doc, {"dance"}, "mem", opt), unknown_task);
        CHECK_FAILS(run_task(doc, {}, "mem", opt), unknown_task);
        CHECK_FAILS(run_task(doc, {"spectral"}, "mem", opt), bad_argument);
        CHECK_FAILS(run_task(doc, {"spectral", "ghost"}, "mem", opt), dangling_reference);
    }
    SECTION("overrides rewrite every complex") {
        run_options o2;
        o2.box = 5;
        document d2 = doc;
        apply_overrides(d2, o2.box, o2.degree_factor);
        for (const auto& cd : d2.complexes) CHECK(cd.cx.box_radius == 5);
    }
    SECTION("windowed homology task") {
        // the window (0, 3/2] holds y alone and no degree-one source reaches it
        auto rep = run_task(doc, {"windowed-homology", "cx", "0", "3/2", "0"}, "mem", opt);
        CHECK_FALSE(rep.failed);
        CHECK(render_text(rep).find("dimension = 1") != std::string::npos);
    }
    SECTION("spectrum task lists base actions and the lattice") {
        auto rep = run_task(doc, {"spectrum", "cx"}, "mem", opt);
        CHECK_FALSE(rep.failed);
        std::string text = render_text(rep);
        CHECK(text.find("base-actions = 1/1 2/1 5/2") != std::string::npos);
        CHECK(text.find("lattice-generator = 1/3") != std::string::npos);
    }
}

TEST_CASE("file round trip", "[io]") {
    document doc = parse_document(kitchen_sink);
    std::string path = "io_test_roundtrip.fsp";
    save_document_file(doc, path);
    document loaded = load_document(path);
    CHECK(save_document(loaded) == save_document(doc));
    std::remove(path.c_str());
    CHECK_FAILS(load_document("definitely_missing_file.fsp"), bad_argument);
}
