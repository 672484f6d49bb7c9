#pragma once

/* Shared builders for the unit suites. */

#include <floer/base.hpp>
#include <floer/gamma_group.hpp>
#include <floer/novikov.hpp>
#include <floer/complex.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

/* assert that `expr` raises floer::error with the given code */
#define CHECK_FAILS(expr, kind)                                              \
    do {                                                                     \
        try {                                                                \
            (void)(expr);                                                    \
            FAIL("expected " #kind ", nothing was raised");                  \
        } catch (const floer::error& e_) {                                   \
            CHECK(e_.code == floer::errc::kind);                             \
        }                                                                    \
    } while (0)

namespace tst {

using floer::rat;
using floer::expvec;

/* rank-1 group with one omega weight and one Chern weight */
inline floer::gamma_group grp1(const rat& w, std::int64_t c = 1) {
    return floer::gamma_group{1, {w}, {c}};
}

/* rank-2 group */
inline floer::gamma_group grp2(const rat& w0, const rat& w1, std::int64_t c0,
                               std::int64_t c1) {
    return floer::gamma_group{2, {w0, w1}, {c0, c1}};
}

/* rank-0 group (trivial coefficient lattice) */
inline floer::gamma_group grp0() { return floer::gamma_group{0, {}, {}}; }

inline floer::novikov_element mono(const floer::gamma_group& g, floer::direction d,
                                   std::initializer_list<std::int64_t> a,
                                   const rat& c) {
    return floer::nov_monomial(g, d, expvec(a), c);
}

/* random nonzero element with small support, for property tests */
inline floer::novikov_element random_element(std::mt19937_64& rng,
                                             const floer::gamma_group& g,
                                             floer::direction d) {
    std::uniform_int_distribution<int> nterms(1, 4);
    std::uniform_int_distribution<std::int64_t> key(-3, 3);
    std::uniform_int_distribution<std::int64_t> coef(-5, 5);
    floer::novikov_element x = floer::nov_zero(g, d);
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        expvec a(g.rank);
        for (auto& v : a) v = key(rng);
        std::int64_t c = coef(rng);
        if (c == 0) c = 1;
        x = floer::nov_add(x, floer::nov_monomial(g, d, a, rat(c)));
    }
    if (x.is_zero()) x = floer::nov_one(g, d);
    return x;
}

/* x (action 2), y (action 1), z (action 5/2, degree +1), dz = x - y,
 * over the trivial coefficient group */
inline floer::floer_complex three_gen() {
    floer::floer_complex cx;
    cx.name = "xyz";
    cx.group = grp0();
    cx.dim2n = 2;
    cx.orbits = {{"x", 2, 0}, {"y", 1, 0}, {"z", floer::rat(5, 2), 1}};
    auto one = floer::nov_one(cx.group, floer::direction::downward);
    cx.boundary[{2, 0}] = one;
    cx.boundary[{2, 1}] = floer::nov_neg(one);
    return cx;
}

/* simple chain on named orbits of a complex */
inline floer::novikov_chain
chain_of(const floer::floer_complex& cx,
         std::initializer_list<std::tuple<const char*, expvec, rat>> terms) {
    floer::novikov_chain c;
    for (const auto& [label, a, coeff] : terms)
        floer::chain_insert(c, cx.require_orbit(label),
                            floer::nov_monomial(cx.group, floer::direction::downward,
                                                a, coeff));
    return c;
}

}  // namespace tst
