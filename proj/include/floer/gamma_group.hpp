#pragma once

/* The coefficient group: a finite-rank lattice Z^r together with two
 * homomorphisms evaluated exactly on it,
 *
 *     omega : Z^r -> Q   (area/period form)
 *     c1    : Z^r -> Z   (first Chern pairing)
 *
 * The pair (omega, c1) is required to be injective on Z^r; this is what
 * makes leading terms and action levels well defined downstream.
 */

#include "base.hpp"

#include <numeric>
#include <optional>

namespace floer {
inline namespace novikov_ring {

struct gamma_group {
    std::size_t rank = 0;
    std::vector<rat> omega;          // size == rank
    std::vector<std::int64_t> c1;    // size == rank

    rat eval_omega(const expvec& a) const {
        rat s = 0;
        for (std::size_t i = 0; i < rank; ++i) s += omega[i] * rat(a[i]);
        return s;
    }

    std::int64_t eval_c1(const expvec& a) const {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < rank; ++i) s += c1[i] * a[i];
        return s;
    }

    expvec zero() const { return expvec(rank, 0); }

    bool operator==(const gamma_group& o) const {
        return rank == o.rank && omega == o.omega && c1 == o.c1;
    }
};

/* (omega, c1) is injective on Z^r iff the 2 x r rational matrix
 * [omega; c1] has rank r; an integer kernel vector exists exactly when the
 * rational kernel is nonzero. */
inline bool group_injective(const gamma_group& g) {
    if (g.rank == 0) return true;
    if (g.rank > 2) return false;
    if (g.rank == 1) return g.omega[0] != 0 || g.c1[0] != 0;
    // rank 2: injective iff the two columns are linearly independent
    rat det = g.omega[0] * rat(g.c1[1]) - g.omega[1] * rat(g.c1[0]);
    if (det != 0) return true;
    // columns proportional: dependent unless both columns vanish... a zero
    // column alone already kills injectivity, so only det != 0 survives.
    return false;
}

inline void validate_group(const gamma_group& g) {
    if (g.omega.size() != g.rank || g.c1.size() != g.rank)
        fail(errc::group_mismatch, "omega/c1 length differs from rank");
    if (!group_injective(g))
        fail(errc::group_mismatch, "(omega, c1) is not injective on Z^r");
}

inline void require_same_group(const gamma_group& a, const gamma_group& b,
                               const char* where = "operands live over different groups") {
    if (!(a == b)) fail(errc::group_mismatch, where);
}

/* positive generator of omega(Z^r) as a subgroup of Q; 0 when the image is
 * trivial (rank 0 or omega identically zero) */
inline rat omega_lattice_generator(const gamma_group& g) {
    if (g.rank == 0) return 0;
    bigint L = 1;
    for (const auto& w : g.omega) L = lcm(L, denominator(w));
    bigint g0 = 0;
    for (const auto& w : g.omega) g0 = gcd(g0, numerator(w) * (L / denominator(w)));
    if (g0 < 0) g0 = -g0;
    return rat(g0, L);
}

/* Exact membership of a rational delta in the subgroup omega(Z^r) of Q,
 * with an explicit witness A such that omega(A) = delta when one exists.
 * Write omega_i = m_i / L over a common denominator L; the image is
 * (gcd(m_i)/L) Z and a witness comes from the extended gcd. */
inline std::optional<expvec> omega_lattice_solve(const gamma_group& g, const rat& delta) {
    if (g.rank == 0) {
        if (delta == 0) return expvec{};
        return std::nullopt;
    }
    bigint L = 1;
    for (const auto& w : g.omega) L = lcm(L, denominator(w));
    std::vector<bigint> m(g.rank);
    for (std::size_t i = 0; i < g.rank; ++i)
        m[i] = numerator(g.omega[i]) * (L / denominator(g.omega[i]));

    // extended gcd over all m_i: gcd g0 = sum x_i m_i
    bigint g0 = 0;
    std::vector<bigint> x(g.rank, 0);
    for (std::size_t i = 0; i < g.rank; ++i) {
        if (m[i] == 0) continue;
        if (g0 == 0) {
            g0 = abs(m[i]);
            x[i] = m[i] > 0 ? 1 : -1;
        } else {
            // g' = gcd(g0, m_i) = s*g0 + t*m_i by the classical algorithm
            bigint a = g0, b = m[i], s0 = 1, s1 = 0, t0 = 0, t1 = 1;
            while (b != 0) {
                bigint q = a / b, r = a % b;
                a = b; b = r;
                bigint s2 = s0 - q * s1, t2 = t0 - q * t1;
                s0 = s1; s1 = s2; t0 = t1; t1 = t2;
            }
            if (a < 0) { a = -a; s0 = -s0; t0 = -t0; }
            for (auto& xi : x) xi *= s0;
            x[i] = t0;
            g0 = a;
        }
    }
    rat target = delta * rat(L);
    if (g0 == 0) {
        if (target != 0) return std::nullopt;
        return g.zero();
    }
    if (denominator(target) != 1) return std::nullopt;
    bigint n = numerator(target);
    if (n % g0 != 0) return std::nullopt;
    bigint k = n / g0;
    expvec witness(g.rank, 0);
    for (std::size_t i = 0; i < g.rank; ++i) {
        bigint v = x[i] * k;
        witness[i] = static_cast<std::int64_t>(v);
        if (bigint(witness[i]) != v) return std::nullopt; // witness overflows int64
    }
    return witness;
}

inline bool omega_lattice_member(const gamma_group& g, const rat& delta) {
    return omega_lattice_solve(g, delta).has_value();
}

} // namespace novikov_ring
} // namespace floer
