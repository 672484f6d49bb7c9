#pragma once

/* Shared scalar types and error machinery.
 *
 * All arithmetic in the library is exact: coefficients are arbitrary-
 * precision rationals, exponents are integer lattice vectors.  No floating
 * point appears anywhere in the core; quantities that want a decimal
 * rendering are formatted as "num/den" strings instead.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace floer {

using rat = boost::multiprecision::cpp_rational;
using bigint = boost::multiprecision::cpp_int;

/* exponent vector in Z^r (a class in the coefficient group) */
using expvec = std::vector<std::int64_t>;

enum class errc {
    direction_mismatch,
    group_mismatch,
    nonunit_leading_term,
    empty_element,
    unknown_orbit,
    duplicate_orbit,
    degree_mismatch,
    action_order_violation,
    infinite_window_population,
    not_a_cycle,
    explosion_guard,
    source_target_mismatch,
    grading_violation,
    unknown_basis_element,
    singular_pairing,
    morse_boundary_not_square_zero,
    transport_not_bijective,
    empty_lift_list,
    not_normalized,
    empty_list,
    parse_error,
    dangling_reference,
    duplicate_label,
    missing_section,
    unknown_task,
    bad_argument,
};

inline const char* errc_name(errc c) {
    switch (c) {
    case errc::direction_mismatch: return "DirectionMismatch";
    case errc::group_mismatch: return "GroupMismatch";
    case errc::nonunit_leading_term: return "NonunitLeadingTerm";
    case errc::empty_element: return "EmptyElement";
    case errc::unknown_orbit: return "UnknownOrbit";
    case errc::duplicate_orbit: return "DuplicateOrbit";
    case errc::degree_mismatch: return "DegreeMismatch";
    case errc::action_order_violation: return "ActionOrderViolation";
    case errc::infinite_window_population: return "InfiniteWindowPopulation";
    case errc::not_a_cycle: return "NotACycle";
    case errc::explosion_guard: return "ExplosionGuard";
    case errc::source_target_mismatch: return "SourceTargetMismatch";
    case errc::grading_violation: return "GradingViolation";
    case errc::unknown_basis_element: return "UnknownBasisElement";
    case errc::singular_pairing: return "SingularPairing";
    case errc::morse_boundary_not_square_zero: return "MorseBoundaryNotSquareZero";
    case errc::transport_not_bijective: return "TransportNotBijective";
    case errc::empty_lift_list: return "EmptyLiftList";
    case errc::not_normalized: return "NotNormalized";
    case errc::empty_list: return "EmptyList";
    case errc::parse_error: return "ParseError";
    case errc::dangling_reference: return "DanglingReference";
    case errc::duplicate_label: return "DuplicateLabel";
    case errc::missing_section: return "MissingSection";
    case errc::unknown_task: return "UnknownTask";
    case errc::bad_argument: return "BadArgument";
    }
    return "UnknownError";
}

struct error : std::runtime_error {
    errc code;
    error(errc c, const std::string& what)
        : std::runtime_error(std::string(errc_name(c)) + ": " + what), code(c) {}
};

[[noreturn]] inline void fail(errc c, const std::string& what) { throw error(c, what); }

/* canonical rational rendering: always "num/den", den > 0, reduced */
inline std::string rat_str(const rat& x) {
    return numerator(x).str() + "/" + denominator(x).str();
}

inline rat parse_rat(const std::string& s) {
    auto plain_integer = [](const std::string& t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    auto slash = s.find('/');
    std::string ns = slash == std::string::npos ? s : s.substr(0, slash);
    std::string ds = slash == std::string::npos ? std::string("1") : s.substr(slash + 1);
    if (!plain_integer(ns) || !plain_integer(ds))
        fail(errc::parse_error, "bad rational '" + s + "'");
    bigint den(ds);
    if (den == 0) fail(errc::parse_error, "zero denominator in '" + s + "'");
    return rat(bigint(ns), den);
}

inline std::string expvec_str(const expvec& a) {
    std::string out = "[";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(a[i]);
    }
    return out + "]";
}

inline expvec exp_add(const expvec& a, const expvec& b) {
    expvec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

inline expvec exp_sub(const expvec& a, const expvec& b) {
    expvec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}

inline expvec exp_neg(const expvec& a) {
    expvec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
    return c;
}

inline bool exp_is_zero(const expvec& a) {
    for (auto v : a)
        if (v != 0) return false;
    return true;
}

} // namespace floer
