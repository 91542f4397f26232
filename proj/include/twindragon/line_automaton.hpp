#pragma once

#include <cstdint>
#include <string>

#include "twindragon/buchi.hpp"
#include "twindragon/rational.hpp"

namespace twindragon {

/// The line px + qy = r with integer coefficients, gcd(p, q, r) = 1 and the
/// first nonzero of (p, q) positive.
struct LineParams {
    std::int64_t p = 0;
    std::int64_t q = 0;
    std::int64_t r = 0;

    friend bool operator==(const LineParams&, const LineParams&) = default;

    /// "Δ_{p,q,r}".
    std::string banner() const;
};

/// Clears denominators and normalizes sign and gcd. Throws DegenerateLineError when p = q = 0.
LineParams normalize_line(const Rational& p, const Rational& q, const Rational& r);

/// c(p, q) = max |p Re(b) + q Im(b)| / 3 over the 16 digits b.
Rational state_bound(std::int64_t p, std::int64_t q);

/// Automaton on integer states s with s -b-> p Re(b) + q Im(b) - 4s, states
/// |s| <= c(p, q) plus the initial state -r, all terminal. Not trimmed.
BuchiAutomaton build_line_automaton_untrimmed(const LineParams& line);

/// Trimmed automaton whose accepted words are the base -4 digit sequences of
/// the points of the twin dragon on the line.
BuchiAutomaton build_line_automaton(const LineParams& line);

/// Six-state automaton over {0, 1} recognising base (-1+i) expansions of boundary points.
BuchiAutomaton boundary_automaton_alpha();

/// The same boundary language read four base (-1+i) digits at a time, over the 16-digit alphabet.
BuchiAutomaton boundary_automaton_base4();

/// trim(product(build_line_automaton(line), boundary_automaton_base4())).
BuchiAutomaton boundary_line_automaton(const LineParams& line);

/// Integer value of a line automaton state (its name).
std::int64_t line_state_value(const BuchiAutomaton& a, StateId s);

}  // namespace twindragon
