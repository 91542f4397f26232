#include "doctest.h"

#include <cmath>
#include <random>
#include <set>

#include "twindragon/digits.hpp"
#include "twindragon/geometry.hpp"
#include "twindragon/line_automaton.hpp"
#include "twindragon/verify.hpp"

using namespace twindragon;

TEST_CASE("line normalization") {
    CHECK(normalize_line(1, 0, Rational(-1, 5)) == LineParams{5, 0, -1});
    CHECK(normalize_line(1, 0, Rational(-1, 4)) == LineParams{4, 0, -1});
    CHECK(normalize_line(2, 2, -2) == LineParams{1, 1, -1});
    CHECK(normalize_line(-2, 4, 6) == LineParams{1, -2, -3});
    CHECK(normalize_line(0, -3, 6) == LineParams{0, 1, -2});
    CHECK(normalize_line(Rational(1, 2), Rational(1, 3), 0) == LineParams{3, 2, 0});
    CHECK_THROWS_AS(normalize_line(0, 0, 1), DegenerateLineError);
    CHECK(LineParams{5, 0, -1}.banner() == "Δ_{5,0,-1}");
}

TEST_CASE("state bound") {
    CHECK(state_bound(5, 0) == Rational(5));
    CHECK(state_bound(1, 0) == Rational(1));
    CHECK(state_bound(0, 1) == Rational(1));
    CHECK(state_bound(1, 1) == Rational(5, 3));
}

TEST_CASE("boundary automaton in base -1+i") {
    const BuchiAutomaton a = boundary_automaton_alpha();
    CHECK(a.num_states() == 6);
    CHECK(a.num_edges() == 10);
    CHECK(a.out_edges(*a.find_state("g5")).size() == 1);
    for (StateId s = 0; s < a.num_states(); ++s) {
        CHECK(a.is_initial(s));
        CHECK(a.is_terminal(s));
    }
}

TEST_CASE("boundary automaton in base -4") {
    const BuchiAutomaton alpha = boundary_automaton_alpha();
    const BuchiAutomaton g = boundary_automaton_base4();
    REQUIRE(g.num_states() == 6);
    const StateId g3 = *g.find_state("g3");
    const StateId g4 = *g.find_state("g4");
    auto has_edge = [&](StateId from, GaussianInt value, StateId to) {
        for (const auto& e : g.out_edges(from)) {
            if (g.alphabet()[e.letter] == value && e.dst == to) return true;
        }
        return false;
    };
    CHECK(has_edge(g3, {0, -2}, g4));
    CHECK(has_edge(g4, {2, 3}, g3));

    // Out-degrees are the row sums of the fourth power of the adjacency matrix.
    Eigen::Matrix<std::int64_t, 6, 6> adjacency = Eigen::Matrix<std::int64_t, 6, 6>::Zero();
    for (const auto& e : alpha.edges()) adjacency(e.src, e.dst) += 1;
    const Eigen::Matrix<std::int64_t, 6, 6> fourth = adjacency * adjacency * adjacency * adjacency;
    for (StateId s = 0; s < 6; ++s) {
        CHECK(static_cast<std::int64_t>(g.out_edges(*g.find_state(alpha.name(s))).size()) == fourth.row(s).sum());
    }
    CHECK(g.num_edges() == static_cast<std::size_t>(fourth.sum()));

    // Each letter re-expands to a four-digit path of the base -1+i automaton.
    for (const auto& e : g.edges()) {
        auto bits = alpha_expand(g.alphabet()[e.letter]);
        while (bits.size() < 4) bits.insert(bits.begin(), 0);
        std::set<StateId> at{*alpha.find_state(g.name(e.src))};
        for (auto bit : bits) {
            std::set<StateId> next;
            for (auto s : at) {
                for (const auto& a : alpha.out_edges(s)) {
                    if (a.letter == bit) next.insert(a.dst);
                }
            }
            at = std::move(next);
        }
        CHECK(at.count(*alpha.find_state(g.name(e.dst))) == 1);
    }
}

TEST_CASE("line automaton examples") {
    const BuchiAutomaton fifth = build_line_automaton({5, 0, -1});
    REQUIRE(fifth.num_states() == 1);
    CHECK(fifth.num_edges() == 4);
    CHECK(build_line_automaton({1, 0, 10}).empty());
    CHECK(boundary_line_automaton({1, 0, 10}).empty());
}

TEST_CASE("line automaton prefixes match the state-recursion oracle") {
    std::mt19937 rng(21);
    std::uniform_int_distribution<std::int64_t> coefficient(-3, 3);
    std::uniform_int_distribution<std::size_t> depth(0, 6);
    for (int trial = 0; trial < 60; ++trial) {
        const std::int64_t p = coefficient(rng);
        const std::int64_t q = coefficient(rng);
        if (p == 0 && q == 0) continue;
        const LineParams line = normalize_line(p, q, coefficient(rng));
        const BuchiAutomaton a = build_line_automaton(line);
        const std::size_t n = depth(rng);
        CAPTURE(line.banner());
        CAPTURE(n);
        // Both sides use table order, so letters compare directly.
        REQUIRE(enumerate_prefixes(a, n) == verify::line_prefix_oracle(line, n));
    }
}

TEST_CASE("prefix points stay near the line and states stay bounded") {
    for (const LineParams line : {LineParams{5, 0, -1}, LineParams{1, 1, 0}, LineParams{1, -2, 1}, LineParams{2, 3, -1},
                                  LineParams{0, 1, 0}, LineParams{3, 1, 2}}) {
        const BuchiAutomaton a = build_line_automaton(line);
        const Rational c = state_bound(line.p, line.q);
        for (StateId s = 0; s < a.num_states(); ++s) {
            const std::int64_t value = line_state_value(a, s);
            if (!a.is_initial(s)) CHECK(Rational(std::abs(value)) <= c);
        }
        const std::size_t n = 5;
        const double slack = std::sqrt(13.0) / 3.0 * std::pow(4.0, -static_cast<double>(n)) + 1e-12;
        const double norm = std::hypot(static_cast<double>(line.p), static_cast<double>(line.q));
        for (const auto& word : enumerate_prefixes(a, n)) {
            std::vector<GaussianInt> digits;
            for (auto l : word) digits.push_back(a.alphabet()[l]);
            const ExactPoint pt = eval_prefix(digits);
            const Rational offset = Rational(line.p) * pt.x + Rational(line.q) * pt.y - Rational(line.r);
            REQUIRE(std::abs(offset.to_double()) / norm <= slack);
        }
    }
}

TEST_CASE("untrimmed automaton keeps the initial state outside the bound") {
    const BuchiAutomaton a = build_line_automaton_untrimmed({1, 0, 3});
    const auto start = a.initial_states();
    REQUIRE(start.size() == 1);
    CHECK(line_state_value(a, start[0]) == -3);
    CHECK(a.num_states() == 4);  // -1, 0, 1 and the initial -3
}
