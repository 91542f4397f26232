#include "doctest.h"

#include <map>
#include <random>
#include <set>

#include "json.hpp"
#include "twindragon/buchi.hpp"
#include "twindragon/digits.hpp"
#include "twindragon/line_automaton.hpp"

using namespace twindragon;

namespace {

constexpr Letter kLetters = 3;  // random automata only use the first three digits

struct RawAutomaton {
    std::size_t states;
    std::vector<bool> initial;
    std::vector<Edge> edges;
};

RawAutomaton random_raw(std::mt19937& rng, std::size_t max_states, double density) {
    std::uniform_int_distribution<std::size_t> size(1, max_states);
    std::bernoulli_distribution coin(density);
    std::bernoulli_distribution half(0.5);
    RawAutomaton raw{size(rng), {}, {}};
    for (std::size_t s = 0; s < raw.states; ++s) raw.initial.push_back(half(rng));
    for (StateId s = 0; s < raw.states; ++s) {
        for (Letter l = 0; l < kLetters; ++l) {
            for (StateId t = 0; t < raw.states; ++t) {
                if (coin(rng)) raw.edges.push_back({s, l, t});
            }
        }
    }
    return raw;
}

BuchiAutomaton build(const RawAutomaton& raw) {
    BuchiAutomaton::Builder b(digit_values());
    for (std::size_t s = 0; s < raw.states; ++s) b.add_state("q" + std::to_string(s), raw.initial[s], true);
    for (const auto& e : raw.edges) b.add_edge(e.src, e.letter, e.dst);
    return std::move(b).build();
}

/// States with an infinite walk, by repeated removal of dead ends.
std::vector<bool> live_states(const RawAutomaton& raw) {
    std::vector<bool> live(raw.states, true);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t s = 0; s < raw.states; ++s) {
            if (!live[s]) continue;
            bool any = false;
            for (const auto& e : raw.edges) any = any || (e.src == s && live[e.dst]);
            if (!any) {
                live[s] = false;
                changed = true;
            }
        }
    }
    return live;
}

std::vector<Word> all_words(std::size_t n) {
    std::vector<Word> out{Word{}};
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Word> next;
        for (const auto& w : out) {
            for (Letter l = 0; l < kLetters; ++l) {
                Word v = w;
                v.push_back(l);
                next.push_back(v);
            }
        }
        out = std::move(next);
    }
    return out;
}

/// States reachable from `from` reading w.
std::set<StateId> run(const RawAutomaton& raw, std::set<StateId> from, const Word& w) {
    for (auto l : w) {
        std::set<StateId> next;
        for (const auto& e : raw.edges) {
            if (e.letter == l && from.count(e.src)) next.insert(e.dst);
        }
        from = std::move(next);
    }
    return from;
}

std::set<StateId> initial_set(const RawAutomaton& raw) {
    std::set<StateId> out;
    for (StateId s = 0; s < raw.states; ++s) {
        if (raw.initial[s]) out.insert(s);
    }
    return out;
}

std::vector<Word> oracle_prefixes(const RawAutomaton& raw, std::size_t n) {
    const auto live = live_states(raw);
    std::vector<Word> out;
    for (const auto& w : all_words(n)) {
        for (auto s : run(raw, initial_set(raw), w)) {
            if (live[s]) {
                out.push_back(w);
                break;
            }
        }
    }
    return out;
}

/// Synchronous product built directly from the edge lists.
RawAutomaton raw_product(const RawAutomaton& a, const RawAutomaton& b) {
    RawAutomaton out{a.states * b.states, {}, {}};
    for (std::size_t i = 0; i < a.states; ++i) {
        for (std::size_t j = 0; j < b.states; ++j) out.initial.push_back(a.initial[i] && b.initial[j]);
    }
    for (const auto& ea : a.edges) {
        for (const auto& eb : b.edges) {
            if (ea.letter != eb.letter) continue;
            out.edges.push_back({static_cast<StateId>(ea.src * b.states + eb.src), ea.letter,
                                 static_cast<StateId>(ea.dst * b.states + eb.dst)});
        }
    }
    return out;
}

BuchiAutomaton single_state(const std::vector<Letter>& loops) {
    BuchiAutomaton::Builder b(digit_values());
    const StateId s = b.add_state("u", true, true);
    for (auto l : loops) b.add_edge(s, l, s);
    return std::move(b).build();
}

std::vector<Letter> all_letters() {
    std::vector<Letter> out;
    for (Letter l = 0; l < kDigitCount; ++l) out.push_back(l);
    return out;
}

std::size_t count_lines(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("builder validates and deduplicates") {
    BuchiAutomaton::Builder b(digit_values());
    const StateId s = b.add_state("s", true, true);
    b.add_edge(s, 3, s);
    b.add_edge(s, 3, s);
    CHECK_THROWS_AS(b.add_edge(s, 16, s), PreconditionError);
    CHECK_THROWS_AS(b.add_edge(s, 0, 7), PreconditionError);
    const BuchiAutomaton a = std::move(b).build();
    CHECK(a.num_edges() == 1);
    CHECK(a.find_state("s") == s);
    CHECK_FALSE(a.find_state("t").has_value());
}

TEST_CASE("product with the universal automaton is the identity") {
    std::mt19937 rng(11);
    const BuchiAutomaton universal = single_state(all_letters());
    for (int trial = 0; trial < 30; ++trial) {
        const BuchiAutomaton b = build(random_raw(rng, 4, 0.3));
        const BuchiAutomaton p = product(universal, b);
        CHECK(p.num_states() == b.num_states());
        CHECK(p.num_edges() == b.num_edges());
        const BuchiAutomaton tb = trim(b);
        const BuchiAutomaton tp = trim(p);
        for (std::size_t n = 0; n <= 4; ++n) CHECK(enumerate_prefixes(tp, n) == enumerate_prefixes(tb, n));
    }
}

TEST_CASE("product with an edgeless automaton is empty") {
    std::mt19937 rng(12);
    BuchiAutomaton::Builder b(digit_values());
    b.add_state("dead", true, true);
    const BuchiAutomaton dead = std::move(b).build();
    const BuchiAutomaton other = build(random_raw(rng, 4, 0.5));
    CHECK(trim(product(dead, other)).empty());
}

TEST_CASE("product preconditions") {
    BuchiAutomaton::Builder small({GaussianInt{0}, GaussianInt{1}});
    small.add_state("x", true, true);
    const BuchiAutomaton binary = std::move(small).build();
    CHECK_THROWS_AS(product(binary, single_state({0})), PreconditionError);

    BuchiAutomaton::Builder partial(digit_values());
    partial.add_state("t", true, true);
    partial.add_state("n", true, false);
    const BuchiAutomaton not_all = std::move(partial).build();
    CHECK_THROWS_AS(product(not_all, not_all), PreconditionError);
    CHECK_NOTHROW(product(not_all, single_state({0})));
    CHECK_THROWS_AS(trim(not_all), PreconditionError);
}

TEST_CASE("product language matches a brute-force product") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        const RawAutomaton a = random_raw(rng, 4, 0.25);
        const RawAutomaton b = random_raw(rng, 4, 0.25);
        const BuchiAutomaton p = trim(product(build(a), build(b)));
        const RawAutomaton both = raw_product(a, b);
        for (std::size_t n = 0; n <= 6; ++n) REQUIRE(enumerate_prefixes(p, n) == oracle_prefixes(both, n));
    }
}

TEST_CASE("trim keeps exactly the prefixes of infinite runs") {
    std::mt19937 rng(14);
    for (int trial = 0; trial < 40; ++trial) {
        const RawAutomaton raw = random_raw(rng, 5, 0.15);
        const BuchiAutomaton t = trim(build(raw));
        for (std::size_t n = 0; n <= 8; ++n) REQUIRE(enumerate_prefixes(t, n) == oracle_prefixes(raw, n));
    }
}

TEST_CASE("trim examples") {
    BuchiAutomaton::Builder b(digit_values());
    b.add_state("lonely", true, true);
    CHECK(trim(std::move(b).build()).empty());

    const BuchiAutomaton untrimmed = build_line_automaton_untrimmed({5, 0, -1});
    CHECK(untrimmed.num_states() == 11);  // -5..5, the initial state 1 among them
    const BuchiAutomaton fifth = trim(untrimmed);
    REQUIRE(fifth.num_states() == 1);
    CHECK(fifth.name(0) == "1");
    std::set<GaussianInt> labels;
    for (const auto& e : fifth.edges()) {
        CHECK(e.dst == 0);
        labels.insert(fifth.alphabet()[e.letter]);
    }
    CHECK(labels == std::set<GaussianInt>{{1, -2}, {1, 0}, {1, 1}, {1, 3}});

    const BuchiAutomaton zero = build_line_automaton({1, 0, 0});
    REQUIRE(zero.num_states() == 1);
    CHECK(zero.name(0) == "0");
    labels.clear();
    for (const auto& e : zero.edges()) labels.insert(zero.alphabet()[e.letter]);
    CHECK(labels == std::set<GaussianInt>{{0, -2}, {0, -1}, {0, 0}, {0, 1}});
}

TEST_CASE("scc decomposition examples") {
    BuchiAutomaton::Builder two(digit_values());
    two.add_state("a", true, true);
    two.add_state("b", true, true);
    two.add_edge(0, 0, 1);
    two.add_edge(1, 0, 0);
    const SccDecomposition cycle = scc_decompose(std::move(two).build());
    REQUIRE(cycle.components.size() == 1);
    IncidenceMatrix swap(2, 2);
    swap << 0, 1, 1, 0;
    CHECK(cycle.incidence[0] == swap);

    BuchiAutomaton::Builder dag(digit_values());
    for (int i = 0; i < 4; ++i) dag.add_state("d" + std::to_string(i), i == 0, true);
    dag.add_edge(0, 0, 1);
    dag.add_edge(0, 1, 2);
    dag.add_edge(1, 0, 3);
    dag.add_edge(2, 0, 3);
    const SccDecomposition acyclic = scc_decompose(std::move(dag).build());
    CHECK(acyclic.components.size() == 4);
    for (std::size_t c = 0; c < 4; ++c) {
        CHECK_FALSE(acyclic.is_cyclic(c));
        CHECK(acyclic.incidence[c] == IncidenceMatrix::Zero(1, 1));
    }
    // Topological order: the source comes first.
    CHECK(acyclic.component_of[0] == 0);

    const BuchiAutomaton fifth = boundary_line_automaton({5, 0, -1});
    const SccDecomposition f = scc_decompose(fifth);
    REQUIRE(f.components.size() == 1);
    IncidenceMatrix expected(2, 2);
    expected << 1, 2, 2, 1;
    CHECK(f.incidence[0] == expected);
}

TEST_CASE("scc incidence rows count edges inside the component") {
    std::mt19937 rng(15);
    for (int trial = 0; trial < 50; ++trial) {
        const BuchiAutomaton a = build(random_raw(rng, 6, 0.1));
        const SccDecomposition scc = scc_decompose(a);
        std::size_t total = 0;
        for (const auto& comp : scc.components) total += comp.size();
        CHECK(total == a.num_states());
        for (std::size_t c = 0; c < scc.components.size(); ++c) {
            for (auto next : scc.condensation[c]) CHECK(next > c);
            for (auto s : scc.components[c]) {
                std::int64_t inside = 0;
                for (const auto& e : a.out_edges(s)) inside += scc.component_of[e.dst] == c;
                CHECK(scc.incidence[c].row(static_cast<Eigen::Index>(scc.local_index(s))).sum() == inside);
            }
        }
    }
}

TEST_CASE("cardinality classification") {
    BuchiAutomaton::Builder empty(digit_values());
    const Cardinality none = classify_cardinality(std::move(empty).build());
    CHECK(none.kind == Cardinality::Kind::finite);
    CHECK(none.count == 0);

    const Cardinality two = classify_cardinality(boundary_line_automaton({1, 0, 0}));
    CHECK(two.kind == Cardinality::Kind::finite);
    CHECK(two.count == 2);
    CHECK(two.to_string() == "finite(2)");

    CHECK(classify_cardinality(boundary_line_automaton({5, 0, -1})).kind == Cardinality::Kind::uncountable);

    // 0^ω and 0^k 1^ω for every k.
    BuchiAutomaton::Builder lasso(digit_values());
    lasso.add_state("a", true, true);
    lasso.add_state("b", false, true);
    lasso.add_edge(0, 0, 0);
    lasso.add_edge(0, 1, 1);
    lasso.add_edge(1, 1, 1);
    CHECK(classify_cardinality(std::move(lasso).build()).kind == Cardinality::Kind::countably_infinite);

    BuchiAutomaton::Builder untrimmed(digit_values());
    untrimmed.add_state("x", true, true);
    CHECK_THROWS_AS(classify_cardinality(std::move(untrimmed).build()), PreconditionError);
}

TEST_CASE("finite cardinality bounds the number of long prefixes") {
    std::mt19937 rng(16);
    int finite_seen = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const BuchiAutomaton a = trim(build(random_raw(rng, 5, 0.08)));
        const Cardinality c = classify_cardinality(a);
        if (c.kind != Cardinality::Kind::finite) continue;
        ++finite_seen;
        for (std::size_t n = a.num_states(); n <= a.num_states() + 3; ++n) {
            REQUIRE(enumerate_prefixes(a, n).size() == c.count);
        }
        for (const auto& w : c.words) CHECK(accepts(a, w));
    }
    CHECK(finite_seen > 20);
}

TEST_CASE("omega word equality") {
    CHECK(same_omega_word({{0}, {1, 0}}, {{}, {0, 1}}));
    CHECK(same_omega_word({{}, {2}}, {{2, 2}, {2, 2, 2}}));
    CHECK_FALSE(same_omega_word({{}, {0, 1}}, {{}, {1, 0}}));
}

TEST_CASE("acceptance of lasso words") {
    const BuchiAutomaton zero = boundary_line_automaton({1, 0, 0});
    const Letter minus_2i = static_cast<Letter>(*find_digit({0, -2}));
    const Letter i = static_cast<Letter>(*find_digit({0, 1}));
    CHECK(accepts(zero, {{}, {minus_2i, i}}));
    CHECK(accepts(zero, {{i}, {minus_2i, i}}));
    CHECK_FALSE(accepts(zero, {{}, {minus_2i}}));
    CHECK_THROWS_AS(accepts(zero, {{}, {}}), PreconditionError);
}

TEST_CASE("prefix enumeration examples") {
    CHECK(enumerate_prefixes(build_line_automaton({5, 0, -1}), 0) == std::vector<Word>{Word{}});
    const auto ones = enumerate_prefixes(build_line_automaton({5, 0, -1}), 1);
    REQUIRE(ones.size() == 4);
    for (const auto& w : ones) CHECK(digit_table()[w[0]].value.re == 1);

    // Two digits b1 b2 start a point on x = 0 iff the remaining tail, which is
    // 1/16 times a point of K, can bring Re back to 0.
    std::set<Word> brute;
    for (Letter a = 0; a < 16; ++a) {
        for (Letter b = 0; b < 16; ++b) {
            const Rational x = Rational(digit_table()[a].value.re, -4) + Rational(digit_table()[b].value.re, 16);
            const Rational tail = -x * Rational(16);
            if (Rational(-13, 15) <= tail && tail <= Rational(7, 15)) brute.insert({a, b});
        }
    }
    const auto pairs = enumerate_prefixes(build_line_automaton({1, 0, 0}), 2);
    CHECK(pairs.size() == 16);
    CHECK(std::set<Word>(pairs.begin(), pairs.end()) == brute);
}

TEST_CASE("export formats") {
    BuchiAutomaton::Builder nothing(digit_values());
    const std::string empty_json = export_automaton(std::move(nothing).build(), ExportFormat::json);
    CHECK(empty_json.find("\"states\": []") != std::string::npos);

    const BuchiAutomaton alpha = boundary_automaton_alpha();
    const std::string dot = export_automaton(alpha, ExportFormat::graph);
    CHECK(count_lines(dot, "[initial=true, terminal=true]") == 6);
    CHECK(count_lines(dot, " -> ") == 10);
    std::set<std::pair<StateId, StateId>> arcs;
    for (const auto& e : alpha.edges()) arcs.insert({e.src, e.dst});
    CHECK(arcs.size() == 8);
    CHECK(dot.find("\"g5\" -> \"g6\" [label=\"0\"];") != std::string::npos);

    const BuchiAutomaton fifth = boundary_line_automaton({5, 0, -1});
    const std::string fifth_dot = export_automaton(fifth, ExportFormat::graph);
    CHECK(count_lines(fifth_dot, " -> ") == 6);
    CHECK(fifth_dot == export_automaton(boundary_line_automaton({5, 0, -1}), ExportFormat::graph));

    const auto doc = nlohmann::json::parse(export_automaton(fifth, ExportFormat::json));
    CHECK(doc["states"].size() == 2);
    CHECK(doc["edges"].size() == 6);
    CHECK(doc["alphabet"].size() == 16);
    CHECK(doc["alphabet"][11] == nlohmann::json{{"im", 3}, {"re", 2}});
    CHECK(doc["initial"].size() == 2);
    CHECK(doc["terminal"].size() == 2);
}
