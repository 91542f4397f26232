#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "twindragon/gaussian.hpp"

namespace twindragon {

using StateId = std::uint32_t;
using Letter = std::uint32_t;
using Word = std::vector<Letter>;

struct Edge {
    StateId src;
    Letter letter;
    StateId dst;

    friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

/// Büchi automaton (Q, A, E, I, T). Letters are indices into `alphabet()`,
/// whose entries are the complex digits the letters stand for.
/// Immutable; construct through BuchiAutomaton::Builder.
class BuchiAutomaton {
public:
    class Builder;

    BuchiAutomaton() = default;

    std::size_t num_states() const { return names_.size(); }
    std::size_t num_edges() const { return edges_.size(); }
    bool empty() const { return names_.empty(); }

    const std::vector<GaussianInt>& alphabet() const { return alphabet_; }
    const std::string& name(StateId s) const { return names_[s]; }
    bool is_initial(StateId s) const { return initial_[s]; }
    bool is_terminal(StateId s) const { return terminal_[s]; }
    bool all_terminal() const;
    std::vector<StateId> initial_states() const;
    std::optional<StateId> find_state(const std::string& name) const;

    /// All edges, sorted by (src, letter, dst).
    std::span<const Edge> edges() const { return edges_; }
    /// Edges leaving `s`, sorted by (letter, dst).
    std::span<const Edge> out_edges(StateId s) const {
        return std::span<const Edge>(edges_).subspan(offsets_[s], offsets_[s + 1] - offsets_[s]);
    }

private:
    std::vector<GaussianInt> alphabet_;
    std::vector<std::string> names_;
    std::vector<bool> initial_;
    std::vector<bool> terminal_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
};

class BuchiAutomaton::Builder {
public:
    explicit Builder(std::vector<GaussianInt> alphabet) : alphabet_(std::move(alphabet)) {}

    StateId add_state(std::string name, bool initial, bool terminal);
    /// Duplicate (src, letter, dst) triples are stored once.
    void add_edge(StateId src, Letter letter, StateId dst);
    std::size_t num_states() const { return names_.size(); }

    BuchiAutomaton build() &&;

private:
    std::vector<GaussianInt> alphabet_;
    std::vector<std::string> names_;
    std::vector<bool> initial_;
    std::vector<bool> terminal_;
    std::vector<Edge> edges_;
};

/// Synchronous product accepting L(a) ∩ L(b). One operand must be all-terminal.
BuchiAutomaton product(const BuchiAutomaton& a, const BuchiAutomaton& b);

/// Restriction to states reachable from an initial state that also reach a cycle.
/// Requires an all-terminal automaton; the ω-language is unchanged.
BuchiAutomaton trim(const BuchiAutomaton& a);

/// Induced sub-automaton on the states with keep[s] true, ids renumbered in order.
BuchiAutomaton restrict_states(const BuchiAutomaton& a, const std::vector<bool>& keep);

using IncidenceMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

struct SccDecomposition {
    /// Components in topological order of the condensation; states sorted inside.
    std::vector<std::vector<StateId>> components;
    std::vector<std::size_t> component_of;
    /// Condensation DAG: successor components, sorted, no self entries.
    std::vector<std::vector<std::size_t>> condensation;
    /// Entry (i, j) counts labelled edges from components[c][i] to components[c][j].
    std::vector<IncidenceMatrix> incidence;

    /// True when the component carries a cycle (size > 1 or a self loop).
    bool is_cyclic(std::size_t c) const;
    /// Index of `s` inside its component.
    std::size_t local_index(StateId s) const;
};

SccDecomposition scc_decompose(const BuchiAutomaton& a);

/// Eventually periodic word prefix · period^ω.
struct LassoWord {
    Word prefix;
    Word period;
};

/// Equality of the infinite words u v^ω and u' v'^ω.
bool same_omega_word(const LassoWord& a, const LassoWord& b);

struct Cardinality {
    enum class Kind { finite, countably_infinite, uncountable };
    Kind kind = Kind::finite;
    /// Number of accepted ω-words; meaningful for Kind::finite only.
    std::size_t count = 0;
    /// The accepted words when finite, pairwise distinct.
    std::vector<LassoWord> words;

    std::string to_string() const;
};

/// Cardinality of the ω-language of a trimmed all-terminal automaton.
Cardinality classify_cardinality(const BuchiAutomaton& a);

/// Calls `visit` once per distinct length-n word labelling a path from an initial state.
/// For a trimmed automaton these are exactly the length-n prefixes of accepted words.
void for_each_prefix(const BuchiAutomaton& a, std::size_t n, const std::function<void(std::span<const Letter>)>& visit);

/// Sorted length-n prefixes of accepted words. Requires a trimmed automaton.
std::vector<Word> enumerate_prefixes(const BuchiAutomaton& a, std::size_t n);

/// Whether the all-terminal automaton has an infinite run labelled prefix · period^ω.
bool accepts(const BuchiAutomaton& a, const LassoWord& word);

enum class ExportFormat { graph, json };

/// Deterministic text form: states sorted by name, edges sorted lexicographically.
std::string export_automaton(const BuchiAutomaton& a, ExportFormat format);

}  // namespace twindragon
