#include "twindragon/buchi.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "twindragon/detail/scc.hpp"
#include "twindragon/error.hpp"

namespace twindragon {

// ---------------------------------------------------------------- automaton

bool BuchiAutomaton::all_terminal() const {
    return std::all_of(terminal_.begin(), terminal_.end(), [](bool t) { return t; });
}

std::vector<StateId> BuchiAutomaton::initial_states() const {
    std::vector<StateId> out;
    for (StateId s = 0; s < num_states(); ++s) {
        if (initial_[s]) out.push_back(s);
    }
    return out;
}

std::optional<StateId> BuchiAutomaton::find_state(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<StateId>(it - names_.begin());
}

StateId BuchiAutomaton::Builder::add_state(std::string name, bool initial, bool terminal) {
    names_.push_back(std::move(name));
    initial_.push_back(initial);
    terminal_.push_back(terminal);
    return static_cast<StateId>(names_.size() - 1);
}

void BuchiAutomaton::Builder::add_edge(StateId src, Letter letter, StateId dst) {
    if (src >= names_.size() || dst >= names_.size()) {
        throw PreconditionError("edge endpoint is not a declared state");
    }
    if (letter >= alphabet_.size()) throw PreconditionError("edge letter outside the alphabet");
    edges_.push_back({src, letter, dst});
}

BuchiAutomaton BuchiAutomaton::Builder::build() && {
    BuchiAutomaton a;
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    a.alphabet_ = std::move(alphabet_);
    a.names_ = std::move(names_);
    a.initial_ = std::move(initial_);
    a.terminal_ = std::move(terminal_);
    a.edges_ = std::move(edges_);
    a.offsets_.assign(a.names_.size() + 1, 0);
    for (const auto& e : a.edges_) ++a.offsets_[e.src + 1];
    std::partial_sum(a.offsets_.begin(), a.offsets_.end(), a.offsets_.begin());
    return a;
}

// ------------------------------------------------------------------ product

BuchiAutomaton product(const BuchiAutomaton& a, const BuchiAutomaton& b) {
    if (a.alphabet() != b.alphabet()) throw PreconditionError("product: alphabets differ");
    if (!a.all_terminal() && !b.all_terminal()) {
        throw PreconditionError("product: one operand must have only terminal states");
    }
    BuchiAutomaton::Builder builder(a.alphabet());
    const std::size_t nb = b.num_states();
    for (StateId i = 0; i < a.num_states(); ++i) {
        for (StateId j = 0; j < nb; ++j) {
            builder.add_state("(" + a.name(i) + "," + b.name(j) + ")", a.is_initial(i) && b.is_initial(j),
                              a.is_terminal(i) && b.is_terminal(j));
        }
    }
    auto pair_id = [nb](StateId i, StateId j) { return static_cast<StateId>(i * nb + j); };
    for (StateId i = 0; i < a.num_states(); ++i) {
        for (StateId j = 0; j < nb; ++j) {
            // Both edge lists are sorted by letter: merge on the letter.
            auto ea = a.out_edges(i);
            auto eb = b.out_edges(j);
            std::size_t p = 0;
            std::size_t q = 0;
            while (p < ea.size() && q < eb.size()) {
                if (ea[p].letter < eb[q].letter) {
                    ++p;
                } else if (eb[q].letter < ea[p].letter) {
                    ++q;
                } else {
                    const Letter d = ea[p].letter;
                    std::size_t p_end = p;
                    while (p_end < ea.size() && ea[p_end].letter == d) ++p_end;
                    std::size_t q_end = q;
                    while (q_end < eb.size() && eb[q_end].letter == d) ++q_end;
                    for (std::size_t x = p; x < p_end; ++x) {
                        for (std::size_t y = q; y < q_end; ++y) {
                            builder.add_edge(pair_id(i, j), d, pair_id(ea[x].dst, eb[y].dst));
                        }
                    }
                    p = p_end;
                    q = q_end;
                }
            }
        }
    }
    return std::move(builder).build();
}

// --------------------------------------------------------------------- trim

namespace {

std::vector<std::vector<std::size_t>> successor_lists(const BuchiAutomaton& a) {
    std::vector<std::vector<std::size_t>> succ(a.num_states());
    for (const auto& e : a.edges()) succ[e.src].push_back(e.dst);
    for (auto& s : succ) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    return succ;
}

std::vector<bool> forward_reachable(const BuchiAutomaton& a) {
    std::vector<bool> seen(a.num_states(), false);
    std::vector<StateId> stack = a.initial_states();
    for (auto s : stack) seen[s] = true;
    while (!stack.empty()) {
        const StateId s = stack.back();
        stack.pop_back();
        for (const auto& e : a.out_edges(s)) {
            if (!seen[e.dst]) {
                seen[e.dst] = true;
                stack.push_back(e.dst);
            }
        }
    }
    return seen;
}

/// States from which some cycle is reachable.
std::vector<bool> reaches_cycle(const BuchiAutomaton& a) {
    const SccDecomposition scc = scc_decompose(a);
    std::vector<std::vector<StateId>> pred(a.num_states());
    for (const auto& e : a.edges()) pred[e.dst].push_back(e.src);
    std::vector<bool> live(a.num_states(), false);
    std::vector<StateId> stack;
    for (StateId s = 0; s < a.num_states(); ++s) {
        if (scc.is_cyclic(scc.component_of[s])) {
            live[s] = true;
            stack.push_back(s);
        }
    }
    while (!stack.empty()) {
        const StateId s = stack.back();
        stack.pop_back();
        for (auto p : pred[s]) {
            if (!live[p]) {
                live[p] = true;
                stack.push_back(p);
            }
        }
    }
    return live;
}

bool is_trimmed(const BuchiAutomaton& a) {
    const auto fwd = forward_reachable(a);
    const auto live = reaches_cycle(a);
    for (StateId s = 0; s < a.num_states(); ++s) {
        if (!fwd[s] || !live[s]) return false;
    }
    return true;
}

}  // namespace

BuchiAutomaton restrict_states(const BuchiAutomaton& a, const std::vector<bool>& keep) {
    BuchiAutomaton::Builder builder(a.alphabet());
    std::vector<StateId> renumber(a.num_states(), 0);
    for (StateId s = 0; s < a.num_states(); ++s) {
        if (keep[s]) renumber[s] = builder.add_state(a.name(s), a.is_initial(s), a.is_terminal(s));
    }
    for (const auto& e : a.edges()) {
        if (keep[e.src] && keep[e.dst]) builder.add_edge(renumber[e.src], e.letter, renumber[e.dst]);
    }
    return std::move(builder).build();
}

BuchiAutomaton trim(const BuchiAutomaton& a) {
    if (!a.all_terminal()) throw PreconditionError("trim: automaton must have only terminal states");
    const auto fwd = forward_reachable(a);
    const auto live = reaches_cycle(a);
    std::vector<bool> keep(a.num_states());
    for (StateId s = 0; s < a.num_states(); ++s) keep[s] = fwd[s] && live[s];
    return restrict_states(a, keep);
}

// ---------------------------------------------------------------------- scc

bool SccDecomposition::is_cyclic(std::size_t c) const {
    if (components[c].size() > 1) return true;
    return incidence[c](0, 0) > 0;
}

std::size_t SccDecomposition::local_index(StateId s) const {
    const auto& comp = components[component_of[s]];
    return static_cast<std::size_t>(std::lower_bound(comp.begin(), comp.end(), s) - comp.begin());
}

SccDecomposition scc_decompose(const BuchiAutomaton& a) {
    const auto succ = successor_lists(a);
    auto raw = detail::strongly_connected_components(a.num_states(), [&](std::size_t v) { return succ[v]; });

    SccDecomposition out;
    out.component_of.assign(a.num_states(), 0);
    out.components.reserve(raw.size());
    for (std::size_t c = 0; c < raw.size(); ++c) {
        std::vector<StateId> comp(raw[c].begin(), raw[c].end());
        for (auto s : comp) out.component_of[s] = c;
        out.components.push_back(std::move(comp));
    }
    out.condensation.assign(out.components.size(), {});
    out.incidence.reserve(out.components.size());
    for (const auto& comp : out.components) {
        const auto n = static_cast<Eigen::Index>(comp.size());
        out.incidence.push_back(IncidenceMatrix::Zero(n, n));
    }
    for (const auto& e : a.edges()) {
        const std::size_t cs = out.component_of[e.src];
        const std::size_t cd = out.component_of[e.dst];
        if (cs == cd) {
            out.incidence[cs](static_cast<Eigen::Index>(out.local_index(e.src)),
                              static_cast<Eigen::Index>(out.local_index(e.dst))) += 1;
        } else {
            out.condensation[cs].push_back(cd);
        }
    }
    for (auto& next : out.condensation) {
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
    }
    return out;
}

// -------------------------------------------------------------- cardinality

namespace {

Letter letter_at(const LassoWord& w, std::size_t i) {
    if (i < w.prefix.size()) return w.prefix[i];
    return w.period[(i - w.prefix.size()) % w.period.size()];
}

}  // namespace

bool same_omega_word(const LassoWord& a, const LassoWord& b) {
    if (a.period.empty() || b.period.empty()) throw PreconditionError("lasso word with empty period");
    // Two eventually periodic words agreeing on this many letters are equal.
    const std::size_t horizon =
        std::max(a.prefix.size(), b.prefix.size()) + a.period.size() * b.period.size();
    for (std::size_t i = 0; i < horizon; ++i) {
        if (letter_at(a, i) != letter_at(b, i)) return false;
    }
    return true;
}

std::string Cardinality::to_string() const {
    switch (kind) {
        case Kind::finite:
            return "finite(" + std::to_string(count) + ")";
        case Kind::countably_infinite:
            return "countably-infinite";
        case Kind::uncountable:
            return "uncountable";
    }
    return "unknown";
}

Cardinality classify_cardinality(const BuchiAutomaton& a) {
    if (!a.all_terminal()) throw PreconditionError("classify_cardinality: automaton must be all-terminal");
    if (!is_trimmed(a)) throw PreconditionError("classify_cardinality: automaton is not trimmed");
    Cardinality result;
    if (a.empty()) return result;

    const SccDecomposition scc = scc_decompose(a);
    for (std::size_t c = 0; c < scc.components.size(); ++c) {
        if (!scc.is_cyclic(c)) continue;
        for (auto s : scc.components[c]) {
            std::size_t inside = 0;
            for (const auto& e : a.out_edges(s)) inside += scc.component_of[e.dst] == c ? 1 : 0;
            if (inside >= 2) {
                result.kind = Cardinality::Kind::uncountable;
                return result;
            }
        }
    }
    for (std::size_t c = 0; c < scc.components.size(); ++c) {
        // Trimmed: any exit from a cycle leads on to another cycle.
        if (scc.is_cyclic(c) && !scc.condensation[c].empty()) {
            result.kind = Cardinality::Kind::countably_infinite;
            return result;
        }
    }

    // Every cycle is simple and terminal: each run is a DAG path into one cycle.
    auto cycle_from = [&](StateId start) {
        Word period;
        StateId s = start;
        do {
            const Edge& e = a.out_edges(s).front();
            period.push_back(e.letter);
            s = e.dst;
        } while (s != start);
        return period;
    };
    std::vector<LassoWord> words;
    Word path;
    std::function<void(StateId)> walk = [&](StateId s) {
        if (scc.is_cyclic(scc.component_of[s])) {
            LassoWord w{path, cycle_from(s)};
            const bool seen = std::any_of(words.begin(), words.end(),
                                          [&](const LassoWord& other) { return same_omega_word(w, other); });
            if (!seen) words.push_back(std::move(w));
            return;
        }
        for (const auto& e : a.out_edges(s)) {
            path.push_back(e.letter);
            walk(e.dst);
            path.pop_back();
        }
    };
    for (auto s : a.initial_states()) walk(s);
    result.count = words.size();
    result.words = std::move(words);
    return result;
}

// ----------------------------------------------------------------- prefixes

namespace {

void prefixes_small(const BuchiAutomaton& a, std::size_t n,
                    const std::function<void(std::span<const Letter>)>& visit) {
    const std::size_t k = a.alphabet().size();
    std::vector<std::uint64_t> succ(a.num_states() * k, 0);
    for (const auto& e : a.edges()) succ[e.src * k + e.letter] |= std::uint64_t{1} << e.dst;
    std::uint64_t start = 0;
    for (auto s : a.initial_states()) start |= std::uint64_t{1} << s;
    if (start == 0) return;

    Word word(n);
    auto step = [&](std::uint64_t set, Letter l) {
        std::uint64_t next = 0;
        while (set != 0) {
            const int s = __builtin_ctzll(set);
            set &= set - 1;
            next |= succ[static_cast<std::size_t>(s) * k + l];
        }
        return next;
    };
    std::function<void(std::uint64_t, std::size_t)> rec = [&](std::uint64_t set, std::size_t depth) {
        if (depth == n) {
            visit(word);
            return;
        }
        for (Letter l = 0; l < k; ++l) {
            const std::uint64_t next = step(set, l);
            if (next == 0) continue;
            word[depth] = l;
            rec(next, depth + 1);
        }
    };
    rec(start, 0);
}

void prefixes_general(const BuchiAutomaton& a, std::size_t n,
                      const std::function<void(std::span<const Letter>)>& visit) {
    const std::size_t k = a.alphabet().size();
    std::vector<StateId> start = a.initial_states();
    if (start.empty()) return;
    Word word(n);
    std::function<void(const std::vector<StateId>&, std::size_t)> rec = [&](const std::vector<StateId>& set,
                                                                               std::size_t depth) {
        if (depth == n) {
            visit(word);
            return;
        }
        std::vector<std::vector<StateId>> buckets(k);
        for (auto s : set) {
            for (const auto& e : a.out_edges(s)) buckets[e.letter].push_back(e.dst);
        }
        for (Letter l = 0; l < k; ++l) {
            auto& next = buckets[l];
            if (next.empty()) continue;
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            word[depth] = l;
            rec(next, depth + 1);
        }
    };
    rec(start, 0);
}

}  // namespace

void for_each_prefix(const BuchiAutomaton& a, std::size_t n,
                     const std::function<void(std::span<const Letter>)>& visit) {
    if (a.num_states() <= 64) {
        prefixes_small(a, n, visit);
    } else {
        prefixes_general(a, n, visit);
    }
}

std::vector<Word> enumerate_prefixes(const BuchiAutomaton& a, std::size_t n) {
    std::vector<Word> out;
    for_each_prefix(a, n, [&](std::span<const Letter> w) { out.emplace_back(w.begin(), w.end()); });
    return out;
}

bool accepts(const BuchiAutomaton& a, const LassoWord& word) {
    if (!a.all_terminal()) throw PreconditionError("accepts: automaton must be all-terminal");
    if (word.period.empty()) throw PreconditionError("accepts: empty period");
    const std::size_t n = a.num_states();
    auto step = [&](const std::vector<bool>& from, Letter l) {
        std::vector<bool> to(n, false);
        for (StateId s = 0; s < n; ++s) {
            if (!from[s]) continue;
            for (const auto& e : a.out_edges(s)) {
                if (e.letter == l) to[e.dst] = true;
            }
        }
        return to;
    };
    std::vector<bool> current(n, false);
    for (auto s : a.initial_states()) current[s] = true;
    for (auto l : word.prefix) current = step(current, l);

    // Greatest set X such that every state of X reads the period into X.
    std::vector<bool> stable(n, true);
    for (;;) {
        std::vector<bool> next(n, false);
        for (StateId s = 0; s < n; ++s) {
            if (!stable[s]) continue;
            std::vector<bool> reach(n, false);
            reach[s] = true;
            for (auto l : word.period) reach = step(reach, l);
            for (StateId t = 0; t < n; ++t) {
                if (reach[t] && stable[t]) {
                    next[s] = true;
                    break;
                }
            }
        }
        if (next == stable) break;
        stable = std::move(next);
    }
    for (StateId s = 0; s < n; ++s) {
        if (current[s] && stable[s]) return true;
    }
    return false;
}

// ------------------------------------------------------------------- export

std::string export_automaton(const BuchiAutomaton& a, ExportFormat format) {
    std::vector<StateId> order(a.num_states());
    std::iota(order.begin(), order.end(), StateId{0});
    std::sort(order.begin(), order.end(), [&](StateId x, StateId y) { return a.name(x) < a.name(y); });
    std::vector<StateId> rank(a.num_states());
    for (StateId i = 0; i < order.size(); ++i) rank[order[i]] = i;

    std::vector<Edge> edges;
    edges.reserve(a.num_edges());
    for (const auto& e : a.edges()) edges.push_back({rank[e.src], e.letter, rank[e.dst]});
    std::sort(edges.begin(), edges.end());

    if (format == ExportFormat::json) {
        nlohmann::json doc;
        doc["states"] = nlohmann::json::array();
        doc["initial"] = nlohmann::json::array();
        doc["terminal"] = nlohmann::json::array();
        for (StateId i = 0; i < order.size(); ++i) {
            doc["states"].push_back(a.name(order[i]));
            if (a.is_initial(order[i])) doc["initial"].push_back(i);
            if (a.is_terminal(order[i])) doc["terminal"].push_back(i);
        }
        doc["alphabet"] = nlohmann::json::array();
        for (const auto& d : a.alphabet()) doc["alphabet"].push_back({{"re", d.re}, {"im", d.im}});
        doc["edges"] = nlohmann::json::array();
        for (const auto& e : edges) doc["edges"].push_back({e.src, e.letter, e.dst});
        return doc.dump(2) + "\n";
    }

    std::ostringstream os;
    os << "digraph buchi {\n";
    for (StateId i = 0; i < order.size(); ++i) {
        const StateId s = order[i];
        os << "  \"" << a.name(s) << "\"";
        std::vector<std::string> attrs;
        if (a.is_initial(s)) attrs.emplace_back("initial=true");
        if (a.is_terminal(s)) attrs.emplace_back("terminal=true");
        if (!attrs.empty()) {
            os << " [";
            for (std::size_t j = 0; j < attrs.size(); ++j) os << (j ? ", " : "") << attrs[j];
            os << "]";
        }
        os << ";\n";
    }
    for (const auto& e : edges) {
        os << "  \"" << a.name(order[e.src]) << "\" -> \"" << a.name(order[e.dst]) << "\" [label=\""
           << a.alphabet()[e.letter].to_string() << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace twindragon
