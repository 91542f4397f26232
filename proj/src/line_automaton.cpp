#include "twindragon/line_automaton.hpp"

#include <map>
#include <numeric>

#include "twindragon/digits.hpp"
#include "twindragon/error.hpp"

namespace twindragon {

std::string LineParams::banner() const {
    return "Δ_{" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) + "}";
}

LineParams normalize_line(const Rational& p, const Rational& q, const Rational& r) {
    if (p.num() == 0 && q.num() == 0) throw DegenerateLineError("line with p = q = 0");
    std::int64_t den = 1;
    for (const Rational* x : {&p, &q, &r}) {
        den = checked::mul(den / std::gcd(den, x->den()), x->den());
    }
    auto scaled = [den](const Rational& x) { return checked::mul(x.num(), den / x.den()); };
    LineParams line{scaled(p), scaled(q), scaled(r)};
    const std::int64_t g = std::gcd(std::gcd(line.p, line.q), line.r);
    line.p /= g;
    line.q /= g;
    line.r /= g;
    const std::int64_t lead = line.p != 0 ? line.p : line.q;
    if (lead < 0) {
        line.p = -line.p;
        line.q = -line.q;
        line.r = -line.r;
    }
    return line;
}

Rational state_bound(std::int64_t p, std::int64_t q) {
    std::int64_t best = 0;
    for (const auto& block : digit_table()) {
        const std::int64_t v = checked::add(checked::mul(p, block.value.re), checked::mul(q, block.value.im));
        best = std::max(best, v < 0 ? checked::neg(v) : v);
    }
    return Rational(best, 3);
}

BuchiAutomaton build_line_automaton_untrimmed(const LineParams& line) {
    if (line.p == 0 && line.q == 0) throw DegenerateLineError("line with p = q = 0");
    const Rational c = state_bound(line.p, line.q);
    const std::int64_t bound = c.num() / c.den();  // floor, c >= 0
    const std::int64_t start = checked::neg(line.r);

    BuchiAutomaton::Builder builder(digit_values());
    std::map<std::int64_t, StateId> id;
    for (std::int64_t s = -bound; s <= bound; ++s) id[s] = builder.add_state(std::to_string(s), s == start, true);
    if (!id.contains(start)) id[start] = builder.add_state(std::to_string(start), true, true);

    const auto& table = digit_table();
    for (const auto& [s, from] : id) {
        for (Letter l = 0; l < table.size(); ++l) {
            const GaussianInt b = table[l].value;
            const std::int64_t next = checked::sub(
                checked::add(checked::mul(line.p, b.re), checked::mul(line.q, b.im)), checked::mul(4, s));
            if (next < -bound || next > bound) continue;
            builder.add_edge(from, l, id.at(next));
        }
    }
    return std::move(builder).build();
}

BuchiAutomaton build_line_automaton(const LineParams& line) { return trim(build_line_automaton_untrimmed(line)); }

BuchiAutomaton boundary_automaton_alpha() {
    BuchiAutomaton::Builder builder({GaussianInt{0}, GaussianInt{1}});
    StateId g[7];
    for (int i = 1; i <= 6; ++i) g[i] = builder.add_state("g" + std::to_string(i), true, true);
    struct Arc {
        int from;
        Letter digit;
        int to;
    };
    static constexpr Arc kArcs[] = {{2, 1, 1}, {1, 0, 3}, {3, 0, 2}, {3, 1, 2}, {3, 0, 4},
                                    {4, 1, 3}, {4, 0, 5}, {4, 1, 5}, {5, 0, 6}, {6, 1, 4}};
    for (const auto& arc : kArcs) builder.add_edge(g[arc.from], arc.digit, g[arc.to]);
    return std::move(builder).build();
}

BuchiAutomaton boundary_automaton_base4() {
    const BuchiAutomaton alpha = boundary_automaton_alpha();
    BuchiAutomaton::Builder builder(digit_values());
    for (StateId s = 0; s < alpha.num_states(); ++s) builder.add_state(alpha.name(s), true, true);

    std::uint8_t bits[4];
    auto walk = [&](auto&& self, StateId origin, StateId at, std::size_t depth) -> void {
        if (depth == 4) {
            // Table order is the bit order, so the block's index is its binary value.
            const auto letter = static_cast<Letter>(8 * bits[0] + 4 * bits[1] + 2 * bits[2] + bits[3]);
            builder.add_edge(origin, letter, at);
            return;
        }
        for (const auto& e : alpha.out_edges(at)) {
            bits[depth] = static_cast<std::uint8_t>(e.letter);
            self(self, origin, e.dst, depth + 1);
        }
    };
    for (StateId s = 0; s < alpha.num_states(); ++s) walk(walk, s, s, 0);
    return std::move(builder).build();
}

BuchiAutomaton boundary_line_automaton(const LineParams& line) {
    return trim(product(build_line_automaton(line), boundary_automaton_base4()));
}

std::int64_t line_state_value(const BuchiAutomaton& a, StateId s) { return std::stoll(a.name(s)); }

}  // namespace twindragon
