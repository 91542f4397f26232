#include "twindragon/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>

#include "twindragon/error.hpp"

namespace twindragon {

// ------------------------------------------------------------ interval sets

IntervalUnion::IntervalUnion(std::vector<ClosedInterval> parts) {
    for (const auto& part : parts) {
        if (part.hi < part.lo) throw PreconditionError("interval with hi < lo");
    }
    std::sort(parts.begin(), parts.end(), [](const ClosedInterval& a, const ClosedInterval& b) {
        return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
    });
    for (const auto& part : parts) {
        if (!parts_.empty() && part.lo <= parts_.back().hi) {
            parts_.back().hi = std::max(parts_.back().hi, part.hi);
        } else {
            parts_.push_back(part);
        }
    }
}

Rational IntervalUnion::total_length() const {
    Rational sum;
    for (const auto& part : parts_) sum += part.length();
    return sum;
}

IntervalUnion IntervalUnion::affine(const Rational& scale, const Rational& shift) const {
    std::vector<ClosedInterval> out;
    out.reserve(parts_.size());
    for (const auto& part : parts_) {
        Rational a = part.lo * scale + shift;
        Rational b = part.hi * scale + shift;
        if (b < a) std::swap(a, b);
        out.push_back({a, b});
    }
    return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::united(const IntervalUnion& other) const {
    std::vector<ClosedInterval> all = parts_;
    all.insert(all.end(), other.parts_.begin(), other.parts_.end());
    return IntervalUnion(std::move(all));
}

std::string IntervalUnion::to_string() const {
    if (parts_.empty()) return "{}";
    std::string out;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) out += " ∪ ";
        out += "[" + parts_[i].lo.to_string() + ", " + parts_[i].hi.to_string() + "]";
    }
    return out;
}

Coordinate line_coordinate(const LineParams& line) { return line.q == 0 ? Coordinate::imag : Coordinate::real; }

namespace {

std::int64_t project(GaussianInt g, Coordinate c) { return c == Coordinate::real ? g.re : g.im; }

/// sum_k d_k (-4)^{-k} for the one-dimensional sequence preperiod · period^ω.
Rational eval_periodic_1d(const std::vector<std::int64_t>& preperiod, const std::vector<std::int64_t>& period) {
    std::vector<GaussianInt> pre;
    std::vector<GaussianInt> per;
    for (auto d : preperiod) pre.emplace_back(d, 0);
    for (auto d : period) per.emplace_back(d, 0);
    return eval_periodic(pre, per).x;
}

}  // namespace

IntervalExtraction extract_interval_union(const BuchiAutomaton& a, Coordinate coordinate) {
    if (a.empty()) return IntervalUnion{};
    const SccDecomposition scc = scc_decompose(a);
    std::vector<std::optional<IntervalUnion>> sets(a.num_states());
    const Rational contraction(-1, 4);

    // Sinks first, so successors are resolved before their predecessors.
    for (std::size_t c = scc.components.size(); c-- > 0;) {
        const auto& comp = scc.components[c];
        if (!scc.is_cyclic(c)) {
            const StateId s = comp.front();
            IntervalUnion acc;
            for (const auto& e : a.out_edges(s)) {
                if (!sets[e.dst]) {
                    return NotAnIntervalUnion{"state " + a.name(s) + " leads to a set that is not an interval union"};
                }
                const Rational d(project(a.alphabet()[e.letter], coordinate));
                // x -> (x + d) / (-4)
                acc = acc.united(sets[e.dst]->affine(contraction, d * contraction));
            }
            sets[s] = std::move(acc);
            continue;
        }
        if (!scc.condensation[c].empty()) {
            return NotAnIntervalUnion{"cycle through " + a.name(comp.front()) + " has exits"};
        }
        if (comp.size() == 1) {
            const StateId s = comp.front();
            std::set<std::int64_t> digits;
            for (const auto& e : a.out_edges(s)) digits.insert(project(a.alphabet()[e.letter], coordinate));
            const std::int64_t lo = *digits.begin();
            const std::int64_t hi = *digits.rbegin();
            if (digits.size() == 1) {
                const Rational point = eval_periodic_1d({}, {lo});
                sets[s] = IntervalUnion({{point, point}});
                continue;
            }
            // Four consecutive digits: the attractor has measure one and hull
            // length (hi - lo) / 3 = 1, so it is the whole hull.
            if (digits.size() == 4 && hi - lo == 3) {
                const Rational min = eval_periodic_1d({}, {hi, lo});
                const Rational max = eval_periodic_1d({}, {lo, hi});
                sets[s] = IntervalUnion({{min, max}});
                continue;
            }
            std::string listed;
            for (auto d : digits) listed += (listed.empty() ? "" : ",") + std::to_string(d);
            return NotAnIntervalUnion{"loop digits {" + listed + "} at state " + a.name(s) +
                                      " are not four consecutive integers"};
        }
        // A terminal simple cycle: every state carries exactly one point.
        for (auto s : comp) {
            if (a.out_edges(s).size() != 1) {
                return NotAnIntervalUnion{"component of " + a.name(s) + " is not a simple cycle"};
            }
        }
        for (auto s : comp) {
            std::vector<std::int64_t> period;
            StateId t = s;
            do {
                const Edge& e = a.out_edges(t).front();
                period.push_back(project(a.alphabet()[e.letter], coordinate));
                t = e.dst;
            } while (t != s);
            const Rational point = eval_periodic_1d({}, period);
            sets[s] = IntervalUnion({{point, point}});
        }
    }
    IntervalUnion result;
    for (auto s : a.initial_states()) result = result.united(*sets[s]);
    return result;
}

std::pair<Rational, Rational> extremes() {
    // Odd positions carry negative weight: the minimum takes the largest real
    // part (3) there and the smallest (-1) at even positions; the maximum swaps them.
    const GaussianInt three{3, 0};
    const GaussianInt minus_one{-1, 1};
    const std::vector<GaussianInt> min_period{three, minus_one};
    const std::vector<GaussianInt> max_period{minus_one, three};
    return {eval_periodic({}, min_period).x, eval_periodic({}, max_period).x};
}

// ---------------------------------------------------------- vertical lines

namespace {

void check_binary(const BinarySequence& a) {
    if (a.period.empty()) throw PreconditionError("binary sequence needs a nonempty period");
    for (const auto* part : {&a.preperiod, &a.period}) {
        for (auto bit : *part) {
            if (bit > 1) throw PreconditionError("binary sequence entries must be 0 or 1");
        }
    }
    const std::size_t n = a.period.size();
    bool alternating = n % 2 == 0;
    for (std::size_t i = 0; alternating && i < n; ++i) alternating = a.period[i] != a.period[(i + 1) % n];
    if (alternating) throw PreconditionError("sequence ends in (01)^ω, excluded");
}

}  // namespace

VerticalLineIntersection vertical_line_endpoints(const BinarySequence& a) {
    check_binary(a);
    std::vector<GaussianInt> pre;
    std::vector<GaussianInt> per;
    for (auto bit : a.preperiod) pre.emplace_back(2 * bit, 0);
    for (auto bit : a.period) per.emplace_back(2 * bit, 0);
    const Rational r = eval_periodic(pre, per).x;
    VerticalLineIntersection out;
    out.r = r;
    out.lower = {r, r - Rational(2, 5)};
    out.upper = {r, r + Rational(3, 5)};
    out.segment = {r - Rational(2, 5), r + Rational(3, 5)};
    return out;
}

std::pair<LassoWord, LassoWord> vertical_endpoint_words(const BinarySequence& a) {
    check_binary(a);
    auto bit_at = [&](std::size_t k) {  // k is 0-based
        if (k < a.preperiod.size()) return a.preperiod[k];
        return a.period[(k - a.preperiod.size()) % a.period.size()];
    };
    auto letter = [](std::uint8_t lead, bool pattern_100) {
        const std::array<std::uint8_t, 4> bits =
            pattern_100 ? std::array<std::uint8_t, 4>{lead, 1, 0, 0} : std::array<std::uint8_t, 4>{lead, 0, 1, 1};
        const auto idx = find_digit(alpha_evaluate(bits));
        if (!idx) throw PreconditionError("endpoint block outside the digit table");
        return static_cast<Letter>(*idx);
    };
    const std::size_t pre = a.preperiod.size();
    const std::size_t per = a.period.size() % 2 == 0 ? a.period.size() : 2 * a.period.size();
    LassoWord upper;
    LassoWord lower;
    for (std::size_t k = 0; k < pre + per; ++k) {
        // Block k + 1 is a100 for odd k + 1 on the upper endpoint, a011 on the lower.
        const bool odd = k % 2 == 0;
        auto& up = k < pre ? upper.prefix : upper.period;
        auto& down = k < pre ? lower.prefix : lower.period;
        up.push_back(letter(bit_at(k), odd));
        down.push_back(letter(bit_at(k), !odd));
    }
    return {upper, lower};
}

// ---------------------------------------------------------- point clouds

namespace {

/// Subset DFS over words for automata with at most 64 states, carrying the
/// Horner accumulators down the tree.
struct PointWalker {
    std::size_t letters;
    std::vector<std::uint64_t> succ;  // succ[s * letters + l]: bitmask of targets
    std::vector<GaussianInt> alphabet;
    std::size_t depth;
    double scale;
    const std::function<void(PointD)>* visit;

    void walk(std::uint64_t set, std::size_t level, std::int64_t re, std::int64_t im) const {
        if (level == depth) {
            (*visit)({static_cast<double>(re) * scale, static_cast<double>(im) * scale});
            return;
        }
        for (std::size_t l = 0; l < letters; ++l) {
            std::uint64_t next = 0;
            for (std::uint64_t rest = set; rest != 0; rest &= rest - 1) {
                next |= succ[static_cast<std::size_t>(__builtin_ctzll(rest)) * letters + l];
            }
            if (next != 0) walk(next, level + 1, -4 * re + alphabet[l].re, -4 * im + alphabet[l].im);
        }
    }
};

}  // namespace

void for_each_prefix_point(const BuchiAutomaton& a, std::size_t depth, const std::function<void(PointD)>& visit) {
    if (depth > 28) throw PreconditionError("prefix depth above 28 overflows 64-bit accumulation");
    const auto& alphabet = a.alphabet();
    const double scale = std::pow(-4.0, -static_cast<double>(depth));
    if (a.num_states() <= 64) {
        PointWalker walker{alphabet.size(), std::vector<std::uint64_t>(a.num_states() * alphabet.size(), 0),
                           alphabet, depth, scale, &visit};
        for (const auto& e : a.edges()) walker.succ[e.src * alphabet.size() + e.letter] |= std::uint64_t{1} << e.dst;
        std::uint64_t start = 0;
        for (auto s : a.initial_states()) start |= std::uint64_t{1} << s;
        if (start != 0) walker.walk(start, 0, 0, 0);
        return;
    }
    // re[k], im[k] hold the Horner value of the first k letters of `last`;
    // consecutive words share prefixes, so only the changed tail is redone.
    std::vector<std::int64_t> re(depth + 1, 0);
    std::vector<std::int64_t> im(depth + 1, 0);
    Word last;
    for_each_prefix(a, depth, [&](std::span<const Letter> word) {
        std::size_t k = 0;
        if (last.size() == word.size()) {
            while (k < word.size() && last[k] == word[k]) ++k;
        } else {
            last.assign(word.size(), 0);
        }
        for (; k < word.size(); ++k) {
            last[k] = word[k];
            re[k + 1] = -4 * re[k] + alphabet[word[k]].re;
            im[k + 1] = -4 * im[k] + alphabet[word[k]].im;
        }
        visit({static_cast<double>(re[depth]) * scale, static_cast<double>(im[depth]) * scale});
    });
}

std::vector<PointD> prefix_cloud(const BuchiAutomaton& a, std::size_t depth) {
    std::vector<PointD> out;
    for_each_prefix_point(a, depth, [&](PointD p) { out.push_back(p); });
    return out;
}

double tail_bound(std::size_t depth) {
    double max_modulus = 0.0;
    for (const auto& block : digit_table()) {
        max_modulus = std::max(max_modulus, std::sqrt(static_cast<double>(block.value.norm())));
    }
    return max_modulus / 3.0 * std::pow(4.0, -static_cast<double>(depth));
}

BuchiAutomaton tile_automaton() {
    BuchiAutomaton::Builder builder(digit_values());
    const StateId s = builder.add_state("K", true, true);
    for (Letter l = 0; l < kDigitCount; ++l) builder.add_edge(s, l, s);
    return std::move(builder).build();
}

namespace {

/// max over p in a of the distance to the nearest point of b.
double directed_distance(std::span<const PointD> a, std::span<const PointD> b) {
    if (a.empty()) return 0.0;
    if (b.empty()) return std::numeric_limits<double>::infinity();
    double min_x = b[0].x, max_x = b[0].x, min_y = b[0].y, max_y = b[0].y;
    for (const auto& p : b) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const double extent = std::max({max_x - min_x, max_y - min_y, 1e-12});
    const double cell = extent / std::max(1.0, std::sqrt(static_cast<double>(b.size())));
    auto key = [&](std::int64_t i, std::int64_t j) { return (i << 32) ^ (j & 0xffffffff); };
    std::unordered_map<std::int64_t, std::vector<std::size_t>> grid;
    for (std::size_t i = 0; i < b.size(); ++i) {
        grid[key(static_cast<std::int64_t>(std::floor((b[i].x - min_x) / cell)),
                 static_cast<std::int64_t>(std::floor((b[i].y - min_y) / cell)))]
            .push_back(i);
    }
    double worst = 0.0;
    for (const auto& p : a) {
        const auto ci = static_cast<std::int64_t>(std::floor((p.x - min_x) / cell));
        const auto cj = static_cast<std::int64_t>(std::floor((p.y - min_y) / cell));
        double best = std::numeric_limits<double>::infinity();
        // Grow square rings until the ring's inner distance exceeds the best hit.
        for (std::int64_t ring = 0;; ++ring) {
            if (static_cast<double>(ring - 1) * cell > best) break;
            for (std::int64_t di = -ring; di <= ring; ++di) {
                for (std::int64_t dj = -ring; dj <= ring; ++dj) {
                    if (std::max(std::abs(di), std::abs(dj)) != ring) continue;
                    auto it = grid.find(key(ci + di, cj + dj));
                    if (it == grid.end()) continue;
                    for (auto idx : it->second) best = std::min(best, std::hypot(p.x - b[idx].x, p.y - b[idx].y));
                }
            }
            if (static_cast<double>(ring) * cell > 4.0 * extent + std::hypot(p.x - min_x, p.y - min_y)) break;
        }
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace

double hausdorff_distance(std::span<const PointD> a, std::span<const PointD> b) {
    return std::max(directed_distance(a, b), directed_distance(b, a));
}

void write_cloud(std::ostream& os, std::span<const PointD> cloud) {
    std::ostringstream line;
    line.precision(12);
    for (const auto& p : cloud) {
        line.str("");
        line << std::fixed << p.x << ' ' << p.y << '\n';
        os << line.str();
    }
}

// ------------------------------------------------------- diagonal lines

namespace {

struct ComplexD {
    double re;
    double im;
};

std::vector<PointD> transform(std::span<const PointD> cloud, ComplexD factor, std::span<const ComplexD> shifts) {
    std::vector<PointD> out;
    out.reserve(cloud.size() * shifts.size());
    for (const auto& shift : shifts) {
        for (const auto& p : cloud) {
            out.push_back({factor.re * p.x - factor.im * p.y + shift.re, factor.re * p.y + factor.im * p.x + shift.im});
        }
    }
    return out;
}

}  // namespace

DiagonalCheckResult diagonal_relations_check(const Rational& r, std::size_t depth) {
    if (!(Rational(-8, 15) < r && r < Rational(2, 15))) {
        throw PreconditionError("diagonal relations need -8/15 < r < 2/15, got " + r.to_string());
    }
    const Rational half_r = r * Rational(1, 2);
    auto cloud = [](const Rational& p, const Rational& q, const Rational& c, std::size_t n) {
        return prefix_cloud(build_line_automaton(normalize_line(p, q, c)), n);
    };
    // The scaled side is sampled two levels deeper so its error shrinks by 16
    // before scaling by at most 2 sqrt 2; the total stays within twice the tail bound.
    const std::size_t deep = depth + 2;
    const auto vertical = cloud(1, 0, r, depth);
    const auto horizontal = cloud(0, 1, half_r, depth);
    const auto horizontal_deep = cloud(0, 1, half_r, deep);
    const auto diagonal_deep = cloud(1, 1, -r, deep);
    const auto antidiagonal_deep = cloud(1, -1, half_r, deep);

    const double tol = 2.0 * tail_bound(depth);
    const ComplexD zero{0, 0};
    const std::vector<ComplexD> identity{zero};

    struct Case {
        std::string name;
        std::vector<PointD> lhs;
        std::vector<PointD> rhs;
    };
    std::vector<Case> cases;
    cases.push_back({"-2i (K ∩ Δ_{0,1,r/2}) = (K ∩ Δ_{1,0,r}) + {0,i}",
                     transform(horizontal_deep, {0, -2}, identity),
                     transform(vertical, {1, 0}, std::vector<ComplexD>{zero, {0, 1}})});
    cases.push_back({"(-1+i) (K ∩ Δ_{1,1,-r}) = K ∩ Δ_{1,0,r}", transform(diagonal_deep, {-1, 1}, identity),
                     vertical});
    cases.push_back({"(-1+i) (K ∩ Δ_{1,-1,r/2}) = (K ∩ Δ_{0,1,r/2}) + {0,1}",
                     transform(antidiagonal_deep, {-1, 1}, identity),
                     transform(horizontal, {1, 0}, std::vector<ComplexD>{zero, {1, 0}})});
    cases.push_back({"2(1+i) (K ∩ Δ_{1,-1,r/2}) = (K ∩ Δ_{1,0,r}) + {-2i,-i,0,i}",
                     transform(antidiagonal_deep, {2, 2}, identity),
                     transform(vertical, {1, 0}, std::vector<ComplexD>{{0, -2}, {0, -1}, zero, {0, 1}})});

    DiagonalCheckResult result;
    result.ok = true;
    for (auto& c : cases) {
        const bool nonempty = !c.lhs.empty() && !c.rhs.empty();
        const double d = nonempty ? hausdorff_distance(c.lhs, c.rhs) : std::numeric_limits<double>::infinity();
        const bool ok = nonempty && d <= tol;
        result.ok = result.ok && ok;
        result.identities.push_back({c.name, d, tol, ok});
    }
    return result;
}

// ------------------------------------------------------------ box counting

namespace {

std::uint64_t tile_key(std::int64_t tx, std::int64_t ty) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(tx)) << 32) | static_cast<std::uint32_t>(ty);
}

std::pair<std::int64_t, std::int64_t> tile_coords(std::uint64_t key) {
    return {static_cast<std::int32_t>(key >> 32), static_cast<std::int32_t>(key & 0xffffffffULL)};
}

}  // namespace

BoxCounter::BoxCounter(std::vector<int> exponents) : exponents_(std::move(exponents)) {
    std::set<int> distinct(exponents_.begin(), exponents_.end());
    if (distinct.size() < 3) throw PreconditionError("box counting needs at least three scales");
    if (*distinct.begin() < 0 || *distinct.rbegin() > 30) throw PreconditionError("box exponent outside [0, 30]");
    finest_ = *distinct.rbegin();
    factor_ = std::ldexp(1.0, finest_);
}

void BoxCounter::add(PointD p) {
    const auto bx = static_cast<std::int64_t>(std::floor(p.x * factor_));
    const auto by = static_cast<std::int64_t>(std::floor(p.y * factor_));
    const std::uint64_t key = tile_key(bx >> 6, by >> 6);
    if (key != cached_key_) {
        cached_ = &tiles_[key];
        cached_key_ = key;
    }
    cached_->set(static_cast<std::size_t>(((bx & 63) << 6) | (by & 63)));
}

std::vector<std::size_t> BoxCounter::counts() const {
    std::map<int, std::size_t> by_exponent;
    const int coarsest = *std::min_element(exponents_.begin(), exponents_.end());
    Tiles level = tiles_;
    for (int e = finest_;; --e) {
        std::size_t n = 0;
        for (const auto& [key, tile] : level) n += tile.count();
        by_exponent[e] = n;
        if (e == coarsest) break;
        Tiles pooled;
        for (const auto& [key, tile] : level) {
            const auto [tx, ty] = tile_coords(key);
            auto& target = pooled[tile_key(tx >> 1, ty >> 1)];
            const std::size_t off_x = static_cast<std::size_t>(tx & 1) * 32;
            const std::size_t off_y = static_cast<std::size_t>(ty & 1) * 32;
            for (std::size_t bit = tile._Find_first(); bit < tile.size(); bit = tile._Find_next(bit)) {
                const std::size_t lx = bit >> 6;
                const std::size_t ly = bit & 63;
                target.set(((off_x + (lx >> 1)) << 6) | (off_y + (ly >> 1)));
            }
        }
        level = std::move(pooled);
    }
    std::vector<std::size_t> out;
    for (int e : exponents_) out.push_back(by_exponent.at(e));
    return out;
}

double BoxCounter::slope() const {
    const auto c = counts();
    const auto n = static_cast<double>(c.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double x = exponents_[i] * std::log(2.0);
        const double y = std::log(static_cast<double>(std::max<std::size_t>(c[i], 1)));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double box_counting(std::span<const PointD> points, std::vector<int> exponents) {
    BoxCounter counter(std::move(exponents));
    for (const auto& p : points) counter.add(p);
    return counter.slope();
}

std::vector<int> exponent_range(int first, int last) {
    std::vector<int> out;
    for (int k = first; k <= last; ++k) out.push_back(k);
    return out;
}

// --------------------------------------------------------------- rendering

Viewport Viewport::tile_default() { return {Rational(-1), Rational(3, 5), Rational(-1), Rational(4, 5)}; }

std::size_t Raster::occupied() const {
    return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](std::uint8_t c) { return c != 0; }));
}

namespace {

void check_viewport(const RenderOptions& o) {
    const Viewport& v = o.viewport;
    if (!(v.x_min < v.x_max) || !(v.y_min < v.y_max)) throw PreconditionError("degenerate viewport");
    if (o.width <= 0 || o.height <= 0) throw PreconditionError("raster size must be positive");
    // The tile spans [-13/15, 7/15] horizontally and [-14/15, 11/15] vertically.
    if (Rational(-13, 15) < v.x_min || v.x_max < Rational(7, 15) || Rational(-14, 15) < v.y_min ||
        v.y_max < Rational(11, 15)) {
        throw PreconditionError("viewport must contain the tile's bounding box");
    }
}

}  // namespace

std::size_t effective_render_depth(const RenderOptions& o) {
    const double pixel = std::min((o.viewport.x_max - o.viewport.x_min).to_double() / o.width,
                                  (o.viewport.y_max - o.viewport.y_min).to_double() / o.height);
    std::size_t d = 0;
    while (d < o.depth && tail_bound(d) > pixel / 2) ++d;
    return d;
}

Raster render(const RenderOptions& o) {
    if (o.depth > o.max_depth) {
        throw PreconditionError("render depth " + std::to_string(o.depth) + " above the maximum " +
                                std::to_string(o.max_depth));
    }
    check_viewport(o);
    if (o.lines.size() > 250) throw PreconditionError("too many lines");
    Raster raster;
    raster.width = o.width;
    raster.height = o.height;
    raster.viewport = o.viewport;
    raster.cells.assign(static_cast<std::size_t>(o.width) * static_cast<std::size_t>(o.height), 0);

    const double x0 = o.viewport.x_min.to_double();
    const double y1 = o.viewport.y_max.to_double();
    const double sx = o.width / (o.viewport.x_max - o.viewport.x_min).to_double();
    const double sy = o.height / (o.viewport.y_max - o.viewport.y_min).to_double();
    auto plot = [&](PointD p, std::uint8_t mark) {
        const auto col = static_cast<std::int64_t>(std::floor((p.x - x0) * sx));
        const auto row = static_cast<std::int64_t>(std::floor((y1 - p.y) * sy));
        if (col < 0 || row < 0 || col >= o.width || row >= o.height) return;
        raster.cells[static_cast<std::size_t>(row) * static_cast<std::size_t>(o.width) + static_cast<std::size_t>(col)] =
            mark;
    };
    const std::size_t depth = effective_render_depth(o);
    if (o.draw_tile) for_each_prefix_point(tile_automaton(), depth, [&](PointD p) { plot(p, 1); });
    for (std::size_t i = 0; i < o.lines.size(); ++i) {
        const auto mark = static_cast<std::uint8_t>(2 + i);
        for_each_prefix_point(build_line_automaton(o.lines[i]), depth, [&](PointD p) { plot(p, mark); });
    }
    return raster;
}

namespace {

struct Rgb {
    int r, g, b;
};

Rgb color_of(std::uint8_t cell) {
    static constexpr Rgb kLines[] = {{220, 30, 30}, {30, 60, 220}, {20, 160, 60}, {200, 120, 0}, {150, 40, 180}};
    if (cell == 0) return {255, 255, 255};
    if (cell == 1) return {170, 170, 170};
    return kLines[(cell - 2) % 5];
}

}  // namespace

std::string to_ppm(const Raster& raster) {
    std::ostringstream os;
    os << "P3\n" << raster.width << ' ' << raster.height << "\n255\n";
    for (int row = 0; row < raster.height; ++row) {
        for (int col = 0; col < raster.width; ++col) {
            const Rgb c = color_of(raster.at(col, row));
            os << c.r << ' ' << c.g << ' ' << c.b << (col + 1 == raster.width ? '\n' : ' ');
        }
    }
    return os.str();
}

std::string to_svg(const Raster& raster) {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << raster.width << "\" height=\"" << raster.height
       << "\" shape-rendering=\"crispEdges\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (int row = 0; row < raster.height; ++row) {
        for (int col = 0; col < raster.width; ++col) {
            const std::uint8_t cell = raster.at(col, row);
            if (cell == 0) continue;
            const Rgb c = color_of(cell);
            os << "<rect x=\"" << col << "\" y=\"" << row << "\" width=\"1\" height=\"1\" fill=\"rgb(" << c.r << ','
               << c.g << ',' << c.b << ")\"/>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace twindragon
