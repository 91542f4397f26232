#include "twindragon/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "twindragon/digits.hpp"
#include "twindragon/dimension.hpp"
#include "twindragon/geometry.hpp"

namespace twindragon::verify {

std::vector<Word> line_prefix_oracle(const LineParams& line, std::size_t n) {
    std::int64_t bound3 = 0;
    for (const auto& b : kReferenceDigits) bound3 = std::max(bound3, std::abs(line.p * b.re + line.q * b.im));
    const std::int64_t c = bound3 / 3;
    auto next = [&](std::int64_t s, const GaussianInt& b) { return line.p * b.re + line.q * b.im - 4 * s; };

    // alive[s + c]: state s admits an infinite walk inside [-c, c].
    std::vector<bool> alive(static_cast<std::size_t>(2 * c + 1), true);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::int64_t s = -c; s <= c; ++s) {
            if (!alive[static_cast<std::size_t>(s + c)]) continue;
            bool any = false;
            for (const auto& b : kReferenceDigits) {
                const std::int64_t t = next(s, b);
                if (std::abs(t) <= c && alive[static_cast<std::size_t>(t + c)]) any = true;
            }
            if (!any) {
                alive[static_cast<std::size_t>(s + c)] = false;
                changed = true;
            }
        }
    }
    auto is_alive = [&](std::int64_t s) { return std::abs(s) <= c && alive[static_cast<std::size_t>(s + c)]; };

    const std::int64_t start = -line.r;
    bool start_alive = is_alive(start);
    if (std::abs(start) > c) {
        for (const auto& b : kReferenceDigits) start_alive = start_alive || is_alive(next(start, b));
    }
    std::vector<Word> out;
    if (!start_alive) return out;

    Word word(n);
    auto rec = [&](auto&& self, std::int64_t s, std::size_t k) -> void {
        if (k == n) {
            out.push_back(word);
            return;
        }
        for (Letter l = 0; l < kReferenceDigits.size(); ++l) {
            const std::int64_t t = next(s, kReferenceDigits[l]);
            if (!is_alive(t)) continue;
            word[k] = l;
            self(self, t, k + 1);
        }
    };
    rec(rec, start, 0);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(const char* format, double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, format, value);
    return buffer;
}

/// Lines p x + q y = r over integer triples in [-bound, bound]^3, normalized and deduplicated.
std::vector<LineParams> small_lines(std::int64_t bound) {
    std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t>> seen;
    std::vector<LineParams> out;
    for (std::int64_t p = -bound; p <= bound; ++p) {
        for (std::int64_t q = -bound; q <= bound; ++q) {
            if (p == 0 && q == 0) continue;
            for (std::int64_t r = -bound; r <= bound; ++r) {
                const LineParams line = normalize_line(p, q, r);
                if (seen.insert({line.p, line.q, line.r}).second) out.push_back(line);
            }
        }
    }
    return out;
}

std::multiset<std::int64_t> imag_labels(const BuchiAutomaton& a, StateId from, StateId to) {
    std::multiset<std::int64_t> out;
    for (const auto& e : a.out_edges(from)) {
        if (e.dst == to) out.insert(a.alphabet()[e.letter].im);
    }
    return out;
}

std::vector<std::vector<GaussianInt>> as_values(const std::vector<Word>& words,
                                                const std::vector<GaussianInt>& alphabet) {
    std::vector<std::vector<GaussianInt>> out;
    out.reserve(words.size());
    for (const auto& w : words) {
        std::vector<GaussianInt> v;
        for (auto l : w) v.push_back(alphabet[l]);
        out.push_back(std::move(v));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<GaussianInt> reference_alphabet() {
    return std::vector<GaussianInt>(kReferenceDigits.begin(), kReferenceDigits.end());
}

// Each check fills `detail` and returns whether it passed; timing and
// exception handling are added by `timed`.

bool boundary_line_fifth(std::string& detail, double& budget) {
    budget = 1.0;
    const BuchiAutomaton a = boundary_line_automaton(normalize_line(1, 0, Rational(-1, 5)));
    const auto g3 = a.find_state("(1,g3)");
    const auto g4 = a.find_state("(1,g4)");
    if (a.num_states() != 2 || a.num_edges() != 6 || !g3 || !g4) {
        detail = "got " + std::to_string(a.num_states()) + " states, " + std::to_string(a.num_edges()) + " edges";
        return false;
    }
    const bool labels = imag_labels(a, *g3, *g3) == std::multiset<std::int64_t>{-2} &&
                        imag_labels(a, *g3, *g4) == std::multiset<std::int64_t>{-2, 0} &&
                        imag_labels(a, *g4, *g4) == std::multiset<std::int64_t>{3} &&
                        imag_labels(a, *g4, *g3) == std::multiset<std::int64_t>{1, 3};
    const SccDecomposition scc = scc_decompose(a);
    const std::size_t c = scc.component_of[*g3];
    IncidenceMatrix ordered(2, 2);
    const std::size_t i3 = scc.local_index(*g3);
    const std::size_t i4 = scc.local_index(*g4);
    bool matrix = scc.component_of[*g4] == c;
    if (matrix) {
        const auto& m = scc.incidence[c];
        ordered << m(i3, i3), m(i3, i4), m(i4, i3), m(i4, i4);
        IncidenceMatrix expected(2, 2);
        expected << 1, 2, 2, 1;
        matrix = ordered == expected;
    }
    const IntPolynomial poly = char_poly(matrix ? ordered : IncidenceMatrix::Zero(2, 2).eval());
    const bool poly_ok = poly == IntPolynomial({-3, -2, 1});
    const DimensionReport report = hausdorff_dimension(a);
    const bool beta_ok = std::abs(report.beta - 3.0) <= 1e-12;
    const bool dim_ok = report.dimension && std::abs(*report.dimension - std::log(3.0) / std::log(4.0)) <= 1e-9;
    detail = std::string("labels ") + (labels ? "ok" : "WRONG") + ", incidence " + (matrix ? "ok" : "WRONG") +
             ", char poly " + poly.to_string() + ", beta " + fmt("%.15g", report.beta) + ", dimension " +
             fmt("%.12f", report.dimension.value_or(-1.0));
    return labels && matrix && poly_ok && beta_ok && dim_ok;
}

bool vertical_line_zero(std::string& detail, double& budget) {
    budget = 1.0;
    const BuchiAutomaton boundary = boundary_line_automaton({1, 0, 0});
    const Cardinality card = classify_cardinality(boundary);
    std::set<std::pair<Rational, Rational>> points;
    for (const auto& w : card.words) {
        std::vector<GaussianInt> pre;
        std::vector<GaussianInt> per;
        for (auto l : w.prefix) pre.push_back(boundary.alphabet()[l]);
        for (auto l : w.period) per.push_back(boundary.alphabet()[l]);
        const ExactPoint p = eval_periodic(pre, per);
        points.insert({p.x, p.y});
    }
    const std::set<std::pair<Rational, Rational>> expected{{Rational(0), Rational(-2, 5)},
                                                            {Rational(0), Rational(3, 5)}};
    const IntervalExtraction segment = extract_interval_union(build_line_automaton({1, 0, 0}), Coordinate::imag);
    const auto* iu = std::get_if<IntervalUnion>(&segment);
    const bool segment_ok = iu && *iu == IntervalUnion({{Rational(-2, 5), Rational(3, 5)}});
    detail = "boundary " + card.to_string() + ", segment " +
             (iu ? iu->to_string() : std::get<NotAnIntervalUnion>(segment).reason);
    return card.kind == Cardinality::Kind::finite && card.count == 2 && points == expected && segment_ok;
}

bool quarter_line_intervals(std::string& detail, double& budget) {
    budget = 1.0;
    const LineParams line = normalize_line(1, 0, Rational(-1, 4));
    const IntervalExtraction got = extract_interval_union(build_line_automaton(line), line_coordinate(line));
    const IntervalUnion expected({{Rational(-9, 10), Rational(-13, 20)},
                                  {Rational(-2, 5), Rational(1, 10)},
                                  {Rational(7, 20), Rational(3, 5)}});
    const auto* iu = std::get_if<IntervalUnion>(&got);
    detail = line.banner() + ": " + (iu ? iu->to_string() : std::get<NotAnIntervalUnion>(got).reason);
    return line == LineParams{4, 0, -1} && iu && *iu == expected;
}

bool horizontal_extremes(std::string& detail, double& /*budget*/) {
    const auto [lo, hi] = extremes();
    bool ok = lo == Rational(-13, 15) && hi == Rational(7, 15);
    // Both extremes are attained, so the lines through them meet K.
    ok = ok && !build_line_automaton(normalize_line(1, 0, lo)).empty() &&
         !build_line_automaton(normalize_line(1, 0, hi)).empty();
    std::mt19937_64 rng(20260417);
    std::uniform_int_distribution<std::int64_t> den(1, 40);
    int tried = 0;
    int empty = 0;
    while (tried < 50) {
        const std::int64_t d = den(rng);
        std::uniform_int_distribution<std::int64_t> num(-4 * d, 4 * d);
        const Rational r(num(rng), d);
        if (!(r < lo || hi < r)) continue;
        ++tried;
        if (build_line_automaton(normalize_line(1, 0, r)).empty()) ++empty;
    }
    detail = "extremes (" + lo.to_string() + ", " + hi.to_string() + "), " + std::to_string(empty) +
             "/50 outside lines empty";
    return ok && empty == 50;
}

bool boundary_dimension(std::string& detail, double& /*budget*/) {
    const DimensionReport report = hausdorff_dimension(boundary_automaton_base4());
    const LambdaConstants k = lambda_constants();
    const double lambda4 = std::pow(k.lambda, 4);
    const std::string rounded = fmt("%.4f", report.dimension.value_or(-1.0));
    detail = "beta " + fmt("%.12f", report.beta) + ", lambda^4 " + fmt("%.12f", lambda4) + ", dimension " + rounded;
    return std::abs(report.beta - lambda4) <= 1e-9 && rounded == "1.5236" &&
           std::abs(*report.dimension - k.s) <= 1e-9;
}

bool never_s_minus_one(std::string& detail, double& budget) {
    budget = 30.0;
    std::size_t nonempty = 0;
    std::size_t holds = 0;
    double min_gap = INFINITY;
    std::string first_failure;
    for (const auto& line : small_lines(4)) {
        const BuchiAutomaton a = boundary_line_automaton(line);
        if (a.empty()) continue;
        ++nonempty;
        const NotSMinusOneCertificate cert = check_not_s_minus_1(hausdorff_dimension(a));
        min_gap = std::min(min_gap, cert.gap);
        if (cert.holds) {
            ++holds;
        } else if (first_failure.empty()) {
            first_failure = ", first failure " + line.banner();
        }
    }
    const IntPolynomial target = target_minimal_polynomial();
    bool no_rational_root = true;
    for (std::int64_t den : {1, 2, 4}) {
        for (std::int64_t sign : {-1, 1}) {
            const Rational x(sign, den);
            Rational value;
            for (auto it = target.coefficients().rbegin(); it != target.coefficients().rend(); ++it) {
                value = value * x + Rational(static_cast<std::int64_t>(*it));
            }
            no_rational_root = no_rational_root && value != Rational(0);
        }
    }
    detail = std::to_string(holds) + "/" + std::to_string(nonempty) + " lines certified, min gap " +
             fmt("%.6f", min_gap) + ", " + target.to_string() + (no_rational_root ? " has no rational root" : " HAS a rational root") +
             first_failure;
    return nonempty > 0 && holds == nonempty && no_rational_root;
}

bool oracle_equivalence(std::string& detail, double& /*budget*/) {
    std::size_t lines = 0;
    std::size_t words = 0;
    std::string mismatch;
    const auto reference = reference_alphabet();
    for (const auto& line : small_lines(3)) {
        ++lines;
        const BuchiAutomaton a = build_line_automaton(line);
        for (std::size_t n = 0; n <= 8; ++n) {
            const auto got = as_values(enumerate_prefixes(a, n), a.alphabet());
            const auto want = as_values(line_prefix_oracle(line, n), reference);
            words += want.size();
            if (got != want && mismatch.empty()) {
                mismatch = ", mismatch at " + line.banner() + " depth " + std::to_string(n) + " (" +
                           std::to_string(got.size()) + " vs " + std::to_string(want.size()) + ")";
            }
        }
    }
    detail = std::to_string(lines) + " lines, depths 0..8, " + std::to_string(words) + " oracle words" + mismatch;
    return mismatch.empty();
}

bool diagonal_identities(std::string& detail, double& /*budget*/) {
    bool ok = true;
    std::ostringstream os;
    for (const Rational& r : {Rational(0), Rational(1, 10), Rational(-1, 2), Rational(-8, 15) + Rational(1, 100)}) {
        const DiagonalCheckResult result = diagonal_relations_check(r, 5);
        double worst = 0.0;
        for (const auto& id : result.identities) worst = std::max(worst, id.distance / id.tolerance);
        os << (os.tellp() > 0 ? ", " : "") << "r=" << r << (result.ok ? " ok" : " FAILED") << " (" << fmt("%.2f", worst)
           << " of tolerance)";
        ok = ok && result.ok;
    }
    detail = os.str();
    return ok;
}

struct SlopeCase {
    const char* name;
    BuchiAutomaton automaton;
    std::size_t depth;
    std::vector<int> exponents;
    double expected;
};

bool box_counting_slopes(std::string& detail, double& budget) {
    budget = 60.0;
    const std::vector<SlopeCase> cases = {
        {"boundary", boundary_automaton_base4(), 7, exponent_range(4, 8), lambda_constants().s},
        {"boundary on x=-1/5", boundary_line_automaton({5, 0, -1}), 8, exponent_range(4, 8),
         std::log(3.0) / std::log(4.0)},
        {"tile", tile_automaton(), 7, exponent_range(8, 12), 2.0},
    };
    bool ok = true;
    std::ostringstream os;
    for (const auto& c : cases) {
        BoxCounter counter(c.exponents);
        for_each_prefix_point(c.automaton, c.depth, [&](PointD p) { counter.add(p); });
        const double slope = counter.slope();
        const bool pass = std::abs(slope - c.expected) <= 0.05;
        ok = ok && pass;
        os << (os.tellp() > 0 ? ", " : "") << c.name << " " << fmt("%.4f", slope) << " vs " << fmt("%.4f", c.expected)
           << (pass ? "" : " FAILED");
    }
    detail = os.str();
    return ok;
}

bool digit_table_golden(std::string& detail, double& /*budget*/) {
    const auto& table = digit_table();
    std::size_t matches = 0;
    std::string first_bad;
    for (std::size_t i = 0; i < kDigitCount; ++i) {
        const DigitBlock& block = table[i];
        bool ok = block.value == kReferenceDigits[i] && alpha_evaluate(block.bits) == block.value;
        for (std::size_t k = 0; k < 4; ++k) ok = ok && block.bits[k] == ((i >> (3 - k)) & 1);
        if (ok) {
            ++matches;
        } else if (first_bad.empty()) {
            first_bad = ", [" + block.bits_string() + "] -> " + block.value.to_string() + " expected " +
                        kReferenceDigits[i].to_string();
        }
    }
    detail = std::to_string(matches) + "/16 blocks match" + first_bad;
    return matches == kDigitCount;
}

Criterion timed(int id, std::string name, bool (*check)(std::string&, double&)) {
    return {id, name, [id, name, check] {
                CheckResult result{id, name, false, "", 0.0};
                double budget = INFINITY;
                const auto start = Clock::now();
                try {
                    result.passed = check(result.detail, budget);
                } catch (const std::exception& e) {
                    result.detail = std::string("threw: ") + e.what();
                }
                result.seconds = std::chrono::duration<double>(Clock::now() - start).count();
                if (result.seconds > budget) {
                    result.passed = false;
                    result.detail += ", over the " + fmt("%g", budget) + " s budget";
                }
                return result;
            }};
}

}  // namespace

const std::vector<Criterion>& acceptance_criteria() {
    static const std::vector<Criterion> criteria = {
        timed(1, "boundary automaton of x = -1/5", boundary_line_fifth),
        timed(2, "vertical line x = 0", vertical_line_zero),
        timed(3, "intervals on x = -1/4", quarter_line_intervals),
        timed(4, "horizontal extremes", horizontal_extremes),
        timed(5, "boundary dimension", boundary_dimension),
        timed(6, "dimension is never s - 1", never_s_minus_one),
        timed(7, "line automaton oracle equivalence", oracle_equivalence),
        timed(8, "diagonal identities", diagonal_identities),
        timed(9, "box-counting slopes", box_counting_slopes),
        timed(10, "digit table", digit_table_golden),
    };
    return criteria;
}

std::string format_result(const CheckResult& result) {
    char head[96];
    std::snprintf(head, sizeof head, "%s %2d  %-36s (%.3f s)  ", result.passed ? "PASS" : "FAIL", result.id,
                  result.name.c_str(), result.seconds);
    return head + result.detail;
}

std::vector<CheckResult> run_acceptance(std::ostream* out) {
    std::vector<CheckResult> results;
    for (const auto& criterion : acceptance_criteria()) {
        results.push_back(criterion.run());
        if (out) *out << format_result(results.back()) << '\n' << std::flush;
    }
    return results;
}

}  // namespace twindragon::verify
