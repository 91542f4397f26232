#include "doctest.h"

#include <cmath>
#include <random>
#include <set>

#include "twindragon/geometry.hpp"
#include "twindragon/line_automaton.hpp"

using namespace twindragon;

namespace {

ClosedInterval iv(Rational lo, Rational hi) { return {lo, hi}; }

// Digit values of a lasso word over the table alphabet.
std::vector<GaussianInt> values(const Word& w) {
    std::vector<GaussianInt> out;
    for (auto l : w) out.push_back(digit_table()[l].value);
    return out;
}

// True when a·p^ω ends in 0101... or 1010...
bool ends_alternating(const BinarySequence& a) {
    const auto& p = a.period;
    if (p.size() % 2 != 0) return false;
    for (std::size_t k = 1; k < p.size(); ++k) {
        if (p[k] == p[k - 1]) return false;
    }
    return true;
}

// r = sum 2 a_k (-4)^{-k}, summed independently of the library.
Rational series_value(const BinarySequence& a) {
    Rational sum(0);
    Rational w(1);
    for (auto bit : a.preperiod) {
        w = w / Rational(-4);
        sum = sum + Rational(2 * bit) * w;
    }
    Rational block(0);
    Rational v(1);
    for (auto bit : a.period) {
        v = v / Rational(-4);
        block = block + Rational(2 * bit) * v;
    }
    // Geometric tail: w * block / (1 - v).
    return sum + w * block / (Rational(1) - v);
}

}  // namespace

TEST_CASE("interval unions merge overlapping and touching parts") {
    const IntervalUnion u({iv(2, 3), iv(0, 1), iv(1, Rational(3, 2)), iv(Rational(5, 2), 4)});
    REQUIRE(u.parts().size() == 2);
    CHECK(u.parts()[0] == iv(0, Rational(3, 2)));
    CHECK(u.parts()[1] == iv(2, 4));
    CHECK(u.total_length() == Rational(7, 2));
    CHECK(u.affine(Rational(-1), Rational(0)).parts()[0] == iv(-4, -2));
    CHECK(u.united(IntervalUnion({iv(Rational(3, 2), 2)})).parts().size() == 1);
    CHECK(IntervalUnion({iv(0, 1), iv(2, 2)}).to_string() == "[0, 1] ∪ [2, 2]");
    CHECK(IntervalUnion().empty());
}

TEST_CASE("interval extraction examples") {
    const auto axis = extract_interval_union(build_line_automaton(normalize_line(1, 0, 0)), Coordinate::imag);
    REQUIRE(std::holds_alternative<IntervalUnion>(axis));
    CHECK(std::get<IntervalUnion>(axis) == IntervalUnion({iv(Rational(-2, 5), Rational(3, 5))}));

    const auto quarter = extract_interval_union(build_line_automaton({4, 0, -1}), Coordinate::imag);
    REQUIRE(std::holds_alternative<IntervalUnion>(quarter));
    CHECK(std::get<IntervalUnion>(quarter).total_length() == Rational(1));

    const auto boundary = extract_interval_union(boundary_line_automaton({5, 0, -1}), Coordinate::imag);
    CHECK(std::holds_alternative<NotAnIntervalUnion>(boundary));

    CHECK(line_coordinate({1, 0, 0}) == Coordinate::imag);
    CHECK(line_coordinate({0, 1, 0}) == Coordinate::real);
    CHECK(line_coordinate({1, 1, 0}) == Coordinate::real);
}

TEST_CASE("horizontal extent of the tile") {
    const auto [lo, hi] = extremes();
    CHECK(lo == Rational(-13, 15));
    CHECK(hi == Rational(7, 15));
    CHECK_FALSE(build_line_automaton(normalize_line(1, 0, lo)).empty());
    CHECK_FALSE(build_line_automaton(normalize_line(1, 0, hi)).empty());
    CHECK(build_line_automaton(normalize_line(1, 0, lo - Rational(1, 1000))).empty());
    CHECK(build_line_automaton(normalize_line(1, 0, hi + Rational(1, 1000))).empty());
}

TEST_CASE("vertical line endpoint examples") {
    const auto zero = vertical_line_endpoints({{}, {0}});
    CHECK(zero.r == Rational(0));
    CHECK(zero.lower == ExactPoint{Rational(0), Rational(-2, 5)});
    CHECK(zero.upper == ExactPoint{Rational(0), Rational(3, 5)});
    CHECK(zero.segment == iv(Rational(-2, 5), Rational(3, 5)));

    const auto half = vertical_line_endpoints({{1}, {0}});
    CHECK(half.r == Rational(-1, 2));
    CHECK(half.segment == iv(Rational(-9, 10), Rational(1, 10)));

    CHECK_THROWS_AS(vertical_line_endpoints({{}, {0, 1}}), PreconditionError);
    CHECK_THROWS_AS(vertical_line_endpoints({{1}, {1, 0}}), PreconditionError);
    CHECK_THROWS_AS(vertical_line_endpoints({{}, {}}), PreconditionError);
    CHECK(vertical_line_endpoints({{}, {1, 1, 0, 0}}).r == series_value({{}, {1, 1, 0, 0}}));
}

TEST_CASE("vertical line endpoints on random sequences") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> bit(0, 1);
    std::uniform_int_distribution<std::size_t> length(0, 4);
    int checked = 0;
    int extracted_count = 0;
    for (int trial = 0; trial < 80; ++trial) {
        BinarySequence a;
        a.preperiod.resize(length(rng));
        a.period.resize(length(rng) + 1);
        for (auto& b : a.preperiod) b = static_cast<std::uint8_t>(bit(rng));
        for (auto& b : a.period) b = static_cast<std::uint8_t>(bit(rng));
        if (ends_alternating(a)) {
            CHECK_THROWS_AS(vertical_line_endpoints(a), PreconditionError);
            continue;
        }
        const auto result = vertical_line_endpoints(a);
        const Rational r = series_value(a);
        REQUIRE(result.r == r);
        REQUIRE(result.lower == ExactPoint{r, r - Rational(2, 5)});
        REQUIRE(result.upper == ExactPoint{r, r + Rational(3, 5)});

        const LineParams line = normalize_line(1, 0, r);
        const BuchiAutomaton boundary = boundary_line_automaton(line);
        const auto [upper_word, lower_word] = vertical_endpoint_words(a);
        REQUIRE(accepts(boundary, upper_word));
        REQUIRE(accepts(boundary, lower_word));
        REQUIRE(eval_periodic(values(upper_word.prefix), values(upper_word.period)) == result.upper);
        REQUIRE(eval_periodic(values(lower_word.prefix), values(lower_word.period)) == result.lower);

        const BuchiAutomaton tile = build_line_automaton(line);
        const auto extracted = extract_interval_union(tile, Coordinate::imag);
        if (const auto* u = std::get_if<IntervalUnion>(&extracted)) {
            REQUIRE(*u == IntervalUnion({result.segment}));
            ++extracted_count;
        }
        // The segment's ends are the extremes of the prefix cloud, up to the tail.
        double lo = 1e9;
        double hi = -1e9;
        for_each_prefix_point(tile, 5, [&](PointD p) {
            lo = std::min(lo, p.y);
            hi = std::max(hi, p.y);
        });
        REQUIRE(std::abs(lo - result.segment.lo.to_double()) <= tail_bound(5));
        REQUIRE(std::abs(hi - result.segment.hi.to_double()) <= tail_bound(5));
        ++checked;
    }
    CHECK(checked > 40);
    CHECK(extracted_count > 0);
}

TEST_CASE("diagonal identities") {
    for (const Rational r : {Rational(0), Rational(1, 10), Rational(-1, 2)}) {
        const auto result = diagonal_relations_check(r, 4);
        CAPTURE(r.to_string());
        CHECK(result.ok);
        CHECK(result.identities.size() == 4);
        for (const auto& id : result.identities) CHECK(id.distance <= id.tolerance);
    }
    CHECK_THROWS_AS(diagonal_relations_check(Rational(1, 2), 4), PreconditionError);
    CHECK_THROWS_AS(diagonal_relations_check(Rational(-8, 15), 4), PreconditionError);
    CHECK_THROWS_AS(diagonal_relations_check(Rational(2, 15), 4), PreconditionError);
}

TEST_CASE("prefix clouds") {
    const auto cloud = prefix_cloud(tile_automaton(), 4);
    REQUIRE(cloud.size() == 65536);
    // Depth-4 points have denominator 256, so doubles hold them exactly.
    std::set<std::pair<double, double>> distinct;
    for (const auto& p : cloud) distinct.insert({p.x, p.y});
    CHECK(distinct.size() == 65536);
    CHECK(tail_bound(0) == doctest::Approx(std::sqrt(13.0) / 3.0));
    CHECK(tail_bound(2) == doctest::Approx(std::sqrt(13.0) / 48.0));
    CHECK_THROWS_AS(prefix_cloud(tile_automaton(), 29), PreconditionError);

    const auto fifth = prefix_cloud(build_line_automaton({5, 0, -1}), 6);
    CHECK(fifth.size() == 4096);
    for (const auto& p : fifth) REQUIRE(std::abs(p.x + 0.2) <= tail_bound(6));
}

TEST_CASE("hausdorff distance") {
    const std::vector<PointD> a{{0, 0}, {1, 0}};
    const std::vector<PointD> b{{0, 0}, {1, 0}, {0.5, 0.5}};
    CHECK(hausdorff_distance(a, a) == 0.0);
    CHECK(hausdorff_distance(a, b) == doctest::Approx(std::sqrt(0.5)));
    CHECK(hausdorff_distance(b, a) == doctest::Approx(std::sqrt(0.5)));
    const std::vector<PointD> c{{0, 3}, {1, 3}};
    CHECK(hausdorff_distance(a, c) == doctest::Approx(3.0));
}

TEST_CASE("box counting") {
    CHECK_THROWS_AS(BoxCounter({2, 3}), PreconditionError);
    CHECK_THROWS_AS(BoxCounter({2, 2, 3}), PreconditionError);
    CHECK_THROWS_AS(BoxCounter({2, 3, 31}), PreconditionError);
    CHECK(exponent_range(2, 5) == std::vector<int>{2, 3, 4, 5});

    std::vector<PointD> square;
    std::vector<PointD> segment;
    for (int i = 0; i < 256; ++i) {
        segment.push_back({(i + 0.5) / 256.0, 0.3});
        for (int j = 0; j < 256; ++j) square.push_back({(i + 0.5) / 256.0, (j + 0.5) / 256.0});
    }
    CHECK(box_counting(square, exponent_range(2, 7)) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(box_counting(segment, exponent_range(2, 7)) == doctest::Approx(1.0).epsilon(1e-9));

    BoxCounter counter({1, 2, 3});
    counter.add({0.1, 0.1});
    counter.add({0.9, 0.9});
    counter.add({0.15, 0.1});
    CHECK(counter.counts() == std::vector<std::size_t>{2, 2, 3});
}

TEST_CASE("rendering") {
    RenderOptions small;
    small.depth = 1;
    const Raster one = render(small);
    CHECK(one.occupied() == 16);

    RenderOptions options;
    options.depth = 6;
    options.width = 128;
    options.height = 128;
    options.lines = {{5, 0, -1}};
    const Raster a = render(options);
    const Raster b = render(options);
    CHECK(a.cells == b.cells);
    CHECK(to_ppm(a) == to_ppm(b));
    CHECK(to_svg(a) == to_svg(b));
    CHECK(to_ppm(a).rfind("P3\n128 128\n", 0) == 0);

    // The line's cells sit in the columns around x = -1/5.
    const double x0 = -1.0;
    const double pixel = 1.6 / 128.0;
    bool any = false;
    for (int row = 0; row < a.height; ++row) {
        for (int col = 0; col < a.width; ++col) {
            if (a.at(col, row) != 2) continue;
            any = true;
            REQUIRE(std::abs(x0 + (col + 0.5) * pixel + 0.2) <= pixel);
        }
    }
    CHECK(any);

    RenderOptions deep = options;
    deep.depth = 12;
    CHECK(effective_render_depth(deep) < 12);
    deep.depth = 15;
    CHECK_THROWS_AS(render(deep), PreconditionError);

    RenderOptions cramped = options;
    cramped.viewport = {Rational(-1, 2), Rational(1, 2), Rational(-1, 2), Rational(1, 2)};
    CHECK_THROWS_AS(render(cramped), PreconditionError);
}
