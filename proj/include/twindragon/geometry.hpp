#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <bitset>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "twindragon/buchi.hpp"
#include "twindragon/digits.hpp"
#include "twindragon/line_automaton.hpp"
#include "twindragon/rational.hpp"

namespace twindragon {

// ------------------------------------------------------------ interval sets

struct ClosedInterval {
    Rational lo;
    Rational hi;

    friend bool operator==(const ClosedInterval&, const ClosedInterval&) = default;
    Rational length() const { return hi - lo; }
};

/// Finite union of closed rational intervals, kept sorted with overlapping
/// or touching parts merged.
class IntervalUnion {
public:
    IntervalUnion() = default;
    explicit IntervalUnion(std::vector<ClosedInterval> parts);

    const std::vector<ClosedInterval>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    Rational total_length() const;

    /// Image under x -> scale * x + shift.
    IntervalUnion affine(const Rational& scale, const Rational& shift) const;
    IntervalUnion united(const IntervalUnion& other) const;

    friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;
    std::string to_string() const;

private:
    std::vector<ClosedInterval> parts_;
};

struct NotAnIntervalUnion {
    std::string reason;
};

using IntervalExtraction = std::variant<IntervalUnion, NotAnIntervalUnion>;

enum class Coordinate { real, imag };

/// The coordinate that parametrizes points on the line: the imaginary part on
/// vertical lines, the real part otherwise.
Coordinate line_coordinate(const LineParams& line);

/// Exact attractor of a trimmed base -4 automaton projected to one coordinate,
/// when it is a finite union of closed intervals. Certified structurally:
/// a state whose only edges are self loops on four consecutive digits carries
/// an interval, a terminal simple cycle carries single points, and acyclic
/// states combine their successors. Anything else is reported as
/// NotAnIntervalUnion.
IntervalExtraction extract_interval_union(const BuchiAutomaton& trimmed, Coordinate coordinate);

/// (min, max) of Re(z) over the twin dragon: (-13/15, 7/15).
std::pair<Rational, Rational> extremes();

// ---------------------------------------------------------- vertical lines

/// Eventually periodic {0,1} sequence preperiod · period^ω.
struct BinarySequence {
    std::vector<std::uint8_t> preperiod;
    std::vector<std::uint8_t> period;
};

struct VerticalLineIntersection {
    Rational r;
    ExactPoint lower;  ///< r + (r - 2/5) i
    ExactPoint upper;  ///< r + (r + 3/5) i
    ClosedInterval segment;  ///< imaginary parts of the tile on the line
};

/// r = sum 2 a_k (-4)^{-k} and the two boundary points on x = r.
/// Throws PreconditionError when the sequence ends in (01)^ω.
VerticalLineIntersection vertical_line_endpoints(const BinarySequence& a);

/// Base -4 digit words of the upper and lower endpoints, built from the
/// blocks a_k100 / a_k011 alternating with k.
std::pair<LassoWord, LassoWord> vertical_endpoint_words(const BinarySequence& a);

// ---------------------------------------------------------- point clouds

struct PointD {
    double x;
    double y;
};

/// Calls `visit` with the point sum b_k (-4)^{-k} of every length-n prefix of a
/// trimmed base -4 automaton.
void for_each_prefix_point(const BuchiAutomaton& a, std::size_t depth, const std::function<void(PointD)>& visit);
std::vector<PointD> prefix_cloud(const BuchiAutomaton& a, std::size_t depth);

/// Bound on |sum_{k>n} b_k (-4)^{-k}|: max|b| / 3 * 4^{-n}.
double tail_bound(std::size_t depth);

/// Single state with a loop on every digit: accepts the whole tile.
BuchiAutomaton tile_automaton();

double hausdorff_distance(std::span<const PointD> a, std::span<const PointD> b);

void write_cloud(std::ostream& os, std::span<const PointD> cloud);

// ------------------------------------------------------- diagonal lines

struct IdentityCheck {
    std::string name;
    double distance;
    double tolerance;
    bool ok;
};

struct DiagonalCheckResult {
    bool ok = false;
    std::vector<IdentityCheck> identities;
};

/// Compares both sides of the four diagonal/axis set identities on prefix
/// clouds. Requires -8/15 < r < 2/15.
DiagonalCheckResult diagonal_relations_check(const Rational& r, std::size_t depth);

// ------------------------------------------------------------ box counting

/// Streaming box counter over dyadic boxes of side 2^{-e}. Points mark a
/// bitmap at the finest exponent, stored as 64x64 tiles; coarser counts come
/// from repeated 2x2 pooling.
class BoxCounter {
public:
    /// Throws PreconditionError for fewer than three distinct exponents or any outside [0, 30].
    explicit BoxCounter(std::vector<int> exponents);

    void add(PointD p);
    const std::vector<int>& exponents() const { return exponents_; }
    /// Occupied boxes per exponent, in the order given.
    std::vector<std::size_t> counts() const;
    /// Least-squares slope of log N(eps) against log(1/eps).
    double slope() const;

private:
    using Tiles = std::unordered_map<std::uint64_t, std::bitset<4096>>;

    std::vector<int> exponents_;
    int finest_ = 0;
    double factor_ = 1.0;
    Tiles tiles_;
    std::uint64_t cached_key_ = ~std::uint64_t{0};
    std::bitset<4096>* cached_ = nullptr;
};

double box_counting(std::span<const PointD> points, std::vector<int> exponents);

/// first, first + 1, ..., last.
std::vector<int> exponent_range(int first, int last);

// --------------------------------------------------------------- rendering

struct Viewport {
    Rational x_min;
    Rational x_max;
    Rational y_min;
    Rational y_max;

    /// [-1, 3/5] x [-1, 4/5], which contains the tile.
    static Viewport tile_default();
};

struct RenderOptions {
    std::size_t depth = 8;
    std::vector<LineParams> lines;
    bool draw_tile = true;
    Viewport viewport = Viewport::tile_default();
    int width = 512;
    int height = 512;
    std::size_t max_depth = 14;
};

/// Occupancy grid; 0 empty, 1 tile, 2 + i for lines[i]. Row 0 is the top edge.
struct Raster {
    int width = 0;
    int height = 0;
    Viewport viewport;
    std::vector<std::uint8_t> cells;

    std::uint8_t at(int column, int row) const {
        return cells[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) + static_cast<std::size_t>(column)];
    }
    std::size_t occupied() const;
};

/// Depth actually enumerated: the requested depth, capped where the tail
/// bound drops below half a pixel.
std::size_t effective_render_depth(const RenderOptions& options);

Raster render(const RenderOptions& options);

/// Plain (P3) portable pixmap.
std::string to_ppm(const Raster& raster);
std::string to_svg(const Raster& raster);

}  // namespace twindragon
