#include "twindragon/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "twindragon/config.hpp"
#include "twindragon/digits.hpp"
#include "twindragon/dimension.hpp"
#include "twindragon/error.hpp"
#include "twindragon/geometry.hpp"
#include "twindragon/verify.hpp"

namespace twindragon::cli {
namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised for bad flag values found after CLI11 has finished parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Rational parse_rational(const std::string& text) {
    try {
        return Rational::parse(text);
    } catch (const std::exception&) {
        throw UsageError("'" + text + "' is not an integer or n/d rational");
    }
}

LineParams parse_line(const std::vector<std::string>& parts) {
    if (parts.size() != 3) throw UsageError("a line needs three values p q r");
    return normalize_line(parse_rational(parts[0]), parse_rational(parts[1]), parse_rational(parts[2]));
}

std::vector<std::string> split(const std::string& text, char separator) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, separator);) out.push_back(item);
    return out;
}

double root_tolerance() {
    const char* raw = std::getenv(tolerance::kRootEnvVar);
    if (raw == nullptr || *raw == '\0') return tolerance::kRoot;
    char* end = nullptr;
    errno = 0;
    const double value = std::strtod(raw, &end);
    if (errno != 0 || *end != '\0' || !(value > 0.0) || !std::isfinite(value)) {
        throw UsageError(std::string(tolerance::kRootEnvVar) + " must be a positive number, got '" + raw + "'");
    }
    return value;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open '" + path + "' for writing");
    file << content;
    file.close();
    if (!file) throw IoError("failed writing '" + path + "'");
}

void print_json(std::ostream& out, const nlohmann::json& doc) { out << doc.dump(2) << '\n'; }

BuchiAutomaton line_automaton(const LineParams& line, bool boundary, bool untrimmed) {
    if (boundary) {
        const BuchiAutomaton both = product(build_line_automaton_untrimmed(line), boundary_automaton_base4());
        return untrimmed ? both : trim(both);
    }
    return untrimmed ? build_line_automaton_untrimmed(line) : build_line_automaton(line);
}

nlohmann::json rational_json(const Rational& x) { return x.to_string(); }

// ------------------------------------------------------------ subcommands

struct LineArgs {
    std::vector<std::string> values;
    bool boundary = false;
};

void add_line_args(CLI::App* cmd, LineArgs& args) {
    cmd->add_option("line", args.values, "p q r for the line p x + q y = r; integers or n/d")->expected(3)->required();
    cmd->add_flag("--boundary", args.boundary, "intersect the boundary of the tile instead of the tile");
}

int cmd_automaton(const LineArgs& args, bool untrimmed, const std::string& format, std::ostream& out,
                  std::ostream& err) {
    const LineParams line = parse_line(args.values);
    err << line.banner() << '\n';
    const BuchiAutomaton a = line_automaton(line, args.boundary, untrimmed);
    out << export_automaton(a, format == "json" ? ExportFormat::json : ExportFormat::graph);
    if (format == "json") out << '\n';
    return exit_code::ok;
}

int cmd_dim(const LineArgs& args, std::ostream& out, std::ostream& err) {
    const LineParams line = parse_line(args.values);
    err << line.banner() << '\n';
    const DimensionReport report = hausdorff_dimension(line_automaton(line, args.boundary, false), root_tolerance());
    std::optional<NotSMinusOneCertificate> certificate;
    if (!report.empty) certificate = check_not_s_minus_1(report);
    nlohmann::json doc = report_to_json(report, line, certificate);
    doc["set"] = args.boundary ? "boundary" : "tile";
    print_json(out, doc);
    if (report.empty) {
        err << "empty intersection\n";
        return exit_code::empty_intersection;
    }
    return exit_code::ok;
}

int cmd_intervals(const LineArgs& args, std::ostream& out, std::ostream& err) {
    const LineParams line = parse_line(args.values);
    err << line.banner() << '\n';
    const BuchiAutomaton a = line_automaton(line, args.boundary, false);
    const Coordinate coordinate = line_coordinate(line);
    nlohmann::json doc;
    doc["line"] = {{"p", line.p}, {"q", line.q}, {"r", line.r}, {"banner", line.banner()}};
    doc["set"] = args.boundary ? "boundary" : "tile";
    doc["coordinate"] = coordinate == Coordinate::imag ? "imag" : "real";
    const IntervalExtraction result = extract_interval_union(a, coordinate);
    if (const auto* iu = std::get_if<IntervalUnion>(&result)) {
        doc["interval_union"] = true;
        doc["intervals"] = nlohmann::json::array();
        for (const auto& part : iu->parts()) doc["intervals"].push_back({rational_json(part.lo), rational_json(part.hi)});
        doc["total_length"] = rational_json(iu->total_length());
        doc["text"] = iu->to_string();
    } else {
        doc["interval_union"] = false;
        doc["reason"] = std::get<NotAnIntervalUnion>(result).reason;
    }
    print_json(out, doc);
    if (a.empty()) {
        err << "empty intersection\n";
        return exit_code::empty_intersection;
    }
    return exit_code::ok;
}

struct RenderArgs {
    std::size_t depth = 8;
    std::vector<std::string> lines;
    std::string out;
    std::string size = "512";
    std::string viewport;
    std::string cloud;
    bool no_tile = false;
};

Viewport parse_viewport(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 4) throw UsageError("--viewport needs x_min,x_max,y_min,y_max");
    return {parse_rational(parts[0]), parse_rational(parts[1]), parse_rational(parts[2]), parse_rational(parts[3])};
}

std::pair<int, int> parse_size(const std::string& text) {
    auto parse_int = [&](std::string_view s) {
        int value = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc() || ptr != s.data() + s.size() || value <= 0 || value > 8192) {
            throw UsageError("--size needs N or WxH with 1 <= N <= 8192, got '" + text + "'");
        }
        return value;
    };
    const auto x = text.find('x');
    if (x == std::string::npos) {
        const int n = parse_int(text);
        return {n, n};
    }
    return {parse_int(std::string_view(text).substr(0, x)), parse_int(std::string_view(text).substr(x + 1))};
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int cmd_render(const RenderArgs& args, std::ostream& out, std::ostream& err) {
    const bool svg = ends_with(args.out, ".svg");
    if (!svg && !ends_with(args.out, ".ppm")) throw UsageError("--out must end in .ppm or .svg");
    RenderOptions options;
    options.depth = args.depth;
    options.draw_tile = !args.no_tile;
    std::tie(options.width, options.height) = parse_size(args.size);
    if (!args.viewport.empty()) options.viewport = parse_viewport(args.viewport);
    for (const auto& spec : args.lines) {
        const LineParams line = parse_line(split(spec, ','));
        err << line.banner() << '\n';
        options.lines.push_back(line);
    }
    const Raster raster = render(options);
    write_file(args.out, svg ? to_svg(raster) : to_ppm(raster));
    const std::size_t depth = effective_render_depth(options);
    if (!args.cloud.empty()) {
        std::ostringstream text;
        if (options.draw_tile) write_cloud(text, prefix_cloud(tile_automaton(), depth));
        for (const auto& line : options.lines) write_cloud(text, prefix_cloud(build_line_automaton(line), depth));
        write_file(args.cloud, text.str());
    }
    nlohmann::json doc;
    doc["out"] = args.out;
    doc["width"] = raster.width;
    doc["height"] = raster.height;
    doc["depth"] = depth;
    doc["requested_depth"] = args.depth;
    doc["occupied"] = raster.occupied();
    print_json(out, doc);
    return exit_code::ok;
}

int cmd_verify(bool corrupt, std::ostream& out) {
    std::unique_ptr<testing::ScopedDigitTableCorruption> corruption;
    // Swaps -2i and 1-2i, two labels of the boundary automaton on x = -1/5.
    if (corrupt) corruption = std::make_unique<testing::ScopedDigitTableCorruption>(4, 5);
    const auto results = verify::run_acceptance(&out);
    const auto passed = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.passed; });
    out << passed << "/" << results.size() << " criteria passed\n";
    return passed == static_cast<std::ptrdiff_t>(results.size()) ? exit_code::ok : exit_code::verify_failed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app("Twin dragon tile and boundary intersected with rational lines", "twindragon");
    app.require_subcommand(1);
    app.footer(std::string("Environment: ") + tolerance::kRootEnvVar +
               " overrides the Perron root tolerance (default 1e-12).\n"
               "Exit codes: 0 ok, 1 verify failure, 2 usage, 3 degenerate line, 4 empty intersection, 5 I/O.");

    LineArgs automaton_args;
    bool untrimmed = false;
    std::string format = "graph";
    auto* automaton = app.add_subcommand("automaton", "print the Büchi automaton of a line");
    add_line_args(automaton, automaton_args);
    automaton->add_flag("--untrimmed", untrimmed, "keep states without infinite runs");
    automaton->add_option("--format", format, "graph or json")->check(CLI::IsMember({"graph", "json"}));

    LineArgs dim_args;
    auto* dim = app.add_subcommand("dim", "Hausdorff dimension report");
    add_line_args(dim, dim_args);

    LineArgs interval_args;
    auto* intervals = app.add_subcommand("intervals", "exact interval decomposition along the line");
    add_line_args(intervals, interval_args);

    RenderArgs render_args;
    auto* render_cmd = app.add_subcommand("render", "rasterize the tile and line intersections");
    render_cmd->add_option("--depth", render_args.depth, "digits per point")->check(CLI::Range(0, 14));
    render_cmd->add_option("--line", render_args.lines, "line as p,q,r; repeatable");
    render_cmd->add_option("--out", render_args.out, "output file, .ppm or .svg")->required();
    render_cmd->add_option("--size", render_args.size, "N or WxH pixels");
    render_cmd->add_option("--viewport", render_args.viewport, "x_min,x_max,y_min,y_max");
    render_cmd->add_option("--cloud", render_args.cloud, "also write the plotted points as text");
    render_cmd->add_flag("--no-tile", render_args.no_tile, "draw only the lines");

    bool corrupt = false;
    auto* verify_cmd = app.add_subcommand("verify", "run the acceptance checks");
    verify_cmd->add_flag("--corrupt-digit-table", corrupt)->group("");

    // CLI11 consumes its vector from the back and without the program name.
    std::vector<std::string> pending(args.empty() ? args.end() : args.begin() + 1, args.end());
    std::reverse(pending.begin(), pending.end());
    try {
        app.parse(pending);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_code::ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::usage;
    }

    try {
        if (*automaton) return cmd_automaton(automaton_args, untrimmed, format, out, err);
        if (*dim) return cmd_dim(dim_args, out, err);
        if (*intervals) return cmd_intervals(interval_args, out, err);
        if (*render_cmd) return cmd_render(render_args, out, err);
        return cmd_verify(corrupt, out);
    } catch (const DegenerateLineError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::degenerate_line;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::io;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const OverflowError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::usage;
    }
}

}  // namespace twindragon::cli
