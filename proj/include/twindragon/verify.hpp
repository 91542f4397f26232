#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "twindragon/buchi.hpp"
#include "twindragon/gaussian.hpp"
#include "twindragon/line_automaton.hpp"

namespace twindragon::verify {

/// [d1d2d3d4] -> value for the 16 blocks in bit order, as tabulated by hand.
/// Kept apart from digit_table() so the two can be compared.
inline constexpr std::array<GaussianInt, 16> kReferenceDigits = {{
    {0, 0}, {1, 0}, {-1, 1}, {0, 1},
    {0, -2}, {1, -2}, {-1, -1}, {0, -1},
    {2, 2}, {3, 2}, {1, 3}, {2, 3},
    {2, 0}, {3, 0}, {1, 1}, {2, 1},
}};

/// Length-n prefixes of digit sequences of points of K on the line, by direct
/// state recursion s_k = p Re(b_k) + q Im(b_k) - 4 s_{k-1} from s_0 = -r.
/// A prefix counts when s_n can be continued forever inside |s| <= c(p, q);
/// that set of states is a greatest fixed point computed over plain integers.
/// Letters index kReferenceDigits. Result sorted.
std::vector<Word> line_prefix_oracle(const LineParams& line, std::size_t n);

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct Criterion {
    int id;
    std::string name;
    std::function<CheckResult()> run;
};

const std::vector<Criterion>& acceptance_criteria();

/// "PASS  3  name  (0.012 s)  detail"
std::string format_result(const CheckResult& result);

/// Runs every criterion in order; with `out` set, prints each line as it completes.
std::vector<CheckResult> run_acceptance(std::ostream* out = nullptr);

}  // namespace twindragon::verify
