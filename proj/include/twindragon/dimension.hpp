#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "twindragon/buchi.hpp"
#include "twindragon/config.hpp"
#include "twindragon/line_automaton.hpp"
#include "twindragon/polynomial.hpp"
#include "twindragon/rational.hpp"

namespace twindragon {

/// Exact characteristic polynomial of an incidence matrix.
IntPolynomial char_poly(const IncidenceMatrix& m);

/// Largest real eigenvalue (the spectral radius) of a nonnegative integer matrix,
/// to absolute tolerance `tol`. The matrix is split into irreducible blocks; each
/// block's root is simple, located with a floating-point eigensolver and then
/// refined by bisection on exact signs of its characteristic polynomial.
double perron_root(const IncidenceMatrix& m, double tol = tolerance::kRoot);

struct LambdaConstants {
    double lambda;          ///< real root of x^3 - x^2 - 2
    double s;               ///< boundary dimension log(lambda) / log(sqrt 2)
    double lambda4_over_4;  ///< the value beta would need for dimension s - 1
};

LambdaConstants lambda_constants();

struct SccSpectrum {
    std::size_t component;
    std::size_t size;
    IntPolynomial char_poly;
    double perron_root;
};

struct DimensionReport {
    bool empty = true;
    std::size_t states = 0;
    std::size_t edges = 0;
    /// Cyclic components reachable from an initial state, in topological order.
    std::vector<SccSpectrum> sccs;
    /// Index into `sccs` of a component attaining beta.
    std::size_t beta_scc = 0;
    double beta = 0.0;
    /// Absolute tolerance beta was computed to.
    double root_tolerance = tolerance::kRoot;
    /// log(beta) / log(4); absent for the empty set.
    std::optional<double> dimension;
    Cardinality cardinality;
    bool dimension_equals_s_minus_1 = false;
};

/// Dimension of the attractor of a trimmed all-terminal base -4 automaton.
DimensionReport hausdorff_dimension(const BuchiAutomaton& trimmed, double tol = tolerance::kRoot);

struct RationalRootCheck {
    Rational candidate;
    Rational value;
};

/// Why log(beta)/log(4) cannot equal s - 1.
struct NotSMinusOneCertificate {
    bool holds = false;
    double beta = 0.0;
    double target = 0.0;  ///< lambda^4 / 4
    double gap = 0.0;
    bool gap_exceeds_tolerance = false;
    /// Monic integer polynomial having beta as a root (char poly of its component).
    IntPolynomial beta_polynomial;
    bool beta_polynomial_monic = false;
    bool beta_polynomial_vanishes = false;
    /// 4x^3 - 9x^2 + 2x - 1 evaluated at every rational root candidate.
    IntPolynomial target_polynomial;
    std::vector<RationalRootCheck> rational_root_checks;
    bool target_has_no_rational_root = false;
    bool target_primitive_non_monic = false;
    bool target_vanishes_at_target = false;
};

/// The minimal polynomial of lambda^4 / 4.
IntPolynomial target_minimal_polynomial();

/// Throws PreconditionError for an empty report.
NotSMinusOneCertificate check_not_s_minus_1(const DimensionReport& report);

/// Structured document for a report; `line` and `certificate` are optional context.
nlohmann::json report_to_json(const DimensionReport& report, const std::optional<LineParams>& line,
                              const std::optional<NotSMinusOneCertificate>& certificate);

}  // namespace twindragon
