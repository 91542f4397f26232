#include "twindragon/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "twindragon/detail/scc.hpp"
#include "twindragon/error.hpp"

namespace twindragon {
namespace {

// Dyadic rationals num / 2^kScaleBits used for exact sign evaluation.
constexpr int kScaleBits = 64;

BigInt to_dyadic(double x) {
    // 2^40 * x is exact enough for bracketing; the remaining bits are zero.
    const long double scaled = std::ldexp(static_cast<long double>(x), 40);
    return BigInt(static_cast<long long>(std::floor(scaled))) << (kScaleBits - 40);
}

double from_dyadic(const BigInt& num) {
    return std::ldexp(num.convert_to<double>(), -kScaleBits);
}

/// Sign of p(num / 2^kScaleBits), computed exactly.
int sign_at(const IntPolynomial& p, const BigInt& num) {
    const auto& c = p.coefficients();
    if (c.empty()) return 0;
    // 2^{k n} p(num / 2^k) = sum c_i num^i 2^{k (n - i)}, by homogeneous Horner.
    BigInt acc = 0;
    BigInt power = 1;
    const int n = p.degree();
    const BigInt scale = BigInt(1) << kScaleBits;
    for (int i = n; i >= 0; --i) {
        acc = acc * num + c[static_cast<std::size_t>(i)] * power;
        power *= scale;
    }
    return acc.sign();
}

/// Largest (simple) real root of the characteristic polynomial of an irreducible block.
double irreducible_root(const IncidenceMatrix& block, double tol) {
    const IntPolynomial p = char_poly(block);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(block.cast<double>(), false);
    double estimate = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        estimate = std::max(estimate, std::abs(solver.eigenvalues()[i]));
    }
    double radius = 1e-6 * std::max(1.0, estimate);
    BigInt lo;
    BigInt hi;
    for (int attempt = 0;; ++attempt) {
        if (attempt > 40) throw std::runtime_error("perron_root: could not bracket the Perron root");
        lo = to_dyadic(estimate - radius);
        hi = to_dyadic(estimate + radius) + 1;
        const int s_hi = sign_at(p, hi);
        if (s_hi == 0) return from_dyadic(hi);
        if (s_hi > 0 && sign_at(p, lo) < 0) break;
        radius *= 4.0;
    }
    const BigInt width = std::max(to_dyadic(tol), BigInt(1));
    while (hi - lo > width) {
        const BigInt mid = (lo + hi) >> 1;
        const int s = sign_at(p, mid);
        if (s == 0) return from_dyadic(mid);
        if (s > 0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return from_dyadic((lo + hi) >> 1);
}

/// Exact check that p changes sign across [x - radius, x + radius] or vanishes at an endpoint.
bool brackets_root(const IntPolynomial& p, double x, double radius) {
    const int a = sign_at(p, to_dyadic(x - radius));
    const int b = sign_at(p, to_dyadic(x + radius) + 1);
    return a == 0 || b == 0 || a != b;
}

double round12(double x) { return std::round(x * 1e12) / 1e12; }

nlohmann::json big_to_json(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
        return nlohmann::json(v.convert_to<std::int64_t>());
    }
    return nlohmann::json(v.str());
}

nlohmann::json poly_to_json(const IntPolynomial& p) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : p.coefficients()) coeffs.push_back(big_to_json(c));
    return {{"ascending", coeffs}, {"text", p.to_string()}};
}

}  // namespace

IntPolynomial char_poly(const IncidenceMatrix& m) { return char_poly(m.cast<BigInt>()); }

double perron_root(const IncidenceMatrix& m, double tol) {
    if (m.rows() != m.cols()) throw PreconditionError("perron_root: matrix is not square");
    if ((m.array() < 0).any()) throw PreconditionError("perron_root: matrix has negative entries");
    if (!(tol > 0.0) || !std::isfinite(tol)) throw PreconditionError("perron_root: tolerance must be positive");
    const auto n = static_cast<std::size_t>(m.rows());
    if (n == 0) return 0.0;
    auto successors = [&](std::size_t i) {
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < n; ++j) {
            if (m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) > 0) out.push_back(j);
        }
        return out;
    };
    double best = 0.0;
    for (const auto& comp : detail::strongly_connected_components(n, successors)) {
        const auto k = static_cast<Eigen::Index>(comp.size());
        IncidenceMatrix block(k, k);
        for (Eigen::Index i = 0; i < k; ++i) {
            for (Eigen::Index j = 0; j < k; ++j) {
                block(i, j) = m(static_cast<Eigen::Index>(comp[static_cast<std::size_t>(i)]),
                                static_cast<Eigen::Index>(comp[static_cast<std::size_t>(j)]));
            }
        }
        const double root = k == 1 ? static_cast<double>(block(0, 0)) : irreducible_root(block, tol);
        best = std::max(best, root);
    }
    return best;
}

LambdaConstants lambda_constants() {
    long double lo = 1.0L;
    long double hi = 2.0L;
    auto f = [](long double x) { return x * x * x - x * x - 2.0L; };
    while (hi - lo > 1e-15L) {
        const long double mid = (lo + hi) / 2;
        (f(mid) > 0 ? hi : lo) = mid;
    }
    const long double lambda = (lo + hi) / 2;
    LambdaConstants out{};
    out.lambda = static_cast<double>(lambda);
    out.s = static_cast<double>(std::log(lambda) / std::log(std::sqrt(2.0L)));
    out.lambda4_over_4 = static_cast<double>(lambda * lambda * lambda * lambda / 4);
    return out;
}

DimensionReport hausdorff_dimension(const BuchiAutomaton& trimmed, double tol) {
    DimensionReport report;
    report.root_tolerance = tol;
    report.cardinality = classify_cardinality(trimmed);
    report.states = trimmed.num_states();
    report.edges = trimmed.num_edges();
    report.empty = trimmed.empty() || trimmed.initial_states().empty();
    if (report.empty) return report;

    const SccDecomposition scc = scc_decompose(trimmed);
    std::vector<bool> reachable(scc.components.size(), false);
    for (auto s : trimmed.initial_states()) reachable[scc.component_of[s]] = true;
    for (std::size_t c = 0; c < scc.components.size(); ++c) {
        if (!reachable[c]) continue;
        for (auto d : scc.condensation[c]) reachable[d] = true;
    }
    for (std::size_t c = 0; c < scc.components.size(); ++c) {
        if (!reachable[c] || !scc.is_cyclic(c)) continue;
        SccSpectrum spectrum{c, scc.components[c].size(), char_poly(scc.incidence[c]),
                             perron_root(scc.incidence[c], tol)};
        if (report.sccs.empty() || spectrum.perron_root > report.beta) {
            report.beta = spectrum.perron_root;
            report.beta_scc = report.sccs.size();
        }
        report.sccs.push_back(std::move(spectrum));
    }
    report.dimension = std::log(report.beta) / std::log(4.0);
    const LambdaConstants k = lambda_constants();
    report.dimension_equals_s_minus_1 = std::abs(*report.dimension - (k.s - 1.0)) < tolerance::kCompare;
    return report;
}

IntPolynomial target_minimal_polynomial() {
    return IntPolynomial({BigInt(-1), BigInt(2), BigInt(-9), BigInt(4)});
}

NotSMinusOneCertificate check_not_s_minus_1(const DimensionReport& report) {
    if (report.empty || report.sccs.empty()) throw PreconditionError("check_not_s_minus_1: empty report");
    const LambdaConstants k = lambda_constants();
    NotSMinusOneCertificate cert;
    cert.beta = report.beta;
    cert.target = k.lambda4_over_4;
    cert.gap = std::abs(cert.beta - cert.target);
    cert.gap_exceeds_tolerance = cert.gap > tolerance::kCompare;

    cert.beta_polynomial = report.sccs[report.beta_scc].char_poly;
    cert.beta_polynomial_monic = cert.beta_polynomial.is_monic();
    cert.beta_polynomial_vanishes = brackets_root(cert.beta_polynomial, cert.beta, 4 * report.root_tolerance);

    cert.target_polynomial = target_minimal_polynomial();
    const auto& tc = cert.target_polynomial.coefficients();
    // Rational roots c/d need c | constant term and d | leading coefficient.
    cert.target_has_no_rational_root = true;
    for (std::int64_t den : {1, 2, 4}) {
        for (std::int64_t sign : {1, -1}) {
            const Rational candidate(sign, den);
            Rational value;
            for (auto it = tc.rbegin(); it != tc.rend(); ++it) {
                value = value * candidate + Rational(it->convert_to<std::int64_t>());
            }
            cert.rational_root_checks.push_back({candidate, value});
            if (value == Rational(0)) cert.target_has_no_rational_root = false;
        }
    }
    BigInt content = 0;
    for (const auto& c : tc) content = boost::multiprecision::gcd(content, c);
    cert.target_primitive_non_monic = content == 1 && abs(cert.target_polynomial.leading()) != 1;
    cert.target_vanishes_at_target =
        std::abs(cert.target_polynomial(static_cast<long double>(cert.target))) < tolerance::kCompare;

    // A cubic without rational roots is irreducible; primitive and non-monic then
    // means its roots are not algebraic integers, while beta is one.
    cert.holds = cert.gap_exceeds_tolerance && cert.beta_polynomial_monic && cert.beta_polynomial_vanishes &&
                 cert.target_has_no_rational_root && cert.target_primitive_non_monic;
    return cert;
}

nlohmann::json report_to_json(const DimensionReport& report, const std::optional<LineParams>& line,
                              const std::optional<NotSMinusOneCertificate>& certificate) {
    nlohmann::json doc;
    if (line) {
        doc["line"] = {{"p", line->p}, {"q", line->q}, {"r", line->r}, {"banner", line->banner()}};
    }
    doc["empty"] = report.empty;
    doc["states"] = report.states;
    doc["edges"] = report.edges;
    doc["cardinality"] = {{"kind", report.cardinality.to_string()}};
    if (report.cardinality.kind == Cardinality::Kind::finite) doc["cardinality"]["count"] = report.cardinality.count;
    doc["sccs"] = nlohmann::json::array();
    for (const auto& s : report.sccs) {
        doc["sccs"].push_back({{"component", s.component},
                               {"size", s.size},
                               {"char_poly", poly_to_json(s.char_poly)},
                               {"perron_root", round12(s.perron_root)}});
    }
    if (report.empty) {
        doc["beta"] = nullptr;
        doc["dimension"] = nullptr;
    } else {
        doc["beta"] = round12(report.beta);
        doc["dimension"] = round12(*report.dimension);
    }
    doc["dimension_equals_s_minus_1"] = report.dimension_equals_s_minus_1;
    if (certificate) {
        nlohmann::json checks = nlohmann::json::array();
        for (const auto& c : certificate->rational_root_checks) {
            checks.push_back({{"candidate", c.candidate.to_string()}, {"value", c.value.to_string()}});
        }
        doc["certificate"] = {{"holds", certificate->holds},
                              {"beta", round12(certificate->beta)},
                              {"lambda4_over_4", round12(certificate->target)},
                              {"gap", round12(certificate->gap)},
                              {"gap_exceeds_tolerance", certificate->gap_exceeds_tolerance},
                              {"beta_polynomial", poly_to_json(certificate->beta_polynomial)},
                              {"beta_polynomial_monic", certificate->beta_polynomial_monic},
                              {"beta_polynomial_vanishes", certificate->beta_polynomial_vanishes},
                              {"target_polynomial", poly_to_json(certificate->target_polynomial)},
                              {"rational_root_checks", checks},
                              {"target_has_no_rational_root", certificate->target_has_no_rational_root},
                              {"target_primitive_non_monic", certificate->target_primitive_non_monic},
                              {"target_vanishes_at_target", certificate->target_vanishes_at_target}};
    }
    return doc;
}

}  // namespace twindragon
