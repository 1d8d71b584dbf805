#include "surfride/polynomial.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "surfride/core.hpp"
#include "surfride/error.hpp"

namespace surfride {

PolynomialCurve::PolynomialCurve() : coefficients_{0.0} {}

PolynomialCurve::PolynomialCurve(std::vector<double> coefficients, double residual_rms,
                                 bool degenerate)
    : coefficients_(std::move(coefficients)), residual_rms_(residual_rms), degenerate_(degenerate) {
    if (coefficients_.empty()) {
        throw ValidationError("polynomial needs at least one coefficient");
    }
    for (double c : coefficients_) {
        if (!std::isfinite(c)) throw ValidationError("polynomial coefficient is not finite");
    }
    if (coefficients_.size() > 1 && coefficients_.back() == 0.0 && !degenerate_) {
        throw ValidationError("leading coefficient of a degree-" +
                              std::to_string(coefficients_.size() - 1) +
                              " polynomial is zero; drop the term or flag the curve degenerate");
    }
}

double PolynomialCurve::coefficient(int i) const {
    if (i < 0 || i > degree()) return 0.0;
    return coefficients_[static_cast<std::size_t>(i)];
}

double PolynomialCurve::operator()(double x) const {
    double acc = 0.0;
    for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

PolynomialCurve fit_polynomial(std::span<const Sample> samples, int degree,
                               const FitOptions& options) {
    if (degree < 0) throw FitError("fit degree must be non-negative");
    const auto terms = static_cast<std::size_t>(degree) + 1;
    if (samples.size() < terms) {
        throw FitError("underdetermined fit: " + std::to_string(samples.size()) +
                       " samples for degree " + std::to_string(degree));
    }
    std::vector<double> xs;
    xs.reserve(samples.size());
    for (const auto& s : samples) {
        if (!std::isfinite(s.x) || !std::isfinite(s.y)) throw FitError("non-finite sample");
        xs.push_back(s.x);
    }
    std::sort(xs.begin(), xs.end());
    const auto distinct =
        static_cast<std::size_t>(std::unique(xs.begin(), xs.end()) - xs.begin());
    if (distinct < terms) {
        throw FitError("rank-deficient fit: " + std::to_string(distinct) +
                       " distinct abscissae for degree " + std::to_string(degree));
    }

    // t = (x - centre) / half_width keeps the normal matrix well scaled.
    const double lo = xs.front();
    const double hi = xs[distinct - 1];
    const double centre = 0.5 * (lo + hi);
    const double half_width = hi > lo ? 0.5 * (hi - lo) : 1.0;

    const auto n = static_cast<Eigen::Index>(terms);
    Eigen::MatrixXd normal = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd row(n);
    for (const auto& s : samples) {
        const double t = (s.x - centre) / half_width;
        double p = 1.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            row[j] = p;
            p *= t;
        }
        normal.noalias() += row * row.transpose();
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(normal, Eigen::EigenvaluesOnly);
    const double lambda_min = eig.eigenvalues().minCoeff();
    const double lambda_max = eig.eigenvalues().maxCoeff();
    if (!(lambda_min > 0.0) || lambda_max / lambda_min > options.max_condition) {
        throw FitError("rank-deficient normal equations (condition estimate " +
                       std::to_string(lambda_min > 0.0 ? lambda_max / lambda_min : INFINITY) +
                       " exceeds " + std::to_string(options.max_condition) + ")");
    }
    const auto ldlt = normal.ldlt();

    // Least-squares fit of `values` in the scaled basis, expanded into powers of x.
    auto solve_raw = [&](const std::vector<double>& values) {
        Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
        for (std::size_t k = 0; k < samples.size(); ++k) {
            const double t = (samples[k].x - centre) / half_width;
            double p = 1.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                b[j] += values[k] * p;
                p *= t;
            }
        }
        const Eigen::VectorXd scaled = ldlt.solve(b);
        std::vector<double> raw(terms, 0.0);
        for (int j = 0; j <= degree; ++j) {
            const double aj = scaled[j] / integer_power(half_width, j);
            for (int i = 0; i <= j; ++i) {
                raw[static_cast<std::size_t>(i)] += aj * binomial(j, i) * integer_power(-centre, j - i);
            }
        }
        return raw;
    };

    std::vector<double> values(samples.size());
    for (std::size_t k = 0; k < samples.size(); ++k) values[k] = samples[k].y;
    std::vector<double> coefficients = solve_raw(values);
    // Two rounds of residual correction recover the digits lost in the basis change.
    for (int round = 0; round < 2; ++round) {
        for (std::size_t k = 0; k < samples.size(); ++k) {
            double acc = 0.0;
            for (int i = degree; i >= 0; --i) acc = acc * samples[k].x + coefficients[static_cast<std::size_t>(i)];
            values[k] = samples[k].y - acc;
        }
        const auto correction = solve_raw(values);
        for (std::size_t i = 0; i < terms; ++i) coefficients[i] += correction[i];
    }

    double max_abs = 0.0;
    for (double c : coefficients) max_abs = std::max(max_abs, std::abs(c));
    bool degenerate = false;
    if (degree > 0 && std::abs(coefficients.back()) <= 1e-14 * max_abs) {
        coefficients.back() = 0.0;
        degenerate = true;
    }

    PolynomialCurve trial(coefficients, 0.0, degenerate);
    double sse = 0.0;
    for (const auto& s : samples) {
        const double r = trial(s.x) - s.y;
        sse += r * r;
    }
    return PolynomialCurve(std::move(coefficients),
                           std::sqrt(sse / static_cast<double>(samples.size())), degenerate);
}

}  // namespace surfride
