/**
 * @file polynomial.hpp
 * @brief Power-series curves (calm-water resistance R(u), open-water K_T(J))
 *        and their least-squares fitting.
 */
#pragma once

#include <span>
#include <vector>

namespace surfride {

/// One (abscissa, ordinate) pair of a fit table.
struct Sample {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Sample&) const = default;
};

/**
 * @brief Polynomial c_0 + c_1 x + ... + c_N x^N.
 *
 * For degree >= 1 the leading coefficient must be non-zero unless the
 * curve is explicitly flagged degenerate (a fit whose top term vanished).
 */
class PolynomialCurve {
public:
    /// The zero constant.
    PolynomialCurve();
    explicit PolynomialCurve(std::vector<double> coefficients, double residual_rms = 0.0,
                             bool degenerate = false);

    int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
    std::span<const double> coefficients() const { return coefficients_; }
    /// c_i, or zero past the degree.
    double coefficient(int i) const;
    double residual_rms() const { return residual_rms_; }
    bool degenerate() const { return degenerate_; }

    /// Horner evaluation.
    double operator()(double x) const;

    bool operator==(const PolynomialCurve&) const = default;

private:
    std::vector<double> coefficients_;
    double residual_rms_ = 0.0;
    bool degenerate_ = false;
};

struct FitOptions {
    /// Reject when the spectral condition number of the (scaled) normal
    /// matrix exceeds this bound.
    double max_condition = 1e12;
};

/**
 * @brief Least-squares polynomial fit through the normal equations.
 *
 * Abscissae are centred and scaled to [-1, 1] before the normal matrix is
 * formed; coefficients are mapped back to the raw variable afterwards.
 * Throws FitError when there are fewer distinct abscissae than
 * degree + 1 or when the conditioning guard trips.
 */
PolynomialCurve fit_polynomial(std::span<const Sample> samples, int degree,
                               const FitOptions& options = {});

}  // namespace surfride
