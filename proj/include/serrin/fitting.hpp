#pragma once

#include <vector>

namespace serrin {

/// Least-squares fit y ~ sum_j c_j x^{p_j}.  Coefficients follow the order
/// of powers.
struct PowerFit {
    std::vector<double> powers;
    std::vector<double> coeffs;
    double max_residual = 0.0;

    double coefficient(double power) const;
    double operator()(double x) const;
};

PowerFit fit_powers(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& powers);

/// Slope of the least-squares line through (log x, log |y|).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// n values from a to b, equally spaced in log.
std::vector<double> log_spaced(double a, double b, int n);

}  // namespace serrin
