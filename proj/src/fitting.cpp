#include "serrin/fitting.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace serrin {

double PowerFit::coefficient(double power) const {
    for (std::size_t j = 0; j < powers.size(); ++j)
        if (std::abs(powers[j] - power) < 1e-12) return coeffs[j];
    throw std::out_of_range("power not part of the fit");
}

double PowerFit::operator()(double x) const {
    double s = 0.0;
    for (std::size_t j = 0; j < powers.size(); ++j) s += coeffs[j] * std::pow(x, powers[j]);
    return s;
}

PowerFit fit_powers(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& powers) {
    if (x.size() != y.size() || x.size() < powers.size()) throw std::invalid_argument("underdetermined fit");
    const int n = static_cast<int>(x.size()), k = static_cast<int>(powers.size());
    // Columns are scaled to unit norm before the QR solve; the powers span
    // several decades on typical sweeps.
    Eigen::MatrixXd A(n, k);
    Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(y.data(), n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j) A(i, j) = std::pow(x[i], powers[j]);
    Eigen::VectorXd scale = A.colwise().norm().transpose();
    for (int j = 0; j < k; ++j) A.col(j) /= scale[j];
    Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
    PowerFit fit;
    fit.powers = powers;
    fit.max_residual = (A * c - b).cwiseAbs().maxCoeff();
    for (int j = 0; j < k; ++j) fit.coeffs.push_back(c[j] / scale[j]);
    return fit;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(std::abs(y[i])));
    }
    PowerFit f = fit_powers(lx, ly, {0.0, 1.0});
    return f.coeffs[1];
}

std::vector<double> log_spaced(double a, double b, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = n == 1 ? a : std::exp(std::log(a) + (std::log(b) - std::log(a)) * i / (n - 1.0));
    return out;
}

}  // namespace serrin
