#include "serrin/radial_grid.hpp"

#include "serrin/numerics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace serrin {

namespace {

Eigen::MatrixXd chebyshev_matrix(const Eigen::VectorXd& x) {
    const int n = static_cast<int>(x.size());
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
    auto c = [n](int i) { return ((i == 0 || i == n - 1) ? 2.0 : 1.0) * ((i % 2) ? -1.0 : 1.0); };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) D(i, j) = (c(i) / c(j)) / (x[i] - x[j]);
        }
        // negative-sum trick keeps D exact on constants
        D(i, i) = 0.0;
        D(i, i) = -D.row(i).sum();
    }
    return D;
}

Eigen::MatrixXd fold(const Eigen::MatrixXd& full, int M, int parity) {
    const int n = 2 * M;
    Eigen::MatrixXd F(M, M);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) F(i, j) = full(i, j) + parity * full(i, n - 1 - j);
    return F;
}

}  // namespace

RadialGrid::RadialGrid(int M) : M_(M) {
    if (M < 4) throw std::invalid_argument("radial resolution must be at least 4");
    const int n = 2 * M;
    full_.resize(n);
    for (int j = 0; j < n; ++j)
        full_[j] = std::sin(std::numbers::pi * (n - 1 - 2.0 * j) / (2.0 * (n - 1)));
    r_ = full_.head(M);

    const Eigen::MatrixXd D = chebyshev_matrix(full_);
    Eigen::MatrixXd D2 = D * D;
    for (int i = 0; i < n; ++i) {
        D2(i, i) = 0.0;
        D2(i, i) = -D2.row(i).sum();
    }
    d1_even_ = fold(D, M, +1);
    d1_odd_ = fold(D, M, -1);
    d2_even_ = fold(D2, M, +1);
    d2_odd_ = fold(D2, M, -1);
}

Eigen::RowVectorXd RadialGrid::interpolation_row(double r, int parity) const {
    const int n = 2 * M_;
    Eigen::RowVectorXd full = Eigen::RowVectorXd::Zero(n);
    int hit = -1;
    for (int j = 0; j < n; ++j)
        if (std::abs(r - full_[j]) < 1e-15) hit = j;
    if (hit >= 0) {
        full[hit] = 1.0;
    } else {
        double denom = 0.0;
        for (int j = 0; j < n; ++j) {
            double w = ((j % 2) ? -1.0 : 1.0) * ((j == 0 || j == n - 1) ? 0.5 : 1.0);
            full[j] = w / (r - full_[j]);
            denom += full[j];
        }
        full /= denom;
    }
    Eigen::RowVectorXd row(M_);
    for (int i = 0; i < M_; ++i) row[i] = full[i] + parity * full[n - 1 - i];
    return row;
}

Eigen::VectorXd RadialGrid::radial_weights(int dim) const {
    std::vector<double> x, w;
    gauss_legendre(M_ + 2, x, w);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(M_);
    for (std::size_t q = 0; q < x.size(); ++q) {
        const double r = 0.5 * (x[q] + 1.0);
        const double weight = 0.5 * w[q] * std::pow(r, dim - 1);
        out += weight * interpolation_row(r, +1).transpose();
    }
    return out;
}

}  // namespace serrin
