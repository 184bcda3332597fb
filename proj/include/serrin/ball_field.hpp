#pragma once

#include "serrin/numerics.hpp"
#include "serrin/radial_grid.hpp"
#include "serrin/sphere_spectral.hpp"

#include <Eigen/Dense>

#include <vector>

namespace serrin {

/// A function on the closed unit ball: radial[i, m] is the coefficient of
/// Y_m(x/|x|) at radial node r_i.  Row 0 is the boundary r = 1.
struct BallField {
    int dim = 2;
    int max_degree = 0;
    Eigen::MatrixXd radial;

    BallField() = default;
    BallField(int dim_, int max_degree_, int M)
        : dim(dim_), max_degree(max_degree_),
          radial(Eigen::MatrixXd::Zero(M, mode_count(dim_, max_degree_))) {}

    int radial_size() const { return static_cast<int>(radial.rows()); }
    int num_modes() const { return static_cast<int>(radial.cols()); }
    SphereFunction trace() const;

    BallField& operator+=(const BallField& o) {
        radial += o.radial;
        return *this;
    }
    BallField& operator-=(const BallField& o) {
        radial -= o.radial;
        return *this;
    }
    BallField& operator*=(double s) {
        radial *= s;
        return *this;
    }
    friend BallField operator+(BallField a, const BallField& b) { return a += b; }
    friend BallField operator-(BallField a, const BallField& b) { return a -= b; }
    friend BallField operator*(double s, BallField a) { return a *= s; }
};

/// Values and Cartesian derivatives on the tensor grid (radial node i,
/// sphere node j).  Every matrix is M x num_nodes; Hessian components use
/// packed_index.
struct GridSamples {
    Eigen::MatrixXd value;
    std::vector<Eigen::MatrixXd> grad;
    std::vector<Eigen::MatrixXd> hess;
};

/// Tensor product of the folded Chebyshev radial grid with a sphere
/// quadrature.
class BallGrid {
public:
    BallGrid(int dim, int max_degree, int radial_size, int exactness = -1);

    int dim() const { return sphere_.dim(); }
    int max_degree() const { return sphere_.max_degree(); }
    int radial_size() const { return radial_.size(); }
    int num_nodes() const { return sphere_.num_nodes(); }
    int num_modes() const { return sphere_.num_modes(); }
    const SphereBasis& sphere() const { return sphere_; }
    const RadialGrid& radial() const { return radial_; }
    /// (-1)^k for each mode
    int parity(int mode) const { return (sphere_.degrees()[mode] % 2) ? -1 : 1; }

    BallField zero() const { return BallField(dim(), max_degree(), radial_size()); }
    Vec point(int i, int j) const;

    Eigen::MatrixXd synthesize(const BallField& u) const;
    BallField analyze(const Eigen::MatrixXd& samples) const;

    /// Spectral radial derivative of each mode, honoring its parity.
    Eigen::MatrixXd radial_derivative(const BallField& u, int order) const;

    /// Cartesian derivatives from radial profiles f, f', f'' given per mode
    /// (each M x num_modes).  This is shared by spectral fields and by
    /// explicitly known extensions such as r^k Y or chi(r) Y.
    GridSamples derivatives(const Eigen::MatrixXd& f, const Eigen::MatrixXd& f1,
                            const Eigen::MatrixXd& f2, bool hessian = true) const;
    GridSamples derivatives(const BallField& u, bool hessian = true) const;

    /// Euclidean Laplacian sampled on the grid.
    Eigen::MatrixXd laplacian_samples(const GridSamples& s) const;

    /// int_{B_1} f dx from grid samples.
    double integrate(const Eigen::MatrixXd& samples) const;
    /// int_{S^{N-1}} f dsigma from samples at the boundary nodes.
    double integrate_boundary(const Eigen::VectorXd& samples) const;

    /// Point evaluation anywhere in the closed ball.
    double evaluate(const BallField& u, const Vec& x) const;

    /// Fraction of the coefficient energy carried by the top harmonic degree.
    double angular_tail(const BallField& u) const;

private:
    SphereBasis sphere_;
    RadialGrid radial_;
    Eigen::VectorXd radial_weights_;
};

}  // namespace serrin
