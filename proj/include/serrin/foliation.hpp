#pragma once

#include "serrin/reduced.hpp"

#include <functional>
#include <vector>

namespace serrin {

/// Tangent vectors at p0 of the points of one perturbed geodesic sphere:
/// exp_{p0}(w(x)) = exp_{p_t}(t (1 + v(x)) sum x^i E_i^t), where E^t is the
/// frame exp(-F(p_t)) d/dy^i at p_t.
class RecenteredSphere {
public:
    RecenteredSphere(const ModelManifold& m, Vec base, Vec center, double t, SphereFunction profile);

    /// w at an arbitrary unit vector x, in the frame at the base point
    Vec operator()(const Vec& x) const;
    /// |exp_{p0}(w(x)) - exp_{p_t}(...)| in chart coordinates
    double residual(const Vec& x, const Vec& w) const;
    double t() const { return t_; }

private:
    Vec target(const Vec& x) const;

    ModelManifold m_;
    Vec base_, center_;
    double t_;
    SphereFunction profile_;
};

struct RecenteredField {
    Eigen::MatrixXd w;  // num_nodes x dim
    double max_residual = 0.0;
};

/// w^t at every quadrature node.  Throws EnvelopeError when the logarithm at
/// the base point fails, i.e. outside the injectivity region of the chart.
RecenteredField recentering_solve(const RecenteredSphere& sphere, const SphereBasis& basis);

struct RadialGraph {
    Eigen::VectorXd omega;          // omega(y) at the nodes y
    Eigen::MatrixXd alpha_inverse;  // num_nodes x dim
    int max_iterations = 0;
};

struct ReparametrizeOptions {
    int max_iterations = 50;
    double tolerance = 1e-12;
};

/// alpha^{-1}(y) by the fixed-point iteration x <- normalize(x + y - alpha(x))
/// started at y.  iterations, when given, receives the count.
Vec alpha_inverse(const std::function<Vec(const Vec&)>& w, const Vec& y, const ReparametrizeOptions& opts = {},
                  int* iterations = nullptr);

/// Writes the leaf as the radial graph y -> omega(y) y with
/// omega(y) = |w(alpha^{-1}(y))| and alpha(x) = w(x) / |w(x)|.  Throws FoliationError when alpha fails to be injective on the nodes or
/// the inversion does not converge.
RadialGraph reparametrize(const std::function<Vec(const Vec&)>& w, const SphereBasis& basis,
                          const ReparametrizeOptions& opts = {});

struct FoliationChart {
    Vec base;
    std::vector<double> t;
    std::vector<Vec> curve;                // p_t
    std::vector<SphereFunction> profiles;  // v^t
    Eigen::MatrixXd nodes;                 // y, num_nodes x dim
    Eigen::MatrixXd omega;                 // t.size() x num_nodes
    std::vector<Eigen::MatrixXd> alpha_inverse;
    double max_residual = 0.0;             // of the recentering solves
};

/// Builds the chart from leaves t -> (p_t, v^t).  Leaves are independent and
/// are computed on `workers` threads.
FoliationChart build_foliation(const ModelManifold& m, const Vec& base, const std::vector<double>& t,
                               const std::vector<Vec>& curve, const std::vector<SphereFunction>& profiles,
                               const SphereBasis& basis, int workers = 1);

/// Critical points (p_t, v^t) for each t, each found by the kernel Newton
/// iteration started at the base point.
std::vector<CriticalPoint> critical_curve(const ModelManifold& m, const Vec& base, const std::vector<double>& t,
                                          const BallSolver& solver, const CriticalOptions& opts = {},
                                          int workers = 1);

struct FoliationCertificate {
    double t1 = 0.0;                 // end of the certified prefix
    int certified = 0;               // number of grid values in it
    double min_dt_omega = 0.0;       // over the prefix and all nodes
    Eigen::VectorXd dt_omega_zero;   // extrapolated d_t omega(0, y) per node
    double dt_omega_zero_error = 0.0;  // max |d_t omega(0, y) - 1|
    bool nested = false;             // omega strictly increasing in t on the prefix
    double limit_slope = 0.0;        // max |omega - t| / t^2 over the prefix
};

/// Centered differences of omega in t (second order on nonuniform grids,
/// one-sided at the ends) and a cubic fit through the origin for the limit
/// of d_t omega.  Throws FoliationError when the first grid value already
/// fails monotonicity or fewer than eight values are given.
FoliationCertificate certify_foliation(const FoliationChart& chart);

}  // namespace serrin
