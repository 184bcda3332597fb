#pragma once

#include "serrin/serrin.hpp"

#include <cstdint>
#include <functional>

namespace serrin {

/// Closed-form constants of the expansion of the reduced functional and of
/// the torsion profile.  Fields suffixed _printed keep the coefficients as
/// published where they differ from the rederived ones.
struct Constants {
    int dim = 2;
    double ball_volume = 0.0;  // |B_1|
    double J1 = 0.0;           // N(N+2)/|B_1|, the energy of the unit ball
    double alpha = 0.0;        // J1 + |B_1|/N^2
    double beta = 0.0;         // eps^2 S coefficient of Phi_eps
    double beta_printed = 0.0;
    double c = 0.0;            // v^{2/N} S coefficient of the profile ratio
    double c_printed = 0.0;

    // eps^2 S coefficients of the individual expansions
    double v0_coefficient = 0.0;            // -1/(3N(N+2))
    double volume_coefficient = 0.0;        // Serrin domain, -1/(2(N+2))
    double area_coefficient = 0.0;          // equals the volume one
    double area_coefficient_printed = 0.0;  // -(N+4)/(6(N+2))
    double torsion_coefficient = 0.0;       // int phi, -(N+2)/(2N(N+4))
    double geodesic_volume_coefficient = 0.0;  // -1/(6(N+2))
    double geodesic_J_coefficient = 0.0;       // J eps^{N+2}/J1, (N-2)/(6N(N+4))
    double geodesic_J_coefficient_printed = 0.0;

    bool beta_nonzero() const { return std::abs(beta) > 1e-6 && std::abs(beta_printed) > 1e-6; }
};

Constants constants(int dim);

/// 1 / int_{B_1} phi dvol_hat g
double energy_J(const BallSolver& solver, const MetricField& metric, const BallField& phi);

struct Volumes {
    double volume = 0.0;
    double boundary_area = 0.0;
};
/// Volume and boundary area of B_1 in the metric hat g (the rescaled
/// quantities; multiply by eps^N and eps^{N-1} for the g-quantities).
Volumes volumes(const BallSolver& solver, const MetricField& metric);

struct ReducedReport {
    double eps = 0.0;
    Vec point;
    double J_value = 0.0;
    double volume = 0.0;
    double boundary_area = 0.0;
    double phi_eps = 0.0;  // J + volume / N^2
    double F_value = 0.0;  // (phi_eps - alpha) / (beta eps^2)
    /// volume / N^2 - int phi, whose critical points in p carry a = 0
    double E_value = 0.0;
    bool flat = false;     // F is 0/0 on flat manifolds and reported as 0
    double a_norm = 0.0;
    double v_norm = 0.0;   // sup norm of v
    SerrinSolution solution;
};

ReducedReport reduced_functional(const ModelManifold& m, const Vec& p, double eps, const BallSolver& solver,
                                 const SerrinOptions& opts = {}, const SphereFunction* initial = nullptr);

/// Derivative-free trust region on a smooth function of a few variables.
/// Each step fits a full quadratic model by central differences whose
/// spacing follows the radius.
struct TrustRegionOptions {
    double initial_radius = 0.05;
    double max_radius = 0.25;
    double min_radius = 1e-5;
    int max_iterations = 60;
};

struct TrustRegionResult {
    Vec x;
    double value = 0.0;
    double radius = 0.0;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
};

TrustRegionResult trust_region_minimize(const std::function<double(const Vec&)>& f, const Vec& x0,
                                        const TrustRegionOptions& opts = {});

enum class CriticalObjective {
    /// volume / N^2 - int phi
    Balanced,
    /// J + volume / N^2, the functional as published
    Published,
};

struct CriticalOptions {
    TrustRegionOptions trust;
    CriticalObjective objective = CriticalObjective::Balanced;
    bool maximize = false;         // locate a maximum of the objective instead
    double kernel_tolerance = 1e-9;  // |a| accepted at the end of the polish
    double step_tolerance = 1e-6;    // Newton stops once |dp| < this * eps^2
    int max_newton = 20;
    double newton_step = 1e-4;     // finite-difference step in the chart
    double search_radius = 1.0;    // the search must stay this close to the start
    std::uint64_t seed = 0;
    double jitter = 1e-3;          // initial displacement, scaled by the seed's draw
    SerrinOptions serrin;
};

struct CriticalPoint {
    Vec point;
    Vec search_point;  // before the Newton polish
    SerrinSolution solution;
    TrustRegionResult search;
    int newton_iterations = 0;
    int evaluations = 0;
};

/// Critical point of the reduced objective near guess, polished so that the
/// kernel component vanishes.  Throws SearchFailure when the iterates leave
/// the search radius or the polish stalls.
CriticalPoint find_critical(const ModelManifold& m, double eps, const Vec& guess, const BallSolver& solver,
                            const CriticalOptions& opts = {});

/// Newton iteration on p -> a^{eps,p} only, for continuation along a curve
/// of critical points.
CriticalPoint polish_critical(const ModelManifold& m, double eps, const Vec& guess, const BallSolver& solver,
                              const CriticalOptions& opts = {});

/// Analytic and finite-difference first variation of int u, J = 1/int u and
/// the volume of a star-shaped planar domain {r < 1 + v(theta)} under the
/// flow d(theta)/ds = V_t(theta), d(log r)/ds = V_n(theta).  On the boundary
/// of the unit disk the velocity is V_n nu + V_t tau.
struct ShapeDerivative {
    double analytic = 0.0;           // dJ/ds
    double finite_difference = 0.0;
    double relative_error = 0.0;
    double torsion_analytic = 0.0;   // d(int u)/ds
    double torsion_fd = 0.0;
    double volume_analytic = 0.0;
    double volume_fd = 0.0;
};

ShapeDerivative shape_derivative_check(const BallSolver& solver, const SphereFunction& base_profile,
                                       const SphereFunction& normal_speed, const SphereFunction& tangential_speed,
                                       double h = 1e-4);

}  // namespace serrin
