#pragma once

#include "serrin/ball_field.hpp"
#include "serrin/curvature.hpp"

#include <Eigen/LU>

#include <memory>
#include <vector>

namespace serrin {

/// Discretization parameters shared by every solve.
struct Resolution {
    int dim = 2;
    int max_degree = 16;
    int radial_size = 32;
};

/// Spectral Dirichlet solver on the unit ball.  Holds the grid and one LU
/// factorization of the radial operator per harmonic degree.
class BallSolver {
public:
    explicit BallSolver(const Resolution& res);

    const BallGrid& grid() const { return grid_; }
    int dim() const { return grid_.dim(); }

    /// Delta psi = f in B_1, psi = h on the boundary.
    BallField poisson(const BallField& f, const SphereFunction& h) const;
    BallField harmonic_extension(const SphereFunction& h) const;
    /// (1 - |x|^2) / (2N)
    BallField torsion_ball() const;

    /// Sample-space version: f given on the grid, projected first.
    BallField poisson_samples(const Eigen::MatrixXd& f, const SphereFunction& h) const;

private:
    BallGrid grid_;
    std::vector<Eigen::PartialPivLU<Eigen::MatrixXd>> lu_;  // by degree
};

std::shared_ptr<const BallSolver> make_solver(const Resolution& res);

/// Poisson solve with an optional resolution guard: when tail_tolerance > 0
/// and the source carries more than that fraction of its energy in the top
/// harmonic degree, throws ResolutionError.
BallField poisson_solve(const BallSolver& solver, const BallField& f, const SphereFunction& h,
                        double tail_tolerance = -1.0);

/// Which third-order source to use for the curvature correction psi_eps.
///  Literal:  the three-term source with coefficients 1/3N, -1/4N, +1/6N
///            on Ric(X,X), g(D_X R(E_i,X)E_i,X), g(D_X R(E_i,X)X,E_i).
///  Expanded: the source obtained by expanding Delta_gbar phi_0 directly,
///            (eps^2/3N) Ric(x,x) + (eps^3/4N) (D_x Ric)(x,x).
enum class PsiSource { Literal, Expanded };

/// Right-hand side s(x) of -Delta psi_eps = s, sampled on the grid.
Eigen::MatrixXd psi_eps_source(const BallGrid& grid, const CurvaturePacket& packet, double eps,
                               PsiSource source);
BallField solve_psi_eps(const BallSolver& solver, const CurvaturePacket& packet, double eps,
                        PsiSource source = PsiSource::Expanded);

struct DirichletResult {
    BallField phi;
    int iterations = 0;
    double increment = 0.0;  // last sup-norm Picard increment
    double residual = 0.0;   // sup |Delta_hat g phi + 1| on the grid
};

struct PicardOptions {
    double tolerance = 1e-13;
    int max_iterations = 100;
    double tail_tolerance = 1e-6;
};

/// -Delta_hat g phi = 1 in B_1, phi = 0 on the boundary, by the fixed point
/// phi <- Delta^{-1}(-1 - (Delta_hat g - Delta) phi).  warm_start may be
/// null.
DirichletResult dirichlet_solve_full(const BallSolver& solver, const MetricField& metric,
                                     const BallField* warm_start = nullptr,
                                     const PicardOptions& opts = {});
DirichletResult dirichlet_solve_full(const BallSolver& solver, const MetricJet& jet,
                                     const PicardOptions& opts = {});

/// hat g(grad phi, nu_hat) = -|grad phi|_hat g on the boundary.
SphereFunction neumann_trace(const BallSolver& solver, const MetricField& metric, const BallField& phi);

/// int_{B_1} f dvol_hat g
double integrate_volume(const BallSolver& solver, const MetricField& metric, const BallField& f);
/// |B_1|_hat g and |dB_1|_hat g
double metric_volume(const BallSolver& solver, const MetricField& metric);
double metric_boundary_area(const BallSolver& solver, const MetricField& metric);

}  // namespace serrin
