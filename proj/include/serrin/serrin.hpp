#pragma once

#include "serrin/ball_solver.hpp"
#include "serrin/curvature.hpp"
#include "serrin/sphere_spectral.hpp"

#include <vector>

namespace serrin {

struct SerrinOptions {
    double tolerance = 1e-11;       // sup norm of the reduced residual
    int max_iterations = 50;
    double divergence_bound = 0.3;  // sup norm of v
    Fidelity fidelity = Fidelity::ExactChart;
    Extension extension = Extension::SolidHarmonic;
    PicardOptions picard;
    /// Start from the constant -S eps^2 / (3N(N+2)) instead of zero.
    bool curvature_seed = true;
};

/// One evaluation of the boundary map: the trace of the solved potential
/// on the perturbed ball plus 1/N.
struct GEvaluation {
    SphereFunction G;
    MetricJet jet;
    MetricField metric;
    DirichletResult dirichlet;
};

GEvaluation evaluate_G(const ModelManifold& m, const Vec& p, double eps, const SphereFunction& profile,
                       const BallSolver& solver, const SerrinOptions& opts = {},
                       const BallField* warm_start = nullptr);

/// G(p, eps, v0, vbar).  The kernel component of the state does not move the
/// boundary and is ignored.
SphereFunction G_map(const ModelManifold& m, const Vec& p, double eps, const PerturbationState& state,
                     const BallSolver& solver, const SerrinOptions& opts = {});

struct IterationRecord {
    int step = 0;
    double residual = 0.0;  // sup norm of G(v0, vbar) + Pi_1 v
    double v_norm = 0.0;    // sup norm of v
    int picard_iterations = 0;
};

struct SerrinSolution {
    double eps = 0.0;
    Vec point;
    PerturbationState state;
    BallField potential;
    /// trace + 1/N + <a, x>; vanishes at an exact solution
    SphereFunction residual_overdetermined;
    double residual_norm = 0.0;
    std::vector<IterationRecord> iterations;
    MetricJet jet;
    MetricField metric;

    /// v = v0 + <a, x> + vbar
    SphereFunction profile() const { return state.composite(); }
};

/// Quasi-Newton iteration v <- v - calL^{-1}(G(Pi_0 v + Pi v) + Pi_1 v) with
/// the frozen linearization.  initial may be null.  Throws EnvelopeError
/// when the iteration stalls and DivergenceError when |v| grows past the
/// bound.
SerrinSolution solve_serrin(const ModelManifold& m, const Vec& p, double eps, const BallSolver& solver,
                            const SerrinOptions& opts = {}, const SphereFunction* initial = nullptr);

/// Degree-one moment m_i = int_S x^i N d_nu psi_eps of the curvature
/// correction, its predicted proportionality constant, and the gradient
/// estimate m / (kappa eps^3).
struct GradientDiagnostic {
    Vec moment;
    double kappa = 0.0;
    Vec gradient_estimate;
    /// The same moment read off the full nonlinear solution, -N |B_1| a.
    Vec solver_moment;
};

/// kappa_N in m = kappa_N eps^3 grad S for the given source.
double gradient_kappa(int dim, PsiSource source = PsiSource::Expanded);

GradientDiagnostic gradient_diagnostic(const ModelManifold& m, const SerrinSolution& sol, const BallSolver& solver,
                                       PsiSource source = PsiSource::Expanded);

}  // namespace serrin
