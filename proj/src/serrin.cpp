#include "serrin/serrin.hpp"

#include <cmath>

namespace serrin {

GEvaluation evaluate_G(const ModelManifold& m, const Vec& p, double eps, const SphereFunction& profile,
                       const BallSolver& solver, const SerrinOptions& opts, const BallField* warm_start) {
    GEvaluation out;
    out.jet = make_jet(m, p, eps, profile, opts.fidelity, opts.extension);
    out.metric = assemble_metric(out.jet, solver.grid());
    out.dirichlet = dirichlet_solve_full(solver, out.metric, warm_start, opts.picard);
    out.G = neumann_trace(solver, out.metric, out.dirichlet.phi);
    out.G += SphereFunction::constant(solver.dim(), out.G.max_degree, 1.0 / solver.dim());
    return out;
}

SphereFunction G_map(const ModelManifold& m, const Vec& p, double eps, const PerturbationState& state,
                     const BallSolver& solver, const SerrinOptions& opts) {
    return evaluate_G(m, p, eps, state.domain_profile(), solver, opts).G;
}

SerrinSolution solve_serrin(const ModelManifold& m, const Vec& p, double eps, const BallSolver& solver,
                            const SerrinOptions& opts, const SphereFunction* initial) {
    const int N = solver.dim();
    const int L = solver.grid().max_degree();
    const SphereBasis& sphere = solver.grid().sphere();

    SphereFunction v(N, L);
    if (initial) {
        v.coeffs.head(std::min(v.size(), initial->size())) = initial->coeffs.head(std::min(v.size(), initial->size()));
    } else if (opts.curvature_seed) {
        v = SphereFunction::constant(N, L, -m.scalar(p) * eps * eps / (3.0 * N * (N + 2)));
    }

    SerrinSolution sol;
    sol.eps = eps;
    sol.point = p;
    BallField warm;
    bool have_warm = false;
    for (int step = 0; step <= opts.max_iterations; ++step) {
        const double vn = sphere.sup_norm(v);
        if (!(vn <= opts.divergence_bound))
            throw DivergenceError("boundary perturbation left the small-perturbation regime");
        PerturbationState s = PerturbationState::split(v);
        GEvaluation ev = evaluate_G(m, p, eps, s.domain_profile(), solver, opts, have_warm ? &warm : nullptr);
        SphereFunction reduced = ev.G + project_linear(v);
        const double res = sphere.sup_norm(reduced);
        sol.iterations.push_back({step, res, vn, ev.dirichlet.iterations});
        warm = ev.dirichlet.phi;
        have_warm = true;
        if (res < opts.tolerance) {
            // a is read off the residual so that G = -<a, x> holds exactly in
            // degree one.
            s.a = -ev.G.linear_part();
            sol.state = s;
            sol.potential = std::move(ev.dirichlet.phi);
            sol.residual_overdetermined = ev.G + SphereFunction::linear(N, L, s.a);
            sol.residual_norm = sphere.sup_norm(sol.residual_overdetermined);
            sol.jet = std::move(ev.jet);
            sol.metric = std::move(ev.metric);
            return sol;
        }
        v -= calL_solve(reduced);
    }
    throw EnvelopeError("quasi-Newton iteration did not converge");
}

double gradient_kappa(int dim, PsiSource source) {
    // The cubic source is (c/N) eps^3 (D_x Ric)(x, x) with c = 1/4 (expanded)
    // or 5/12 (literal coefficients).  Integrating x^i against it with
    // int x^i x^k x^l x^m = K (delta delta + ...) and the contracted Bianchi
    // identity gives m = -2 c K eps^3 grad S.
    const double K = unit_ball_volume(dim) / ((dim + 2.0) * (dim + 4.0));
    const double c = source == PsiSource::Expanded ? 0.25 : 5.0 / 12.0;
    return -2.0 * c * K;
}

GradientDiagnostic gradient_diagnostic(const ModelManifold& m, const SerrinSolution& sol, const BallSolver& solver,
                                       PsiSource source) {
    const int N = solver.dim();
    const double vol = unit_ball_volume(N);
    BallField psi = solve_psi_eps(solver, m.packet(sol.point), sol.eps, source);
    SphereFunction dn(N, solver.grid().max_degree());
    dn.coeffs = solver.grid().radial_derivative(psi, 1).row(0).transpose();

    GradientDiagnostic d;
    // int_S x^i f = |B_1| a_i when Pi_1 f = <a, x>.
    d.moment = N * vol * dn.linear_part();
    d.kappa = gradient_kappa(N, source);
    d.gradient_estimate = d.moment / (d.kappa * std::pow(sol.eps, 3));
    d.solver_moment = -N * vol * sol.state.a;
    return d;
}

}  // namespace serrin
