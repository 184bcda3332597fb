#include "serrin/ball_solver.hpp"

#include <cmath>

namespace serrin {

BallSolver::BallSolver(const Resolution& res) : grid_(res.dim, res.max_degree, res.radial_size) {
    const RadialGrid& rg = grid_.radial();
    const int M = rg.size();
    const double N = res.dim;
    const Eigen::ArrayXd r = rg.nodes().array();
    lu_.reserve(res.max_degree + 1);
    for (int k = 0; k <= res.max_degree; ++k) {
        const int par = (k % 2) ? -1 : 1;
        Eigen::MatrixXd A = rg.D2(par);
        A += ((N - 1.0) / r).matrix().asDiagonal() * rg.D1(par);
        A.diagonal().array() -= k * (k + N - 2.0) / (r * r);
        A.row(0).setZero();
        A(0, 0) = 1.0;
        lu_.emplace_back(A);
    }
    (void)M;
}

BallField BallSolver::poisson(const BallField& f, const SphereFunction& h) const {
    BallField u = grid_.zero();
    const auto& deg = grid_.sphere().degrees();
    for (int m = 0; m < u.num_modes(); ++m) {
        Eigen::VectorXd rhs = f.radial.col(m);
        rhs[0] = m < h.size() ? h.coeffs[m] : 0.0;
        u.radial.col(m) = lu_[deg[m]].solve(rhs);
    }
    return u;
}

BallField BallSolver::harmonic_extension(const SphereFunction& h) const {
    return poisson(grid_.zero(), h);
}

BallField BallSolver::torsion_ball() const {
    BallField u = grid_.zero();
    const double N = dim();
    const double y0 = std::sqrt(N * unit_ball_volume(dim()));
    const Eigen::ArrayXd r = grid_.radial().nodes().array();
    u.radial.col(0) = ((1.0 - r * r) / (2.0 * N) * y0).matrix();
    return u;
}

BallField BallSolver::poisson_samples(const Eigen::MatrixXd& f, const SphereFunction& h) const {
    return poisson(grid_.analyze(f), h);
}

std::shared_ptr<const BallSolver> make_solver(const Resolution& res) {
    return std::make_shared<BallSolver>(res);
}

BallField poisson_solve(const BallSolver& solver, const BallField& f, const SphereFunction& h,
                        double tail_tolerance) {
    if (tail_tolerance > 0.0 && solver.grid().angular_tail(f) > tail_tolerance)
        throw ResolutionError("source is not resolved by the harmonic truncation");
    return solver.poisson(f, h);
}

// ---------------------------------------------------------------------------

Eigen::MatrixXd psi_eps_source(const BallGrid& grid, const CurvaturePacket& P, double eps, PsiSource source) {
    const int N = grid.dim();
    const int M = grid.radial_size();
    const int nn = grid.num_nodes();
    const double e2 = eps * eps / (3.0 * N);
    const double e3 = eps * eps * eps / N;

    // Cubic forms c(x) = C_klm x^k x^l x^m.
    std::vector<double> literal(N * N * N, 0.0), expanded(N * N * N, 0.0);
    for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l)
            for (int m = 0; m < N; ++m) {
                double a = 0.0, b = 0.0;
                for (int i = 0; i < N; ++i) {
                    a += P.nabla(i, k, i, l, m);  // g(D_X R(E_i,X)E_i,X)
                    b += P.nabla(i, k, l, i, m);  // g(D_X R(E_i,X)X,E_i)
                }
                literal[(k * N + l) * N + m] = -0.25 * a + b / 6.0;
                // (D_x Ric)(x,x), Ric_kl = -sum_i R_kili
                double dric = 0.0;
                for (int i = 0; i < N; ++i) dric -= P.nabla(k, i, l, i, m);
                expanded[(k * N + l) * N + m] = 0.25 * dric;
            }
    const std::vector<double>& cubic = source == PsiSource::Literal ? literal : expanded;

    Eigen::MatrixXd s(M, nn);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < nn; ++j) {
            const Vec x = grid.point(i, j);
            double q = x.dot(P.ricci * x);
            double c = 0.0;
            for (int k = 0; k < N; ++k)
                for (int l = 0; l < N; ++l)
                    for (int m = 0; m < N; ++m) c += cubic[(k * N + l) * N + m] * x[k] * x[l] * x[m];
            s(i, j) = e2 * q + e3 * c;
        }
    return s;
}

BallField solve_psi_eps(const BallSolver& solver, const CurvaturePacket& packet, double eps, PsiSource source) {
    const Eigen::MatrixXd s = psi_eps_source(solver.grid(), packet, eps, source);
    return solver.poisson_samples(-s, SphereFunction(solver.dim(), solver.grid().max_degree()));
}

// ---------------------------------------------------------------------------

DirichletResult dirichlet_solve_full(const BallSolver& solver, const MetricField& metric,
                                     const BallField* warm_start, const PicardOptions& opts) {
    const BallGrid& grid = solver.grid();
    const int N = grid.dim();
    const SphereFunction zero_trace(N, grid.max_degree());
    DirichletResult res;
    res.phi = warm_start ? *warm_start : solver.torsion_ball();
    // The correction (Delta_hat g - Delta) phi is evaluated on the grid; the
    // Euclidean part is subtracted pointwise so that the fixed point only
    // sees the metric perturbation.
    for (int it = 1; it <= opts.max_iterations; ++it) {
        const GridSamples d = grid.derivatives(res.phi);
        const Eigen::MatrixXd pert = apply_laplacian(metric, d, N) - grid.laplacian_samples(d);
        const BallField src = grid.analyze(-Eigen::MatrixXd::Ones(pert.rows(), pert.cols()) - pert);
        BallField next = poisson_solve(solver, src, zero_trace, opts.tail_tolerance);
        res.increment = grid.synthesize(next - res.phi).cwiseAbs().maxCoeff();
        res.phi = std::move(next);
        res.iterations = it;
        if (res.increment < opts.tolerance) break;
    }
    if (!(res.increment < opts.tolerance) && res.increment > 1e3 * opts.tolerance)
        throw EnvelopeError("Dirichlet fixed point did not converge");
    const GridSamples d = grid.derivatives(res.phi);
    res.residual = (apply_laplacian(metric, d, N).array() + 1.0).abs().maxCoeff();
    if (d.value.block(1, 0, d.value.rows() - 1, d.value.cols()).minCoeff() <= 0.0)
        throw EnvelopeError("Dirichlet solution lost positivity");
    return res;
}

DirichletResult dirichlet_solve_full(const BallSolver& solver, const MetricJet& jet, const PicardOptions& opts) {
    return dirichlet_solve_full(solver, assemble_metric(jet, solver.grid()), nullptr, opts);
}

SphereFunction neumann_trace(const BallSolver& solver, const MetricField& metric, const BallField& phi) {
    const BallGrid& grid = solver.grid();
    const int N = grid.dim();
    const GridSamples d = grid.derivatives(phi, false);
    Eigen::VectorXd t(grid.num_nodes());
    for (int j = 0; j < grid.num_nodes(); ++j) {
        double q = 0.0;
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b)
                q += d.grad[a](0, j) * metric.ginv[packed_index(N, a, b)](0, j) * d.grad[b](0, j);
        if (!(q > 1e-300)) throw EnvelopeError("vanishing boundary gradient");
        t[j] = -std::sqrt(q);
    }
    return grid.sphere().analyze(t);
}

double integrate_volume(const BallSolver& solver, const MetricField& metric, const BallField& f) {
    const BallGrid& grid = solver.grid();
    return grid.integrate(grid.synthesize(f).cwiseProduct(metric.sqrt_det));
}

double metric_volume(const BallSolver& solver, const MetricField& metric) {
    return solver.grid().integrate(metric.sqrt_det);
}

double metric_boundary_area(const BallSolver& solver, const MetricField& metric) {
    return solver.grid().integrate_boundary(metric.boundary_density);
}

}  // namespace serrin
