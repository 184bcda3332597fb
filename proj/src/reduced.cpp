#include "serrin/reduced.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

namespace serrin {

Constants constants(int dim) {
    if (dim < 2) throw std::invalid_argument("dimension must be at least 2");
    const double N = dim;
    Constants c;
    c.dim = dim;
    c.ball_volume = unit_ball_volume(dim);
    const double B = c.ball_volume;
    c.J1 = N * (N + 2) / B;
    c.alpha = (N * N * N * (N + 2) + B * B) / (N * N * B);
    c.beta_printed = (N * N * std::pow(N + 2, 3) - (N + 4) * B * B) / (2 * N * N * (N + 2) * (N + 4));
    // J1 times the relative torsion coefficient plus |B_1|/N^2 times the
    // volume coefficient; the printed closed form is this times |B_1|.
    c.beta = c.beta_printed / B;
    c.c = std::pow(B, -2.0 / N) / (N * (N + 4));
    c.c_printed = (N + 6) / (6 * N * (N + 4)) * std::pow(B, -2.0 / N);

    c.v0_coefficient = -1.0 / (3 * N * (N + 2));
    c.volume_coefficient = -1.0 / (2 * (N + 2));
    c.area_coefficient = c.volume_coefficient;
    c.area_coefficient_printed = -(N + 4) / (6 * (N + 2));
    c.torsion_coefficient = -(N + 2) / (2 * N * (N + 4));
    c.geodesic_volume_coefficient = -1.0 / (6 * (N + 2));
    c.geodesic_J_coefficient = (N - 2) / (6 * N * (N + 4));
    c.geodesic_J_coefficient_printed = -1.0 / (3 * N * (N + 4));
    return c;
}

double energy_J(const BallSolver& solver, const MetricField& metric, const BallField& phi) {
    return 1.0 / integrate_volume(solver, metric, phi);
}

Volumes volumes(const BallSolver& solver, const MetricField& metric) {
    return {metric_volume(solver, metric), metric_boundary_area(solver, metric)};
}

ReducedReport reduced_functional(const ModelManifold& m, const Vec& p, double eps, const BallSolver& solver,
                                 const SerrinOptions& opts, const SphereFunction* initial) {
    const int N = solver.dim();
    ReducedReport r;
    r.eps = eps;
    r.point = p;
    r.solution = solve_serrin(m, p, eps, solver, opts, initial);
    r.J_value = energy_J(solver, r.solution.metric, r.solution.potential);
    const Volumes v = volumes(solver, r.solution.metric);
    r.volume = v.volume;
    r.boundary_area = v.boundary_area;
    r.phi_eps = r.J_value + r.volume / (N * N);
    r.E_value = r.volume / (N * N) - 1.0 / r.J_value;
    r.flat = m.kind() == ManifoldKind::Flat;
    r.F_value = r.flat ? 0.0 : (r.phi_eps - constants(N).alpha) / (constants(N).beta * eps * eps);
    r.a_norm = r.solution.state.a.norm();
    r.v_norm = solver.grid().sphere().sup_norm(r.solution.profile());
    return r;
}

// ---------------------------------------------------------------------------

namespace {

// argmin g.s + s.H.s/2 over |s| <= radius
Vec trust_step(const Vec& g, const Mat& H, double radius) {
    const int n = static_cast<int>(g.size());
    Eigen::SelfAdjointEigenSolver<Mat> es(H);
    const Vec lam = es.eigenvalues();
    const Mat Q = es.eigenvectors();
    const Vec gt = Q.transpose() * g;
    auto step = [&](double mu) {
        Vec s(n);
        for (int i = 0; i < n; ++i) s[i] = -gt[i] / (lam[i] + mu);
        return s;
    };
    if (lam[0] > 0.0) {
        Vec s = step(0.0);
        if (s.norm() <= radius) return Q * s;
    }
    double lo = std::max(0.0, -lam[0]) * (1 + 1e-12) + 1e-300;
    Vec slo = step(lo);
    if (!std::isfinite(slo.norm()) || slo.norm() > radius) {
        double hi = lo + g.norm() / radius + std::abs(lam[n - 1]) + 1.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (step(mid).norm() > radius ? lo : hi) = mid;
        }
        return Q * step(hi);
    }
    // Hard case: fill up to the boundary along the lowest eigenvector.
    const double t = std::sqrt(std::max(0.0, radius * radius - slo.squaredNorm()));
    Vec s = slo;
    s[0] += t;
    return Q * s;
}

}  // namespace

TrustRegionResult trust_region_minimize(const std::function<double(const Vec&)>& f, const Vec& x0,
                                        const TrustRegionOptions& opts) {
    const int n = static_cast<int>(x0.size());
    TrustRegionResult res;
    res.x = x0;
    res.radius = opts.initial_radius;
    res.value = f(res.x);
    res.evaluations = 1;
    for (res.iterations = 1; res.iterations <= opts.max_iterations; ++res.iterations) {
        const double h = 0.5 * res.radius;
        Vec g(n), fp(n), fm(n);
        Mat H(n, n);
        for (int i = 0; i < n; ++i) {
            Vec e = Vec::Zero(n);
            e[i] = h;
            fp[i] = f(res.x + e);
            fm[i] = f(res.x - e);
            g[i] = (fp[i] - fm[i]) / (2 * h);
            H(i, i) = (fp[i] - 2 * res.value + fm[i]) / (h * h);
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                Vec e = Vec::Zero(n);
                e[i] = e[j] = h;
                H(i, j) = H(j, i) = (f(res.x + e) - fp[i] - fp[j] + res.value) / (h * h);
                ++res.evaluations;
            }
        res.evaluations += 2 * n;

        const Vec s = trust_step(g, H, res.radius);
        const double predicted = -(g.dot(s) + 0.5 * s.dot(H * s));
        if (!(predicted > 0.0)) {
            // The model sees no descent at this scale.
            res.radius *= 0.25;
        } else {
            const double trial = f(res.x + s);
            ++res.evaluations;
            const double ratio = (res.value - trial) / predicted;
            if (ratio > 0.1) {
                res.x += s;
                res.value = trial;
            }
            if (ratio > 0.75 && s.norm() > 0.99 * res.radius)
                res.radius = std::min(2.0 * res.radius, opts.max_radius);
            else if (ratio < 0.25)
                res.radius *= 0.25;
            else if (s.norm() < 0.5 * res.radius)
                res.radius = std::max(s.norm(), 0.25 * res.radius);
        }
        if (res.radius < opts.min_radius) {
            res.converged = true;
            break;
        }
    }
    return res;
}

// ---------------------------------------------------------------------------

CriticalPoint polish_critical(const ModelManifold& m, double eps, const Vec& guess, const BallSolver& solver,
                              const CriticalOptions& opts) {
    const int n = static_cast<int>(guess.size());
    CriticalPoint cp;
    cp.point = guess;
    cp.search_point = guess;
    cp.solution = solve_serrin(m, cp.point, eps, solver, opts.serrin);
    ++cp.evaluations;
    // The kernel component scales like eps^3 |p - p_eps|, so convergence is
    // judged on the Newton step rather than on |a| alone.
    while (cp.newton_iterations < opts.max_newton && cp.solution.state.a.norm() > 1e-14) {
        Mat Jac(n, n);
        for (int j = 0; j < n; ++j) {
            Vec e = Vec::Zero(n);
            e[j] = opts.newton_step;
            const Vec ap = solve_serrin(m, cp.point + e, eps, solver, opts.serrin).state.a;
            const Vec am = solve_serrin(m, cp.point - e, eps, solver, opts.serrin).state.a;
            Jac.col(j) = (ap - am) / (2 * opts.newton_step);
            cp.evaluations += 2;
        }
        Eigen::FullPivLU<Mat> lu(Jac);
        if (!lu.isInvertible()) {
            if (cp.solution.state.a.norm() < opts.kernel_tolerance) break;  // degenerate but already solved
            throw SearchFailure("kernel map has a singular Jacobian");
        }
        const Vec step = lu.solve(cp.solution.state.a);
        cp.point -= step;
        ++cp.newton_iterations;
        if ((cp.point - guess).norm() > opts.search_radius)
            throw SearchFailure("Newton polish left the search region");
        cp.solution = solve_serrin(m, cp.point, eps, solver, opts.serrin);
        ++cp.evaluations;
        if (step.norm() < opts.step_tolerance * eps * eps) break;
    }
    if (cp.solution.state.a.norm() < opts.kernel_tolerance) return cp;
    throw SearchFailure("Newton polish on the kernel component stalled");
}

CriticalPoint find_critical(const ModelManifold& m, double eps, const Vec& guess, const BallSolver& solver,
                            const CriticalOptions& opts) {
    const int n = static_cast<int>(guess.size());
    std::mt19937_64 gen(opts.seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    Vec start = guess;
    for (int i = 0; i < n; ++i) start[i] += opts.jitter * U(gen);

    const double sign = opts.maximize ? -1.0 : 1.0;
    auto objective = [&](const Vec& p) {
        if ((p - guess).norm() > opts.search_radius) throw SearchFailure("search left the chart region");
        const ReducedReport r = reduced_functional(m, p, eps, solver, opts.serrin);
        return sign * (opts.objective == CriticalObjective::Balanced ? r.E_value : r.phi_eps);
    };
    TrustRegionResult tr = trust_region_minimize(objective, start, opts.trust);
    if (!tr.converged) throw SearchFailure("trust region did not converge");

    CriticalPoint cp = polish_critical(m, eps, tr.x, solver, opts);
    cp.search_point = tr.x;
    cp.search = tr;
    cp.evaluations += tr.evaluations;
    return cp;
}

// ---------------------------------------------------------------------------

namespace {

// d/dtheta of a function on the circle in the cos/sin basis
SphereFunction angular_derivative(const SphereFunction& f) {
    SphereFunction d(2, f.max_degree);
    for (int k = 1; k <= f.max_degree; ++k) {
        d.at(k, k) = k * f.at(k, -k);
        d.at(k, -k) = -k * f.at(k, k);
    }
    return d;
}

double circle_value(const SphereFunction& f, double theta) {
    Eigen::VectorXd x(2);
    x << std::cos(theta), std::sin(theta);
    return f.evaluate(x);
}

// Profile of the flowed domain at time s, sampled on the sphere nodes.
// The flow is autonomous, so the preimage of a node is found by running the
// angular equation backwards; log r picks up int V_n along the way.
SphereFunction flowed_profile(const SphereBasis& sphere, const SphereFunction& base, const SphereFunction& vn,
                              const SphereFunction& vt, double s) {
    const int steps = 16;
    const double dt = -s / steps;
    Eigen::VectorXd r(sphere.num_nodes());
    for (int j = 0; j < sphere.num_nodes(); ++j) {
        double th = std::atan2(sphere.nodes()(j, 1), sphere.nodes()(j, 0));
        double logr = 0.0;
        for (int k = 0; k < steps; ++k) {
            // RK4 on (theta, -int V_n) backwards in time
            const double k1 = circle_value(vt, th), q1 = circle_value(vn, th);
            const double k2 = circle_value(vt, th + 0.5 * dt * k1), q2 = circle_value(vn, th + 0.5 * dt * k1);
            const double k3 = circle_value(vt, th + 0.5 * dt * k2), q3 = circle_value(vn, th + 0.5 * dt * k2);
            const double k4 = circle_value(vt, th + dt * k3), q4 = circle_value(vn, th + dt * k3);
            th += dt * (k1 + 2 * k2 + 2 * k3 + k4) / 6.0;
            logr -= dt * (q1 + 2 * q2 + 2 * q3 + q4) / 6.0;
        }
        r[j] = (1.0 + circle_value(base, th)) * std::exp(logr) - 1.0;
    }
    return sphere.analyze(r);
}

struct DomainSolve {
    double torsion = 0.0;
    double volume = 0.0;
    MetricField metric;
    BallField phi;
};

DomainSolve solve_domain(const BallSolver& solver, const SphereFunction& profile) {
    DomainSolve d;
    d.metric = assemble_metric(euclidean_jet(2, profile), solver.grid());
    d.phi = dirichlet_solve_full(solver, d.metric).phi;
    d.torsion = integrate_volume(solver, d.metric, d.phi);
    d.volume = metric_volume(solver, d.metric);
    return d;
}

}  // namespace

ShapeDerivative shape_derivative_check(const BallSolver& solver, const SphereFunction& base_profile,
                                       const SphereFunction& normal_speed, const SphereFunction& tangential_speed,
                                       double h) {
    if (solver.dim() != 2) throw std::invalid_argument("shape derivative check is planar");
    const SphereBasis& sphere = solver.grid().sphere();
    const int L = solver.grid().max_degree();
    auto fit = [L](const SphereFunction& f) {
        SphereFunction g(2, L);
        const int n = std::min(g.size(), f.size());
        g.coeffs.head(n) = f.coeffs.head(n);
        return g;
    };
    const SphereFunction base = fit(base_profile), vn = fit(normal_speed), vt = fit(tangential_speed);

    ShapeDerivative out;
    const DomainSolve d0 = solve_domain(solver, base);
    const SphereFunction trace = neumann_trace(solver, d0.metric, d0.phi);
    const Eigen::VectorXd t = sphere.synthesize(trace);
    const Eigen::VectorXd rho = sphere.synthesize(base).array() + 1.0;
    const Eigen::VectorXd drho = sphere.synthesize(angular_derivative(base));
    const Eigen::VectorXd n_s = sphere.synthesize(vn), t_s = sphere.synthesize(vt);
    // Xi . nu dsigma = (rho^2 V_n - rho rho' V_t) dtheta
    const Eigen::VectorXd flux = rho.cwiseProduct(rho).cwiseProduct(n_s) - rho.cwiseProduct(drho).cwiseProduct(t_s);
    out.torsion_analytic = sphere.integrate(t.cwiseProduct(t).cwiseProduct(flux));
    out.volume_analytic = sphere.integrate(flux);
    const double J = 1.0 / d0.torsion;
    out.analytic = -J * J * out.torsion_analytic;

    const DomainSolve dp = solve_domain(solver, flowed_profile(sphere, base, vn, vt, h));
    const DomainSolve dm = solve_domain(solver, flowed_profile(sphere, base, vn, vt, -h));
    out.torsion_fd = (dp.torsion - dm.torsion) / (2 * h);
    out.volume_fd = (dp.volume - dm.volume) / (2 * h);
    out.finite_difference = (1.0 / dp.torsion - 1.0 / dm.torsion) / (2 * h);
    out.relative_error = std::abs(out.analytic - out.finite_difference) / std::max(std::abs(out.analytic), 1e-300);
    return out;
}

}  // namespace serrin
