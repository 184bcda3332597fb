#include "serrin/profile.hpp"

#include "serrin/parallel.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>

namespace serrin {

namespace {

MetricField ball_metric(const ModelManifold& m, const Vec& p, double eps, const BallSolver& solver,
                        Fidelity fidelity) {
    const SphereFunction round(solver.dim(), solver.grid().max_degree());
    return assemble_metric(make_jet(m, p, eps, round, fidelity), solver.grid());
}

}  // namespace

GeodesicBall J_geodesic_ball(const ModelManifold& m, const Vec& p, double eps, const BallSolver& solver,
                             Fidelity fidelity) {
    const int N = solver.dim();
    const MetricField metric = ball_metric(m, p, eps, solver, fidelity);
    const DirichletResult d = dirichlet_solve_full(solver, metric);
    GeodesicBall b;
    b.eps = eps;
    b.J_scaled = energy_J(solver, metric, d.phi);
    b.J = b.J_scaled / std::pow(eps, N + 2);
    b.volume = std::pow(eps, N) * metric_volume(solver, metric);
    return b;
}

double geodesic_ball_volume(const ModelManifold& m, const Vec& p, double eps, const BallSolver& solver,
                            Fidelity fidelity) {
    return std::pow(eps, solver.dim()) * metric_volume(solver, ball_metric(m, p, eps, solver, fidelity));
}

double match_volume(const ModelManifold& m, const Vec& p, double volume, const BallSolver& solver,
                    Fidelity fidelity) {
    const int N = solver.dim();
    const double guess = std::pow(volume / unit_ball_volume(N), 1.0 / N);
    auto f = [&](double eps) { return std::log(geodesic_ball_volume(m, p, eps, solver, fidelity) / volume); };

    double lo = std::min(0.9 * guess, 0.45), hi = std::min(1.1 * guess, 0.5);
    double flo = f(lo), fhi = f(hi);
    for (int k = 0; k < 20 && flo * fhi > 0.0; ++k) {
        if (flo > 0.0) {
            lo *= 0.9;
            flo = f(lo);
        } else {
            hi = std::min(hi * 1.1, 0.5);
            fhi = f(hi);
        }
    }
    if (flo * fhi > 0.0) throw EnvelopeError("volume matching found no bracket inside the envelope");

    std::uintmax_t max_iter = 100;
    const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi,
                                                          boost::math::tools::eps_tolerance<double>(50), max_iter);
    const double eps = 0.5 * (a + b);
    if (std::abs(f(eps)) > 1e-10) throw EnvelopeError("volume matching did not reach the requested accuracy");
    return eps;
}

double euclidean_profile(int dim, double volume) {
    return constants(dim).J1 * std::pow(volume / unit_ball_volume(dim), -(dim + 2.0) / dim);
}

std::vector<ProfilePoint> profile_expansion(const ModelManifold& m, const Vec& p, const std::vector<double>& volumes,
                                            const BallSolver& solver, int workers) {
    const int N = solver.dim();
    return parallel_map(static_cast<int>(volumes.size()), workers, [&](int k) {
        ProfilePoint pt;
        pt.volume = volumes[k];
        pt.eps_used = match_volume(m, p, pt.volume, solver);
        const GeodesicBall b = J_geodesic_ball(m, p, pt.eps_used, solver);
        pt.volume_error = std::abs(b.volume - pt.volume) / pt.volume;
        pt.J_ball = b.J;
        pt.T_euclidean = euclidean_profile(N, pt.volume);
        pt.ratio = pt.J_ball / pt.T_euclidean;
        return pt;
    });
}

PowerFit fit_profile(int dim, const std::vector<ProfilePoint>& table) {
    std::vector<double> v, y;
    for (const ProfilePoint& pt : table) {
        v.push_back(pt.volume);
        y.push_back(pt.ratio - 1.0);
    }
    const double N = dim;
    return fit_powers(v, y, {2 / N, 3 / N, 4 / N});
}

}  // namespace serrin
