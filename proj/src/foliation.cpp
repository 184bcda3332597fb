#include "serrin/foliation.hpp"

#include "serrin/fitting.hpp"
#include "serrin/parallel.hpp"

#include <cmath>

namespace serrin {

RecenteredSphere::RecenteredSphere(const ModelManifold& m, Vec base, Vec center, double t, SphereFunction profile)
    : m_(m), base_(std::move(base)), center_(std::move(center)), t_(t), profile_(std::move(profile)) {}

Vec RecenteredSphere::target(const Vec& x) const {
    return m_.exp_map(center_, t_ * (1.0 + profile_.evaluate(x)) * x);
}

Vec RecenteredSphere::operator()(const Vec& x) const { return m_.log_map(base_, target(x)); }

double RecenteredSphere::residual(const Vec& x, const Vec& w) const {
    return (m_.exp_map(base_, w) - target(x)).norm();
}

RecenteredField recentering_solve(const RecenteredSphere& sphere, const SphereBasis& basis) {
    RecenteredField f;
    f.w.resize(basis.num_nodes(), basis.dim());
    for (int j = 0; j < basis.num_nodes(); ++j) {
        const Vec x = basis.nodes().row(j).transpose();
        const Vec w = sphere(x);
        f.w.row(j) = w.transpose();
        f.max_residual = std::max(f.max_residual, sphere.residual(x, w));
    }
    return f;
}

namespace {

double min_pair_distance(const Eigen::MatrixXd& pts) {
    double d = INFINITY;
    for (int i = 0; i < pts.rows(); ++i)
        for (int j = i + 1; j < pts.rows(); ++j) d = std::min(d, (pts.row(i) - pts.row(j)).norm());
    return d;
}

}  // namespace

Vec alpha_inverse(const std::function<Vec(const Vec&)>& w, const Vec& y, const ReparametrizeOptions& opts,
                  int* iterations) {
    Vec x = y;
    Vec a = w(x).normalized();
    int it = 0;
    for (; (y - a).norm() > opts.tolerance; ++it) {
        if (it == opts.max_iterations) throw FoliationError("inversion of the angular map did not converge");
        x = (x + y - a).normalized();
        a = w(x).normalized();
    }
    if (iterations) *iterations = it;
    return x;
}

RadialGraph reparametrize(const std::function<Vec(const Vec&)>& w, const SphereBasis& basis,
                          const ReparametrizeOptions& opts) {
    const int n = basis.num_nodes();
    const Eigen::MatrixXd& nodes = basis.nodes();

    // Injectivity on the grid: the images of the nodes may not crowd together
    // much more than the nodes themselves.
    Eigen::MatrixXd images(n, basis.dim());
    for (int j = 0; j < n; ++j) {
        const Vec wj = w(nodes.row(j).transpose());
        if (!(wj.norm() > 0.0)) throw FoliationError("w vanishes at a node");
        images.row(j) = wj.normalized().transpose();
    }
    if (min_pair_distance(images) < 0.25 * min_pair_distance(nodes))
        throw FoliationError("angular map is not injective on the grid");

    RadialGraph g;
    g.omega.resize(n);
    g.alpha_inverse.resize(n, basis.dim());
    for (int j = 0; j < n; ++j) {
        int it = 0;
        const Vec x = alpha_inverse(w, nodes.row(j).transpose(), opts, &it);
        g.max_iterations = std::max(g.max_iterations, it);
        g.alpha_inverse.row(j) = x.transpose();
        g.omega[j] = w(x).norm();
    }
    return g;
}

FoliationChart build_foliation(const ModelManifold& m, const Vec& base, const std::vector<double>& t,
                               const std::vector<Vec>& curve, const std::vector<SphereFunction>& profiles,
                               const SphereBasis& basis, int workers) {
    struct Leaf {
        RadialGraph graph;
        double residual = 0.0;
    };
    const int T = static_cast<int>(t.size());
    auto leaves = parallel_map(T, workers, [&](int k) {
        RecenteredSphere sphere(m, base, curve[k], t[k], profiles[k]);
        Leaf leaf;
        leaf.residual = recentering_solve(sphere, basis).max_residual;
        leaf.graph = reparametrize(sphere, basis);
        return leaf;
    });

    FoliationChart c;
    c.base = base;
    c.t = t;
    c.curve = curve;
    c.profiles = profiles;
    c.nodes = basis.nodes();
    c.omega.resize(T, basis.num_nodes());
    for (int k = 0; k < T; ++k) {
        c.omega.row(k) = leaves[k].graph.omega.transpose();
        c.alpha_inverse.push_back(std::move(leaves[k].graph.alpha_inverse));
        c.max_residual = std::max(c.max_residual, leaves[k].residual);
    }
    return c;
}

std::vector<CriticalPoint> critical_curve(const ModelManifold& m, const Vec& base, const std::vector<double>& t,
                                          const BallSolver& solver, const CriticalOptions& opts, int workers) {
    return parallel_map(static_cast<int>(t.size()), workers,
                        [&](int k) { return polish_critical(m, t[k], base, solver, opts); });
}

namespace {

// derivative at `at` of the quadratic through three points
double quadratic_slope(const double* x, const double* f, double at) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        s += f[i] * ((at - x[j]) + (at - x[k])) / ((x[i] - x[j]) * (x[i] - x[k]));
    }
    return s;
}

}  // namespace

FoliationCertificate certify_foliation(const FoliationChart& chart) {
    const int T = static_cast<int>(chart.t.size());
    const int n = static_cast<int>(chart.omega.cols());
    if (T < 8) throw FoliationError("certification needs at least eight values of t");

    // The degenerate leaf omega(0, .) = 0 closes the grid on the left.
    std::vector<double> ts{0.0};
    ts.insert(ts.end(), chart.t.begin(), chart.t.end());
    Eigen::MatrixXd dt(T, n);
    for (int y = 0; y < n; ++y) {
        std::vector<double> om{0.0};
        for (int k = 0; k < T; ++k) om.push_back(chart.omega(k, y));
        for (int k = 1; k <= T; ++k) {
            const int c = std::min(k, T - 1);  // centre of the stencil
            dt(k - 1, y) = quadratic_slope(&ts[c - 1], &om[c - 1], ts[k]);
        }
    }

    FoliationCertificate cert;
    while (cert.certified < T && (dt.row(cert.certified).array() > 0.0).all()) ++cert.certified;
    if (cert.certified == 0) throw FoliationError("d_t omega is not positive at the first leaf");
    const int P = cert.certified;
    cert.t1 = chart.t[P - 1];
    cert.min_dt_omega = dt.topRows(P).minCoeff();

    cert.nested = true;
    for (int k = 1; k < P; ++k)
        cert.nested = cert.nested && (chart.omega.row(k).array() > chart.omega.row(k - 1).array()).all();

    const std::vector<double> tp(chart.t.begin(), chart.t.begin() + P);
    cert.dt_omega_zero.resize(n);
    for (int y = 0; y < n; ++y) {
        std::vector<double> om(P);
        for (int k = 0; k < P; ++k) {
            om[k] = chart.omega(k, y);
            cert.limit_slope = std::max(cert.limit_slope, std::abs(om[k] - tp[k]) / (tp[k] * tp[k]));
        }
        cert.dt_omega_zero[y] = P >= 3 ? fit_powers(tp, om, {1, 2, 3}).coefficient(1) : dt(0, y);
    }
    cert.dt_omega_zero_error = (cert.dt_omega_zero.array() - 1.0).abs().maxCoeff();
    return cert;
}

}  // namespace serrin
