#include "serrin/curvature.hpp"
#include "serrin/taylor.hpp"

#include <cmath>

namespace serrin {

MetricJet make_jet(const ModelManifold& m, const Vec& p, double eps, const SphereFunction& profile,
                   Fidelity fidelity, Extension extension) {
    MetricJet jet;
    jet.eps = eps;
    jet.profile = profile;
    jet.extension = extension;
    jet.fidelity = fidelity;
    if (fidelity == Fidelity::ExactChart)
        jet.chart = m.normal_chart(p);
    else
        jet.chart = std::make_shared<TruncatedChart>(m.packet(p));
    return jet;
}

MetricJet euclidean_jet(int dim, const SphereFunction& profile, Extension extension) {
    MetricJet jet;
    jet.eps = 0.0;
    jet.chart = std::make_shared<EuclideanChart>(dim);
    jet.profile = profile;
    jet.extension = extension;
    return jet;
}

std::array<double, 3> cutoff(double r) {
    const double s = 4.0 * r - 1.0;
    if (s <= 0.0) return {0.0, 0.0, 0.0};
    if (s >= 1.0) return {1.0, 0.0, 0.0};
    const double s2 = s * s, s3 = s2 * s;
    return {s3 * (10.0 - 15.0 * s + 6.0 * s2), 4.0 * 30.0 * s2 * (1.0 - s) * (1.0 - s),
            16.0 * 60.0 * s * (1.0 - 3.0 * s + 2.0 * s2)};
}

namespace {

// hat g and its first derivatives at x from rho, its derivatives, and the
// scaled chart sample (G, dG already multiplied by eps).
struct PointMetric {
    Mat g;
    std::array<Mat, 3> dg;
};

PointMetric pull_back(const Vec& x, double rho, const Vec& drho, const Mat& hrho, const ChartSample& bar,
                      bool derivatives) {
    const int N = static_cast<int>(x.size());
    const Mat A = rho * Mat::Identity(N, N) + x * drho.transpose();
    PointMetric out;
    out.g = A.transpose() * bar.G * A;
    if (!derivatives) return out;
    for (int k = 0; k < N; ++k) {
        Mat dA = x * hrho.row(k);
        for (int a = 0; a < N; ++a) {
            dA(a, a) += drho[k];
            dA(k, a) += drho[a];
        }
        Mat dGbar = Mat::Zero(N, N);
        for (int c = 0; c < N; ++c) dGbar += bar.dG[c] * A(c, k);
        const Mat t = dA.transpose() * bar.G * A;
        out.dg[k] = t + t.transpose() + A.transpose() * dGbar * A;
    }
    return out;
}

template <int D>
void rho_jet(const SphereFunction& v, Extension ext, const Vec& x, double& rho, Vec& drho, Mat& hrho) {
    using T = Taylor<D, 2>;
    std::array<T, D> X;
    for (int i = 0; i < D; ++i) X[i] = T::variable(i, x[i]);
    std::vector<T> P;
    solid_harmonics<T>(D, v.max_degree, X.data(), P);
    T r(0.0);
    const double rn = x.norm();
    T value(1.0);
    if (ext == Extension::SolidHarmonic) {
        for (int m = 0; m < v.size(); ++m) value += v.coeffs[m] * P[m];
    } else {
        value += v.coeffs[0] * P[0];
        const auto chi = cutoff(rn);
        if (chi[0] != 0.0 || chi[1] != 0.0) {
            T r2(0.0);
            for (int i = 0; i < D; ++i) r2 += X[i] * X[i];
            r = sqrt(r2);
            const T chij = T::compose(r, {chi[0], chi[1], 0.5 * chi[2]});
            const T rinv = 1.0 / r;
            T acc(0.0);
            for (int m = 1; m < v.size(); ++m) {
                const int k = mode_degree(v.dim, m);
                T pk(1.0);
                for (int q = 0; q < k; ++q) pk *= rinv;
                acc += v.coeffs[m] * P[m] * pk;
            }
            value += chij * acc;
        }
    }
    rho = value.value();
    drho = Vec::Zero(D);
    hrho = Mat::Zero(D, D);
    for (int i = 0; i < D; ++i) {
        drho[i] = value.d(i);
        for (int j = 0; j < D; ++j) hrho(i, j) = value.d2(i, j);
    }
}

ChartSample scaled_sample(const MetricJet& jet, const Vec& y) {
    ChartSample s;
    jet.chart->evaluate(jet.eps * y, s);
    for (int c = 0; c < jet.dim(); ++c) s.dG[c] *= jet.eps;
    return s;
}

}  // namespace

Mat pullback_metric(const MetricJet& jet, const Vec& x) {
    const int N = jet.dim();
    double rho;
    Vec drho;
    Mat hrho;
    if (N == 2)
        rho_jet<2>(jet.profile, jet.extension, x, rho, drho, hrho);
    else
        rho_jet<3>(jet.profile, jet.extension, x, rho, drho, hrho);
    const ChartSample bar = scaled_sample(jet, rho * x);
    const Mat g = pull_back(x, rho, drho, hrho, bar, false).g;
    if (Eigen::LLT<Mat>(g).info() != Eigen::Success)
        throw EnvelopeError("pulled-back metric is not positive definite");
    return g;
}

MetricField assemble_metric(const MetricJet& jet, const BallGrid& grid) {
    const int N = grid.dim();
    const int M = grid.radial_size();
    const int nn = grid.num_nodes();
    const int nm = grid.num_modes();
    const Eigen::VectorXd& r = grid.radial().nodes();
    const SphereFunction& v = jet.profile;

    // Radial profiles of the extension of v, mode by mode.
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(M, nm), f1 = f, f2 = f;
    for (int m = 0; m < nm && m < v.size(); ++m) {
        const double c = v.coeffs[m];
        if (c == 0.0) continue;
        const int k = grid.sphere().degrees()[m];
        for (int i = 0; i < M; ++i) {
            if (jet.extension == Extension::SolidHarmonic || k == 0) {
                f(i, m) = c * std::pow(r[i], k);
                f1(i, m) = k >= 1 ? c * k * std::pow(r[i], k - 1) : 0.0;
                f2(i, m) = k >= 2 ? c * k * (k - 1) * std::pow(r[i], k - 2) : 0.0;
            } else {
                const auto chi = cutoff(r[i]);
                f(i, m) = c * chi[0];
                f1(i, m) = c * chi[1];
                f2(i, m) = c * chi[2];
            }
        }
    }
    GridSamples rs = grid.derivatives(f, f1, f2, true);
    rs.value.array() += 1.0;

    MetricField out;
    out.rho = rs.value;
    out.ginv.assign(N * (N + 1) / 2, Eigen::MatrixXd(M, nn));
    out.drift.assign(N, Eigen::MatrixXd(M, nn));
    out.sqrt_det.resize(M, nn);
    out.boundary_density.resize(nn);

    std::vector<double> radii(M);
    std::vector<ChartSample> samples;
    for (int j = 0; j < nn; ++j) {
        const Vec xhat = grid.sphere().nodes().row(j).transpose();
        for (int i = 0; i < M; ++i) radii[i] = jet.eps * rs.value(i, j) * r[i];
        jet.chart->evaluate_ray(xhat, radii, samples);
        for (int i = 0; i < M; ++i) {
            ChartSample& bar = samples[i];
            for (int c = 0; c < N; ++c) bar.dG[c] *= jet.eps;
            const Vec x = r[i] * xhat;
            Vec drho(N);
            Mat hrho(N, N);
            for (int a = 0; a < N; ++a) {
                drho[a] = rs.grad[a](i, j);
                for (int b = 0; b < N; ++b) hrho(a, b) = rs.hess[packed_index(N, a, b)](i, j);
            }
            const PointMetric pm = pull_back(x, rs.value(i, j), drho, hrho, bar, true);
            Eigen::LLT<Mat> llt(pm.g);
            if (llt.info() != Eigen::Success || rs.value(i, j) <= 0.0)
                throw EnvelopeError("pulled-back metric is not positive definite");
            const Mat gi = llt.solve(Mat::Identity(N, N));
            double det = 1.0;
            for (int a = 0; a < N; ++a) det *= llt.matrixL()(a, a);
            out.sqrt_det(i, j) = det;

            Vec b = Vec::Zero(N);
            for (int k = 0; k < N; ++k) {
                const Mat gd = gi * pm.dg[k];
                const Mat t = gd * gi;
                const double tr = gd.trace();
                for (int q = 0; q < N; ++q) b[q] += -t(k, q) + 0.5 * gi(k, q) * tr;
            }
            for (int a = 0; a < N; ++a) {
                out.drift[a](i, j) = b[a];
                for (int c = a; c < N; ++c) out.ginv[packed_index(N, a, c)](i, j) = gi(a, c);
            }
            if (i == 0) out.boundary_density[j] = det * std::sqrt(xhat.dot(gi * xhat));
        }
    }
    return out;
}

Eigen::MatrixXd apply_laplacian(const MetricField& metric, const GridSamples& u, int dim) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(u.value.rows(), u.value.cols());
    for (int a = 0; a < dim; ++a) {
        for (int b = a; b < dim; ++b) {
            const int p = packed_index(dim, a, b);
            out.array() += (a == b ? 1.0 : 2.0) * metric.ginv[p].array() * u.hess[p].array();
        }
        out.array() += metric.drift[a].array() * u.grad[a].array();
    }
    return out;
}

BallField laplace_beltrami_apply(const MetricJet& jet, const BallGrid& grid, const BallField& u) {
    const MetricField metric = assemble_metric(jet, grid);
    return grid.analyze(apply_laplacian(metric, grid.derivatives(u), grid.dim()));
}

}  // namespace serrin
