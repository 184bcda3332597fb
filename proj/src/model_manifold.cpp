#include "serrin/curvature.hpp"
#include "serrin/taylor.hpp"

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace serrin {

ModelManifold ModelManifold::flat(int dim) { return ModelManifold(ManifoldKind::Flat, dim, 0.0); }

ModelManifold ModelManifold::constant_curvature(int dim, double k) {
    return ModelManifold(ManifoldKind::ConstantCurvature, dim, k);
}

ModelManifold ModelManifold::conformal_sphere(const Bump& bump) {
    ModelManifold m(ManifoldKind::ConformalSphere2D, 2, 1.0);
    m.bump_ = bump;
    if (m.bump_.center.size() != 2) m.bump_.center = Vec::Zero(2);
    return m;
}

std::string ModelManifold::describe() const {
    switch (kind_) {
    case ManifoldKind::Flat:
        return fmt::format("flat(N={})", dim_);
    case ManifoldKind::ConstantCurvature:
        return fmt::format("constant_curvature(N={}, k={})", dim_, k_);
    case ManifoldKind::ConformalSphere2D:
        return fmt::format("conformal_sphere(A={}, sigma={}, c=({}, {}))", bump_.amplitude, bump_.sigma,
                           bump_.center[0], bump_.center[1]);
    }
    return "unknown";
}

namespace {

template <int D>
ModelManifold::ScalarJet scalar_jet_impl(const ModelManifold& m, const Vec& y) {
    using T = Taylor<D, 4>;
    std::array<T, D> x;
    for (int i = 0; i < D; ++i) x[i] = T::variable(i, y[i]);
    const T F = m.conformal_factor(x.data());
    T lap(0.0), grad2(0.0);
    for (int i = 0; i < D; ++i) {
        const T Fi = partial(F, i);
        lap += partial(Fi, i);
        grad2 += Fi * Fi;
    }
    const double N = D;
    const T S = -exp(-2.0 * F) * (2.0 * (N - 1.0) * lap + (N - 2.0) * (N - 1.0) * grad2);
    ModelManifold::ScalarJet out;
    out.value = S.value();
    out.grad = Vec::Zero(D);
    out.hess = Mat::Zero(D, D);
    for (int i = 0; i < D; ++i) {
        out.grad[i] = S.d(i);
        for (int j = 0; j < D; ++j) out.hess(i, j) = S.d2(i, j);
    }
    return out;
}

}  // namespace

ModelManifold::ScalarJet ModelManifold::scalar_jet(const Vec& y) const {
    if (kind_ == ManifoldKind::Flat) {
        ScalarJet s;
        s.grad = Vec::Zero(dim_);
        s.hess = Mat::Zero(dim_, dim_);
        return s;
    }
    return dim_ == 2 ? scalar_jet_impl<2>(*this, y) : scalar_jet_impl<3>(*this, y);
}

Vec ModelManifold::scalar_gradient(const Vec& y) const {
    return std::exp(-conformal_factor(y.data())) * scalar_jet(y).grad;
}

CurvaturePacket ModelManifold::packet(const Vec& p) const {
    switch (kind_) {
    case ManifoldKind::Flat:
        return CurvaturePacket::flat(dim_);
    case ManifoldKind::ConstantCurvature:
        return CurvaturePacket::constant_curvature(dim_, k_);
    case ManifoldKind::ConformalSphere2D: {
        const ScalarJet s = scalar_jet(p);
        const double e = std::exp(-conformal_factor(p.data()));
        return CurvaturePacket::surface(0.5 * s.value, 0.5 * e * s.grad);
    }
    }
    return CurvaturePacket::flat(dim_);
}

std::shared_ptr<const NormalChart> ModelManifold::normal_chart(const Vec& p, int substeps) const {
    switch (kind_) {
    case ManifoldKind::Flat:
        return std::make_shared<EuclideanChart>(dim_);
    case ManifoldKind::ConstantCurvature:
        return std::make_shared<ConstantCurvatureChart>(dim_, k_);
    case ManifoldKind::ConformalSphere2D:
        break;
    }
    return std::make_shared<GeodesicChart>(*this, p, substeps);
}

// ---------------------------------------------------------------------------
// Geodesics of exp(2F) delta:  y'' = -2 (dF . y') y' + |y'|^2 dF.

namespace {

template <class T>
struct GeoState {
    std::array<T, 3> y;
    std::array<T, 3> v;
};

template <class T>
GeoState<T> geodesic_rhs(const ModelManifold& m, const GeoState<T>& s) {
    const int N = m.dim();
    std::array<T, 3> dF;
    m.conformal_gradient(s.y.data(), dF.data());
    T Fv(0.0), vv(0.0);
    for (int i = 0; i < N; ++i) {
        Fv += dF[i] * s.v[i];
        vv += s.v[i] * s.v[i];
    }
    GeoState<T> d;
    for (int i = 0; i < N; ++i) {
        d.y[i] = s.v[i];
        d.v[i] = -2.0 * Fv * s.v[i] + vv * dF[i];
    }
    return d;
}

template <class T>
void rk4_step(const ModelManifold& m, GeoState<T>& s, double h) {
    const int N = m.dim();
    auto axpy = [N](const GeoState<T>& a, const GeoState<T>& b, double c) {
        GeoState<T> r = a;
        for (int i = 0; i < N; ++i) {
            r.y[i] += c * b.y[i];
            r.v[i] += c * b.v[i];
        }
        return r;
    };
    const GeoState<T> k1 = geodesic_rhs(m, s);
    const GeoState<T> k2 = geodesic_rhs(m, axpy(s, k1, 0.5 * h));
    const GeoState<T> k3 = geodesic_rhs(m, axpy(s, k2, 0.5 * h));
    const GeoState<T> k4 = geodesic_rhs(m, axpy(s, k3, h));
    for (int i = 0; i < N; ++i) {
        s.y[i] += h / 6.0 * (k1.y[i] + 2.0 * k2.y[i] + 2.0 * k3.y[i] + k4.y[i]);
        s.v[i] += h / 6.0 * (k1.v[i] + 2.0 * k2.v[i] + 2.0 * k3.v[i] + k4.v[i]);
    }
}

template <int D>
void exp_jet(const ModelManifold& m, const Vec& p, const Vec& z, int steps, Vec& q, Mat& J) {
    using T = Taylor<D, 1>;
    const double e = std::exp(-m.conformal_factor(p.data()));
    GeoState<T> s;
    for (int i = 0; i < D; ++i) {
        s.y[i] = T(p[i]);
        s.v[i] = e * T::variable(i, z[i]);
    }
    for (int k = 0; k < steps; ++k) rk4_step(m, s, 1.0 / steps);
    q = Vec::Zero(D);
    J = Mat::Zero(D, D);
    for (int i = 0; i < D; ++i) {
        q[i] = s.y[i].value();
        for (int j = 0; j < D; ++j) J(i, j) = s.y[i].d(j);
    }
}

}  // namespace

Vec ModelManifold::exp_map(const Vec& p, const Vec& z, int steps) const {
    const double e = std::exp(-conformal_factor(p.data()));
    GeoState<double> s;
    for (int i = 0; i < dim_; ++i) {
        s.y[i] = p[i];
        s.v[i] = e * z[i];
    }
    for (int k = 0; k < steps; ++k) rk4_step(*this, s, 1.0 / steps);
    Vec q(dim_);
    for (int i = 0; i < dim_; ++i) q[i] = s.y[i];
    return q;
}

Vec ModelManifold::log_map(const Vec& p, const Vec& q, double tol) const {
    Vec z = std::exp(conformal_factor(p.data())) * (q - p);
    if (kind_ == ManifoldKind::Flat) return z;
    const int steps = 200;
    for (int it = 0; it < 50; ++it) {
        Vec y;
        Mat J;
        if (dim_ == 2)
            exp_jet<2>(*this, p, z, steps, y, J);
        else
            exp_jet<3>(*this, p, z, steps, y, J);
        const Vec r = y - q;
        if (r.norm() < tol) return z;
        z -= J.lu().solve(r);
    }
    throw EnvelopeError("log map did not converge (outside the injectivity region?)");
}

Vec ModelManifold::scalar_critical_point(const Vec& guess) const {
    Vec p = guess;
    for (int it = 0; it < 100; ++it) {
        const ScalarJet s = scalar_jet(p);
        const Vec step = s.hess.lu().solve(s.grad);
        p -= step;
        if (step.norm() < 1e-14) return p;
    }
    if (scalar_jet(p).grad.norm() < 1e-10) return p;
    throw EnvelopeError("no critical point of the scalar curvature near the guess");
}

Vec ModelManifold::scalar_maximum(const Vec& center, double half_width, int samples) const {
    Vec best = center;
    double top = scalar(center);
    Vec q = center;
    const int n = dim_;
    std::vector<int> idx(n, 0);
    // Scan the cube center + [-w, w]^n, then refine by Newton.
    while (true) {
        for (int i = 0; i < n; ++i) q[i] = center[i] + half_width * (2.0 * idx[i] / (samples - 1) - 1.0);
        const double v = scalar(q);
        if (v > top) {
            top = v;
            best = q;
        }
        int i = 0;
        while (i < n && ++idx[i] == samples) idx[i++] = 0;
        if (i == n) break;
    }
    Vec p = scalar_critical_point(best);
    Eigen::SelfAdjointEigenSolver<Mat> es(scalar_jet(p).hess);
    if (!(es.eigenvalues().maxCoeff() < 0.0)) throw EnvelopeError("scalar curvature maximum is degenerate");
    return p;
}

// ---------------------------------------------------------------------------

namespace {

template <int D>
void ray_samples(const ModelManifold& m, const Vec& base, const Vec& dir, const std::vector<double>& radii,
                 int substeps, std::vector<ChartSample>& out) {
    using T = Taylor<D, 2>;
    out.resize(radii.size());
    std::vector<std::size_t> order(radii.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return radii[a] < radii[b]; });

    const double e = std::exp(-m.conformal_factor(base.data()));
    GeoState<T> s;
    for (int i = 0; i < D; ++i) {
        s.y[i] = T(base[i]);
        s.v[i] = e * T::variable(i, dir[i]);
    }
    const int per_interval = radii.size() == 1 ? 16 * substeps : substeps;
    double t = 0.0;
    for (std::size_t idx : order) {
        const double target = radii[idx];
        if (target > t) {
            const double h = (target - t) / per_interval;
            for (int k = 0; k < per_interval; ++k) rk4_step(m, s, h);
            t = target;
        }
        ChartSample& o = out[idx];
        if (target < 1e-12) {
            o.G = Mat::Identity(D, D);
            for (int c = 0; c < D; ++c) o.dG[c] = Mat::Zero(D, D);
            continue;
        }
        Vec y(D);
        for (int a = 0; a < D; ++a) y[a] = s.y[a].value();
        Mat J(D, D);
        std::array<Mat, 3> H;  // H[m](a, i) = d^2 exp^a / dz^i dz^m
        for (int c = 0; c < D; ++c) H[c] = Mat::Zero(D, D);
        for (int a = 0; a < D; ++a)
            for (int i = 0; i < D; ++i) {
                J(a, i) = s.y[a].d(i) / target;
                for (int c = 0; c < D; ++c) H[c](a, i) = s.y[a].d2(i, c) / (target * target);
            }
        double dF[3];
        m.conformal_gradient(y.data(), dF);
        const double w = std::exp(2.0 * m.conformal_factor(y.data()));
        const Mat JtJ = J.transpose() * J;
        o.G = w * JtJ;
        for (int c = 0; c < D; ++c) {
            double dFJ = 0.0;
            for (int a = 0; a < D; ++a) dFJ += dF[a] * J(a, c);
            const Mat cross = H[c].transpose() * J;
            o.dG[c] = w * (2.0 * dFJ * JtJ + cross + cross.transpose());
        }
    }
}

}  // namespace

void GeodesicChart::evaluate_ray(const Vec& dir, const std::vector<double>& radii,
                                 std::vector<ChartSample>& out) const {
    if (manifold_.dim() == 2)
        ray_samples<2>(manifold_, base_, dir, radii, substeps_, out);
    else
        ray_samples<3>(manifold_, base_, dir, radii, substeps_, out);
}

void GeodesicChart::evaluate(const Vec& z, ChartSample& out) const {
    const double r = z.norm();
    std::vector<ChartSample> s;
    Vec dir = Vec::Zero(dim());
    if (r > 0.0)
        dir = z / r;
    else
        dir[0] = 1.0;
    evaluate_ray(dir, {r}, s);
    out = s[0];
}

}  // namespace serrin
