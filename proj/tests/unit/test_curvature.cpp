#include "serrin/ball_solver.hpp"
#include "serrin/curvature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace serrin;

namespace {

double max_riemann_diff(const CurvaturePacket& a, const CurvaturePacket& b) {
    double e = 0.0;
    for (std::size_t i = 0; i < a.riemann_.size(); ++i) e = std::max(e, std::abs(a.riemann_[i] - b.riemann_[i]));
    return e;
}

double max_nabla_diff(const CurvaturePacket& a, const CurvaturePacket& b) {
    double e = 0.0;
    for (std::size_t i = 0; i < a.nabla_.size(); ++i) e = std::max(e, std::abs(a.nabla_[i] - b.nabla_[i]));
    return e;
}

// Algebraic curvature tensor built as a Kulkarni-Nomizu square of a random
// symmetric matrix: it has every symmetry of a Riemann tensor.
CurvaturePacket random_algebraic(int N, unsigned seed) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> U(-1, 1);
    Mat h(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = i; j < N; ++j) h(i, j) = h(j, i) = U(gen);
    CurvaturePacket P(N);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            for (int c = 0; c < N; ++c)
                for (int d = 0; d < N; ++d)
                    P.riemann(a, b, c, d) = h(a, d) * h(b, c) - h(a, c) * h(b, d);
    P.contract();
    return P;
}

Vec vec2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

const ModelManifold& bumped() {
    static const ModelManifold m = [] {
        Bump b;
        b.center = vec2(0.3, -0.1);
        return ModelManifold::conformal_sphere(b);
    }();
    return m;
}

}  // namespace

TEST(Packet, FlatChartGivesZero) {
    for (int N : {2, 3}) {
        CurvaturePacket P = packet_from_chart(EuclideanChart(N));
        EXPECT_EQ(max_riemann_diff(P, CurvaturePacket::flat(N)), 0.0);
        EXPECT_EQ(P.scalar, 0.0);
    }
}

TEST(Packet, UnitSphereSignConvention) {
    CurvaturePacket P = packet_from_chart(ConstantCurvatureChart(2, 1.0));
    EXPECT_NEAR(P.riemann(0, 1, 0, 1), -1.0, 1e-9);
    EXPECT_NEAR(P.riemann(0, 1, 1, 0), 1.0, 1e-9);
    EXPECT_NEAR(P.ricci(0, 0), 1.0, 1e-9);
    EXPECT_NEAR(P.scalar, 2.0, 1e-9);
    EXPECT_LT(max_riemann_diff(P, CurvaturePacket::constant_curvature(2, 1.0)), 1e-9);
}

TEST(Packet, ThreeDimensionalSpaceForm) {
    CurvaturePacket P = packet_from_chart(ConstantCurvatureChart(3, 0.5));
    EXPECT_NEAR(P.scalar, 3.0, 1e-9);
    EXPECT_LT(max_riemann_diff(P, CurvaturePacket::constant_curvature(3, 0.5)), 1e-9);
    EXPECT_LT(P.symmetry_defect(), 1e-12);
}

TEST(Packet, TruncatedRoundTripIsExact) {
    // The truncated chart is a cubic polynomial, so the finite differences
    // are exact for any step.
    Vec dK = vec2(0.4, -0.7);
    CurvaturePacket P = CurvaturePacket::surface(0.8, dK);
    CurvaturePacket Q = packet_from_chart(TruncatedChart(P), 0.5);
    EXPECT_LT(max_riemann_diff(P, Q), 1e-12);
    EXPECT_LT(max_nabla_diff(P, Q), 1e-12);
    EXPECT_LT((Q.scalar_gradient() - 2.0 * dK).norm(), 1e-12);

    for (unsigned seed : {1u, 2u, 3u}) {
        CurvaturePacket A = random_algebraic(3, seed);
        EXPECT_LT(A.symmetry_defect(), 1e-15);
        CurvaturePacket B = packet_from_chart(TruncatedChart(A), 0.5);
        EXPECT_LT(max_riemann_diff(A, B), 1e-12) << seed;
    }
}

TEST(Packet, MalformedChartIsRejected) {
    CurvaturePacket P(2);
    P.riemann(0, 1, 0, 1) = 1.0;  // no antisymmetric partner
    EXPECT_THROW(P.validate(), MalformedChart);
}

TEST(Packet, GeodesicChartMatchesConformalCurvature) {
    const ModelManifold& m = bumped();
    for (Vec p : {vec2(0.0, 0.0), vec2(0.4, 0.2), vec2(-0.3, 0.5)}) {
        CurvaturePacket analytic = m.packet(p);
        CurvaturePacket measured = packet_from_chart(*m.normal_chart(p, 16), 0.05);
        EXPECT_LT(max_riemann_diff(analytic, measured), 1e-7);
        EXPECT_LT(max_nabla_diff(analytic, measured), 1e-5);
        EXPECT_NEAR(measured.scalar, m.scalar(p), 1e-7);
    }
}

TEST(ModelManifold, ScalarCurvatureOfConformalMetric) {
    // In two dimensions S = -2 exp(-2F) Lap F; the Laplacian is taken here by
    // a five-point stencil on the conformal factor.
    const ModelManifold& m = bumped();
    const double h = 1e-3;
    for (Vec y : {vec2(0.3, -0.1), vec2(0.5, 0.4), vec2(-0.2, 0.0)}) {
        auto F = [&](double dx, double dy) {
            double z[2] = {y[0] + dx, y[1] + dy};
            return m.conformal_factor(z);
        };
        const double lap = (F(h, 0) + F(-h, 0) + F(0, h) + F(0, -h) - 4 * F(0, 0)) / (h * h);
        EXPECT_NEAR(m.scalar(y), -2.0 * std::exp(-2.0 * F(0, 0)) * lap, 1e-5);
    }
    // Without the bump this is the unit sphere everywhere.
    ModelManifold round = ModelManifold::constant_curvature(2, 1.0);
    EXPECT_NEAR(round.scalar(vec2(0.7, -0.2)), 2.0, 1e-12);
}

TEST(ModelManifold, ExpLogRoundTrip) {
    const ModelManifold& m = bumped();
    Vec p = vec2(0.2, 0.1);
    for (Vec z : {vec2(0.1, 0.0), vec2(-0.2, 0.15), vec2(0.05, -0.3)}) {
        Vec q = m.exp_map(p, z);
        EXPECT_LT((m.log_map(p, q) - z).norm(), 1e-11);
        EXPECT_NEAR(m.distance(p, q), z.norm(), 1e-11);
    }
}

TEST(ModelManifold, CriticalPointOfScalarCurvature) {
    const ModelManifold& m = bumped();
    Vec p0 = m.scalar_critical_point(m.bump().center);
    EXPECT_LT(m.scalar_gradient(p0).norm(), 1e-10);
    EXPECT_GT((p0 - m.bump().center).norm(), 1e-3);  // the background shifts it
}

// ---------------------------------------------------------------------------

TEST(Pullback, EuclideanLimitIsIdentity) {
    SphereFunction v(2, 8);
    MetricJet jet = euclidean_jet(2, v);
    for (Vec x : {vec2(0.0, 0.0), vec2(0.5, 0.3), vec2(0.6, -0.8)})
        EXPECT_LT((pullback_metric(jet, x) - Mat::Identity(2, 2)).norm(), 1e-15);
}

TEST(Pullback, PureDilation) {
    const double v0 = 0.07;
    for (Extension ext : {Extension::SolidHarmonic, Extension::Cutoff}) {
        MetricJet jet = euclidean_jet(3, SphereFunction::constant(3, 6, v0), ext);
        Vec x(3);
        x << 0.2, -0.4, 0.5;
        EXPECT_LT((pullback_metric(jet, x) - (1 + v0) * (1 + v0) * Mat::Identity(3, 3)).norm(), 1e-14);
    }
}

TEST(Pullback, CrossFidelityIsFourthOrder) {
    ModelManifold round = ModelManifold::constant_curvature(2, 1.0);
    const Vec p = vec2(0.1, 0.2), x = vec2(0.5, 0.0);
    SphereFunction v(2, 8);
    double prev = 0.0;
    for (double eps : {0.2, 0.1, 0.05}) {
        Mat exact = pullback_metric(make_jet(round, p, eps, v, Fidelity::ExactChart), x);
        Mat trunc = pullback_metric(make_jet(round, p, eps, v, Fidelity::Truncated), x);
        const double d = (exact - trunc).norm();
        EXPECT_LT(d, 0.1 * std::pow(eps, 4));
        if (prev > 0) EXPECT_GT(std::log2(prev / d), 3.8);
        prev = d;
    }
}

TEST(Pullback, IdentityConvergenceRate) {
    const ModelManifold& m = bumped();
    SphereFunction v(2, 8);
    std::vector<double> le, ld;
    for (double eps : {0.2, 0.1, 0.05, 0.025}) {
        Mat g = pullback_metric(make_jet(m, vec2(0.4, 0.0), eps, v), vec2(0.3, 0.6));
        le.push_back(std::log(eps));
        ld.push_back(std::log((g - Mat::Identity(2, 2)).norm()));
    }
    const double slope = (ld.back() - ld.front()) / (le.back() - le.front());
    EXPECT_GE(slope, 1.9);
}

TEST(Pullback, ExactChartOnSpaceFormMatchesClosedForm) {
    // The geodesic integrator and the closed-form chart describe the same
    // metric on the round sphere.
    ModelManifold round = ModelManifold::constant_curvature(2, 1.0);
    ConstantCurvatureChart closed(2, 1.0);
    auto geo = std::make_shared<GeodesicChart>(round, vec2(0.3, -0.4), 16);
    ChartSample a, b;
    for (Vec z : {vec2(0.1, 0.05), vec2(-0.3, 0.2), vec2(0.0, 0.45)}) {
        geo->evaluate(z, a);
        closed.evaluate(z, b);
        EXPECT_LT((a.G - b.G).norm(), 1e-10);
        for (int c = 0; c < 2; ++c) EXPECT_LT((a.dG[c] - b.dG[c]).norm(), 1e-9);
    }
}

// ---------------------------------------------------------------------------

namespace {

const BallSolver& solver() {
    static const BallSolver s(Resolution{2, 16, 32});
    return s;
}

SphereFunction sample_profile() {
    SphereFunction v(2, 16);
    v.coeffs[0] = 0.01;
    v.coeffs[3] = 0.02;
    v.coeffs[6] = -0.015;
    return v;
}

}  // namespace

TEST(LaplaceBeltrami, EuclideanExamples) {
    const BallGrid& g = solver().grid();
    MetricJet jet = euclidean_jet(2, SphereFunction(2, 16));
    BallField lap = laplace_beltrami_apply(jet, g, solver().torsion_ball());
    Eigen::MatrixXd s = g.synthesize(lap);
    EXPECT_LT((s.array() + 1.0).abs().maxCoeff(), 1e-11);

    SphereFunction h(2, 16);
    h.coeffs[7] = 1.0;
    BallField harm = solver().harmonic_extension(h);
    // collocation second derivatives on 64 Chebyshev points carry ~n^4 ulps
    EXPECT_LT(g.synthesize(laplace_beltrami_apply(jet, g, harm)).cwiseAbs().maxCoeff(), 2e-9);
}

TEST(LaplaceBeltrami, ConstantsAreAnnihilated) {
    const BallGrid& g = solver().grid();
    BallField one = g.zero();
    one.radial.col(0).setConstant(std::sqrt(2.0 * std::numbers::pi));
    for (Fidelity f : {Fidelity::Truncated, Fidelity::ExactChart}) {
        MetricJet jet = make_jet(bumped(), vec2(0.2, 0.0), 0.15, sample_profile(), f);
        EXPECT_LT(g.synthesize(laplace_beltrami_apply(jet, g, one)).cwiseAbs().maxCoeff(), 1e-11);
    }
}

TEST(LaplaceBeltrami, DivergenceForm) {
    // int (Lap u) w dvol = -int g(grad u, grad w) dvol for u, w zero on the
    // boundary.
    const BallGrid& g = solver().grid();
    const int M = g.radial_size(), nn = g.num_nodes();
    Eigen::MatrixXd us(M, nn), ws(M, nn);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < nn; ++j) {
            Vec x = g.point(i, j);
            const double b = 1.0 - x.squaredNorm();
            us(i, j) = b * (1.0 + x[0] - 0.5 * x[1] * x[1]);
            ws(i, j) = b * (0.3 + x[0] * x[1]);
        }
    BallField u = g.analyze(us), w = g.analyze(ws);
    for (Fidelity f : {Fidelity::Truncated, Fidelity::ExactChart}) {
        MetricJet jet = make_jet(bumped(), vec2(0.2, 0.0), 0.15, sample_profile(), f);
        MetricField metric = assemble_metric(jet, g);
        GridSamples du = g.derivatives(u), dw = g.derivatives(w, false);
        Eigen::MatrixXd lap = apply_laplacian(metric, du, 2);
        Eigen::MatrixXd inner = Eigen::MatrixXd::Zero(M, nn);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                inner += metric.ginv[packed_index(2, a, b)].cwiseProduct(du.grad[a]).cwiseProduct(dw.grad[b]);
        const double lhs = g.integrate(lap.cwiseProduct(dw.value).cwiseProduct(metric.sqrt_det));
        const double rhs = -g.integrate(inner.cwiseProduct(metric.sqrt_det));
        EXPECT_NEAR(lhs, rhs, 1e-11);
    }
}
