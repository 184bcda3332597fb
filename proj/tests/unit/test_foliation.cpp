#include "serrin/foliation.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace serrin;

namespace {

Vec vec2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

const SphereBasis& circle() {
    static const SphereBasis s(2, 16);
    return s;
}

const BallSolver& solver() {
    static const BallSolver s(Resolution{2, 16, 32});
    return s;
}

std::vector<double> t_grid() {
    std::vector<double> t;
    for (int k = 1; k <= 10; ++k) t.push_back(0.02 * k);
    return t;
}

SphereFunction wobble(double delta) {
    SphereFunction v(2, 16);
    v.at(0, 0) = 0.01;
    v.at(2, 2) = delta;
    v.at(3, -3) = -0.5 * delta;
    return v;
}

}  // namespace

TEST(Recentering, FlatCommonCenterIsLinear) {
    const ModelManifold flat = ModelManifold::flat(2);
    RecenteredSphere s(flat, vec2(0.2, 0.1), vec2(0.2, 0.1), 0.1, SphereFunction(2, 16));
    RecenteredField f = recentering_solve(s, circle());
    for (int j = 0; j < circle().num_nodes(); ++j)
        EXPECT_LT((f.w.row(j) - 0.1 * circle().nodes().row(j)).norm(), 1e-14);
    EXPECT_LT(f.max_residual, 1e-14);
}

TEST(Recentering, CommonCenterOnTheRoundSphereKeepsTheRadius) {
    const ModelManifold round = ModelManifold::constant_curvature(2, 1.0);
    const SphereFunction v = wobble(0.02);
    const double t = 0.15;
    RecenteredSphere s(round, vec2(0.3, -0.2), vec2(0.3, -0.2), t, v);
    RecenteredField f = recentering_solve(s, circle());
    for (int j = 0; j < circle().num_nodes(); ++j) {
        const Vec x = circle().nodes().row(j).transpose();
        EXPECT_NEAR(f.w.row(j).norm(), t * (1 + v.evaluate(x)), 1e-12);
    }
    EXPECT_LT(f.max_residual, 1e-12);
}

TEST(Recentering, ShiftedCenterIsSecondOrderClose) {
    Bump b;
    b.center = vec2(0.3, -0.1);
    const ModelManifold m = ModelManifold::conformal_sphere(b);
    const Vec p0 = vec2(0.1, 0.0);
    std::vector<double> dev;
    for (double t : {0.05, 0.1}) {
        // centers displaced by t^2 and profiles of size t^2
        RecenteredSphere s(m, p0, p0 + vec2(0.3, 0.2) * t * t, t, wobble(t * t));
        RecenteredField f = recentering_solve(s, circle());
        EXPECT_LT(f.max_residual, 1e-12);
        dev.push_back((f.w.rowwise().norm().array() - t).abs().maxCoeff());
    }
    EXPECT_NEAR(dev[0] / dev[1], 0.25, 0.03);
}

TEST(Reparametrize, LinearFieldGivesRoundLeaves) {
    const double t = 0.07;
    RadialGraph g = reparametrize([t](const Vec& x) -> Vec { return t * x; }, circle());
    EXPECT_LT((g.omega.array() - t).abs().maxCoeff(), 1e-16);
    EXPECT_LT((g.alpha_inverse - circle().nodes()).cwiseAbs().maxCoeff(), 1e-16);
    EXPECT_EQ(g.max_iterations, 0);
}

TEST(Reparametrize, RadialPerturbationKeepsDirections) {
    const double t = 0.1, delta = 0.05;
    auto w = [=](const Vec& x) -> Vec { return t * (1 + delta * x[0]) * x; };
    RadialGraph g = reparametrize(w, circle());
    for (int j = 0; j < circle().num_nodes(); ++j)
        EXPECT_NEAR(g.omega[j], t * (1 + delta * circle().nodes()(j, 0)), 1e-15);
}

TEST(Reparametrize, InverseRoundTripOnASolverLeaf) {
    Bump b;
    b.center = vec2(0.3, -0.1);
    const ModelManifold m = ModelManifold::conformal_sphere(b);
    const Vec p0 = m.scalar_maximum(Vec::Zero(2), 1.2);
    const double t = 0.15;
    SerrinSolution sol = solve_serrin(m, p0 + vec2(0.004, -0.003), t, solver());
    RecenteredSphere s(m, p0, sol.point, t, sol.profile());
    for (int j = 0; j < circle().num_nodes(); ++j) {
        const Vec x = circle().nodes().row(j).transpose();
        const Vec y = s(x).normalized();
        EXPECT_LT((alpha_inverse(s, y) - x).norm(), 1e-10);
    }
}

TEST(Reparametrize, FoldedMapIsRejected) {
    // alpha doubles the angle, so two nodes share every image direction
    auto w = [](const Vec& x) -> Vec { return vec2(x[0] * x[0] - x[1] * x[1], 2 * x[0] * x[1]); };
    EXPECT_THROW(reparametrize(w, circle()), FoliationError);
}

TEST(Certify, FlatLeavesHaveUnitSpeed) {
    const ModelManifold flat = ModelManifold::flat(2);
    const std::vector<double> t = t_grid();
    std::vector<Vec> curve(t.size(), vec2(0, 0));
    std::vector<SphereFunction> profiles(t.size(), SphereFunction(2, 16));
    FoliationChart c = build_foliation(flat, vec2(0, 0), t, curve, profiles, circle(), 2);
    FoliationCertificate cert = certify_foliation(c);
    EXPECT_EQ(cert.certified, 10);
    EXPECT_DOUBLE_EQ(cert.t1, t.back());
    EXPECT_LT(std::abs(cert.min_dt_omega - 1.0), 1e-12);
    EXPECT_LT(cert.dt_omega_zero_error, 1e-12);
    EXPECT_TRUE(cert.nested);
}

TEST(Certify, RoundSphereWithSolverProfiles) {
    const ModelManifold round = ModelManifold::constant_curvature(2, 1.0);
    const Vec p0 = vec2(0.1, 0.2);
    const std::vector<double> t = t_grid();
    std::vector<Vec> curve(t.size(), p0);
    std::vector<SphereFunction> profiles;
    for (double tk : t) profiles.push_back(solve_serrin(round, p0, tk, solver()).profile());
    FoliationCertificate cert = certify_foliation(build_foliation(round, p0, t, curve, profiles, circle()));
    EXPECT_EQ(cert.certified, 10);
    EXPECT_LT(cert.dt_omega_zero_error, 1e-3);
    EXPECT_TRUE(cert.nested);
    // omega = t (1 - t^2/12 + ...), so (omega - t)/t^2 stays below t/12
    EXPECT_LT(cert.limit_slope, 0.02);
}

TEST(Certify, RequiresEightLeaves) {
    FoliationChart c;
    c.t = {0.1, 0.2, 0.3};
    c.omega = Eigen::MatrixXd::Ones(3, 4);
    EXPECT_THROW(certify_foliation(c), FoliationError);
}

TEST(Certify, ShrinkingLeavesAreNotAFoliation) {
    FoliationChart c;
    c.t = t_grid();
    c.omega.resize(10, 3);
    for (int k = 0; k < 10; ++k) c.omega.row(k).setConstant(c.t[k] * (1 - 8 * c.t[k]));
    // d_t omega = 1 - 16 t turns negative past t = 1/16
    FoliationCertificate cert = certify_foliation(c);
    EXPECT_EQ(cert.certified, 3);
    EXPECT_DOUBLE_EQ(cert.t1, 0.06);

    for (int k = 0; k < 10; ++k) c.omega.row(k).setConstant(-c.t[k]);
    EXPECT_THROW(certify_foliation(c), FoliationError);
}

TEST(CriticalCurve, ApproachesTheCurvatureMaximumQuadratically) {
    Bump b;
    b.center = vec2(0.3, -0.1);
    const ModelManifold m = ModelManifold::conformal_sphere(b);
    const Vec p0 = m.scalar_maximum(Vec::Zero(2), 1.2);
    const std::vector<double> t{0.05, 0.1};
    std::vector<CriticalPoint> curve = critical_curve(m, p0, t, solver(), {}, 2);
    std::vector<double> dist;
    for (std::size_t k = 0; k < t.size(); ++k) {
        EXPECT_LT(curve[k].solution.state.a.norm(), 1e-9);
        dist.push_back(m.distance(p0, curve[k].point) / (t[k] * t[k]));
    }
    EXPECT_LT(dist[1], 1.0);
    EXPECT_NEAR(dist[0] / dist[1], 1.0, 0.1);
}
