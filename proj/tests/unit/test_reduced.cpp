#include "serrin/reduced.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace serrin;

namespace {

constexpr double pi = std::numbers::pi;

const BallSolver& solver() {
    static const BallSolver s(Resolution{2, 16, 32});
    return s;
}

Vec vec2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

}  // namespace

TEST(Constants, PlanarValuesFromTheirDefinitions) {
    const Constants c = constants(2);
    EXPECT_NEAR(c.J1, 8 / pi, 1e-15);
    EXPECT_NEAR(c.alpha, 8 / pi + pi / 4, 1e-14);
    EXPECT_NEAR(c.alpha, 3.3318772529, 1e-10);
    EXPECT_NEAR(c.beta_printed, (256 - 6 * pi * pi) / 192, 1e-14);
    EXPECT_NEAR(c.beta * pi, c.beta_printed, 1e-14);
    EXPECT_NEAR(c.c_printed, 1 / (9 * pi), 1e-15);
    EXPECT_NEAR(c.c, 1 / (12 * pi), 1e-15);
    EXPECT_NEAR(c.v0_coefficient, -1.0 / 24, 1e-15);
    EXPECT_NEAR(c.volume_coefficient, -1.0 / 8, 1e-15);
    EXPECT_NEAR(c.torsion_coefficient, -1.0 / 6, 1e-15);
    EXPECT_DOUBLE_EQ(c.geodesic_J_coefficient, 0.0);
    EXPECT_NEAR(c.geodesic_J_coefficient_printed, -1.0 / 36, 1e-15);
}

TEST(Constants, BetaStaysAwayFromZero) {
    for (int N = 2; N <= 6; ++N) EXPECT_TRUE(constants(N).beta_nonzero()) << N;
    EXPECT_THROW(constants(1), std::invalid_argument);
}

TEST(Reduced, FlatFunctionalIsAlpha) {
    const ModelManifold flat = ModelManifold::flat(2);
    for (double eps : {0.05, 0.2}) {
        ReducedReport r = reduced_functional(flat, vec2(0.1, 0.1), eps, solver());
        EXPECT_NEAR(r.phi_eps, constants(2).alpha, 1e-12);
        EXPECT_NEAR(r.volume, pi, 1e-12);
        EXPECT_NEAR(r.boundary_area, 2 * pi, 1e-12);
        EXPECT_EQ(r.F_value, 0.0);
        EXPECT_TRUE(r.flat);
    }
}

TEST(Reduced, RoundSphereFunctionalDecreasesWithEps) {
    const ModelManifold round = ModelManifold::constant_curvature(2, 1.0);
    const Constants c = constants(2);
    for (double eps : {0.05, 0.1}) {
        ReducedReport r = reduced_functional(round, vec2(0.2, 0.1), eps, solver());
        // F tends to S = 2 with an eps^2 correction
        EXPECT_NEAR(r.F_value, 2.0, 0.5 * eps * eps * 2.0 / c.beta);
    }
}

TEST(ShapeDerivative, DilationOfTheDisk) {
    // J = 8/(pi R^4) on the disk of radius R; d/dR at R = 1 is -32/pi.
    const SphereFunction zero(2, 16);
    ShapeDerivative d = shape_derivative_check(solver(), zero, SphereFunction::constant(2, 16, 1.0), zero);
    EXPECT_NEAR(d.analytic, -32 / pi, 1e-10);
    EXPECT_LT(d.relative_error, 1e-6);
    EXPECT_NEAR(d.volume_analytic, 2 * pi, 1e-12);
}

TEST(ShapeDerivative, RandomBandLimitedSpeeds) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    const SphereFunction zero(2, 16);
    for (int trial = 0; trial < 3; ++trial) {
        SphereFunction vn(2, 16);
        for (int i = 0; i < mode_count(2, 4); ++i) vn.coeffs[i] = g(rng);
        ShapeDerivative d = shape_derivative_check(solver(), zero, vn, zero);
        EXPECT_LT(d.relative_error, 1e-6) << trial;
    }
}

TEST(ShapeDerivative, TangentialFlowOnTheDiskIsInvisible) {
    const SphereFunction zero(2, 16);
    SphereFunction vt(2, 16);
    vt.at(2, 2) = 1.0;
    vt.at(3, -3) = 0.5;
    ShapeDerivative d = shape_derivative_check(solver(), zero, zero, vt);
    EXPECT_LT(std::abs(d.analytic), 1e-12);
    EXPECT_LT(std::abs(d.finite_difference), 1e-10);
}

TEST(ShapeDerivative, PerturbedBaseDomain) {
    SphereFunction base(2, 16), vn(2, 16), vt(2, 16);
    base.at(2, 2) = 0.005;
    base.at(3, -3) = -0.003;
    // speeds that overlap the base modes, so the derivative is not zero by symmetry
    vn.at(0, 0) = 0.3;
    vn.at(2, 2) = 1.0;
    vn.at(3, -3) = 0.4;
    vt.at(1, -1) = 0.7;
    vt.at(5, 5) = 0.2;
    ShapeDerivative d = shape_derivative_check(solver(), base, vn, vt);
    EXPECT_LT(d.relative_error, 1e-6);
    EXPECT_NEAR(d.volume_analytic, d.volume_fd, 1e-7 * std::abs(d.volume_analytic));
}

TEST(TrustRegion, MinimizesAQuadratic) {
    // f = (x-1)^2 + 10 (y+2)^2 + x y, minimum where 2(x-1) + y = 0, 20(y+2) + x = 0
    auto f = [](const Vec& p) { return std::pow(p[0] - 1, 2) + 10 * std::pow(p[1] + 2, 2) + p[0] * p[1]; };
    Eigen::Matrix2d A;
    A << 2, 1, 1, 20;
    const Eigen::Vector2d xstar = A.lu().solve(Eigen::Vector2d(2, -40));
    TrustRegionResult r = trust_region_minimize(f, vec2(0, 0), {0.05, 1.0, 1e-7, 200});
    EXPECT_TRUE(r.converged);
    EXPECT_LT((r.x - Vec(xstar)).norm(), 1e-6);
}

TEST(TrustRegion, EscapesASaddle) {
    auto f = [](const Vec& p) { return p[0] * p[0] - p[1] * p[1] + std::pow(p[1], 4); };
    TrustRegionResult r = trust_region_minimize(f, vec2(0.1, 0.0), {0.05, 0.5, 1e-7, 200});
    EXPECT_NEAR(std::abs(r.x[1]), 1 / std::sqrt(2.0), 1e-5);
    EXPECT_NEAR(r.x[0], 0.0, 1e-5);
}

TEST(FindCritical, LocatesTheCurvatureMaximum) {
    Bump b;
    b.center = vec2(0.3, -0.1);
    const ModelManifold m = ModelManifold::conformal_sphere(b);
    const Vec p0 = m.scalar_maximum(Vec::Zero(2), 1.2);
    const double eps = 0.1;
    CriticalPoint cp = find_critical(m, eps, p0, solver());
    EXPECT_LT(cp.solution.state.a.norm(), 1e-9);
    EXPECT_LT(m.distance(p0, cp.point), eps * eps);
    // the Newton polish from the base point lands on the same critical point
    CriticalPoint pol = polish_critical(m, eps, p0, solver());
    EXPECT_LT((pol.point - cp.point).norm(), 1e-6);
}

TEST(FindCritical, SpaceFormNeedsNoPolish) {
    const ModelManifold round = ModelManifold::constant_curvature(2, 1.0);
    CriticalPoint cp = polish_critical(round, 0.1, vec2(0.2, 0.2), solver());
    EXPECT_EQ(cp.newton_iterations, 0);
    EXPECT_LT(cp.solution.state.a.norm(), 1e-12);
}
