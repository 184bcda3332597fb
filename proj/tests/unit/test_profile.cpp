#include "serrin/profile.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

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

// On the unit sphere the torsion function of the cap of radius e is
// u = 2 log(cos(r/2) / cos(e/2)); integrating against sin r dr gives
// int u = 4 pi (c^2 - 1 - 2 log c) with c = cos(e/2).
double cap_torsion(double e) {
    const double c = std::cos(e / 2);
    return 4 * pi * (c * c - 1 - 2 * std::log(c));
}

}  // namespace

TEST(GeodesicBall, FlatBallIsEuclidean) {
    const ModelManifold flat = ModelManifold::flat(2);
    for (double eps : {0.05, 0.3}) {
        GeodesicBall b = J_geodesic_ball(flat, vec2(0.1, 0.2), eps, solver());
        EXPECT_NEAR(b.J_scaled, constants(2).J1, 1e-12);
        EXPECT_NEAR(b.volume, pi * eps * eps, 1e-14);
    }
}

TEST(GeodesicBall, SphericalCapMatchesClosedForm) {
    const ModelManifold round = ModelManifold::constant_curvature(2, 1.0);
    for (double eps : {0.1, 0.3, 0.5}) {
        GeodesicBall b = J_geodesic_ball(round, vec2(0.2, -0.1), eps, solver());
        EXPECT_NEAR(b.J * cap_torsion(eps), 1.0, 1e-10) << eps;
        EXPECT_NEAR(b.volume, 2 * pi * (1 - std::cos(eps)), 1e-12) << eps;
    }
}

TEST(GeodesicBall, VolumeMatchingIsTight) {
    Bump bump;
    bump.center = vec2(0.3, -0.1);
    const ModelManifold m = ModelManifold::conformal_sphere(bump);
    for (double v : {0.005, 0.05, 0.2}) {
        const double eps = match_volume(m, vec2(0.1, 0.1), v, solver());
        EXPECT_LT(std::abs(geodesic_ball_volume(m, vec2(0.1, 0.1), eps, solver()) - v) / v, 1e-10);
    }
}

TEST(GeodesicBall, VolumeOutsideTheEnvelopeIsRejected) {
    const ModelManifold round = ModelManifold::constant_curvature(2, 1.0);
    EXPECT_THROW(match_volume(round, vec2(0, 0), 5.0, solver()), EnvelopeError);
}

TEST(Profile, EuclideanProfileScales) {
    for (int N : {2, 3}) {
        const double B = unit_ball_volume(N);
        for (double r : {0.1, 1.0, 2.0})
            EXPECT_NEAR(euclidean_profile(N, B * std::pow(r, N)) * std::pow(r, N + 2), constants(N).J1, 1e-12);
    }
}

TEST(Profile, FlatRatioIsOne) {
    const ModelManifold flat = ModelManifold::flat(2);
    for (const ProfilePoint& pt : profile_expansion(flat, vec2(0, 0), {0.01, 0.1}, solver()))
        EXPECT_NEAR(pt.ratio, 1.0, 1e-12);
}

TEST(Profile, RoundSphereRatioFromTheCap) {
    const ModelManifold round = ModelManifold::constant_curvature(2, 1.0);
    for (const ProfilePoint& pt : profile_expansion(round, vec2(0, 0), {0.02, 0.2}, solver(), 2)) {
        // cap of area v has radius arccos(1 - v / 2 pi)
        const double e = std::acos(1 - pt.volume / (2 * pi));
        EXPECT_NEAR(pt.eps_used, e, 1e-10);
        EXPECT_NEAR(pt.ratio, 1.0 / (cap_torsion(e) * euclidean_profile(2, pt.volume)), 1e-10);
        EXPECT_LT(pt.volume_error, 1e-10);
    }
}

TEST(Profile, LargerCurvatureLowersTheRatio) {
    Bump bump;
    bump.center = vec2(0.3, -0.1);
    const ModelManifold m = ModelManifold::conformal_sphere(bump);
    const Vec pmax = m.scalar_maximum(Vec::Zero(2), 1.2);
    const Vec pmin = m.scalar_critical_point(vec2(0, 0));
    ASSERT_GT(m.scalar(pmax), m.scalar(pmin));
    const std::vector<double> v{0.01, 0.05, 0.1};
    auto hi = profile_expansion(m, pmax, v, solver());
    auto lo = profile_expansion(m, pmin, v, solver());
    for (std::size_t k = 0; k < v.size(); ++k) EXPECT_LT(hi[k].ratio, lo[k].ratio) << v[k];
}

TEST(Profile, SerrinDomainBeatsTheGeodesicBall) {
    // The Serrin domain is stationary for J at fixed volume; the geodesic
    // ball of the same volume cannot have smaller energy to leading order.
    Bump bump;
    bump.center = vec2(0.3, -0.1);
    const ModelManifold m = ModelManifold::conformal_sphere(bump);
    const Vec p = m.scalar_maximum(Vec::Zero(2), 1.2);
    const double eps = 0.15;
    ReducedReport r = reduced_functional(m, p, eps, solver());
    const double volume = r.volume * eps * eps;
    const double J_serrin = r.J_value / std::pow(eps, 4);
    const GeodesicBall b = J_geodesic_ball(m, p, match_volume(m, p, volume, solver()), solver());
    EXPECT_GE(b.J, J_serrin * (1 - 1e-9));
}
