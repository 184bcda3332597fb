#include "serrin/sphere_spectral.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace serrin;

namespace {

SphereFunction random_function(int dim, int L, unsigned seed) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    SphereFunction f(dim, L);
    for (int m = 0; m < f.size(); ++m) f.coeffs[m] = U(gen);
    return f;
}

double inner(const SphereBasis& B, const SphereFunction& a, const SphereFunction& b) {
    return B.integrate(B.synthesize(a).cwiseProduct(B.synthesize(b)));
}

}  // namespace

TEST(SphereBasis, SecondMomentsMatchBallVolume) {
    for (int dim : {2, 3}) {
        SphereBasis B(dim, dim == 2 ? 16 : 10);
        const double vol = unit_ball_volume(dim);
        for (int k = 0; k < dim; ++k)
            for (int l = 0; l < dim; ++l) {
                Eigen::VectorXd s = B.nodes().col(k).cwiseProduct(B.nodes().col(l));
                EXPECT_NEAR(B.integrate(s), k == l ? vol : 0.0, 1e-12) << dim << " " << k << l;
            }
    }
}

TEST(SphereBasis, ConstantHasOnlyDegreeZero) {
    SphereBasis B(3, 10);
    SphereFunction f = B.quadrature([](const Eigen::VectorXd&) { return 1.0; });
    EXPECT_NEAR(f.coeffs[0], std::sqrt(4.0 * std::numbers::pi), 1e-13);
    EXPECT_LT(f.coeffs.tail(f.size() - 1).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_NEAR(f.mean(), 1.0, 1e-13);
}

TEST(SphereBasis, ProductOfCoordinatesIsPureDegreeTwo) {
    SphereBasis B(3, 10);
    SphereFunction f = B.quadrature([](const Eigen::VectorXd& x) { return x[0] * x[1]; });
    for (int m = 0; m < f.size(); ++m) {
        if (mode_degree(3, m) != 2) {
            EXPECT_LT(std::abs(f.coeffs[m]), 1e-13) << m;
        }
    }
    EXPECT_GT(f.coeffs.norm(), 0.1);
}

TEST(SphereBasis, ParsevalAndOrthonormality) {
    for (int dim : {2, 3}) {
        const int L = dim == 2 ? 16 : 10;
        SphereBasis B(dim, L);
        SphereFunction f = random_function(dim, L, 7);
        EXPECT_NEAR(inner(B, f, f), f.coeffs.squaredNorm(), 1e-11);
        SphereFunction g = B.analyze(B.synthesize(f));
        EXPECT_LT((g.coeffs - f.coeffs).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(SphereFunction, LinearRoundTrip) {
    Eigen::VectorXd a(3);
    a << 0.3, -1.2, 0.7;
    SphereFunction f = SphereFunction::linear(3, 4, a);
    EXPECT_LT((f.linear_part() - a).norm(), 1e-15);
    SphereBasis B(3, 4);
    Eigen::VectorXd x(3);
    x << 0.0, 0.6, 0.8;
    EXPECT_NEAR(f.evaluate(x), a.dot(x), 1e-13);
}

TEST(SphereFunction, ProjectionsSplitExactly) {
    SphereFunction f = random_function(2, 16, 3);
    SphereFunction sum = project_mean(f) + project_linear(f) + project_rest(f);
    EXPECT_EQ((sum.coeffs - f.coeffs).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ((project_linear(project_linear(f)).coeffs - project_linear(f).coeffs).norm(), 0.0);
    EXPECT_EQ(project_mean(project_rest(f)).coeffs.norm(), 0.0);
    EXPECT_EQ(project_linear(project_rest(f)).coeffs.norm(), 0.0);

    PerturbationState s = PerturbationState::split(f);
    EXPECT_LT((s.composite().coeffs - f.coeffs).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_EQ(project_mean(s.vbar).coeffs.norm(), 0.0);
    EXPECT_EQ(project_linear(s.vbar).coeffs.norm(), 0.0);
}

TEST(Steklov, ConstantsAreAnnihilated) {
    SphereFunction c = SphereFunction::constant(2, 8, 2.5);
    EXPECT_EQ(dtn(c).coeffs.norm(), 0.0);
}

TEST(Steklov, DegreeOneIsFixed) {
    Eigen::VectorXd a = Eigen::VectorXd::Unit(3, 0);
    SphereFunction x1 = SphereFunction::linear(3, 10, a);
    EXPECT_LT((dtn(x1).coeffs - x1.coeffs).norm(), 1e-15);
}

TEST(Steklov, CosThreeThetaScalesByThree) {
    SphereBasis B(2, 16);
    SphereFunction f = B.quadrature([](const Eigen::VectorXd& x) { return std::cos(3.0 * std::atan2(x[1], x[0])); });
    SphereFunction g = B.quadrature([](const Eigen::VectorXd& x) { return 3.0 * std::cos(3.0 * std::atan2(x[1], x[0])); });
    EXPECT_LT((dtn(f).coeffs - g.coeffs).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Steklov, SelfAdjoint) {
    for (int dim : {2, 3}) {
        const int L = dim == 2 ? 16 : 10;
        SphereBasis B(dim, L);
        SphereFunction u = random_function(dim, L, 11), w = random_function(dim, L, 12);
        EXPECT_NEAR(inner(B, dtn(u), w), inner(B, u, dtn(w)), 1e-11);
    }
}

TEST(LinearizedOperator, KernelIsDegreeOne) {
    Eigen::VectorXd a = Eigen::VectorXd::Unit(3, 1);
    EXPECT_EQ(L_operator(SphereFunction::linear(3, 6, a)).coeffs.norm(), 0.0);
    SphereFunction one = SphereFunction::constant(3, 6, 1.0);
    EXPECT_LT((L_operator(one).coeffs + one.coeffs).norm(), 1e-15);
    SphereFunction y2(3, 6);
    y2.at(2, 1) = 1.0;
    EXPECT_LT((L_operator(y2).coeffs - y2.coeffs).norm(), 1e-15);
}

TEST(LinearizedOperator, SolveExamples) {
    for (int dim : {2, 3}) {
        SphereFunction one = SphereFunction::constant(dim, 6, 1.0);
        EXPECT_LT((calL_solve(one).coeffs + dim * one.coeffs).norm(), 1e-14);
        SphereFunction x1 = SphereFunction::linear(dim, 6, Eigen::VectorXd::Unit(dim, 0));
        EXPECT_LT((calL_solve(x1).coeffs - x1.coeffs).norm(), 1e-15);
        SphereFunction r = random_function(dim, 6, 5);
        EXPECT_LT((calL_apply(calL_solve(r)).coeffs - r.coeffs).cwiseAbs().maxCoeff(), 1e-13);
    }
}

TEST(LinearizedOperator, InverseIsBounded) {
    // The inverse symbol N/(k-1) is largest at k = 0, 2 and decays, so the
    // operator norm of calL_solve in the coefficient norm is N.
    SphereFunction r = random_function(2, 16, 9);
    EXPECT_LE(l2_norm(calL_solve(r)), 2.0 * l2_norm(r) + 1e-12);
}
