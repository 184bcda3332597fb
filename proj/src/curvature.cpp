#include "serrin/curvature.hpp"

#include <algorithm>
#include <cmath>

namespace serrin {

CurvaturePacket::CurvaturePacket(int dim_)
    : dim(dim_), riemann_(dim_ * dim_ * dim_ * dim_, 0.0),
      nabla_(dim_ * dim_ * dim_ * dim_ * dim_, 0.0), ricci(Eigen::MatrixXd::Zero(dim_, dim_)) {}

void CurvaturePacket::contract() {
    ricci.setZero(dim, dim);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            for (int i = 0; i < dim; ++i) ricci(a, b) -= riemann(a, i, b, i);
    scalar = ricci.trace();
}

double CurvaturePacket::symmetry_defect() const {
    double worst = 0.0;
    auto check = [&](auto&& T) {
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b)
                for (int c = 0; c < dim; ++c)
                    for (int d = 0; d < dim; ++d) {
                        const double t = T(a, b, c, d);
                        worst = std::max(worst, std::abs(t + T(b, a, c, d)));
                        worst = std::max(worst, std::abs(t + T(a, b, d, c)));
                        worst = std::max(worst, std::abs(t - T(c, d, a, b)));
                        worst = std::max(worst, std::abs(t + T(a, c, d, b) + T(a, d, b, c)));
                    }
    };
    check([this](int a, int b, int c, int d) { return riemann(a, b, c, d); });
    for (int m = 0; m < dim; ++m)
        check([this, m](int a, int b, int c, int d) { return nabla(a, b, c, d, m); });
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            double r = 0.0;
            for (int i = 0; i < dim; ++i) r -= riemann(a, i, b, i);
            worst = std::max(worst, std::abs(r - ricci(a, b)));
        }
    worst = std::max(worst, std::abs(scalar - ricci.trace()));
    return worst;
}

void CurvaturePacket::validate(double tol) const {
    const double d = symmetry_defect();
    if (!(d <= tol))
        throw MalformedChart("curvature packet violates tensor symmetries by " + std::to_string(d));
}

Vec CurvaturePacket::scalar_gradient() const {
    Vec g = Vec::Zero(dim);
    for (int m = 0; m < dim; ++m)
        for (int a = 0; a < dim; ++a)
            for (int i = 0; i < dim; ++i) g[m] -= nabla(a, i, a, i, m);
    return g;
}

CurvaturePacket CurvaturePacket::flat(int dim) { return CurvaturePacket(dim); }

namespace {
// delta_ad delta_bc - delta_ac delta_bd
double space_form(int a, int b, int c, int d) {
    return (a == d && b == c ? 1.0 : 0.0) - (a == c && b == d ? 1.0 : 0.0);
}
}  // namespace

CurvaturePacket CurvaturePacket::constant_curvature(int dim, double k) {
    CurvaturePacket P(dim);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            for (int c = 0; c < dim; ++c)
                for (int d = 0; d < dim; ++d) P.riemann(a, b, c, d) = k * space_form(a, b, c, d);
    P.contract();
    return P;
}

CurvaturePacket CurvaturePacket::surface(double K, const Vec& dK) {
    CurvaturePacket P = constant_curvature(2, K);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d)
                    for (int m = 0; m < 2; ++m) P.nabla(a, b, c, d, m) = dK[m] * space_form(a, b, c, d);
    return P;
}

// ---------------------------------------------------------------------------

void NormalChart::evaluate_ray(const Vec& dir, const std::vector<double>& radii,
                               std::vector<ChartSample>& out) const {
    out.resize(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) evaluate(radii[i] * dir, out[i]);
}

void EuclideanChart::evaluate(const Vec&, ChartSample& out) const {
    out.G = Mat::Identity(dim_, dim_);
    for (int m = 0; m < dim_; ++m) out.dG[m] = Mat::Zero(dim_, dim_);
}

namespace {

// Phi(u) with (sn_k(r)/r)^2 = 1 + r^2 Phi, u = k r^2, and dPhi/du.
std::pair<double, double> space_form_phi(double k, double r) {
    const double u = k * r * r;
    if (std::abs(u) < 0.1) {
        // (sin x / x)^2 = sum_n (-1)^n 2^{2n+1} x^{2n} / (2n+2)!
        double phi = 0.0, dphi = 0.0;
        double fact = 2.0;  // (2n+2)! at n = 0
        double pow2 = 2.0;
        double un = 1.0;    // u^{n-1}
        double un_prev = 0.0;
        for (int n = 1; n <= 12; ++n) {
            fact *= (2.0 * n + 1.0) * (2.0 * n + 2.0);
            pow2 *= 4.0;
            const double c = ((n % 2) ? -1.0 : 1.0) * pow2 / fact;
            phi += c * un;
            if (n >= 2) dphi += c * (n - 1) * un_prev;
            un_prev = un;
            un *= u;
        }
        return {k * phi, k * dphi};
    }
    const double a = std::sqrt(std::abs(k));
    const double x = a * r;
    double s, c;
    if (k > 0) {
        s = std::sin(x);
        c = std::cos(x);
    } else {
        s = std::sinh(x);
        c = std::cosh(x);
    }
    const double q2 = (s * s) / (x * x);
    const double phi = (q2 - 1.0) / (r * r);
    // d q2 / du with u = k r^2, x^2 = |u|
    const double dq2_dx = 2.0 * s * (c * x - s) / (x * x * x);
    const double dx_du = 1.0 / (2.0 * x) * (k > 0 ? 1.0 : -1.0);
    const double dq2_du = dq2_dx * dx_du;
    // phi = k (q2 - 1)/u
    const double dphi = k * (dq2_du * u - (q2 - 1.0)) / (u * u);
    return {phi, dphi};
}

}  // namespace

void ConstantCurvatureChart::evaluate(const Vec& z, ChartSample& out) const {
    const int N = dim_;
    const double r = z.norm();
    const auto [phi, dphi_du] = space_form_phi(k_, r);
    const Mat I = Mat::Identity(N, N);
    const Mat P = r * r * I - z * z.transpose();
    out.G = I + phi * P;
    for (int m = 0; m < N; ++m) {
        // d phi / d z^m = dphi/du * 2 k z^m
        const double dphi = dphi_du * 2.0 * k_ * z[m];
        Mat dP = 2.0 * z[m] * I;
        for (int i = 0; i < N; ++i) {
            dP(i, m) -= z[i];
            dP(m, i) -= z[i];
        }
        out.dG[m] = dphi * P + phi * dP;
    }
}

void TruncatedChart::evaluate(const Vec& z, ChartSample& out) const {
    const int N = packet_.dim;
    const auto& P = packet_;
    out.G = Mat::Identity(N, N);
    for (int m = 0; m < N; ++m) out.dG[m] = Mat::Zero(N, N);
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            double g = 0.0;
            for (int k = 0; k < N; ++k) {
                for (int l = 0; l < N; ++l) {
                    const double R = P.riemann(i, k, j, l);
                    g += R * z[k] * z[l] / 3.0;
                    out.dG[k](i, j) += R * z[l] / 3.0;
                    out.dG[l](i, j) += R * z[k] / 3.0;
                    for (int m = 0; m < N; ++m) {
                        const double D = P.nabla(i, k, j, l, m) / 6.0;
                        g += D * z[k] * z[l] * z[m];
                        out.dG[k](i, j) += D * z[l] * z[m];
                        out.dG[l](i, j) += D * z[k] * z[m];
                        out.dG[m](i, j) += D * z[k] * z[l];
                    }
                }
            }
            out.G(i, j) += g;
        }
    }
}

// ---------------------------------------------------------------------------

namespace {

// Second derivatives d_b d_d G_ac and third derivatives d_b d_d d_m G_ac at
// the origin by central differences of dG, one step size.
struct ChartDerivatives {
    std::vector<double> second;  // [a][c][b][d]
    std::vector<double> third;   // [a][c][b][d][m]
};

ChartDerivatives differentiate(const NormalChart& chart, double h) {
    const int N = chart.dim();
    ChartDerivatives D;
    D.second.assign(N * N * N * N, 0.0);
    D.third.assign(N * N * N * N * N, 0.0);
    ChartSample s0, sp, sm, spp, spm, smp, smm;
    const Vec zero = Vec::Zero(N);
    chart.evaluate(zero, s0);
    for (int d = 0; d < N; ++d) {
        Vec e = Vec::Zero(N);
        e[d] = h;
        chart.evaluate(e, sp);
        chart.evaluate(-e, sm);
        for (int b = 0; b < N; ++b)
            for (int a = 0; a < N; ++a)
                for (int c = 0; c < N; ++c) {
                    D.second[((a * N + c) * N + b) * N + d] = (sp.dG[b](a, c) - sm.dG[b](a, c)) / (2.0 * h);
                    D.third[(((a * N + c) * N + b) * N + d) * N + d] =
                        (sp.dG[b](a, c) - 2.0 * s0.dG[b](a, c) + sm.dG[b](a, c)) / (h * h);
                }
        for (int m = d + 1; m < N; ++m) {
            Vec f = Vec::Zero(N);
            f[m] = h;
            chart.evaluate(e + f, spp);
            chart.evaluate(e - f, spm);
            chart.evaluate(-e + f, smp);
            chart.evaluate(-e - f, smm);
            for (int b = 0; b < N; ++b)
                for (int a = 0; a < N; ++a)
                    for (int c = 0; c < N; ++c) {
                        const double v = (spp.dG[b](a, c) - spm.dG[b](a, c) - smp.dG[b](a, c) +
                                          smm.dG[b](a, c)) / (4.0 * h * h);
                        D.third[(((a * N + c) * N + b) * N + d) * N + m] = v;
                        D.third[(((a * N + c) * N + b) * N + m) * N + d] = v;
                    }
        }
    }
    return D;
}

}  // namespace

CurvaturePacket packet_from_chart(const NormalChart& chart, double h) {
    const int N = chart.dim();
    // Richardson extrapolation over h, h/2, h/4 (errors are even in h).
    ChartDerivatives d1 = differentiate(chart, h);
    ChartDerivatives d2 = differentiate(chart, h / 2);
    ChartDerivatives d4 = differentiate(chart, h / 4);
    auto extrapolate = [](std::vector<double>& a, const std::vector<double>& b, const std::vector<double>& c) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double ab = (4.0 * b[i] - a[i]) / 3.0;
            const double bc = (4.0 * c[i] - b[i]) / 3.0;
            a[i] = (16.0 * bc - ab) / 15.0;
        }
    };
    extrapolate(d1.second, d2.second, d4.second);
    extrapolate(d1.third, d2.third, d4.third);

    auto S = [&](int a, int c, int b, int d) {
        const double x = d1.second[((a * N + c) * N + b) * N + d];
        const double y = d1.second[((a * N + c) * N + d) * N + b];
        return 0.5 * (x + y);
    };
    auto T = [&](int a, int c, int b, int d, int m) {
        return d1.third[(((a * N + c) * N + b) * N + d) * N + m];
    };

    CurvaturePacket P(N);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            for (int c = 0; c < N; ++c)
                for (int d = 0; d < N; ++d) {
                    P.riemann(a, b, c, d) = S(a, c, b, d) - S(a, d, b, c);
                    for (int m = 0; m < N; ++m)
                        P.nabla(a, b, c, d, m) =
                            0.5 * (T(a, c, b, d, m) + T(b, d, a, c, m) - T(a, d, b, c, m) - T(b, c, a, d, m));
                }
    P.contract();
    P.validate(1e-8);
    return P;
}

}  // namespace serrin
