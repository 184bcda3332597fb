#include "serrin/sphere_spectral.hpp"

#include "serrin/numerics.hpp"
#include "serrin/taylor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace serrin {

namespace {

void check_dim(int dim) {
    if (dim != 2 && dim != 3)
        throw std::invalid_argument("harmonic machinery supports N = 2 and N = 3 only");
}

template <int D>
void fill_tables(int L, const Eigen::MatrixXd& nodes, std::vector<Eigen::MatrixXd>& grad,
                 std::vector<Eigen::MatrixXd>& hess, Eigen::MatrixXd& values) {
    using J = Taylor<D, 2>;
    const int nn = static_cast<int>(nodes.rows());
    const int nm = mode_count(D, L);
    values.setZero(nn, nm);
    grad.assign(D, Eigen::MatrixXd::Zero(nn, nm));
    hess.assign(D * (D + 1) / 2, Eigen::MatrixXd::Zero(nn, nm));
    std::vector<J> out;
    for (int j = 0; j < nn; ++j) {
        std::array<J, D> x;
        for (int i = 0; i < D; ++i) x[i] = J::variable(i, nodes(j, i));
        solid_harmonics<J>(D, L, x.data(), out);
        for (int m = 0; m < nm; ++m) {
            values(j, m) = out[m].value();
            for (int a = 0; a < D; ++a) {
                grad[a](j, m) = out[m].d(a);
                for (int b = a; b < D; ++b) hess[packed_index(D, a, b)](j, m) = out[m].d2(a, b);
            }
        }
    }
}

}  // namespace

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
}

int mode_count(int dim, int L) {
    check_dim(dim);
    return dim == 2 ? 2 * L + 1 : (L + 1) * (L + 1);
}

int mode_index(int dim, int k, int m) {
    if (dim == 2) {
        if (k == 0) return 0;
        return m > 0 ? 2 * k - 1 : 2 * k;
    }
    return k * k + m + k;
}

int mode_degree(int dim, int index) {
    if (dim == 2) return (index + 1) / 2;
    return static_cast<int>(std::floor(std::sqrt(static_cast<double>(index)) + 1e-12));
}

int mode_order(int dim, int index) {
    const int k = mode_degree(dim, index);
    if (dim == 2) {
        if (k == 0) return 0;
        return (index == 2 * k - 1) ? k : -k;
    }
    return index - k * k - k;
}

double unit_ball_volume(int dim) {
    return std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0);
}

// ---------------------------------------------------------------------------

SphereFunction SphereFunction::constant(int dim, int L, double value) {
    SphereFunction f(dim, L);
    f.coeffs[0] = value * std::sqrt(dim * unit_ball_volume(dim));
    return f;
}

namespace {
// Degree-1 harmonic attached to coordinate i: x^i / sqrt(|B_1|).
int linear_mode(int dim, int i) {
    if (dim == 2) return mode_index(2, 1, i == 0 ? 1 : -1);
    static constexpr int order_of[3] = {1, -1, 0};
    return mode_index(3, 1, order_of[i]);
}
}  // namespace

SphereFunction SphereFunction::linear(int dim, int L, const Eigen::VectorXd& a) {
    SphereFunction f(dim, L);
    if (L < 1) return f;
    const double s = std::sqrt(unit_ball_volume(dim));
    for (int i = 0; i < dim; ++i) f.coeffs[linear_mode(dim, i)] = a[i] * s;
    return f;
}

double SphereFunction::mean() const {
    return coeffs[0] / std::sqrt(dim * unit_ball_volume(dim));
}

Eigen::VectorXd SphereFunction::linear_part() const {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(dim);
    if (max_degree < 1) return a;
    const double s = std::sqrt(unit_ball_volume(dim));
    for (int i = 0; i < dim; ++i) a[i] = coeffs[linear_mode(dim, i)] / s;
    return a;
}

double SphereFunction::evaluate(const Eigen::VectorXd& x) const {
    std::vector<double> y;
    solid_harmonics<double>(dim, max_degree, x.data(), y);
    double s = 0.0;
    for (int m = 0; m < size(); ++m) s += coeffs[m] * y[m];
    return s;
}

SphereFunction& SphereFunction::operator+=(const SphereFunction& o) {
    coeffs += o.coeffs;
    return *this;
}
SphereFunction& SphereFunction::operator-=(const SphereFunction& o) {
    coeffs -= o.coeffs;
    return *this;
}
SphereFunction& SphereFunction::operator*=(double s) {
    coeffs *= s;
    return *this;
}

SphereFunction PerturbationState::composite() const {
    SphereFunction f = vbar;
    f += SphereFunction::constant(vbar.dim, vbar.max_degree, v0);
    f += SphereFunction::linear(vbar.dim, vbar.max_degree, a);
    return f;
}

SphereFunction PerturbationState::domain_profile() const {
    SphereFunction f = vbar;
    f += SphereFunction::constant(vbar.dim, vbar.max_degree, v0);
    return f;
}

PerturbationState PerturbationState::split(const SphereFunction& v) {
    PerturbationState s;
    s.v0 = v.mean();
    s.vbar = project_rest(v);
    s.a = v.linear_part();
    return s;
}

// ---------------------------------------------------------------------------

SphereBasis::SphereBasis(int dim, int L, int exactness)
    : dim_(dim), max_degree_(L), num_modes_(mode_count(dim, L)) {
    check_dim(dim);
    if (L < 0) throw std::invalid_argument("negative harmonic degree");
    const int Q = exactness < 0 ? std::max(3 * L, 2) : exactness;
    const double pi = std::numbers::pi;
    if (dim == 2) {
        const int n = Q + 1;
        nodes_.resize(n, 2);
        weights_ = Eigen::VectorXd::Constant(n, 2.0 * pi / n);
        for (int j = 0; j < n; ++j) {
            const double t = 2.0 * pi * j / n;
            nodes_(j, 0) = std::cos(t);
            nodes_(j, 1) = std::sin(t);
        }
    } else {
        const int nt = (Q + 2) / 2;
        const int np = Q + 1;
        std::vector<double> z, w;
        gauss_legendre(nt, z, w);
        nodes_.resize(nt * np, 3);
        weights_.resize(nt * np);
        for (int a = 0; a < nt; ++a) {
            const double st = std::sqrt(std::max(0.0, 1.0 - z[a] * z[a]));
            for (int b = 0; b < np; ++b) {
                const double ph = 2.0 * pi * b / np;
                const int j = a * np + b;
                nodes_(j, 0) = st * std::cos(ph);
                nodes_(j, 1) = st * std::sin(ph);
                nodes_(j, 2) = z[a];
                weights_[j] = w[a] * 2.0 * pi / np;
            }
        }
    }

    degrees_.resize(num_modes_);
    for (int m = 0; m < num_modes_; ++m) degrees_[m] = mode_degree(dim, m);

    if (dim == 2)
        fill_tables<2>(L, nodes_, grad_solid_, hess_solid_, values_);
    else
        fill_tables<3>(L, nodes_, grad_solid_, hess_solid_, values_);

    analysis_ = values_.transpose() * weights_.asDiagonal();

    // Derivatives of Y(x/|x|) at unit vectors from those of P = r^k Y.
    const int nn = num_nodes();
    grad_angular_.assign(dim, Eigen::MatrixXd::Zero(nn, num_modes_));
    hess_angular_.assign(dim * (dim + 1) / 2, Eigen::MatrixXd::Zero(nn, num_modes_));
    for (int j = 0; j < nn; ++j) {
        for (int m = 0; m < num_modes_; ++m) {
            const double k = degrees_[m];
            const double P = values_(j, m);
            for (int a = 0; a < dim; ++a) {
                const double xa = nodes_(j, a);
                grad_angular_[a](j, m) = grad_solid_[a](j, m) - k * P * xa;
                for (int b = a; b < dim; ++b) {
                    const double xb = nodes_(j, b);
                    double h = hess_solid_[packed_index(dim, a, b)](j, m);
                    h -= k * (xa * grad_solid_[b](j, m) + xb * grad_solid_[a](j, m));
                    if (a == b) h -= k * P;
                    h += k * (k + 2.0) * P * xa * xb;
                    hess_angular_[packed_index(dim, a, b)](j, m) = h;
                }
            }
        }
    }
}

SphereFunction SphereBasis::analyze(const Eigen::VectorXd& samples) const {
    SphereFunction f(dim_, max_degree_);
    f.coeffs = analysis_ * samples;
    return f;
}

Eigen::VectorXd SphereBasis::synthesize(const SphereFunction& f) const {
    if (f.dim != dim_ || f.size() != num_modes_)
        throw std::invalid_argument("SphereFunction does not match the basis");
    return values_ * f.coeffs;
}

double SphereBasis::sup_norm(const SphereFunction& f) const {
    return synthesize(f).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------

namespace {
template <class Fn>
SphereFunction scale_by_degree(const SphereFunction& f, Fn&& factor) {
    SphereFunction g = f;
    for (int m = 0; m < f.size(); ++m) g.coeffs[m] *= factor(mode_degree(f.dim, m));
    return g;
}
}  // namespace

SphereFunction project_mean(const SphereFunction& f) {
    return scale_by_degree(f, [](int k) { return k == 0 ? 1.0 : 0.0; });
}
SphereFunction project_linear(const SphereFunction& f) {
    return scale_by_degree(f, [](int k) { return k == 1 ? 1.0 : 0.0; });
}
SphereFunction project_rest(const SphereFunction& f) {
    return scale_by_degree(f, [](int k) { return k >= 2 ? 1.0 : 0.0; });
}
SphereFunction dtn(const SphereFunction& v) {
    return scale_by_degree(v, [](int k) { return static_cast<double>(k); });
}
SphereFunction L_operator(const SphereFunction& w) {
    return scale_by_degree(w, [](int k) { return k - 1.0; });
}
SphereFunction calL_apply(const SphereFunction& w) {
    const double N = w.dim;
    return scale_by_degree(w, [N](int k) { return k == 1 ? 1.0 : (k - 1.0) / N; });
}
SphereFunction calL_solve(const SphereFunction& rhs) {
    const double N = rhs.dim;
    return scale_by_degree(rhs, [N](int k) { return k == 1 ? 1.0 : N / (k - 1.0); });
}

double sobolev_norm(const SphereFunction& f) {
    double s = 0.0;
    for (int m = 0; m < f.size(); ++m) {
        const double k = mode_degree(f.dim, m);
        s += (1.0 + k * k) * (1.0 + k * k) * f.coeffs[m] * f.coeffs[m];
    }
    return std::sqrt(s);
}

double l2_norm(const SphereFunction& f) { return f.coeffs.norm(); }

}  // namespace serrin
