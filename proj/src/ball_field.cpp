#include "serrin/ball_field.hpp"

#include <cmath>

namespace serrin {

SphereFunction BallField::trace() const {
    SphereFunction h(dim, max_degree);
    h.coeffs = radial.row(0).transpose();
    return h;
}

BallGrid::BallGrid(int dim, int max_degree, int radial_size, int exactness)
    : sphere_(dim, max_degree, exactness), radial_(radial_size),
      radial_weights_(radial_.radial_weights(dim)) {}

Vec BallGrid::point(int i, int j) const {
    return radial_.node(i) * Vec(sphere_.nodes().row(j).transpose());
}

Eigen::MatrixXd BallGrid::synthesize(const BallField& u) const {
    return u.radial * sphere_.values().transpose();
}

BallField BallGrid::analyze(const Eigen::MatrixXd& samples) const {
    BallField u = zero();
    // rows of samples are radial nodes; analyze each row on the sphere
    const Eigen::MatrixXd& Y = sphere_.values();
    u.radial = samples * sphere_.weights().asDiagonal() * Y;
    return u;
}

Eigen::MatrixXd BallGrid::radial_derivative(const BallField& u, int order) const {
    Eigen::MatrixXd out(u.radial.rows(), u.radial.cols());
    for (int m = 0; m < u.num_modes(); ++m) {
        const int par = parity(m);
        const Eigen::MatrixXd& D = order == 1 ? radial_.D1(par) : radial_.D2(par);
        // Even profiles are differentiated after removing their boundary
        // value; the matrices annihilate constants only up to roundoff.
        if (par > 0)
            out.col(m) = D * (u.radial.col(m).array() - u.radial(0, m)).matrix();
        else
            out.col(m) = D * u.radial.col(m);
    }
    return out;
}

GridSamples BallGrid::derivatives(const Eigen::MatrixXd& f, const Eigen::MatrixXd& f1,
                                  const Eigen::MatrixXd& f2, bool hessian) const {
    const int N = dim();
    const Eigen::MatrixXd& Y = sphere_.values();
    const Eigen::MatrixXd& X = sphere_.nodes();
    const Eigen::ArrayXd rinv = radial_.nodes().array().inverse();

    GridSamples s;
    s.value = f * Y.transpose();
    const Eigen::MatrixXd V1 = f1 * Y.transpose();

    std::vector<Eigen::MatrixXd> Ga(N), G1a(N);
    s.grad.resize(N);
    for (int a = 0; a < N; ++a) {
        const Eigen::RowVectorXd xa = X.col(a).transpose();
        Ga[a] = f * sphere_.grad_angular()[a].transpose();
        s.grad[a] = (V1.array().rowwise() * xa.array()).matrix();
        s.grad[a] += (Ga[a].array().colwise() * rinv).matrix();
        if (hessian) G1a[a] = f1 * sphere_.grad_angular()[a].transpose();
    }
    if (!hessian) return s;

    const Eigen::MatrixXd V2 = f2 * Y.transpose();
    s.hess.resize(N * (N + 1) / 2);
    for (int a = 0; a < N; ++a) {
        for (int b = a; b < N; ++b) {
            const Eigen::ArrayXXd xa = X.col(a).transpose().array().replicate(f.rows(), 1);
            const Eigen::ArrayXXd xb = X.col(b).transpose().array().replicate(f.rows(), 1);
            const Eigen::ArrayXXd proj = (a == b ? 1.0 : 0.0) - xa * xb;
            const Eigen::MatrixXd H = f * sphere_.hess_angular()[packed_index(N, a, b)].transpose();
            Eigen::ArrayXXd h = V2.array() * xa * xb;
            h += (V1.array() * proj).colwise() * rinv;
            h += (G1a[b].array() * xa + G1a[a].array() * xb).colwise() * rinv;
            h += H.array().colwise() * (rinv * rinv);
            s.hess[packed_index(N, a, b)] = h.matrix();
        }
    }
    return s;
}

GridSamples BallGrid::derivatives(const BallField& u, bool hessian) const {
    return derivatives(u.radial, radial_derivative(u, 1),
                       hessian ? radial_derivative(u, 2) : Eigen::MatrixXd(u.radial), hessian);
}

Eigen::MatrixXd BallGrid::laplacian_samples(const GridSamples& s) const {
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(s.value.rows(), s.value.cols());
    for (int a = 0; a < dim(); ++a) lap += s.hess[packed_index(dim(), a, a)];
    return lap;
}

double BallGrid::integrate(const Eigen::MatrixXd& samples) const {
    return radial_weights_.dot(samples * sphere_.weights());
}

double BallGrid::integrate_boundary(const Eigen::VectorXd& samples) const {
    return sphere_.weights().dot(samples);
}

double BallGrid::evaluate(const BallField& u, const Vec& x) const {
    const double r = x.norm();
    Eigen::VectorXd xhat = Eigen::VectorXd::Zero(dim());
    if (r > 0.0)
        xhat = x / r;
    else
        xhat[0] = 1.0;
    std::vector<double> y;
    solid_harmonics<double>(dim(), max_degree(), xhat.data(), y);
    double s = 0.0;
    for (int m = 0; m < u.num_modes(); ++m)
        s += y[m] * radial_.interpolation_row(r, parity(m)).dot(u.radial.col(m));
    return s;
}

double BallGrid::angular_tail(const BallField& u) const {
    double top = 0.0, total = 0.0;
    for (int m = 0; m < u.num_modes(); ++m) {
        const double e = u.radial.col(m).squaredNorm();
        total += e;
        if (sphere_.degrees()[m] == max_degree()) top += e;
    }
    return total > 0.0 ? std::sqrt(top / total) : 0.0;
}

}  // namespace serrin
