#pragma once

#include "serrin/ball_field.hpp"
#include "serrin/numerics.hpp"
#include "serrin/sphere_spectral.hpp"

#include <array>
#include <memory>
#include <string>
#include <vector>

namespace serrin {

/// Curvature data at a point in an orthonormal frame {E_i}.
///
/// riemann(a, b, c, d) = g(R(E_a, E_b) E_c, E_d) and the Ricci tensor is the
/// contraction Ric_ab = -sum_i riemann(a, i, b, i).  With this convention the
/// unit sphere has riemann(1, 2, 2, 1) = +1 and riemann(1, 2, 1, 2) = -1.
struct CurvaturePacket {
    int dim = 2;
    std::vector<double> riemann_;   // dim^4
    std::vector<double> nabla_;     // dim^5, last index is the derivative
    Eigen::MatrixXd ricci;
    double scalar = 0.0;

    explicit CurvaturePacket(int dim_ = 2);

    double& riemann(int a, int b, int c, int d) { return riemann_[idx(a, b, c, d)]; }
    double riemann(int a, int b, int c, int d) const { return riemann_[idx(a, b, c, d)]; }
    double& nabla(int a, int b, int c, int d, int m) { return nabla_[idx(a, b, c, d) * dim + m]; }
    double nabla(int a, int b, int c, int d, int m) const { return nabla_[idx(a, b, c, d) * dim + m]; }

    /// Recompute ricci and scalar from riemann.
    void contract();
    /// Largest violation of the algebraic symmetries (antisymmetry, pair
    /// symmetry, first Bianchi) across riemann and nabla.
    double symmetry_defect() const;
    /// Frame components of the gradient of the scalar curvature, from nabla.
    Vec scalar_gradient() const;
    /// Throws MalformedChart when symmetry_defect exceeds tol.
    void validate(double tol = 1e-8) const;

    static CurvaturePacket flat(int dim);
    /// Constant sectional curvature k.
    static CurvaturePacket constant_curvature(int dim, double k);
    /// A surface with Gauss curvature K and frame gradient dK.
    static CurvaturePacket surface(double K, const Vec& dK);

private:
    int idx(int a, int b, int c, int d) const { return ((a * dim + b) * dim + c) * dim + d; }
};

/// Metric and its first derivatives at a point of a normal-coordinate chart.
struct ChartSample {
    Mat G;
    std::array<Mat, 3> dG;  // dG[m] = d G / d z^m
};

/// A Riemannian metric written in normal coordinates centered at a base
/// point.  Implementations are immutable.
class NormalChart {
public:
    virtual ~NormalChart() = default;
    virtual int dim() const = 0;
    virtual void evaluate(const Vec& z, ChartSample& out) const = 0;
    /// Samples at z = s * dir for each s in radii (any order).
    virtual void evaluate_ray(const Vec& dir, const std::vector<double>& radii,
                              std::vector<ChartSample>& out) const;
};

class EuclideanChart final : public NormalChart {
public:
    explicit EuclideanChart(int dim) : dim_(dim) {}
    int dim() const override { return dim_; }
    void evaluate(const Vec& z, ChartSample& out) const override;

private:
    int dim_;
};

/// Closed-form normal coordinates of the space form of curvature k.
class ConstantCurvatureChart final : public NormalChart {
public:
    ConstantCurvatureChart(int dim, double k) : dim_(dim), k_(k) {}
    int dim() const override { return dim_; }
    void evaluate(const Vec& z, ChartSample& out) const override;

private:
    int dim_;
    double k_;
};

/// The curvature-jet metric delta + (1/3) R z z + (1/6) DR z z z.
class TruncatedChart final : public NormalChart {
public:
    explicit TruncatedChart(CurvaturePacket packet) : packet_(std::move(packet)) {}
    int dim() const override { return packet_.dim; }
    void evaluate(const Vec& z, ChartSample& out) const override;
    const CurvaturePacket& packet() const { return packet_; }

private:
    CurvaturePacket packet_;
};

/// Curvature read off a chart by finite differences of its metric
/// derivatives (second and third Taylor coefficients).
CurvaturePacket packet_from_chart(const NormalChart& chart, double h = 0.05);

enum class ManifoldKind { Flat, ConstantCurvature, ConformalSphere2D };

/// Gaussian modulation of the conformal factor of the round sphere.
struct Bump {
    double amplitude = 0.3;
    double sigma = 0.6;
    Vec center = Vec::Zero(2);
};

/// Model manifolds given by a conformally flat metric exp(2F(y)) delta on a
/// coordinate patch: flat space (F = 0), stereographic space forms, and a
/// bumped round sphere in dimension two.
class ModelManifold {
public:
    static ModelManifold flat(int dim);
    static ModelManifold constant_curvature(int dim, double k);
    static ModelManifold conformal_sphere(const Bump& bump);

    ManifoldKind kind() const { return kind_; }
    int dim() const { return dim_; }
    double curvature() const { return k_; }
    const Bump& bump() const { return bump_; }
    std::string describe() const;

    /// Conformal factor F and its coordinate gradient; templated so that
    /// jets propagate through.
    template <class T>
    T conformal_factor(const T* y) const;
    template <class T>
    void conformal_gradient(const T* y, T* out) const;

    struct ScalarJet {
        double value = 0.0;
        Vec grad;   // coordinate derivatives
        Mat hess;
    };
    ScalarJet scalar_jet(const Vec& y) const;
    double scalar(const Vec& y) const { return scalar_jet(y).value; }
    /// Gradient of the scalar curvature in the orthonormal frame
    /// exp(-F) d/dy^i.
    Vec scalar_gradient(const Vec& y) const;

    /// exp_p(z) with z in the frame at p.
    Vec exp_map(const Vec& p, const Vec& z, int steps = 200) const;
    /// Inverse of exp_map by Newton iteration; throws EnvelopeError when it
    /// fails to converge.
    Vec log_map(const Vec& p, const Vec& q, double tol = 1e-13) const;
    double distance(const Vec& p, const Vec& q) const { return log_map(p, q).norm(); }

    /// Analytic curvature packet.
    CurvaturePacket packet(const Vec& p) const;
    /// Exact normal coordinates at p.
    std::shared_ptr<const NormalChart> normal_chart(const Vec& p, int substeps = 4) const;

    /// Newton search for a critical point of the scalar curvature.
    Vec scalar_critical_point(const Vec& guess) const;
    /// Nondegenerate maximum of the scalar curvature found by scanning a
    /// cube of the chart and refining by Newton.
    Vec scalar_maximum(const Vec& center, double half_width, int samples = 41) const;

private:
    ModelManifold(ManifoldKind kind, int dim, double k) : kind_(kind), dim_(dim), k_(k) {}

    ManifoldKind kind_;
    int dim_;
    double k_ = 0.0;
    Bump bump_;
};

/// Normal coordinates of a model manifold obtained by integrating geodesics
/// with jets in the initial velocity.
class GeodesicChart final : public NormalChart {
public:
    GeodesicChart(ModelManifold manifold, Vec base, int substeps)
        : manifold_(std::move(manifold)), base_(std::move(base)), substeps_(substeps) {}
    int dim() const override { return manifold_.dim(); }
    void evaluate(const Vec& z, ChartSample& out) const override;
    void evaluate_ray(const Vec& dir, const std::vector<double>& radii,
                      std::vector<ChartSample>& out) const override;

private:
    ModelManifold manifold_;
    Vec base_;
    int substeps_;
};

enum class Fidelity { Truncated, ExactChart };
/// How a boundary function v on the sphere is extended into the ball to
/// define rho = 1 + v.
enum class Extension { SolidHarmonic, Cutoff };

/// Scaled, perturbed metric hat g on B_1: the pullback of g(eps .) under
/// x -> (1 + v(x)) x.
struct MetricJet {
    double eps = 0.0;
    std::shared_ptr<const NormalChart> chart;
    SphereFunction profile;
    Extension extension = Extension::SolidHarmonic;
    Fidelity fidelity = Fidelity::ExactChart;

    int dim() const { return chart->dim(); }
};

MetricJet make_jet(const ModelManifold& m, const Vec& p, double eps, const SphereFunction& profile,
                   Fidelity fidelity = Fidelity::ExactChart,
                   Extension extension = Extension::SolidHarmonic);
MetricJet euclidean_jet(int dim, const SphereFunction& profile,
                        Extension extension = Extension::SolidHarmonic);

/// The cutoff used by Extension::Cutoff: 0 for r <= 1/4, 1 for r >= 1/2,
/// quintic smoothstep in between.  Returns chi, chi', chi''.
std::array<double, 3> cutoff(double r);

/// hat g at a single point of the closed unit ball.
Mat pullback_metric(const MetricJet& jet, const Vec& x);

/// Coefficients of the Laplace-Beltrami operator of hat g on a ball grid,
/// written as ginv^{ij} d_ij + b^j d_j, together with the volume and
/// boundary-area densities.
struct MetricField {
    std::vector<Eigen::MatrixXd> ginv;   // packed, M x nn each
    std::vector<Eigen::MatrixXd> drift;  // b^j
    Eigen::MatrixXd sqrt_det;
    Eigen::VectorXd boundary_density;    // area element on the boundary nodes
    Eigen::MatrixXd rho;                 // 1 + v extended
};

MetricField assemble_metric(const MetricJet& jet, const BallGrid& grid);

/// Delta_hat g u on the grid.
Eigen::MatrixXd apply_laplacian(const MetricField& metric, const GridSamples& u, int dim);

BallField laplace_beltrami_apply(const MetricJet& jet, const BallGrid& grid, const BallField& u);

}  // namespace serrin

#include "serrin/detail/conformal_factor.ipp"
