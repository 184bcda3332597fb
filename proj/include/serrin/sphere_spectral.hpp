#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <memory>
#include <vector>

namespace serrin {

/// Number of real harmonic modes of degree <= L on S^{dim-1} (dim = 2 or 3).
int mode_count(int dim, int max_degree);
/// Position of mode (k, m) in coefficient vectors.  On S^1 the order is
/// m = k for cos(k theta) and m = -k for sin(k theta); on S^2, -k <= m <= k.
int mode_index(int dim, int k, int m);
int mode_degree(int dim, int index);
int mode_order(int dim, int index);

/// Regular solid harmonics r^k Y_{k,m}(x/|x|) for all modes up to degree L,
/// orthonormal on the unit sphere.  Templated so that jets can flow through.
template <class T>
void solid_harmonics(int dim, int max_degree, const T* x, std::vector<T>& out);

/// A function on S^{N-1} in the orthonormal real harmonic basis.
struct SphereFunction {
    int dim = 2;
    int max_degree = 0;
    Eigen::VectorXd coeffs;

    SphereFunction() = default;
    SphereFunction(int dim_, int max_degree_)
        : dim(dim_), max_degree(max_degree_), coeffs(Eigen::VectorXd::Zero(mode_count(dim_, max_degree_))) {}

    static SphereFunction constant(int dim, int max_degree, double value);
    /// The linear function <a, x> restricted to the sphere.
    static SphereFunction linear(int dim, int max_degree, const Eigen::VectorXd& a);

    double& at(int k, int m) { return coeffs[mode_index(dim, k, m)]; }
    double at(int k, int m) const { return coeffs[mode_index(dim, k, m)]; }
    int size() const { return static_cast<int>(coeffs.size()); }

    /// Mean value over the sphere.
    double mean() const;
    /// Coefficient vector a with Pi_1 f = <a, x>.
    Eigen::VectorXd linear_part() const;
    /// Pointwise value at a unit vector.
    double evaluate(const Eigen::VectorXd& x) const;

    SphereFunction& operator+=(const SphereFunction& o);
    SphereFunction& operator-=(const SphereFunction& o);
    SphereFunction& operator*=(double s);
    friend SphereFunction operator+(SphereFunction a, const SphereFunction& b) { return a += b; }
    friend SphereFunction operator-(SphereFunction a, const SphereFunction& b) { return a -= b; }
    friend SphereFunction operator*(double s, SphereFunction a) { return a *= s; }
};

/// Boundary perturbation split as in the reduction: mean part v0, the part
/// vbar orthogonal to degrees 0 and 1, and the kernel component a.
struct PerturbationState {
    double v0 = 0.0;
    SphereFunction vbar;
    Eigen::VectorXd a;

    /// v0 + <a, x> + vbar
    SphereFunction composite() const;
    /// v0 + vbar, the part that moves the boundary
    SphereFunction domain_profile() const;
    static PerturbationState split(const SphereFunction& v);
};

/// Quadrature nodes, weights and harmonic tables on S^{N-1}.  Immutable.
class SphereBasis {
public:
    /// exactness: polynomial degree integrated exactly (defaults to 3L).
    SphereBasis(int dim, int max_degree, int exactness = -1);

    int dim() const { return dim_; }
    int max_degree() const { return max_degree_; }
    int num_modes() const { return num_modes_; }
    int num_nodes() const { return static_cast<int>(weights_.size()); }
    const Eigen::MatrixXd& nodes() const { return nodes_; }        // num_nodes x dim
    const Eigen::VectorXd& weights() const { return weights_; }
    const std::vector<int>& degrees() const { return degrees_; }
    /// Y_{k,m}(node), num_nodes x num_modes.
    const Eigen::MatrixXd& values() const { return values_; }
    /// Gradient and Hessian tables of the solid harmonics r^k Y at the nodes:
    /// grad_solid[i] is num_nodes x num_modes for component i; hess_solid is
    /// indexed by the packed pair (i <= j).
    const std::vector<Eigen::MatrixXd>& grad_solid() const { return grad_solid_; }
    const std::vector<Eigen::MatrixXd>& hess_solid() const { return hess_solid_; }
    /// Same for the degree-zero homogeneous extension Y(x/|x|).
    const std::vector<Eigen::MatrixXd>& grad_angular() const { return grad_angular_; }
    const std::vector<Eigen::MatrixXd>& hess_angular() const { return hess_angular_; }

    /// Projection of nodal samples onto the basis.
    SphereFunction analyze(const Eigen::VectorXd& samples) const;
    Eigen::VectorXd synthesize(const SphereFunction& f) const;
    template <class F>
    SphereFunction quadrature(F&& f) const {
        Eigen::VectorXd s(num_nodes());
        for (int j = 0; j < num_nodes(); ++j) s[j] = f(Eigen::VectorXd(nodes_.row(j).transpose()));
        return analyze(s);
    }
    double integrate(const Eigen::VectorXd& samples) const { return weights_.dot(samples); }
    double sup_norm(const SphereFunction& f) const;

private:
    int dim_;
    int max_degree_;
    int num_modes_;
    Eigen::MatrixXd nodes_;
    Eigen::VectorXd weights_;
    std::vector<int> degrees_;
    Eigen::MatrixXd values_;
    Eigen::MatrixXd analysis_;  // num_modes x num_nodes
    std::vector<Eigen::MatrixXd> grad_solid_, hess_solid_, grad_angular_, hess_angular_;
};

inline int packed_index(int dim, int i, int j) {
    if (i > j) std::swap(i, j);
    return i * dim - i * (i - 1) / 2 + (j - i);
}

SphereFunction project_mean(const SphereFunction& f);      // Pi_0
SphereFunction project_linear(const SphereFunction& f);    // Pi_1
SphereFunction project_rest(const SphereFunction& f);      // Pi
SphereFunction dtn(const SphereFunction& v);
SphereFunction L_operator(const SphereFunction& w);
/// (1/N) L o Pi_1^perp + Pi_1
SphereFunction calL_apply(const SphereFunction& w);
SphereFunction calL_solve(const SphereFunction& rhs);
/// sum (1 + k^2)^2 c_{k,m}^2, square-rooted
double sobolev_norm(const SphereFunction& f);
double l2_norm(const SphereFunction& f);

/// |B_1| and |S^{N-1}| = N |B_1|
double unit_ball_volume(int dim);

}  // namespace serrin

#include "serrin/detail/solid_harmonics.ipp"
