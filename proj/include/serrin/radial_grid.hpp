#pragma once

#include <Eigen/Dense>

namespace serrin {

/// Chebyshev-Lobatto collocation on r in (0, 1] obtained by folding the
/// 2M-point grid on [-1, 1] with a prescribed parity.  Node 0 is r = 1;
/// r = 0 is never a node.  A mode of degree k is represented by a
/// polynomial of parity (-1)^k, which is what regularity at the origin
/// requires of r^k times a smooth even function.
class RadialGrid {
public:
    explicit RadialGrid(int M);

    int size() const { return M_; }
    const Eigen::VectorXd& nodes() const { return r_; }
    double node(int i) const { return r_[i]; }

    /// First and second derivative matrices for functions of parity
    /// (+1 even, -1 odd).
    const Eigen::MatrixXd& D1(int parity) const { return parity > 0 ? d1_even_ : d1_odd_; }
    const Eigen::MatrixXd& D2(int parity) const { return parity > 0 ? d2_even_ : d2_odd_; }

    /// Row vector mapping nodal values to the interpolant at r in [0, 1].
    Eigen::RowVectorXd interpolation_row(double r, int parity) const;

    /// Weights w_i with sum w_i F(r_i) = int_0^1 F(r) r^{dim-1} dr for even
    /// polynomial F of degree < 2M - 1.
    Eigen::VectorXd radial_weights(int dim) const;

private:
    int M_;
    Eigen::VectorXd r_;
    Eigen::VectorXd full_;  // all 2M Chebyshev points, descending
    Eigen::MatrixXd d1_even_, d1_odd_, d2_even_, d2_odd_;
};

}  // namespace serrin
