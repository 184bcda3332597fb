#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace serrin {

// Small vectors and matrices (dimension 2 or 3) without heap allocation.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 3, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 3, 3>;

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

/// Raised when an operation leaves the regime where its discretization or
/// its small-parameter assumptions are trustworthy.
class EnvelopeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ResolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MalformedChart : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The quasi-Newton iterate left the small-perturbation regime.
class DivergenceError : public EnvelopeError {
public:
    using EnvelopeError::EnvelopeError;
};

class SearchFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A family of leaves failed a foliation precondition (injectivity of the
/// angular map or monotonicity in t).
class FoliationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace serrin
