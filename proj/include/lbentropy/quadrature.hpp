#pragma once

#include <functional>

namespace lbentropy::quad {

struct Result {
  double value;
  double error_estimate;
};

/// Tanh-sinh quadrature on [a, b]; tolerates integrable endpoint
/// singularities. Throws numerical_error if the error estimate exceeds
/// `rel_tol * max(1, |value|)` or the result is not finite.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10);

/// Fixed 10-point Gauss-Legendre rule on [a, b]. Nodes are interior, so f is
/// never evaluated at the endpoints.
double gauss_legendre10(const std::function<double(double)>& f, double a,
                        double b);

}  // namespace lbentropy::quad
