#pragma once

#include <functional>

namespace lovegeo::quadrature {

struct Result {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions = 0;
};

// Globally adaptive Gauss-Kronrod 7-15 on [a, b].  The interval with the
// largest error estimate is bisected until |error| <= atol + rtol*|value|.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double rtol = 1e-12, double atol = 1e-14,
                 int max_subdivisions = 4000);

// Integral of g over [a, b] where g has an inverse-square-root singularity
// at the left endpoint a.  Substitutes x = a + xi^2, which turns the
// integrand into the smooth 2*xi*g(a + xi^2); the caller supplies that
// substituted form directly via f_sub(xi) so it can fill in the finite
// xi -> 0 limit analytically.
Result integrate_sqrt_endpoint(const std::function<double(double)>& f_sub,
                               double a, double b, double rtol = 1e-12,
                               double atol = 1e-14);

}  // namespace lovegeo::quadrature
