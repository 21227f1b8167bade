#pragma once

#include "lovegeo/dims.hpp"

namespace lovegeo::model {

// Parameters of the rotationally invariant vacuum family with potential
// V(r) = 1 - 2m r^-(n/k-2) and horizon at r = (2m)^(k/(n-2k)).
struct ModelParams {
  DimensionPair dims;
  double m = 1.0;

  ModelParams(DimensionPair d, double mass) : dims(d), m(mass) {
    if (!(m > 0.0)) throw DomainError("ModelParams: mass must be positive");
  }
};

double potential(const ModelParams& p, double r);
double horizon_radius(const ModelParams& p);

// Conformal representation r(rho) = rho (1 + m/(2 rho^(n/k-2)))^(2k/(n-2k))
// and the associated lapse; the lapse vanishes at rho = (m/2)^(k/(n-2k)).
double conformal_radius_map(const ModelParams& p, double rho);
double lapse(const ModelParams& p, double rho);
double conformal_horizon_rho(const ModelParams& p);

// Height of the upper graph sheet over the base plane:
//   t+(s) = integral from r_h to s of sqrt(2m / (sigma^(n/k-2) - 2m)),
// evaluated with the sqrt-endpoint substitution at the horizon.
double profile_t(const ModelParams& p, double s, double rtol = 1e-13,
                 double atol = 1e-15);
// dt/ds and its s-derivative (closed forms, defined for s > horizon).
double profile_slope(const ModelParams& p, double s);
double profile_slope_deriv(const ModelParams& p, double s);

// Negative-cosmological-constant family: V(r) = 1 + r^2 - 2m r^-(n/k-2),
// strictly increasing on r > 0 with a unique positive root.
struct AdSModelParams {
  DimensionPair dims;
  double m = 1.0;

  AdSModelParams(DimensionPair d, double mass) : dims(d), m(mass) {
    if (!(m > 0.0)) throw DomainError("AdSModelParams: mass must be positive");
  }
};

double ads_potential(const AdSModelParams& p, double r);
double ads_horizon(const AdSModelParams& p);
// sqrt of (dt/dr)^2 = 2m / ((1+r^2)^2 (r^(n/k-2) + r^(n/k) - 2m)); diverges
// at the horizon, so callers integrate with the endpoint substitution.
double ads_profile_slope(const AdSModelParams& p, double r);
// Integrated height t(r) with the endpoint substitution, t(horizon) = 0.
double ads_profile_t(const AdSModelParams& p, double r, double rtol = 1e-12,
                     double atol = 1e-14);

}  // namespace lovegeo::model
