#include "lovegeo/model.hpp"

#include <cmath>

#include "lovegeo/numerics.hpp"
#include "lovegeo/quadrature.hpp"

namespace lovegeo::model {

double potential(const ModelParams& p, double r) {
  if (!(r > 0.0)) throw DomainError("potential: r must be positive");
  return 1.0 - 2.0 * p.m * pow_real(r, -p.dims.potential_exponent());
}

double horizon_radius(const ModelParams& p) {
  return pow_real(2.0 * p.m, p.dims.horizon_exponent());
}

double conformal_radius_map(const ModelParams& p, double rho) {
  if (!(rho > 0.0))
    throw DomainError("conformal_radius_map: rho must be positive");
  const double u = 0.5 * p.m * pow_real(rho, -p.dims.potential_exponent());
  return rho * pow_real(1.0 + u, 2.0 * p.dims.horizon_exponent());
}

double lapse(const ModelParams& p, double rho) {
  if (!(rho > 0.0)) throw DomainError("lapse: rho must be positive");
  const double u = 0.5 * p.m * pow_real(rho, -p.dims.potential_exponent());
  const double ratio = (1.0 - u) / (1.0 + u);
  return ratio * ratio;
}

double conformal_horizon_rho(const ModelParams& p) {
  return pow_real(0.5 * p.m, p.dims.horizon_exponent());
}

double profile_slope(const ModelParams& p, double s) {
  const double rh = horizon_radius(p);
  if (!(s > rh)) throw DomainError("profile_slope: s must exceed the horizon");
  const double denom = pow_real(s, p.dims.potential_exponent()) - 2.0 * p.m;
  return std::sqrt(2.0 * p.m / denom);
}

double profile_slope_deriv(const ModelParams& p, double s) {
  const double rh = horizon_radius(p);
  if (!(s > rh))
    throw DomainError("profile_slope_deriv: s must exceed the horizon");
  const double two_q = p.dims.potential_exponent();
  const double denom = pow_real(s, two_q) - 2.0 * p.m;
  // d/ds sqrt(2m) (s^2q - 2m)^(-1/2) = -q sqrt(2m) s^(2q-1) (s^2q-2m)^(-3/2)
  return -0.5 * two_q * std::sqrt(2.0 * p.m) * pow_real(s, two_q - 1.0) /
         (denom * std::sqrt(denom));
}

double profile_t(const ModelParams& p, double s, double rtol, double atol) {
  const double rh = horizon_radius(p);
  if (s < rh * (1.0 - 1e-12))
    throw DomainError("profile_t: s below the horizon radius");
  if (s <= rh) return 0.0;
  const double two_q = p.dims.potential_exponent();
  const double sqrt_2m = std::sqrt(2.0 * p.m);
  // Near the horizon, sigma^2q - 2m is evaluated through expm1 against
  // r_h^2q (== 2m) so the integrand stays accurate where the raw difference
  // would cancel.
  const auto substituted = [&](double xi) {
    const double xi2 = xi * xi;
    if (xi2 < 1e-300) return 2.0 * std::sqrt(rh / two_q);
    const double denom = pow_diff_delta(rh, xi2, two_q);
    if (!(denom > 0.0)) return 2.0 * std::sqrt(rh / two_q);
    return 2.0 * xi * sqrt_2m / std::sqrt(denom);
  };
  const double split = std::min(s, 2.0 * rh);
  double t = quadrature::integrate_sqrt_endpoint(substituted, rh, split, rtol,
                                                 atol).value;
  if (s > split) {
    const auto direct = [&](double sigma) {
      return sqrt_2m / std::sqrt(pow_real(sigma, two_q) - 2.0 * p.m);
    };
    t += quadrature::integrate(direct, split, s, rtol, atol).value;
  }
  return t;
}

double ads_potential(const AdSModelParams& p, double r) {
  if (!(r > 0.0)) throw DomainError("ads_potential: r must be positive");
  return 1.0 + r * r - 2.0 * p.m * pow_real(r, -p.dims.potential_exponent());
}

double ads_horizon(const AdSModelParams& p) {
  const double two_q = p.dims.potential_exponent();
  // V is strictly increasing on r > 0, so any sign-changing bracket works.
  // V(2m + 2) > 0 always; shrink the lower end until V < 0 there.
  double lo = 1e-3 * pow_real(2.0 * p.m, p.dims.horizon_exponent());
  const auto f = [&](double r) { return ads_potential(p, r); };
  const auto df = [&](double r) {
    return 2.0 * r +
           2.0 * p.m * two_q * pow_real(r, -two_q - 1.0);
  };
  while (f(lo) >= 0.0) lo *= 0.1;
  double hi = 2.0 * p.m + 2.0;
  return find_root_bracketed(f, df, lo, hi, 1e-13);
}

double ads_profile_slope(const AdSModelParams& p, double r) {
  const double rh = ads_horizon(p);
  if (!(r > rh))
    throw DomainError("ads_profile_slope: r must exceed the horizon");
  const double two_q = p.dims.potential_exponent();
  const double nk = two_q + 2.0;  // n/k
  const double one_r2 = 1.0 + r * r;
  const double denom =
      pow_real(r, two_q) + pow_real(r, nk) - 2.0 * p.m;
  return std::sqrt(2.0 * p.m / (one_r2 * one_r2 * denom));
}

double ads_profile_t(const AdSModelParams& p, double r, double rtol,
                     double atol) {
  const double rh = ads_horizon(p);
  if (r < rh * (1.0 - 1e-12))
    throw DomainError("ads_profile_t: r below the horizon radius");
  if (r <= rh) return 0.0;
  const double two_q = p.dims.potential_exponent();
  const double nk = two_q + 2.0;
  const double sqrt_2m = std::sqrt(2.0 * p.m);
  // D(sigma) = sigma^2q + sigma^(n/k) - 2m vanishes at the horizon; evaluate
  // it as a sum of cancellation-free differences plus the (tiny) residual of
  // the root finder.
  const double resid = pow_real(rh, two_q) + pow_real(rh, nk) - 2.0 * p.m;
  const auto substituted = [&](double xi) {
    const double sigma = rh + xi * xi;
    const double d = pow_diff_delta(rh, xi * xi, two_q) + pow_diff_delta(rh, xi * xi, nk) +
                     resid;
    const double one_r2 = 1.0 + sigma * sigma;
    if (!(d > 0.0)) {
      const double dprime =
          two_q * pow_real(rh, two_q - 1.0) + nk * pow_real(rh, nk - 1.0);
      return 2.0 * sqrt_2m / ((1.0 + rh * rh) * std::sqrt(dprime));
    }
    return 2.0 * xi * sqrt_2m / (one_r2 * std::sqrt(d));
  };
  const double split = std::min(r, rh + std::max(1.0, rh));
  double t = quadrature::integrate_sqrt_endpoint(substituted, rh, split, rtol,
                                                 atol).value;
  if (r > split) {
    const auto direct = [&](double sigma) {
      const double one_r2 = 1.0 + sigma * sigma;
      const double d =
          pow_real(sigma, two_q) + pow_real(sigma, nk) - 2.0 * p.m;
      return sqrt_2m / (one_r2 * std::sqrt(d));
    };
    t += quadrature::integrate(direct, split, r, rtol, atol).value;
  }
  return t;
}

}  // namespace lovegeo::model
