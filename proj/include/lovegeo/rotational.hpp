#pragma once

#include <functional>
#include <vector>

#include "lovegeo/dims.hpp"
#include "lovegeo/ode.hpp"

namespace lovegeo::rotational {

// One arc-length sample of a rotational profile curve.  one_minus_sdot2
// carries 1 - sdot^2 in full precision; far out on the end it underflows the
// resolution of sdot itself, so curvature formulas always work from it.
struct ProfileSample {
  double tau = 0.0;
  double s = 0.0;
  double sdot = 0.0;
  double sddot = 0.0;
  double t = 0.0;
  double one_minus_sdot2 = 1.0;
  double two_c_target = 0.0;  // 2m for the model, 2c(s) for generalized curves
};

struct ProfileCurve {
  DimensionPair dims;
  double c = 0.0;  // first-integral constant at the horizon (c = m for the model)
  bool generalized = false;
  std::vector<ProfileSample> samples;

  double horizon_radius() const {
    return samples.empty() ? 0.0 : samples.front().s;
  }
};

// Principal curvatures of the rotational hypersurface at a profile state:
// n-1 copies of sqrt(1-sdot^2)/s followed by -sddot/sqrt(1-sdot^2).
std::vector<double> principal_curvatures(double s, double sdot, double sddot,
                                         int n);
// Same, fed with 1-sdot^2 directly (preferred along integrated curves).
std::vector<double> principal_curvatures_p(double s, double one_minus_sdot2,
                                           double sddot, int n);

// sigma_p by the closed binomial formula for surfaces of revolution.
double sigma_p(double s, double sdot, double sddot, int n, int p);
double sigma_p_from_p(double s, double one_minus_sdot2, double sddot, int n,
                      int p);

// First integral C(s, sdot) = s^(n/k-2) (1 - sdot^2).
double first_integral(double s, double sdot, const DimensionPair& dims);

// Acceleration prescribed by the null 2k-mean-curvature equation
// (n-2k)(1-sdot^2) - 2k s sddot = 0.
double ode_sddot(double s, double one_minus_sdot2, const DimensionPair& dims);

// Integrates the profile ODE from the horizon state (s, sdot, t) =
// (r_h, 0, 0) with tdot = +sqrt(1-sdot^2); the lower sheet is the t -> -t
// reflection.  Every accepted step is recorded; max_step defaults to
// tau_max/512 so curves stay densely sampled.
ProfileCurve integrate_profile(const DimensionPair& dims, double m,
                               double tau_max, ode::StepControl ctrl = {});

// Same, but stops once s reaches s_target (before tau_max if reached).
ProfileCurve integrate_profile_to_s(const DimensionPair& dims, double m,
                                    double s_target, double tau_max,
                                    ode::StepControl ctrl = {});

// Generalized family with a prescribed first integral
// s^(n/k-2)(1 - sdot^2) = 2 c(s); non-decreasing c gives sigma_2k >= 0.
struct FirstIntegralFn {
  std::function<double(double)> value;
  std::function<double(double)> deriv;
};

// Radius where s^(n/k-2) = 2 c(s) (the generalized horizon).
double generalized_horizon(const DimensionPair& dims, const FirstIntegralFn& c);

ProfileCurve integrate_generalized_profile(const DimensionPair& dims,
                                           const FirstIntegralFn& c,
                                           double tau_max,
                                           ode::StepControl ctrl = {});
ProfileCurve integrate_generalized_profile_to_s(const DimensionPair& dims,
                                                const FirstIntegralFn& c,
                                                double s_target, double tau_max,
                                                ode::StepControl ctrl = {});

// Per-sample constraint diagnostics.  sigma2k_normalized is sigma_2k(A)
// scaled by r_h^2k (dimensionless curvature units); first_integral is the
// conserved quantity; unit_speed_defect is |sdot^2 + tdot^2 - 1|.
struct SampleDiagnostics {
  double sigma2k_normalized = 0.0;
  double first_integral = 0.0;
  double unit_speed_defect = 0.0;
};

// OpenMP batch kernel and its serial reference (bit-identical results).
std::vector<SampleDiagnostics> diagnostics(const ProfileCurve& curve);
std::vector<SampleDiagnostics> diagnostics_serial(const ProfileCurve& curve);

// Max |C - 2c| / 2c over the curve (model) or |C - 2c(s)| / 2c(s)
// (generalized).
double first_integral_drift(const ProfileCurve& curve);

// Linear interpolation of the first-integral value at orbit radius s.
double first_integral_at_s(const ProfileCurve& curve, double s);

}  // namespace lovegeo::rotational
