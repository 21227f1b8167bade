#include "lovegeo/rotational.hpp"

#include <algorithm>
#include <cmath>

#include "lovegeo/numerics.hpp"
#include "lovegeo/parallel.hpp"
#include "lovegeo/symcurv.hpp"

namespace lovegeo::rotational {

std::vector<double> principal_curvatures_p(double s, double one_minus_sdot2,
                                           double sddot, int n) {
  if (!(s > 0.0)) throw DomainError("principal_curvatures: s must be positive");
  if (!(one_minus_sdot2 > 0.0))
    throw DegenerateTangentError(
        "principal_curvatures: tangent parallel to the axis (1 - sdot^2 <= 0)");
  const double root = std::sqrt(one_minus_sdot2);
  std::vector<double> kappa(n, root / s);
  kappa[n - 1] = -sddot / root;
  return kappa;
}

std::vector<double> principal_curvatures(double s, double sdot, double sddot,
                                         int n) {
  if (std::abs(sdot) > 1.0)
    throw DomainError("principal_curvatures: |sdot| must not exceed 1");
  const double p = 1.0 - sdot * sdot;
  if (p < 1e-14)
    throw DegenerateTangentError(
        "principal_curvatures: 1 - sdot^2 below representable floor");
  return principal_curvatures_p(s, p, sddot, n);
}

double sigma_p_from_p(double s, double one_minus_sdot2, double sddot, int n,
                      int p) {
  if (!(s > 0.0)) throw DomainError("sigma_p: s must be positive");
  if (!(one_minus_sdot2 > 0.0))
    throw DegenerateTangentError("sigma_p: degenerate tangent");
  if (p < 0 || p > n) throw DomainError("sigma_p: degree out of range");
  if (p == 0) return 1.0;
  const double root = std::sqrt(one_minus_sdot2);
  const double kappa = root / s;
  return binomial(n - 1, p) * pow_real(kappa, static_cast<double>(p)) -
         binomial(n - 1, p - 1) * (sddot / root) *
             pow_real(kappa, static_cast<double>(p - 1));
}

double sigma_p(double s, double sdot, double sddot, int n, int p) {
  if (std::abs(sdot) > 1.0)
    throw DomainError("sigma_p: |sdot| must not exceed 1");
  const double om = 1.0 - sdot * sdot;
  if (om < 1e-14) throw DegenerateTangentError("sigma_p: degenerate tangent");
  return sigma_p_from_p(s, om, sddot, n, p);
}

double first_integral(double s, double sdot, const DimensionPair& dims) {
  if (!(s > 0.0)) throw DomainError("first_integral: s must be positive");
  return pow_real(s, dims.potential_exponent()) * (1.0 - sdot * sdot);
}

double ode_sddot(double s, double one_minus_sdot2, const DimensionPair& dims) {
  return dims.q() * one_minus_sdot2 / s;
}

namespace {

// Two-phase integration.  Near the horizon the state is (s, sdot, t): the
// initial point (r_h, 0) is regular there, while the reduced variable
// p = 1 - sdot^2 would make it a degenerate equilibrium.  Once sdot reaches
// 1/2 the state switches to (s, p, t), which keeps p representable far out
// on the end where 1 - sdot^2 underflows the resolution of sdot itself.
constexpr double kSdotSwitch = 0.5;

ProfileCurve run_integration(const DimensionPair& dims, double r_h,
                             const std::function<double(double, double)>& sddot_of,
                             const std::function<double(double)>& two_c_of,
                             double c_at_horizon, bool generalized,
                             double s_target, double tau_max,
                             ode::StepControl ctrl) {
  if (!(tau_max > 0.0))
    throw DomainError("integrate_profile: tau_max must be positive");
  ctrl.max_step = std::min(ctrl.max_step, tau_max / 512.0);

  ProfileCurve curve{dims, c_at_horizon, generalized, {}};
  const auto record = [&](double tau, double s, double p, double t) {
    ProfileSample sample;
    sample.tau = tau;
    sample.s = s;
    sample.one_minus_sdot2 = std::max(p, 0.0);
    sample.sdot = std::sqrt(std::max(1.0 - sample.one_minus_sdot2, 0.0));
    sample.sddot = sddot_of(s, sample.one_minus_sdot2);
    sample.t = t;
    sample.two_c_target = two_c_of(s);
    curve.samples.push_back(sample);
  };

  // Phase 1: (s, sdot, t) from the horizon state until sdot crosses the
  // switch threshold, s reaches s_target, or tau_max runs out.
  const ode::Rhs rhs1 = [&](double, const std::vector<double>& y,
                            std::vector<double>& dy) {
    const double s = y[0];
    const double sdot = y[1];
    const double p = std::max(1.0 - sdot * sdot, 0.0);
    dy[0] = sdot;
    dy[1] = sddot_of(s, p);
    dy[2] = std::sqrt(p);
  };
  const ode::Observer obs1 = [&](double tau, const std::vector<double>& y) {
    record(tau, y[0], 1.0 - y[1] * y[1], y[2]);
  };
  const ode::Event ev1 = [&](double, const std::vector<double>& y) {
    double v = y[1] - kSdotSwitch;
    if (s_target > 0.0) v = std::max(v, y[0] - s_target);
    return v;
  };
  auto res1 =
      ode::integrate(rhs1, {r_h, 0.0, 0.0}, 0.0, tau_max, ctrl, obs1, ev1);
  const bool hit_target =
      s_target > 0.0 && res1.y_final[0] >= s_target * (1.0 - 1e-12);
  if (!res1.stopped_by_event || hit_target || res1.t_final >= tau_max)
    return curve;

  // Phase 2: (s, p, t) out to tau_max.
  const ode::Rhs rhs2 = [&](double, const std::vector<double>& y,
                            std::vector<double>& dy) {
    const double s = y[0];
    const double p = std::max(y[1], 0.0);
    const double sdot = std::sqrt(std::max(1.0 - p, 0.0));
    dy[0] = sdot;
    dy[1] = -2.0 * sdot * sddot_of(s, p);
    dy[2] = std::sqrt(p);
  };
  bool first = true;
  const ode::Observer obs2 = [&](double tau, const std::vector<double>& y) {
    if (first) {  // same state the phase-1 observer already recorded
      first = false;
      return;
    }
    record(tau, y[0], y[1], y[2]);
  };
  ode::Event ev2 = nullptr;
  if (s_target > 0.0)
    ev2 = [s_target](double, const std::vector<double>& y) {
      return y[0] - s_target;
    };
  const double p_switch = 1.0 - res1.y_final[1] * res1.y_final[1];
  // p decays by many orders of magnitude along the end; a zero absolute
  // tolerance keeps it under pure relative control so the first integral
  // does not drift once p falls below atol.
  ode::StepControl ctrl2 = ctrl;
  ctrl2.atol_per_component = {ctrl.atol, 0.0, ctrl.atol};
  ode::integrate(rhs2, {res1.y_final[0], p_switch, res1.y_final[2]},
                 res1.t_final, tau_max, ctrl2, obs2, ev2);
  return curve;
}

}  // namespace

ProfileCurve integrate_profile(const DimensionPair& dims, double m,
                               double tau_max, ode::StepControl ctrl) {
  return integrate_profile_to_s(dims, m, 0.0, tau_max, ctrl);
}

ProfileCurve integrate_profile_to_s(const DimensionPair& dims, double m,
                                    double s_target, double tau_max,
                                    ode::StepControl ctrl) {
  if (!(m > 0.0))
    throw DomainError("integrate_profile: first-integral constant must be positive");
  const double r_h = pow_real(2.0 * m, dims.horizon_exponent());
  const double q = dims.q();
  const auto sddot_of = [q](double s, double p) { return q * p / s; };
  const auto two_c = [m](double) { return 2.0 * m; };
  return run_integration(dims, r_h, sddot_of, two_c, m, false, s_target,
                         tau_max, ctrl);
}

double generalized_horizon(const DimensionPair& dims, const FirstIntegralFn& c) {
  if (!c.value) throw DomainError("generalized_horizon: missing c(s)");
  const double two_q = dims.potential_exponent();
  const auto g = [&](double s) {
    return pow_real(s, two_q) - 2.0 * c.value(s);
  };
  double lo = pow_real(std::max(2.0 * c.value(1.0), 1e-8),
                       dims.horizon_exponent());
  int guard = 0;
  while (g(lo) >= 0.0) {
    lo *= 0.5;
    if (++guard > 2000 || !(lo > 0.0))
      throw DomainError("generalized_horizon: no horizon bracket below guess");
  }
  double hi = std::max(2.0 * lo, 1.0);
  guard = 0;
  while (g(hi) <= 0.0) {
    hi *= 2.0;
    if (++guard > 2000)
      throw DomainError("generalized_horizon: no horizon bracket above guess");
  }
  const double root = find_root_bracketed(g, nullptr, lo, hi,
                                          1e-14 * std::max(1.0, hi));
  if (!(c.value(root) > 0.0))
    throw DomainError("generalized_horizon: c must be positive at the horizon");
  return root;
}

ProfileCurve integrate_generalized_profile(const DimensionPair& dims,
                                           const FirstIntegralFn& c,
                                           double tau_max,
                                           ode::StepControl ctrl) {
  return integrate_generalized_profile_to_s(dims, c, 0.0, tau_max, ctrl);
}

ProfileCurve integrate_generalized_profile_to_s(const DimensionPair& dims,
                                                const FirstIntegralFn& c,
                                                double s_target, double tau_max,
                                                ode::StepControl ctrl) {
  const double s_h = generalized_horizon(dims, c);
  const double q = dims.q();
  const double two_q = dims.potential_exponent();
  const std::function<double(double)> deriv =
      c.deriv ? c.deriv : [value = c.value](double s) {
        const double h = 1e-6 * (1.0 + std::abs(s));
        return (value(s + h) - value(s - h)) / (2.0 * h);
      };
  const auto sddot_of = [q, two_q, deriv](double s, double p) {
    return q * p / s - deriv(s) * pow_real(s, -two_q);
  };
  const auto two_c = [value = c.value](double s) { return 2.0 * value(s); };
  return run_integration(dims, s_h, sddot_of, two_c, c.value(s_h), true,
                         s_target, tau_max, ctrl);
}

namespace {

SampleDiagnostics sample_diagnostics(const ProfileSample& sm,
                                     const DimensionPair& dims, double r_h) {
  SampleDiagnostics d;
  const std::vector<double> kappa =
      principal_curvatures_p(sm.s, sm.one_minus_sdot2, sm.sddot, dims.n);
  const double sigma = symcurv::sigma_p_eigen(kappa, 2 * dims.k);
  d.sigma2k_normalized = sigma * pow_real(r_h, 2.0 * dims.k);
  d.first_integral =
      pow_real(sm.s, dims.potential_exponent()) * sm.one_minus_sdot2;
  const double tdot2 = sm.one_minus_sdot2;
  d.unit_speed_defect = std::abs(sm.sdot * sm.sdot + tdot2 - 1.0);
  return d;
}

}  // namespace

std::vector<SampleDiagnostics> diagnostics_serial(const ProfileCurve& curve) {
  const double r_h = curve.horizon_radius();
  std::vector<SampleDiagnostics> out(curve.samples.size());
  for (std::size_t i = 0; i < curve.samples.size(); ++i)
    out[i] = sample_diagnostics(curve.samples[i], curve.dims, r_h);
  return out;
}

std::vector<SampleDiagnostics> diagnostics(const ProfileCurve& curve) {
  const double r_h = curve.horizon_radius();
  std::vector<SampleDiagnostics> out(curve.samples.size());
  parallel_for(static_cast<std::ptrdiff_t>(curve.samples.size()),
               [&](std::ptrdiff_t i) {
                 out[i] = sample_diagnostics(curve.samples[i], curve.dims, r_h);
               });
  return out;
}

double first_integral_drift(const ProfileCurve& curve) {
  double drift = 0.0;
  for (const auto& sm : curve.samples) {
    const double ci =
        pow_real(sm.s, curve.dims.potential_exponent()) * sm.one_minus_sdot2;
    const double target = sm.two_c_target;
    if (target > 0.0)
      drift = std::max(drift, std::abs(ci - target) / target);
  }
  return drift;
}

double first_integral_at_s(const ProfileCurve& curve, double s) {
  const auto& v = curve.samples;
  if (v.empty()) throw DomainError("first_integral_at_s: empty curve");
  if (s < v.front().s || s > v.back().s)
    throw DomainError("first_integral_at_s: s outside the sampled range");
  const auto it = std::lower_bound(
      v.begin(), v.end(), s,
      [](const ProfileSample& a, double val) { return a.s < val; });
  const auto ci = [&](const ProfileSample& sm) {
    return pow_real(sm.s, curve.dims.potential_exponent()) *
           sm.one_minus_sdot2;
  };
  if (it == v.begin()) return ci(*it);
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  if (hi.s == lo.s) return ci(hi);
  const double w = (s - lo.s) / (hi.s - lo.s);
  return (1.0 - w) * ci(lo) + w * ci(hi);
}

}  // namespace lovegeo::rotational
