#include "lovegeo/ode.hpp"

#include <algorithm>
#include <cmath>

#include "lovegeo/errors.hpp"

namespace lovegeo::ode {
namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// Error coefficients: 5th-order weights minus embedded 4th-order weights.
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695,
                 e4 = b4 - 393.0 / 640, e5 = b5 + 92097.0 / 339200,
                 e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

struct StepOutcome {
  std::vector<double> y_new;
  double error_norm;
};

class Stepper {
 public:
  Stepper(const Rhs& rhs, std::size_t dim) : rhs_(rhs) {
    for (auto* k : {&k1_, &k2_, &k3_, &k4_, &k5_, &k6_, &k7_}) k->resize(dim);
    ytmp_.resize(dim);
  }

  // One trial step from (t, y) with f(t, y) already in k1 (FSAL).
  StepOutcome step(double t, const std::vector<double>& y, double h,
                   const StepControl& ctrl) {
    const std::size_t d = y.size();
    for (std::size_t i = 0; i < d; ++i) ytmp_[i] = y[i] + h * a21 * k1_[i];
    rhs_(t + c2 * h, ytmp_, k2_);
    for (std::size_t i = 0; i < d; ++i)
      ytmp_[i] = y[i] + h * (a31 * k1_[i] + a32 * k2_[i]);
    rhs_(t + c3 * h, ytmp_, k3_);
    for (std::size_t i = 0; i < d; ++i)
      ytmp_[i] = y[i] + h * (a41 * k1_[i] + a42 * k2_[i] + a43 * k3_[i]);
    rhs_(t + c4 * h, ytmp_, k4_);
    for (std::size_t i = 0; i < d; ++i)
      ytmp_[i] = y[i] + h * (a51 * k1_[i] + a52 * k2_[i] + a53 * k3_[i] +
                             a54 * k4_[i]);
    rhs_(t + c5 * h, ytmp_, k5_);
    for (std::size_t i = 0; i < d; ++i)
      ytmp_[i] = y[i] + h * (a61 * k1_[i] + a62 * k2_[i] + a63 * k3_[i] +
                             a64 * k4_[i] + a65 * k5_[i]);
    rhs_(t + h, ytmp_, k6_);
    std::vector<double> y_new(d);
    for (std::size_t i = 0; i < d; ++i)
      y_new[i] = y[i] + h * (b1 * k1_[i] + b3 * k3_[i] + b4 * k4_[i] +
                             b5 * k5_[i] + b6 * k6_[i]);
    rhs_(t + h, y_new, k7_);
    double err2 = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double e = h * (e1 * k1_[i] + e3 * k3_[i] + e4 * k4_[i] +
                            e5 * k5_[i] + e6 * k6_[i] + e7 * k7_[i]);
      const double atol_i = ctrl.atol_per_component.empty()
                                ? ctrl.atol
                                : ctrl.atol_per_component[i];
      const double sc =
          atol_i + ctrl.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      err2 += (e / sc) * (e / sc);
    }
    return {std::move(y_new), std::sqrt(err2 / d)};
  }

  void prime(double t, const std::vector<double>& y) { rhs_(t, y, k1_); }
  void advance_fsal() { k1_.swap(k7_); }
  const std::vector<double>& f0() const { return k1_; }

 private:
  const Rhs& rhs_;
  std::vector<double> k1_, k2_, k3_, k4_, k5_, k6_, k7_, ytmp_;
};

double initial_step_guess(const std::vector<double>& y,
                          const std::vector<double>& f, double span,
                          const StepControl& ctrl) {
  double ynorm = 0.0, fnorm = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    ynorm = std::max(ynorm, std::abs(y[i]));
    fnorm = std::max(fnorm, std::abs(f[i]));
  }
  double h = (fnorm > 0.0) ? 0.01 * (ynorm + ctrl.atol) / fnorm : 1e-6 * span;
  h = std::min(h, 0.1 * span);
  return std::min(h, ctrl.max_step);
}

}  // namespace

IntegrationResult integrate(const Rhs& rhs, std::vector<double> y0, double t0,
                            double t_end, const StepControl& ctrl,
                            const Observer& observer, const Event& stop_event) {
  if (!(t_end > t0))
    throw DomainError("ode::integrate: t_end must exceed t0");
  Stepper st(rhs, y0.size());
  st.prime(t0, y0);
  double t = t0;
  std::vector<double> y = std::move(y0);
  if (observer) observer(t, y);
  double ev_prev = stop_event ? stop_event(t, y) : -1.0;

  double h = ctrl.initial_step > 0.0
                 ? std::min(ctrl.initial_step, ctrl.max_step)
                 : initial_step_guess(y, st.f0(), t_end - t0, ctrl);
  IntegrationResult res;
  while (t < t_end) {
    if (res.accepted_steps + res.rejected_steps >= ctrl.max_steps)
      throw IntegrationError("ode::integrate: step budget exhausted", t);
    h = std::min({h, ctrl.max_step, t_end - t});
    if (!(h > 0.0) || t + h == t)
      throw IntegrationError("ode::integrate: step size underflow", t);
    StepOutcome out = st.step(t, y, h, ctrl);
    if (!std::isfinite(out.error_norm)) {
      ++res.rejected_steps;
      h *= 0.25;
      continue;
    }
    if (out.error_norm > 1.0) {
      ++res.rejected_steps;
      h *= std::max(0.2, 0.9 * std::pow(out.error_norm, -0.2));
      continue;
    }
    // Accepted.  If a stop event fires inside this step, shrink the step by
    // bisection on h until the event point is resolved.
    if (stop_event) {
      const double ev_new = stop_event(t + h, out.y_new);
      if (ev_prev < 0.0 && ev_new >= 0.0) {
        double h_lo = 0.0, h_hi = h;
        StepOutcome hit = out;
        for (int it = 0; it < 80 && (h_hi - h_lo) > 1e-14 * (1.0 + h); ++it) {
          const double hm = 0.5 * (h_lo + h_hi);
          StepOutcome trial = st.step(t, y, hm, ctrl);
          if (stop_event(t + hm, trial.y_new) >= 0.0) {
            h_hi = hm;
            hit = std::move(trial);
          } else {
            h_lo = hm;
          }
        }
        t += h_hi;
        y = std::move(hit.y_new);
        st.prime(t, y);  // k7 belongs to the unshortened step
        ++res.accepted_steps;
        if (observer) observer(t, y);
        res.stopped_by_event = true;
        break;
      }
      ev_prev = ev_new;
    }
    t += h;
    y = std::move(out.y_new);
    st.advance_fsal();
    ++res.accepted_steps;
    if (observer) observer(t, y);
    h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(out.error_norm, 1e-10), -0.2)));
  }
  res.t_final = t;
  res.y_final = std::move(y);
  return res;
}

}  // namespace lovegeo::ode
