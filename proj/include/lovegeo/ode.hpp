#pragma once

#include <functional>
#include <limits>
#include <vector>

namespace lovegeo::ode {

struct StepControl {
  double rtol = 1e-10;
  double atol = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();
  double initial_step = 0.0;  // 0 selects a scale-based starting step
  long max_steps = 20'000'000;
  // Optional per-state absolute tolerances (overrides atol when non-empty).
  // A zero entry puts that component under pure relative control.
  std::vector<double> atol_per_component;
};

using Rhs =
    std::function<void(double, const std::vector<double>&, std::vector<double>&)>;
// Called once per accepted step (including the initial state).
using Observer = std::function<void(double, const std::vector<double>&)>;
// Optional stop event: integration halts when the event value crosses zero
// from below; the final step is shortened to land on the crossing.
using Event = std::function<double(double, const std::vector<double>&)>;

struct IntegrationResult {
  double t_final = 0.0;
  std::vector<double> y_final;
  long accepted_steps = 0;
  long rejected_steps = 0;
  bool stopped_by_event = false;
};

// Adaptive Dormand-Prince 5(4) with PI-free classical step control.  The
// observer sees every accepted step; step sizes are capped at max_step so
// recorded curves stay densely sampled.
IntegrationResult integrate(const Rhs& rhs, std::vector<double> y0, double t0,
                            double t_end, const StepControl& ctrl = {},
                            const Observer& observer = nullptr,
                            const Event& stop_event = nullptr);

}  // namespace lovegeo::ode
