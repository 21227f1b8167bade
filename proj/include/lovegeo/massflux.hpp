#pragma once

#include <span>
#include <string>
#include <vector>

#include "lovegeo/dims.hpp"
#include "lovegeo/graphgeom.hpp"
#include "lovegeo/rotational.hpp"

namespace lovegeo::massflux {

// Area of the round sphere of dimension dim and the given radius,
// omega_dim r^dim with omega_dim = 2 pi^((dim+1)/2) / Gamma((dim+1)/2).
double sphere_area(double radius, int dim);

struct FluxReport {
  double cycle_radius = 0.0;
  double raw_flux = 0.0;
  double calibrated_mass = 0.0;
  double homology_drift = 0.0;  // |flux(2R) - flux(R)| / |flux(R)|
};

// Flux through the round cycle of a rotational end, reduced to
// sphere_area x the pointwise integrand: omega_{n-1} C(n-1, 2k-1) C_R^k
// where C_R = s^(n/k-2)(1 - sdot^2) at s = R.
double flux_rotational(const DimensionPair& dims, double first_integral_at_R);

// Same quantity read off a profile curve at orbit radius R (first-integral
// column interpolated at R).
double flux_from_profile(const rotational::ProfileCurve& curve, double R);

// Cycle flux of a graph end by product Gauss quadrature over the sphere
// |x| = R: integrand <N_{2k-1}(A) grad_g height, nu> against the induced
// cycle area element.  OpenMP-parallel over quadrature nodes with a serial
// reference; both sum node contributions in index order.
double flux_graph(const graphgeom::GraphFunction& u, int k, double R,
                  int gauss_order = 32);
double flux_graph_serial(const graphgeom::GraphFunction& u, int k, double R,
                         int gauss_order = 32);

FluxReport flux_report_profile(const rotational::ProfileCurve& curve, double R,
                               double lambda);
FluxReport flux_report_graph(const graphgeom::GraphFunction& u,
                             const DimensionPair& dims, double R, double lambda,
                             int gauss_order = 32);

// Calibration constant lambda_{k,n} with lambda * flux(model end, mass m)
// = m^k; computed at m = 1 and certified m-independent at m in {0.5, 2}
// (spread above 1e-5 relative raises CalibrationError).  Quadrature route
// for n <= 5, closed rotational reduction beyond.
double calibrate_mass_constant(const DimensionPair& dims);

// c_{k,n} = 2^-k omega_{n-1}^(-(n-2k)/(n-1)); the mass-area bound is
// c_{k,n} Area^((n-2k)/(n-1)), the exponent that makes the model family an
// equality for every m.
double penrose_constant(const DimensionPair& dims);

struct PenroseReport {
  std::string name;
  double mass = 0.0;
  double horizon_area = 0.0;
  double bound = 0.0;
  double gap = 0.0;
  bool pass = false;
};

PenroseReport penrose_check(double mass, double horizon_area,
                            const DimensionPair& dims);

struct SweepMember {
  std::string name;
  rotational::FirstIntegralFn c;
};

struct SweepConfig {
  double r_eval_factor = 50.0;  // flux cycle at r_eval_factor * horizon
  double r_eval_min = 0.0;      // absolute floor for the flux cycle radius
  double sigma_tolerance = 1e-10;
  double gap_tolerance = 1e-6;  // pass when gap >= -gap_tolerance * mass
  ode::StepControl step_control = tight_control();

  static ode::StepControl tight_control() {
    ode::StepControl c;
    c.rtol = 1e-12;
    c.atol = 1e-13;
    return c;
  }
};

// Builds each generalized profile, verifies the energy condition
// sigma_2k >= -sigma_tolerance at every sample, and evaluates mass by
// calibrated flux against the horizon-area bound.  Members run in parallel;
// the serial variant is the reference.
std::vector<PenroseReport> penrose_sweep(const DimensionPair& dims,
                                         std::span<const SweepMember> members,
                                         const SweepConfig& config = {});
std::vector<PenroseReport> penrose_sweep_serial(
    const DimensionPair& dims, std::span<const SweepMember> members,
    const SweepConfig& config = {});

}  // namespace lovegeo::massflux
