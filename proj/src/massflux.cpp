#include "lovegeo/massflux.hpp"

#include <cmath>
#include <numbers>

#include "lovegeo/model.hpp"
#include "lovegeo/numerics.hpp"
#include "lovegeo/parallel.hpp"
#include "lovegeo/symcurv.hpp"

namespace lovegeo::massflux {

double sphere_area(double radius, int dim) {
  if (!(radius > 0.0)) throw DomainError("sphere_area: radius must be positive");
  if (dim < 1) throw DomainError("sphere_area: dimension must be at least 1");
  const double half = 0.5 * (dim + 1);
  const double omega =
      2.0 * pow_real(std::numbers::pi, half) / std::tgamma(half);
  return omega * pow_real(radius, static_cast<double>(dim));
}

double flux_rotational(const DimensionPair& dims, double first_integral_at_R) {
  if (!(first_integral_at_R >= 0.0))
    throw DomainError("flux_rotational: first integral must be non-negative");
  const double omega = sphere_area(1.0, dims.n - 1);
  return omega * binomial(dims.n - 1, 2 * dims.k - 1) *
         pow_real(first_integral_at_R, static_cast<double>(dims.k));
}

double flux_from_profile(const rotational::ProfileCurve& curve, double R) {
  return flux_rotational(curve.dims, rotational::first_integral_at_s(curve, R));
}

namespace {

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
void gauss_legendre(int order, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.resize(order);
  weights.resize(order);
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < order; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = order * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[order - 1 - i] = x;
    weights[i] = weights[order - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
}

struct SphereRule {
  int n = 0;
  int polar_count = 0;   // n - 2 polar angles
  int polar_order = 0;
  int azimuth_order = 0;
  std::vector<double> theta, wtheta;  // polar nodes on [0, pi]
  std::vector<double> phi;            // azimuth nodes on [0, 2 pi)
  double wphi = 0.0;
  std::size_t total = 0;

  SphereRule(int dim, int order) : n(dim) {
    if (n < 2) throw DomainError("flux_graph: base dimension must be >= 2");
    polar_count = n - 2;
    polar_order = order;
    azimuth_order = std::max(4, order);
    std::vector<double> gx, gw;
    gauss_legendre(polar_order, gx, gw);
    theta.resize(polar_order);
    wtheta.resize(polar_order);
    for (int i = 0; i < polar_order; ++i) {
      theta[i] = 0.5 * std::numbers::pi * (gx[i] + 1.0);
      wtheta[i] = 0.5 * std::numbers::pi * gw[i];
    }
    phi.resize(azimuth_order);
    for (int i = 0; i < azimuth_order; ++i)
      phi[i] = 2.0 * std::numbers::pi * i / azimuth_order;
    wphi = 2.0 * std::numbers::pi / azimuth_order;
    total = static_cast<std::size_t>(azimuth_order);
    for (int d = 0; d < polar_count; ++d) total *= polar_order;
  }

  // Decodes the flat node index into a unit direction and quadrature weight
  // (the sin-power measure factors included).
  void node(std::size_t flat, Eigen::VectorXd& omega, double& weight) const {
    omega.resize(n);
    weight = wphi;
    double sin_prod = 1.0;
    const std::size_t az = flat % azimuth_order;
    flat /= azimuth_order;
    for (int d = 0; d < polar_count; ++d) {
      const int i = static_cast<int>(flat % polar_order);
      flat /= polar_order;
      const double th = theta[i];
      omega[d] = sin_prod * std::cos(th);
      weight *= wtheta[i] * pow_real(std::sin(th),
                                     static_cast<double>(n - 2 - d));
      sin_prod *= std::sin(th);
    }
    omega[n - 2] = sin_prod * std::cos(phi[az]);
    omega[n - 1] = sin_prod * std::sin(phi[az]);
  }
};

double flux_integrand(const graphgeom::GraphFunction& u, int k, double R,
                      const Eigen::VectorXd& omega) {
  const Eigen::VectorXd x = R * omega;
  const Eigen::VectorXd v = u.gradient(x);
  const Eigen::MatrixXd h = u.hessian(x);
  const int n = static_cast<int>(x.size());
  const double w2 = 1.0 + v.squaredNorm();
  const double w = std::sqrt(w2);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd g = id + v * v.transpose();
  const Eigen::MatrixXd ginv = id - v * v.transpose() / w2;
  const Eigen::MatrixXd a = ginv * h / w;
  const Eigen::MatrixXd nt = symcurv::newton_tensor(a, 2 * k - 1);
  const Eigen::VectorXd grad_height = ginv * v;
  const Eigen::VectorXd wdir = ginv * omega;
  const double wnorm = std::sqrt(wdir.dot(g * wdir));
  const Eigen::VectorXd nu = wdir / wnorm;
  const double p = (nt * grad_height).dot(g * nu);
  // Induced cycle area element relative to the Euclidean one.
  const Eigen::VectorXd vtan = v - v.dot(omega) * omega;
  return p * std::sqrt(1.0 + vtan.squaredNorm());
}

double flux_graph_impl(const graphgeom::GraphFunction& u, int k, double R,
                       int gauss_order, bool parallel) {
  const int n = u.dimension();
  const SphereRule rule(n, gauss_order);
  const double rpow = pow_real(R, static_cast<double>(n - 1));
  std::vector<double> terms(rule.total);
  const auto eval = [&](std::ptrdiff_t i) {
    Eigen::VectorXd omega;
    double weight = 0.0;
    rule.node(static_cast<std::size_t>(i), omega, weight);
    terms[i] = weight * rpow * flux_integrand(u, k, R, omega);
  };
  if (parallel) {
    parallel_for(static_cast<std::ptrdiff_t>(rule.total), eval);
  } else {
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(rule.total); ++i)
      eval(i);
  }
  double sum = 0.0;
  for (double t : terms) sum += t;
  return sum;
}

}  // namespace

double flux_graph(const graphgeom::GraphFunction& u, int k, double R,
                  int gauss_order) {
  return flux_graph_impl(u, k, R, gauss_order, true);
}

double flux_graph_serial(const graphgeom::GraphFunction& u, int k, double R,
                         int gauss_order) {
  return flux_graph_impl(u, k, R, gauss_order, false);
}

FluxReport flux_report_profile(const rotational::ProfileCurve& curve, double R,
                               double lambda) {
  FluxReport rep;
  rep.cycle_radius = R;
  rep.raw_flux = flux_from_profile(curve, R);
  const double flux2 = flux_from_profile(curve, 2.0 * R);
  rep.homology_drift = std::abs(flux2 - rep.raw_flux) /
                       std::max(std::abs(rep.raw_flux), 1e-300);
  rep.calibrated_mass = lambda * rep.raw_flux;
  return rep;
}

FluxReport flux_report_graph(const graphgeom::GraphFunction& u,
                             const DimensionPair& dims, double R, double lambda,
                             int gauss_order) {
  FluxReport rep;
  rep.cycle_radius = R;
  rep.raw_flux = flux_graph(u, dims.k, R, gauss_order);
  const double flux2 = flux_graph(u, dims.k, 2.0 * R, gauss_order);
  rep.homology_drift = std::abs(flux2 - rep.raw_flux) /
                       std::max(std::abs(rep.raw_flux), 1e-300);
  rep.calibrated_mass = lambda * rep.raw_flux;
  return rep;
}

double calibrate_mass_constant(const DimensionPair& dims) {
  // Fluxes are measured on integrated curves so the certificate reflects the
  // whole numerical pipeline, not the closed-form reduction alone.
  const auto flux_of_mass = [&](double m) {
    const double rh = pow_real(2.0 * m, dims.horizon_exponent());
    const double R = 10.0 * rh;
    ode::StepControl ctrl;
    ctrl.rtol = 1e-12;
    ctrl.atol = 1e-13;
    auto curve =
        rotational::integrate_profile_to_s(dims, m, 2.2 * R, 400.0 * rh, ctrl);
    return flux_from_profile(curve, R);
  };
  const double lambda = 1.0 / flux_of_mass(1.0);
  double lo = lambda, hi = lambda;
  for (double m : {0.5, 2.0}) {
    const double lam_m =
        pow_real(m, static_cast<double>(dims.k)) / flux_of_mass(m);
    lo = std::min(lo, lam_m);
    hi = std::max(hi, lam_m);
  }
  if ((hi - lo) / lambda > 1e-5)
    throw CalibrationError(
        "calibrate_mass_constant: lambda varies with m beyond tolerance");
  return lambda;
}

double penrose_constant(const DimensionPair& dims) {
  const double omega = sphere_area(1.0, dims.n - 1);
  const double expo =
      static_cast<double>(dims.n - 2 * dims.k) / (dims.n - 1);
  return pow_real(2.0, -static_cast<double>(dims.k)) * pow_real(omega, -expo);
}

PenroseReport penrose_check(double mass, double horizon_area,
                            const DimensionPair& dims) {
  if (!(horizon_area > 0.0))
    throw DomainError("penrose_check: horizon area must be positive");
  if (mass < 0.0) throw DomainError("penrose_check: mass must be non-negative");
  PenroseReport rep;
  rep.mass = mass;
  rep.horizon_area = horizon_area;
  const double expo = static_cast<double>(dims.n - 2 * dims.k) / (dims.n - 1);
  rep.bound = penrose_constant(dims) * pow_real(horizon_area, expo);
  rep.gap = mass - rep.bound;
  rep.pass = rep.gap >= -1e-6 * std::max(mass, 1e-12);
  return rep;
}

namespace {

PenroseReport sweep_member(const DimensionPair& dims, const SweepMember& member,
                           const SweepConfig& config, double lambda) {
  const double s_h = rotational::generalized_horizon(dims, member.c);
  const double R = std::max(config.r_eval_factor * s_h, config.r_eval_min);
  auto curve = rotational::integrate_generalized_profile_to_s(
      dims, member.c, 2.2 * R, 40.0 * R, config.step_control);
  if (curve.samples.back().s < 2.0 * R)
    throw IntegrationError("penrose_sweep: member did not reach 2R",
                           curve.samples.back().tau);
  // Energy condition: sigma_2k >= 0 along the curve (up to tolerance).
  const auto diag = rotational::diagnostics_serial(curve);
  for (const auto& d : diag)
    if (d.sigma2k_normalized < -config.sigma_tolerance)
      throw EnergyConditionError(
          "penrose_sweep: sigma_2k < 0 along member " + member.name +
          " (decreasing first integral)");
  PenroseReport rep =
      penrose_check(lambda * flux_from_profile(curve, R),
                    sphere_area(s_h, dims.n - 1), dims);
  rep.name = member.name;
  rep.pass = rep.gap >= -config.gap_tolerance * std::max(rep.mass, 1e-12);
  return rep;
}

std::vector<PenroseReport> sweep_impl(const DimensionPair& dims,
                                      std::span<const SweepMember> members,
                                      const SweepConfig& config, bool parallel) {
  const double lambda = calibrate_mass_constant(dims);
  std::vector<PenroseReport> reports(members.size());
  std::vector<std::exception_ptr> errors(members.size());
  const auto run = [&](std::ptrdiff_t i) {
    try {
      reports[i] = sweep_member(dims, members[i], config, lambda);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (parallel) {
    parallel_for(static_cast<std::ptrdiff_t>(members.size()), run);
  } else {
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(members.size());
         ++i)
      run(i);
  }
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);
  return reports;
}

}  // namespace

std::vector<PenroseReport> penrose_sweep(const DimensionPair& dims,
                                         std::span<const SweepMember> members,
                                         const SweepConfig& config) {
  return sweep_impl(dims, members, config, true);
}

std::vector<PenroseReport> penrose_sweep_serial(
    const DimensionPair& dims, std::span<const SweepMember> members,
    const SweepConfig& config) {
  return sweep_impl(dims, members, config, false);
}

}  // namespace lovegeo::massflux
