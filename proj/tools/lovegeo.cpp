// lovegeo: command-line driver for the null 2k-mean-curvature hypersurface
// toolkit.  Subcommands: profile, verify, mass, penrose, sweep, ads, fit.
//
// Exit codes: 0 = all verdicts pass, 1 = computation ran but a verdict
// failed (or a numerical stage gave up), 2 = invalid input or configuration.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lovegeo/asymptotics.hpp"
#include "lovegeo/graphgeom.hpp"
#include "lovegeo/io.hpp"
#include "lovegeo/massflux.hpp"
#include "lovegeo/numerics.hpp"
#include "lovegeo/model.hpp"
#include "lovegeo/rotational.hpp"
#include "lovegeo/symcurv.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lovegeo;

namespace {

struct Verdict {
  std::string name;
  bool pass = false;
  double value = 0.0;
};

struct RunReport {
  std::string subcommand;
  double wall_time_s = 0.0;
  std::vector<Verdict> verdicts;
  std::vector<std::string> outputs;

  bool all_pass() const {
    for (const auto& v : verdicts)
      if (!v.pass) return false;
    return true;
  }
};

// Timing goes to stdout only; the emitted report file holds just the
// reproducible fields so identical runs stay byte-identical.
void finish(RunReport& report, const fs::path& out_dir,
            std::chrono::steady_clock::time_point start) {
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  json verdicts = json::array();
  for (const auto& v : report.verdicts)
    verdicts.push_back({{"name", v.name},
                        {"pass", v.pass},
                        {"value", io::sig15_round(v.value)}});
  json outputs = json::array();
  for (const auto& o : report.outputs) outputs.push_back(o);
  const json j{{"subcommand", report.subcommand},
               {"verdicts", verdicts},
               {"outputs", outputs}};
  const fs::path path = out_dir / (report.subcommand + "_report.json");
  io::write_text(path, j.dump(2) + "\n");
  std::printf("%s: %s (%zu verdicts, %.2f s)\n", report.subcommand.c_str(),
              report.all_pass() ? "PASS" : "FAIL", report.verdicts.size(),
              report.wall_time_s);
  for (const auto& v : report.verdicts)
    std::printf("  [%s] %-34s %s\n", v.pass ? "ok" : "FAIL", v.name.c_str(),
                io::format_sig15(v.value).c_str());
}

struct CommonOpts {
  int n = 3;
  int k = 1;
  double m = 1.0;
  double tol_rel = 1e-12;
  double tol_abs = 1e-13;
  double fit_radius = 0.0;  // 0 = auto (50 r_h)
  std::string out_dir = ".";
  std::string format = "csv";
};

void add_dims_opts(CLI::App* cmd, CommonOpts& opt, bool with_mass = true) {
  cmd->add_option("--n", opt.n, "hypersurface dimension n");
  cmd->add_option("--k", opt.k, "curvature degree k (2 <= 2k <= n-1)");
  if (with_mass) cmd->add_option("--m", opt.m, "mass parameter m > 0");
}

void add_io_opts(CLI::App* cmd, CommonOpts& opt) {
  cmd->add_option("--out-dir", opt.out_dir, "output directory")
      ->envname("LOVEGEO_OUT");
  cmd->add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--tol-rel", opt.tol_rel, "integrator relative tolerance");
  cmd->add_option("--tol-abs", opt.tol_abs, "integrator absolute tolerance");
  cmd->add_option("--fit-radius", opt.fit_radius, "inner radius of fit samples");
  cmd->set_config("--config", "", "flat key=value config file (flags win)");
}

DimensionPair checked_dims(const CommonOpts& opt) {
  return DimensionPair(opt.n, opt.k);  // throws DomainError when inadmissible
}

void check_mass(double m) {
  if (!(m > 0.0)) throw DomainError("mass parameter must be positive");
}

void ensure_out_dir(const CommonOpts& opt) {
  if (!opt.out_dir.empty()) fs::create_directories(opt.out_dir);
}

ode::StepControl step_control(const CommonOpts& opt) {
  ode::StepControl ctrl;
  ctrl.rtol = opt.tol_rel;
  ctrl.atol = opt.tol_abs;
  return ctrl;
}

// Deterministic direction set for sampling a model end: coordinate axes plus
// seeded Gaussian directions.
std::vector<Eigen::VectorXd> sample_directions(int n, int count) {
  std::vector<Eigen::VectorXd> dirs;
  for (int d = 0; d < n; ++d) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e[d] = 1.0;
    dirs.push_back(e);
    dirs.push_back(-e);
  }
  std::mt19937 rng(424243u);
  std::normal_distribution<double> gauss(0.0, 1.0);
  while (static_cast<int>(dirs.size()) < count) {
    Eigen::VectorXd v(n);
    for (int d = 0; d < n; ++d) v[d] = gauss(rng);
    if (v.norm() < 1e-8) continue;
    dirs.push_back(v / v.norm());
  }
  return dirs;
}

std::vector<asymptotics::FitSample> model_fit_samples(const DimensionPair& dims,
                                                      double m,
                                                      double fit_radius) {
  const model::ModelParams params(dims, m);
  std::vector<asymptotics::FitSample> samples;
  const auto dirs = sample_directions(dims.n, 4 * dims.n + 8);
  for (double r = fit_radius; r <= 16.0 * fit_radius; r *= 1.35) {
    const double u = model::profile_t(params, r);
    for (const auto& dir : dirs) samples.push_back({r * dir, u});
  }
  return samples;
}

// ---------------------------------------------------------------------------
// profile

int cmd_profile(const CommonOpts& opt, double tau_factor) {
  const auto start = std::chrono::steady_clock::now();
  check_mass(opt.m);
  const DimensionPair dims = checked_dims(opt);
  ensure_out_dir(opt);
  const model::ModelParams params(dims, opt.m);
  const double rh = model::horizon_radius(params);
  const auto curve = rotational::integrate_profile(dims, opt.m, tau_factor * rh,
                                                   step_control(opt));
  const auto diag = rotational::diagnostics(curve);
  double max_sigma = 0.0, max_unit = 0.0;
  for (const auto& d : diag) {
    max_sigma = std::max(max_sigma, std::abs(d.sigma2k_normalized));
    max_unit = std::max(max_unit, d.unit_speed_defect);
  }
  const double drift = rotational::first_integral_drift(curve);

  RunReport report;
  report.subcommand = "profile";
  report.verdicts.push_back({"max_sigma2k_residual", max_sigma < 1e-8, max_sigma});
  report.verdicts.push_back({"first_integral_drift", drift < 1e-8, drift});
  report.verdicts.push_back({"unit_speed_defect", max_unit < 1e-9, max_unit});
  const fs::path out = fs::path(opt.out_dir) / ("profile." + opt.format);
  io::write_text(out, opt.format == "csv" ? io::profile_to_csv(curve)
                                          : io::profile_to_json(curve));
  report.outputs.push_back(out.string());
  finish(report, opt.out_dir, start);
  return report.all_pass() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// verify

void verify_curve(const rotational::ProfileCurve& curve, RunReport& report,
                  const std::string& prefix) {
  const auto cond = graphgeom::check_conditions(curve);
  const double drift = rotational::first_integral_drift(curve);
  report.verdicts.push_back(
      {prefix + "exterior_graph", cond.exterior_graph, 0.0});
  report.verdicts.push_back(
      {prefix + "horizon_orthogonal", cond.horizon_orthogonal, 0.0});
  report.verdicts.push_back({prefix + "sigma2k_constraint",
                             cond.max_sigma2k < 1e-8 && drift < 1e-8,
                             std::max(cond.max_sigma2k, drift)});
  report.verdicts.push_back({prefix + "sigma2k1_nonzero",
                             cond.min_abs_sigma2k1 > 1e-10,
                             cond.min_abs_sigma2k1});
  report.verdicts.push_back({prefix + "elliptic_and_constraint",
                             cond.constraint_and_elliptic, cond.max_sigma2k});
  report.verdicts.push_back({prefix + "regular_end", cond.regular_end, 0.0});
}

int cmd_verify(const CommonOpts& opt, const std::string& input) {
  const auto start = std::chrono::steady_clock::now();
  ensure_out_dir(opt);
  const std::string text = io::read_text(input);
  const std::string kind = io::sniff_format(text);
  RunReport report;
  report.subcommand = "verify";

  if (kind == "profile") {
    const auto curve = (text.rfind("#", 0) == 0) ? io::profile_from_csv(text)
                                                 : io::profile_from_json(text);
    verify_curve(curve, report, "");
    const auto seams = graphgeom::seam_samples_rotational(curve, curve, 8);
    const auto cert = graphgeom::regularity_certificate(seams, curve.dims.k);
    report.verdicts.push_back(
        {"regularity_gap", cert.max_gap < 1e-6, cert.max_gap});
  } else if (kind == "doubled") {
    const auto [upper, lower] = io::doubled_from_json(text);
    verify_curve(upper, report, "upper.");
    verify_curve(lower, report, "lower.");
    const auto seams = graphgeom::seam_samples_rotational(upper, lower, 8);
    const auto cert =
        graphgeom::regularity_certificate(seams, upper.dims.k);
    report.verdicts.push_back(
        {"regularity_gap", cert.max_gap < 1e-6, cert.max_gap});
  } else if (kind == "grid") {
    const auto grid = text.rfind("#", 0) == 0 ? io::grid_from_csv(text)
                                              : io::grid_from_json(text);
    const auto u = graphgeom::GraphFunction::from_grid(grid);
    const int k = opt.k;
    if (2 * k > u.dimension() - 0)
      throw DomainError("verify: 2k exceeds the grid dimension");
    // Interior nodes, two cells clear of the boundary.
    double max_sigma = 0.0, min_sig1 = std::numeric_limits<double>::infinity();
    bool elliptic_all = true;
    std::vector<int> idx(grid.n, 2);
    bool done = false;
    std::size_t visited = 0;
    while (!done && visited < 4096) {
      Eigen::VectorXd x(grid.n);
      for (int d = 0; d < grid.n; ++d)
        x[d] = grid.origin[d] + grid.spacing * idx[d];
      const auto sd = graphgeom::shape_operator(u, x);
      max_sigma =
          std::max(max_sigma, std::abs(symcurv::sigma_p_matrix(sd.A, 2 * k)));
      const auto verdict = symcurv::is_elliptic(sd.A, k);
      min_sig1 = std::min(min_sig1, std::abs(verdict.sigma_2k1));
      if (verdict.definite_sign == symcurv::DefiniteSign::indefinite)
        elliptic_all = false;
      ++visited;
      for (int d = grid.n - 1;; --d) {
        if (d < 0) {
          done = true;
          break;
        }
        if (++idx[d] <= grid.extents[d] - 3) break;
        idx[d] = 2;
      }
    }
    report.verdicts.push_back(
        {"sigma2k_constraint", max_sigma < 1e-8, max_sigma});
    report.verdicts.push_back(
        {"sigma2k1_nonzero", min_sig1 > 1e-10, min_sig1});
    report.verdicts.push_back({"elliptic", elliptic_all, 0.0});
    // A box grid carries no horizon cycle: conditions I-II fail by
    // construction. (Horizon-bounded inputs arrive as profiles.)
    report.verdicts.push_back({"horizon_present", false, 0.0});
  } else {
    throw DomainError("verify: unsupported input kind '" + kind + "'");
  }
  finish(report, opt.out_dir, start);
  return report.all_pass() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// mass (and fit)

int cmd_fit(const CommonOpts& opt, const std::string& input) {
  const auto start = std::chrono::steady_clock::now();
  const DimensionPair dims = checked_dims(opt);
  ensure_out_dir(opt);
  const auto samples = io::samples_from_csv(io::read_text(input));
  const auto fit = asymptotics::fit_expansion(samples, dims, opt.fit_radius);
  RunReport report;
  report.subcommand = "fit";
  report.verdicts.push_back({"fitted_a_positive", fit.a > 0.0, fit.a});
  report.verdicts.push_back(
      {"condition_bounded", fit.condition < 1e12, fit.condition});
  const fs::path out = fs::path(opt.out_dir) / "expansion.json";
  io::write_text(out, io::expansion_to_json(fit));
  report.outputs.push_back(out.string());
  finish(report, opt.out_dir, start);
  return report.all_pass() ? 0 : 1;
}

int cmd_mass(const CommonOpts& opt, const std::string& input) {
  const auto start = std::chrono::steady_clock::now();
  const DimensionPair dims = checked_dims(opt);
  ensure_out_dir(opt);
  RunReport report;
  report.subcommand = "mass";

  std::vector<asymptotics::FitSample> samples;
  double fit_radius = opt.fit_radius;
  std::optional<rotational::ProfileCurve> curve;
  double horizon_area = 0.0;
  if (input.empty()) {
    check_mass(opt.m);
    const model::ModelParams params(dims, opt.m);
    const double rh = model::horizon_radius(params);
    if (fit_radius <= 0.0) fit_radius = 50.0 * rh;
    samples = model_fit_samples(dims, opt.m, fit_radius);
    curve = rotational::integrate_profile_to_s(
        dims, opt.m, 2.2 * fit_radius, 1e4 * std::max(rh, fit_radius),
        step_control(opt));
    horizon_area = massflux::sphere_area(rh, dims.n - 1);
  } else {
    samples = io::samples_from_csv(io::read_text(input));
    if (samples.empty()) throw DomainError("mass: empty sample set");
  }

  const auto fit = asymptotics::fit_expansion(samples, dims, opt.fit_radius);
  const double fitted_mass =
      pow_real(fit.mass(), static_cast<double>(dims.k));
  report.verdicts.push_back({"fitted_a_positive", fit.a > 0.0, fit.a});
  const fs::path fit_out = fs::path(opt.out_dir) / "expansion.json";
  io::write_text(fit_out, io::expansion_to_json(fit));
  report.outputs.push_back(fit_out.string());

  if (curve) {
    const double lambda = massflux::calibrate_mass_constant(dims);
    const auto flux =
        massflux::flux_report_profile(*curve, fit_radius, lambda);
    report.verdicts.push_back(
        {"homology_drift", flux.homology_drift < 1e-6, flux.homology_drift});
    const double rel =
        std::abs(flux.calibrated_mass - fitted_mass) /
        std::max(flux.calibrated_mass, 1e-300);
    report.verdicts.push_back({"cross_route_mass_agreement", rel < 1e-3, rel});
    const auto penrose =
        massflux::penrose_check(flux.calibrated_mass, horizon_area, dims);
    report.verdicts.push_back(
        {"penrose_gap",
         std::abs(penrose.gap) <= 1e-6 * std::max(penrose.mass, 1e-12),
         penrose.gap});
    const fs::path flux_out = fs::path(opt.out_dir) / "flux_report.json";
    io::write_text(flux_out, io::flux_report_to_json(flux));
    report.outputs.push_back(flux_out.string());
    const massflux::PenroseReport reports[] = {penrose};
    const fs::path pen_out = fs::path(opt.out_dir) / "penrose_report.json";
    io::write_text(pen_out, io::penrose_reports_to_json(reports));
    report.outputs.push_back(pen_out.string());
  }
  finish(report, opt.out_dir, start);
  return report.all_pass() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// penrose / sweep

int cmd_penrose(const CommonOpts& opt, double direct_mass, double direct_area) {
  const auto start = std::chrono::steady_clock::now();
  const DimensionPair dims = checked_dims(opt);
  ensure_out_dir(opt);
  massflux::PenroseReport rep;
  if (direct_area > 0.0) {
    rep = massflux::penrose_check(direct_mass, direct_area, dims);
    rep.name = "direct";
  } else {
    check_mass(opt.m);
    const model::ModelParams params(dims, opt.m);
    const double rh = model::horizon_radius(params);
    rep = massflux::penrose_check(
        pow_real(opt.m, static_cast<double>(dims.k)),
        massflux::sphere_area(rh, dims.n - 1), dims);
    rep.name = "model";
  }
  RunReport report;
  report.subcommand = "penrose";
  report.verdicts.push_back({"penrose_pass", rep.pass, rep.gap});
  const massflux::PenroseReport reports[] = {rep};
  const fs::path out = fs::path(opt.out_dir) / ("penrose_report." + opt.format);
  io::write_text(out, opt.format == "csv"
                          ? io::penrose_reports_to_csv(reports)
                          : io::penrose_reports_to_json(reports));
  report.outputs.push_back(out.string());
  finish(report, opt.out_dir, start);
  return report.all_pass() ? 0 : 1;
}

int cmd_sweep(const CommonOpts& opt, const std::string& spec_file) {
  const auto start = std::chrono::steady_clock::now();
  ensure_out_dir(opt);
  const auto spec = io::sweep_spec_from_json(io::read_text(spec_file));
  const auto reports =
      massflux::penrose_sweep(spec.dims, spec.members, spec.config);
  RunReport report;
  report.subcommand = "sweep";
  bool all = true;
  double min_gap = std::numeric_limits<double>::infinity();
  for (const auto& r : reports) {
    all = all && r.pass;
    min_gap = std::min(min_gap, r.gap);
  }
  report.verdicts.push_back({"all_gaps_nonnegative", all, min_gap});
  const fs::path out =
      fs::path(opt.out_dir) / ("sweep_reports." + opt.format);
  io::write_text(out, opt.format == "csv"
                          ? io::penrose_reports_to_csv(reports)
                          : io::penrose_reports_to_json(reports));
  report.outputs.push_back(out.string());
  finish(report, opt.out_dir, start);
  return report.all_pass() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// ads

int cmd_ads(const CommonOpts& opt, double r_max, int sample_count) {
  const auto start = std::chrono::steady_clock::now();
  check_mass(opt.m);
  const DimensionPair dims = checked_dims(opt);
  ensure_out_dir(opt);
  const model::AdSModelParams params(dims, opt.m);
  const double rh = model::ads_horizon(params);
  if (r_max <= rh)
    throw DomainError("ads: requested r range lies at or below the horizon");
  RunReport report;
  report.subcommand = "ads";
  const double root_resid = std::abs(model::ads_potential(params, rh));
  report.verdicts.push_back({"potential_at_root", root_resid < 1e-12, root_resid});

  std::ostringstream csv;
  csv << "# lovegeo-ads n=" << dims.n << " k=" << dims.k
      << " m=" << io::format_sig15(opt.m)
      << " horizon=" << io::format_sig15(rh) << "\n";
  csv << "r,potential,slope,t\n";
  for (int i = 1; i <= sample_count; ++i) {
    const double r = rh + (r_max - rh) * i / sample_count;
    csv << io::format_sig15(r) << ','
        << io::format_sig15(model::ads_potential(params, r)) << ','
        << io::format_sig15(model::ads_profile_slope(params, r)) << ','
        << io::format_sig15(model::ads_profile_t(params, r)) << "\n";
  }
  const fs::path out = fs::path(opt.out_dir) / "ads_profile.csv";
  io::write_text(out, csv.str());
  report.outputs.push_back(out.string());
  finish(report, opt.out_dir, start);
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lovegeo: rotational null 2k-mean-curvature hypersurfaces, "
               "flux mass, and Penrose checks"};
  app.require_subcommand(1);

  CommonOpts opt;
  double tau_factor = 100.0;
  double r_max = 0.0;
  int ads_samples = 64;
  double direct_mass = -1.0, direct_area = -1.0;
  std::string input_file, spec_file;

  auto* profile = app.add_subcommand("profile", "integrate a model profile");
  add_dims_opts(profile, opt);
  add_io_opts(profile, opt);
  profile->add_option("--tau-factor", tau_factor,
                      "arc length range in units of the horizon radius");

  auto* verify = app.add_subcommand("verify", "run the constraint battery");
  add_dims_opts(verify, opt);
  add_io_opts(verify, opt);
  verify->add_option("--input", input_file, "profile/doubled/grid file")
      ->required();

  auto* mass = app.add_subcommand("mass", "flux + expansion mass pipeline");
  add_dims_opts(mass, opt);
  add_io_opts(mass, opt);
  mass->add_option("--input", input_file, "sample CSV (default: model end)");

  auto* penrose = app.add_subcommand("penrose", "mass-area inequality check");
  add_dims_opts(penrose, opt);
  add_io_opts(penrose, opt);
  penrose->add_option("--mass", direct_mass, "mass (with --area)");
  penrose->add_option("--area", direct_area, "horizon area (with --mass)");

  auto* sweep = app.add_subcommand("sweep", "penrose sweep over a family");
  add_io_opts(sweep, opt);
  sweep->add_option("--spec", spec_file, "sweep spec json")->required();

  auto* ads = app.add_subcommand("ads", "hyperbolic-ambient profile table");
  add_dims_opts(ads, opt);
  add_io_opts(ads, opt);
  ads->add_option("--r-max", r_max, "outer radius of the table");
  ads->add_option("--samples", ads_samples, "number of table rows");

  auto* fit = app.add_subcommand("fit", "fit end expansion to samples");
  add_dims_opts(fit, opt, false);
  add_io_opts(fit, opt);
  fit->add_option("--input", input_file, "sample CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (profile->parsed()) return cmd_profile(opt, tau_factor);
    if (verify->parsed()) return cmd_verify(opt, input_file);
    if (mass->parsed()) return cmd_mass(opt, input_file);
    if (penrose->parsed()) return cmd_penrose(opt, direct_mass, direct_area);
    if (sweep->parsed()) return cmd_sweep(opt, spec_file);
    if (ads->parsed()) {
      if (r_max <= 0.0) r_max = 4.0 * (1.0 + opt.m);
      return cmd_ads(opt, r_max, ads_samples);
    }
    if (fit->parsed()) return cmd_fit(opt, input_file);
  } catch (const ConditioningError& e) {
    std::fprintf(stderr, "error: %s (condition estimate %.3e)\n", e.what(),
                 e.condition);
    return 1;
  } catch (const IntegrationError& e) {
    std::fprintf(stderr, "error: %s (last tau %.6g)\n", e.what(), e.last_tau);
    return 1;
  } catch (const CalibrationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const EllipticityFailureError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const EnergyConditionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
