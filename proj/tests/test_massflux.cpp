#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <numbers>

#include "lovegeo/asymptotics.hpp"
#include "lovegeo/massflux.hpp"
#include "lovegeo/model.hpp"
#include "lovegeo/numerics.hpp"

using namespace lovegeo;
namespace mf = lovegeo::massflux;
constexpr double pi = std::numbers::pi;

namespace {

ode::StepControl tight() {
  ode::StepControl c;
  c.rtol = 1e-12;
  c.atol = 1e-13;
  return c;
}

rotational::ProfileCurve model_curve(const DimensionPair& dims, double m,
                                     double s_max) {
  const double rh = pow_real(2.0 * m, dims.horizon_exponent());
  return rotational::integrate_profile_to_s(dims, m, s_max, 500.0 * rh + s_max,
                                            tight());
}

}  // namespace

TEST_CASE("sphere_area spec examples") {
  CHECK(mf::sphere_area(1.0, 2) == doctest::Approx(4.0 * pi));
  CHECK(mf::sphere_area(2.0, 2) == doctest::Approx(16.0 * pi));
  // Standard 3-sphere area via the Gamma function: 2 pi^2.
  const double gamma_oracle = 2.0 * std::pow(pi, 2.0) / std::tgamma(2.0);
  CHECK(mf::sphere_area(1.0, 3) == doctest::Approx(gamma_oracle));
  CHECK(mf::sphere_area(1.0, 3) == doctest::Approx(2.0 * pi * pi));
  CHECK_THROWS_AS(mf::sphere_area(0.0, 2), DomainError);
}

TEST_CASE("flux is homologically invariant on model ends") {
  // n=3, k=1, m=1: flux/a^2 constant across R in {10, 20, 40}.
  {
    const DimensionPair dims{3, 1};
    auto curve = model_curve(dims, 1.0, 100.0);
    const double a2 = 2.0;
    const double base = mf::flux_from_profile(curve, 10.0) / a2;
    for (double r : {20.0, 40.0}) {
      const double val = mf::flux_from_profile(curve, r) / a2;
      CHECK(std::abs(val - base) < 1e-6 * std::abs(base));
    }
  }
  // n=5, k=2, m=1/2: flux/a^4 constant.
  {
    const DimensionPair dims{5, 2};
    auto curve = model_curve(dims, 0.5, 100.0);
    const double a4 = 1.0;  // (2m)^2
    const double base = mf::flux_from_profile(curve, 10.0) / a4;
    for (double r : {20.0, 40.0}) {
      const double val = mf::flux_from_profile(curve, r) / a4;
      CHECK(std::abs(val - base) < 1e-6 * std::abs(base));
    }
  }
}

TEST_CASE("graph-quadrature flux agrees with the rotational reduction") {
  const DimensionPair d31{3, 1};
  auto curve = model_curve(d31, 1.0, 100.0);
  auto end = graphgeom::model_end(d31, 1.0);
  const double quad = mf::flux_graph(end, 1, 10.0, 32);
  const double reduced = mf::flux_from_profile(curve, 10.0);
  CHECK(std::abs(quad - reduced) < 1e-6 * std::abs(reduced));

  const DimensionPair d42{4, 1};
  auto curve42 = model_curve(d42, 0.5, 60.0);
  auto end42 = graphgeom::model_end(d42, 0.5);
  const double quad42 = mf::flux_graph(end42, 1, 8.0, 20);
  const double reduced42 = mf::flux_from_profile(curve42, 8.0);
  CHECK(std::abs(quad42 - reduced42) < 1e-6 * std::abs(reduced42));

  // Flat plane over an annulus: A = 0, flux vanishes.
  auto plane = graphgeom::GraphFunction::analytic(
      3, graphgeom::Domain::annulus(1.0, 100.0),
      [](const Eigen::VectorXd&) { return 0.0; },
      [](const Eigen::VectorXd&) { return Eigen::VectorXd(Eigen::VectorXd::Zero(3)); },
      [](const Eigen::VectorXd&) {
        return Eigen::MatrixXd(Eigen::MatrixXd::Zero(3, 3));
      });
  CHECK(std::abs(mf::flux_graph(plane, 1, 10.0, 16)) < 1e-12);
}

TEST_CASE("calibration: identity at m=1, homogeneity, cross-route mass") {
  for (auto [n, k] : {std::pair{3, 1}, {5, 2}}) {
    const DimensionPair dims{n, k};
    const double lambda = mf::calibrate_mass_constant(dims);
    auto curve1 = model_curve(dims, 1.0, 25.0 * pow_real(2.0, dims.horizon_exponent()));
    const double rh1 = pow_real(2.0, dims.horizon_exponent());
    CHECK(lambda * mf::flux_from_profile(curve1, 10.0 * rh1) ==
          doctest::Approx(1.0).epsilon(1e-8));
    // Homogeneity: mass(model with m=2) = 2^k.
    const double rh2 = pow_real(4.0, dims.horizon_exponent());
    auto curve2 = model_curve(dims, 2.0, 25.0 * rh2);
    CHECK(lambda * mf::flux_from_profile(curve2, 10.0 * rh2) ==
          doctest::Approx(pow_real(2.0, k)).epsilon(1e-4));
  }
  // Fitted-a route: (a^2/2)^k agrees with the calibrated flux to 1e-3.
  {
    const DimensionPair dims{3, 1};
    const double lambda = mf::calibrate_mass_constant(dims);
    auto curve = model_curve(dims, 1.0, 250.0);
    const double flux_mass = lambda * mf::flux_from_profile(curve, 100.0);
    const model::ModelParams params(dims, 1.0);
    std::vector<asymptotics::FitSample> samples;
    std::mt19937 rng(11);
    std::normal_distribution<double> gauss;
    for (double r = 100.0; r <= 410.0; r *= 1.2) {
      const double u = model::profile_t(params, r);
      for (int d = 0; d < 16; ++d) {
        Eigen::VectorXd v(3);
        for (int i = 0; i < 3; ++i) v[i] = gauss(rng);
        samples.push_back({r / v.norm() * v, u});
      }
    }
    const auto fit = asymptotics::fit_expansion(samples, dims);
    const double fit_mass = pow_real(fit.mass(), static_cast<double>(dims.k));
    CHECK(std::abs(fit_mass - flux_mass) < 1e-3 * flux_mass);
  }
}

TEST_CASE("penrose_check: equality on the model, slack above it") {
  // n=3, k=1, m=1: area 16 pi, c_{1,3} = (1/2)(4 pi)^{-1/2}, bound = 1.
  {
    const DimensionPair dims{3, 1};
    const double area = 16.0 * pi;
    const double c13 = 0.5 / std::sqrt(4.0 * pi);
    CHECK(mf::penrose_constant(dims) == doctest::Approx(c13));
    const double bound_oracle = c13 * std::sqrt(area);
    CHECK(bound_oracle == doctest::Approx(1.0));
    const auto rep = mf::penrose_check(1.0, area, dims);
    CHECK(rep.bound == doctest::Approx(bound_oracle));
    CHECK(std::abs(rep.gap) < 1e-12);
    CHECK(rep.pass);
    // Heavier mass with the same horizon: strict slack.
    const auto rep2 = mf::penrose_check(2.0, area, dims);
    CHECK(rep2.gap == doctest::Approx(1.0));
    CHECK(rep2.pass);
  }
  // n=5, k=2, m=1/2: mass m^2 = 1/4, horizon radius 1, equality again.
  {
    const DimensionPair dims{5, 2};
    const auto rep = mf::penrose_check(0.25, mf::sphere_area(1.0, 4), dims);
    CHECK(std::abs(rep.gap) < 1e-12);
    CHECK(rep.pass);
  }
  CHECK_THROWS_AS(mf::penrose_check(1.0, 0.0, DimensionPair{3, 1}),
                  DomainError);
  CHECK_THROWS_AS(mf::penrose_check(-1.0, 1.0, DimensionPair{3, 1}),
                  DomainError);
}

TEST_CASE("penrose equality across the model grid") {
  for (int n = 3; n <= 8; ++n)
    for (int k = 1; 2 * k <= n - 1; ++k)
      for (double m : {0.5, 1.0, 2.0}) {
        const DimensionPair dims{n, k};
        const double rh = pow_real(2.0 * m, dims.horizon_exponent());
        const auto rep = mf::penrose_check(
            pow_real(m, static_cast<double>(k)), mf::sphere_area(rh, n - 1),
            dims);
        CHECK(std::abs(rep.gap) <= 1e-6 * rep.mass);
      }
}

TEST_CASE("penrose_sweep: model member exact, monotone bumps non-negative") {
  const DimensionPair dims{3, 1};
  std::vector<mf::SweepMember> members;
  members.push_back({"model", {[](double) { return 1.0; },
                               [](double) { return 0.0; }}});
  const auto make_bump = [](double m, double s0, double w) {
    return rotational::FirstIntegralFn{
        [=](double s) { return m * (1.0 + std::tanh((s - s0) / w)); },
        [=](double s) {
          const double ch = std::cosh((s - s0) / w);
          return m / (w * ch * ch);
        }};
  };
  members.push_back({"bump_a", make_bump(1.0, 10.0, 2.0)});
  members.push_back({"bump_b", make_bump(0.5, 6.0, 1.5)});
  mf::SweepConfig config;
  config.r_eval_min = 60.0;  // beyond every transition region
  const auto reports = mf::penrose_sweep(dims, members, config);
  REQUIRE(reports.size() == 3);
  CHECK(std::abs(reports[0].gap) <= 1e-6 * reports[0].mass);
  for (const auto& rep : reports) {
    CHECK(rep.pass);
    CHECK(rep.gap >= -1e-6 * rep.mass);
  }
  // bump members sit strictly above the bound: mass sees c at infinity,
  // the bound sees c at the horizon.
  CHECK(reports[1].gap > 1e-3 * reports[1].mass);

  // Pointwise-larger first integral gives at least as much mass.
  std::vector<mf::SweepMember> ordered;
  ordered.push_back({"lo", make_bump(0.5, 6.0, 1.5)});
  ordered.push_back({"hi", make_bump(1.0, 6.0, 1.5)});
  const auto rep2 = mf::penrose_sweep(dims, ordered, config);
  CHECK(rep2[1].mass >= rep2[0].mass - 1e-9 * rep2[1].mass);

  // Decreasing c violates the energy condition.
  std::vector<mf::SweepMember> bad;
  bad.push_back({"decreasing",
                 {[](double s) { return 1.0 * (1.0 - std::tanh((s - 8.0) / 2.0)) + 0.05; },
                  [](double s) {
                    const double ch = std::cosh((s - 8.0) / 2.0);
                    return -1.0 / (2.0 * ch * ch);
                  }}});
  CHECK_THROWS_AS(mf::penrose_sweep(dims, bad, config), EnergyConditionError);
}
