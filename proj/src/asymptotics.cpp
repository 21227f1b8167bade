#include "lovegeo/asymptotics.hpp"

#include <cmath>

#include "lovegeo/errors.hpp"
#include "lovegeo/model.hpp"
#include "lovegeo/numerics.hpp"

namespace lovegeo::asymptotics {

bool operator==(const RegimeTag& a, const RegimeTag& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == RegimeKind::q_gt_1 || a.kind == RegimeKind::q_eq_1) return true;
  return a.m == b.m;
}

std::string to_string(const RegimeTag& tag) {
  switch (tag.kind) {
    case RegimeKind::q_gt_1: return "Q_GT_1";
    case RegimeKind::q_eq_1: return "Q_EQ_1";
    case RegimeKind::i1: return "I1(" + std::to_string(tag.m) + ")";
    case RegimeKind::i2: return "I2(" + std::to_string(tag.m) + ")";
    default: return "QPOINT(" + std::to_string(tag.m) + ")";
  }
}

double q_of(const DimensionPair& dims) { return dims.q(); }

Rational q_rational(const DimensionPair& dims) {
  return Rational(dims.n - 2 * dims.k, 2 * dims.k);
}

RegimeTag classify_regime(const DimensionPair& dims) {
  const Rational q = q_rational(dims);
  const Rational one(1);
  if (q > one) return {RegimeKind::q_gt_1, 0};
  if (q == one) return {RegimeKind::q_eq_1, 0};
  for (int m = 0; m <= dims.k; ++m) {
    if (q == Rational(1, 2 * m + 3)) return {RegimeKind::qpoint, m};
    if (q > Rational(1, 2 * m + 2) && q < Rational(1, 2 * m + 1))
      return {RegimeKind::i1, m};
    if (q > Rational(1, 2 * m + 3) && q <= Rational(1, 2 * m + 2))
      return {RegimeKind::i2, m};
  }
  throw DomainError("classify_regime: q below the admissible range");
}

RegimeTag classify_regime(double q, int k) {
  constexpr double tol = 1e-12;
  if (k < 1) throw DomainError("classify_regime: k must be positive");
  if (q < 1.0 / (2 * k) - tol)
    throw DomainError("classify_regime: q below 1/(2k)");
  if (std::abs(q - 1.0) <= tol) return {RegimeKind::q_eq_1, 0};
  if (q > 1.0) return {RegimeKind::q_gt_1, 0};
  for (int m = 0; m <= k + 2; ++m) {
    const double hi = 1.0 / (2 * m + 1);
    const double mid = 1.0 / (2 * m + 2);
    const double lo = 1.0 / (2 * m + 3);
    if (std::abs(q - lo) <= tol) return {RegimeKind::qpoint, m};
    if (q > mid + tol && q < hi - tol) return {RegimeKind::i1, m};
    if (q > lo + tol && q <= mid + tol) return {RegimeKind::i2, m};
  }
  throw DomainError("classify_regime: q below the admissible range");
}

Rational b_coeff_rational(int j) {
  if (j < 0) throw DomainError("b_coeff: j must be non-negative");
  if (j > 12) throw DomainError("b_coeff: order too large for exact arithmetic");
  std::int64_t num = 1, den = 1;
  for (int i = 1; i <= j; ++i) {
    num *= 2 * i - 1;
    den *= 2 * i;
  }
  return Rational(num, den);
}

double b_coeff(int j) { return b_coeff_rational(j).to_double(); }

Rational c_coeff_rational(int j, const Rational& q) {
  const Rational denom = Rational(1) - Rational(2 * j + 1) * q;
  if (denom <= Rational(0))
    throw DomainError("c_coeff: requires (2j+1) q < 1");
  return b_coeff_rational(j) / denom;
}

double c_coeff(int j, double q) {
  const double denom = 1.0 - (2 * j + 1) * q;
  if (!(denom > 0.0)) throw DomainError("c_coeff: requires (2j+1) q < 1");
  return b_coeff(j) / denom;
}

double p_poly(int j, double a, double s, double q) {
  double sum = 0.0;
  for (int i = 0; i <= j; ++i)
    sum += c_coeff(i, q) * pow_real(a, 2.0 * i + 1.0) *
           pow_real(s, 1.0 - (2 * i + 1) * q);
  return sum;
}

int max_series_order(const RegimeTag& tag) {
  switch (tag.kind) {
    case RegimeKind::q_gt_1:
    case RegimeKind::q_eq_1: return 0;
    case RegimeKind::i1: return tag.m;
    default: return tag.m + 1;  // i2 closed-form next power, qpoint log term
  }
}

namespace {

// Exponent of the first term omitted after `order`; used for the Richardson
// extraction of the constant a1.
Rational remainder_exponent(const RegimeTag& tag, const Rational& q,
                            int order) {
  if (tag.kind == RegimeKind::qpoint && order == tag.m + 1)
    return Rational(-2) * q;  // after the log term
  return Rational(1) - Rational(2 * (order + 1) + 1) * q;
}

double series_sum(const std::vector<SeriesTerm>& terms, double s) {
  double sum = 0.0;
  for (const auto& term : terms)
    sum += term.coefficient *
           (term.is_log ? std::log(s) : pow_real(s, term.exponent.to_double()));
  return sum;
}

}  // namespace

ModelSeries model_series(const DimensionPair& dims, double m, int order) {
  if (!(m > 0.0)) throw DomainError("model_series: mass must be positive");
  ModelSeries out;
  out.regime = classify_regime(dims);
  if (order < 0 || order > max_series_order(out.regime))
    throw DomainError("model_series: order beyond the regime validity");
  const Rational q = q_rational(dims);
  out.a = std::sqrt(2.0 * m);
  for (int j = 0; j <= order; ++j) {
    SeriesTerm term;
    term.j = j;
    const Rational denom = Rational(1) - Rational(2 * j + 1) * q;
    if (denom == Rational(0)) {
      // (2j+1) q = 1: the ladder integrand s^-1 integrates to a log.
      term.is_log = true;
      term.exponent = Rational(0);
      term.c_rational = b_coeff_rational(j);
      term.coefficient =
          term.c_rational.to_double() * pow_real(out.a, 2.0 * j + 1.0);
    } else {
      term.exponent = denom;  // 1 - (2j+1) q
      term.c_rational = b_coeff_rational(j) / denom;
      term.coefficient =
          term.c_rational.to_double() * pow_real(out.a, 2.0 * j + 1.0);
    }
    out.terms.push_back(term);
  }
  // Fix the constant from the quadrature at three large radii, eliminating
  // the two leading remainder powers.
  const model::ModelParams params(dims, m);
  const double rh = model::horizon_radius(params);
  const double e1 = remainder_exponent(out.regime, q, order).to_double();
  const double e2 = e1 - 2.0 * q.to_double();
  const double s0 = std::max(1e3 * rh, 1e3);
  double a1_est[3];
  for (int i = 0; i < 3; ++i) {
    const double s = s0 * pow_real(16.0, static_cast<double>(i));
    a1_est[i] = model::profile_t(params, s) - series_sum(out.terms, s);
  }
  // One Richardson level per known exponent.
  const double r1 = pow_real(16.0, e1);
  double lvl1[2];
  for (int i = 0; i < 2; ++i)
    lvl1[i] = (a1_est[i + 1] - r1 * a1_est[i]) / (1.0 - r1);
  const double r2 = pow_real(16.0, e2);
  out.a1 = (lvl1[1] - r2 * lvl1[0]) / (1.0 - r2);
  return out;
}

double eval_series(const ModelSeries& series, double s) {
  return series.a1 + series_sum(series.terms, s);
}

ExpansionParams fit_expansion(std::span<const FitSample> samples,
                              const DimensionPair& dims, double min_radius) {
  const RegimeTag regime = classify_regime(dims);
  const double q = dims.q();
  const int n = dims.n;

  std::vector<double> rad_exponents;
  bool with_log = false;
  switch (regime.kind) {
    case RegimeKind::q_gt_1:
      rad_exponents.push_back(1.0 - q);
      break;
    case RegimeKind::q_eq_1:
      with_log = true;
      break;
    case RegimeKind::i1:
      for (int j = 0; j <= regime.m; ++j)
        rad_exponents.push_back(1.0 - (2 * j + 1) * q);
      break;
    case RegimeKind::i2:
      for (int j = 0; j <= regime.m; ++j)
        rad_exponents.push_back(1.0 - (2 * j + 1) * q);
      rad_exponents.push_back(1.0 - (2 * regime.m + 3) * q);
      break;
    case RegimeKind::qpoint:
      for (int j = 0; j <= regime.m; ++j)
        rad_exponents.push_back(1.0 - (2 * j + 1) * q);
      with_log = true;
      break;
  }
  const int n_rad = static_cast<int>(rad_exponents.size());
  const int cols = 1 + n_rad + (with_log ? 1 : 0) + n;

  std::vector<const FitSample*> kept;
  for (const auto& sample : samples) {
    const double r = sample.x.norm();
    if (r >= min_radius && r > 0.0) kept.push_back(&sample);
  }
  const int rows = static_cast<int>(kept.size());
  if (rows < 3 * cols)
    throw ConditioningError(
        "fit_expansion: need at least 3x as many samples as coefficients",
        0.0);

  Eigen::MatrixXd design(rows, cols);
  Eigen::VectorXd target(rows);
  for (int r = 0; r < rows; ++r) {
    const auto& sample = *kept[r];
    const double radius = sample.x.norm();
    const double weight = pow_real(radius, q + 1.0);
    int c = 0;
    design(r, c++) = weight;
    for (double e : rad_exponents) design(r, c++) = weight * pow_real(radius, e);
    if (with_log) design(r, c++) = weight * std::log(radius);
    const double tfac = weight * pow_real(radius, -1.0 - q);
    for (int d = 0; d < n; ++d) design(r, c++) = tfac * sample.x[d];
    target[r] = weight * sample.u;
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design,
                                        Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  const double condition = smax / std::max(smin, 1e-300);
  if (!(smin > 1e-13 * smax))
    throw ConditioningError("fit_expansion: rank-deficient design matrix",
                            condition);
  const Eigen::VectorXd coef = svd.solve(target);

  ExpansionParams out;
  out.regime = regime;
  out.condition = condition;
  int c = 0;
  out.a1 = coef[c++];
  std::vector<double> rad_coef;
  for (int i = 0; i < n_rad; ++i) rad_coef.push_back(coef[c++]);
  if (with_log) out.log_coeff = coef[c++];
  out.c = coef.segment(c, n);

  if (regime.kind == RegimeKind::q_eq_1) {
    out.a = *out.log_coeff;
  } else {
    // Leading coefficient is C_0 a = a/(1-q).
    out.a = rad_coef.front() * (1.0 - q);
  }
  if (!(out.a > 0.0))
    throw InvalidEndError("fit_expansion: fitted leading coefficient gives a <= 0");
  if (regime.kind == RegimeKind::i2) out.a2 = rad_coef.back();

  const Eigen::VectorXd resid = design * coef - target;
  double wsum = 0.0;
  for (int r = 0; r < rows; ++r) wsum += design(r, 0) * design(r, 0);
  out.residual_norm = std::sqrt(resid.squaredNorm() / wsum);
  return out;
}

}  // namespace lovegeo::asymptotics
