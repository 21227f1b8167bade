#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lovegeo/dims.hpp"
#include "lovegeo/rational.hpp"

namespace lovegeo::asymptotics {

// Regime of the end expansion, determined by q = n/(2k) - 1.  For q < 1 the
// interval decomposition is I1(m) = (1/(2m+2), 1/(2m+1)),
// I2(m) = (1/(2m+3), 1/(2m+2)] and the isolated points q = 1/(2m+3); the
// half-open bracket puts each even-reciprocal endpoint into its I2.
enum class RegimeKind { q_gt_1, q_eq_1, i1, i2, qpoint };

struct RegimeTag {
  RegimeKind kind = RegimeKind::q_gt_1;
  int m = 0;  // interval index, meaningful for i1/i2/qpoint
};

bool operator==(const RegimeTag& a, const RegimeTag& b);
std::string to_string(const RegimeTag& tag);

double q_of(const DimensionPair& dims);
Rational q_rational(const DimensionPair& dims);

// Exact dispatch from the integer dimension data.
RegimeTag classify_regime(const DimensionPair& dims);
// Floating dispatch: q is snapped to interval endpoints within 1e-12.
RegimeTag classify_regime(double q, int k);

// B_j = (2j-1)!! / (2^j j!), the series coefficients of (1-x)^(-1/2), and
// C_j = B_j / (1 - (2j+1) q), defined while (2j+1) q < 1.
double b_coeff(int j);
Rational b_coeff_rational(int j);
double c_coeff(int j, double q);
Rational c_coeff_rational(int j, const Rational& q);

// Partial sum P_j(a, s) = C_0 a s^(1-q) + ... + C_j a^(2j+1) s^(1-(2j+1)q).
double p_poly(int j, double a, double s, double q);

// Largest series order a regime admits: the full C_j ladder plus, for I2
// regimes the closed-form next power and for q-points the log term.
int max_series_order(const RegimeTag& tag);

struct SeriesTerm {
  bool is_log = false;
  int j = 0;
  Rational exponent;     // 1 - (2j+1) q (log terms carry exponent 0)
  Rational c_rational;   // C_j, or B_j for the log term
  double coefficient = 0.0;  // C_j a^(2j+1), or B_{m+1} a^(1/q) for the log
};

struct ModelSeries {
  RegimeTag regime;
  double a = 0.0;   // sqrt(2m)
  double a1 = 0.0;  // constant term, fixed numerically from the quadrature
  std::vector<SeriesTerm> terms;
};

// Term-by-term integration of dt/ds = sum_j B_j (2m)^(j+1/2) s^(-(2j+1)q)
// up to the requested order; emits the log term at q-points.
ModelSeries model_series(const DimensionPair& dims, double m, int order);
double eval_series(const ModelSeries& series, double s);

struct FitSample {
  Eigen::VectorXd x;
  double u = 0.0;
};

struct ExpansionParams {
  RegimeTag regime;
  double a = 0.0;
  double a1 = 0.0;
  std::optional<double> a2;      // present in I2 regimes
  std::optional<double> log_coeff;  // present for q = 1 and q-points
  Eigen::VectorXd c;             // translation coefficients
  double residual_norm = 0.0;
  double condition = 0.0;

  double mass() const { return 0.5 * a * a; }
};

// Weighted linear least squares on the regime basis (powers and log of |x|
// plus x_i |x|^(-1-q)); weights |x|^(q+1) equalize the decaying columns.
// a is extracted from the leading coefficient; a <= 0 raises
// InvalidEndError, rank deficiency raises ConditioningError.
ExpansionParams fit_expansion(std::span<const FitSample> samples,
                              const DimensionPair& dims,
                              double min_radius = 0.0);

}  // namespace lovegeo::asymptotics
