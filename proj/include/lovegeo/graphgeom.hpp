#pragma once

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "lovegeo/dims.hpp"
#include "lovegeo/rotational.hpp"
#include "lovegeo/symcurv.hpp"

namespace lovegeo::graphgeom {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Region of the base n-plane a graph is defined over.
struct Domain {
  enum class Kind { annulus, box };
  Kind kind = Kind::annulus;
  double inner = 0.0;  // annulus radii; outer may be +inf
  double outer = std::numeric_limits<double>::infinity();
  Vector lo, hi;  // box corners

  bool contains(const Vector& x) const;
  static Domain annulus(double inner, double outer);
  static Domain box(Vector lo, Vector hi);
};

// Uniform grid of height values with spacing h, origin at the first node,
// row-major with the last index fastest.
struct GridData {
  int n = 0;
  double spacing = 0.0;
  Vector origin;
  std::vector<int> extents;
  std::vector<double> values;

  std::size_t size() const;
  double at(std::span<const int> idx) const;
};

// A scalar field u over a region of the base plane together with first and
// second derivatives: either analytic callables or a sampled grid evaluated
// with 4th-order centered differences (grid queries must land on nodes and
// stay two cells away from the boundary).
class GraphFunction {
 public:
  using ValueFn = std::function<double(const Vector&)>;
  using GradFn = std::function<Vector(const Vector&)>;
  using HessFn = std::function<Matrix(const Vector&)>;

  static GraphFunction analytic(int n, Domain domain, ValueFn u, GradFn grad,
                                HessFn hess);
  static GraphFunction from_grid(GridData grid);

  int dimension() const { return n_; }
  const Domain& domain() const { return domain_; }
  bool grid_backed() const { return grid_ != nullptr; }
  const GridData* grid() const { return grid_.get(); }

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  Matrix hessian(const Vector& x) const;

  // Height of the horizon cycle when this graph is horizon-bounded; the
  // evaluator cannot be queried at the cycle itself (|grad u| blows up).
  const std::optional<double>& horizon_value() const { return horizon_value_; }
  GraphFunction& with_horizon_value(double v) {
    horizon_value_ = v;
    return *this;
  }

 private:
  int n_ = 0;
  Domain domain_;
  ValueFn u_;
  GradFn grad_;
  HessFn hess_;
  std::shared_ptr<const GridData> grid_;
  std::optional<double> horizon_value_;
};

// The analytic end of a model hypersurface: u(x) = t+(|x|), restricted to
// the annulus (r_h (1 + guard), outer).
GraphFunction model_end(const DimensionPair& dims, double m,
                        double outer = std::numeric_limits<double>::infinity(),
                        double horizon_guard = 1e-6);

// Induced metric g = I + grad u (x) grad u; det g = W^2.
Matrix induced_metric(const GraphFunction& u, const Vector& x);

// Nonparametric shape operator A = B + C with B = Hess(u)/W and
// C = -(grad u)(grad u^T Hess(u))/W^3; A is self-adjoint with respect to
// the induced metric, so its eigenvalues are real.
struct ShapeDecomposition {
  Matrix B, C, A;
  double W = 1.0;
};
ShapeDecomposition shape_operator(const GraphFunction& u, const Vector& x);

double sigma_p_graph(const GraphFunction& u, const Vector& x, int p);

// Finite-difference covariant divergence of N_{2k-1}(A) grad_g x_i through
// the induced volume element W dx; vanishes to O(h^2) on sigma_2k = 0
// hypersurfaces.
double divergence_residual(const GraphFunction& u, const Vector& x, int i,
                           int k, double h = 1e-3);

// Jacobi operator J_k f = div_g(N_{2k-1}(A) grad_g f) - (2k+1) sigma_{2k+1} f.
double jacobi_apply(const GraphFunction& u,
                    const std::function<double(const Vector&)>& f,
                    const Vector& x, int k, double h = 1e-3);

// Two-sheet representation produced by reflecting a graph across the
// constant height of its inner boundary cycle.
struct DoubledSurface {
  GraphFunction upper, lower;
  double seam_height = 0.0;
  double seam_radius = 0.0;
};
DoubledSurface reflect_double(const GraphFunction& u, int trace_samples = 64);

// Local chart data of one sheet at a horizon point: the chart base plane is
// the tangent plane of the surface there, so first derivatives vanish and
// the sheet is the graph of v with Hessian splitting into the tangential
// block, the mixed column, and the unknown v_nn.
struct SeamChartSide {
  Matrix tangential_hessian;  // (n-1) x (n-1), v_{alpha beta}
  Vector mixed;               // v_{alpha n}
};
struct SeamSample {
  SeamChartSide plus, minus;
};

struct RegularitySample {
  double d_plus = 0.0, d_minus = 0.0;
  double vnn_plus = 0.0, vnn_minus = 0.0;
  double gap = 0.0;
};
struct RegularityReport {
  std::vector<RegularitySample> samples;
  double max_gap = 0.0;
};

// Solves D v_nn + sigma_2k(B)|_{v_nn = 0} = 0 on each side (the first-order
// terms drop out at the chart origin) and reports the transverse-derivative
// gap.  D is extracted as the exact difference of sigma_2k(B) at two v_nn
// values; |D| < 1e-10 raises EllipticityFailureError.
RegularityReport regularity_certificate(std::span<const SeamSample> samples,
                                        int k);

// Seam data of a rotational sheet: the horizon cycle is round with radius
// s0 (the first profile sample), so the tangential Hessian is -I/s0 and the
// mixed column vanishes.
SeamSample seam_sample_rotational(int n, double s_plus, double s_minus);
std::vector<SeamSample> seam_samples_rotational(
    const rotational::ProfileCurve& upper, const rotational::ProfileCurve& lower,
    int count);

// Conditions a candidate extrinsic black hole must satisfy: graph over an
// exterior region; horizon cycle at constant height met orthogonally;
// sigma_2k = 0 with sigma_{2k+1} != 0 and N_{2k-1} definite everywhere
// sampled; end asymptotics matching a recognized regime.
struct ConditionReport {
  bool exterior_graph = false;
  bool horizon_orthogonal = false;
  bool constraint_and_elliptic = false;
  bool regular_end = false;
  double max_sigma2k = 0.0;
  double min_abs_sigma2k1 = 0.0;
};
ConditionReport check_conditions(const rotational::ProfileCurve& curve);

}  // namespace lovegeo::graphgeom
