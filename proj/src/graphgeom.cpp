#include "lovegeo/graphgeom.hpp"

#include <cmath>
#include <random>

#include "lovegeo/model.hpp"
#include "lovegeo/numerics.hpp"

namespace lovegeo::graphgeom {

bool Domain::contains(const Vector& x) const {
  if (kind == Kind::annulus) {
    const double r = x.norm();
    return r > inner && r < outer;
  }
  if (x.size() != lo.size()) return false;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x[i] < lo[i] || x[i] > hi[i]) return false;
  return true;
}

Domain Domain::annulus(double inner, double outer) {
  Domain d;
  d.kind = Kind::annulus;
  d.inner = inner;
  d.outer = outer;
  return d;
}

Domain Domain::box(Vector lo, Vector hi) {
  Domain d;
  d.kind = Kind::box;
  d.lo = std::move(lo);
  d.hi = std::move(hi);
  return d;
}

std::size_t GridData::size() const {
  std::size_t total = 1;
  for (int e : extents) total *= static_cast<std::size_t>(e);
  return total;
}

double GridData::at(std::span<const int> idx) const {
  std::size_t flat = 0;
  for (int d = 0; d < n; ++d) {
    if (idx[d] < 0 || idx[d] >= extents[d])
      throw DomainError("grid index out of range");
    flat = flat * extents[d] + static_cast<std::size_t>(idx[d]);
  }
  return values[flat];
}

GraphFunction GraphFunction::analytic(int n, Domain domain, ValueFn u,
                                      GradFn grad, HessFn hess) {
  GraphFunction g;
  g.n_ = n;
  g.domain_ = std::move(domain);
  g.u_ = std::move(u);
  g.grad_ = std::move(grad);
  g.hess_ = std::move(hess);
  return g;
}

namespace {

// Maps a query point to grid indices; queries must land on nodes, two cells
// clear of the boundary (the stencil width).
std::vector<int> grid_node(const GridData& g, const Vector& x) {
  std::vector<int> idx(g.n);
  for (int d = 0; d < g.n; ++d) {
    const double raw = (x[d] - g.origin[d]) / g.spacing;
    const double snapped = std::round(raw);
    if (std::abs(raw - snapped) > 1e-6)
      throw DomainError("grid-backed graph queries must align with grid nodes");
    idx[d] = static_cast<int>(snapped);
    if (idx[d] < 2 || idx[d] > g.extents[d] - 3)
      throw DomainError("grid query too close to the grid boundary");
  }
  return idx;
}

double grid_shift(const GridData& g, std::vector<int> idx, int d1, int o1,
                  int d2 = -1, int o2 = 0) {
  idx[d1] += o1;
  if (d2 >= 0) idx[d2] += o2;
  return g.at(idx);
}

// 4th-order centered first-derivative stencil (coefficients over 12h).
constexpr int kD1Off[4] = {-2, -1, 1, 2};
constexpr double kD1W[4] = {1.0, -8.0, 8.0, -1.0};

}  // namespace

GraphFunction GraphFunction::from_grid(GridData grid) {
  if (grid.n < 1 || grid.spacing <= 0.0 ||
      grid.extents.size() != static_cast<std::size_t>(grid.n) ||
      grid.values.size() != grid.size())
    throw DomainError("from_grid: inconsistent grid header");
  for (int e : grid.extents)
    if (e < 5) throw DomainError("from_grid: need at least 5 nodes per axis");
  GraphFunction g;
  g.n_ = grid.n;
  Vector lo = grid.origin, hi = grid.origin;
  for (int d = 0; d < grid.n; ++d) hi[d] += grid.spacing * (grid.extents[d] - 1);
  g.domain_ = Domain::box(lo, hi);
  g.grid_ = std::make_shared<const GridData>(std::move(grid));
  return g;
}

double GraphFunction::value(const Vector& x) const {
  if (!domain_.contains(x))
    throw DomainError("GraphFunction: query outside the domain");
  if (grid_) return grid_->at(grid_node(*grid_, x));
  return u_(x);
}

Vector GraphFunction::gradient(const Vector& x) const {
  if (!domain_.contains(x))
    throw DomainError("GraphFunction: query outside the domain");
  if (!grid_) return grad_(x);
  const auto idx = grid_node(*grid_, x);
  Vector g(n_);
  for (int d = 0; d < n_; ++d) {
    double acc = 0.0;
    for (int j = 0; j < 4; ++j)
      acc += kD1W[j] * grid_shift(*grid_, idx, d, kD1Off[j]);
    g[d] = acc / (12.0 * grid_->spacing);
  }
  return g;
}

Matrix GraphFunction::hessian(const Vector& x) const {
  if (!domain_.contains(x))
    throw DomainError("GraphFunction: query outside the domain");
  if (!grid_) return hess_(x);
  const auto idx = grid_node(*grid_, x);
  const double h = grid_->spacing;
  Matrix out(n_, n_);
  for (int d = 0; d < n_; ++d) {
    const double f0 = grid_->at(idx);
    const double acc = -grid_shift(*grid_, idx, d, 2) +
                       16.0 * grid_shift(*grid_, idx, d, 1) - 30.0 * f0 +
                       16.0 * grid_shift(*grid_, idx, d, -1) -
                       grid_shift(*grid_, idx, d, -2);
    out(d, d) = acc / (12.0 * h * h);
  }
  for (int d1 = 0; d1 < n_; ++d1)
    for (int d2 = d1 + 1; d2 < n_; ++d2) {
      double acc = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          acc += kD1W[a] * kD1W[b] *
                 grid_shift(*grid_, idx, d1, kD1Off[a], d2, kD1Off[b]);
      out(d1, d2) = out(d2, d1) = acc / (144.0 * h * h);
    }
  return out;
}

GraphFunction model_end(const DimensionPair& dims, double m, double outer,
                        double horizon_guard) {
  const model::ModelParams params(dims, m);
  const double rh = model::horizon_radius(params);
  auto value = [params](const Vector& x) {
    return model::profile_t(params, x.norm());
  };
  auto grad = [params](const Vector& x) {
    const double r = x.norm();
    return Vector(model::profile_slope(params, r) / r * x);
  };
  auto hess = [params](const Vector& x) {
    const double r = x.norm();
    const double tp = model::profile_slope(params, r);
    const double tpp = model::profile_slope_deriv(params, r);
    const Vector xhat = x / r;
    const Matrix radial = xhat * xhat.transpose();
    const Matrix id = Matrix::Identity(x.size(), x.size());
    return Matrix(tpp * radial + tp / r * (id - radial));
  };
  return GraphFunction::analytic(
             dims.n, Domain::annulus(rh * (1.0 + horizon_guard), outer), value,
             grad, hess)
      .with_horizon_value(0.0);
}

Matrix induced_metric(const GraphFunction& u, const Vector& x) {
  const Vector v = u.gradient(x);
  return Matrix::Identity(x.size(), x.size()) + v * v.transpose();
}

ShapeDecomposition shape_operator(const GraphFunction& u, const Vector& x) {
  ShapeDecomposition out;
  const Vector v = u.gradient(x);
  const Matrix h = u.hessian(x);
  out.W = std::sqrt(1.0 + v.squaredNorm());
  out.B = h / out.W;
  out.C = -(v * (v.transpose() * h)) / (out.W * out.W * out.W);
  out.A = out.B + out.C;
  return out;
}

double sigma_p_graph(const GraphFunction& u, const Vector& x, int p) {
  return symcurv::sigma_p_matrix(shape_operator(u, x).A, p);
}

namespace {

// Flux density column F_j = W [N_{2k-1}(A) g^{-1} grad f]_j; for a
// coordinate function x_i, grad f = e_i.
Vector flux_density(const GraphFunction& u, const Vector& x, int k,
                    const Vector& grad_f) {
  const Vector v = u.gradient(x);
  const Matrix h = u.hessian(x);
  const double w2 = 1.0 + v.squaredNorm();
  const double w = std::sqrt(w2);
  const Matrix ginv =
      Matrix::Identity(x.size(), x.size()) - v * v.transpose() / w2;
  const Matrix a = ginv * h / w;
  const Matrix nt = symcurv::newton_tensor(a, 2 * k - 1);
  return w * (nt * (ginv * grad_f));
}

}  // namespace

double divergence_residual(const GraphFunction& u, const Vector& x, int i,
                           int k, double h) {
  if (i < 0 || i >= u.dimension())
    throw DomainError("divergence_residual: coordinate index out of range");
  Vector ei = Vector::Zero(u.dimension());
  ei[i] = 1.0;
  double div = 0.0;
  for (int j = 0; j < u.dimension(); ++j) {
    Vector xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    div += (flux_density(u, xp, k, ei)[j] - flux_density(u, xm, k, ei)[j]) /
           (2.0 * h);
  }
  const Vector v = u.gradient(x);
  return div / std::sqrt(1.0 + v.squaredNorm());
}

double jacobi_apply(const GraphFunction& u,
                    const std::function<double(const Vector&)>& f,
                    const Vector& x, int k, double h) {
  const int n = u.dimension();
  const auto grad_f = [&](const Vector& y) {
    Vector g(n);
    for (int j = 0; j < n; ++j) {
      Vector yp = y, ym = y;
      yp[j] += h;
      ym[j] -= h;
      g[j] = (f(yp) - f(ym)) / (2.0 * h);
    }
    return g;
  };
  double div = 0.0;
  for (int j = 0; j < n; ++j) {
    Vector xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    div += (flux_density(u, xp, k, grad_f(xp))[j] -
            flux_density(u, xm, k, grad_f(xm))[j]) /
           (2.0 * h);
  }
  const ShapeDecomposition sd = shape_operator(u, x);
  const double sigma =
      (2 * k + 1 <= n) ? symcurv::sigma_p_matrix(sd.A, 2 * k + 1) : 0.0;
  return div / sd.W - (2 * k + 1) * sigma * f(x);
}

DoubledSurface reflect_double(const GraphFunction& u, int trace_samples) {
  const Domain& dom = u.domain();
  if (dom.kind != Domain::Kind::annulus || !(dom.inner > 0.0))
    throw NotAHorizonError(
        "reflect_double: graph has no inner boundary cycle to reflect across");
  const int n = u.dimension();
  // Probe the boundary trace on a ring just inside the guard band.
  const double probe_r = dom.inner * (1.0 + 1e-6);
  std::mt19937 rng(20260809u);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double mean = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < trace_samples; ++s) {
    Vector dir(n);
    double norm = 0.0;
    do {
      for (int d = 0; d < n; ++d) dir[d] = gauss(rng);
      norm = dir.norm();
    } while (norm < 1e-8);
    dir *= probe_r / norm;
    const double val = u.value(dir);
    mean += val;
    lo = std::min(lo, val);
    hi = std::max(hi, val);
  }
  mean /= trace_samples;
  if (hi - lo > 1e-10 * (1.0 + std::abs(mean)))
    throw NotAHorizonError(
        "reflect_double: boundary trace is not constant (spread " +
        std::to_string(hi - lo) + ")");
  const double u0 = u.horizon_value() ? *u.horizon_value() : mean;

  auto lower_value = [u, u0](const Vector& x) { return 2.0 * u0 - u.value(x); };
  auto lower_grad = [u](const Vector& x) { return Vector(-u.gradient(x)); };
  auto lower_hess = [u](const Vector& x) { return Matrix(-u.hessian(x)); };
  GraphFunction lower =
      GraphFunction::analytic(n, dom, lower_value, lower_grad, lower_hess)
          .with_horizon_value(u0);
  return DoubledSurface{u, std::move(lower), u0, dom.inner};
}

RegularityReport regularity_certificate(std::span<const SeamSample> samples,
                                        int k) {
  if (samples.empty())
    throw DomainError("regularity_certificate: no seam samples");
  RegularityReport report;
  report.samples.reserve(samples.size());
  const auto solve_side = [&](const SeamChartSide& side, double& d_out) {
    const int nm1 = static_cast<int>(side.tangential_hessian.rows());
    const int n = nm1 + 1;
    if (2 * k > n)
      throw DomainError("regularity_certificate: 2k exceeds the dimension");
    Matrix m = Matrix::Zero(n, n);
    m.topLeftCorner(nm1, nm1) = side.tangential_hessian;
    for (int a = 0; a < nm1; ++a)
      m(a, n - 1) = m(n - 1, a) = side.mixed.size() ? side.mixed[a] : 0.0;
    // sigma_2k of the chart Hessian is affine in the (n,n) entry; two
    // evaluations extract the slope D exactly.
    m(n - 1, n - 1) = 0.0;
    const double sigma_dagger = symcurv::sigma_p_matrix(m, 2 * k);
    m(n - 1, n - 1) = 1.0;
    const double d = symcurv::sigma_p_matrix(m, 2 * k) - sigma_dagger;
    if (std::abs(d) < 1e-10)
      throw EllipticityFailureError(
          "regularity_certificate: D coefficient vanishes at a seam sample");
    d_out = d;
    return -sigma_dagger / d;
  };
  for (const SeamSample& sample : samples) {
    RegularitySample rs;
    rs.vnn_plus = solve_side(sample.plus, rs.d_plus);
    rs.vnn_minus = solve_side(sample.minus, rs.d_minus);
    rs.gap = std::abs(rs.vnn_plus - rs.vnn_minus);
    report.max_gap = std::max(report.max_gap, rs.gap);
    report.samples.push_back(rs);
  }
  return report;
}

SeamSample seam_sample_rotational(int n, double s_plus, double s_minus) {
  if (!(s_plus > 0.0) || !(s_minus > 0.0))
    throw DomainError("seam_sample_rotational: cycle radii must be positive");
  SeamSample sample;
  sample.plus.tangential_hessian = -Matrix::Identity(n - 1, n - 1) / s_plus;
  sample.plus.mixed = Vector::Zero(n - 1);
  sample.minus.tangential_hessian = -Matrix::Identity(n - 1, n - 1) / s_minus;
  sample.minus.mixed = Vector::Zero(n - 1);
  return sample;
}

std::vector<SeamSample> seam_samples_rotational(
    const rotational::ProfileCurve& upper, const rotational::ProfileCurve& lower,
    int count) {
  if (upper.samples.empty() || lower.samples.empty())
    throw DomainError("seam_samples_rotational: empty profile curve");
  if (upper.dims.n != lower.dims.n)
    throw DomainError("seam_samples_rotational: dimension mismatch");
  std::vector<SeamSample> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i)
    out.push_back(seam_sample_rotational(upper.dims.n, upper.samples.front().s,
                                         lower.samples.front().s));
  return out;
}

ConditionReport check_conditions(const rotational::ProfileCurve& curve) {
  ConditionReport rep;
  if (curve.samples.size() < 3) return rep;
  const auto& first = curve.samples.front();
  const auto& last = curve.samples.back();
  const double rh = first.s;

  bool monotone = true;
  for (std::size_t i = 1; i < curve.samples.size(); ++i)
    if (curve.samples[i].s < curve.samples[i - 1].s - 1e-12 * rh)
      monotone = false;
  rep.exterior_graph = monotone && last.s > 2.0 * rh;

  rep.horizon_orthogonal =
      std::abs(first.sdot) <= 1e-12 && std::abs(first.t) <= 1e-12 && rh > 0.0;

  const int n = curve.dims.n;
  const int k = curve.dims.k;
  const double norm2k = pow_real(rh, 2.0 * k);
  double max_sig = 0.0;
  double min_sig1 = std::numeric_limits<double>::infinity();
  bool elliptic = true;
  const std::size_t stride =
      std::max<std::size_t>(1, curve.samples.size() / 200);
  for (std::size_t i = 0; i < curve.samples.size(); i += stride) {
    const auto& sm = curve.samples[i];
    const auto kappa = rotational::principal_curvatures_p(
        sm.s, sm.one_minus_sdot2, sm.sddot, n);
    max_sig = std::max(max_sig,
                       std::abs(symcurv::sigma_p_eigen(kappa, 2 * k)) * norm2k);
    // sigma_{2k+1} != 0 is a pointwise condition on a quantity that decays
    // toward the end, so it is measured against the local curvature scale.
    const double s1 =
        (2 * k + 1 <= n) ? symcurv::sigma_p_eigen(kappa, 2 * k + 1) : 0.0;
    double kscale = 0.0;
    for (double kp : kappa) kscale = std::max(kscale, std::abs(kp));
    const double local = pow_real(kscale, 2.0 * k + 1.0);
    min_sig1 = std::min(min_sig1, local > 0.0 ? std::abs(s1) / local : 0.0);
    Matrix a = Matrix::Zero(n, n);
    for (int d = 0; d < n; ++d) a(d, d) = kappa[d];
    if (symcurv::is_elliptic(a, k).definite_sign ==
        symcurv::DefiniteSign::indefinite)
      elliptic = false;
  }
  rep.max_sigma2k = max_sig;
  rep.min_abs_sigma2k1 = min_sig1;
  rep.constraint_and_elliptic = max_sig < 1e-8 && min_sig1 > 1e-10 && elliptic;

  // Regular end: the first integral settles to a positive constant over the
  // outer tail, pinning the asymptotics to the model expansion family.
  const std::size_t tail_start = curve.samples.size() * 9 / 10;
  double clo = std::numeric_limits<double>::infinity(), chi = 0.0;
  for (std::size_t i = tail_start; i < curve.samples.size(); ++i) {
    const auto& sm = curve.samples[i];
    const double ci =
        pow_real(sm.s, curve.dims.potential_exponent()) * sm.one_minus_sdot2;
    clo = std::min(clo, ci);
    chi = std::max(chi, ci);
  }
  rep.regular_end = clo > 0.0 && (chi - clo) <= 1e-6 * chi;
  return rep;
}

}  // namespace lovegeo::graphgeom
