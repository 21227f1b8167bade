#include "lovegeo/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "lovegeo/errors.hpp"

namespace lovegeo::quadrature {
namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1] (QUADPACK dqk15 values).
constexpr double kXgk[8] = {
    0.99145537112081263920685469752633,
    0.94910791234275852452618968404785,
    0.86486442335976907278971278864093,
    0.74153118559939443986386477328079,
    0.58608723546769113029414483825873,
    0.40584515137739716690660641207696,
    0.20778495500789846760068940377324,
    0.0};
constexpr double kWgk[8] = {
    0.02293532201052922496373200805897,
    0.06309209262997855329070066318921,
    0.10479001032225018383987632254152,
    0.14065325971552591874518959051024,
    0.16900472663926790282658342659855,
    0.19035057806478540991325640242101,
    0.20443294007529889241416199923465,
    0.20948214108472782801299917489171};
constexpr double kWg[4] = {
    0.12948496616886969327061143267908,
    0.27970539148927666790146777142378,
    0.38183005050511894495036977548898,
    0.41795918367346938775510204081633};

struct Interval {
  double a, b, value, error;
};

Interval gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double fv1[7], fv2[7];
  double res_g = fc * kWg[3];
  double res_k = fc * kWgk[7];
  double res_abs = std::abs(fc) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double x = h * kXgk[j];
    fv1[j] = f(c - x);
    fv2[j] = f(c + x);
    const double fsum = fv1[j] + fv2[j];
    res_k += kWgk[j] * fsum;
    res_abs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    if (j % 2 == 1) res_g += kWg[j / 2] * fsum;
  }
  const double res_kh = res_k * 0.5;
  double res_asc = kWgk[7] * std::abs(fc - res_kh);
  for (int j = 0; j < 7; ++j)
    res_asc +=
        kWgk[j] * (std::abs(fv1[j] - res_kh) + std::abs(fv2[j] - res_kh));
  const double ha = std::abs(h);
  res_abs *= ha;
  res_asc *= ha;
  double err = std::abs((res_k - res_g) * h);
  if (res_asc != 0.0 && err != 0.0)
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  constexpr double eps = 2.220446049250313e-16;
  err = std::max(err, 50.0 * eps * res_abs);
  return {a, b, res_k * h, err};
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b,
                 double rtol, double atol, int max_subdivisions) {
  if (a == b) return {0.0, 0.0, 0};
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  std::vector<Interval> heap;
  heap.push_back(gk15(f, a, b));
  const auto by_error = [](const Interval& x, const Interval& y) {
    return x.error < y.error;
  };
  std::make_heap(heap.begin(), heap.end(), by_error);
  int splits = 0;
  while (splits < max_subdivisions) {
    double total = 0.0, err = 0.0;
    for (const auto& iv : heap) {
      total += iv.value;
      err += iv.error;
    }
    if (err <= atol + rtol * std::abs(total)) break;
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Interval worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid == worst.a || mid == worst.b) {
      heap.push_back(worst);  // interval at rounding resolution
      std::push_heap(heap.begin(), heap.end(), by_error);
      break;
    }
    heap.push_back(gk15(f, worst.a, mid));
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(gk15(f, mid, worst.b));
    std::push_heap(heap.begin(), heap.end(), by_error);
    ++splits;
  }
  double total = 0.0, err = 0.0;
  for (const auto& iv : heap) {
    total += iv.value;
    err += iv.error;
  }
  return {sign * total, err, splits};
}

Result integrate_sqrt_endpoint(const std::function<double(double)>& f_sub,
                               double a, double b, double rtol, double atol) {
  if (b < a) throw DomainError("integrate_sqrt_endpoint: b < a");
  if (b == a) return {0.0, 0.0, 0};
  const double xi_max = std::sqrt(b - a);
  return integrate(f_sub, 0.0, xi_max, rtol, atol);
}

}  // namespace lovegeo::quadrature
