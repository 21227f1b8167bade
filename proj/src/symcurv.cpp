#include "lovegeo/symcurv.hpp"

#include <algorithm>
#include <cmath>

#include "lovegeo/errors.hpp"

namespace lovegeo::symcurv {

std::vector<double> sigma_all_eigen(std::span<const double> kappas, int pmax) {
  if (pmax < 0 || pmax > static_cast<int>(kappas.size()))
    throw DomainError("sigma_all_eigen: degree out of range");
  std::vector<double> e(pmax + 1, 0.0);
  e[0] = 1.0;
  int count = 0;
  for (const double kappa : kappas) {
    ++count;
    for (int j = std::min(count, pmax); j >= 1; --j)
      e[j] += kappa * e[j - 1];
  }
  return e;
}

double sigma_p_eigen(std::span<const double> kappas, int p) {
  if (p < 0 || p > static_cast<int>(kappas.size()))
    throw DomainError("sigma_p_eigen: degree out of range");
  return sigma_all_eigen(kappas, p)[p];
}

bool is_symmetric(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = 1.0 + a.cwiseAbs().maxCoeff();
  return (a - a.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

namespace {

// Sum of order-p principal minors by direct subset enumeration.
double minor_sum(const Matrix& a, int p) {
  const int n = static_cast<int>(a.rows());
  if (p == 0) return 1.0;
  if (p == 1) return a.trace();
  if (n > 16)
    throw DomainError("sigma_p_matrix: minor enumeration limited to order 16");
  std::vector<int> idx(p);
  for (int i = 0; i < p; ++i) idx[i] = i;
  double total = 0.0;
  while (true) {
    Matrix sub(p, p);
    for (int r = 0; r < p; ++r)
      for (int c = 0; c < p; ++c) sub(r, c) = a(idx[r], idx[c]);
    total += sub.determinant();
    int i = p - 1;
    while (i >= 0 && idx[i] == n - p + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < p; ++j) idx[j] = idx[j - 1] + 1;
  }
  return total;
}

Eigen::VectorXd symmetric_eigenvalues(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw DomainError("symcurv: eigenvalue decomposition failed");
  return solver.eigenvalues();
}

}  // namespace

double sigma_p_matrix(const Matrix& a, int p) {
  if (a.rows() != a.cols())
    throw DomainError("sigma_p_matrix: matrix must be square");
  const int n = static_cast<int>(a.rows());
  if (p < 0 || p > n) throw DomainError("sigma_p_matrix: degree out of range");
  if (is_symmetric(a)) {
    const Eigen::VectorXd ev = symmetric_eigenvalues(a);
    return sigma_p_eigen(std::span<const double>(ev.data(), ev.size()), p);
  }
  return minor_sum(a, p);
}

std::vector<double> sigma_all_matrix(const Matrix& a, int pmax) {
  if (a.rows() != a.cols())
    throw DomainError("sigma_all_matrix: matrix must be square");
  const int n = static_cast<int>(a.rows());
  if (pmax < 0 || pmax > n)
    throw DomainError("sigma_all_matrix: degree out of range");
  if (is_symmetric(a)) {
    const Eigen::VectorXd ev = symmetric_eigenvalues(a);
    return sigma_all_eigen(std::span<const double>(ev.data(), ev.size()), pmax);
  }
  std::vector<double> out(pmax + 1);
  for (int p = 0; p <= pmax; ++p) out[p] = minor_sum(a, p);
  return out;
}

Matrix newton_tensor(const Matrix& a, int p) {
  if (a.rows() != a.cols())
    throw DomainError("newton_tensor: matrix must be square");
  const int n = static_cast<int>(a.rows());
  if (p < 0 || p > n) throw DomainError("newton_tensor: degree out of range");
  const std::vector<double> sig = sigma_all_matrix(a, p);
  Matrix np = Matrix::Identity(n, n);
  for (int j = 1; j <= p; ++j) np = sig[j] * Matrix::Identity(n, n) - a * np;
  return np;
}

const char* to_string(DefiniteSign s) {
  switch (s) {
    case DefiniteSign::positive: return "positive";
    case DefiniteSign::negative: return "negative";
    default: return "indefinite";
  }
}

EllipticityVerdict is_elliptic(const Matrix& a, int k) {
  if (a.rows() != a.cols())
    throw DomainError("is_elliptic: matrix must be square");
  const int n = static_cast<int>(a.rows());
  if (k < 1 || 2 * k - 1 > n)
    throw DomainError("is_elliptic: need 1 <= 2k-1 <= order");
  const Matrix np = newton_tensor(a, 2 * k - 1);
  const Matrix sym = 0.5 * (np + np.transpose());
  const Eigen::VectorXd ev = symmetric_eigenvalues(sym);
  const double radius = ev.cwiseAbs().maxCoeff();
  const double zero_tol = 1e-10 * (1.0 + radius);
  int pos = 0, neg = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] > zero_tol)
      ++pos;
    else if (ev[i] < -zero_tol)
      ++neg;
  }
  EllipticityVerdict verdict;
  if (pos == n)
    verdict.definite_sign = DefiniteSign::positive;
  else if (neg == n)
    verdict.definite_sign = DefiniteSign::negative;
  else
    verdict.definite_sign = DefiniteSign::indefinite;
  verdict.sigma_2k1 = (2 * k + 1 <= n) ? sigma_p_matrix(a, 2 * k + 1) : 0.0;
  return verdict;
}

}  // namespace lovegeo::symcurv
