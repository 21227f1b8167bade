#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "lovegeo/dims.hpp"
#include "lovegeo/symcurv.hpp"
#include "oracles.hpp"

using namespace lovegeo;
using symcurv::Matrix;

namespace {

double rel_err(double got, double want, double scale) {
  return std::abs(got - want) / std::max({std::abs(want), scale, 1e-300});
}

Matrix random_symmetric(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) a(i, j) = a(j, i) = uni(rng);
  return a;
}

}  // namespace

TEST_CASE("DimensionPair validates 2 <= 2k <= n-1") {
  CHECK_NOTHROW(DimensionPair(3, 1));
  CHECK_NOTHROW(DimensionPair(5, 2));
  CHECK_THROWS_AS(DimensionPair(4, 2), DomainError);
  CHECK_THROWS_AS(DimensionPair(3, 0), DomainError);
  CHECK(DimensionPair(5, 1).q() == doctest::Approx(1.5));
  CHECK(DimensionPair(5, 2).q() == doctest::Approx(0.25));
  // q stays within [1/(2k), n/2 - 1] across a dimension scan.
  for (int n = 3; n <= 16; ++n)
    for (int k = 1; 2 * k <= n - 1; ++k) {
      const double q = DimensionPair(n, k).q();
      CHECK(q >= 1.0 / (2 * k) - 1e-15);
      CHECK(q <= 0.5 * n - 1.0 + 1e-15);
    }
}

TEST_CASE("sigma_p_eigen spec examples") {
  const double ones[] = {1, 1, 1, 1};
  CHECK(symcurv::sigma_p_eigen(ones, 2) == doctest::Approx(6.0));
  const double pair[] = {2, 3};
  CHECK(symcurv::sigma_p_eigen(pair, 2) == doctest::Approx(6.0));
  // Horizon principal curvatures for n=5, k=2, m=1/2: kappa_n = -(n-2k)/(2k r).
  const double horizon[] = {1, 1, 1, 1, -0.25};
  const double want = oracles::sigma_subset_sum(horizon, 4);
  CHECK(want == doctest::Approx(0.0));
  CHECK(symcurv::sigma_p_eigen(horizon, 4) == doctest::Approx(want));
  CHECK(symcurv::sigma_p_eigen(horizon, 0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(symcurv::sigma_p_eigen(horizon, 6), DomainError);
  CHECK_THROWS_AS(symcurv::sigma_p_eigen(horizon, -1), DomainError);
}

TEST_CASE("sigma_p_eigen equals subset sums and is permutation invariant") {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> uni(-1.5, 1.5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);  // up to 8
    std::vector<double> kappas(n);
    for (double& k : kappas) k = uni(rng);
    std::vector<double> abs_k(kappas);
    for (double& k : abs_k) k = std::abs(k);
    for (int p = 0; p <= n; ++p) {
      const double want = oracles::sigma_subset_sum(kappas, p);
      const double scale = oracles::sigma_subset_sum(abs_k, p);
      CHECK(rel_err(symcurv::sigma_p_eigen(kappas, p), want, scale) < 1e-12);
    }
    std::vector<double> shuffled(kappas);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (int p = 0; p <= n; ++p) {
      const double scale = oracles::sigma_subset_sum(abs_k, p);
      CHECK(rel_err(symcurv::sigma_p_eigen(shuffled, p),
                    symcurv::sigma_p_eigen(kappas, p), scale) < 1e-12);
    }
  }
}

TEST_CASE("sigma_p_matrix spec examples") {
  CHECK(symcurv::sigma_p_matrix(Matrix::Identity(5, 5), 3) ==
        doctest::Approx(10.0));
  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << 1, 2, 3;
  CHECK(symcurv::sigma_p_matrix(d, 2) == doctest::Approx(11.0));
  CHECK_THROWS_AS(symcurv::sigma_p_matrix(Matrix::Zero(2, 3), 1), DomainError);
  CHECK_THROWS_AS(symcurv::sigma_p_matrix(d, 4), DomainError);
}

TEST_CASE("sigma_p_matrix: char-poly coefficients vs minor enumeration") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix a = random_symmetric(3, rng);
    for (int p = 0; p <= 3; ++p) {
      const double want = oracles::principal_minor_sum(a, p);
      CHECK(rel_err(symcurv::sigma_p_matrix(a, p), want, 1.0) < 1e-12);
    }
  }
}

TEST_CASE("sigma_p_matrix on diag(kappa) equals sigma_p_eigen") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    std::vector<double> kappas(n);
    Matrix d = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) d(i, i) = kappas[i] = uni(rng);
    std::vector<double> abs_k(kappas);
    for (double& k : abs_k) k = std::abs(k);
    for (int p = 0; p <= n; ++p)
      CHECK(rel_err(symcurv::sigma_p_matrix(d, p),
                    symcurv::sigma_p_eigen(kappas, p),
                    oracles::sigma_subset_sum(abs_k, p)) < 1e-12);
  }
}

TEST_CASE("sigma_p_matrix handles non-symmetric input via minors") {
  Matrix rot(2, 2);
  rot << 0, 1, -1, 0;
  CHECK(symcurv::sigma_p_matrix(rot, 1) == doctest::Approx(0.0));
  CHECK(symcurv::sigma_p_matrix(rot, 2) == doctest::Approx(1.0));
}

TEST_CASE("newton_tensor spec examples") {
  std::mt19937 rng(21);
  const Matrix a = random_symmetric(4, rng);
  CHECK((symcurv::newton_tensor(a, 0) - Matrix::Identity(4, 4)).norm() == 0.0);
  Matrix d = Matrix::Zero(2, 2);
  d.diagonal() << 1, 2;
  const Matrix n1 = symcurv::newton_tensor(d, 1);
  CHECK(n1(0, 0) == doctest::Approx(2.0));
  CHECK(n1(1, 1) == doctest::Approx(1.0));
  CHECK(n1(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("newton_tensor: recurrence, alternating sum, Cayley-Hamilton, trace") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);  // up to 6
    const Matrix a = random_symmetric(n, rng);
    const double anorm = 1.0 + a.norm();
    for (int p = 0; p <= n; ++p) {
      const Matrix np = symcurv::newton_tensor(a, p);
      const Matrix want = oracles::newton_alternating_sum(a, p);
      CHECK((np - want).cwiseAbs().maxCoeff() <
            1e-10 * std::pow(anorm, p + 1));
      if (p >= 1) {
        const Matrix prev = symcurv::newton_tensor(a, p - 1);
        const Matrix rec = symcurv::sigma_p_matrix(a, p) * Matrix::Identity(n, n) -
                           a * prev;
        CHECK((np - rec).cwiseAbs().maxCoeff() < 1e-12 * std::pow(anorm, p + 1));
      }
      if (p < n) {
        const double lhs = (np * a).trace();
        const double rhs = (p + 1) * oracles::principal_minor_sum(a, p + 1);
        CHECK(rel_err(lhs, rhs, std::pow(anorm, p + 1)) < 1e-10);
      }
    }
    // N_n(A) = 0 by Cayley-Hamilton.
    const Matrix nn = symcurv::newton_tensor(a, n);
    CHECK(nn.cwiseAbs().maxCoeff() < 1e-10 * std::pow(anorm, n));
  }
}

TEST_CASE("is_elliptic spec examples") {
  const auto v1 = symcurv::is_elliptic(Matrix::Identity(5, 5), 2);
  CHECK(v1.definite_sign == symcurv::DefiniteSign::positive);
  CHECK(v1.sigma_2k1 == doctest::Approx(1.0));

  Matrix horizon = Matrix::Zero(5, 5);
  horizon.diagonal() << 1, 1, 1, 1, -0.25;
  const auto v2 = symcurv::is_elliptic(horizon, 2);
  CHECK(v2.definite_sign != symcurv::DefiniteSign::indefinite);
  CHECK(v2.sigma_2k1 == doctest::Approx(-0.25));
  // Cross-check the N_3 spectrum from the alternating-sum definition.
  const Matrix n3 = oracles::newton_alternating_sum(horizon, 3);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (n3 + n3.transpose()));
  CHECK(es.eigenvalues().minCoeff() > 0.0);
  CHECK(v2.definite_sign == symcurv::DefiniteSign::positive);

  const auto v3 = symcurv::is_elliptic(Matrix::Zero(4, 4), 1);
  CHECK(v3.definite_sign == symcurv::DefiniteSign::indefinite);
  CHECK(v3.sigma_2k1 == doctest::Approx(0.0));
}
