#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "lovegeo/dims.hpp"

namespace lovegeo::symcurv {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Elementary symmetric function of degree p of a list of principal
// curvatures, computed by the prefix recurrence (one value folded in at a
// time).  sigma_0 == 1 by convention.  p outside [0, size] is a domain error.
double sigma_p_eigen(std::span<const double> kappas, int p);

// All of sigma_0 .. sigma_pmax in one pass.
std::vector<double> sigma_all_eigen(std::span<const double> kappas, int pmax);

bool is_symmetric(const Matrix& a, double tol = 1e-12);

// Sum of the order-p principal minors of a square matrix.  Symmetric input
// goes through an eigen-decomposition; general input falls back to direct
// minor enumeration (supported up to order 16).
double sigma_p_matrix(const Matrix& a, int p);
std::vector<double> sigma_all_matrix(const Matrix& a, int pmax);

// Newton tensor N_p(A) = sigma_p I - sigma_{p-1} A + ... + (-1)^p A^p,
// built through the recurrence N_p = sigma_p I - A N_{p-1}, N_0 = I.
Matrix newton_tensor(const Matrix& a, int p);

enum class DefiniteSign { positive, negative, indefinite };
const char* to_string(DefiniteSign s);

struct EllipticityVerdict {
  DefiniteSign definite_sign = DefiniteSign::indefinite;
  double sigma_2k1 = 0.0;  // sigma_{2k+1}(A) at the same sample
};

// Reports definiteness of N_{2k-1}(A) via the eigenvalues of its
// symmetrization, with eigenvalues below 1e-10*(1 + spectral radius)
// treated as zero, together with sigma_{2k+1}(A).  The two conditions are
// evaluated independently; no equivalence between them is assumed.
EllipticityVerdict is_elliptic(const Matrix& a, int k);

}  // namespace lovegeo::symcurv
