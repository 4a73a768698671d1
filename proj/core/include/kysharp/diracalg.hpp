#pragma once

#include <Eigen/Core>
#include <complex>
#include <vector>

namespace kysharp::dirac {

using Complex = std::complex<double>;
/// Dense complex matrices of size at most 4 x 4, row major.
using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor, 4, 4>;
using CVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1, 0, 4, 1>;

/// Pauli matrix sigma_j, j in {1, 2, 3}; j = 0 gives the 2 x 2 identity.
CMatrix pauli(int j);

/// Kronecker product a (x) b.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Hermitian matrices alpha_1..alpha_d and beta with pairwise
/// anticommutators 2 delta_{jl} I.
struct GammaSet {
  int d = 0;
  std::vector<CMatrix> alphas;
  CMatrix beta;

  int size() const { return static_cast<int>(beta.rows()); }
};

/// d = 2: (sigma_1, sigma_2; beta = sigma_3). d = 3: alpha_j = sigma_1 (x) sigma_j,
/// beta = sigma_3 (x) I. Throws unsupported_dimension otherwise.
GammaSet gamma_set(int d);

/// A_xi = sum_j alpha_j xi_j + m beta.
CMatrix symbol(const GammaSet& gs, const std::vector<double>& xi, double m);

/// exp(-i t A_xi) = cos(t phi) I - i sin(t phi) / phi A_xi, phi = (|xi|^2 + m^2)^{1/2}.
CMatrix propagator(const GammaSet& gs, const std::vector<double>& xi, double m, double t);

struct Projection {
  CVector plus;
  CVector minus;
};

/// f_pm = (f pm A_xi f / phi) / 2. Throws degenerate_symbol when phi = 0.
Projection pm_projection(const GammaSet& gs, const CVector& value, const std::vector<double>& xi,
                         double m);

/// The involution-times-phi matrix X whose eigenspaces decide the extremiser
/// directions: m sigma_3 + r sigma_1 (d = 2), m sigma_3 (x) I + r sigma_1 (x) sigma_3 (d = 3).
CMatrix mixing_matrix(int d, double m, double r);

/// The symbol A_xi seen through the matrix harmonics, acting on radial
/// coefficients: m sigma_3 + r sigma_1 (d = 2), m sigma_3 (x) sigma_3 + r sigma_1 (x) I (d = 3).
CMatrix coefficient_symbol(int d, double m, double r);

/// (lk + lk1) / 2 I + m / (2 phi_m^2) (lk - lk1) X.
CMatrix dirac_Lambda_matrix(int d, double lk, double lk1, double m, double r);

struct EigenStructure {
  double max_eigenvalue = 0.0;
  std::vector<CVector> max_eigenspace_basis;
  std::vector<double> full_spectrum;  // descending
};

/// Closed-form eigen-structure of dirac_Lambda_matrix. The maximal
/// eigenspace is the whole space when m (lk - lk1) = 0 and otherwise the
/// +phi_m or -phi_m eigenspace of X, following the sign of m (lk - lk1).
EigenStructure extremiser_space(int d, double lk, double lk1, double m, double r);

}  // namespace kysharp::dirac
