#pragma once

#include <Eigen/Core>
#include <array>
#include <functional>
#include <iosfwd>
#include <vector>

#include "kysharp/diracalg.hpp"
#include "kysharp/quadrature.hpp"

namespace kysharp::harmonics {

using dirac::CMatrix;
using dirac::Complex;
using dirac::CVector;
using RMatrix2 = Eigen::Matrix2d;

/// A_k^n with the unit vectors u_k^n, v_k^n built from it.
struct CouplingTriple {
  int k = 0;
  int n = 0;
  RMatrix2 A = RMatrix2::Zero();
  CVector u;
  CVector v;
};

/// True when -k-1 <= n <= k, the range on which A_k^n is defined.
bool coupling_in_range(int k, int n);

/// The real 2 x 2 matrix A_k^n linking degree k to degree k+1 blocks under
/// multiplication by sigma . omega. Entries whose combinatorial prefactor
/// vanishes are returned as exact zeros. For n <= -1 the matrix is
/// -sigma_1 A_k^{-(n+1)} sigma_1. Throws index_out_of_range outside the range.
RMatrix2 coupling_matrix(int k, int n);

/// Same as coupling_matrix but returns the zero matrix outside the range,
/// which is how the block identities treat missing neighbours.
RMatrix2 coupling_matrix_or_zero(int k, int n);

/// u_k^n: unit kernel vector of A_k^n, first nonvanishing component real
/// positive. v_k^n = (A_k^n)^T u_{k+1}^n. Memoized; safe for concurrent use.
const CouplingTriple& coupling_triple(int k, int n);

/// diag(Y_k^n, Y_k^{n+1}) evaluated at (theta, phi).
CMatrix y_block(int k, int n, double theta, double phi);

/// E_k(theta) = diag(e^{ik theta}, e^{i(k+1) theta}) / sqrt(2 pi).
CMatrix matrix_harmonic_2d(int k, double theta);

/// 4 x 4 matrix harmonic E_k^n(theta, phi): rows 1-2 hold (Yv, 0, 0, Yu),
/// rows 3-4 hold (0, Yv, Yu, 0), with Yv = y_block(k, n) v_k^n and
/// Yu = y_block(k+1, n) u_{k+1}^n.
CMatrix matrix_harmonic_3d(int k, int n, double theta, double phi);

/// sigma . omega for the direction (theta, phi).
CMatrix sigma_dot(double theta, double phi);

/// Radial coefficient curves of one (k, n) pair, one C^4 value per grid node.
struct ModeCoefficients {
  int k = 0;
  int n = 0;
  std::vector<CVector> values;
};

using Field3d = std::function<CVector(const std::array<double, 3>&)>;

/// f_k^n(r) = r \int_{S^2} E_k^n(omega)^* f(r omega) d sigma for
/// k = 0..k_max, -k-1 <= n <= k, using Gauss-Legendre in cos(theta)
/// (2 k_max + 2 nodes) times the trapezoid rule in phi (4 k_max + 4 nodes).
std::vector<ModeCoefficients> decompose_3d(const Field3d& f, int k_max,
                                           const std::vector<double>& r_grid);

/// f(r omega) = r^{-1} sum E_k^n(omega) f_k^n(r) at grid node r_grid[i].
CVector synthesize_3d(const std::vector<ModeCoefficients>& coefficients,
                      const std::vector<double>& r_grid, std::size_t i, double theta, double phi);

/// CSV with header k,n,r and real/imaginary parts of the four components.
void write_coefficients_csv(std::ostream& out, const std::vector<ModeCoefficients>& coefficients,
                            const std::vector<double>& r_grid);

}  // namespace kysharp::harmonics
