#include "kysharp/diracalg.hpp"

#include <cmath>
#include <string>

#include "kysharp/error.hpp"

namespace kysharp::dirac {

namespace {

const Complex I1{0.0, 1.0};

CVector basis_vector(int size, int index) {
  CVector v = CVector::Zero(size);
  v(index) = 1.0;
  return v;
}

CVector make_vector(std::initializer_list<double> entries) {
  CVector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (double x : entries) v(i++) = x;
  return v;
}

void check_dimension(int d) {
  require(d == 2 || d == 3, ErrorKind::unsupported_dimension,
          "Dirac algebra is implemented for d = 2, 3 only, got d=" + std::to_string(d));
}

}  // namespace

CMatrix pauli(int j) {
  CMatrix s(2, 2);
  switch (j) {
    case 0: s << 1.0, 0.0, 0.0, 1.0; break;
    case 1: s << 0.0, 1.0, 1.0, 0.0; break;
    case 2: s << 0.0, -I1, I1, 0.0; break;
    case 3: s << 1.0, 0.0, 0.0, -1.0; break;
    default:
      throw Error(ErrorKind::invalid_parameter, "pauli: index must be 0..3");
  }
  return s;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

GammaSet gamma_set(int d) {
  check_dimension(d);
  GammaSet gs;
  gs.d = d;
  if (d == 2) {
    gs.alphas = {pauli(1), pauli(2)};
    gs.beta = pauli(3);
  } else {
    for (int j = 1; j <= 3; ++j) gs.alphas.push_back(kron(pauli(1), pauli(j)));
    gs.beta = kron(pauli(3), pauli(0));
  }
  return gs;
}

CMatrix symbol(const GammaSet& gs, const std::vector<double>& xi, double m) {
  require(static_cast<int>(xi.size()) == gs.d, ErrorKind::invalid_parameter,
          "symbol: xi must have d components");
  CMatrix a = m * gs.beta;
  for (int j = 0; j < gs.d; ++j) a += xi[j] * gs.alphas[j];
  return a;
}

CMatrix propagator(const GammaSet& gs, const std::vector<double>& xi, double m, double t) {
  double norm2 = m * m;
  for (double x : xi) norm2 += x * x;
  const double phi = std::sqrt(norm2);
  const double c = std::cos(t * phi);
  const double sinc = (phi == 0.0) ? t : std::sin(t * phi) / phi;
  const int n = gs.size();
  CMatrix u = c * CMatrix::Identity(n, n);
  u -= I1 * sinc * symbol(gs, xi, m);
  return u;
}

Projection pm_projection(const GammaSet& gs, const CVector& value, const std::vector<double>& xi,
                         double m) {
  double norm2 = m * m;
  for (double x : xi) norm2 += x * x;
  require(norm2 > 0.0, ErrorKind::degenerate_symbol, "pm_projection: phi_m vanishes at xi = 0, m = 0");
  require(value.size() == gs.size(), ErrorKind::invalid_parameter,
          "pm_projection: spinor length does not match the gamma matrices");
  const CVector af = symbol(gs, xi, m) * value / std::sqrt(norm2);
  return {0.5 * (value + af), 0.5 * (value - af)};
}

CMatrix mixing_matrix(int d, double m, double r) {
  check_dimension(d);
  if (d == 2) return m * pauli(3) + r * pauli(1);
  return m * kron(pauli(3), pauli(0)) + r * kron(pauli(1), pauli(3));
}

CMatrix coefficient_symbol(int d, double m, double r) {
  check_dimension(d);
  if (d == 2) return m * pauli(3) + r * pauli(1);
  return m * kron(pauli(3), pauli(3)) + r * kron(pauli(1), pauli(0));
}

CMatrix dirac_Lambda_matrix(int d, double lk, double lk1, double m, double r) {
  check_dimension(d);
  const double phi2 = r * r + m * m;
  const int n = (d == 2) ? 2 : 4;
  CMatrix out = 0.5 * (lk + lk1) * CMatrix::Identity(n, n);
  if (m != 0.0) out += (m / (2.0 * phi2)) * (lk - lk1) * mixing_matrix(d, m, r);
  return out;
}

EigenStructure extremiser_space(int d, double lk, double lk1, double m, double r) {
  check_dimension(d);
  const int n = (d == 2) ? 2 : 4;
  const double phi = std::sqrt(r * r + m * m);
  const double center = 0.5 * (lk + lk1);
  // Lambda = center I + gamma X with X^2 = phi^2 I.
  const double gamma = (m == 0.0) ? 0.0 : m / (2.0 * phi * phi) * (lk - lk1);
  const double spread = std::abs(gamma) * phi;
  EigenStructure es;
  es.max_eigenvalue = center + spread;
  for (int i = 0; i < n; ++i) es.full_spectrum.push_back(i < n / 2 ? center + spread : center - spread);
  if (gamma == 0.0) {
    for (int i = 0; i < n; ++i) es.max_eigenspace_basis.push_back(basis_vector(n, i));
    return es;
  }
  const double a = m + phi;
  const double norm = std::sqrt(a * a + r * r);
  const bool plus = gamma > 0.0;
  if (d == 2) {
    es.max_eigenspace_basis.push_back(plus ? make_vector({a / norm, r / norm})
                                           : make_vector({r / norm, -a / norm}));
  } else if (plus) {
    es.max_eigenspace_basis.push_back(make_vector({a / norm, 0.0, r / norm, 0.0}));
    es.max_eigenspace_basis.push_back(make_vector({0.0, a / norm, 0.0, -r / norm}));
  } else {
    es.max_eigenspace_basis.push_back(make_vector({r / norm, 0.0, -a / norm, 0.0}));
    es.max_eigenspace_basis.push_back(make_vector({0.0, r / norm, 0.0, a / norm}));
  }
  return es;
}

}  // namespace kysharp::dirac
