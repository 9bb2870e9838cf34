#include "shorted/oracles.hpp"

#include <Eigen/Eigenvalues>

namespace shorted::oracle {

namespace {

Eigen::VectorXd real_eigenvalues(const MatC& h) {
  if (h.rows() == 0) return Eigen::VectorXd::Zero(0);
  Eigen::ComplexEigenSolver<MatC> es(h, false);
  return es.eigenvalues().real();
}

Rational trace(const MatQ& m) {
  Rational t;
  for (Index i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

}  // namespace

double min_eigenvalue(const MatC& h) {
  const Eigen::VectorXd ev = real_eigenvalues(h);
  return ev.size() == 0 ? 0.0 : ev.minCoeff();
}

double spectral_radius(const MatC& h) {
  const Eigen::VectorXd ev = real_eigenvalues(h);
  return ev.size() == 0 ? 0.0 : ev.cwiseAbs().maxCoeff();
}

bool psd_by_eigenvalues(const MatC& h, double rel) {
  double scale = spectral_radius(h);
  if (scale == 0.0) scale = 1.0;
  return min_eigenvalue(h) >= -rel * scale;
}

std::vector<Rational> characteristic_polynomial(const MatQ& h) {
  const Index n = h.rows();
  std::vector<Rational> c(static_cast<std::size_t>(n) + 1);
  c[0] = Rational(1);
  MatQ m = MatQ::Zero(n, n);
  for (Index k = 1; k <= n; ++k) {
    m = h * m;
    for (Index i = 0; i < n; ++i) m(i, i) += c[static_cast<std::size_t>(k - 1)];
    c[static_cast<std::size_t>(k)] = -trace(MatQ(h * m)) / Rational(static_cast<long>(k));
  }
  return c;
}

bool psd_by_principal_minors(const MatQ& h) {
  const std::vector<Rational> c = characteristic_polynomial(h);
  for (std::size_t k = 0; k < c.size(); ++k) {
    const int sign = sgn(c[k].re());
    if (k % 2 == 0 ? sign < 0 : sign > 0) return false;
  }
  return true;
}

double descent_infimum(const MatC& a, const MatC& b, const MatC& d, const VecC& x, const VecC& y, int sweeps) {
  const Index n = a.rows();
  VecC u = x;
  const VecC by = b * y;
  // g = A u + B y is kept up to date; an exact step along u_i changes it by -step * A e_i.
  VecC g = a * u + by;
  const double stop = 1e-13 * (1.0 + a.cwiseAbs().maxCoeff() + by.cwiseAbs().maxCoeff());
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    double largest = 0.0;
    for (Index i = 0; i < n; ++i) {
      const double aii = a(i, i).real();
      if (aii <= 0.0) continue;
      largest = std::max(largest, std::abs(g(i)));
      const Complex step = g(i) / aii;
      u(i) -= step;
      g -= step * a.col(i);
    }
    if (largest <= stop) break;
  }
  return (u.adjoint() * a * u)(0, 0).real() + 2.0 * u.dot(by).real() + (y.adjoint() * d * y)(0, 0).real();
}

Index exact_rank(const MatQ& m_in) {
  MatQ m = m_in;
  Index r = 0;
  for (Index c = 0; c < m.cols() && r < m.rows(); ++c) {
    Index p = -1;
    for (Index i = r; i < m.rows(); ++i)
      if (!m(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    m.row(p).swap(m.row(r));
    for (Index i = r + 1; i < m.rows(); ++i) {
      if (m(i, c).is_zero()) continue;
      const Rational f = m(i, c) / m(r, c);
      for (Index j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

}  // namespace shorted::oracle
