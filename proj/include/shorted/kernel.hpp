#pragma once

// Rank-revealing factorizations, pseudo-inverses, subspaces and the Loewner
// order, for both scalar backends. Float routes go through Eigen's SVD and
// Hermitian eigensolver; exact routes use Gauss-Jordan elimination and an
// LDL* factorization with diagonal pivoting, and never take square roots.

#include <algorithm>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "shorted/core.hpp"

namespace shorted {

namespace detail {

template <class S>
struct Echelon {
  Mat<S> reduced;             // reduced row echelon form
  std::vector<Index> pivots;  // pivot column of each nonzero row
};

// Gauss-Jordan elimination over Q(i).
template <class S>
Echelon<S> rref(Mat<S> m) {
  static_assert(is_exact_v<S>);
  std::vector<Index> pivots;
  Index r = 0;
  for (Index c = 0; c < m.cols() && r < m.rows(); ++c) {
    Index p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r) m.row(p).swap(m.row(r));
    const S inv = S(1) / m(r, c);
    for (Index j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (Index i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const S f = m(i, c);
      for (Index j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

struct FloatSvd {
  MatC U;             // thin left singular vectors
  Eigen::VectorXd s;  // singular values, descending
  MatC V;             // full right singular vectors
};

inline FloatSvd svd(const MatC& m) {
  FloatSvd out;
  if (m.rows() == 0 || m.cols() == 0) {
    out.U = MatC::Zero(m.rows(), 0);
    out.s = Eigen::VectorXd::Zero(0);
    out.V = MatC::Identity(m.cols(), m.cols());
    return out;
  }
  Eigen::JacobiSVD<MatC> dec(m, Eigen::ComputeThinU | Eigen::ComputeFullV);
  out.U = dec.matrixU();
  out.s = dec.singularValues();
  out.V = dec.matrixV();
  return out;
}

// Singular values above `abs_threshold` count toward the rank.
inline Index count_above(const Eigen::VectorXd& s, double abs_threshold) {
  Index r = 0;
  while (r < s.size() && s(r) > abs_threshold) ++r;
  return r;
}

inline double rank_threshold(const Eigen::VectorXd& s, const ToleranceProfile& tol) {
  return s.size() == 0 ? 0.0 : tol.rank_rel_threshold * s(0);
}

inline Eigen::VectorXd hermitian_eigenvalues(const MatC& h) {
  if (h.rows() == 0) return Eigen::VectorXd::Zero(0);
  Eigen::SelfAdjointEigenSolver<MatC> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

// Inverse of a nonsingular matrix by Gauss-Jordan on [M | I].
template <class S>
Mat<S> exact_inverse(const Mat<S>& m) {
  const Index n = m.rows();
  Echelon<S> e = rref(hstack<S>(m, Mat<S>::Identity(n, n)));
  require(static_cast<Index>(e.pivots.size()) == n && (n == 0 || e.pivots.back() == n - 1),
          ErrorKind::Internal, "exact_inverse: singular matrix");
  return e.reduced.rightCols(n);
}

}  // namespace detail

template <class S>
Index rank(const Mat<S>& m, const ToleranceProfile& tol = {}) {
  if constexpr (is_exact_v<S>) {
    return static_cast<Index>(detail::rref<S>(m).pivots.size());
  } else {
    const detail::FloatSvd d = detail::svd(m);
    return detail::count_above(d.s, detail::rank_threshold(d.s, tol));
  }
}

template <class S>
struct RankFactorization {
  Mat<S> F;  // full column rank, spans ran M
  Mat<S> G;
  Index rank() const { return F.cols(); }
};

/// M = F G with F of full column rank r = rank(M).
/// Exact: F = pivot columns of M, G = nonzero rows of rref(M).
/// Float: F = U_r Sigma_r, G = V_r* from a thresholded SVD.
template <class S>
RankFactorization<S> rank_factorization(const Mat<S>& m, const ToleranceProfile& tol = {}) {
  if constexpr (is_exact_v<S>) {
    const detail::Echelon<S> e = detail::rref<S>(m);
    const Index r = static_cast<Index>(e.pivots.size());
    Mat<S> f(m.rows(), r);
    for (Index k = 0; k < r; ++k) f.col(k) = m.col(e.pivots[k]);
    return {std::move(f), e.reduced.topRows(r)};
  } else {
    const detail::FloatSvd d = detail::svd(m);
    const Index r = detail::count_above(d.s, detail::rank_threshold(d.s, tol));
    MatC f = d.U.leftCols(r) * d.s.head(r).cast<Complex>().asDiagonal();
    MatC g = d.V.leftCols(r).adjoint();
    return {std::move(f), std::move(g)};
  }
}

/// Moore-Penrose inverse. Exact: M+ = G*(GG*)^-1 (F*F)^-1 F* on a full-rank
/// factorization. Float: thresholded SVD.
template <class S>
Mat<S> pseudo_inverse(const Mat<S>& m, const ToleranceProfile& tol = {}) {
  if constexpr (is_exact_v<S>) {
    const RankFactorization<S> rf = rank_factorization<S>(m, tol);
    if (rf.rank() == 0) return Mat<S>::Zero(m.cols(), m.rows());
    const Mat<S> fa = rf.F.adjoint();
    const Mat<S> ga = rf.G.adjoint();
    const Mat<S> ffi = detail::exact_inverse<S>(fa * rf.F);
    const Mat<S> ggi = detail::exact_inverse<S>(rf.G * ga);
    return ga * ggi * ffi * fa;
  } else {
    const detail::FloatSvd d = detail::svd(m);
    const Index r = detail::count_above(d.s, detail::rank_threshold(d.s, tol));
    const Eigen::VectorXd inv = d.s.head(r).cwiseInverse();
    return d.V.leftCols(r) * inv.cast<Complex>().asDiagonal() * d.U.leftCols(r).adjoint();
  }
}

/// Columns form a basis of ker M (orthonormal in float).
template <class S>
Mat<S> kernel_basis(const Mat<S>& m, const ToleranceProfile& tol = {}) {
  const Index n = m.cols();
  if constexpr (is_exact_v<S>) {
    const detail::Echelon<S> e = detail::rref<S>(m);
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (Index c : e.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
    Mat<S> basis = Mat<S>::Zero(n, n - static_cast<Index>(e.pivots.size()));
    Index k = 0;
    for (Index f = 0; f < n; ++f) {
      if (is_pivot[static_cast<std::size_t>(f)]) continue;
      basis(f, k) = S(1);
      for (std::size_t i = 0; i < e.pivots.size(); ++i)
        basis(e.pivots[i], k) = -e.reduced(static_cast<Index>(i), f);
      ++k;
    }
    return basis;
  } else {
    const detail::FloatSvd d = detail::svd(m);
    const Index r = detail::count_above(d.s, detail::rank_threshold(d.s, tol));
    return d.V.rightCols(n - r);
  }
}

/// Columns form a basis of ran M (orthonormal in float, pivot columns exactly).
template <class S>
Mat<S> range_basis(const Mat<S>& m, const ToleranceProfile& tol = {}) {
  if constexpr (is_exact_v<S>) {
    return rank_factorization<S>(m, tol).F;
  } else {
    const detail::FloatSvd d = detail::svd(m);
    return d.U.leftCols(detail::count_above(d.s, detail::rank_threshold(d.s, tol)));
  }
}

/// ran M ⊆ ran N, decided by rank(N) = rank([N | M]). In float both ranks use
/// the absolute threshold of the stacked matrix.
template <class S>
bool range_inclusion(const Mat<S>& m, const Mat<S>& n, const ToleranceProfile& tol = {}) {
  require(m.rows() == n.rows(), ErrorKind::Validation, "range_inclusion: row counts differ");
  const Mat<S> stacked = hstack<S>(n, m);
  if constexpr (is_exact_v<S>) {
    return rank<S>(n) == rank<S>(stacked);
  } else {
    const detail::FloatSvd ds = detail::svd(stacked);
    const double thr = detail::rank_threshold(ds.s, tol);
    const detail::FloatSvd dn = detail::svd(n);
    return detail::count_above(dn.s, thr) == detail::count_above(ds.s, thr);
  }
}

/// A linear subspace of C^n stored as a full-column-rank basis.
template <class S>
class Subspace {
 public:
  Subspace() = default;
  /// `basis` must have linearly independent columns.
  Subspace(Index ambient_dim, Mat<S> basis) : ambient_(ambient_dim), basis_(std::move(basis)) {
    require(basis_.rows() == ambient_, ErrorKind::Validation, "Subspace: basis has wrong row count");
  }

  static Subspace span(const Mat<S>& m, const ToleranceProfile& tol = {}) {
    return Subspace(m.rows(), range_basis<S>(m, tol));
  }
  static Subspace kernel(const Mat<S>& m, const ToleranceProfile& tol = {}) {
    return Subspace(m.cols(), kernel_basis<S>(m, tol));
  }
  static Subspace zero(Index n) { return Subspace(n, Mat<S>::Zero(n, 0)); }
  static Subspace whole(Index n) { return Subspace(n, Mat<S>::Identity(n, n)); }

  Index ambient_dim() const { return ambient_; }
  Index dim() const { return basis_.cols(); }
  const Mat<S>& basis() const { return basis_; }

  /// other ⊆ *this
  bool contains(const Subspace& other, const ToleranceProfile& tol = {}) const {
    require(other.ambient_ == ambient_, ErrorKind::Validation, "Subspace: ambient dimensions differ");
    return range_inclusion<S>(other.basis_, basis_, tol);
  }
  bool contains(const Vec<S>& v, const ToleranceProfile& tol = {}) const {
    return range_inclusion<S>(Mat<S>(v), basis_, tol);
  }
  bool equals(const Subspace& other, const ToleranceProfile& tol = {}) const {
    return contains(other, tol) && other.contains(*this, tol);
  }

  Subspace sum(const Subspace& other, const ToleranceProfile& tol = {}) const {
    return span(hstack<S>(basis_, other.basis_), tol);
  }

  /// Kernel of [B1 | -B2] gives the coefficient pairs of common vectors.
  Subspace intersect(const Subspace& other, const ToleranceProfile& tol = {}) const {
    require(other.ambient_ == ambient_, ErrorKind::Validation, "Subspace: ambient dimensions differ");
    const Mat<S> coeffs = kernel_basis<S>(hstack<S>(basis_, Mat<S>(-other.basis_)), tol);
    return span(Mat<S>(basis_ * coeffs.topRows(dim())), tol);
  }

  Subspace orthogonal_complement(const ToleranceProfile& tol = {}) const {
    if (dim() == 0) return whole(ambient_);
    return kernel(Mat<S>(basis_.adjoint()), tol);
  }

 private:
  Index ambient_ = 0;
  Mat<S> basis_;
};

/// P = B (B*B)^-1 B* for a basis B, so P = P* = P^2 and ran P = S.
template <class S>
Mat<S> orthoprojector(const Subspace<S>& s) {
  const Mat<S>& b = s.basis();
  if (s.dim() == 0) return Mat<S>::Zero(s.ambient_dim(), s.ambient_dim());
  if constexpr (is_exact_v<S>) {
    return b * detail::exact_inverse<S>(b.adjoint() * b) * b.adjoint();
  } else {
    return symmetrized<S>(b * (b.adjoint() * b).inverse() * b.adjoint());
  }
}

/// Spectral norm of a Hermitian float matrix (largest |eigenvalue|).
inline double hermitian_norm(const MatC& h) {
  const Eigen::VectorXd ev = detail::hermitian_eigenvalues(h);
  return ev.size() == 0 ? 0.0 : std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

/// Operator (spectral) norm of a float matrix.
inline double operator_norm(const MatC& m) {
  const detail::FloatSvd d = detail::svd(m);
  return d.s.size() == 0 ? 0.0 : d.s(0);
}

namespace detail {

// LDL* with diagonal pivoting: eliminate on any positive diagonal entry; a
// negative diagonal entry refutes PSD; once every remaining diagonal entry is
// zero the remaining block must vanish.
template <class S>
bool exact_psd(Mat<S> w) {
  Index n = w.rows();
  while (n > 0) {
    Index piv = -1;
    for (Index i = 0; i < n; ++i) {
      const int sign = sgn(w(i, i).re());
      if (sign < 0) return false;
      if (sign > 0 && piv < 0) piv = i;
    }
    if (piv < 0) return is_zero_matrix<S>(Mat<S>(w.topLeftCorner(n, n)));
    const S d = w(piv, piv);
    for (Index j = 0; j < n; ++j) {
      if (j == piv || w(piv, j).is_zero()) continue;
      const S f = w(j, piv) / d;
      for (Index k = 0; k < n; ++k) w(j, k) -= f * w(piv, k);
    }
    // Move the last active row/column into the pivot slot.
    w.row(piv).head(n).swap(w.row(n - 1).head(n));
    w.col(piv).head(n).swap(w.col(n - 1).head(n));
    --n;
  }
  return true;
}

}  // namespace detail

/// Float: min eigenvalue >= -psd_rel_slack * scale, where scale defaults to
/// the largest |eigenvalue| (1 for the zero matrix). Rational: exact LDL*.
/// Throws Validation ("not Hermitian") for non-Hermitian input.
template <class S>
bool is_psd(const Mat<S>& h_in, const ToleranceProfile& tol = {}, double scale = 0.0) {
  const Mat<S> h = hermitian<S>(h_in);
  if constexpr (is_exact_v<S>) {
    (void)tol;
    (void)scale;
    return detail::exact_psd<S>(h);
  } else {
    const Eigen::VectorXd ev = detail::hermitian_eigenvalues(h);
    if (ev.size() == 0) return true;
    if (scale <= 0.0) {
      scale = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
      if (scale == 0.0) scale = 1.0;
    }
    return ev(0) >= -tol.psd_rel_slack * scale;
  }
}

/// H1 <= H2 iff H2 - H1 is PSD. In float the slack is scaled by
/// max(|H1|, |H2|) in spectral norm (1 if both vanish), unless `scale` is given.
template <class S>
bool loewner_leq(const Mat<S>& h1, const Mat<S>& h2, const ToleranceProfile& tol = {},
                 double scale = 0.0) {
  require(h1.rows() == h2.rows() && h1.cols() == h2.cols(), ErrorKind::Validation,
          "loewner_leq: dimension mismatch");
  if constexpr (!is_exact_v<S>) {
    if (scale <= 0.0) {
      scale = std::max(hermitian_norm(hermitian<S>(h1)), hermitian_norm(hermitian<S>(h2)));
      if (scale == 0.0) scale = 1.0;
    }
  }
  return is_psd<S>(Mat<S>(h2 - h1), tol, scale);
}

}  // namespace shorted
