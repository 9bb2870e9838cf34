#pragma once

// Square roots A = R*R of PSD matrices, the generalized inverse R*[-1], and
// the factorization/range results built on them. Every operation that needs
// an actual square root is float-only; the exact backend throws Unsupported.

#include <cmath>
#include <cstdint>
#include <limits>

#include <Eigen/QR>

#include "shorted/kernel.hpp"
#include "shorted/rng.hpp"

namespace shorted {

template <class S>
struct SquareRootFactor {
  Mat<S> R;              // h x n, A = R* R
  bool minimal = false;  // rank(R) == h, i.e. ran R is all of H = C^h
  Index hilbert_dim() const { return R.rows(); }
};

namespace detail {

inline Error unsupported(const char* what) {
  return Error(ErrorKind::Unsupported, std::string(what) + ": square roots unsupported on exact backend");
}

template <class S>
void require_float(const char* what) {
  if constexpr (is_exact_v<S>) throw unsupported(what);
}

inline MatC require_nonnegative(const MatC& a, const ToleranceProfile& tol) {
  MatC h = hermitian<Complex>(a);
  require(is_psd<Complex>(h, tol), ErrorKind::Validation, "not non-negative");
  return h;
}

// Unitary h x h matrix from the QR factorization of a seeded random matrix.
inline MatC random_unitary(Index h, std::uint64_t seed) {
  Rng rng(seed);
  MatC g(h, h);
  for (Index j = 0; j < h; ++j)
    for (Index i = 0; i < h; ++i) {
      const double re = rng.symmetric();
      g(i, j) = Complex(re, rng.symmetric());
    }
  if (h == 0) return g;
  Eigen::HouseholderQR<MatC> qr(g);
  return qr.householderQ() * MatC::Identity(h, h);
}

}  // namespace detail

/// Minimal square root from the Hermitian eigendecomposition A = V L V*:
/// R = L+^{1/2} V+* over the eigenpairs above the rank threshold.
template <class S>
SquareRootFactor<S> minimal_square_root(const Mat<S>& a, const ToleranceProfile& tol = {}) {
  if constexpr (is_exact_v<S>) {
    throw detail::unsupported("minimal_square_root");
  } else {
    const MatC h = detail::require_nonnegative(a, tol);
    const Index n = h.rows();
    if (n == 0) return {MatC::Zero(0, 0), true};
    Eigen::SelfAdjointEigenSolver<MatC> es(h);
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double top = std::max(std::abs(ev(0)), std::abs(ev(n - 1)));
    const double thr = tol.rank_rel_threshold * top;
    Index first = 0;
    while (first < n && ev(first) <= thr) ++first;
    const Index r = n - first;
    MatC root(r, n);
    for (Index k = 0; k < r; ++k)
      root.row(k) = std::sqrt(ev(first + k)) * es.eigenvectors().col(first + k).adjoint();
    return {std::move(root), true};
  }
}

/// Minimal square root from a diagonally pivoted Cholesky factorization
/// A = L L*, R = L*. Stops once the largest remaining pivot falls below the
/// rank threshold relative to the largest diagonal entry.
template <class S>
SquareRootFactor<S> cholesky_square_root(const Mat<S>& a, const ToleranceProfile& tol = {}) {
  if constexpr (is_exact_v<S>) {
    throw detail::unsupported("cholesky_square_root");
  } else {
    MatC w = detail::require_nonnegative(a, tol);
    const Index n = w.rows();
    const double top = n == 0 ? 0.0 : w.diagonal().real().maxCoeff();
    MatC l = MatC::Zero(n, n);
    Index step = 0;
    while (step < n) {
      Index p = 0;
      const double d = w.diagonal().real().maxCoeff(&p);
      if (d <= tol.rank_rel_threshold * top) break;
      const VecC col = w.col(p) / std::sqrt(d);
      l.col(step) = col;
      w -= col * col.adjoint();
      ++step;
    }
    return {MatC(l.leftCols(step).adjoint()), true};
  }
}

/// Square root of height rank(A) + pad: the minimal root with `pad` zero rows
/// appended, mixed by a seeded random unitary. Minimal only when pad == 0.
template <class S>
SquareRootFactor<S> nonminimal_square_root(const Mat<S>& a, Index pad, std::uint64_t seed = 1,
                                           const ToleranceProfile& tol = {}) {
  require(pad >= 0, ErrorKind::Validation, "nonminimal_square_root: negative pad");
  if constexpr (is_exact_v<S>) {
    throw detail::unsupported("nonminimal_square_root");
  } else {
    const SquareRootFactor<S> base = minimal_square_root<S>(a, tol);
    const Index h = base.hilbert_dim() + pad;
    MatC padded = MatC::Zero(h, a.cols());
    padded.topRows(base.hilbert_dim()) = base.R;
    return {detail::random_unitary(h, seed) * padded, pad == 0};
  }
}

/// The unique h in ran R with R* h = x'. Throws OutsideRange if x' is not in ran R*.
template <class S>
Vec<S> generalized_inverse_apply(const SquareRootFactor<S>& rf, const Vec<S>& xprime,
                                 const ToleranceProfile& tol = {}) {
  const Mat<S> rstar = rf.R.adjoint();
  require(xprime.size() == rstar.rows(), ErrorKind::Validation, "generalized_inverse_apply: size mismatch");
  require(range_inclusion<S>(Mat<S>(xprime), rstar, tol), ErrorKind::OutsideRange, "outside ran R∗");
  return pseudo_inverse<S>(rstar, tol) * xprime;
}

/// Two independently computed witnesses for x' in ran R*: (i) x' annihilates
/// ker R, (ii) sup_x |<x',x>|^2 / |Rx|^2 is finite, which holds iff the
/// least-squares solution of R* h = x' is exact, and then equals |h|^2.
template <class S>
struct MembershipCertificate {
  bool member = false;
  bool annihilates_kernel = false;
  bool sup_finite = false;
  double sup = std::numeric_limits<double>::infinity();
};

template <class S>
MembershipCertificate<S> membership_ran_rstar(const SquareRootFactor<S>& rf, const Vec<S>& xprime,
                                              const ToleranceProfile& tol = {}) {
  const Mat<S> rstar = rf.R.adjoint();
  require(xprime.size() == rstar.rows(), ErrorKind::Validation, "membership_ran_rstar: size mismatch");
  MembershipCertificate<S> out;
  out.member = range_inclusion<S>(Mat<S>(xprime), rstar, tol);

  const Mat<S> ker = kernel_basis<S>(rf.R, tol);
  const Mat<S> pairings = ker.adjoint() * xprime;
  const Vec<S> h = pseudo_inverse<S>(rstar, tol) * xprime;
  const Vec<S> residual = rstar * h - xprime;
  if constexpr (is_exact_v<S>) {
    out.annihilates_kernel = is_zero_matrix<S>(pairings);
    out.sup_finite = is_zero_matrix<S>(Mat<S>(residual));
    if (out.sup_finite) out.sup = real(S((h.adjoint() * h)(0, 0))).get_d();
  } else {
    const double scale = std::max(1.0, max_abs(xprime));
    out.annihilates_kernel = max_abs(pairings) <= 1e-8 * scale;
    out.sup_finite = max_abs(residual) <= 1e-8 * scale;
    if (out.sup_finite) out.sup = h.squaredNorm();
  }
  return out;
}

template <class S>
struct DouglasFactorization {
  Mat<S> W;        // h_D x h_A with R_A* = R_D* W
  double alpha = 0.0;
  double op_norm_W = 0.0;
  Mat<S> RA;       // minimal square roots the factorization refers to
  Mat<S> RD;
};

/// W = (R_D*)^+ R_A*, the unique operator with R_A* = R_D* W, ran W ⊆ ran R_D,
/// ker W = ker R_A*, |W| <= alpha. Throws OrderViolated unless A <= alpha^2 D.
template <class S>
DouglasFactorization<S> douglas_factorization(const Mat<S>& a, const Mat<S>& d, double alpha,
                                              const ToleranceProfile& tol = {}) {
  require(alpha >= 0.0, ErrorKind::Validation, "douglas_factorization: alpha must be nonnegative");
  if constexpr (is_exact_v<S>) {
    throw detail::unsupported("douglas_factorization");
  } else {
    const MatC ha = detail::require_nonnegative(a, tol);
    const MatC hd = detail::require_nonnegative(d, tol);
    require(loewner_leq<S>(ha, MatC(alpha * alpha * hd), tol), ErrorKind::OrderViolated, "A ≰ α²D");
    DouglasFactorization<S> out;
    out.RA = minimal_square_root<S>(ha, tol).R;
    out.RD = minimal_square_root<S>(hd, tol).R;
    out.W = pseudo_inverse<S>(MatC(out.RD.adjoint()), tol) * out.RA.adjoint();
    out.alpha = alpha;
    out.op_norm_W = operator_norm(out.W);
    return out;
  }
}

/// Minimum-norm least-squares solution of R_D* W = R_A* via a complete
/// orthogonal decomposition; an independent route to the Douglas factor.
inline MatC douglas_least_squares(const MatC& ra, const MatC& rd) {
  const MatC rd_star = rd.adjoint();
  if (rd_star.cols() == 0 || ra.rows() == 0) return MatC::Zero(rd.rows(), ra.rows());
  Eigen::CompleteOrthogonalDecomposition<MatC> cod(rd_star);
  return cod.solve(MatC(ra.adjoint()));
}

/// Isometry U: H_S -> H_R with U S = R, for a minimal S factoring the same A.
/// Since S has full row rank, U = R S^+ and U*U = (S S^+)* (S S^+) = I.
template <class S>
Mat<S> linking_isometry(const SquareRootFactor<S>& r, const SquareRootFactor<S>& s,
                        const ToleranceProfile& tol = {}) {
  detail::require_float<S>("linking_isometry");
  require(s.minimal, ErrorKind::Validation, "linking_isometry: second factor must be minimal");
  require(r.R.cols() == s.R.cols(), ErrorKind::Validation, "linking_isometry: factors act on different spaces");
  require(approx_equal<S>(Mat<S>(r.R.adjoint() * r.R), Mat<S>(s.R.adjoint() * s.R), 1e-9),
          ErrorKind::Validation, "linking_isometry: factors disagree");
  return r.R * pseudo_inverse<S>(s.R, tol);
}

template <class S>
struct RangeAdditivityReport {
  Subspace<S> ran_rstar;   // ran R* for a square root of A = R1*R1 + R2*R2
  Subspace<S> ran_r1star;
  Subspace<S> ran_r2star;
  Subspace<S> sum;         // ran R1* + ran R2*
  bool holds = false;
};

/// ran R* = ran R1* + ran R2*. Float builds a minimal root of A; the exact
/// backend uses ran R* = ran A, which holds for every square root.
template <class S>
RangeAdditivityReport<S> verify_range_additivity(const Mat<S>& r1, const Mat<S>& r2,
                                                 const ToleranceProfile& tol = {}) {
  require(r1.cols() == r2.cols(), ErrorKind::Validation, "verify_range_additivity: column counts differ");
  const Mat<S> a = r1.adjoint() * r1 + r2.adjoint() * r2;
  RangeAdditivityReport<S> out;
  if constexpr (is_exact_v<S>) {
    out.ran_rstar = Subspace<S>::span(a, tol);
  } else {
    out.ran_rstar = Subspace<S>::span(Mat<S>(minimal_square_root<S>(a, tol).R.adjoint()), tol);
  }
  out.ran_r1star = Subspace<S>::span(Mat<S>(r1.adjoint()), tol);
  out.ran_r2star = Subspace<S>::span(Mat<S>(r2.adjoint()), tol);
  out.sum = out.ran_r1star.sum(out.ran_r2star, tol);
  out.holds = out.ran_rstar.equals(out.sum, tol);
  return out;
}

}  // namespace shorted
