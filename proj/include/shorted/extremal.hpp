#pragma once

// Extremal (S(M) = 0) and doubly extremal operators.

#include "shorted/rng.hpp"
#include "shorted/schur.hpp"

namespace shorted {

namespace detail {

template <class S>
bool sigma_vanishes(const Block2<S>& m, const Mat<S>& sigma) {
  if constexpr (is_exact_v<S>) {
    return is_zero_matrix<S>(sigma);
  } else {
    return max_abs(sigma) <= 1e-9 * (1.0 + max_abs(m.D));
  }
}

template <class S>
Block2<S> require_psd_block(const Block2<S>& m, const ToleranceProfile& tol) {
  const Block2<S> h = Block2<S>::split(m.assembled(), m.nx());
  require(is_psd<S>(h.assembled(), tol), ErrorKind::Validation, "not non-negative");
  return h;
}

}  // namespace detail

/// S(M) = 0, i.e. D = omega(A, B). Float: max|sigma| <= 1e-9 (1 + max|D|).
template <class S>
bool is_extremal(const Block2<S>& m_in, const ToleranceProfile& tol = {}) {
  const Block2<S> m = detail::require_psd_block(m_in, tol);
  return detail::sigma_vanishes(m, schur_complement<S>(m, OmegaRoute::PseudoInverse, tol).sigma);
}

/// omega(omega(A, B), B*). PseudoInverse route: B omega^+ B*. SquareRoot
/// route (float): R* P_B R with P_B the orthoprojector onto ran T.
template <class S>
Mat<S> double_omega(const Mat<S>& a, const Mat<S>& b, OmegaRoute route = OmegaRoute::PseudoInverse,
                    const ToleranceProfile& tol = {}) {
  const PositivePairData<S> pair = build_pair<S>(a, b, route, tol);
  if (route == OmegaRoute::SquareRoot) {
    const Mat<S>& r = *pair.R;
    const Mat<S> pb = orthoprojector<S>(Subspace<S>::span(*pair.T, tol));
    return symmetrized<S>(r.adjoint() * pb * r);
  }
  const Mat<S> bstar = b.adjoint();
  require(check_positive_pair<S>(pair.omega, bstar, tol).positive, ErrorKind::Internal,
          "(omega(A,B), B*) is not a positive pair");
  return omega_pinv<S>(pair.omega, bstar, tol);
}

/// double_omega(A, B) = A. Cross-checked against rank(omega) = rank(A);
/// a disagreement throws Internal.
template <class S>
bool is_doubly_extremal(const Mat<S>& a, const Mat<S>& b, const ToleranceProfile& tol = {}) {
  const Mat<S> dbl = double_omega<S>(a, b, OmegaRoute::PseudoInverse, tol);
  const bool by_identity = approx_equal<S>(dbl, hermitian<S>(a), 1e-9);
  const bool by_rank = rank<S>(omega_pinv<S>(a, b, tol), tol) == rank<S>(a, tol);
  require(by_identity == by_rank, ErrorKind::Internal, "doubly extremal: identity and rank criteria disagree");
  return by_identity;
}

/// H1 = ran R ∩ ker T* for a minimal square root R of A (float only).
/// dim H1 = 0 iff the pair is doubly extremal; a mismatch throws Internal.
template <class S>
Subspace<S> h1_subspace(const Mat<S>& a, const Mat<S>& b, const ToleranceProfile& tol = {}) {
  if constexpr (is_exact_v<S>) {
    throw detail::unsupported("h1_subspace");
  } else {
    const PositivePairData<S> pair = build_pair<S>(a, b, OmegaRoute::SquareRoot, tol);
    const MatC& r = *pair.R;
    const MatC& t = *pair.T;
    const Subspace<S> ran_r = Subspace<S>::span(r, tol);
    const Subspace<S> ker_tstar = t.cols() == 0 ? Subspace<S>::whole(r.rows())
                                                : Subspace<S>::kernel(MatC(t.adjoint()), tol);
    Subspace<S> h1 = ran_r.intersect(ker_tstar, tol);
    require((h1.dim() == 0) == is_doubly_extremal<S>(a, b, tol), ErrorKind::Internal,
            "dim H1 = 0 disagrees with double extremality");
    return h1;
  }
}

template <class S>
struct KernelEqualityReport {
  Subspace<S> ker_a;
  Subspace<S> ker_bstar;
  bool kernels_equal = false;
  bool doubly_extremal = false;
  bool equivalence_holds = false;  // kernels_equal == doubly_extremal
};

template <class S>
KernelEqualityReport<S> kernel_equality_check(const Mat<S>& a, const Mat<S>& b, const ToleranceProfile& tol = {}) {
  KernelEqualityReport<S> out;
  out.doubly_extremal = is_doubly_extremal<S>(a, b, tol);
  out.ker_a = Subspace<S>::kernel(a, tol);
  out.ker_bstar = b.cols() == 0 ? Subspace<S>::whole(a.rows()) : Subspace<S>::kernel(Mat<S>(b.adjoint()), tol);
  out.kernels_equal = out.ker_a.equals(out.ker_bstar, tol);
  out.equivalence_holds = out.kernels_equal == out.doubly_extremal;
  return out;
}

template <class S>
struct ExtremalityReport {
  bool sigma_zero = false;           // (i)
  bool variational_vanishes = false; // (ii)
  bool rx_spans_ran_r = false;       // (iii)
  bool range_misses_y = false;       // (iv)
  bool criteria_agree = false;
  bool is_extremal = false;
  bool is_doubly_extremal = false;   // of the pair (A, B), i.e. of M_ex
  Mat<S> double_omega;
  Index h1_dim = 0;
};

/// Evaluates the four equivalent extremality criteria on a PSD block matrix.
/// (ii) samples y over the standard basis plus random vectors; since sigma
/// is PSD, vanishing on the basis already forces sigma = 0. (iii) compares
/// ran R_X with ran R for a square root R in float; the exact backend uses
/// the equivalent rank identity rank(A) = rank(M).
template <class S>
ExtremalityReport<S> extremality_criteria(const Block2<S>& m_in, const ToleranceProfile& tol = {},
                                          std::uint64_t seed = 0x5eed) {
  const Block2<S> m = detail::require_psd_block(m_in, tol);
  ExtremalityReport<S> out;
  out.sigma_zero = detail::sigma_vanishes(m, schur_complement<S>(m, OmegaRoute::PseudoInverse, tol).sigma);

  Rng rng(seed);
  auto draw = [&rng]() {
    if constexpr (is_exact_v<S>) {
      const auto p = rng.uniform_int(-10, 10);
      const auto q = rng.uniform_int(1, 10);
      const auto r = rng.uniform_int(-10, 10);
      const auto s = rng.uniform_int(1, 10);
      return S(mpq_class(p, static_cast<unsigned long>(q)), mpq_class(r, static_cast<unsigned long>(s)));
    } else {
      const double re = rng.symmetric();
      return Complex(re, rng.symmetric());
    }
  };
  const double eps = 1e-9 * (1.0 + max_abs(m.assembled()));
  out.variational_vanishes = true;
  for (Index k = 0; k < m.ny() + 3; ++k) {
    Vec<S> x(m.nx());
    Vec<S> y = Vec<S>::Zero(m.ny());
    for (Index i = 0; i < m.nx(); ++i) x(i) = draw();
    if (k < m.ny()) {
      y(k) = S(1);
    } else {
      for (Index i = 0; i < m.ny(); ++i) y(i) = draw();
    }
    const S v = variational_value<S>(m, x, y, tol);
    if constexpr (is_exact_v<S>) {
      out.variational_vanishes = out.variational_vanishes && v.is_zero();
    } else {
      out.variational_vanishes = out.variational_vanishes && std::abs(v) < eps * (1.0 + y.squaredNorm());
    }
  }

  if constexpr (is_exact_v<S>) {
    out.rx_spans_ran_r = rank<S>(m.A, tol) == rank<S>(m.assembled(), tol);
  } else {
    const MatC r = minimal_square_root<S>(m.assembled(), tol).R;
    out.rx_spans_ran_r = Subspace<S>::span(MatC(r.leftCols(m.nx())), tol).equals(Subspace<S>::span(r, tol), tol);
  }
  out.range_misses_y = range_meets_y<S>(m, tol).dim() == 0;

  out.is_extremal = out.sigma_zero;
  out.criteria_agree = out.sigma_zero == out.variational_vanishes && out.sigma_zero == out.rx_spans_ran_r &&
                       out.sigma_zero == out.range_misses_y;
  out.double_omega = double_omega<S>(m.A, m.B, OmegaRoute::PseudoInverse, tol);
  out.is_doubly_extremal = is_doubly_extremal<S>(m.A, m.B, tol);
  if constexpr (is_exact_v<S>) {
    // dim H1 = h - rank T with h = rank A and rank T = rank B for a minimal root.
    out.h1_dim = rank<S>(m.A, tol) - rank<S>(m.B, tol);
  } else {
    out.h1_dim = h1_subspace<S>(m.A, m.B, tol).dim();
  }
  return out;
}

}  // namespace shorted
