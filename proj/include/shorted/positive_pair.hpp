#pragma once

// Positive pairs (A, B): A PSD with ran B ⊆ ran A. Carries T = R*[-1] B and
// omega(A, B) = T*T = B* A^+ B.

#include <optional>
#include <string>

#include "shorted/square_root.hpp"

namespace shorted {

/// How omega is computed. SquareRoot materializes T (float only);
/// PseudoInverse uses B* A^+ B and works on both backends.
enum class OmegaRoute { SquareRoot, PseudoInverse };

template <class S>
struct PairDiagnostic {
  bool kernel_condition = false;  // (i)  ker A ⊆ ker B*
  bool sup_finite = false;        // (ii) sup_x |<By,x>|^2 / <Ax,x> < inf for every y
  bool positive = false;
  std::string message;
};

template <class S>
struct PositivePairData {
  Mat<S> A;
  Mat<S> B;
  std::optional<Mat<S>> T;  // h x n_Y, present on the square-root route
  std::optional<Mat<S>> R;  // the minimal root T refers to
  Mat<S> omega;
  OmegaRoute route = OmegaRoute::PseudoInverse;
};

namespace detail {

template <class S>
Mat<S> require_psd(const Mat<S>& a, const ToleranceProfile& tol, const char* what, double scale = 0.0) {
  Mat<S> h = hermitian<S>(a);
  require(is_psd<S>(h, tol, scale), ErrorKind::Validation, what);
  return h;
}

}  // namespace detail

/// Decides (A, B) positive by ran B ⊆ ran A; the diagnostic evaluates the
/// kernel condition (i) separately. Throws if A is not PSD (float slack
/// scaled by `psd_scale` when given).
template <class S>
PairDiagnostic<S> check_positive_pair(const Mat<S>& a_in, const Mat<S>& b, const ToleranceProfile& tol = {},
                                      double psd_scale = 0.0) {
  const Mat<S> a = detail::require_psd<S>(a_in, tol, "A not non-negative", psd_scale);
  require(b.rows() == a.rows(), ErrorKind::Validation, "check_positive_pair: B must have n_X rows");
  PairDiagnostic<S> out;
  const Mat<S> ker = kernel_basis<S>(a, tol);
  const Mat<S> leak = b.adjoint() * ker;
  if constexpr (is_exact_v<S>) {
    out.kernel_condition = is_zero_matrix<S>(leak);
  } else {
    out.kernel_condition = max_abs(leak) <= 1e-8 * std::max({1.0, max_abs(a), max_abs(b)});
  }
  out.sup_finite = range_inclusion<S>(b, a, tol);
  out.positive = out.sup_finite;
  if (!out.kernel_condition) {
    out.message = "(i) fails: ker A ⊄ ker B*";
  } else if (!out.sup_finite) {
    out.message = "(ii) fails: sup is infinite";
  } else {
    out.message = "positive pair";
  }
  return out;
}

template <class S>
Mat<S> omega_pinv(const Mat<S>& a, const Mat<S>& b, const ToleranceProfile& tol = {}) {
  return symmetrized<S>(b.adjoint() * pseudo_inverse<S>(a, tol) * b);
}

/// omega from an arbitrary square root R of A: T = (R*)^+ B, omega = T*T.
template <class S>
Mat<S> omega_from_root(const Mat<S>& r, const Mat<S>& b, const ToleranceProfile& tol = {}) {
  const Mat<S> t = pseudo_inverse<S>(Mat<S>(r.adjoint()), tol) * b;
  return symmetrized<S>(t.adjoint() * t);
}

template <class S>
PositivePairData<S> build_pair(const Mat<S>& a_in, const Mat<S>& b, OmegaRoute route = OmegaRoute::PseudoInverse,
                               const ToleranceProfile& tol = {}) {
  const PairDiagnostic<S> diag = check_positive_pair<S>(a_in, b, tol);
  require(diag.positive, ErrorKind::NotPositivePair, "not a positive pair: " + diag.message);
  PositivePairData<S> out;
  out.A = hermitian<S>(a_in);
  out.B = b;
  out.route = route;
  if (route == OmegaRoute::SquareRoot) {
    detail::require_float<S>("build_pair(square-root route)");
    const Mat<S> r = minimal_square_root<S>(out.A, tol).R;
    Mat<S> t = pseudo_inverse<S>(Mat<S>(r.adjoint()), tol) * b;
    out.omega = symmetrized<S>(t.adjoint() * t);
    out.T = std::move(t);
    out.R = r;
  } else {
    out.omega = omega_pinv<S>(out.A, b, tol);
  }
  return out;
}

template <class S>
struct SupRatio {
  S value;           // <omega y, y>
  Vec<S> maximizer;  // x* = A^+ B y
};

/// sup_x |<By,x>|^2 / <Ax,x> = <omega y, y>, attained at x* = A^+ B y
/// (zero vector when the value is 0).
template <class S>
SupRatio<S> sup_ratio(const PositivePairData<S>& pair, const Vec<S>& y, const ToleranceProfile& tol = {}) {
  require(y.size() == pair.B.cols(), ErrorKind::Validation, "sup_ratio: y has wrong length");
  SupRatio<S> out;
  out.value = (y.adjoint() * pair.omega * y)(0, 0);
  if constexpr (!is_exact_v<S>) out.value = Complex(out.value.real(), 0.0);
  out.maximizer = pseudo_inverse<S>(pair.A, tol) * pair.B * y;
  bool zero;
  if constexpr (is_exact_v<S>) {
    zero = out.value.is_zero();
  } else {
    zero = std::abs(out.value) <= 1e-14 * (1.0 + max_abs(pair.omega));
  }
  if (zero) out.maximizer.setZero();
  return out;
}

template <class S>
struct SubadditivityReport {
  bool sum_is_pair = false;
  Mat<S> lhs;  // omega(A1 + A2, B1 + B2)
  Mat<S> rhs;  // omega(A1, B1) + omega(A2, B2)
  bool holds = false;
};

template <class S>
SubadditivityReport<S> omega_subadditivity_check(const PositivePairData<S>& p1, const PositivePairData<S>& p2,
                                                 const ToleranceProfile& tol = {}) {
  require(p1.A.rows() == p2.A.rows() && p1.B.cols() == p2.B.cols(), ErrorKind::Validation,
          "omega_subadditivity_check: shapes differ");
  SubadditivityReport<S> out;
  const Mat<S> a = p1.A + p2.A;
  const Mat<S> b = p1.B + p2.B;
  out.rhs = p1.omega + p2.omega;
  out.sum_is_pair = check_positive_pair<S>(a, b, tol).positive;
  if (!out.sum_is_pair) return out;
  out.lhs = omega_pinv<S>(a, b, tol);
  out.holds = loewner_leq<S>(out.lhs, out.rhs, tol);
  return out;
}

}  // namespace shorted
