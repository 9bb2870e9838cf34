#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "shorted/scalar.hpp"

namespace shorted {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using MatC = Mat<Complex>;
using VecC = Vec<Complex>;
using MatQ = Mat<Rational>;
using VecQ = Vec<Rational>;

using Index = Eigen::Index;

enum class ErrorKind {
  Parse,             // malformed input document
  Validation,        // shape mismatch, non-Hermitian, non-PSD where PSD is required
  NotPositivePair,   // range condition of a positive pair fails
  SigmaIndefinite,   // Schur complement exists but is not PSD
  OrderViolated,     // Loewner precondition fails
  OutsideRange,      // vector not in ran R*
  Unsupported,       // operation unavailable on this backend
  Internal           // a proved identity failed; treat as a bug
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Thresholds for numerical decisions. The rational backend ignores them.
struct ToleranceProfile {
  double rank_rel_threshold = 1e-10;
  double psd_rel_slack = 1e-8;
};

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) throw Error(kind, what);
}

/// Largest entry magnitude, as a double (0 for empty matrices).
template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  using S = typename Derived::Scalar;
  double out = 0.0;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) out = std::max(out, scalar_traits<S>::magnitude(m(i, j)));
  return out;
}

template <class S>
bool is_zero_matrix(const Mat<S>& m, double abs_tol = 0.0) {
  if constexpr (is_exact_v<S>) {
    for (Index j = 0; j < m.cols(); ++j)
      for (Index i = 0; i < m.rows(); ++i)
        if (!m(i, j).is_zero()) return false;
    return true;
  } else {
    return max_abs(m) <= abs_tol;
  }
}

/// Exact equality on the rational backend; on the float backend
/// max|a-b| <= rel * (1 + max(max|a|, max|b|)).
template <class S>
bool approx_equal(const Mat<S>& a, const Mat<S>& b, double rel = 1e-9) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if constexpr (is_exact_v<S>) {
    return a == b;
  } else {
    return max_abs(a - b) <= rel * (1.0 + std::max(max_abs(a), max_abs(b)));
  }
}

template <class S>
Mat<S> adjoint(const Mat<S>& m) {
  return m.adjoint();
}

/// <u, v> = v* u, the sesquilinear pairing on C^n.
template <class S>
S pairing(const Vec<S>& u, const Vec<S>& v) {
  return (v.adjoint() * u)(0, 0);
}

/// Validates that `m` is Hermitian and returns its Hermitian representative.
/// Rational: exact equality with the adjoint. Float: symmetrized to (M + M*)/2
/// when max|M - M*| <= 1e-8 * max|M|, rejected otherwise.
template <class S>
Mat<S> hermitian(const Mat<S>& m) {
  require(m.rows() == m.cols(), ErrorKind::Validation, "not Hermitian: matrix is not square");
  if constexpr (is_exact_v<S>) {
    require(m == Mat<S>(m.adjoint()), ErrorKind::Validation, "not Hermitian");
    return m;
  } else {
    const Mat<S> adj = m.adjoint();
    require(max_abs(Mat<S>(m - adj)) <= 1e-8 * max_abs(m), ErrorKind::Validation, "not Hermitian");
    return (m + adj) / 2.0;
  }
}

template <class S>
bool is_hermitian(const Mat<S>& m) {
  try {
    hermitian(m);
    return true;
  } catch (const Error&) {
    return false;
  }
}

/// Hermitian part with no validation; used after products that are Hermitian
/// in exact arithmetic but carry rounding noise in float.
template <class S>
Mat<S> symmetrized(const Mat<S>& m) {
  if constexpr (is_exact_v<S>) {
    return m;
  } else {
    return (m + m.adjoint()) / 2.0;
  }
}

template <class S>
Mat<S> hstack(const Mat<S>& a, const Mat<S>& b) {
  require(a.rows() == b.rows(), ErrorKind::Validation, "hstack: row counts differ");
  Mat<S> out(a.rows(), a.cols() + b.cols());
  out.leftCols(a.cols()) = a;
  out.rightCols(b.cols()) = b;
  return out;
}

template <class S>
Mat<S> vstack(const Mat<S>& a, const Mat<S>& b) {
  require(a.cols() == b.cols(), ErrorKind::Validation, "vstack: column counts differ");
  Mat<S> out(a.rows() + b.rows(), a.cols());
  out.topRows(a.rows()) = a;
  out.bottomRows(b.rows()) = b;
  return out;
}

/// Converts an exact matrix to its nearest float counterpart.
inline MatC to_float(const MatQ& m) {
  MatC out(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) out(i, j) = m(i, j).to_complex();
  return out;
}

}  // namespace shorted
