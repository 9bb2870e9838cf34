#pragma once

// Scalar fields for the two backends: binary64 complex numbers and exact
// Gaussian rationals p/q + (r/s)i.

#include <complex>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <Eigen/Core>

namespace shorted {

using Complex = std::complex<double>;

class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(int re) : re_(re) {}  // NOLINT: implicit, Eigen builds Scalar(0)/Scalar(1)
  GaussianRational(long re) : re_(re) {}  // NOLINT
  GaussianRational(mpq_class re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  /// Nearest binary64 complex value.
  Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }

  /// Canonical text form "p/q" or "p/q+r/si" (denominators always present).
  std::string to_string() const;

  /// Accepts `sign? digits "/" digits ( sign ("i" | digits "/" digits "i") )?`.
  /// Throws shorted::Error (ErrorKind::Parse) on anything else.
  static GaussianRational parse(std::string_view text);

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& q);

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

inline GaussianRational conj(const GaussianRational& q) { return {q.re(), -q.im()}; }
inline mpq_class real(const GaussianRational& q) { return q.re(); }
inline mpq_class imag(const GaussianRational& q) { return q.im(); }
inline mpq_class abs2(const GaussianRational& q) { return q.re() * q.re() + q.im() * q.im(); }

using Rational = GaussianRational;

// Per-backend facts the algorithms branch on.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Complex> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";
  static double magnitude(const Complex& s) { return std::abs(s); }
  static double real_part(const Complex& s) { return s.real(); }
  static Complex from_complex(const Complex& c) { return c; }
};

template <>
struct scalar_traits<GaussianRational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "rational";
  static double magnitude(const GaussianRational& s) { return std::abs(s.to_complex()); }
  static double real_part(const GaussianRational& s) { return s.re().get_d(); }
};

template <class S>
inline constexpr bool is_exact_v = scalar_traits<S>::exact;

template <class S>
concept Scalar = requires { scalar_traits<S>::exact; };

/// Exact zero test on the rational backend, |s| == 0 on the float backend.
template <Scalar S>
bool is_exact_zero(const S& s) {
  if constexpr (is_exact_v<S>) {
    return s.is_zero();
  } else {
    return s == S(0);
  }
}

}  // namespace shorted

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  typedef mpq_class Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 50,
    MulCost = 100
  };
  // exact: printing needs no precision
  static constexpr int digits10() { return 0; }
};

template <>
struct NumTraits<shorted::GaussianRational> : GenericNumTraits<shorted::GaussianRational> {
  typedef mpq_class Real;
  typedef shorted::GaussianRational NonInteger;
  typedef shorted::GaussianRational Nested;
  typedef shorted::GaussianRational Literal;
  enum {
    IsComplex = 1,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 20,
    AddCost = 100,
    MulCost = 400
  };
  static constexpr int digits10() { return 0; }
};

}  // namespace Eigen
