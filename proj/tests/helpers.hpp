#pragma once

#include <initializer_list>
#include <string>

#include "shorted/core.hpp"

namespace testing {

using namespace shorted;

inline Rational q(const char* s) { return Rational::parse(s); }
inline Rational q(long n) { return Rational(n); }

// Row-major rational matrix from integers.
inline MatQ mq(std::initializer_list<std::initializer_list<long>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  MatQ m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (long v : row) m(i, j++) = Rational(v);
    ++i;
  }
  return m;
}

inline MatC mc(std::initializer_list<std::initializer_list<double>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  MatC m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (double v : row) m(i, j++) = Complex(v, 0.0);
    ++i;
  }
  return m;
}

inline MatQ ones_q(Index r, Index c) { return MatQ::Constant(r, c, Rational(1)); }
inline MatC ones_c(Index r, Index c) { return MatC::Constant(r, c, Complex(1.0, 0.0)); }

}  // namespace testing
