#include "shorted/scalar.hpp"

#include <cctype>
#include <ostream>

#include "shorted/core.hpp"

namespace shorted {

namespace {

std::string fraction_text(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool done() const { return pos_ == text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  std::string digits() {
    const std::size_t start = pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::Parse, "bad rational \"" + std::string(text_) + "\": " + why +
                                      " at offset " + std::to_string(pos_));
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

mpq_class fraction(Cursor& in, bool negative) {
  const std::string num = in.digits();
  if (!in.accept('/')) in.fail("expected '/'");
  const std::string den = in.digits();
  mpz_class d(den);
  if (d == 0) in.fail("zero denominator");
  mpq_class q(mpz_class(num), d);
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

}  // namespace

std::string GaussianRational::to_string() const {
  std::string out = fraction_text(re_);
  if (sgn(im_) != 0) {
    if (sgn(im_) > 0) out += '+';
    out += fraction_text(im_) + "i";
  }
  return out;
}

GaussianRational GaussianRational::parse(std::string_view text) {
  Cursor in(text);
  bool negative = in.accept('-');
  if (!negative) in.accept('+');
  mpq_class re = fraction(in, negative);
  mpq_class im = 0;
  if (!in.done()) {
    if (in.peek() != '+' && in.peek() != '-') in.fail("expected sign of imaginary part");
    negative = in.accept('-');
    if (!negative) in.accept('+');
    if (in.accept('i')) {
      im = negative ? -1 : 1;
    } else {
      im = fraction(in, negative);
      if (!in.accept('i')) in.fail("expected 'i'");
    }
  }
  if (!in.done()) in.fail("trailing characters");
  return {std::move(re), std::move(im)};
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  const mpq_class den = abs2(o);
  if (sgn(den) == 0) throw Error(ErrorKind::Internal, "division by zero Gaussian rational");
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / den;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / den;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& q) { return os << q.to_string(); }

}  // namespace shorted
