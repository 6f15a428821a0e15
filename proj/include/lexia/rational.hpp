#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "lexia/errors.hpp"

namespace lexia {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational number. Always in lowest terms with a positive
// denominator; all arithmetic and comparisons are exact. Values are
// serialized as "p/q", or just "p" when the denominator is one.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}
  Rational(long long n) : v_(static_cast<long long>(n)) {}
  explicit Rational(const BigInt& n) : v_(n) {}
  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw ContractError("rational with zero denominator");
    v_ = den < 0 ? Backend(-num, -den) : Backend(num, den);
  }

  static Rational parse(std::string_view text) {
    auto fail = [&] {
      throw ParseError(std::string(text), "not a rational; expected \"p\" or \"p/q\"");
    };
    if (text.empty()) fail();
    std::size_t slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    if (!is_integer_token(num)) fail();
    if (slash == std::string_view::npos) return Rational(BigInt(std::string(num)));
    std::string_view den = text.substr(slash + 1);
    if (!is_integer_token(den) || den.front() == '-') fail();
    BigInt d{std::string(den)};
    if (d == 0) fail();
    return Rational(BigInt(std::string(num)), d);
  }

  BigInt numerator() const { return boost::multiprecision::numerator(v_); }
  BigInt denominator() const { return boost::multiprecision::denominator(v_); }

  std::string str() const {
    std::string s = numerator().str();
    if (denominator() != 1) s += "/" + denominator().str();
    return s;
  }

  int sign() const { return v_.sign(); }
  bool is_zero() const { return v_.is_zero(); }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(Backend(a.v_ + b.v_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(Backend(a.v_ - b.v_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(Backend(a.v_ * b.v_)); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw ContractError("rational division by zero");
    return Rational(Backend(a.v_ / b.v_));
  }
  Rational operator-() const { return Rational(Backend(-v_)); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  using Backend = boost::multiprecision::cpp_rational;
  explicit Rational(Backend v) : v_(std::move(v)) {}

  static bool is_integer_token(std::string_view s) {
    if (!s.empty() && s.front() == '-') s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  }

  Backend v_;
};

}  // namespace lexia
