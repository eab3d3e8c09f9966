#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mulesched {

/// Exact rational arithmetic on int64 numerator/denominator.
///
/// Money, generation rates, fairness weights, and objective values are all
/// kept exact so that budget comparisons and optimality proofs never depend
/// on floating-point rounding. Intermediate products go through __int128 and
/// overflow past int64 raises instead of wrapping.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  constexpr Rational(long long value) : num_(value), den_(1) {}  // NOLINT
  Rational(long long num, long long den) { *this = reduce(num, den); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  /// Largest integer <= value (floor toward negative infinity).
  long long floor() const {
    if (num_ >= 0) return num_ / den_;
    return -((-num_ + den_ - 1) / den_);
  }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  /// "p/q" for non-integers, plain integer text otherwise.
  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return reduce128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                     i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return reduce128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                     i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return reduce128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return reduce128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return !(b < a);
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return !(a < b);
  }

  /// Parses "p/q", decimal ("-12.5"), or scientific ("2.5e-3") text.
  static Rational parse(const std::string& text);

 private:
  using i128 = __int128;

  static Rational reduce(long long num, long long den) {
    return reduce128(i128(num), i128(den));
  }

  static Rational reduce128(i128 num, i128 den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    i128 a = num < 0 ? -num : num;
    i128 g = gcd128(a, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX)
      throw std::overflow_error("rational overflow");
    Rational r;
    r.num_ = static_cast<long long>(num);
    r.den_ = static_cast<long long>(den);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  long long num_;
  long long den_;
};

inline Rational Rational::parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    long long p = std::stoll(text.substr(0, slash));
    long long q = std::stoll(text.substr(slash + 1));
    return Rational(p, q);
  }
  size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  i128 mantissa = 0;
  long long frac_digits = 0;
  bool any_digit = false;
  auto push_digit = [&](char c) {
    mantissa = mantissa * 10 + (c - '0');
    if (mantissa > i128(INT64_MAX) * 1000000000LL)
      throw std::overflow_error("rational literal too long: " + text);
    any_digit = true;
  };
  for (; pos < text.size() && text[pos] >= '0' && text[pos] <= '9'; ++pos)
    push_digit(text[pos]);
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    for (; pos < text.size() && text[pos] >= '0' && text[pos] <= '9'; ++pos) {
      push_digit(text[pos]);
      ++frac_digits;
    }
  }
  long long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    exponent = std::stoll(text.substr(pos + 1));
    pos = text.size();
  }
  if (!any_digit || pos != text.size())
    throw std::invalid_argument("bad rational literal: " + text);
  long long pow10 = exponent - frac_digits;
  i128 num = negative ? -mantissa : mantissa;
  i128 den = 1;
  for (; pow10 > 0; --pow10) {
    num *= 10;
    if (num > i128(INT64_MAX) || num < i128(INT64_MIN))
      throw std::overflow_error("rational literal out of range: " + text);
  }
  for (; pow10 < 0; ++pow10) {
    den *= 10;
    if (den > i128(INT64_MAX))
      throw std::overflow_error("rational literal out of range: " + text);
  }
  return reduce128(num, den);
}

}  // namespace mulesched
