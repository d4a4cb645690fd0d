#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "expobs/error.hpp"

namespace expobs {

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator. Text form is "p" or "p/q".
class Rational {
 public:
  Rational() = default;
  Rational(long value) : v_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Parses "p", "-p" or "p/q" (q > 0 after sign handling). Anything else,
  /// including whitespace and zero denominators, is MalformedRational.
  static Rational parse(std::string_view text);

  /// 2^k for any integer k.
  static Rational pow2(long k);

  std::string str() const;

  const mpz_class& numerator() const { return v_.get_num(); }
  const mpz_class& denominator() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  /// Largest integer <= this.
  mpz_class floor() const;
  mpz_class ceil() const;

  /// Lossy; used only for drawing coordinates.
  double to_double() const { return v_.get_d(); }

  Rational abs() const { return Rational(mpq_class(::abs(v_))); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class v_{0};
};

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// A rational or +inf. Only ordering is defined; asking an infinite value
/// for its rational raises ArithmeticOnInfinity.
class ExtRational {
 public:
  ExtRational(Rational v) : v_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  static ExtRational infinity() { return ExtRational(); }

  bool is_finite() const { return v_.has_value(); }
  bool is_infinite() const { return !v_.has_value(); }
  const Rational& value() const;

  /// "inf" for +inf, otherwise the rational text form.
  std::string str() const { return v_ ? v_->str() : std::string("inf"); }
  static ExtRational parse(std::string_view text);

  friend bool operator==(const ExtRational& a, const ExtRational& b) = default;
  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b);
  friend std::ostream& operator<<(std::ostream& os, const ExtRational& r) { return os << r.str(); }

 private:
  ExtRational() = default;
  std::optional<Rational> v_;
};

/// Gaussian rational re + i*im, the value type of observables.
struct Gaussian {
  Rational re;
  Rational im;

  Gaussian() = default;
  Gaussian(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  Gaussian(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  /// |z|^2, exact.
  Rational norm2() const { return re * re + im * im; }
  Gaussian conj() const { return {re, -im}; }
  bool is_real() const { return im.is_zero(); }
  std::string str() const;

  friend Gaussian operator+(const Gaussian& a, const Gaussian& b) { return {a.re + b.re, a.im + b.im}; }
  friend Gaussian operator-(const Gaussian& a, const Gaussian& b) { return {a.re - b.re, a.im - b.im}; }
  friend Gaussian operator*(const Gaussian& a, const Gaussian& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const Gaussian& a, const Gaussian& b) = default;
  /// Lexicographic on (re, im); used only for deterministic containers.
  friend std::strong_ordering operator<=>(const Gaussian& a, const Gaussian& b) {
    if (auto c = a.re <=> b.re; c != 0) return c;
    return a.im <=> b.im;
  }
};

}  // namespace expobs
