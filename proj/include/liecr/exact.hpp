#ifndef LIECR_EXACT_HPP
#define LIECR_EXACT_HPP

// Small exact scalar types for the structure constants of built-in algebras.

#include <complex>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "liecr/errors.hpp"

namespace liecr {

namespace detail {
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw NumericalError("exact arithmetic overflow");
  return out;
}
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw NumericalError("exact arithmetic overflow");
  return out;
}
}  // namespace detail

class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {  // NOLINT
    if (den_ == 0) throw ArgumentError("rational with zero denominator");
    normalize();
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    std::int64_t g = std::gcd(a.den_, b.den_);
    std::int64_t left = detail::checked_mul(a.num_, b.den_ / g);
    std::int64_t right = detail::checked_mul(b.num_, a.den_ / g);
    return {detail::checked_add(left, right), detail::checked_mul(a.den_ / g, b.den_)};
  }
  friend Rational operator-(const Rational& a) { return {-a.num_, a.den_}; }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    std::int64_t g1 = std::gcd(a.num_, b.den_);
    std::int64_t g2 = std::gcd(b.num_, a.den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    return {detail::checked_mul(a.num_ / g1, b.num_ / g2),
            detail::checked_mul(a.den_ / g2, b.den_ / g1)};
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw ArgumentError("rational division by zero");
    return a * Rational(b.den_, b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    os << r.num_;
    if (r.den_ != 1) os << '/' << r.den_;
    return os;
  }

 private:
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// re + i*im with rational parts.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(Rational re, Rational im = Rational()) : re_(re), im_(im) {}  // NOLINT
  GaussianRational(std::int64_t re) : re_(re) {}                                 // NOLINT

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }
  GaussianRational conj() const { return {re_, -im_}; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
  GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
    return !(a == b);
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
    if (z.im_.is_zero()) return os << z.re_;
    if (z.re_.is_zero()) return os << z.im_ << 'i';
    return os << '(' << z.re_ << (z.im_.num() < 0 ? "" : "+") << z.im_ << "i)";
  }

 private:
  Rational re_;
  Rational im_;
};

}  // namespace liecr

#endif  // LIECR_EXACT_HPP
