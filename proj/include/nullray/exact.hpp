#pragma once

#include "nullray/lattice.hpp"
#include "nullray/numerics.hpp"

#include <boost/rational.hpp>

#include <algorithm>
#include <iosfwd>
#include <string>

namespace nullray {

using Rational = boost::rational<Integer>;

/// Gaussian rational re + i im.
struct ExactComplex {
  Rational re{0};
  Rational im{0};

  ExactComplex() = default;
  ExactComplex(Rational r, Rational i = Rational(0)) : re(r), im(i) {}
  ExactComplex(Integer r) : re(r) {}

  bool is_zero() const { return re.numerator() == 0 && im.numerator() == 0; }
  Complex to_complex() const {
    return {boost::rational_cast<double>(re), boost::rational_cast<double>(im)};
  }

  ExactComplex& operator+=(const ExactComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ExactComplex& operator-=(const ExactComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
  friend ExactComplex operator-(const ExactComplex& a) { return {-a.re, -a.im}; }
  friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const ExactComplex& a, const ExactComplex& b) { return !(a == b); }
};

/// "num/den" (or "num" when den == 1).
std::string format_rational(const Rational& r);
/// Accepts "num", "-num" and "num/den"; throws std::invalid_argument otherwise.
Rational parse_rational(const std::string& s);

std::ostream& operator<<(std::ostream& os, const ExactComplex& z);

/// Uniform interface over the two coefficient types.
template <typename Scalar> struct ScalarTraits;

template <> struct ScalarTraits<Complex> {
  static bool is_zero(const Complex& z) { return z == Complex(0.0, 0.0); }
  static Complex to_complex(const Complex& z) { return z; }
  static bool close(const Complex& a, const Complex& b, double tol) {
    return std::abs(a - b) <= tol * std::max(1.0, std::abs(a));
  }
  static constexpr bool exact = false;
};

template <> struct ScalarTraits<ExactComplex> {
  static bool is_zero(const ExactComplex& z) { return z.is_zero(); }
  static Complex to_complex(const ExactComplex& z) { return z.to_complex(); }
  static bool close(const ExactComplex& a, const ExactComplex& b, double) { return a == b; }
  static constexpr bool exact = true;
};

} // namespace nullray
