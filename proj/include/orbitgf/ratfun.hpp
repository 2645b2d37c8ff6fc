#pragma once

#include <gmpxx.h>

#include <climits>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace orbitgf {

using Integer = mpz_class;
using Rational = mpq_class;

/// Dense univariate polynomial over Q in the variable t.
class Polynomial {
 public:
  static constexpr int kZeroDegree = INT_MIN;

  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  static Polynomial constant(const Rational& c);
  /// c * t^k
  static Polynomial monomial(const Rational& c, int k);
  /// 1 - m t
  static Polynomial one_minus(const Rational& m);

  int degree() const noexcept {
    return c_.empty() ? kZeroDegree : static_cast<int>(c_.size()) - 1;
  }
  bool is_zero() const noexcept { return c_.empty(); }
  /// Coefficient of t^k, zero past the degree.
  Rational coeff(std::size_t k) const;
  const Rational& leading() const { return c_.back(); }
  const std::vector<Rational>& coeffs() const noexcept { return c_; }

  Rational eval(const Rational& x) const;
  /// p(c t)
  Polynomial scale_variable(const Rational& c) const;
  Polynomial monic() const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& s, const Polynomial& p);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  /// Euclidean division; throws std::domain_error on a zero divisor.
  static void divmod(const Polynomial& a, const Polynomial& b, Polynomial& q, Polynomial& r);
  /// Monic gcd (zero if both are zero).
  static Polynomial gcd(Polynomial a, Polynomial b);

 private:
  void trim();
  std::vector<Rational> c_;
};

/// num/den in lowest terms with den(0) = 1. Structural equality is equality
/// of functions.
class RationalFunction {
 public:
  RationalFunction();  // zero
  RationalFunction(Polynomial num, Polynomial den);
  static RationalFunction constant(const Rational& c);
  static RationalFunction polynomial(Polynomial p);
  /// c / (1 - m t)
  static RationalFunction simple_pole(const Rational& c, const Rational& m);

  const Polynomial& num() const noexcept { return num_; }
  const Polynomial& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  /// Throws Error{ParameterOutOfRange} when dividing by zero or when the
  /// quotient has a pole at t = 0.
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// R(c t)
  RationalFunction scale_variable(const Rational& c) const;
  Rational value_at_zero() const { return num_.coeff(0); }
  /// First n Taylor coefficients at t = 0.
  std::vector<Rational> series(std::size_t n) const;

 private:
  Polynomial num_;
  Polynomial den_;
};

RationalFunction add(const RationalFunction& a, const RationalFunction& b);
RationalFunction mul(const RationalFunction& a, const RationalFunction& b);
RationalFunction scale_variable(const RationalFunction& r, const Rational& c);
std::vector<Rational> series_coeffs(const RationalFunction& r, std::size_t n);
bool eq(const RationalFunction& a, const RationalFunction& b);

/// sum of residue / (1 - m t), sorted by m descending.
struct PartialFraction {
  struct Term {
    Rational residue;
    Rational m;
    friend bool operator==(const Term&, const Term&) = default;
  };
  std::vector<Term> terms;

  /// Sum of residues (the value at t = 0).
  Rational residue_sum() const;
  const Term* find(const Rational& m) const;
  friend bool operator==(const PartialFraction&, const PartialFraction&) = default;
};

/// Factors the denominator as a product of distinct (1 - m t). The poles are
/// found by testing divisors of the (rescaled) leading coefficient; when the
/// function was normalized by 1/|G| the m are rational. Throws
/// Error{NotSimpleIntegerPoles} when the denominator is outside that family
/// or deg num >= deg den.
PartialFraction to_partial_fractions(const RationalFunction& r);
RationalFunction from_partial_fractions(const PartialFraction& pf);

// Text forms. All three parse back exactly.
//   rational:           (-98t^2 + 23t - 1)/(324t^3 - 216t^2 + 29t - 1)
//   partial fractions:  (3/2)/(1-4t) + (-1/2)/(1-2t)
//   series:             [1, 5, 22, 92]
std::string to_string(const Rational& q);
std::string render_polynomial(const Polynomial& p);
std::string render_rational(const RationalFunction& r);
std::string render_partial_fractions(const PartialFraction& pf);
std::string render_series(const std::vector<Rational>& coeffs);

Rational parse_rational(std::string_view text);
Polynomial parse_polynomial(std::string_view text);
/// Accepts either the rational or the partial-fraction form.
RationalFunction parse_rational_function(std::string_view text);
PartialFraction parse_partial_fractions(std::string_view text);
std::vector<Rational> parse_series(std::string_view text);

}  // namespace orbitgf
