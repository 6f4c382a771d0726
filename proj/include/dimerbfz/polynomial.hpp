#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace dimerbfz {

using Exponents = std::vector<unsigned>;

/// Graded lexicographic order, greatest first.
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse multivariate polynomial with arbitrary-precision integer
/// coefficients. Zero coefficients are never stored; terms iterate in
/// descending graded lexicographic order.
class Polynomial {
 public:
  using TermMap = std::map<Exponents, mpz_class, GrlexGreater>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(const mpz_class& c, std::size_t nvars);
  static Polynomial variable(std::size_t index, std::size_t nvars);
  static Polynomial term(Exponents exponents, const mpz_class& c);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  /// Exactly one stored term.
  bool is_monomial() const { return terms_.size() == 1; }
  const Exponents& leading_exponents() const { return terms_.begin()->first; }
  const mpz_class& leading_coefficient() const { return terms_.begin()->second; }

  /// Degree in one variable; -1 for the zero polynomial.
  int degree_in(std::size_t var) const;
  /// Highest-index variable with a positive exponent, or -1.
  int main_variable() const;
  /// gcd of the integer coefficients (0 for the zero polynomial).
  mpz_class content() const;
  /// Splits into coefficients of powers of x_var (x_var removed from keys).
  std::map<unsigned, Polynomial> coefficients_in(std::size_t var) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  Polynomial scaled(const mpz_class& c) const;
  /// Divides every coefficient by c; c must divide all of them.
  Polynomial divided_by(const mpz_class& c) const;
  Polynomial pow(unsigned e) const;

  bool operator==(const Polynomial& other) const;

  /// Canonical text: terms in descending grlex order, explicit '*' and '^'.
  std::string to_string(std::span<const std::string> names) const;

 private:
  void add_term(const Exponents& e, const mpz_class& c);
  void widen(std::size_t nvars);

  std::size_t nvars_ = 0;
  TermMap terms_;
};

/// Exact quotient a / b; throws std::domain_error when b does not divide a.
Polynomial exact_divide(const Polynomial& a, const Polynomial& b);

/// Greatest common divisor over the integers, normalised to a positive
/// leading coefficient. Computed by recursive content / primitive-part
/// elimination, one variable at a time.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Element of Q(x_1..x_n) kept as a reduced fraction of integer
/// polynomials with a positive leading denominator coefficient.
class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(Polynomial numerator);
  /// Normalises; throws std::domain_error on a zero denominator.
  RationalFunction(Polynomial numerator, Polynomial denominator);

  static RationalFunction variable(std::size_t index, std::size_t nvars);
  static RationalFunction constant(const mpz_class& c, std::size_t nvars);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RationalFunction operator+(const RationalFunction& rhs) const;
  RationalFunction operator-(const RationalFunction& rhs) const;
  RationalFunction operator*(const RationalFunction& rhs) const;
  RationalFunction operator/(const RationalFunction& rhs) const;

  /// Cross-multiplication test on canonical forms.
  bool operator==(const RationalFunction& other) const;

  std::string to_string(std::span<const std::string> names) const;

 private:
  Polynomial num_;
  Polynomial den_;
};

RationalFunction normalize(const Polynomial& numerator, const Polynomial& denominator);

/// Denominator is a single monomial.
bool is_laurent(const RationalFunction& f);

}  // namespace dimerbfz
