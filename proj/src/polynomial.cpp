#include "dimerbfz/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dimerbfz {

bool GrlexGreater::operator()(const Exponents& a, const Exponents& b) const {
  const unsigned da = std::accumulate(a.begin(), a.end(), 0u);
  const unsigned db = std::accumulate(b.begin(), b.end(), 0u);
  if (da != db) return da > db;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned x = i < a.size() ? a[i] : 0;
    const unsigned y = i < b.size() ? b[i] : 0;
    if (x != y) return x > y;
  }
  return false;
}

Polynomial Polynomial::constant(const mpz_class& c, std::size_t nvars) {
  Polynomial p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t index, std::size_t nvars) {
  if (index >= nvars) throw std::out_of_range("variable index out of range");
  Exponents e(nvars, 0);
  e[index] = 1;
  Polynomial p(nvars);
  p.add_term(e, 1);
  return p;
}

Polynomial Polynomial::term(Exponents exponents, const mpz_class& c) {
  Polynomial p(exponents.size());
  p.add_term(exponents, c);
  return p;
}

void Polynomial::widen(std::size_t nvars) {
  if (nvars <= nvars_) return;
  TermMap wider;
  for (auto& [e, c] : terms_) {
    Exponents padded = e;
    padded.resize(nvars, 0);
    wider.emplace(std::move(padded), c);
  }
  terms_ = std::move(wider);
  nvars_ = nvars;
}

void Polynomial::add_term(const Exponents& e, const mpz_class& c) {
  if (c == 0) return;
  Exponents key = e;
  if (key.size() > nvars_) widen(key.size());
  key.resize(nvars_, 0);
  auto [it, inserted] = terms_.emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool Polynomial::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 &&
          std::all_of(leading_exponents().begin(), leading_exponents().end(),
                      [](unsigned x) { return x == 0; }));
}

bool Polynomial::is_one() const { return is_constant() && !is_zero() && leading_coefficient() == 1; }

int Polynomial::degree_in(std::size_t var) const {
  if (terms_.empty()) return -1;
  int d = 0;
  for (const auto& [e, c] : terms_)
    if (var < e.size()) d = std::max(d, static_cast<int>(e[var]));
  return d;
}

int Polynomial::main_variable() const {
  int v = -1;
  for (const auto& [e, c] : terms_)
    for (std::size_t i = e.size(); i-- > 0;)
      if (e[i] > 0) {
        v = std::max(v, static_cast<int>(i));
        break;
      }
  return v;
}

mpz_class Polynomial::content() const {
  mpz_class g = 0;
  for (const auto& [e, c] : terms_) g = ::gcd(g, c);
  return g;
}

std::map<unsigned, Polynomial> Polynomial::coefficients_in(std::size_t var) const {
  std::map<unsigned, Polynomial> out;
  for (const auto& [e, c] : terms_) {
    Exponents rest = e;
    unsigned d = 0;
    if (var < rest.size()) std::swap(d, rest[var]);
    auto [it, inserted] = out.try_emplace(d, nvars_);
    it->second.add_term(rest, c);
  }
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& [e, c] : p.terms_) c = -c;
  return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  widen(rhs.nvars_);
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  widen(rhs.nvars_);
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
  Polynomial product(std::max(nvars_, rhs.nvars_));
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : rhs.terms_) {
      Exponents e(product.nvars_, 0);
      for (std::size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
      for (std::size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
      product.add_term(e, ca * cb);
    }
  }
  *this = std::move(product);
  return *this;
}

Polynomial Polynomial::scaled(const mpz_class& c) const {
  if (c == 0) return Polynomial(nvars_);
  Polynomial p = *this;
  for (auto& [e, coeff] : p.terms_) coeff *= c;
  return p;
}

Polynomial Polynomial::divided_by(const mpz_class& c) const {
  Polynomial p = *this;
  for (auto& [e, coeff] : p.terms_) {
    if (!mpz_divisible_p(coeff.get_mpz_t(), c.get_mpz_t()))
      throw std::domain_error("coefficient not divisible");
    coeff /= c;
  }
  return p;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(1, nvars_);
  Polynomial base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return result;
}

bool Polynomial::operator==(const Polynomial& other) const {
  if (terms_.size() != other.terms_.size()) return false;
  auto it = other.terms_.begin();
  for (const auto& [e, c] : terms_) {
    if (GrlexGreater{}(e, it->first) || GrlexGreater{}(it->first, e) || c != it->second)
      return false;
    ++it;
  }
  return true;
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool negative = c < 0;
    const mpz_class magnitude = abs(c);
    if (negative)
      out << "-";
    else if (!first)
      out << "+";
    first = false;
    bool wrote = false;
    if (magnitude != 1) {
      out << magnitude.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) out << "*";
      out << (i < names.size() ? names[i] : "x" + std::to_string(i));
      if (e[i] > 1) out << "^" << e[i];
      wrote = true;
    }
    if (!wrote) out << "1";
  }
  return out.str();
}

Polynomial exact_divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  const std::size_t n = std::max(a.nvars(), b.nvars());
  Polynomial quotient(n);
  Polynomial rest = a;
  const Exponents& lb = b.leading_exponents();
  const mpz_class& cb = b.leading_coefficient();
  while (!rest.is_zero()) {
    Exponents e = rest.leading_exponents();
    e.resize(n, 0);
    for (std::size_t i = 0; i < lb.size(); ++i) {
      if (lb[i] > e[i]) throw std::domain_error("polynomial division is not exact");
      e[i] -= lb[i];
    }
    const mpz_class& cr = rest.leading_coefficient();
    if (!mpz_divisible_p(cr.get_mpz_t(), cb.get_mpz_t()))
      throw std::domain_error("polynomial division is not exact");
    const Polynomial t = Polynomial::term(e, cr / cb);
    quotient += t;
    rest -= t * b;
  }
  return quotient;
}

namespace {

Polynomial gcd_nonzero(const Polynomial& a, const Polynomial& b);

Polynomial content_in(const Polynomial& p, std::size_t var) {
  Polynomial g;
  bool first = true;
  for (auto& [d, coeff] : p.coefficients_in(var)) {
    g = first ? coeff : gcd_nonzero(g, coeff);
    first = false;
  }
  return g;
}

Polynomial primitive_part(const Polynomial& p, std::size_t var) {
  return exact_divide(p, content_in(p, var));
}

Polynomial coefficient_of(const Polynomial& p, std::size_t var, unsigned d) {
  auto coeffs = p.coefficients_in(var);
  auto it = coeffs.find(d);
  return it == coeffs.end() ? Polynomial(p.nvars()) : it->second;
}

// Sparse pseudo-remainder of a by b with respect to x_var.
Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t var) {
  const int db = b.degree_in(var);
  const Polynomial lb = coefficient_of(b, var, db);
  Polynomial r = a;
  while (!r.is_zero() && r.degree_in(var) >= db) {
    const int dr = r.degree_in(var);
    Exponents shift(std::max(a.nvars(), b.nvars()), 0);
    shift[var] = static_cast<unsigned>(dr - db);
    const Polynomial t = coefficient_of(r, var, dr) * Polynomial::term(shift, 1);
    r = lb * r - t * b;
  }
  return r;
}

Polynomial gcd_nonzero(const Polynomial& a, const Polynomial& b) {
  const std::size_t n = std::max(a.nvars(), b.nvars());
  const int v = std::max(a.main_variable(), b.main_variable());
  if (v < 0) return Polynomial::constant(::gcd(a.leading_coefficient(), b.leading_coefficient()), n);
  const auto var = static_cast<std::size_t>(v);
  const Polynomial ca = content_in(a, var);
  const Polynomial cb = content_in(b, var);
  const Polynomial c = gcd_nonzero(ca, cb);
  Polynomial pa = exact_divide(a, ca);
  Polynomial pb = exact_divide(b, cb);
  if (pa.degree_in(var) == 0 || pb.degree_in(var) == 0) return c;
  if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);
  while (true) {
    const Polynomial r = pseudo_remainder(pa, pb, var);
    if (r.is_zero()) break;
    if (r.degree_in(var) == 0) return c;
    pa = std::move(pb);
    pb = primitive_part(r, var);
  }
  return c * primitive_part(pb, var);
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial g;
  if (a.is_zero())
    g = b;
  else if (b.is_zero())
    g = a;
  else
    g = gcd_nonzero(a, b);
  if (!g.is_zero() && g.leading_coefficient() < 0) g = -g;
  return g;
}

RationalFunction normalize(const Polynomial& numerator, const Polynomial& denominator) {
  return RationalFunction(numerator, denominator);
}

RationalFunction::RationalFunction(Polynomial numerator)
    : RationalFunction(numerator, Polynomial::constant(1, numerator.nvars())) {}

RationalFunction::RationalFunction(Polynomial numerator, Polynomial denominator) {
  if (denominator.is_zero()) throw std::domain_error("rational function with zero denominator");
  const std::size_t n = std::max(numerator.nvars(), denominator.nvars());
  if (numerator.is_zero()) {
    num_ = Polynomial(n);
    den_ = Polynomial::constant(1, n);
    return;
  }
  const Polynomial g = gcd(numerator, denominator);
  num_ = exact_divide(numerator, g);
  den_ = exact_divide(denominator, g);
  if (den_.leading_coefficient() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

RationalFunction RationalFunction::variable(std::size_t index, std::size_t nvars) {
  return RationalFunction(Polynomial::variable(index, nvars));
}

RationalFunction RationalFunction::constant(const mpz_class& c, std::size_t nvars) {
  return RationalFunction(Polynomial::constant(c, nvars));
}

RationalFunction RationalFunction::operator+(const RationalFunction& rhs) const {
  return {num_ * rhs.den_ + rhs.num_ * den_, den_ * rhs.den_};
}

RationalFunction RationalFunction::operator-(const RationalFunction& rhs) const {
  return {num_ * rhs.den_ - rhs.num_ * den_, den_ * rhs.den_};
}

RationalFunction RationalFunction::operator*(const RationalFunction& rhs) const {
  return {num_ * rhs.num_, den_ * rhs.den_};
}

RationalFunction RationalFunction::operator/(const RationalFunction& rhs) const {
  if (rhs.is_zero()) throw std::domain_error("division by the zero rational function");
  return {num_ * rhs.den_, den_ * rhs.num_};
}

bool RationalFunction::operator==(const RationalFunction& other) const {
  return num_ * other.den_ == other.num_ * den_;
}

std::string RationalFunction::to_string(std::span<const std::string> names) const {
  const std::string num = num_.to_string(names);
  if (den_.is_one()) return num;
  const std::string den = den_.to_string(names);
  std::string out = num_.terms().size() > 1 ? "(" + num + ")" : num;
  out += "/";
  out += (den_.terms().size() > 1 || den.find('*') != std::string::npos) ? "(" + den + ")" : den;
  return out;
}

bool is_laurent(const RationalFunction& f) { return f.denominator().is_monomial(); }

}  // namespace dimerbfz
