#include "congrusep/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "congrusep/error.hpp"

namespace congrusep {

Polynomial::Polynomial(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

Polynomial Polynomial::constant(const mpq_class& c) { return Polynomial(std::vector<mpq_class>{c}); }

Polynomial Polynomial::monomial(std::size_t degree, const mpq_class& c) {
  std::vector<mpq_class> v(degree + 1, mpq_class(0));
  v[degree] = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::linear(const mpq_class& root) {
  return Polynomial(std::vector<mpq_class>{-root, mpq_class(1)});
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpq_class Polynomial::coeff(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : mpq_class(0);
}

const mpq_class& Polynomial::leading() const {
  if (coeffs_.empty()) throw PreconditionError("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  Polynomial r = *this;
  const mpq_class lc = leading();
  for (auto& c : r.coeffs_) c /= lc;
  return r;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<mpq_class> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return Polynomial(std::move(d));
}

bool Polynomial::has_integer_coefficients() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const mpq_class& c) { return c.get_den() == 1; });
}

mpq_class Polynomial::evaluate(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::string Polynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const mpq_class& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    mpq_class mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool show_coeff = (mag != 1) || i == 0;
    if (show_coeff) os << mag.get_str();
    if (i > 0) {
      if (show_coeff) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<mpq_class> r(std::max(a.coeffs_.size(), b.coeffs_.size()), mpq_class(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r[i] += b.coeffs_[i];
  return Polynomial(std::move(r));
}

Polynomial operator-(const Polynomial& a) {
  Polynomial r = a;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpq_class> r(a.coeffs_.size() + b.coeffs_.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(r));
}

Polynomial operator*(const mpq_class& c, const Polynomial& a) { return Polynomial::constant(c) * a; }

bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

DivMod divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  std::vector<mpq_class> rem = a.coefficients();
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial{}, a};
  std::vector<mpq_class> quo(static_cast<std::size_t>(a.degree() - db + 1), mpq_class(0));
  const mpq_class& lb = b.leading();
  for (int i = a.degree(); i >= db; --i) {
    const mpq_class q = rem[static_cast<std::size_t>(i)] / lb;
    if (q == 0) continue;
    quo[static_cast<std::size_t>(i - db)] = q;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= q * b.coefficients()[static_cast<std::size_t>(j)];
  }
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).remainder; }

Polynomial exact_divide(const Polynomial& a, const Polynomial& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw PreconditionError("polynomial division is not exact");
  return q;
}

bool divides(const Polynomial& d, const Polynomial& a) { return (a % d).is_zero(); }

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

ExtendedGcd extended_gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial r0 = a, r1 = b;
  Polynomial s0 = Polynomial::constant(1), s1;
  Polynomial t0, t1 = Polynomial::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::exchange(r1, std::move(r));
    s0 = std::exchange(s1, s0 - q * s1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const mpq_class lc = r0.leading();
  const mpq_class inv = 1 / lc;
  return {inv * r0, inv * s0, inv * t0};
}

Polynomial inverse_mod(const Polynomial& a, const Polynomial& m) {
  ExtendedGcd e = extended_gcd(a, m);
  if (e.gcd.degree() != 0) throw PreconditionError("polynomial not invertible modulo the given modulus");
  return e.s % m;
}

Polynomial squarefree_part(const Polynomial& f) {
  if (f.degree() <= 0) return f.monic();
  return exact_divide(f, gcd(f, f.derivative())).monic();
}

bool is_squarefree(const Polynomial& f) {
  if (f.degree() <= 0) return true;
  return gcd(f, f.derivative()).degree() == 0;
}

std::uint64_t euler_phi(std::uint64_t d) {
  std::uint64_t result = d;
  for (std::uint64_t p = 2; p * p <= d; ++p) {
    if (d % p != 0) continue;
    while (d % p == 0) d /= p;
    result -= result / p;
  }
  if (d > 1) result -= result / d;
  return result;
}

Polynomial cyclotomic(std::uint32_t d) {
  if (d == 0) throw InputError("cyclotomic index must be positive");
  Polynomial f = Polynomial::monomial(d) - Polynomial::constant(1);
  for (std::uint32_t e = 1; e < d; ++e)
    if (d % e == 0) f = exact_divide(f, cyclotomic(e));
  return f;
}

std::optional<std::vector<std::uint32_t>> cyclotomic_factorization(const Polynomial& f) {
  if (f.is_zero()) return std::nullopt;
  Polynomial rest = f.monic();
  if (!rest.has_integer_coefficients()) return std::nullopt;
  // Constant term of a cyclotomic product is +-1.
  const mpq_class c0 = rest.coeff(0);
  if (c0 != 1 && c0 != -1) return std::nullopt;
  const auto deg = static_cast<std::uint64_t>(rest.degree());
  // phi(d) >= sqrt(d/2), so phi(d) <= deg forces d <= 2 deg^2.
  const std::uint64_t bound = std::max<std::uint64_t>(2 * deg * deg, 6);
  std::vector<std::uint32_t> factors;
  for (std::uint32_t d = 1; d <= bound && rest.degree() > 0; ++d) {
    if (euler_phi(d) > static_cast<std::uint64_t>(rest.degree())) continue;
    const Polynomial phi = cyclotomic(d);
    for (;;) {
      auto [q, r] = divmod(rest, phi);
      if (!r.is_zero()) break;
      rest = std::move(q);
      factors.push_back(d);
    }
  }
  if (rest.degree() != 0) return std::nullopt;
  return factors;
}

}  // namespace congrusep
