#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace congrusep {

/// Dense univariate polynomial over Q. Coefficients are stored low degree
/// first and the vector never carries trailing zeros, so the zero polynomial
/// is the empty vector and equality is coefficient-wise.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<mpq_class> coeffs);

  static Polynomial constant(const mpq_class& c);
  static Polynomial monomial(std::size_t degree, const mpq_class& c = 1);
  /// x - root
  static Polynomial linear(const mpq_class& root);

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<mpq_class>& coefficients() const noexcept { return coeffs_; }
  mpq_class coeff(std::size_t i) const;
  const mpq_class& leading() const;

  Polynomial monic() const;
  Polynomial derivative() const;
  bool has_integer_coefficients() const;
  mpq_class evaluate(const mpq_class& x) const;

  std::string to_string(const std::string& var = "x") const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const mpq_class& c, const Polynomial& a);
  friend Polynomial operator-(const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  void trim();
  std::vector<mpq_class> coeffs_;
};

struct DivMod {
  Polynomial quotient;
  Polynomial remainder;
};

/// Euclidean division; throws PreconditionError when b is zero.
DivMod divmod(const Polynomial& a, const Polynomial& b);
Polynomial operator%(const Polynomial& a, const Polynomial& b);
/// Exact division; throws PreconditionError when b does not divide a.
Polynomial exact_divide(const Polynomial& a, const Polynomial& b);
bool divides(const Polynomial& d, const Polynomial& a);

/// Monic gcd (zero when both inputs are zero).
Polynomial gcd(Polynomial a, Polynomial b);

struct ExtendedGcd {
  Polynomial gcd;  // monic
  Polynomial s;
  Polynomial t;    // s*a + t*b == gcd
};
ExtendedGcd extended_gcd(const Polynomial& a, const Polynomial& b);

/// Inverse of a modulo m; requires gcd(a, m) == 1.
Polynomial inverse_mod(const Polynomial& a, const Polynomial& m);

/// f / gcd(f, f'), made monic.
Polynomial squarefree_part(const Polynomial& f);
bool is_squarefree(const Polynomial& f);

std::uint64_t euler_phi(std::uint64_t d);
/// The d-th cyclotomic polynomial.
Polynomial cyclotomic(std::uint32_t d);

/// If f is (up to the sign making it monic) a product of cyclotomic
/// polynomials, returns the indices d of the factors with multiplicity in
/// ascending order. Otherwise nullopt.
std::optional<std::vector<std::uint32_t>> cyclotomic_factorization(const Polynomial& f);

}  // namespace congrusep
