#include "congrusep/jordan.hpp"

#include <numeric>
#include <set>
#include <stdexcept>

namespace congrusep {

namespace {

void require_invertible(const RationalMatrix& g) {
  if (determinant(g) == 0) throw SingularMatrixError();
}

}  // namespace

RationalMatrix additive_semisimple_part(const RationalMatrix& a) {
  const std::size_t n = a.n();
  if (n == 0) return a;
  const Polynomial f = squarefree_part(char_poly(a));
  // f squarefree, so f' is invertible modulo f.
  const Polynomial fprime_inv = inverse_mod(f.derivative(), f);
  RationalMatrix x = a;
  // Quadratic convergence: f(x) lies in the nilpotent ideal generated by
  // f(a), whose index is at most n.
  for (int iter = 0; iter < 64; ++iter) {
    const RationalMatrix fx = evaluate(f, x);
    if (fx.is_zero()) return x;
    x = x - fx * evaluate(fprime_inv, x);
  }
  throw std::logic_error("semisimple part iteration did not converge");
}

JordanPair jordan_decompose(const RationalMatrix& g) {
  require_invertible(g);
  RationalMatrix s = additive_semisimple_part(g);
  RationalMatrix u = mat_inverse(s) * g;
  return {std::move(s), std::move(u)};
}

JordanPair jordan_decompose(const IntegerMatrix& g) { return jordan_decompose(to_rational(g)); }

bool is_semisimple(const RationalMatrix& g) {
  require_invertible(g);
  return is_squarefree(min_poly(g));
}

bool is_semisimple(const IntegerMatrix& g) { return is_semisimple(to_rational(g)); }

bool is_unipotent(const RationalMatrix& g) {
  const std::size_t n = g.n();
  return mat_pow(g - RationalMatrix::identity(n), n).is_zero();
}

bool is_unipotent(const IntegerMatrix& g) { return is_unipotent(to_rational(g)); }

JordanPair conjugate_decomposition(const RationalMatrix& g, const RationalMatrix& h) {
  require_invertible(h);
  return jordan_decompose(mat_inverse(h) * g * h);
}

bool has_torsion_semisimple_part(const IntegerMatrix& g) {
  return cyclotomic_factorization(char_poly(g)).has_value();
}

std::optional<std::uint64_t> torsion_order(const IntegerMatrix& g) {
  if (!is_unimodular(g)) throw PreconditionError("torsion order requires det = +-1");
  const std::size_t n = g.n();
  if (!cyclotomic_factorization(char_poly(g))) return std::nullopt;
  const Polynomial mp = min_poly(to_rational(g));
  if (!is_squarefree(mp)) return std::nullopt;
  const auto mp_factors = cyclotomic_factorization(mp);
  if (!mp_factors) throw std::logic_error("minimal polynomial of a cyclotomic-type matrix is not cyclotomic");
  std::uint64_t order = 1;
  for (auto d : *mp_factors) order = std::lcm(order, static_cast<std::uint64_t>(d));

  const IntegerMatrix id = IntegerMatrix::identity(n);
  if (!(mat_pow(g, order) == id)) throw std::logic_error("computed torsion order does not annihilate");
  std::uint64_t rest = order;
  for (std::uint64_t p = 2; p <= rest; ++p) {
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    if (mat_pow(g, order / p) == id) throw std::logic_error("computed torsion order is not minimal");
  }
  return order;
}

VirtuallyUnipotentScan scan_virtually_unipotent(const std::vector<IntegerMatrix>& gens, std::size_t word_length) {
  VirtuallyUnipotentScan result;
  result.word_length = word_length;
  if (gens.empty()) return result;
  const std::size_t n = gens.front().n();
  std::vector<IntegerMatrix> letters;
  for (const auto& g : gens) {
    if (g.n() != n) throw DimensionError("generators have different dimensions");
    letters.push_back(g);
    letters.push_back(unimodular_inverse(g));
  }
  std::set<IntegerMatrix> seen{IntegerMatrix::identity(n)};
  std::vector<IntegerMatrix> frontier{IntegerMatrix::identity(n)};
  for (std::size_t len = 1; len <= word_length; ++len) {
    std::vector<IntegerMatrix> next;
    for (const auto& w : frontier)
      for (const auto& l : letters) {
        IntegerMatrix x = w * l;
        if (!seen.insert(x).second) continue;
        ++result.words_checked;
        if (!has_torsion_semisimple_part(x)) {
          result.consistent = false;
          result.witness = x;
          return result;
        }
        next.push_back(std::move(x));
      }
    frontier = std::move(next);
  }
  return result;
}

bool is_virtually_unipotent_witness(const std::vector<IntegerMatrix>& gens, std::size_t word_length) {
  return scan_virtually_unipotent(gens, word_length).consistent;
}

}  // namespace congrusep
