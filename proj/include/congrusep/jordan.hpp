#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "congrusep/exactlin.hpp"

namespace congrusep {

/// Multiplicative Jordan decomposition g = semisimple * unipotent over Q.
/// The factors commute, the semisimple factor has squarefree minimal
/// polynomial and (unipotent - I)^n == 0.
struct JordanPair {
  RationalMatrix semisimple;
  RationalMatrix unipotent;

  friend bool operator==(const JordanPair&, const JordanPair&) = default;
};

/// Throws SingularMatrixError for singular g.
JordanPair jordan_decompose(const RationalMatrix& g);
JordanPair jordan_decompose(const IntegerMatrix& g);

/// Additive semisimple part of an arbitrary square matrix: the unique s that
/// is a polynomial in a, diagonalisable over C, with a - s nilpotent.
RationalMatrix additive_semisimple_part(const RationalMatrix& a);

/// Squarefree minimal polynomial. Throws SingularMatrixError for singular g.
bool is_semisimple(const RationalMatrix& g);
bool is_semisimple(const IntegerMatrix& g);

/// (g - I)^n == 0. The identity counts as unipotent.
bool is_unipotent(const RationalMatrix& g);
bool is_unipotent(const IntegerMatrix& g);

/// jordan_decompose(h^-1 g h).
JordanPair conjugate_decomposition(const RationalMatrix& g, const RationalMatrix& h);

/// Least m >= 1 with g^m == I, or nullopt when g has infinite order.
/// Finite order forces the characteristic polynomial to be a product of
/// cyclotomic polynomials and g to be semisimple; the order is then the lcm of
/// the cyclotomic indices occurring in the minimal polynomial.
/// Throws PreconditionError when det g is not +-1.
std::optional<std::uint64_t> torsion_order(const IntegerMatrix& g);

/// True when every eigenvalue of g is a root of unity (char poly is a product
/// of cyclotomic polynomials). Equivalent to: the semisimple part has finite
/// order.
bool has_torsion_semisimple_part(const IntegerMatrix& g);

struct VirtuallyUnipotentScan {
  bool consistent = true;
  std::size_t word_length = 0;        // lengths checked
  std::size_t words_checked = 0;      // distinct group elements examined
  std::optional<IntegerMatrix> witness;  // first offending element, if any
};

/// Bounded necessary-condition scan: every distinct element reachable by a
/// word of length <= word_length in gens and their inverses must have a
/// torsion semisimple part. A consistent result is not a proof.
VirtuallyUnipotentScan scan_virtually_unipotent(const std::vector<IntegerMatrix>& gens, std::size_t word_length);
bool is_virtually_unipotent_witness(const std::vector<IntegerMatrix>& gens, std::size_t word_length);

}  // namespace congrusep
