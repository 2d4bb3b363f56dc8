#pragma once

// Crystallographic groups acting on Q^m by x -> S x + t, with holonomy S of
// finite order and a full-rank translation lattice. Only the abelian
// (step 1) case is handled.

#include <cstddef>
#include <optional>
#include <vector>

#include "congrusep/exactlin.hpp"

namespace congrusep {

/// (t, S): x -> S x + t.
struct AffineElement {
  RationalVector t;
  IntegerMatrix S;

  friend bool operator==(const AffineElement&, const AffineElement&) = default;
};

/// Affine composition (a * b)(x) = a(b(x)).
AffineElement compose(const AffineElement& a, const AffineElement& b);
AffineElement inverse(const AffineElement& a);

inline constexpr std::size_t kHolonomyCap = 10'000;

struct CrystGroup {
  std::size_t m = 0;
  /// Rows are a basis of the declared translation lattice L.
  RationalMatrix lattice;
  std::vector<AffineElement> gens;
  /// Nilpotency step of the translation subgroup; only 1 is supported.
  std::size_t step = 1;
};

/// Rejects malformed input, step > 1, unipotent holonomy other than I,
/// holonomy of infinite order, a lattice that is not holonomy invariant and
/// a holonomy group larger than kHolonomyCap. All failures are InputError.
void validate(const CrystGroup& g);

struct Splitting {
  std::vector<RationalVector> moving;  // W_S = im(S - I)
  std::vector<RationalVector> fixed;   // W_triv = ker(S - I)
};

/// Throws PreconditionError when S does not have finite order.
Splitting splitting(const IntegerMatrix& S);

struct AffineJordan {
  AffineElement semisimple;  // (t_s, S), t_s in W_S
  AffineElement unipotent;   // (t_u, I), t_u in W_triv
};

/// e = semisimple * unipotent with t_u the projection of t onto ker(S - I)
/// along im(S - I).
AffineJordan affine_jordan(const AffineElement& e);

/// Exact data attached to a validated group: the holonomy group with one
/// group element over each holonomy matrix, and the full translation
/// subgroup (which may be larger than the declared lattice).
struct CrystFrame {
  std::size_t m = 0;
  /// Columns are a Z-basis of the translation subgroup, input coordinates.
  RationalMatrix basis;
  /// Holonomy elements paired with a lift, both in frame coordinates.
  std::vector<AffineElement> holonomy;
  /// Generators in frame coordinates.
  std::vector<AffineElement> gens;

  AffineElement to_frame(const AffineElement& e) const;
  AffineElement from_frame(const AffineElement& e) const;
};

CrystFrame build_frame(const CrystGroup& g);

struct SemiFactorRep {
  RationalVector t_s;      // input coordinates
  AffineElement witness;   // group element whose semisimple factor is (t_s, S)
};

struct SemiFactorComponent {
  IntegerMatrix S;  // input coordinates
  /// Smith invariant factors of W_S(Z) / (S - I)(L cap W_S), ones included.
  std::vector<mpz_class> invariant_factors;
  mpz_class quotient_order;
  std::vector<SemiFactorRep> reps;

  // Coset bookkeeping in frame coordinates: rows of coset_basis are a basis
  // of the projected lattice, coset_relations the Hermite form of (S - I)L
  // in that basis.
  RationalMatrix coset_basis;
  IntegerMatrix coset_relations;
  std::vector<RationalVector> rep_coords;
};

struct SemiFactorSet {
  CrystFrame frame;
  std::vector<SemiFactorComponent> components;

  std::size_t total() const;
};

/// Semisimple factors of the group modulo conjugation by translations: one
/// component per holonomy element, one representative per realized coset.
SemiFactorSet semifactor_representatives(const CrystGroup& g, std::size_t bit_bound = kDefaultBitBound);

/// (component, representative) indices of the semisimple factor of e, an
/// element of the group. Throws PreconditionError for holonomy outside the
/// group.
std::pair<std::size_t, std::size_t> locate(const SemiFactorSet& set, const AffineElement& e);

/// (t, S) -> [[S, D t], [0, 1]] in frame coordinates with the least D >= 1
/// clearing every denominator.
IntegerMatrix embed_element(const AffineElement& frame_element, const mpz_class& D);

/// Embedded generators followed by the embedded translation-lattice basis.
std::vector<IntegerMatrix> embed_affine(const CrystGroup& g);

struct LiftedGroup {
  mpz_class D;
  std::vector<IntegerMatrix> gens;
  /// Embedded semisimple-factor representatives, component-major.
  std::vector<IntegerMatrix> semisimple_factors;
};

/// One embedding into GL(m+1, Z) whose denominator clears the generators and
/// every semisimple-factor representative.
LiftedGroup lift_to_gl(const CrystGroup& g, std::size_t bit_bound = kDefaultBitBound);

template <class Op>
auto lift_to_gl(const CrystGroup& g, Op&& op) {
  return op(lift_to_gl(g));
}

}  // namespace congrusep
