#pragma once

// Finite matrix groups over Z/m: the reduction map r_m, subgroup closure,
// conjugacy classes in GL(n, Z/m), and the finite-level images that stand in
// for p-adic closures.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "congrusep/exactlin.hpp"

namespace congrusep {

/// Largest supported modulus; keeps every product of two residues in 64 bits.
inline constexpr std::uint64_t kMaxModulus = 1ULL << 31;
inline constexpr std::size_t kDefaultElementCap = 10'000'000;

/// Element of GL(n, Z/m), entries in [0, m), row-major.
class ModMatrix {
 public:
  /// Validates shape, range and that det is a unit mod m.
  ModMatrix(std::size_t n, std::uint64_t m, std::vector<std::uint32_t> entries);
  static ModMatrix identity(std::size_t n, std::uint64_t m);

  std::size_t n() const noexcept { return n_; }
  std::uint64_t modulus() const noexcept { return m_; }
  const std::vector<std::uint32_t>& entries() const noexcept { return entries_; }
  std::uint32_t operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

  std::uint64_t det() const;
  ModMatrix inverse() const;
  bool is_identity() const;
  /// Image under Z/m -> Z/d for d | m.
  ModMatrix project(std::uint64_t d) const;
  /// Canonical byte encoding (4-byte big-endian entries, row-major).
  std::string encoding() const;

  friend ModMatrix operator*(const ModMatrix& a, const ModMatrix& b);
  friend bool operator==(const ModMatrix& a, const ModMatrix& b) {
    return a.n_ == b.n_ && a.m_ == b.m_ && a.entries_ == b.entries_;
  }
  friend bool operator<(const ModMatrix& a, const ModMatrix& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    if (a.m_ != b.m_) return a.m_ < b.m_;
    return a.entries_ < b.entries_;
  }

 private:
  struct Unchecked {};
  ModMatrix(Unchecked, std::size_t n, std::uint64_t m, std::vector<std::uint32_t> entries)
      : n_(n), m_(m), entries_(std::move(entries)) {}
  friend class MatrixSet;

  std::size_t n_;
  std::uint64_t m_;
  std::vector<std::uint32_t> entries_;
};

struct ModMatrixHash {
  std::size_t operator()(const ModMatrix& a) const noexcept;
};

/// Determinant of an n x n residue block modulo m (division-free elimination,
/// valid for composite m).
std::uint64_t det_mod(std::span<const std::uint32_t> entries, std::size_t n, std::uint64_t m);

/// Hash-indexed set of same-shape residue matrices stored in one flat pool.
/// Insertion order is preserved and is the enumeration order.
class MatrixSet {
 public:
  MatrixSet(std::size_t n, std::uint64_t m);
  MatrixSet(const MatrixSet& other);
  MatrixSet& operator=(const MatrixSet& other);
  MatrixSet(MatrixSet&&) noexcept = default;
  MatrixSet& operator=(MatrixSet&&) noexcept = default;

  std::size_t n() const noexcept { return pool_->n; }
  std::uint64_t modulus() const noexcept { return pool_->m; }
  std::size_t size() const noexcept { return index_.size(); }

  /// Returns true when the matrix was not present.
  bool insert(std::span<const std::uint32_t> entries);
  bool insert(const ModMatrix& a);
  bool contains(std::span<const std::uint32_t> entries) const;
  bool contains(const ModMatrix& a) const;

  std::span<const std::uint32_t> view(std::size_t i) const {
    const std::size_t nn = pool_->n * pool_->n;
    return {pool_->data.data() + i * nn, nn};
  }
  ModMatrix at(std::size_t i) const;
  /// Elements in canonical (lexicographic entry) order.
  std::vector<ModMatrix> sorted() const;
  /// SHA-256 over a header naming n, m and the count followed by the sorted
  /// canonical encodings; independent of insertion order. Lowercase hex.
  std::string digest() const;

 private:
  struct Pool {
    std::size_t n;
    std::uint64_t m;
    std::vector<std::uint32_t> data;
  };
  struct Hash {
    const Pool* pool;
    std::size_t operator()(std::size_t i) const noexcept;
  };
  struct Eq {
    const Pool* pool;
    bool operator()(std::size_t a, std::size_t b) const noexcept;
  };
  using Index = std::unordered_set<std::size_t, Hash, Eq>;

  std::unique_ptr<Pool> pool_;
  Index index_;
};

/// Finite subgroup of GL(n, Z/m) with its full element set.
class ModMatrixGroup {
 public:
  ModMatrixGroup(std::vector<ModMatrix> generators, MatrixSet elements);

  std::size_t n() const noexcept { return elements_.n(); }
  std::uint64_t modulus() const noexcept { return elements_.modulus(); }
  const std::vector<ModMatrix>& generators() const noexcept { return generators_; }
  const MatrixSet& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool contains(const ModMatrix& a) const { return elements_.contains(a); }
  std::string digest() const { return elements_.digest(); }

 private:
  std::vector<ModMatrix> generators_;
  MatrixSet elements_;
};

/// Orbit of `representative` under conjugation by GL(n, Z/m).
struct ConjClass {
  ModMatrix representative;
  MatrixSet orbit;

  std::size_t size() const noexcept { return orbit.size(); }
  bool contains(const ModMatrix& a) const { return orbit.contains(a); }
  std::string digest() const { return orbit.digest(); }
};

/// r_m. Throws PreconditionError if the image is not invertible mod m.
ModMatrix reduce(const IntegerMatrix& g, std::uint64_t m);
/// r_m for rational input. Throws DenominatorError (carrying the smallest
/// prime shared by a denominator and m) when a denominator is not a unit.
ModMatrix reduce(const RationalMatrix& g, std::uint64_t m);

/// Breadth-first closure of the generators (and their inverses) from the
/// identity. Throws BudgetExceeded when more than `cap` elements appear.
ModMatrixGroup generate(std::size_t n, std::uint64_t m, const std::vector<ModMatrix>& gens,
                        std::size_t cap = kDefaultElementCap);

/// Generating set of GL(n, Z/m): elementary transvections E_ij(1), then
/// diag(u,1,...,1) for one u per cyclic factor of (Z/m)^x.
std::vector<ModMatrix> gl_generators(std::size_t n, std::uint64_t m);

/// Generators of the unit group (Z/m)^x, one per cyclic factor.
std::vector<std::uint64_t> unit_group_generators(std::uint64_t m);

/// |GL(n, Z/m)| from the prime-power product formula.
mpz_class gl_order(std::size_t n, std::uint64_t m);

/// Orbit closure of `rep` under conjugation by gl_generators(n, m).
ConjClass conj_class(const ModMatrix& rep, std::size_t cap = kDefaultElementCap);

/// generate(reduce(gens, p^K)).
ModMatrixGroup padic_level_image(std::size_t n, const std::vector<IntegerMatrix>& gens, std::uint64_t p,
                                 unsigned level, std::size_t cap = kDefaultElementCap);

/// Elements of `group` lying in the GL(n, Z/m)-class of some reduced
/// torsion representative; sorted canonically.
std::vector<ModMatrix> semisimple_elements_mod(const ModMatrixGroup& group,
                                               const std::vector<IntegerMatrix>& torsion_reps,
                                               std::size_t cap = kDefaultElementCap);

enum class ConjugacyVerdict { conjugate, not_conjugate, unknown };

struct ConjugacyResult {
  ConjugacyVerdict verdict = ConjugacyVerdict::unknown;
  std::optional<ModMatrix> conjugator;  // X with X^-1 a X == b
};

/// Decides whether a and b are conjugate in GL(n, Z/m) without enumerating
/// the class: the solution module of aX = Xb is parametrised through a Smith
/// normal form and searched for an invertible element (seeded samples first,
/// exhaustive when the module has at most `exhaustive_limit` elements).
ConjugacyResult find_conjugator(const ModMatrix& a, const ModMatrix& b,
                                std::uint64_t exhaustive_limit = 1ULL << 22);

bool is_prime(std::uint64_t p);
/// Prime factorisation as (p, k) pairs in increasing order of p.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t m);

}  // namespace congrusep
