#pragma once

// Congruence certificates: a modulus m at which the reduction of a group
// misses the reduction of a conjugacy class, the torsion-free overgroup built
// from one such modulus for every torsion class, and witness primes for
// individual semisimple factors.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "congrusep/error.hpp"
#include "congrusep/exactlin.hpp"
#include "congrusep/modgrp.hpp"

namespace congrusep {

/// Ascending union of p^k (p <= 23 prime, k <= 4) and p*q (p < q <= 23).
std::vector<std::uint64_t> default_schedule();

/// Throws InputError unless the schedule is nonempty, strictly increasing and
/// inside [2, 2^31].
void validate_schedule(const std::vector<std::uint64_t>& schedule);

struct SearchOptions {
  std::vector<std::uint64_t> schedule = default_schedule();
  std::size_t element_cap = kDefaultElementCap;
};

/// No modulus in the schedule produced a certificate. This is never a claim
/// that none exists.
class ScheduleExhausted : public ResourceError {
 public:
  ScheduleExhausted(const std::string& what, std::uint64_t largest_modulus, std::vector<std::uint64_t> budget_skipped)
      : ResourceError(what), largest_modulus_(largest_modulus), budget_skipped_(std::move(budget_skipped)) {}
  std::uint64_t largest_modulus() const noexcept { return largest_modulus_; }
  /// Moduli abandoned because an enumeration hit the element cap.
  const std::vector<std::uint64_t>& budget_skipped() const noexcept { return budget_skipped_; }

 private:
  std::uint64_t largest_modulus_;
  std::vector<std::uint64_t> budget_skipped_;
};

struct SeparationCertificate {
  std::size_t n = 0;
  std::uint64_t m = 0;
  std::vector<IntegerMatrix> gamma_gens;
  IntegerMatrix eta;
  std::size_t image_size = 0;
  std::size_t class_size = 0;
  std::string image_digest;
  std::string class_digest;
  bool disjoint = false;
};

struct TorsionRepRecord {
  IntegerMatrix rep;
  std::uint64_t order = 0;
  std::size_t class_size = 0;
  std::string class_digest;
  bool disjoint = false;
};

inline constexpr const char* kCompletenessAssumption =
    "torsion_reps is assumed to contain a representative of every nontrivial conjugacy class of torsion "
    "elements of GL(n,Z); the identity is omitted because it lies in every image";

struct TorsionFreeCertificate {
  std::size_t n = 0;
  std::uint64_t m = 0;
  std::vector<IntegerMatrix> gamma_gens;
  std::vector<TorsionRepRecord> reps;
  std::size_t image_size = 0;
  std::string image_digest;
  /// Size and digest of the union of all recorded classes.
  std::size_t class_size = 0;
  std::string class_digest;
  std::string table_version;
  std::string assumption = kCompletenessAssumption;
};

enum class WitnessReason { denominator, image_escape };
std::string to_string(WitnessReason r);

struct WitnessPrime {
  RationalMatrix factor;
  std::uint64_t p = 0;
  unsigned level = 1;
  WitnessReason reason = WitnessReason::denominator;
};

/// First modulus in the schedule at which the image of <gamma_gens> and the
/// GL(n, Z/m)-class of eta are disjoint. Moduli whose enumeration exceeds the
/// cap are skipped; ScheduleExhausted when none succeeds.
/// Throws PreconditionError when eta is not semisimple or a generator is not
/// in GL(n, Z).
SeparationCertificate avoid_conjugacy(const std::vector<IntegerMatrix>& gamma_gens, const IntegerMatrix& eta,
                                      const SearchOptions& opts = {});

/// Attempts one modulus; nullopt when the sets meet. Budget errors propagate.
std::optional<SeparationCertificate> try_separation(const std::vector<IntegerMatrix>& gamma_gens,
                                                    const IntegerMatrix& eta, std::uint64_t m, std::size_t cap);

/// Denominator witness when the factor is not integral, otherwise the first
/// (p, K) ordered by p^K such that the factor escapes the level-K image.
/// ScheduleExhausted when nothing is found (always the case for I).
WitnessPrime witness_prime(const RationalMatrix& factor, const std::vector<IntegerMatrix>& gamma_gens,
                           const std::vector<std::uint64_t>& primes = {2, 3, 5, 7, 11, 13, 17, 19, 23},
                           unsigned max_level = 4, std::size_t cap = kDefaultElementCap);

/// One modulus separating the image of <gamma_gens> from every nontrivial
/// torsion representative. Scans the schedule for a joint success; failing
/// that, re-verifies the lcm of the per-representative first successes.
TorsionFreeCertificate torsion_free_overgroup(std::size_t n, const std::vector<IntegerMatrix>& gamma_gens,
                                              const std::vector<IntegerMatrix>& torsion_reps,
                                              const std::string& table_version, const SearchOptions& opts = {});

/// Builds the certificate at m, or nullopt if some class meets the image.
std::optional<TorsionFreeCertificate> try_torsion_free(std::size_t n, const std::vector<IntegerMatrix>& gamma_gens,
                                                       const std::vector<IntegerMatrix>& torsion_reps,
                                                       const std::string& table_version, std::uint64_t m,
                                                       std::size_t cap);

struct VerificationReport {
  bool ok = true;
  std::vector<std::string> failures;

  void fail(std::string why) {
    ok = false;
    failures.push_back(std::move(why));
  }
};

/// Recomputes every derived field from n, m and the matrices.
VerificationReport verify(const SeparationCertificate& cert, std::size_t cap = kDefaultElementCap);
VerificationReport verify(const TorsionFreeCertificate& cert, std::size_t cap = kDefaultElementCap);
bool verify_certificate(const SeparationCertificate& cert, std::size_t cap = kDefaultElementCap);
bool verify_certificate(const TorsionFreeCertificate& cert, std::size_t cap = kDefaultElementCap);

// ---- torsion tables

inline constexpr const char* kTorsionTableVersion = "glnz-torsion-v1";
inline constexpr const char* kCustomTableVersion = "custom";

/// Conjugacy class representatives of finite-order elements of GL(n, Z),
/// n in {1, 2, 3}, identity first. Orders are re-verified on every call.
/// Throws InputError for other n.
std::vector<IntegerMatrix> torsion_class_table(std::size_t n);

/// Orders of the given representatives; InputError for any matrix of infinite
/// order, wrong dimension or determinant other than +-1.
std::vector<std::uint64_t> validate_torsion_reps(const std::vector<IntegerMatrix>& reps, std::size_t n);

/// Drops representatives equal to the identity.
std::vector<IntegerMatrix> nontrivial_reps(const std::vector<IntegerMatrix>& reps);

struct TableScreenReport {
  std::size_t torsion_elements = 0;  // finite-order matrices found in the box
  std::size_t checks = 0;            // (element, modulus) pairs examined
  std::size_t unmatched = 0;         // provably conjugate to no entry mod m
  std::size_t undecided = 0;         // conjugacy search inconclusive
  std::vector<IntegerMatrix> unmatched_examples;
};

/// Necessary-condition completeness screen: every finite-order matrix with
/// entries in [-bound, bound] must be GL(n, Z/m)-conjugate to some table
/// entry for each m in `moduli`.
TableScreenReport screen_torsion_table(std::size_t n, const std::vector<IntegerMatrix>& table, int bound = 3,
                                       const std::vector<std::uint64_t>& moduli = {5, 7, 8, 9});

/// All finite-order matrices of GL(n, Z) with entries in [-bound, bound].
std::vector<IntegerMatrix> bounded_torsion_elements(std::size_t n, int bound);

}  // namespace congrusep
