#include "congrusep/separate.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

#include "congrusep/jordan.hpp"

namespace congrusep {

namespace {

std::vector<ModMatrix> reduce_all(const std::vector<IntegerMatrix>& gens, std::uint64_t m) {
  std::vector<ModMatrix> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(reduce(g, m));
  return out;
}

void check_generators(const std::vector<IntegerMatrix>& gens, std::size_t n) {
  for (const auto& g : gens) {
    if (!g.is_square() || g.rows() != n) throw DimensionError("generator dimension differs from n = " + std::to_string(n));
    if (!is_unimodular(g)) throw PreconditionError("generator " + to_string(g) + " is not in GL(n,Z)");
  }
}

// Iterates over the smaller of the two sets.
bool disjoint(const MatrixSet& a, const MatrixSet& b) {
  const MatrixSet& small = a.size() <= b.size() ? a : b;
  const MatrixSet& large = a.size() <= b.size() ? b : a;
  for (std::size_t i = 0; i < small.size(); ++i)
    if (large.contains(small.view(i))) return false;
  return true;
}

std::string schedule_summary(const std::vector<std::uint64_t>& s) {
  std::string out;
  for (auto m : s) out += (out.empty() ? "" : ",") + std::to_string(m);
  return out.empty() ? "none" : out;
}

// Per-representative state at one modulus.
struct RepStatus {
  std::optional<ConjClass> cls;
  bool disjoint = false;
};

std::vector<RepStatus> evaluate_reps(const ModMatrixGroup& image, const std::vector<IntegerMatrix>& reps,
                                     std::size_t cap) {
  std::vector<RepStatus> out(reps.size());
  const std::uint64_t m = image.modulus();
  for (std::size_t j = 0; j < reps.size(); ++j) {
    const ModMatrix r = reduce(reps[j], m);
    if (image.contains(r)) continue;
    out[j].cls = conj_class(r, cap);
    out[j].disjoint = disjoint(out[j].cls->orbit, image.elements());
  }
  return out;
}

TorsionFreeCertificate assemble_torsion_free(std::size_t n, const std::vector<IntegerMatrix>& gens,
                                             const std::vector<IntegerMatrix>& reps, const std::string& version,
                                             const ModMatrixGroup& image, const std::vector<RepStatus>& status) {
  TorsionFreeCertificate cert;
  cert.n = n;
  cert.m = image.modulus();
  cert.gamma_gens = gens;
  cert.image_size = image.size();
  cert.image_digest = image.digest();
  cert.table_version = version;
  MatrixSet all(n, image.modulus());
  for (std::size_t j = 0; j < reps.size(); ++j) {
    const ConjClass& cls = *status[j].cls;
    cert.reps.push_back({reps[j], *torsion_order(reps[j]), cls.size(), cls.digest(), true});
    for (std::size_t i = 0; i < cls.orbit.size(); ++i) all.insert(cls.orbit.view(i));
  }
  cert.class_size = all.size();
  cert.class_digest = all.digest();
  return cert;
}

}  // namespace

std::vector<std::uint64_t> default_schedule() {
  const std::vector<std::uint64_t> primes{2, 3, 5, 7, 11, 13, 17, 19, 23};
  std::vector<std::uint64_t> s;
  for (auto p : primes) {
    std::uint64_t q = 1;
    for (int k = 1; k <= 4; ++k) s.push_back(q *= p);
  }
  for (std::size_t i = 0; i < primes.size(); ++i)
    for (std::size_t j = i + 1; j < primes.size(); ++j) s.push_back(primes[i] * primes[j]);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

void validate_schedule(const std::vector<std::uint64_t>& schedule) {
  if (schedule.empty()) throw InputError("modulus schedule is empty");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i] < 2 || schedule[i] > kMaxModulus) throw InputError("scheduled modulus out of range [2, 2^31]");
    if (i > 0 && schedule[i] <= schedule[i - 1]) throw InputError("modulus schedule must be strictly increasing");
  }
}

std::string to_string(WitnessReason r) { return r == WitnessReason::denominator ? "denominator" : "image-escape"; }

std::optional<SeparationCertificate> try_separation(const std::vector<IntegerMatrix>& gamma_gens,
                                                    const IntegerMatrix& eta, std::uint64_t m, std::size_t cap) {
  const std::size_t n = eta.n();
  const ModMatrix e = reduce(eta, m);
  const ModMatrixGroup image = generate(n, m, reduce_all(gamma_gens, m), cap);
  if (image.contains(e)) return std::nullopt;
  const ConjClass cls = conj_class(e, cap);
  if (!disjoint(cls.orbit, image.elements())) return std::nullopt;
  SeparationCertificate cert;
  cert.n = n;
  cert.m = m;
  cert.gamma_gens = gamma_gens;
  cert.eta = eta;
  cert.image_size = image.size();
  cert.class_size = cls.size();
  cert.image_digest = image.digest();
  cert.class_digest = cls.digest();
  cert.disjoint = true;
  return cert;
}

SeparationCertificate avoid_conjugacy(const std::vector<IntegerMatrix>& gamma_gens, const IntegerMatrix& eta,
                                      const SearchOptions& opts) {
  validate_schedule(opts.schedule);
  const std::size_t n = eta.n();
  check_generators(gamma_gens, n);
  if (!is_unimodular(eta)) throw PreconditionError("eta is not in GL(n,Z)");
  if (!is_semisimple(eta)) throw PreconditionError("eta is not semisimple");
  std::vector<std::uint64_t> skipped;
  for (auto m : opts.schedule) {
    try {
      if (auto cert = try_separation(gamma_gens, eta, m, opts.element_cap)) return *cert;
    } catch (const BudgetExceeded&) {
      skipped.push_back(m);
    }
  }
  throw ScheduleExhausted("no separating modulus found up to " + std::to_string(opts.schedule.back()) +
                              " (budget-skipped moduli: " + schedule_summary(skipped) + ")",
                          opts.schedule.back(), skipped);
}

WitnessPrime witness_prime(const RationalMatrix& factor, const std::vector<IntegerMatrix>& gamma_gens,
                           const std::vector<std::uint64_t>& primes, unsigned max_level, std::size_t cap) {
  const std::size_t n = factor.n();
  check_generators(gamma_gens, n);
  if (!is_semisimple(factor)) throw PreconditionError("factor is not semisimple");
  for (auto p : primes)
    if (!is_prime(p)) throw InputError(std::to_string(p) + " in the prime schedule is not prime");

  if (!is_integral(factor)) {
    mpz_class den = 1;
    for (const auto& x : factor.data()) den = lcm(den, mpz_class(x.get_den()));
    for (std::uint64_t p = 2;; ++p) {
      if (p > 1'000'000) throw ResourceError("denominator has no prime factor below 10^6");
      if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p)) != 0) return {factor, p, 1, WitnessReason::denominator};
    }
  }

  const IntegerMatrix f = to_integer(factor);
  std::vector<std::pair<std::uint64_t, std::pair<std::uint64_t, unsigned>>> levels;
  for (auto p : primes) {
    std::uint64_t q = 1;
    for (unsigned k = 1; k <= max_level; ++k) {
      q *= p;
      if (q > kMaxModulus) break;
      levels.push_back({q, {p, k}});
    }
  }
  std::sort(levels.begin(), levels.end());
  std::vector<std::uint64_t> skipped;
  for (const auto& [q, pk] : levels) {
    const auto [p, k] = pk;
    std::optional<ModMatrix> fq;
    try {
      fq = reduce(f, q);
    } catch (const PreconditionError&) {
      // Not even invertible mod p: cannot lie in any image.
      return {factor, p, k, WitnessReason::image_escape};
    }
    try {
      const ModMatrixGroup image = padic_level_image(n, gamma_gens, p, k, cap);
      if (!image.contains(*fq)) return {factor, p, k, WitnessReason::image_escape};
    } catch (const BudgetExceeded&) {
      skipped.push_back(q);
    }
  }
  const std::uint64_t largest = levels.empty() ? 0 : levels.back().first;
  throw ScheduleExhausted("no witness prime found up to modulus " + std::to_string(largest) +
                              " (budget-skipped moduli: " + schedule_summary(skipped) + ")",
                          largest, skipped);
}

std::optional<TorsionFreeCertificate> try_torsion_free(std::size_t n, const std::vector<IntegerMatrix>& gamma_gens,
                                                       const std::vector<IntegerMatrix>& torsion_reps,
                                                       const std::string& table_version, std::uint64_t m,
                                                       std::size_t cap) {
  check_generators(gamma_gens, n);
  validate_torsion_reps(torsion_reps, n);
  const auto reps = nontrivial_reps(torsion_reps);
  const ModMatrixGroup image = generate(n, m, reduce_all(gamma_gens, m), cap);
  const auto status = evaluate_reps(image, reps, cap);
  for (const auto& s : status)
    if (!s.disjoint) return std::nullopt;
  return assemble_torsion_free(n, gamma_gens, reps, table_version, image, status);
}

TorsionFreeCertificate torsion_free_overgroup(std::size_t n, const std::vector<IntegerMatrix>& gamma_gens,
                                              const std::vector<IntegerMatrix>& torsion_reps,
                                              const std::string& table_version, const SearchOptions& opts) {
  validate_schedule(opts.schedule);
  if (n == 0) throw InputError("dimension must be positive");
  check_generators(gamma_gens, n);
  validate_torsion_reps(torsion_reps, n);
  const auto reps = nontrivial_reps(torsion_reps);

  std::vector<std::optional<std::uint64_t>> first_success(reps.size());
  std::vector<std::uint64_t> skipped;
  for (auto m : opts.schedule) {
    try {
      const ModMatrixGroup image = generate(n, m, reduce_all(gamma_gens, m), opts.element_cap);
      const auto status = evaluate_reps(image, reps, opts.element_cap);
      bool all = true;
      for (std::size_t j = 0; j < reps.size(); ++j) {
        if (status[j].disjoint && !first_success[j]) first_success[j] = m;
        all = all && status[j].disjoint;
      }
      if (all) return assemble_torsion_free(n, gamma_gens, reps, table_version, image, status);
    } catch (const BudgetExceeded&) {
      skipped.push_back(m);
    }
  }

  // No single scheduled modulus works for every class. The lcm of the
  // individual successes does (its image projects onto each), but the
  // certificate is rebuilt from scratch rather than inferred.
  const bool each = std::all_of(first_success.begin(), first_success.end(), [](const auto& s) { return s.has_value(); });
  if (each) {
    std::uint64_t l = 1;
    for (const auto& s : first_success) {
      l = std::lcm(l, *s);
      if (l > kMaxModulus) break;
    }
    if (l <= kMaxModulus) {
      try {
        if (auto cert = try_torsion_free(n, gamma_gens, torsion_reps, table_version, l, opts.element_cap)) return *cert;
      } catch (const BudgetExceeded&) {
        skipped.push_back(l);
      }
    }
  }
  throw ScheduleExhausted("no torsion-free congruence modulus found up to " + std::to_string(opts.schedule.back()) +
                              " (budget-skipped moduli: " + schedule_summary(skipped) + ")",
                          opts.schedule.back(), skipped);
}

// ---------------------------------------------------------------- verification

VerificationReport verify(const SeparationCertificate& cert, std::size_t cap) {
  if (cert.n == 0) throw InputError("certificate dimension must be positive");
  if (cert.m < 2 || cert.m > kMaxModulus) throw InputError("certificate modulus out of range");
  if (!cert.eta.is_square() || cert.eta.rows() != cert.n) throw DimensionError("eta dimension differs from n");
  for (const auto& g : cert.gamma_gens)
    if (!g.is_square() || g.rows() != cert.n) throw DimensionError("generator dimension differs from n");

  VerificationReport rep;
  if (!cert.disjoint) rep.fail("certificate does not assert disjointness");
  for (const auto& g : cert.gamma_gens)
    if (!is_unimodular(g)) rep.fail("generator " + to_string(g) + " is not in GL(n,Z)");
  if (!is_unimodular(cert.eta)) {
    rep.fail("eta is not in GL(n,Z)");
    return rep;
  }
  if (!is_semisimple(cert.eta)) rep.fail("eta is not semisimple");
  if (!rep.ok) return rep;

  const ModMatrixGroup image = generate(cert.n, cert.m, reduce_all(cert.gamma_gens, cert.m), cap);
  if (image.size() != cert.image_size) rep.fail("image_size mismatch: recomputed " + std::to_string(image.size()));
  if (image.digest() != cert.image_digest) rep.fail("image_digest mismatch");
  const ConjClass cls = conj_class(reduce(cert.eta, cert.m), cap);
  if (cls.size() != cert.class_size) rep.fail("class_size mismatch: recomputed " + std::to_string(cls.size()));
  if (cls.digest() != cert.class_digest) rep.fail("class_digest mismatch");
  if (!disjoint(cls.orbit, image.elements())) rep.fail("image meets the conjugacy class modulo " + std::to_string(cert.m));
  return rep;
}

VerificationReport verify(const TorsionFreeCertificate& cert, std::size_t cap) {
  if (cert.n == 0) throw InputError("certificate dimension must be positive");
  if (cert.m < 2 || cert.m > kMaxModulus) throw InputError("certificate modulus out of range");
  for (const auto& g : cert.gamma_gens)
    if (!g.is_square() || g.rows() != cert.n) throw DimensionError("generator dimension differs from n");
  for (const auto& r : cert.reps)
    if (!r.rep.is_square() || r.rep.rows() != cert.n) throw DimensionError("representative dimension differs from n");

  VerificationReport rep;
  for (const auto& g : cert.gamma_gens)
    if (!is_unimodular(g)) rep.fail("generator " + to_string(g) + " is not in GL(n,Z)");
  std::vector<IntegerMatrix> mats;
  for (const auto& r : cert.reps) {
    mats.push_back(r.rep);
    if (!r.disjoint) rep.fail("representative " + to_string(r.rep) + " not marked disjoint");
    if (r.rep.is_identity()) rep.fail("identity listed as a torsion representative");
    if (!is_unimodular(r.rep)) {
      rep.fail("representative " + to_string(r.rep) + " is not in GL(n,Z)");
      continue;
    }
    const auto ord = torsion_order(r.rep);
    if (!ord) rep.fail("representative " + to_string(r.rep) + " has infinite order");
    else if (*ord != r.order) rep.fail("recorded order of " + to_string(r.rep) + " is wrong");
  }
  if (cert.table_version == kTorsionTableVersion) {
    if (cert.n > 3) {
      rep.fail("builtin table version claimed for n > 3");
    } else {
      auto expected = nontrivial_reps(torsion_class_table(cert.n));
      auto got = mats;
      std::sort(expected.begin(), expected.end());
      std::sort(got.begin(), got.end());
      if (expected != got) rep.fail("representatives differ from builtin table " + std::string(kTorsionTableVersion));
    }
  } else if (cert.table_version != kCustomTableVersion) {
    rep.fail("unknown table_version '" + cert.table_version + "'");
  }
  if (!rep.ok) return rep;

  const ModMatrixGroup image = generate(cert.n, cert.m, reduce_all(cert.gamma_gens, cert.m), cap);
  if (image.size() != cert.image_size) rep.fail("image_size mismatch: recomputed " + std::to_string(image.size()));
  if (image.digest() != cert.image_digest) rep.fail("image_digest mismatch");
  MatrixSet all(cert.n, cert.m);
  for (const auto& r : cert.reps) {
    const ConjClass cls = conj_class(reduce(r.rep, cert.m), cap);
    if (cls.size() != r.class_size) rep.fail("class_size mismatch for " + to_string(r.rep));
    if (cls.digest() != r.class_digest) rep.fail("class_digest mismatch for " + to_string(r.rep));
    if (!disjoint(cls.orbit, image.elements()))
      rep.fail("image meets the class of " + to_string(r.rep) + " modulo " + std::to_string(cert.m));
    for (std::size_t i = 0; i < cls.orbit.size(); ++i) all.insert(cls.orbit.view(i));
  }
  if (all.size() != cert.class_size) rep.fail("class_size mismatch for the union of classes");
  if (all.digest() != cert.class_digest) rep.fail("class_digest mismatch for the union of classes");
  return rep;
}

bool verify_certificate(const SeparationCertificate& cert, std::size_t cap) { return verify(cert, cap).ok; }
bool verify_certificate(const TorsionFreeCertificate& cert, std::size_t cap) { return verify(cert, cap).ok; }

}  // namespace congrusep
