#include "congrusep/modgrp.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "congrusep/error.hpp"

namespace congrusep {

namespace {

void check_modulus(std::uint64_t m) {
  if (m < 2) throw InputError("modulus must be at least 2");
  if (m > kMaxModulus) throw InputError("modulus " + std::to_string(m) + " exceeds the supported maximum 2^31");
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) { return (a * b) % m; }

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1U) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1U;
  }
  return r;
}

// Inverse of a unit modulo m by the extended Euclidean algorithm.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw PreconditionError("element is not a unit modulo " + std::to_string(m));
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

void mul_into(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out, std::size_t n, std::uint64_t m) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < n; ++k) acc = (acc + static_cast<std::uint64_t>(a[i * n + k]) * b[k * n + j]) % m;
      out[i * n + j] = static_cast<std::uint32_t>(acc);
    }
}

std::uint64_t hash_entries(std::span<const std::uint32_t> e) {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto x : e) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint32_t residue(const mpz_class& x, std::uint64_t m) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(m));
  return static_cast<std::uint32_t>(r.get_ui());
}

std::string to_hex(const unsigned char* data, std::size_t len) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(2 * len);
  for (std::size_t i = 0; i < len; ++i) {
    s.push_back(kDigits[data[i] >> 4U]);
    s.push_back(kDigits[data[i] & 0xFU]);
  }
  return s;
}

void append_be32(std::string& out, std::uint32_t x) {
  out.push_back(static_cast<char>((x >> 24U) & 0xFFU));
  out.push_back(static_cast<char>((x >> 16U) & 0xFFU));
  out.push_back(static_cast<char>((x >> 8U) & 0xFFU));
  out.push_back(static_cast<char>(x & 0xFFU));
}

}  // namespace

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t m) {
  std::vector<std::pair<std::uint64_t, unsigned>> f;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    unsigned k = 0;
    while (m % p == 0) {
      m /= p;
      ++k;
    }
    f.emplace_back(p, k);
  }
  if (m > 1) f.emplace_back(m, 1);
  return f;
}

std::uint64_t det_mod(std::span<const std::uint32_t> entries, std::size_t n, std::uint64_t m) {
  // Euclidean row reduction over the integers representing Z/m: every step
  // is a unimodular row operation, so the triangular result has the same
  // determinant up to the tracked sign.
  std::vector<std::uint64_t> a(entries.begin(), entries.end());
  bool negate = false;
  for (std::size_t c = 0; c < n; ++c) {
    for (;;) {
      std::size_t piv = n;
      for (std::size_t i = c; i < n; ++i)
        if (a[i * n + c] != 0 && (piv == n || a[i * n + c] < a[piv * n + c])) piv = i;
      if (piv == n) return 0;
      if (piv != c) {
        for (std::size_t j = 0; j < n; ++j) std::swap(a[piv * n + j], a[c * n + j]);
        negate = !negate;
      }
      bool clean = true;
      for (std::size_t i = c + 1; i < n; ++i) {
        if (a[i * n + c] == 0) continue;
        const std::uint64_t q = a[i * n + c] / a[c * n + c];
        for (std::size_t j = c; j < n; ++j) a[i * n + j] = (a[i * n + j] + (m - mulmod(q, a[c * n + j], m))) % m;
        if (a[i * n + c] != 0) clean = false;
      }
      if (clean) break;
    }
  }
  std::uint64_t d = 1 % m;
  for (std::size_t i = 0; i < n; ++i) d = mulmod(d, a[i * n + i], m);
  return negate ? (m - d) % m : d;
}

// ---------------------------------------------------------------- ModMatrix

ModMatrix::ModMatrix(std::size_t n, std::uint64_t m, std::vector<std::uint32_t> entries)
    : n_(n), m_(m), entries_(std::move(entries)) {
  check_modulus(m);
  if (n == 0) throw InputError("matrix dimension must be positive");
  if (entries_.size() != n * n) throw DimensionError("residue matrix has the wrong number of entries");
  for (auto x : entries_)
    if (x >= m) throw InputError("residue out of range [0, m)");
  if (std::gcd(det(), m) != 1)
    throw PreconditionError("matrix is not invertible modulo " + std::to_string(m));
}

ModMatrix ModMatrix::identity(std::size_t n, std::uint64_t m) {
  check_modulus(m);
  std::vector<std::uint32_t> e(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
  return ModMatrix(Unchecked{}, n, m, std::move(e));
}

std::uint64_t ModMatrix::det() const { return det_mod(entries_, n_, m_); }

ModMatrix ModMatrix::inverse() const {
  // adj(A) = det(A) * A^-1 is integral for the integer lift.
  IntegerMatrix lift(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) lift(i, j) = entries_[i * n_ + j];
  const mpz_class d = congrusep::determinant(lift);
  const IntegerMatrix adj = to_integer(scale(mpq_class(d), mat_inverse(to_rational(lift))));
  const std::uint64_t dinv = invmod(residue(d, m_), m_);
  std::vector<std::uint32_t> e(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) e[i * n_ + j] = static_cast<std::uint32_t>(mulmod(residue(adj(i, j), m_), dinv, m_));
  return ModMatrix(Unchecked{}, n_, m_, std::move(e));
}

bool ModMatrix::is_identity() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (entries_[i * n_ + j] != (i == j ? 1U : 0U)) return false;
  return true;
}

ModMatrix ModMatrix::project(std::uint64_t d) const {
  if (d < 2 || m_ % d != 0) throw InputError("projection target must be a divisor >= 2 of the modulus");
  std::vector<std::uint32_t> e(entries_.size());
  std::transform(entries_.begin(), entries_.end(), e.begin(), [d](std::uint32_t x) { return static_cast<std::uint32_t>(x % d); });
  return ModMatrix(Unchecked{}, n_, d, std::move(e));
}

std::string ModMatrix::encoding() const {
  std::string s;
  s.reserve(4 * entries_.size());
  for (auto x : entries_) append_be32(s, x);
  return s;
}

ModMatrix operator*(const ModMatrix& a, const ModMatrix& b) {
  if (a.n_ != b.n_ || a.m_ != b.m_) throw DimensionError("residue matrices differ in dimension or modulus");
  std::vector<std::uint32_t> e(a.n_ * a.n_);
  mul_into(a.entries_.data(), b.entries_.data(), e.data(), a.n_, a.m_);
  return ModMatrix(ModMatrix::Unchecked{}, a.n_, a.m_, std::move(e));
}

std::size_t ModMatrixHash::operator()(const ModMatrix& a) const noexcept {
  return static_cast<std::size_t>(hash_entries(a.entries()));
}

// ---------------------------------------------------------------- MatrixSet

std::size_t MatrixSet::Hash::operator()(std::size_t i) const noexcept {
  const std::size_t nn = pool->n * pool->n;
  return static_cast<std::size_t>(hash_entries({pool->data.data() + i * nn, nn}));
}

bool MatrixSet::Eq::operator()(std::size_t a, std::size_t b) const noexcept {
  const std::size_t nn = pool->n * pool->n;
  return std::equal(pool->data.begin() + static_cast<std::ptrdiff_t>(a * nn),
                    pool->data.begin() + static_cast<std::ptrdiff_t>((a + 1) * nn),
                    pool->data.begin() + static_cast<std::ptrdiff_t>(b * nn));
}

MatrixSet::MatrixSet(std::size_t n, std::uint64_t m)
    : pool_(std::make_unique<Pool>(Pool{n, m, {}})), index_(16, Hash{pool_.get()}, Eq{pool_.get()}) {}

MatrixSet::MatrixSet(const MatrixSet& other) : MatrixSet(other.n(), other.modulus()) {
  pool_->data = other.pool_->data;
  index_.reserve(other.size());
  for (std::size_t i = 0; i < other.size(); ++i) index_.insert(i);
}

MatrixSet& MatrixSet::operator=(const MatrixSet& other) {
  if (this != &other) {
    MatrixSet copy(other);
    *this = std::move(copy);
  }
  return *this;
}

bool MatrixSet::insert(std::span<const std::uint32_t> entries) {
  const std::size_t nn = pool_->n * pool_->n;
  if (entries.size() != nn) throw DimensionError("matrix set entry has the wrong shape");
  const std::size_t idx = index_.size();
  pool_->data.insert(pool_->data.end(), entries.begin(), entries.end());
  if (index_.insert(idx).second) return true;
  pool_->data.resize(idx * nn);
  return false;
}

bool MatrixSet::insert(const ModMatrix& a) {
  if (a.n() != n() || a.modulus() != modulus()) throw DimensionError("matrix set entry has the wrong dimension or modulus");
  return insert(std::span<const std::uint32_t>(a.entries()));
}

bool MatrixSet::contains(std::span<const std::uint32_t> entries) const {
  // Probe by appending a scratch copy; the pool is logically unchanged.
  auto* self = const_cast<MatrixSet*>(this);
  const std::size_t nn = pool_->n * pool_->n;
  if (entries.size() != nn) return false;
  const std::size_t idx = index_.size();
  self->pool_->data.insert(self->pool_->data.end(), entries.begin(), entries.end());
  const bool found = index_.find(idx) != index_.end();
  self->pool_->data.resize(idx * nn);
  return found;
}

bool MatrixSet::contains(const ModMatrix& a) const {
  if (a.n() != n() || a.modulus() != modulus()) return false;
  return contains(std::span<const std::uint32_t>(a.entries()));
}

ModMatrix MatrixSet::at(std::size_t i) const {
  auto v = view(i);
  return ModMatrix(ModMatrix::Unchecked{}, n(), modulus(), std::vector<std::uint32_t>(v.begin(), v.end()));
}

std::vector<ModMatrix> MatrixSet::sorted() const {
  std::vector<ModMatrix> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i));
  std::sort(out.begin(), out.end());
  return out;
}

std::string MatrixSet::digest() const {
  std::vector<std::size_t> order(size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) {
    auto va = view(a), vb = view(b);
    return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
  });
  std::string buf = "congrusep-set-v1 n=" + std::to_string(n()) + " m=" + std::to_string(modulus()) +
                    " count=" + std::to_string(size()) + "\n";
  buf.reserve(buf.size() + size() * n() * n() * 4);
  for (auto i : order)
    for (auto x : view(i)) append_be32(buf, x);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(buf.data(), buf.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 computation failed");
  return to_hex(md, len);
}

// ---------------------------------------------------------------- groups

ModMatrixGroup::ModMatrixGroup(std::vector<ModMatrix> generators, MatrixSet elements)
    : generators_(std::move(generators)), elements_(std::move(elements)) {}

ModMatrix reduce(const IntegerMatrix& g, std::uint64_t m) {
  check_modulus(m);
  const std::size_t n = g.n();
  std::vector<std::uint32_t> e(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e[i * n + j] = residue(g(i, j), m);
  return ModMatrix(n, m, std::move(e));
}

ModMatrix reduce(const RationalMatrix& g, std::uint64_t m) {
  check_modulus(m);
  const std::size_t n = g.n();
  std::vector<std::uint32_t> e(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const mpq_class& x = g(i, j);
      const std::uint64_t den = residue(x.get_den(), m);
      mpz_class shared;
      mpz_gcd_ui(shared.get_mpz_t(), x.get_den().get_mpz_t(), static_cast<unsigned long>(m));
      if (shared != 1) {
        const std::uint64_t p = factorize(shared.get_ui()).front().first;
        throw DenominatorError("denominator " + x.get_den().get_str() + " is not a unit modulo " + std::to_string(m), p);
      }
      e[i * n + j] = static_cast<std::uint32_t>(mulmod(residue(x.get_num(), m), invmod(den, m), m));
    }
  return ModMatrix(n, m, std::move(e));
}

ModMatrixGroup generate(std::size_t n, std::uint64_t m, const std::vector<ModMatrix>& gens, std::size_t cap) {
  check_modulus(m);
  std::vector<ModMatrix> letters;
  for (const auto& g : gens) {
    if (g.n() != n || g.modulus() != m) throw DimensionError("generator dimension or modulus mismatch");
    letters.push_back(g);
    letters.push_back(g.inverse());
  }
  MatrixSet elements(n, m);
  elements.insert(ModMatrix::identity(n, m));
  std::vector<std::uint32_t> cur(n * n), prod(n * n);
  for (std::size_t head = 0; head < elements.size(); ++head) {
    auto v = elements.view(head);
    std::copy(v.begin(), v.end(), cur.begin());
    for (const auto& l : letters) {
      mul_into(cur.data(), l.entries().data(), prod.data(), n, m);
      if (elements.insert(prod) && elements.size() > cap)
        throw BudgetExceeded("subgroup closure exceeded the element cap of " + std::to_string(cap) + " (modulus " +
                                 std::to_string(m) + ")",
                             elements.size() - 1);
    }
  }
  return ModMatrixGroup(gens, std::move(elements));
}

std::vector<std::uint64_t> unit_group_generators(std::uint64_t m) {
  check_modulus(m);
  std::vector<std::uint64_t> out;
  const auto factors = factorize(m);
  for (const auto& [p, k] : factors) {
    std::uint64_t pk = 1;
    for (unsigned i = 0; i < k; ++i) pk *= p;
    std::vector<std::uint64_t> local;
    if (p == 2) {
      if (k == 2) local.push_back(3);
      if (k >= 3) {
        local.push_back(pk - 1);
        local.push_back(5);
      }
    } else {
      const std::uint64_t phi = pk / p * (p - 1);
      const auto phi_primes = factorize(phi);
      for (std::uint64_t g = 2; g < pk; ++g) {
        if (g % p == 0) continue;
        bool primitive = true;
        for (const auto& [q, e] : phi_primes)
          if (powmod(g, phi / q, pk) == 1) {
            primitive = false;
            break;
          }
        if (primitive) {
          local.push_back(g);
          break;
        }
      }
    }
    // Lift by CRT: u = g mod p^k, u = 1 mod m / p^k.
    const std::uint64_t rest = m / pk;
    for (auto g : local) {
      if (rest == 1) {
        out.push_back(g);
        continue;
      }
      const std::uint64_t inv = invmod(rest % pk, pk);
      // u = 1 + rest * t with t = (g - 1) * rest^-1 mod p^k
      const std::uint64_t t = mulmod((g + pk - 1) % pk, inv, pk);
      out.push_back((1 + rest * t) % m);
    }
  }
  return out;
}

std::vector<ModMatrix> gl_generators(std::size_t n, std::uint64_t m) {
  check_modulus(m);
  std::vector<ModMatrix> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      std::vector<std::uint32_t> e(n * n, 0);
      for (std::size_t k = 0; k < n; ++k) e[k * n + k] = 1;
      e[i * n + j] = 1;
      out.emplace_back(n, m, std::move(e));
    }
  for (auto u : unit_group_generators(m)) {
    std::vector<std::uint32_t> e(n * n, 0);
    for (std::size_t k = 0; k < n; ++k) e[k * n + k] = 1;
    e[0] = static_cast<std::uint32_t>(u);
    out.emplace_back(n, m, std::move(e));
  }
  return out;
}

mpz_class gl_order(std::size_t n, std::uint64_t m) {
  check_modulus(m);
  mpz_class order = 1;
  for (const auto& [p, k] : factorize(m)) {
    mpz_class pn, pk1;
    mpz_ui_pow_ui(pn.get_mpz_t(), p, n);
    mpz_ui_pow_ui(pk1.get_mpz_t(), p, static_cast<unsigned long>((k - 1) * n * n));
    mpz_class local = pk1;
    mpz_class pi = 1;
    for (std::size_t i = 0; i < n; ++i) {
      local *= pn - pi;
      pi *= p;
    }
    order *= local;
  }
  return order;
}

ConjClass conj_class(const ModMatrix& rep, std::size_t cap) {
  const std::size_t n = rep.n();
  const std::uint64_t m = rep.modulus();
  struct Pair {
    ModMatrix h, hinv;
  };
  std::vector<Pair> conj;
  for (auto& h : gl_generators(n, m)) {
    ModMatrix hinv = h.inverse();
    conj.push_back({h, hinv});
    conj.push_back({hinv, h});
  }
  MatrixSet orbit(n, m);
  orbit.insert(rep);
  std::vector<std::uint32_t> cur(n * n), tmp(n * n), out(n * n);
  for (std::size_t head = 0; head < orbit.size(); ++head) {
    auto v = orbit.view(head);
    std::copy(v.begin(), v.end(), cur.begin());
    for (const auto& [h, hinv] : conj) {
      mul_into(hinv.entries().data(), cur.data(), tmp.data(), n, m);
      mul_into(tmp.data(), h.entries().data(), out.data(), n, m);
      if (orbit.insert(out) && orbit.size() > cap)
        throw BudgetExceeded("conjugacy class exceeded the element cap of " + std::to_string(cap) + " (modulus " +
                                 std::to_string(m) + ")",
                             orbit.size() - 1);
    }
  }
  return ConjClass{rep, std::move(orbit)};
}

ModMatrixGroup padic_level_image(std::size_t n, const std::vector<IntegerMatrix>& gens, std::uint64_t p,
                                 unsigned level, std::size_t cap) {
  if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
  if (level == 0) throw InputError("level must be positive");
  std::uint64_t m = 1;
  for (unsigned i = 0; i < level; ++i) {
    m *= p;
    check_modulus(m);
  }
  std::vector<ModMatrix> reduced;
  for (const auto& g : gens) {
    if (g.n() != n) throw DimensionError("generator dimension mismatch");
    reduced.push_back(reduce(g, m));
  }
  return generate(n, m, reduced, cap);
}

std::vector<ModMatrix> semisimple_elements_mod(const ModMatrixGroup& group,
                                               const std::vector<IntegerMatrix>& torsion_reps, std::size_t cap) {
  MatrixSet hits(group.n(), group.modulus());
  for (const auto& rep : torsion_reps) {
    const ConjClass cls = conj_class(reduce(rep, group.modulus()), cap);
    if (cls.size() <= group.size()) {
      for (std::size_t i = 0; i < cls.orbit.size(); ++i)
        if (group.elements().contains(cls.orbit.view(i))) hits.insert(cls.orbit.view(i));
    } else {
      for (std::size_t i = 0; i < group.size(); ++i)
        if (cls.orbit.contains(group.elements().view(i))) hits.insert(group.elements().view(i));
    }
  }
  return hits.sorted();
}

// ---------------------------------------------------------------- conjugacy test

namespace {

// Coefficients of det(xI - A) over Z for the integer lift, reduced mod m.
std::vector<std::uint32_t> char_poly_mod(const ModMatrix& a) {
  const std::size_t n = a.n();
  IntegerMatrix lift(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) lift(i, j) = a(i, j);
  const Polynomial cp = char_poly(lift);
  std::vector<std::uint32_t> out;
  for (std::size_t k = 0; k <= n; ++k) out.push_back(residue(cp.coeff(k).get_num(), a.modulus()));
  return out;
}

}  // namespace

ConjugacyResult find_conjugator(const ModMatrix& a, const ModMatrix& b, std::uint64_t exhaustive_limit) {
  if (a.n() != b.n() || a.modulus() != b.modulus()) throw DimensionError("conjugacy test needs equal shapes");
  const std::size_t n = a.n();
  const std::uint64_t m = a.modulus();
  if (char_poly_mod(a) != char_poly_mod(b)) return {ConjugacyVerdict::not_conjugate, std::nullopt};

  // Linear map X -> aX - Xb on vec(X), index (i, j) -> i*n + j.
  const std::size_t nn = n * n;
  IntegerMatrix sys(nn, nn);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        sys(i * n + j, k * n + j) += a(i, k);
        sys(i * n + j, i * n + k) -= b(k, j);
      }
  const SmithDecomposition snf = smith_normal_form(sys);
  // Solutions: x = V y with d_i y_i = 0 mod m; y_i ranges over multiples of
  // m / gcd(d_i, m), giving gcd(d_i, m) choices (m when d_i = 0).
  std::vector<std::vector<std::uint64_t>> gens;
  std::vector<std::uint64_t> radix;
  mpz_class total = 1;
  for (std::size_t i = 0; i < nn; ++i) {
    mpz_class g;
    mpz_gcd_ui(g.get_mpz_t(), snf.D(i, i).get_mpz_t(), static_cast<unsigned long>(m));
    if (snf.D(i, i) == 0) g = static_cast<unsigned long>(m);
    const std::uint64_t choices = g.get_ui();
    if (choices == 1) continue;
    const std::uint64_t step = m / choices;
    std::vector<std::uint64_t> v(nn);
    for (std::size_t r = 0; r < nn; ++r) v[r] = mulmod(residue(snf.V(r, i), m), step, m);
    gens.push_back(std::move(v));
    radix.push_back(choices);
    total *= static_cast<unsigned long>(choices);
  }

  std::vector<std::uint32_t> x(nn);
  auto assemble = [&](const std::vector<std::uint64_t>& coeffs) {
    std::fill(x.begin(), x.end(), 0U);
    for (std::size_t g = 0; g < gens.size(); ++g) {
      if (coeffs[g] == 0) continue;
      for (std::size_t r = 0; r < nn; ++r)
        x[r] = static_cast<std::uint32_t>((x[r] + mulmod(coeffs[g], gens[g][r], m)) % m);
    }
  };
  auto accept = [&]() -> std::optional<ModMatrix> {
    if (std::gcd(det_mod(x, n, m), m) != 1) return std::nullopt;
    return ModMatrix(n, m, x);
  };

  std::vector<std::uint64_t> coeffs(gens.size(), 0);
  std::mt19937_64 rng(0x5eedULL + m);
  for (int attempt = 0; attempt < 256; ++attempt) {
    for (std::size_t g = 0; g < gens.size(); ++g) coeffs[g] = rng() % radix[g];
    assemble(coeffs);
    if (auto c = accept()) return {ConjugacyVerdict::conjugate, c};
  }
  if (total > exhaustive_limit) return {ConjugacyVerdict::unknown, std::nullopt};
  std::fill(coeffs.begin(), coeffs.end(), 0);
  for (;;) {
    assemble(coeffs);
    if (auto c = accept()) return {ConjugacyVerdict::conjugate, c};
    std::size_t pos = 0;
    while (pos < coeffs.size() && ++coeffs[pos] == radix[pos]) coeffs[pos++] = 0;
    if (pos == coeffs.size()) break;
  }
  return {ConjugacyVerdict::not_conjugate, std::nullopt};
}

}  // namespace congrusep
