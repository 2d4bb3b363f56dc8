#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "congrusep/modgrp.hpp"
#include "oracles.hpp"

using namespace congrusep;

namespace {

const IntegerMatrix kU{{1, 1}, {0, 1}};
const IntegerMatrix kL{{1, 0}, {1, 1}};
const IntegerMatrix kMinusI{{-1, 0}, {0, -1}};

ModMatrix mm(std::uint64_t m, std::vector<std::uint32_t> e) {
  const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(e.size()))));
  return ModMatrix(n, m, std::move(e));
}

std::vector<ModMatrix> reduce_all(const std::vector<IntegerMatrix>& gens, std::uint64_t m) {
  std::vector<ModMatrix> out;
  for (const auto& g : gens) out.push_back(reduce(g, m));
  return out;
}

std::vector<oracle::Residues> residues_of(const std::vector<ModMatrix>& gens) {
  std::vector<oracle::Residues> out;
  for (const auto& g : gens) out.push_back(g.entries());
  return out;
}

}  // namespace

TEST_SUITE("modgrp") {
  TEST_CASE("reduction fixtures") {
    CHECK(reduce(kMinusI, 3) == mm(3, {2, 0, 0, 2}));
    CHECK(reduce(kU, 2) == mm(2, {1, 1, 0, 1}));
    const RationalMatrix half{{mpq_class(1, 2), mpq_class(0)}, {mpq_class(0), mpq_class(2)}};
    try {
      (void)reduce(half, 2);
      FAIL("expected a denominator error");
    } catch (const DenominatorError& e) {
      CHECK(e.denominator_factor() == 2);
    }
    CHECK(reduce(half, 3) == mm(3, {2, 0, 0, 2}));
    CHECK_THROWS_AS(reduce(IntegerMatrix{{2, 0}, {0, 1}}, 4), PreconditionError);
    CHECK_THROWS_AS(mm(1, {0}), InputError);
    CHECK_THROWS_AS(mm(4, {2, 0, 0, 1}), PreconditionError);
    CHECK_THROWS_AS(mm(4, {5, 0, 0, 1}), InputError);
  }

  TEST_CASE("reduction is a homomorphism for m = 2..12") {
    std::mt19937_64 rng(12);
    for (std::uint64_t m = 2; m <= 12; ++m)
      for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + trial % 4;
        const IntegerMatrix a = oracle::random_unimodular(rng, n, 10);
        const IntegerMatrix b = oracle::random_unimodular(rng, n, 10);
        CHECK(reduce(a * b, m) == reduce(a, m) * reduce(b, m));
        CHECK(reduce(unimodular_inverse(a), m) == reduce(a, m).inverse());
        CHECK(reduce(a, m).entries() == oracle::residues(a, m));
      }
  }

  TEST_CASE("CRT consistency of projections") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 50; ++trial) {
      const IntegerMatrix a = oracle::random_unimodular(rng, 3, 12);
      const ModMatrix r = reduce(a, 60);
      for (std::uint64_t d : {2, 3, 4, 5, 12, 15, 20, 30}) CHECK(r.project(d) == reduce(a, d));
    }
    const ModMatrixGroup g60 = congrusep::generate(2, 60, reduce_all({kU}, 60));
    CHECK(g60.size() == 60);
    CHECK_THROWS_AS(reduce(kU, 6).project(4), InputError);
  }

  TEST_CASE("determinants") {
    std::mt19937_64 rng(9);
    for (std::uint64_t m : {2, 4, 6, 9, 12, 35}) {
      for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + trial % 4;
        const auto r = oracle::residues(oracle::random_integer_matrix(rng, n, n, 0, static_cast<int>(m) - 1), m);
        CHECK(static_cast<std::int64_t>(det_mod(r, n, m)) == oracle::det_residues(r, n, m));
      }
    }
  }

  TEST_CASE("generate fixtures") {
    CHECK(congrusep::generate(2, 7, {ModMatrix::identity(2, 7)}).size() == 1);
    CHECK(congrusep::generate(2, 7, {}).size() == 1);
    CHECK(congrusep::generate(2, 3, reduce_all({kU}, 3)).size() == 3);
    CHECK(congrusep::generate(2, 2, reduce_all({kU, kL}, 2)).size() == 6);
    try {
      (void)congrusep::generate(2, 5, gl_generators(2, 5), 100);
      FAIL("expected a budget error");
    } catch (const BudgetExceeded& e) {
      CHECK(e.partial_size() == 100);
    }
  }

  TEST_CASE("generate agrees with the std::set closure") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 2 + trial % 2;
      const std::uint64_t m = 2 + trial % 5;
      if (n == 3 && m > 3) continue;
      std::vector<IntegerMatrix> gens;
      for (int k = 0; k < 1 + trial % 3; ++k) gens.push_back(oracle::random_unimodular(rng, n, 6));
      const auto red = reduce_all(gens, m);
      const ModMatrixGroup g = congrusep::generate(n, m, red);
      CHECK(oracle::as_set(g.elements()) == oracle::brute_closure(residues_of(red), n, m));
    }
  }

  TEST_CASE("generate is independent of generator order") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<IntegerMatrix> gens;
      for (int k = 0; k < 3; ++k) gens.push_back(oracle::random_unimodular(rng, 2, 6));
      auto red = reduce_all(gens, 6);
      const std::string d0 = congrusep::generate(2, 6, red).digest();
      std::sort(red.begin(), red.end());
      do {
        const ModMatrixGroup g = congrusep::generate(2, 6, red);
        CHECK(g.digest() == d0);
      } while (std::next_permutation(red.begin(), red.end()));
    }
  }

  TEST_CASE("group closure and identity") {
    const ModMatrixGroup g = congrusep::generate(2, 9, reduce_all({kU, kMinusI}, 9));
    CHECK(g.contains(ModMatrix::identity(2, 9)));
    for (std::size_t i = 0; i < g.size(); ++i) {
      const ModMatrix a = g.elements().at(i);
      CHECK(g.contains(a.inverse()));
      for (std::size_t j = 0; j < g.size(); j += 3) CHECK(g.contains(a * g.elements().at(j)));
    }
    CHECK(mpz_class(static_cast<unsigned long>(g.size())) <= gl_order(2, 9));
  }

  TEST_CASE("unit group and GL generators") {
    const auto u5 = unit_group_generators(5);
    REQUIRE(u5.size() == 1);
    CHECK(congrusep::generate(1, 5, {mm(5, {static_cast<std::uint32_t>(u5[0])})}).size() == 4);
    CHECK(congrusep::generate(1, 5, gl_generators(1, 5)).size() == 4);
    CHECK(congrusep::generate(2, 2, gl_generators(2, 2)).size() == 6);
    CHECK(congrusep::generate(2, 4, gl_generators(2, 4)).size() == 96);
    CHECK(gl_order(2, 4) == 96);
    CHECK(gl_order(2, 2) == 6);
    CHECK(gl_order(3, 2) == 168);
    for (std::uint64_t m = 2; m <= 40; ++m) {
      std::size_t units = 0;
      for (std::uint64_t x = 1; x < m; ++x) units += std::gcd(x, m) == 1;
      CHECK(congrusep::generate(1, m, gl_generators(1, m)).size() == units);
    }
  }

  TEST_CASE("GL generators against full enumeration") {
    const std::pair<std::size_t, std::uint64_t> cases[] = {{1, 12}, {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 2}};
    for (const auto& [n, m] : cases) {
      const auto all = oracle::enumerate_gl(n, m);
      const ModMatrixGroup g = congrusep::generate(n, m, gl_generators(n, m));
      CHECK(g.size() == all.size());
      CHECK(oracle::as_set(g.elements()) == std::set<oracle::Residues>(all.begin(), all.end()));
      CHECK(gl_order(n, m) == static_cast<unsigned long>(all.size()));
    }
    CHECK(gl_order(2, 72) == gl_order(2, 8) * gl_order(2, 9));
  }

  TEST_CASE("conjugacy class fixtures") {
    CHECK(conj_class(ModMatrix::identity(2, 7)).size() == 1);
    CHECK(conj_class(mm(3, {2, 0, 0, 2})).size() == 1);
    const ConjClass c = conj_class(reduce(kU, 2));
    CHECK(c.size() == 3);
    CHECK(c.contains(mm(2, {1, 1, 0, 1})));
    CHECK(c.contains(mm(2, {1, 0, 1, 1})));
    CHECK(c.contains(mm(2, {0, 1, 1, 0})));
    CHECK(c.contains(c.representative));
  }

  TEST_CASE("conjugacy classes agree with brute-force orbits") {
    std::mt19937_64 rng(77);
    for (std::uint64_t m = 2; m <= 5; ++m) {
      const mpz_class order = gl_order(2, m);
      for (int trial = 0; trial < 12; ++trial) {
        const ModMatrix a = reduce(oracle::random_unimodular(rng, 2, 8), m);
        const ConjClass c = conj_class(a);
        CHECK(order % static_cast<unsigned long>(c.size()) == 0);
        CHECK(oracle::as_set(c.orbit) == oracle::brute_class(a.entries(), 2, m));
      }
    }
  }

  TEST_CASE("conjugacy class over-approximates the integral class") {
    std::mt19937_64 rng(15);
    const std::vector<IntegerMatrix> etas = {kMinusI, IntegerMatrix{{0, -1}, {1, 0}}, IntegerMatrix{{0, -1}, {1, 1}},
                                             IntegerMatrix{{1, 0}, {0, -1}}};
    for (const auto& eta : etas)
      for (std::uint64_t m : {3, 4, 5, 8}) {
        const ConjClass c = conj_class(reduce(eta, m));
        for (int trial = 0; trial < 50; ++trial) {
          const IntegerMatrix h = oracle::random_unimodular(rng, 2, 8);
          CHECK(c.contains(reduce(unimodular_inverse(h) * eta * h, m)));
        }
      }
  }

  TEST_CASE("level images and the tower") {
    CHECK(padic_level_image(2, {kU}, 2, 1).size() == 2);
    CHECK(padic_level_image(2, {kU}, 2, 2).size() == 4);
    CHECK(padic_level_image(2, {}, 5, 3).size() == 1);
    CHECK_THROWS_AS(padic_level_image(2, {kU}, 6, 1), InputError);

    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 8; ++trial) {
      const std::vector<IntegerMatrix> gens = {oracle::random_unimodular(rng, 2, 6), oracle::random_unimodular(rng, 2, 6)};
      for (std::uint64_t p : {2, 3}) {
        std::uint64_t pk = p;
        for (unsigned k = 1; k < 3; ++k, pk *= p) {
          const ModMatrixGroup lo = padic_level_image(2, gens, p, k);
          const ModMatrixGroup hi = padic_level_image(2, gens, p, k + 1);
          MatrixSet projected(2, pk);
          for (std::size_t i = 0; i < hi.size(); ++i) projected.insert(hi.elements().at(i).project(pk));
          CHECK(projected.digest() == lo.digest());
          CHECK(hi.size() % lo.size() == 0);
        }
      }
    }
  }

  TEST_CASE("semisimple elements at finite level") {
    const ModMatrixGroup u3 = congrusep::generate(2, 3, reduce_all({kU}, 3));
    CHECK(semisimple_elements_mod(u3, {kMinusI}).empty());
    const ModMatrixGroup triv = congrusep::generate(2, 5, {});
    CHECK(semisimple_elements_mod(triv, {IntegerMatrix::identity(2)}) == std::vector<ModMatrix>{ModMatrix::identity(2, 5)});
    const ModMatrixGroup u2 = congrusep::generate(2, 2, reduce_all({kU}, 2));
    CHECK(semisimple_elements_mod(u2, {kMinusI}) == std::vector<ModMatrix>{ModMatrix::identity(2, 2)});
  }

  TEST_CASE("conjugator search agrees with class membership") {
    std::mt19937_64 rng(21);
    for (std::uint64_t m : {3, 4, 6, 8, 9}) {
      for (int trial = 0; trial < 15; ++trial) {
        const ModMatrix a = reduce(oracle::random_unimodular(rng, 2, 8), m);
        const ModMatrix b = reduce(oracle::random_unimodular(rng, 2, 8), m);
        const ConjClass ca = conj_class(a);
        const ConjugacyResult r = find_conjugator(a, b);
        REQUIRE(r.verdict != ConjugacyVerdict::unknown);
        CHECK((r.verdict == ConjugacyVerdict::conjugate) == ca.contains(b));
        if (r.conjugator) CHECK(r.conjugator->inverse() * a * *r.conjugator == b);
        // b conjugated by a random element is always found.
        const ModMatrix h = reduce(oracle::random_unimodular(rng, 2, 8), m);
        const ConjugacyResult s = find_conjugator(a, h.inverse() * a * h);
        CHECK(s.verdict == ConjugacyVerdict::conjugate);
      }
    }
  }

  TEST_CASE("matrix sets: digest, copies and moves") {
    const ModMatrixGroup g = congrusep::generate(2, 5, reduce_all({kU, kMinusI}, 5));
    MatrixSet reversed(2, 5);
    for (std::size_t i = g.size(); i-- > 0;) reversed.insert(g.elements().view(i));
    CHECK(reversed.digest() == g.digest());
    CHECK(reversed.digest().size() == 64);
    CHECK_FALSE(reversed.insert(g.elements().view(0)));

    MatrixSet copy = reversed;
    CHECK(copy.digest() == reversed.digest());
    copy.insert(mm(5, {2, 0, 0, 1}));
    CHECK(copy.size() == reversed.size() + 1);
    CHECK_FALSE(reversed.contains(mm(5, {2, 0, 0, 1})));
    CHECK(copy.contains(mm(5, {2, 0, 0, 1})));

    MatrixSet moved = std::move(copy);
    CHECK(moved.contains(mm(5, {2, 0, 0, 1})));
    MatrixSet assigned(2, 5);
    assigned = moved;
    CHECK(assigned.digest() == moved.digest());

    // Digest depends on n, m and contents.
    MatrixSet a(2, 5), b(2, 7);
    a.insert(ModMatrix::identity(2, 5));
    b.insert(ModMatrix::identity(2, 7));
    CHECK(a.digest() != b.digest());
    const auto s = g.elements().sorted();
    CHECK(std::is_sorted(s.begin(), s.end()));
  }

  TEST_CASE("factorisation helpers") {
    CHECK(is_prime(2));
    CHECK(is_prime(23));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91));
    const auto f = factorize(360);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::pair<std::uint64_t, unsigned>{2, 3});
    CHECK(f[1] == std::pair<std::uint64_t, unsigned>{3, 2});
    CHECK(f[2] == std::pair<std::uint64_t, unsigned>{5, 1});
  }
}
