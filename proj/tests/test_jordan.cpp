#include <doctest.h>

#include <random>
#include <set>

#include "congrusep/jordan.hpp"
#include "oracles.hpp"

using namespace congrusep;

namespace {

const IntegerMatrix kU{{1, 1}, {0, 1}};
const IntegerMatrix kR4{{0, -1}, {1, 0}};
const IntegerMatrix kMinusI{{-1, 0}, {0, -1}};

RationalMatrix q(const IntegerMatrix& a) { return to_rational(a); }

void check_axioms(const RationalMatrix& g, const JordanPair& p) {
  const std::size_t n = g.rows();
  const auto I = RationalMatrix::identity(n);
  CHECK(p.semisimple * p.unipotent == g);
  CHECK(p.semisimple * p.unipotent == p.unipotent * p.semisimple);
  CHECK(is_squarefree(min_poly(p.semisimple)));
  CHECK(mat_pow(p.unipotent - I, n).is_zero());
}

/// Every distinct element given by a word of length <= len.
std::set<IntegerMatrix> words(const std::vector<IntegerMatrix>& gens, std::size_t len) {
  std::vector<IntegerMatrix> letters;
  for (const auto& g : gens) {
    letters.push_back(g);
    letters.push_back(unimodular_inverse(g));
  }
  const std::size_t n = gens.front().rows();
  std::set<IntegerMatrix> seen{IntegerMatrix::identity(n)};
  std::vector<IntegerMatrix> frontier{IntegerMatrix::identity(n)};
  for (std::size_t l = 0; l < len; ++l) {
    std::vector<IntegerMatrix> next;
    for (const auto& w : frontier)
      for (const auto& a : letters) {
        IntegerMatrix x = w * a;
        if (seen.insert(x).second) next.push_back(std::move(x));
      }
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace

TEST_SUITE("jordan") {
  TEST_CASE("decomposition fixtures") {
    const auto I = RationalMatrix::identity(2);
    CHECK(jordan_decompose(I) == JordanPair{I, I});
    CHECK(jordan_decompose(kU) == JordanPair{I, q(kU)});
    const JordanPair p = jordan_decompose(IntegerMatrix{{-1, 1}, {0, -1}});
    CHECK(p.semisimple == q(kMinusI));
    CHECK(p.unipotent == q(IntegerMatrix{{1, -1}, {0, 1}}));
    check_axioms(q(IntegerMatrix{{-1, 1}, {0, -1}}), p);
    CHECK_THROWS_AS(jordan_decompose(IntegerMatrix{{1, 2}, {2, 4}}), SingularMatrixError);
  }

  TEST_CASE("mixed block over a non-split field") {
    // Companion of (x^2+1)^2: semisimple part has order 4, unipotent part is nontrivial.
    const IntegerMatrix c{{0, 0, 0, -1}, {1, 0, 0, 0}, {0, 1, 0, -2}, {0, 0, 1, 0}};
    const JordanPair p = jordan_decompose(c);
    check_axioms(q(c), p);
    CHECK_FALSE(p.unipotent.is_identity());
    CHECK(mat_pow(p.semisimple, 4).is_identity());
    CHECK_FALSE(mat_pow(p.semisimple, 2).is_identity());
    CHECK(has_torsion_semisimple_part(c));
    CHECK_FALSE(torsion_order(c).has_value());
  }

  TEST_CASE("predicates") {
    CHECK(is_semisimple(kR4));
    CHECK_FALSE(is_semisimple(kU));
    CHECK(is_semisimple(IntegerMatrix::identity(2)));
    CHECK(is_unipotent(IntegerMatrix::identity(2)));
    CHECK(is_unipotent(IntegerMatrix{{1, 5}, {0, 1}}));
    CHECK_FALSE(is_unipotent(kMinusI));
    CHECK_THROWS_AS(is_semisimple(IntegerMatrix{{0, 0}, {0, 1}}), SingularMatrixError);
  }

  TEST_CASE("conjugate decomposition fixtures") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 10; ++i) {
      const RationalMatrix h = q(oracle::random_unimodular(rng, 2, 8));
      CHECK(conjugate_decomposition(q(kU), h).semisimple.is_identity());
      const JordanPair c = conjugate_decomposition(q(kMinusI), h);
      CHECK(c.semisimple == q(kMinusI));
      CHECK(c.unipotent.is_identity());
    }
    CHECK(conjugate_decomposition(q(IntegerMatrix{{-1, 1}, {0, -1}}), q(kU)).semisimple == q(kMinusI));
  }

  TEST_CASE("torsion orders") {
    CHECK(torsion_order(kMinusI) == 2U);
    CHECK(torsion_order(kR4) == 4U);
    CHECK_FALSE(torsion_order(kU).has_value());
    CHECK(torsion_order(IntegerMatrix::identity(3)) == 1U);
    CHECK(torsion_order(IntegerMatrix{{0, -1}, {1, 1}}) == 6U);
    CHECK(torsion_order(IntegerMatrix{{0, -1}, {1, -1}}) == 3U);
    CHECK_FALSE(torsion_order(IntegerMatrix{{2, 1}, {1, 1}}).has_value());
    CHECK_THROWS_AS(torsion_order(IntegerMatrix{{2, 0}, {0, 1}}), PreconditionError);
  }

  TEST_CASE("torsion order is minimal and agrees with direct powers") {
    for (std::size_t n = 2; n <= 3; ++n) {
      const int b = n == 2 ? 2 : 1;
      for (const auto& g : oracle::unimodular_box(n, b)) {
        const auto m = torsion_order(g);
        CHECK(m.has_value() == oracle::finite_order_by_powers(g, 12));
        if (!m) continue;
        CHECK(mat_pow(g, *m).is_identity());
        for (std::uint64_t d = 1; d < *m; ++d)
          if (*m % d == 0) CHECK_FALSE(mat_pow(g, d).is_identity());
        CHECK(has_torsion_semisimple_part(g));
        CHECK(is_semisimple(g));
      }
    }
  }

  TEST_CASE("axioms on 1000 random elements of GL(n,Z)") {
    std::mt19937_64 rng(1000);
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t n = 2 + trial % 3;
      const IntegerMatrix g = oracle::random_unimodular(rng, n, 10);
      const JordanPair p = jordan_decompose(g);
      check_axioms(q(g), p);
      CHECK(jordan_decompose(g) == p);
    }
  }

  TEST_CASE("axioms on elements with nontrivial unipotent part") {
    // Block sums of finite-order pieces with unipotent ones, then conjugated.
    std::mt19937_64 rng(44);
    const IntegerMatrix blocks[] = {
        IntegerMatrix{{-1, 1, 0, 0}, {0, -1, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}},
        IntegerMatrix{{0, -1, 1, 0}, {1, 0, 0, 1}, {0, 0, 0, -1}, {0, 0, 1, 0}},
        IntegerMatrix{{1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}},
    };
    for (int trial = 0; trial < 60; ++trial) {
      const IntegerMatrix& b = blocks[trial % 3];
      const IntegerMatrix h = oracle::random_unimodular(rng, 4, 10);
      const IntegerMatrix g = unimodular_inverse(h) * b * h;
      const JordanPair p = jordan_decompose(g);
      check_axioms(q(g), p);
      CHECK_FALSE(p.unipotent.is_identity());
    }
  }

  TEST_CASE("equivariance on 200 random pairs") {
    std::mt19937_64 rng(200);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 2 + trial % 3;
      const RationalMatrix g = q(oracle::random_unimodular(rng, n, 10));
      const RationalMatrix h = q(oracle::random_unimodular(rng, n, 10));
      const RationalMatrix hi = mat_inverse(h);
      const JordanPair base = jordan_decompose(g);
      const JordanPair conj = conjugate_decomposition(g, h);
      CHECK(conj.semisimple == hi * base.semisimple * h);
      CHECK(conj.unipotent == hi * base.unipotent * h);
    }
  }

  TEST_CASE("virtually unipotent scan") {
    CHECK(is_virtually_unipotent_witness({kU}, 5));
    CHECK_FALSE(is_virtually_unipotent_witness({IntegerMatrix{{2, 1}, {1, 1}}}, 1));
    CHECK(is_virtually_unipotent_witness({kMinusI}, 3));
    const VirtuallyUnipotentScan s = scan_virtually_unipotent({IntegerMatrix{{2, 1}, {1, 1}}}, 2);
    CHECK_FALSE(s.consistent);
    REQUIRE(s.witness.has_value());
    CHECK_FALSE(has_torsion_semisimple_part(*s.witness));
  }

  TEST_CASE("torsion-free virtually unipotent groups have no nontrivial semisimple words") {
    const std::vector<std::vector<IntegerMatrix>> fixtures = {
        {kU},
        {IntegerMatrix{{1, 2}, {0, 1}}},
        // Heisenberg group
        {IntegerMatrix{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}, IntegerMatrix{{1, 0, 0}, {0, 1, 1}, {0, 0, 1}}},
        {IntegerMatrix{{1, 1, 0}, {0, 1, 1}, {0, 0, 1}}, IntegerMatrix{{1, 0, 1}, {0, 1, 0}, {0, 0, 1}}},
    };
    for (const auto& gens : fixtures) {
      for (const auto& w : words(gens, 4)) {
        if (w.is_identity()) continue;
        CHECK_FALSE(is_semisimple(w));
        CHECK(is_unipotent(w));
      }
    }
  }
}
