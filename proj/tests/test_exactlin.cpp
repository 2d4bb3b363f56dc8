#include <doctest.h>

#include <random>

#include "congrusep/exactlin.hpp"
#include "oracles.hpp"

using namespace congrusep;

namespace {

Polynomial poly(std::initializer_list<int> low_to_high) {
  std::vector<mpq_class> c;
  for (int x : low_to_high) c.emplace_back(x);
  return Polynomial(std::move(c));
}

const IntegerMatrix kU{{1, 1}, {0, 1}};
const IntegerMatrix kR4{{0, -1}, {1, 0}};

bool divides_chain(const std::vector<mpz_class>& d) {
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    if (d[i] == 0) return d[i + 1] == 0;
    if (d[i + 1] % d[i] != 0) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("exactlin") {
  TEST_CASE("products of small fixtures") {
    const auto I2 = RationalMatrix::identity(2);
    CHECK(I2 * I2 == I2);
    CHECK(kU * kU == IntegerMatrix{{1, 2}, {0, 1}});
    CHECK(mat_pow(kR4, 4) == IntegerMatrix::identity(2));
    CHECK_FALSE(mat_pow(kR4, 2) == IntegerMatrix::identity(2));
    CHECK_THROWS_AS(mat_mul(RationalMatrix(2, 3), RationalMatrix(2, 2)), DimensionError);
  }

  TEST_CASE("inverses") {
    CHECK(mat_inverse(RationalMatrix::identity(2)) == RationalMatrix::identity(2));
    CHECK(mat_inverse(to_rational(kU)) == to_rational(IntegerMatrix{{1, -1}, {0, 1}}));
    const RationalMatrix d{{mpq_class(2), mpq_class(0)}, {mpq_class(0), mpq_class(3)}};
    const RationalMatrix dinv{{mpq_class(1, 2), mpq_class(0)}, {mpq_class(0), mpq_class(1, 3)}};
    CHECK(mat_inverse(d) == dinv);
    CHECK_THROWS_AS(mat_inverse(to_rational(IntegerMatrix{{1, 1}, {1, 1}})), SingularMatrixError);
    CHECK_THROWS_AS(unimodular_inverse(IntegerMatrix{{2, 0}, {0, 1}}), PreconditionError);
  }

  TEST_CASE("random unimodular matrices invert exactly") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 1 + trial % 4;
      const IntegerMatrix a = oracle::random_unimodular(rng, n, 12);
      REQUIRE(is_unimodular(a));
      CHECK(to_rational(a) * mat_inverse(to_rational(a)) == RationalMatrix::identity(n));
      CHECK(a * unimodular_inverse(a) == IntegerMatrix::identity(n));
      CHECK(determinant(a) == oracle::laplace_det(a));
    }
  }

  TEST_CASE("characteristic polynomials of fixtures") {
    CHECK(char_poly(IntegerMatrix::identity(2)) == poly({1, -2, 1}));
    CHECK(char_poly(kR4) == poly({1, 0, 1}));
    CHECK(char_poly(kU) == poly({1, -2, 1}));
  }

  TEST_CASE("Cayley-Hamilton and the principal-minor oracle on 500 matrices") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
      const std::size_t n = 1 + trial % 4;
      const RationalMatrix a = to_rational(oracle::random_integer_matrix(rng, n, n, -5, 5));
      const Polynomial cp = char_poly(a);
      REQUIRE(cp.degree() == static_cast<int>(n));
      CHECK(cp.leading() == 1);
      CHECK(evaluate(cp, a).is_zero());
      CHECK(cp.coefficients() == oracle::char_poly_minors(a));
    }
  }

  TEST_CASE("minimal polynomials") {
    CHECK(min_poly(RationalMatrix::identity(2)) == poly({-1, 1}));
    CHECK(min_poly(to_rational(kU)) == poly({1, -2, 1}));
    CHECK(min_poly(to_rational(IntegerMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 2}})) == poly({2, -3, 1}));

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t n = 1 + trial % 4;
      // Low-rank perturbations of scalars give repeated eigenvalues often.
      IntegerMatrix z = oracle::random_integer_matrix(rng, n, n, -2, 2);
      if (trial % 3 == 0) z = z * z;
      const RationalMatrix a = to_rational(z);
      const Polynomial mp = min_poly(a);
      const Polynomial cp = char_poly(a);
      CHECK(mp.leading() == 1);
      CHECK(evaluate(mp, a).is_zero());
      CHECK(divides(mp, cp));
      // Same roots as the characteristic polynomial.
      CHECK(squarefree_part(mp) == squarefree_part(cp));
      // mp / rad(mp) is a proper divisor and must not annihilate.
      if (mp.degree() > 0) CHECK_FALSE(evaluate(exact_divide(mp, squarefree_part(mp)), a).is_zero());
    }
  }

  TEST_CASE("Smith normal form fixtures") {
    CHECK(smith_normal_form(IntegerMatrix::identity(2)).D == IntegerMatrix::identity(2));
    CHECK(smith_normal_form(IntegerMatrix{{2, 0}, {0, 4}}).invariant_factors() == std::vector<mpz_class>{2, 4});
    CHECK(smith_normal_form(IntegerMatrix{{2, 1}, {0, 2}}).invariant_factors() == std::vector<mpz_class>{1, 4});
    CHECK(oracle::invariant_factors_by_minors(IntegerMatrix{{2, 1}, {0, 2}}) == std::vector<mpz_class>{1, 4});
    CHECK(smith_normal_form(IntegerMatrix{{-2}}).invariant_factors() == std::vector<mpz_class>{2});
    CHECK(smith_normal_form(IntegerMatrix{{-1, -1}, {1, -1}}).invariant_factors() == std::vector<mpz_class>{1, 2});
  }

  TEST_CASE("Smith normal form properties against determinantal divisors") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t r = 1 + trial % 4, c = 1 + (trial / 4) % 4;
      const IntegerMatrix a = oracle::random_integer_matrix(rng, r, c, -6, 6);
      const SmithDecomposition s = smith_normal_form(a);
      CHECK(s.U * a * s.V == s.D);
      CHECK(abs(determinant(s.U)) == 1);
      CHECK(abs(determinant(s.V)) == 1);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
          if (i != j) CHECK(s.D(i, j) == 0);
      const auto diag = s.diagonal();
      for (const auto& d : diag) CHECK(d >= 0);
      CHECK(divides_chain(diag));
      CHECK(s.invariant_factors() == oracle::invariant_factors_by_minors(a));
      if (r == c && determinant(a) != 0) {
        mpz_class prod = 1;
        for (const auto& d : diag) prod *= d;
        CHECK(prod == abs(determinant(a)));
      }
    }
  }

  TEST_CASE("Smith normal form blow-up guard") {
    const IntegerMatrix a{{1000003, 999983}, {999979, 1000033}};
    CHECK_THROWS_AS(smith_normal_form(a, 8), ResourceError);
    CHECK_NOTHROW(smith_normal_form(a));
  }

  TEST_CASE("Hermite normal form") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t r = 1 + trial % 5, c = 1 + (trial / 5) % 4;
      const IntegerMatrix a = oracle::random_integer_matrix(rng, r, c, -4, 4);
      const HermiteDecomposition h = hermite_normal_form(a);
      CHECK(h.U * a == h.H);
      CHECK(abs(determinant(h.U)) == 1);
      CHECK(h.rank == rank(to_rational(a)));
      std::size_t last = 0;
      for (std::size_t i = 0; i < h.rank; ++i) {
        std::size_t p = 0;
        while (h.H(i, p) == 0) ++p;
        if (i > 0) CHECK(p > last);
        last = p;
        CHECK(h.H(i, p) > 0);
        for (std::size_t k = 0; k < i; ++k) {
          CHECK(h.H(k, p) >= 0);
          CHECK(h.H(k, p) < h.H(i, p));
        }
      }
      for (std::size_t i = h.rank; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) CHECK(h.H(i, j) == 0);
    }
  }

  TEST_CASE("kernel and image fixtures") {
    // S - I for S = diag(1, -1)
    const KernelImage ki = kernel_and_image(to_rational(IntegerMatrix{{0, 0}, {0, -2}}));
    REQUIRE(ki.kernel.size() == 1);
    REQUIRE(ki.image.size() == 1);
    CHECK(ki.kernel[0] == RationalVector{1, 0});
    CHECK(ki.image[0] == RationalVector{0, 1});

    const KernelImage zero = kernel_and_image(RationalMatrix(3, 3));
    CHECK(zero.kernel.size() == 3);
    CHECK(zero.image.empty());

    const KernelImage inv = kernel_and_image(to_rational(kR4));
    CHECK(inv.kernel.empty());
    CHECK(inv.image.size() == 2);
  }

  TEST_CASE("kernel and image dimensions on random matrices") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 1 + trial % 4;
      IntegerMatrix z = oracle::random_integer_matrix(rng, n, n, -2, 2);
      if (trial % 2 == 0) z(0, 0) = 0, z = z * oracle::random_integer_matrix(rng, n, n, 0, 1);
      const RationalMatrix a = to_rational(z);
      const KernelImage ki = kernel_and_image(a);
      CHECK(ki.kernel.size() + ki.image.size() == n);
      for (const auto& v : ki.kernel) {
        const auto av = mat_vec(a, v);
        for (const auto& x : av) CHECK(x == 0);
      }
      // Every image vector lies in the column space.
      for (const auto& v : ki.image) CHECK(solve(a, v).has_value());
    }
  }

  TEST_CASE("parsing") {
    CHECK(parse_rational("17") == 17);
    CHECK(parse_rational("-3") == -3);
    CHECK(parse_rational("2/4") == mpq_class(1, 2));
    CHECK(parse_rational("-6/9") == mpq_class(-2, 3));
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("1.5"), InputError);
    CHECK_THROWS_AS(parse_rational(""), InputError);
    CHECK_THROWS_AS(parse_rational("1/-2"), InputError);
    CHECK_THROWS_AS(to_integer(RationalMatrix{{mpq_class(1, 2)}}), PreconditionError);
  }

  TEST_CASE("solve") {
    const RationalMatrix a = to_rational(IntegerMatrix{{1, 2}, {2, 4}});
    CHECK_FALSE(solve(a, RationalVector{1, 1}).has_value());
    const auto x = solve(a, RationalVector{3, 6});
    REQUIRE(x.has_value());
    CHECK(mat_vec(a, *x) == RationalVector{3, 6});
  }
}
