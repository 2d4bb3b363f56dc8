#include "congrusep/exactlin.hpp"

#include <algorithm>
#include <utility>

namespace congrusep {

RationalMatrix to_rational(const IntegerMatrix& a) {
  RationalMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = mpq_class(a(i, j));
  return r;
}

bool is_integral(const RationalMatrix& a) {
  return std::all_of(a.data().begin(), a.data().end(), [](const mpq_class& x) { return x.get_den() == 1; });
}

IntegerMatrix to_integer(const RationalMatrix& a) {
  IntegerMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).get_den() != 1) throw PreconditionError("matrix has a non-integral entry " + a(i, j).get_str());
      r(i, j) = a(i, j).get_num();
    }
  return r;
}

mpz_class parse_integer(std::string_view s) {
  std::string str(s);
  if (str.empty()) throw InputError("empty integer literal");
  std::size_t start = (str[0] == '-' || str[0] == '+') ? 1 : 0;
  if (start == str.size()) throw InputError("malformed integer '" + str + "'");
  for (std::size_t i = start; i < str.size(); ++i)
    if (str[i] < '0' || str[i] > '9') throw InputError("malformed integer '" + str + "'");
  if (str[0] == '+') str.erase(0, 1);
  return mpz_class(str, 10);
}

mpq_class parse_rational(std::string_view s) {
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return mpq_class(parse_integer(s));
  const mpz_class num = parse_integer(s.substr(0, slash));
  const std::string_view den_str = s.substr(slash + 1);
  if (!den_str.empty() && (den_str[0] == '-' || den_str[0] == '+'))
    throw InputError("denominator must be an unsigned integer in '" + std::string(s) + "'");
  const mpz_class den = parse_integer(den_str);
  if (den == 0) throw InputError("zero denominator in '" + std::string(s) + "'");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

mpq_class determinant(const RationalMatrix& a) {
  const std::size_t n = a.n();
  RationalMatrix m = a;
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      const mpq_class f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

mpz_class determinant(const IntegerMatrix& a) {
  const std::size_t n = a.n();
  if (n == 0) return 1;
  IntegerMatrix m = a;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = t;
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

RationalMatrix mat_inverse(const RationalMatrix& a) {
  const std::size_t n = a.n();
  RationalMatrix m = a;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) throw SingularMatrixError();
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(p, j), m(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    const mpq_class piv = m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c) == 0) continue;
      const mpq_class f = m(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

bool is_unimodular(const IntegerMatrix& a) {
  if (!a.is_square()) return false;
  const mpz_class d = determinant(a);
  return d == 1 || d == -1;
}

IntegerMatrix unimodular_inverse(const IntegerMatrix& a) {
  if (!is_unimodular(a)) throw PreconditionError("matrix is not in GL(n,Z): determinant is not +-1");
  return to_integer(mat_inverse(to_rational(a)));
}

RationalMatrix rref(const RationalMatrix& a, std::vector<std::size_t>* pivots) {
  RationalMatrix m = a;
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t p = row;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    const mpq_class lead = m(row, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(row, j) /= lead;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, c) == 0) continue;
      const mpq_class f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    piv.push_back(c);
    ++row;
  }
  if (pivots) *pivots = std::move(piv);
  return m;
}

std::size_t rank(const RationalMatrix& a) {
  std::vector<std::size_t> piv;
  rref(a, &piv);
  return piv.size();
}

std::optional<RationalVector> solve(const RationalMatrix& a, const RationalVector& b) {
  if (b.size() != a.rows()) throw DimensionError("right-hand side length does not match matrix rows");
  RationalMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  std::vector<std::size_t> piv;
  const RationalMatrix r = rref(aug, &piv);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
  RationalVector x(a.cols(), mpq_class(0));
  for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = r(k, a.cols());
  return x;
}

Polynomial char_poly(const RationalMatrix& a) {
  const std::size_t n = a.n();
  // c[k] is the coefficient of x^k; c[n] = 1.
  std::vector<mpq_class> c(n + 1, mpq_class(0));
  c[n] = 1;
  RationalMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    RationalMatrix am = a * m;
    for (std::size_t i = 0; i < n; ++i) am(i, i) += c[n - k + 1];
    m = std::move(am);
    const RationalMatrix next = a * m;
    mpq_class tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += next(i, i);
    c[n - k] = -tr / static_cast<unsigned long>(k);
  }
  return Polynomial(std::move(c));
}

Polynomial char_poly(const IntegerMatrix& a) { return char_poly(to_rational(a)); }

Polynomial min_poly(const RationalMatrix& a) {
  const std::size_t n = a.n();
  const std::size_t nn = n * n;
  std::vector<RationalMatrix> powers{RationalMatrix::identity(n)};
  for (std::size_t k = 1; k <= n; ++k) {
    powers.push_back(powers.back() * a);
    // Solve sum_{i<k} c_i vec(a^i) = -vec(a^k).
    RationalMatrix sys(nn, k);
    RationalVector rhs(nn);
    for (std::size_t e = 0; e < nn; ++e) {
      for (std::size_t i = 0; i < k; ++i) sys(e, i) = powers[i].data()[e];
      rhs[e] = -powers[k].data()[e];
    }
    if (auto sol = solve(sys, rhs)) {
      std::vector<mpq_class> coeffs(sol->begin(), sol->end());
      coeffs.push_back(1);
      return Polynomial(std::move(coeffs));
    }
  }
  // Unreachable by Cayley-Hamilton.
  return char_poly(a);
}

RationalMatrix evaluate(const Polynomial& p, const RationalMatrix& a) {
  const std::size_t n = a.n();
  RationalMatrix acc(n, n);
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = acc * a;
    for (std::size_t i = 0; i < n; ++i) acc(i, i) += *it;
  }
  return acc;
}

std::vector<mpz_class> SmithDecomposition::diagonal() const {
  std::vector<mpz_class> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

std::vector<mpz_class> SmithDecomposition::invariant_factors() const {
  std::vector<mpz_class> d;
  for (const auto& x : diagonal())
    if (x != 0) d.push_back(x);
  return d;
}

namespace {

void swap_rows(IntegerMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntegerMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row_dst -= q * row_src
void add_row_multiple(IntegerMatrix& m, std::size_t dst, std::size_t src, const mpz_class& q) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) -= q * m(src, j);
}

void add_col_multiple(IntegerMatrix& m, std::size_t dst, std::size_t src, const mpz_class& q) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) -= q * m(i, src);
}

std::size_t max_bits(const IntegerMatrix& m) {
  std::size_t b = 0;
  for (const auto& x : m.data()) b = std::max(b, mpz_sizeinbase(x.get_mpz_t(), 2));
  return b;
}

void check_bits(const SmithDecomposition& s, std::size_t bound) {
  if (max_bits(s.D) > bound || max_bits(s.U) > bound || max_bits(s.V) > bound)
    throw ResourceError("Smith normal form entry growth exceeded the bit bound of " + std::to_string(bound) + " bits");
}

}  // namespace

SmithDecomposition smith_normal_form(const IntegerMatrix& a, std::size_t bit_bound) {
  const std::size_t r = a.rows(), c = a.cols();
  SmithDecomposition s{IntegerMatrix::identity(r), a, IntegerMatrix::identity(c)};
  IntegerMatrix& D = s.D;
  for (std::size_t t = 0; t < std::min(r, c); ++t) {
    for (;;) {
      // Smallest nonzero magnitude in the trailing block becomes the pivot.
      bool found = false;
      std::size_t pi = t, pj = t;
      mpz_class best;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j) {
          if (D(i, j) == 0) continue;
          mpz_class v = abs(D(i, j));
          if (!found || v < best) {
            found = true;
            best = v;
            pi = i;
            pj = j;
          }
        }
      if (!found) return s;
      swap_rows(D, t, pi);
      swap_rows(s.U, t, pi);
      swap_cols(D, t, pj);
      swap_cols(s.V, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (D(i, t) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
        add_row_multiple(D, i, t, q);
        add_row_multiple(s.U, i, t, q);
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (D(t, j) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
        add_col_multiple(D, j, t, q);
        add_col_multiple(s.V, j, t, q);
        if (D(t, j) != 0) clean = false;
      }
      check_bits(s, bit_bound);
      if (!clean) continue;

      // Pivot must divide the whole trailing block; otherwise fold the
      // offending row into the pivot row and reduce again.
      bool divisible = true;
      for (std::size_t i = t + 1; i < r && divisible; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (!mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
            add_row_multiple(D, t, i, mpz_class(-1));
            add_row_multiple(s.U, t, i, mpz_class(-1));
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (D(t, t) < 0) {
      for (std::size_t j = 0; j < c; ++j) D(t, j) = -D(t, j);
      for (std::size_t j = 0; j < r; ++j) s.U(t, j) = -s.U(t, j);
    }
  }
  return s;
}

HermiteDecomposition hermite_normal_form(const IntegerMatrix& a) {
  HermiteDecomposition h{a, IntegerMatrix::identity(a.rows()), 0};
  IntegerMatrix& H = h.H;
  std::size_t row = 0;
  for (std::size_t col = 0; col < H.cols() && row < H.rows(); ++col) {
    for (;;) {
      bool found = false;
      std::size_t best_i = row;
      mpz_class best;
      for (std::size_t i = row; i < H.rows(); ++i) {
        if (H(i, col) == 0) continue;
        mpz_class v = abs(H(i, col));
        if (!found || v < best) {
          found = true;
          best = v;
          best_i = i;
        }
      }
      if (!found) break;
      swap_rows(H, row, best_i);
      swap_rows(h.U, row, best_i);
      bool clean = true;
      for (std::size_t i = row + 1; i < H.rows(); ++i) {
        if (H(i, col) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), H(i, col).get_mpz_t(), H(row, col).get_mpz_t());
        add_row_multiple(H, i, row, q);
        add_row_multiple(h.U, i, row, q);
        if (H(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (H(row, col) == 0) continue;
    if (H(row, col) < 0) {
      for (std::size_t j = 0; j < H.cols(); ++j) H(row, j) = -H(row, j);
      for (std::size_t j = 0; j < h.U.cols(); ++j) h.U(row, j) = -h.U(row, j);
    }
    for (std::size_t i = 0; i < row; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), H(i, col).get_mpz_t(), H(row, col).get_mpz_t());
      if (q == 0) continue;
      add_row_multiple(H, i, row, q);
      add_row_multiple(h.U, i, row, q);
    }
    ++row;
  }
  h.rank = row;
  return h;
}

KernelImage kernel_and_image(const RationalMatrix& a) {
  const std::size_t n = a.cols();
  KernelImage out;
  std::vector<std::size_t> piv;
  const RationalMatrix r = rref(a, &piv);
  std::vector<bool> is_pivot(n, false);
  for (auto p : piv) is_pivot[p] = true;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(n, mpq_class(0));
    v[f] = 1;
    for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -r(k, f);
    out.kernel.push_back(std::move(v));
  }
  std::vector<std::size_t> tpiv;
  const RationalMatrix rt = rref(transpose(a), &tpiv);
  for (std::size_t k = 0; k < tpiv.size(); ++k) {
    RationalVector v(rt.cols());
    for (std::size_t j = 0; j < rt.cols(); ++j) v[j] = rt(k, j);
    out.image.push_back(std::move(v));
  }
  return out;
}

}  // namespace congrusep
