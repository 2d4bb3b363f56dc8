#include <algorithm>
#include <array>
#include <map>

#include "congrusep/jordan.hpp"
#include "congrusep/separate.hpp"

namespace congrusep {

namespace {

IntegerMatrix mat(std::initializer_list<std::initializer_list<int>> rows) {
  const std::size_t n = rows.size();
  IntegerMatrix a(n, n);
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (int x : r) a(i, j++) = x;
    ++i;
  }
  return a;
}

// Block sum of a 1x1 sign and a 2x2 block.
IntegerMatrix sum_1_2(int s, const IntegerMatrix& b) {
  IntegerMatrix a(3, 3);
  a(0, 0) = s;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) a(i + 1, j + 1) = b(i, j);
  return a;
}

std::vector<IntegerMatrix> raw_table(std::size_t n) {
  switch (n) {
    case 1:
      return {mat({{1}}), mat({{-1}})};
    case 2:
      return {
          mat({{1, 0}, {0, 1}}),    mat({{-1, 0}, {0, -1}}), mat({{1, 0}, {0, -1}}), mat({{0, 1}, {1, 0}}),
          mat({{0, -1}, {1, -1}}),  mat({{0, -1}, {1, 0}}),  mat({{0, -1}, {1, 1}}),
      };
    case 3: {
      const IntegerMatrix p = mat({{0, 1}, {1, 0}});
      const IntegerMatrix r3 = mat({{0, -1}, {1, -1}});
      const IntegerMatrix r4 = mat({{0, -1}, {1, 0}});
      const IntegerMatrix r6 = mat({{0, -1}, {1, 1}});
      const IntegerMatrix c3 = mat({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
      // Companion matrix of x^3 - x^2 + x - 1 = (x - 1)(x^2 + 1).
      const IntegerMatrix c4 = mat({{0, 0, 1}, {1, 0, -1}, {0, 1, 1}});
      return {
          IntegerMatrix::identity(3),
          // involutions
          mat({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}),
          mat({{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}),
          -IntegerMatrix::identity(3),
          sum_1_2(1, p),
          sum_1_2(-1, p),
          // char poly (x - 1) Phi_3 and its negative (x + 1) Phi_6
          sum_1_2(1, r3),
          c3,
          -sum_1_2(1, r3),
          -c3,
          // (x - 1) Phi_6 and (x + 1) Phi_3
          sum_1_2(1, r6),
          sum_1_2(-1, r3),
          // (x - 1) Phi_4 and (x + 1) Phi_4
          sum_1_2(1, r4),
          c4,
          -sum_1_2(1, r4),
          -c4,
      };
    }
    default:
      throw InputError("no builtin torsion table for n = " + std::to_string(n) + " (supply representatives)");
  }
}

}  // namespace

std::vector<std::uint64_t> validate_torsion_reps(const std::vector<IntegerMatrix>& reps, std::size_t n) {
  std::vector<std::uint64_t> orders;
  for (const auto& r : reps) {
    if (!r.is_square() || r.rows() != n) throw DimensionError("torsion representative has the wrong dimension");
    if (!is_unimodular(r)) throw InputError("torsion representative " + to_string(r) + " is not in GL(n,Z)");
    const auto ord = torsion_order(r);
    if (!ord) throw InputError("torsion representative " + to_string(r) + " has infinite order");
    orders.push_back(*ord);
  }
  return orders;
}

std::vector<IntegerMatrix> torsion_class_table(std::size_t n) {
  auto table = raw_table(n);
  validate_torsion_reps(table, n);
  return table;
}

std::vector<IntegerMatrix> nontrivial_reps(const std::vector<IntegerMatrix>& reps) {
  std::vector<IntegerMatrix> out;
  for (const auto& r : reps)
    if (!r.is_identity()) out.push_back(r);
  return out;
}

namespace {

using Small = std::array<std::int64_t, 9>;

std::int64_t small_det(const Small& a, std::size_t n) {
  switch (n) {
    case 1:
      return a[0];
    case 2:
      return a[0] * a[3] - a[1] * a[2];
    default:
      return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
             a[2] * (a[3] * a[7] - a[4] * a[6]);
  }
}

Small small_mul(const Small& a, const Small& b, std::size_t n) {
  Small c{};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] += a[i * n + k] * b[k * n + j];
  return c;
}

bool small_is_identity(const Small& a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a[i * n + j] != (i == j ? 1 : 0)) return false;
  return true;
}

}  // namespace

std::vector<IntegerMatrix> bounded_torsion_elements(std::size_t n, int bound) {
  if (n == 0 || n > 3) throw InputError("bounded torsion enumeration supports n <= 3");
  if (bound < 0 || bound > 5) throw InputError("entry bound must lie in [0, 5]");
  // Element orders in GL(n,Z) for n <= 3 divide 12. Powers stay below
  // (3 * 5)^12 in magnitude, well inside int64.
  const std::size_t nn = n * n;
  const std::int64_t width = 2 * bound + 1;
  std::size_t total = 1;
  for (std::size_t i = 0; i < nn; ++i) total *= static_cast<std::size_t>(width);
  std::vector<IntegerMatrix> out;
  Small a{};
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t i = 0; i < nn; ++i) {
      a[i] = static_cast<std::int64_t>(c % static_cast<std::size_t>(width)) - bound;
      c /= static_cast<std::size_t>(width);
    }
    const std::int64_t d = small_det(a, n);
    if (d != 1 && d != -1) continue;
    // Trace of a finite-order element is a sum of n roots of unity.
    std::int64_t tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += a[i * n + i];
    if (tr > static_cast<std::int64_t>(n) || tr < -static_cast<std::int64_t>(n)) continue;
    Small p = a;
    for (int k = 1; k < 12; ++k) p = small_mul(p, a, n);
    if (!small_is_identity(p, n)) continue;
    IntegerMatrix g(n, n);
    for (std::size_t i = 0; i < nn; ++i) g(i / n, i % n) = a[i];
    out.push_back(std::move(g));
  }
  return out;
}

TableScreenReport screen_torsion_table(std::size_t n, const std::vector<IntegerMatrix>& table, int bound,
                                       const std::vector<std::uint64_t>& moduli) {
  TableScreenReport report;
  const auto elements = bounded_torsion_elements(n, bound);
  report.torsion_elements = elements.size();
  for (auto m : moduli) {
    std::vector<ModMatrix> reps;
    for (const auto& t : table) reps.push_back(reduce(t, m));
    // Distinct reductions are decided once.
    std::map<std::vector<std::uint32_t>, int> seen;  // 0 matched, 1 unmatched, 2 undecided
    for (const auto& g : elements) {
      ++report.checks;
      const ModMatrix gm = reduce(g, m);
      auto it = seen.find(gm.entries());
      if (it == seen.end()) {
        int verdict = 1;
        for (const auto& r : reps) {
          const auto res = find_conjugator(gm, r);
          if (res.verdict == ConjugacyVerdict::conjugate) {
            verdict = 0;
            break;
          }
          if (res.verdict == ConjugacyVerdict::unknown) verdict = 2;
        }
        it = seen.emplace(gm.entries(), verdict).first;
      }
      if (it->second == 1) {
        ++report.unmatched;
        if (report.unmatched_examples.size() < 8) report.unmatched_examples.push_back(g);
      } else if (it->second == 2) {
        ++report.undecided;
      }
    }
  }
  return report;
}

}  // namespace congrusep
