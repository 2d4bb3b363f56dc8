#include "congrusep/cryst.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "congrusep/jordan.hpp"

namespace congrusep {

namespace {

RationalVector add(const RationalVector& a, const RationalVector& b) {
  RationalVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

RationalVector sub(const RationalVector& a, const RationalVector& b) {
  RationalVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RationalVector act(const IntegerMatrix& S, const RationalVector& v) { return mat_vec(to_rational(S), v); }

RationalVector column(const RationalMatrix& a, std::size_t j) {
  RationalVector v(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) v[i] = a(i, j);
  return v;
}

RationalMatrix from_rows(const std::vector<RationalVector>& rows, std::size_t cols) {
  RationalMatrix a(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = rows[i][j];
  return a;
}

mpz_class denominator_lcm(const RationalVector& v) {
  mpz_class d = 1;
  for (const auto& x : v) d = lcm(d, mpz_class(x.get_den()));
  return d;
}

mpz_class floor_div(const mpq_class& x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

// Z-span of rational vectors: rows of the returned matrix are a basis (row
// Hermite form of the denominator-cleared input, rescaled). `transform`
// receives U with U * input_rows == basis rows (on the first rank rows).
RationalMatrix lattice_basis(const std::vector<RationalVector>& vectors, std::size_t dim,
                             IntegerMatrix* transform = nullptr) {
  mpz_class d = 1;
  for (const auto& v : vectors) d = lcm(d, denominator_lcm(v));
  IntegerMatrix scaled(vectors.size(), dim);
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) scaled(i, j) = mpq_class(vectors[i][j] * d).get_num();
  const HermiteDecomposition h = hermite_normal_form(scaled);
  RationalMatrix basis(h.rank, dim);
  for (std::size_t i = 0; i < h.rank; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      basis(i, j) = mpq_class(h.H(i, j), d);
      basis(i, j).canonicalize();
    }
  if (transform) *transform = h.U;
  return basis;
}

// Coordinates of v in the basis given by the rows of `basis`.
RationalVector coordinates(const RationalMatrix& basis, const RationalVector& v) {
  auto c = solve(transpose(basis), v);
  if (!c) throw std::logic_error("vector outside the span of the basis");
  return *c;
}

// Projection onto im(A) along ker(A) for A = S - I with S of finite order
// (the two are complementary because S is semisimple).
RationalMatrix moving_projection(const IntegerMatrix& S) {
  const std::size_t m = S.n();
  const Splitting sp = splitting(S);
  RationalMatrix q(m, m);
  std::size_t c = 0;
  for (const auto& v : sp.moving) {
    for (std::size_t i = 0; i < m; ++i) q(i, c) = v[i];
    ++c;
  }
  for (const auto& v : sp.fixed) {
    for (std::size_t i = 0; i < m; ++i) q(i, c) = v[i];
    ++c;
  }
  RationalMatrix keep(m, m);
  for (std::size_t i = 0; i < sp.moving.size(); ++i) keep(i, i) = 1;
  return q * keep * mat_inverse(q);
}

// Reduces y modulo the rows of an upper triangular full-rank Hermite form.
RationalVector reduce_box(RationalVector y, const IntegerMatrix& h) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    const mpz_class q = floor_div(y[i] / mpq_class(h(i, i)));
    if (q == 0) continue;
    for (std::size_t j = i; j < y.size(); ++j) y[j] -= q * h(i, j);
  }
  return y;
}

bool lex_less(const RationalVector& a, const RationalVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

AffineElement compose(const AffineElement& a, const AffineElement& b) {
  return {add(a.t, act(a.S, b.t)), a.S * b.S};
}

AffineElement inverse(const AffineElement& a) {
  const IntegerMatrix si = unimodular_inverse(a.S);
  RationalVector t = act(si, a.t);
  for (auto& x : t) x = -x;
  return {std::move(t), si};
}

void validate(const CrystGroup& g) {
  if (g.step != 1)
    throw InputError("base case only: translation subgroup of step " + std::to_string(g.step) +
                     " (nonabelian Fitting subgroup) is not supported");
  if (g.m == 0) throw InputError("dimension m must be positive");
  if (g.lattice.rows() != g.m || g.lattice.cols() != g.m) throw DimensionError("lattice must be an m x m basis");
  if (determinant(g.lattice) == 0) throw InputError("lattice basis is degenerate");
  const RationalMatrix B = transpose(g.lattice);
  const RationalMatrix Binv = mat_inverse(B);
  std::vector<IntegerMatrix> hol;
  for (const auto& e : g.gens) {
    if (e.t.size() != g.m) throw DimensionError("translation part has the wrong length");
    if (!e.S.is_square() || e.S.rows() != g.m) throw DimensionError("holonomy part has the wrong dimension");
    if (!is_unimodular(e.S)) throw InputError("holonomy part " + to_string(e.S) + " is not in GL(m,Z)");
    if (!e.S.is_identity() && is_unipotent(e.S))
      throw InputError("base case only: unipotent holonomy " + to_string(e.S) +
                       " makes the Fitting subgroup nonabelian or non-lattice");
    if (!torsion_order(e.S)) throw InputError("holonomy part " + to_string(e.S) + " has infinite order");
    const RationalMatrix sl = Binv * to_rational(e.S) * B;
    if (!is_integral(sl)) throw InputError("lattice is not invariant under holonomy " + to_string(e.S));
    hol.push_back(e.S);
  }
  std::vector<IntegerMatrix> seen{IntegerMatrix::identity(g.m)};
  std::map<IntegerMatrix, bool> index{{seen.front(), true}};
  for (std::size_t head = 0; head < seen.size(); ++head)
    for (const auto& s : hol) {
      IntegerMatrix x = seen[head] * s;
      if (index.emplace(x, true).second) {
        seen.push_back(std::move(x));
        if (seen.size() > kHolonomyCap) throw InputError("holonomy not finite: input invalid");
      }
    }
}

Splitting splitting(const IntegerMatrix& S) {
  if (!is_unimodular(S) || !torsion_order(S)) throw PreconditionError("holonomy " + to_string(S) + " is not torsion");
  const KernelImage ki = kernel_and_image(to_rational(S - IntegerMatrix::identity(S.n())));
  return {ki.image, ki.kernel};
}

AffineJordan affine_jordan(const AffineElement& e) {
  const std::size_t m = e.S.n();
  if (e.t.size() != m) throw DimensionError("translation part has the wrong length");
  const RationalMatrix pi = moving_projection(e.S);
  const RationalVector ts = mat_vec(pi, e.t);
  return {{ts, e.S}, {sub(e.t, ts), IntegerMatrix::identity(m)}};
}

AffineElement CrystFrame::to_frame(const AffineElement& e) const {
  const RationalMatrix inv = mat_inverse(basis);
  return {mat_vec(inv, e.t), to_integer(inv * to_rational(e.S) * basis)};
}

AffineElement CrystFrame::from_frame(const AffineElement& e) const {
  return {mat_vec(basis, e.t), to_integer(basis * to_rational(e.S) * mat_inverse(basis))};
}

CrystFrame build_frame(const CrystGroup& g) {
  validate(g);
  const std::size_t m = g.m;
  CrystFrame declared{m, transpose(g.lattice), {}, {}};
  std::vector<AffineElement> letters;
  for (const auto& e : g.gens) letters.push_back(declared.to_frame(e));
  for (std::size_t i = 0; i < m; ++i) {
    RationalVector t(m, mpq_class(0));
    t[i] = 1;
    letters.push_back({std::move(t), IntegerMatrix::identity(m)});
  }

  // One lift per holonomy element, by breadth-first search.
  std::map<IntegerMatrix, RationalVector> lift;
  std::vector<IntegerMatrix> order{IntegerMatrix::identity(m)};
  lift.emplace(order.front(), RationalVector(m, mpq_class(0)));
  for (std::size_t head = 0; head < order.size(); ++head) {
    const AffineElement h{lift.at(order[head]), order[head]};
    for (const auto& l : letters) {
      AffineElement x = compose(h, l);
      if (lift.emplace(x.S, x.t).second) order.push_back(x.S);
    }
  }

  // Schreier generators of the translation subgroup.
  std::vector<RationalVector> translations;
  for (const auto& s : order) {
    const AffineElement h{lift.at(s), s};
    for (const auto& l : letters) {
      const AffineElement x = compose(h, l);
      translations.push_back(sub(x.t, lift.at(x.S)));
    }
  }
  const RationalMatrix tb = lattice_basis(translations, m);
  if (tb.rows() != m) throw std::logic_error("translation subgroup is not of full rank");
  const RationalMatrix c = transpose(tb);

  CrystFrame frame{m, declared.basis * c, {}, {}};
  for (const auto& e : g.gens) frame.gens.push_back(frame.to_frame(e));
  std::sort(order.begin(), order.end());
  const RationalMatrix cinv = mat_inverse(c);
  for (const auto& s : order) {
    AffineElement h{mat_vec(cinv, lift.at(s)), to_integer(cinv * to_rational(s) * c)};
    // Translations by Z^m are in the group, so the lift may be taken in [0,1)^m.
    for (auto& x : h.t) x -= floor_div(x);
    frame.holonomy.push_back(std::move(h));
  }
  return frame;
}

std::size_t SemiFactorSet::total() const {
  std::size_t n = 0;
  for (const auto& c : components) n += c.reps.size();
  return n;
}

SemiFactorSet semifactor_representatives(const CrystGroup& g, std::size_t bit_bound) {
  SemiFactorSet out{build_frame(g), {}};
  const CrystFrame& frame = out.frame;
  const std::size_t m = frame.m;
  constexpr std::size_t kCosetCap = 1'000'000;

  for (const auto& h : frame.holonomy) {
    SemiFactorComponent comp;
    comp.S = frame.from_frame(h).S;
    const IntegerMatrix A = h.S - IntegerMatrix::identity(m);
    const Splitting sp = splitting(h.S);
    const std::size_t k = sp.moving.size();
    if (k == 0) {
      comp.quotient_order = 1;
      comp.coset_basis = RationalMatrix(0, m);
      comp.coset_relations = IntegerMatrix(0, 0);
      comp.rep_coords.push_back({});
      comp.reps.push_back({RationalVector(m, mpq_class(0)), frame.from_frame({RationalVector(m, mpq_class(0)), h.S})});
      out.components.push_back(std::move(comp));
      continue;
    }

    // W_S(Z) = W_S cap Z^m: integer solutions of N x = 0 where the rows of N
    // span the annihilator ker(A^T) of W_S.
    std::vector<RationalVector> wz;
    const KernelImage ann = kernel_and_image(to_rational(transpose(A)));
    if (ann.kernel.empty()) {
      for (std::size_t i = 0; i < m; ++i) {
        RationalVector e(m, mpq_class(0));
        e[i] = 1;
        wz.push_back(std::move(e));
      }
    } else {
      IntegerMatrix nt(m, ann.kernel.size());
      for (std::size_t j = 0; j < ann.kernel.size(); ++j) {
        const mpz_class d = denominator_lcm(ann.kernel[j]);
        for (std::size_t i = 0; i < m; ++i) nt(i, j) = mpq_class(ann.kernel[j][i] * d).get_num();
      }
      const HermiteDecomposition hn = hermite_normal_form(nt);
      for (std::size_t i = hn.rank; i < m; ++i) {
        RationalVector v(m);
        for (std::size_t j = 0; j < m; ++j) v[j] = hn.U(i, j);
        wz.push_back(std::move(v));
      }
    }
    if (wz.size() != k) throw std::logic_error("W_S(Z) has the wrong rank");
    const RationalMatrix wzb = from_rows(wz, m);
    IntegerMatrix restricted(k, k);
    for (std::size_t j = 0; j < k; ++j) {
      const RationalVector c = coordinates(wzb, act(A, wz[j]));
      for (std::size_t i = 0; i < k; ++i) restricted(i, j) = c[i].get_num();
    }
    const SmithDecomposition snf = smith_normal_form(restricted, bit_bound);
    comp.invariant_factors = snf.diagonal();
    comp.quotient_order = 1;
    for (const auto& d : comp.invariant_factors) comp.quotient_order *= d;

    // Realized cosets: pi(tau) + pi(Z^m) modulo (S - I) Z^m.
    const RationalMatrix pi = moving_projection(h.S);
    std::vector<RationalVector> projected;
    for (std::size_t i = 0; i < m; ++i) projected.push_back(column(pi, i));
    IntegerMatrix preimage;
    comp.coset_basis = lattice_basis(projected, m, &preimage);
    if (comp.coset_basis.rows() != k) throw std::logic_error("projected lattice has the wrong rank");
    IntegerMatrix rel(m, k);
    for (std::size_t i = 0; i < m; ++i) {
      RationalVector ai(m);
      for (std::size_t r = 0; r < m; ++r) ai[r] = A(r, i);
      const RationalVector c = coordinates(comp.coset_basis, ai);
      for (std::size_t j = 0; j < k; ++j) {
        if (c[j].get_den() != 1) throw std::logic_error("(S - I)Z^m is not inside the projected lattice");
        rel(i, j) = c[j].get_num();
      }
    }
    const HermiteDecomposition hr = hermite_normal_form(rel);
    comp.coset_relations = IntegerMatrix(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) comp.coset_relations(i, j) = hr.H(i, j);

    mpz_class cosets = 1;
    for (std::size_t i = 0; i < k; ++i) cosets *= comp.coset_relations(i, i);
    if (cosets != comp.quotient_order)
      throw std::logic_error("realized coset count differs from the Smith quotient order");
    if (cosets > kCosetCap) throw ResourceError("semisimple factor quotient exceeds 10^6 cosets");

    const RationalVector base = reduce_box(coordinates(comp.coset_basis, mat_vec(pi, h.t)), comp.coset_relations);
    std::vector<RationalVector> ys;
    std::vector<mpz_class> x(k, 0);
    for (;;) {
      RationalVector y = base;
      for (std::size_t i = 0; i < k; ++i) y[i] += x[i];
      ys.push_back(reduce_box(std::move(y), comp.coset_relations));
      std::size_t pos = 0;
      while (pos < k && ++x[pos] == comp.coset_relations(pos, pos)) x[pos++] = 0;
      if (pos == k) break;
    }
    std::sort(ys.begin(), ys.end(), lex_less);

    for (auto& y : ys) {
      RationalVector ts(m, mpq_class(0));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < m; ++j) ts[j] += y[i] * comp.coset_basis(i, j);
      // ts - pi(tau) = sum z_r P_r with P_r = pi(row r of preimage).
      const RationalVector z = sub(y, coordinates(comp.coset_basis, mat_vec(pi, h.t)));
      RationalVector ell(m, mpq_class(0));
      for (std::size_t r = 0; r < k; ++r) {
        if (z[r].get_den() != 1) throw std::logic_error("non-integral coset offset");
        for (std::size_t j = 0; j < m; ++j) ell[j] += z[r] * preimage(r, j);
      }
      const AffineElement witness{add(h.t, ell), h.S};
      if (affine_jordan(witness).semisimple.t != ts) throw std::logic_error("witness does not realize its coset");
      comp.rep_coords.push_back(y);
      comp.reps.push_back({mat_vec(frame.basis, ts), frame.from_frame(witness)});
    }
    out.components.push_back(std::move(comp));
  }
  return out;
}

std::pair<std::size_t, std::size_t> locate(const SemiFactorSet& set, const AffineElement& e) {
  const AffineElement f = set.frame.to_frame(e);
  for (std::size_t c = 0; c < set.components.size(); ++c) {
    const auto& comp = set.components[c];
    if (set.frame.holonomy[c].S != f.S) continue;
    if (comp.coset_basis.rows() == 0) return {c, 0};
    const RationalVector ts = affine_jordan(f).semisimple.t;
    const RationalVector y = reduce_box(coordinates(comp.coset_basis, ts), comp.coset_relations);
    for (std::size_t r = 0; r < comp.rep_coords.size(); ++r)
      if (comp.rep_coords[r] == y) return {c, r};
    throw PreconditionError("element is not in the group: its semisimple factor lies in no realized coset");
  }
  throw PreconditionError("holonomy " + to_string(e.S) + " is not in the holonomy group");
}

IntegerMatrix embed_element(const AffineElement& e, const mpz_class& D) {
  const std::size_t m = e.S.n();
  IntegerMatrix out(m + 1, m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) out(i, j) = e.S(i, j);
    const mpq_class x = e.t[i] * D;
    if (x.get_den() != 1) throw std::logic_error("denominator not cleared by D");
    out(i, m) = x.get_num();
  }
  out(m, m) = 1;
  return out;
}

namespace {

std::vector<AffineElement> frame_generators(const CrystFrame& frame) {
  std::vector<AffineElement> out = frame.gens;
  for (std::size_t i = 0; i < frame.m; ++i) {
    RationalVector t(frame.m, mpq_class(0));
    t[i] = 1;
    out.push_back({std::move(t), IntegerMatrix::identity(frame.m)});
  }
  return out;
}

}  // namespace

std::vector<IntegerMatrix> embed_affine(const CrystGroup& g) {
  const CrystFrame frame = build_frame(g);
  const auto gens = frame_generators(frame);
  mpz_class D = 1;
  for (const auto& e : gens) D = lcm(D, denominator_lcm(e.t));
  std::vector<IntegerMatrix> out;
  for (const auto& e : gens) out.push_back(embed_element(e, D));
  return out;
}

LiftedGroup lift_to_gl(const CrystGroup& g, std::size_t bit_bound) {
  const SemiFactorSet set = semifactor_representatives(g, bit_bound);
  const auto gens = frame_generators(set.frame);
  std::vector<AffineElement> factors;
  for (std::size_t c = 0; c < set.components.size(); ++c)
    for (const auto& r : set.components[c].reps)
      factors.push_back(set.frame.to_frame({r.t_s, set.components[c].S}));
  LiftedGroup out{1, {}, {}};
  for (const auto& e : gens) out.D = lcm(out.D, denominator_lcm(e.t));
  for (const auto& e : factors) out.D = lcm(out.D, denominator_lcm(e.t));
  for (const auto& e : gens) out.gens.push_back(embed_element(e, out.D));
  for (const auto& e : factors) out.semisimple_factors.push_back(embed_element(e, out.D));
  return out;
}

}  // namespace congrusep
