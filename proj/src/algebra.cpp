#include "cactus/algebra.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <tuple>

namespace cactus {

std::string family_name(Family f) {
  switch (f) {
    case Family::mbar: return "mbar";
    case Family::arnold: return "arnold";
    case Family::m0: return "m0";
    case Family::pvb: return "pvb";
    case Family::pfb: return "pfb";
    case Family::psigma: return "psigma";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  for (Family f : all_families())
    if (family_name(f) == s) return f;
  throw std::invalid_argument("unknown family: " + s);
}

std::vector<Family> all_families() {
  return {Family::mbar, Family::arnold, Family::m0, Family::pvb, Family::pfb, Family::psigma};
}

namespace {

int sort_parity_sign(GenIndex& idx) {
  // Sort ascending, return (-1)^inversions; 0 on repeated entries.
  int inv = 0;
  for (size_t a = 0; a < idx.size(); ++a)
    for (size_t b = a + 1; b < idx.size(); ++b) {
      if (idx[a] == idx[b]) return 0;
      if (idx[a] > idx[b]) ++inv;
    }
  std::sort(idx.begin(), idx.end());
  return inv % 2 ? -1 : 1;
}

void check_indices(int n, const GenIndex& raw) {
  for (int v : raw)
    if (v < 1 || v > n) throw std::invalid_argument("generator index out of range");
}

std::vector<GenIndex> subsets(int n, int k) {
  std::vector<GenIndex> out;
  GenIndex cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int v = start; v <= n; ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

std::vector<GenIndex> ordered_pairs(int n) {
  std::vector<GenIndex> out;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) out.push_back({i, j});
  return out;
}

long long binom_ll(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (long long j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

}  // namespace

NormalizedGenerator normalize_generator(Family f, int n, const GenIndex& raw) {
  int arity = (f == Family::mbar) ? 4 : 2;
  if (static_cast<int>(raw.size()) != arity)
    throw std::invalid_argument("generator arity mismatch");
  check_indices(n, raw);
  NormalizedGenerator out;
  out.canonical = raw;
  switch (f) {
    case Family::mbar:
    case Family::pfb:
      out.sign = sort_parity_sign(out.canonical);
      break;
    case Family::arnold:
      out.sign = sort_parity_sign(out.canonical) ? 1 : 0;
      break;
    case Family::m0:
      out.sign = sort_parity_sign(out.canonical) ? 1 : 0;
      if (out.sign && out.canonical == GenIndex{1, 2}) out.sign = 0;  // theta_{1,2} = 0
      break;
    case Family::pvb:
    case Family::psigma:
      out.sign = (raw[0] == raw[1]) ? 0 : 1;
      break;
  }
  if (out.sign == 0) out.canonical.clear();
  return out;
}

AlgebraPresentation presentation(Family f, int n) {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  AlgebraPresentation P;
  P.family = f;
  P.n = n;
  switch (f) {
    case Family::mbar:
      P.arity = 4;
      P.symmetry = Symmetry::antisymmetric;
      P.generators = subsets(n, 4);
      break;
    case Family::arnold:
      P.arity = 2;
      P.symmetry = Symmetry::symmetric;
      P.generators = subsets(n, 2);
      break;
    case Family::m0: {
      P.arity = 2;
      P.symmetry = Symmetry::symmetric;
      P.ambient = Family::arnold;
      for (auto& g : subsets(n, 2))
        if (!(g == GenIndex{1, 2})) P.generators.push_back(g);
      break;
    }
    case Family::pfb:
      P.arity = 2;
      P.symmetry = Symmetry::antisymmetric;
      P.generators = subsets(n, 2);
      break;
    case Family::pvb:
    case Family::psigma:
      P.arity = 2;
      P.symmetry = Symmetry::none;
      P.generators = ordered_pairs(n);
      break;
  }
  for (size_t i = 0; i < P.generators.size(); ++i)
    P.gen_pos[P.generators[i]] = static_cast<int>(i);
  return P;
}

std::vector<SparseVector> AlgebraPresentation::linear_relators() const {
  std::vector<SparseVector> out;
  if (family != Family::mbar) return out;
  for (const GenIndex& s : subsets(n, 5)) {
    // w_{ijkl}+w_{jklm}+w_{klmi}+w_{lmij}+w_{mijk}
    SparseVector rel;
    for (int t = 0; t < 5; ++t) {
      GenIndex raw = {s[static_cast<size_t>(t % 5)], s[static_cast<size_t>((t + 1) % 5)],
                      s[static_cast<size_t>((t + 2) % 5)], s[static_cast<size_t>((t + 3) % 5)]};
      NormalizedGenerator g = normalize_generator(family, n, raw);
      if (g.sign)
        rel.add_scaled(SparseVector::unit(gen_pos.at(g.canonical)), Rational(g.sign));
    }
    if (!rel.empty()) out.push_back(std::move(rel));
  }
  return out;
}

std::vector<QuadRelator> AlgebraPresentation::quadratic_relators() const {
  std::vector<QuadRelator> out;
  auto rel = [&](std::initializer_list<QuadRelator::Term> ts) {
    QuadRelator r;
    r.terms.assign(ts);
    out.push_back(std::move(r));
  };
  switch (family) {
    case Family::mbar:
      for (const GenIndex& t : subsets(n, 3)) {
        std::vector<int> rest;
        for (int v = 1; v <= n; ++v)
          if (std::find(t.begin(), t.end(), v) == t.end()) rest.push_back(v);
        for (size_t a = 0; a < rest.size(); ++a)
          for (size_t b = a + 1; b < rest.size(); ++b)
            rel({{{t[0], t[1], t[2], rest[a]}, {t[0], t[1], t[2], rest[b]}, 1}});
      }
      break;
    case Family::arnold:
      for (const GenIndex& t : subsets(n, 3)) {
        int i = t[0], j = t[1], k = t[2];
        rel({{{i, j}, {j, k}, 1}, {{j, k}, {k, i}, 1}, {{k, i}, {i, j}, 1}});
      }
      break;
    case Family::m0:
      break;  // subalgebra: relations live in the ambient arnold algebra
    case Family::pvb:
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) rel({{{i, j}, {j, i}, 1}});
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
          for (int k = 1; k <= n; ++k) {
            if (i == j || j == k || i == k) continue;
            rel({{{i, j}, {i, k}, 1}, {{i, j}, {j, k}, -1}, {{i, k}, {k, j}, 1}});
            rel({{{i, k}, {j, k}, 1}, {{i, j}, {j, k}, -1}, {{j, i}, {i, k}, 1}});
          }
      break;
    case Family::pfb:
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
          for (int k = 1; k <= n; ++k) {
            if (i == j || j == k || i == k) continue;
            rel({{{i, j}, {i, k}, 1}, {{i, j}, {j, k}, -1}});
            if (i < j && j < k) rel({{{i, k}, {j, k}, 1}, {{i, j}, {j, k}, -1}});
          }
      break;
    case Family::psigma:
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) rel({{{i, j}, {j, i}, 1}});
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
          for (int k = 1; k <= n; ++k) {
            if (i == j || j == k || i == k) continue;
            rel({{{k, j}, {j, i}, 1}, {{k, j}, {k, i}, -1}, {{i, j}, {k, i}, 1}});
          }
      break;
  }
  return out;
}

SparseVector DegreeOneSpace::rewrite(const GenIndex& canonical) const {
  auto it = pos.find(canonical);
  if (it != pos.end()) return SparseVector::unit(it->second);
  if (family != Family::mbar || canonical[0] == 1)
    throw std::invalid_argument("generator not in degree-one table");
  // w_{ijkl} = w_{1jkl} - w_{1ikl} + w_{1ijl} - w_{1ijk}, all 1 < i < j < k < l
  int i = canonical[0], j = canonical[1], k = canonical[2], l = canonical[3];
  SparseVector v;
  v.add_scaled(SparseVector::unit(pos.at({1, j, k, l})), 1);
  v.add_scaled(SparseVector::unit(pos.at({1, i, k, l})), -1);
  v.add_scaled(SparseVector::unit(pos.at({1, i, j, l})), 1);
  v.add_scaled(SparseVector::unit(pos.at({1, i, j, k})), -1);
  return v;
}

SparseVector DegreeOneSpace::express(const GenIndex& raw) const {
  NormalizedGenerator g = normalize_generator(family, n, raw);
  if (g.sign == 0) return {};
  SparseVector v = rewrite(g.canonical);
  if (g.sign < 0) v.negate();
  return v;
}

DegreeOneSpace degree_one_space(Family f, int n) {
  DegreeOneSpace V;
  V.family = f;
  V.n = n;
  if (f == Family::mbar) {
    for (const GenIndex& t : subsets(n, 3))
      if (t[0] > 1) V.basis.push_back({1, t[0], t[1], t[2]});
    std::sort(V.basis.begin(), V.basis.end());
  } else {
    V.basis = presentation(f, n).generators;
  }
  for (size_t i = 0; i < V.basis.size(); ++i) V.pos[V.basis[i]] = static_cast<int>(i);
  return V;
}

long long ExteriorIndex::size() const { return binom_ll(d, i); }

long long ExteriorIndex::rank(const std::vector<int>& mono) const {
  long long r = 0;
  int prev = -1;
  for (int j = 0; j < i; ++j) {
    for (int v = prev + 1; v < mono[static_cast<size_t>(j)]; ++v)
      r += binom_ll(d - 1 - v, i - 1 - j);
    prev = mono[static_cast<size_t>(j)];
  }
  return r;
}

std::vector<int> ExteriorIndex::unrank(long long r) const {
  std::vector<int> mono(static_cast<size_t>(i));
  int v = 0;
  for (int j = 0; j < i; ++j) {
    for (;; ++v) {
      long long c = binom_ll(d - 1 - v, i - 1 - j);
      if (r < c) break;
      r -= c;
    }
    mono[static_cast<size_t>(j)] = v++;
  }
  return mono;
}

SparseVector wedge_extend(const SparseVector& v, const ExteriorIndex& EIk,
                          const SparseVector& x, const ExteriorIndex& EIk1) {
  std::map<long long, Rational> acc;
  for (const auto& [mr, c] : v.terms) {
    std::vector<int> mono = EIk.unrank(mr);
    for (const auto& [q, xc] : x.terms) {
      auto it = std::lower_bound(mono.begin(), mono.end(), q);
      if (it != mono.end() && *it == q) continue;
      int pos = static_cast<int>(it - mono.begin());
      int sign = ((EIk.i - pos) % 2) ? -1 : 1;
      std::vector<int> m2 = mono;
      m2.insert(m2.begin() + pos, q);
      Rational term = c * xc * sign;
      auto [jt, inserted] = acc.emplace(EIk1.rank(m2), term);
      if (!inserted) {
        jt->second += term;
        if (jt->second == 0) acc.erase(jt);
      }
    }
  }
  SparseVector out;
  out.terms.reserve(acc.size());
  for (auto& [r, c] : acc) out.terms.emplace_back(static_cast<int>(r), std::move(c));
  return out;
}

SparseVector wedge(const std::vector<const SparseVector*>& factors, const ExteriorIndex& EI) {
  int d = EI.d;
  SparseVector v = SparseVector::unit(0);  // the empty monomial in Lambda^0
  for (int k = 0; k < static_cast<int>(factors.size()); ++k)
    v = wedge_extend(v, ExteriorIndex(d, k), *factors[static_cast<size_t>(k)],
                     ExteriorIndex(d, k + 1));
  return v;
}

std::vector<SparseVector> degree_one_action(const DegreeOneSpace& V1, const Permutation& p) {
  std::vector<SparseVector> cols;
  cols.reserve(V1.basis.size());
  SparseVector theta_base;
  if (V1.family == Family::m0 && V1.n >= 2)
    theta_base = V1.express({p(1), p(2)});
  for (const GenIndex& g : V1.basis) {
    GenIndex raw(g.size());
    for (size_t t = 0; t < g.size(); ++t) raw[t] = p(g[t]);
    SparseVector col = V1.express(raw);
    if (V1.family == Family::m0) col.add_scaled(theta_base, -1);
    cols.push_back(std::move(col));
  }
  return cols;
}

namespace {

// Rewritten quadratic relators as vectors in Lambda^2(V1) coordinates.
std::vector<SparseVector> rewritten_relators(const DegreeOneSpace& V1) {
  AlgebraPresentation P = presentation(V1.family, V1.n);
  ExteriorIndex EI1(V1.dim(), 1), EI2(V1.dim(), 2);
  std::vector<SparseVector> out;
  for (const QuadRelator& r : P.quadratic_relators()) {
    SparseVector acc;
    for (const auto& t : r.terms) {
      SparseVector a = V1.express(t.g1);
      SparseVector b = V1.express(t.g2);
      if (a.empty() || b.empty()) continue;
      SparseVector prod = wedge_extend(a, EI1, b, EI2);
      acc.add_scaled(prod, t.coeff);
    }
    if (!acc.empty()) out.push_back(std::move(acc));
  }
  return out;
}

}  // namespace

EchelonForm relation_space(Family f, int n, int i) {
  if (f == Family::m0)
    throw std::invalid_argument("relation_space: m0 uses ambient images");
  if (i < 0) throw std::invalid_argument("degree must be nonnegative");
  DegreeOneSpace V1 = degree_one_space(f, n);
  int d = V1.dim();
  ExteriorIndex EIi(d, i);
  EchelonForm R(static_cast<int>(EIi.size()));
  if (i < 2) return R;
  std::vector<SparseVector> rels = rewritten_relators(V1);
  if (i == 2) {
    for (auto& r : rels) R.insert(std::move(r));
    return R;
  }
  ExteriorIndex EIrest(d, i - 2);
  for (long long m = 0; m < EIrest.size(); ++m) {
    std::vector<int> mono = EIrest.unrank(m);
    for (const SparseVector& r : rels) {
      SparseVector v = r;
      ExteriorIndex lo(d, 2);
      bool dead = false;
      for (int t = 0; t < i - 2; ++t) {
        ExteriorIndex hi(d, 3 + t);
        v = wedge_extend(v, lo, SparseVector::unit(mono[static_cast<size_t>(t)]), hi);
        lo = hi;
        if (v.empty()) { dead = true; break; }
      }
      if (!dead) R.insert(std::move(v));
    }
  }
  return R;
}

namespace {

std::vector<GenIndex> monomial_generators(const DegreeOneSpace& V1,
                                          const std::vector<int>& mono) {
  std::vector<GenIndex> out;
  out.reserve(mono.size());
  for (int p : mono) out.push_back(V1.basis[static_cast<size_t>(p)]);
  return out;
}

GradedBasis build_graded_basis(Family f, int n, int i);

struct GradedCache {
  std::mutex m;
  std::map<std::tuple<int, int, int>, std::shared_ptr<const GradedBasis>> entries;
};
GradedCache& graded_cache() {
  static GradedCache c;
  return c;
}

}  // namespace

const GradedBasis& graded_basis(Family f, int n, int i) {
  auto key = std::make_tuple(static_cast<int>(f), n, i);
  auto& cache = graded_cache();
  {
    std::lock_guard<std::mutex> lock(cache.m);
    auto it = cache.entries.find(key);
    if (it != cache.entries.end()) return *it->second;
  }
  auto built = std::make_shared<const GradedBasis>(build_graded_basis(f, n, i));
  std::lock_guard<std::mutex> lock(cache.m);
  auto [it, inserted] = cache.entries.emplace(key, std::move(built));
  return *it->second;
}

namespace {

GradedBasis build_graded_basis(Family f, int n, int i) {
  GradedBasis gb;
  gb.family = f;
  gb.n = n;
  gb.degree = i;
  if (f == Family::m0) {
    gb.ambient = std::make_shared<GradedBasis>(graded_basis(Family::arnold, n, i));
    gb.V1 = std::make_shared<DegreeOneSpace>(degree_one_space(Family::m0, n));
    const DegreeOneSpace& amb1 = *gb.ambient->V1;
    // theta_{a,b} = w_{a,b} - w_{1,2} inside the ambient degree-1 space
    std::vector<SparseVector> theta(static_cast<size_t>(gb.V1->dim()));
    for (int t = 0; t < gb.V1->dim(); ++t) {
      const GenIndex& g = gb.V1->basis[static_cast<size_t>(t)];
      SparseVector v = SparseVector::unit(amb1.pos.at(g));
      v.add_scaled(SparseVector::unit(amb1.pos.at({1, 2})), -1);
      theta[static_cast<size_t>(t)] = std::move(v);
    }
    gb.image = std::make_shared<Subspace>(static_cast<int>(gb.ambient->dim));
    ExteriorIndex EItheta(gb.V1->dim(), i);
    ExteriorIndex EIamb(amb1.dim(), i);
    for (long long m = 0; m < EItheta.size(); ++m) {
      std::vector<int> mono = EItheta.unrank(m);
      std::vector<const SparseVector*> factors;
      for (int t : mono) factors.push_back(&theta[static_cast<size_t>(t)]);
      SparseVector v = wedge(factors, EIamb);
      v = gb.ambient->relations->quotient_coords(v);
      if (gb.image->ech.insert(std::move(v)))
        gb.basis_monomials.push_back(monomial_generators(*gb.V1, mono));
    }
    gb.dim = gb.image->dim();
    gb.relation_dim = 0;
    return gb;
  }
  gb.V1 = std::make_shared<DegreeOneSpace>(degree_one_space(f, n));
  ExteriorIndex EIi(gb.V1->dim(), i);
  gb.relations = std::make_shared<EchelonForm>(relation_space(f, n, i));
  gb.relation_dim = gb.relations->rank();
  gb.dim = EIi.size() - gb.relation_dim;
  for (int np : gb.relations->nonpivots()) {
    gb.transversal.push_back(np);
    gb.basis_monomials.push_back(monomial_generators(*gb.V1, EIi.unrank(np)));
  }
  return gb;
}

SparseVector apply_exterior(const std::vector<SparseVector>& cols,
                            const std::vector<int>& mono, const ExteriorIndex& EI) {
  std::vector<const SparseVector*> factors;
  factors.reserve(mono.size());
  for (int p : mono) factors.push_back(&cols[static_cast<size_t>(p)]);
  return wedge(factors, EI);
}

}  // namespace

SparseRationalMatrix action_matrix(Family f, int n, int i, const Permutation& p) {
  if (p.n() != n) throw std::invalid_argument("permutation size mismatch");
  DegreeOneSpace V1 = degree_one_space(f, n);
  std::vector<SparseVector> cols = degree_one_action(V1, p);
  ExteriorIndex EIi(V1.dim(), i);
  SparseRationalMatrix M(static_cast<int>(EIi.size()), static_cast<int>(EIi.size()));
  for (long long m = 0; m < EIi.size(); ++m)
    M.columns[static_cast<size_t>(m)] = apply_exterior(cols, EIi.unrank(m), EIi);
  return M;
}

SparseRationalMatrix quotient_action_matrix(const GradedBasis& gb, const Permutation& p) {
  int k = static_cast<int>(gb.dim);
  SparseRationalMatrix Q(k, k);
  if (gb.family == Family::m0) {
    SparseRationalMatrix Qamb = quotient_action_matrix(*gb.ambient, p);
    std::vector<int> piv = gb.image->ech.pivots();
    int j = 0;
    for (const auto& [pv, b] : gb.image->ech.rows()) {
      SparseVector w = Qamb.apply(b);
      SparseVector col;
      for (size_t t = 0; t < piv.size(); ++t) {
        Rational c = w.coeff(piv[t]);
        if (c != 0) col.terms.emplace_back(static_cast<int>(t), c);
      }
      Q.columns[static_cast<size_t>(j++)] = std::move(col);
    }
    return Q;
  }
  std::vector<SparseVector> cols = degree_one_action(*gb.V1, p);
  ExteriorIndex EIi(gb.V1->dim(), gb.degree);
  for (int j = 0; j < k; ++j) {
    SparseVector v = apply_exterior(cols, EIi.unrank(gb.transversal[static_cast<size_t>(j)]), EIi);
    Q.columns[static_cast<size_t>(j)] = gb.relations->quotient_coords(v);
  }
  return Q;
}

namespace {

Rational minor_det(const std::vector<std::vector<Rational>>& M) {
  size_t k = M.size();
  if (k == 0) return 1;
  if (k == 1) return M[0][0];
  if (k == 2) return M[0][0] * M[1][1] - M[0][1] * M[1][0];
  Rational acc = 0;
  std::vector<std::vector<Rational>> sub(k - 1, std::vector<Rational>(k - 1));
  for (size_t c = 0; c < k; ++c) {
    if (M[0][c] == 0) continue;
    for (size_t r = 1; r < k; ++r) {
      size_t cc = 0;
      for (size_t c2 = 0; c2 < k; ++c2)
        if (c2 != c) sub[r - 1][cc++] = M[r][c2];
    }
    Rational t = M[0][c] * minor_det(sub);
    if (c % 2) acc -= t; else acc += t;
  }
  return acc;
}

// Coefficient of target monomial in the exterior-power image of mono.
Rational exterior_entry(const std::vector<SparseVector>& cols, const std::vector<int>& target,
                        const std::vector<int>& mono) {
  size_t k = target.size();
  std::vector<std::vector<Rational>> M(k, std::vector<Rational>(k));
  for (size_t a = 0; a < k; ++a)
    for (size_t b = 0; b < k; ++b)
      M[a][b] = cols[static_cast<size_t>(mono[b])].coeff(target[a]);
  return minor_det(M);
}

}  // namespace

Rational quotient_trace(const GradedBasis& gb, const Permutation& p) {
  if (gb.family == Family::m0) {
    SparseRationalMatrix Qamb = quotient_action_matrix(*gb.ambient, p);
    return induced_trace(Qamb, *gb.image);
  }
  const DegreeOneSpace& V1 = *gb.V1;
  int i = gb.degree;
  // trace on Lambda^i(V1) from traces of powers (Newton's identities)
  std::vector<Rational> pw(static_cast<size_t>(i + 1));
  Permutation q = Permutation::identity(gb.n);
  for (int k = 1; k <= i; ++k) {
    q = p.compose(q);
    std::vector<SparseVector> cols = degree_one_action(V1, q);
    Rational tr = 0;
    for (int g = 0; g < V1.dim(); ++g) tr += cols[static_cast<size_t>(g)].coeff(g);
    pw[static_cast<size_t>(k)] = tr;
  }
  std::vector<Rational> e(static_cast<size_t>(i + 1));
  e[0] = 1;
  for (int m = 1; m <= i; ++m) {
    Rational s = 0;
    for (int k = 1; k <= m; ++k) {
      Rational t = e[static_cast<size_t>(m - k)] * pw[static_cast<size_t>(k)];
      if (k % 2 == 0) s -= t; else s += t;
    }
    e[static_cast<size_t>(m)] = s / m;
  }
  // subtract the trace on the invariant relation space
  std::vector<SparseVector> cols = degree_one_action(V1, p);
  ExteriorIndex EIi(V1.dim(), i);
  Rational trR = 0;
  for (const auto& [pivot, row] : gb.relations->rows()) {
    std::vector<int> target = EIi.unrank(pivot);
    for (const auto& [mr, c] : row.terms)
      trR += c * exterior_entry(cols, target, EIi.unrank(mr));
  }
  return e[static_cast<size_t>(i)] - trR;
}

std::vector<int> canonical_inclusion(int m, int n) {
  if (m > n) throw std::invalid_argument("canonical_inclusion: m > n");
  std::vector<int> f(static_cast<size_t>(m));
  for (int i = 1; i <= m; ++i) f[static_cast<size_t>(i - 1)] = i;
  return f;
}

SparseRationalMatrix pullback_matrix(Family fam, const std::vector<int>& f, int m, int n, int i) {
  if (static_cast<int>(f.size()) != m)
    throw std::invalid_argument("pullback_matrix: injection size mismatch");
  {
    std::vector<int> sorted = f;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("pullback_matrix: map is not injective");
    for (int v : sorted)
      if (v < 1 || v > n) throw std::invalid_argument("pullback_matrix: image out of range");
  }
  const GradedBasis& src = graded_basis(fam, m, i);
  const GradedBasis& dst = graded_basis(fam, n, i);
  auto relabel = [&](const GenIndex& g) {
    GenIndex out(g.size());
    for (size_t t = 0; t < g.size(); ++t) out[t] = f[static_cast<size_t>(g[t] - 1)];
    return out;
  };
  SparseRationalMatrix P(static_cast<int>(dst.dim), static_cast<int>(src.dim));
  if (fam == Family::m0) {
    // Work in the ambient algebra: the theta-span maps into the theta-span
    // (w_{f(a)f(b)} - w_{f(1)f(2)} is a difference of thetas), so the ambient
    // pullback of each image-basis vector can be read off against the target
    // image basis. Both sides use the image RREF bases, matching the action
    // matrices.
    SparseRationalMatrix Pamb = pullback_matrix(Family::arnold, f, m, n, i);
    std::vector<int> piv = dst.image->ech.pivots();
    int j = 0;
    for (const auto& [pv, b] : src.image->ech.rows()) {
      SparseVector w = Pamb.apply(b);
      SparseVector col;
      for (size_t t = 0; t < piv.size(); ++t) {
        Rational c = w.coeff(piv[t]);
        if (c != 0) col.terms.emplace_back(static_cast<int>(t), c);
      }
      P.columns[static_cast<size_t>(j++)] = std::move(col);
    }
    return P;
  }
  const DegreeOneSpace& V1n = *dst.V1;
  ExteriorIndex EIn(V1n.dim(), i);
  for (size_t j = 0; j < src.basis_monomials.size(); ++j) {
    std::vector<SparseVector> factors;
    for (const GenIndex& g : src.basis_monomials[j]) factors.push_back(V1n.express(relabel(g)));
    std::vector<const SparseVector*> fp;
    for (const auto& v : factors) fp.push_back(&v);
    P.columns[j] = dst.relations->quotient_coords(wedge(fp, EIn));
  }
  return P;
}

namespace {

// Expand a quadratic relator over the raw generator coordinates (no
// degree-one basis involved).
SparseVector relator_on_generators(const AlgebraPresentation& P, const QuadRelator& r,
                                   const ExteriorIndex& EI2) {
  SparseVector acc;
  for (const auto& t : r.terms) {
    NormalizedGenerator a = normalize_generator(P.family, P.n, t.g1);
    NormalizedGenerator b = normalize_generator(P.family, P.n, t.g2);
    if (a.sign == 0 || b.sign == 0) continue;
    int pa = P.gen_pos.at(a.canonical), pb = P.gen_pos.at(b.canonical);
    if (pa == pb) continue;
    Rational c = t.coeff * a.sign * b.sign;
    if (pa > pb) {
      std::swap(pa, pb);
      c = -c;
    }
    acc.add_scaled(SparseVector::unit(static_cast<int>(EI2.rank({pa, pb}))), c);
  }
  return acc;
}

}  // namespace

long long brute_force_dimension(Family f, int n, int i) {
  if (n > 6 || i > 2)
    throw SizeGuardError("brute_force_dimension is guarded to n <= 6, i <= 2");
  if (i < 0) throw std::invalid_argument("degree must be nonnegative");
  Family base = (f == Family::m0) ? Family::arnold : f;
  AlgebraPresentation P = presentation(base, n);
  int dG = static_cast<int>(P.generators.size());
  ExteriorIndex EIi(dG, i);
  EchelonForm rel(static_cast<int>(EIi.size()));
  if (i >= 1) {
    std::vector<SparseVector> lin = P.linear_relators();
    if (i == 1) {
      for (auto& v : lin) rel.insert(std::move(v));
    } else {
      ExteriorIndex EI1(dG, 1), EI2(dG, 2);
      for (const SparseVector& v : lin)
        for (int q = 0; q < dG; ++q) {
          SparseVector w = wedge_extend(v, EI1, SparseVector::unit(q), EI2);
          if (!w.empty()) rel.insert(std::move(w));
        }
      for (const QuadRelator& r : P.quadratic_relators()) {
        SparseVector w = relator_on_generators(P, r, EI2);
        if (!w.empty()) rel.insert(std::move(w));
      }
    }
  }
  if (f != Family::m0) return EIi.size() - rel.rank();

  // m0: rank of the theta-monomial image inside the ambient quotient
  long long base_rank = rel.rank();
  AlgebraPresentation Pm = presentation(Family::m0, n);
  int dT = static_cast<int>(Pm.generators.size());
  std::vector<SparseVector> theta(static_cast<size_t>(dT));
  for (int t = 0; t < dT; ++t) {
    SparseVector v = SparseVector::unit(P.gen_pos.at(Pm.generators[static_cast<size_t>(t)]));
    v.add_scaled(SparseVector::unit(P.gen_pos.at({1, 2})), -1);
    theta[static_cast<size_t>(t)] = std::move(v);
  }
  ExteriorIndex EItheta(dT, i);
  long long r = 0;
  for (long long mr = 0; mr < EItheta.size(); ++mr) {
    std::vector<int> mono = EItheta.unrank(mr);
    std::vector<const SparseVector*> fp;
    for (int t : mono) fp.push_back(&theta[static_cast<size_t>(t)]);
    if (rel.insert(wedge(fp, EIi))) ++r;
  }
  (void)base_rank;
  return r;
}

void check_size_guard(Family f, int n, int i, bool allow_large) {
  if (allow_large) return;
  int ceiling = (i <= 1) ? 13 : (i == 2 ? 10 : 8);
  if (n <= ceiling) return;
  long long d1 = 0;
  switch (f) {
    case Family::mbar: d1 = binom_ll(n - 1, 3); break;
    case Family::arnold:
    case Family::pfb: d1 = binom_ll(n, 2); break;
    case Family::m0: d1 = binom_ll(n, 2) - 1; break;
    case Family::pvb:
    case Family::psigma: d1 = static_cast<long long>(n) * (n - 1); break;
  }
  std::ostringstream os;
  os << "size guard exceeded for " << family_name(f) << " at n=" << n << ", degree " << i
     << " (ceiling n<=" << ceiling << "): ambient exterior-power dimension would be C(" << d1
     << "," << i << ") = " << binom_ll(d1, i);
  throw SizeGuardError(os.str());
}

}  // namespace cactus
