#include "cactus/repstab.hpp"

#include <algorithm>
#include <sstream>

namespace cactus {

ClassFunction character(Family f, int n, int i, bool allow_large) {
  check_size_guard(f, n, i, allow_large);
  const GradedBasis& gb = graded_basis(f, n, i);
  ClassFunction chi(n);
  for (const Partition& mu : partitions(n))
    chi[mu] = quotient_trace(gb, Permutation::from_cycle_type(mu));
  return chi;
}

MultiplicityTable decompose_character(const ClassFunction& chi) {
  MultiplicityTable t;
  t.n = chi.n;
  for (const Partition& nu : partitions(chi.n)) {
    Rational m = inner_product(chi, irreducible_class_function(chi.n, nu));
    if (m.get_den() != 1 || m < 0) {
      std::ostringstream os;
      os << "non-integer or negative multiplicity " << to_string(m) << " at "
         << nu.to_string() << " for n=" << chi.n;
      throw std::runtime_error(os.str());
    }
    long long mm = static_cast<long long>(m.get_num().get_si());
    if (mm > 0) t.mult[unpad_partition(nu)] = mm;
  }
  return t;
}

MultiplicityTable decompose(Family f, int n, int i, bool allow_large) {
  return decompose_character(character(f, n, i, allow_large));
}

int weight_observed(const MultiplicityTable& t) { return t.weight(); }

namespace {

// Grow `span` under the quotient actions of the given permutations until the
// rank stabilizes or the space is filled.
bool close_orbit(const GradedBasis& gb, const std::vector<Permutation>& gens,
                 EchelonForm& span) {
  long long dim = gb.dim;
  if (span.rank() == dim) return true;
  std::vector<SparseRationalMatrix> mats;
  mats.reserve(gens.size());
  for (const Permutation& p : gens) mats.push_back(quotient_action_matrix(gb, p));
  bool grew = true;
  while (grew && span.rank() < dim) {
    grew = false;
    std::vector<SparseVector> snapshot;
    snapshot.reserve(span.rows().size());
    for (const auto& [p, r] : span.rows()) snapshot.push_back(r);
    for (const auto& Q : mats)
      for (const SparseVector& r : snapshot) {
        if (span.insert(Q.apply(r))) grew = true;
        if (span.rank() == dim) return true;
      }
  }
  return span.rank() == dim;
}

std::vector<Permutation> adjacent_transpositions(int n, int lo = 1) {
  std::vector<Permutation> out;
  for (int t = lo; t < n; ++t) out.push_back(Permutation::transposition(n, t, t + 1));
  return out;
}

}  // namespace

bool generation_degree_check(Family f, int i, int m, int n, bool allow_large) {
  if (m > n) throw std::invalid_argument("generation_degree_check: m > n");
  check_size_guard(f, n, i, allow_large);
  const GradedBasis& gb = graded_basis(f, n, i);
  if (gb.dim == 0) return true;
  // Any injection from a level k <= m factors through the canonical inclusion
  // from m followed by a permutation of [n], so seeding with that single
  // pullback and closing under the S_n action covers the whole orbit span.
  SparseRationalMatrix P = pullback_matrix(f, canonical_inclusion(m, n), m, n, i);
  EchelonForm span(static_cast<int>(gb.dim));
  for (const SparseVector& col : P.columns) span.insert(col);
  return close_orbit(gb, adjacent_transpositions(n), span);
}

StabilityReport rep_stability_report(Family f, int i, int n_lo, int n_hi,
                                     bool allow_large) {
  if (n_lo < 0 || n_hi < n_lo)
    throw std::invalid_argument("rep_stability_report: bad range");
  check_size_guard(f, n_hi + 1, i, allow_large);
  StabilityReport rep;
  rep.family = f;
  rep.degree = i;
  rep.n_lo = n_lo;
  rep.n_hi = n_hi;
  rep.guaranteed_onset = 6 * i;
  MultiplicityTable prev;
  bool have_prev = false;
  if (n_lo >= 1) {
    prev = decompose(f, n_lo - 1, i, allow_large);
    have_prev = true;
  }
  for (int n = n_lo; n <= n_hi; ++n) {
    StabilityEntry e;
    e.n = n;
    e.table = decompose(f, n, i, allow_large);
    e.multiplicities_stable = have_prev && e.table.mult == prev.mult;
    const GradedBasis& src = graded_basis(f, n, i);
    const GradedBasis& dst = graded_basis(f, n + 1, i);
    SparseRationalMatrix P =
        pullback_matrix(f, canonical_inclusion(n, n + 1), n, n + 1, i);
    EchelonForm span(static_cast<int>(dst.dim));
    long long r = 0;
    for (const SparseVector& col : P.columns)
      if (span.insert(col)) ++r;
    e.injective = (r == src.dim);
    e.orbit_spanning = close_orbit(dst, adjacent_transpositions(n + 1), span);
    prev = e.table;
    have_prev = true;
    rep.entries.push_back(std::move(e));
  }
  for (auto it = rep.entries.rbegin(); it != rep.entries.rend(); ++it) {
    if (!(it->injective && it->orbit_spanning && it->multiplicities_stable)) break;
    rep.observed_onset = it->n;
  }
  return rep;
}

namespace {

struct CoinvariantLevel {
  const GradedBasis* gb = nullptr;
  EchelonForm W;  // span of (sigma - 1)-images over the moving labels
  CoinvariantLevel() : W(0) {}
};

CoinvariantLevel coinvariant_level(Family f, int i, int a, int n) {
  CoinvariantLevel L;
  int N = a + n;
  L.gb = &graded_basis(f, N, i);
  L.W = EchelonForm(static_cast<int>(L.gb->dim));
  for (const Permutation& p : adjacent_transpositions(N, a + 1)) {
    SparseRationalMatrix Q = quotient_action_matrix(*L.gb, p);
    for (int j = 0; j < static_cast<int>(L.gb->dim); ++j) {
      SparseVector v = Q.columns[static_cast<size_t>(j)];
      v.add_scaled(SparseVector::unit(j), -1);
      L.W.insert(std::move(v));
    }
  }
  return L;
}

}  // namespace

CoinvariantProbe coinvariant_probe(Family f, int i, int a, int n_lo, int n_hi,
                                   bool allow_large) {
  if (a < 0 || n_lo < 0 || n_hi < n_lo)
    throw std::invalid_argument("coinvariant_probe: bad parameters");
  check_size_guard(f, a + n_hi + 1, i, allow_large);
  CoinvariantProbe probe;
  probe.family = f;
  probe.degree = i;
  probe.a = a;
  probe.n_lo = n_lo;
  probe.n_hi = n_hi;
  CoinvariantLevel cur = coinvariant_level(f, i, a, n_lo);
  for (int n = n_lo; n <= n_hi; ++n) {
    CoinvariantLevel next = coinvariant_level(f, i, a, n + 1);
    CoinvariantEntry e;
    e.n = n;
    e.dim = cur.gb->dim - cur.W.rank();
    long long next_dim = next.gb->dim - next.W.rank();
    SparseRationalMatrix P = pullback_matrix(f, canonical_inclusion(a + n, a + n + 1),
                                             a + n, a + n + 1, i);
    e.tmap = SparseRationalMatrix(static_cast<int>(next_dim), static_cast<int>(e.dim));
    int j = 0;
    for (int np : cur.W.nonpivots())
      e.tmap.columns[static_cast<size_t>(j++)] =
          next.W.quotient_coords(P.columns[static_cast<size_t>(np)]);
    long long r = rank(e.tmap);
    e.injective = (r == e.dim);
    e.surjective = (r == next_dim);
    probe.entries.push_back(std::move(e));
    cur = std::move(next);
  }
  return probe;
}

namespace {

// Exponent vectors (e_1,...,e_r), trailing zeros trimmed, with
// sum l*e_l <= max_deg; lexicographic generation for determinism.
std::vector<std::vector<int>> monomial_keys(int max_deg) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int l, int budget) -> void {
    if (l > max_deg) {
      std::vector<int> key = cur;
      while (!key.empty() && key.back() == 0) key.pop_back();
      out.push_back(std::move(key));
      return;
    }
    for (int e = 0; e * l <= budget; ++e) {
      cur.push_back(e);
      self(self, l + 1, budget - e * l);
      cur.pop_back();
    }
  };
  rec(rec, 1, max_deg);
  std::sort(out.begin(), out.end());
  return out;
}

Rational monomial_eval(const std::vector<int>& key, const Partition& mu) {
  Rational v = 1;
  for (size_t l = 0; l < key.size(); ++l)
    for (int e = 0; e < key[l]; ++e) v *= static_cast<int>(mu.count(static_cast<int>(l + 1)));
  return v;
}

}  // namespace

CharPolyFit fit_character_polynomial(Family f, int i, const std::vector<int>& fit_ns,
                                     const std::vector<int>& check_ns, int max_deg,
                                     bool allow_large) {
  if (fit_ns.empty()) throw std::invalid_argument("fit_character_polynomial: empty fit set");
  std::vector<std::vector<int>> keys = monomial_keys(max_deg);
  std::vector<SparseVector> rows;
  std::vector<Rational> rhs;
  for (int n : fit_ns) {
    ClassFunction chi = character(f, n, i, allow_large);
    for (const Partition& mu : partitions(n)) {
      SparseVector row;
      for (size_t k = 0; k < keys.size(); ++k) {
        Rational c = monomial_eval(keys[k], mu);
        if (c != 0) row.terms.emplace_back(static_cast<int>(k), std::move(c));
      }
      rows.push_back(std::move(row));
      rhs.push_back(chi.at(mu));
    }
  }
  LinearSolve s = solve_exact(rows, rhs, static_cast<int>(keys.size()));
  CharPolyFit fit;
  fit.status = s.status;
  if (s.status != FitStatus::ok) return fit;
  for (size_t k = 0; k < keys.size(); ++k)
    if (s.solution[k] != 0) fit.poly.coefficients[keys[k]] = s.solution[k];
  for (int n : check_ns) {
    ClassFunction chi = character(f, n, i, allow_large);
    for (const Partition& mu : partitions(n)) {
      Rational want = chi.at(mu), got = fit.poly.eval(mu);
      if (want != got) {
        std::ostringstream os;
        os << "n=" << n << " class " << mu.to_string() << ": computed " << to_string(want)
           << ", polynomial gives " << to_string(got);
        fit.failures.push_back(os.str());
      }
    }
  }
  fit.validated = fit.failures.empty();
  return fit;
}

BettiFit fit_betti_polynomial(Family f, int i, const std::vector<int>& fit_ns,
                              const std::vector<int>& check_ns, int max_deg,
                              bool allow_large) {
  if (static_cast<int>(fit_ns.size()) < max_deg + 1)
    throw std::invalid_argument("fit_betti_polynomial: need at least max_deg+1 fit points");
  std::vector<std::pair<long, Rational>> points;
  for (int n : fit_ns) {
    check_size_guard(f, n, i, allow_large);
    points.emplace_back(n, Rational(static_cast<long>(graded_basis(f, n, i).dim)));
  }
  PolynomialFit pf = interpolate_polynomial(points, max_deg);
  BettiFit fit;
  fit.status = pf.status;
  if (pf.status != FitStatus::ok) return fit;
  fit.poly = pf.poly;
  for (int n : check_ns) {
    check_size_guard(f, n, i, allow_large);
    Rational want(static_cast<long>(graded_basis(f, n, i).dim));
    Rational got = fit.poly.eval(n);
    if (want != got) {
      std::ostringstream os;
      os << "n=" << n << ": dimension " << to_string(want) << ", polynomial gives "
         << to_string(got);
      fit.failures.push_back(os.str());
    }
  }
  fit.validated = fit.failures.empty();
  return fit;
}

bool model_check_h1(int n) {
  if (n < 3) throw std::invalid_argument("model_check_h1: n must be at least 3");
  ClassFunction std_char(n);
  for (const Partition& mu : partitions(n)) std_char[mu] = mu.count(1) - 1;
  return character(Family::mbar, n, 1) == exterior_power_character(std_char, 3);
}

}  // namespace cactus
