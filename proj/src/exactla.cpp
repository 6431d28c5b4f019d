#include "cactus/exactla.hpp"

#include <algorithm>
#include <sstream>

namespace cactus {

Rational SparseVector::coeff(int idx) const {
  auto it = std::lower_bound(terms.begin(), terms.end(), idx,
                             [](const auto& t, int i) { return t.first < i; });
  if (it != terms.end() && it->first == idx) return it->second;
  return 0;
}

SparseVector SparseVector::unit(int idx, Rational c) {
  SparseVector v;
  if (c != 0) v.terms.emplace_back(idx, std::move(c));
  return v;
}

void SparseVector::add_scaled(const SparseVector& other, const Rational& c) {
  if (c == 0 || other.terms.empty()) return;
  std::vector<std::pair<int, Rational>> out;
  out.reserve(terms.size() + other.terms.size());
  auto a = terms.begin(), ae = terms.end();
  auto b = other.terms.begin(), be = other.terms.end();
  while (a != ae || b != be) {
    if (b == be || (a != ae && a->first < b->first)) {
      out.push_back(*a++);
    } else if (a == ae || b->first < a->first) {
      out.emplace_back(b->first, c * b->second);
      ++b;
    } else {
      Rational v = a->second + c * b->second;
      if (v != 0) out.emplace_back(a->first, std::move(v));
      ++a;
      ++b;
    }
  }
  terms = std::move(out);
}

void SparseVector::scale(const Rational& c) {
  if (c == 0) {
    terms.clear();
    return;
  }
  for (auto& [i, v] : terms) v *= c;
}

void SparseVector::negate() {
  for (auto& [i, v] : terms) v = -v;
}

SparseRationalMatrix SparseRationalMatrix::identity(int n) {
  SparseRationalMatrix M(n, n);
  for (int i = 0; i < n; ++i) M.columns[static_cast<size_t>(i)] = SparseVector::unit(i);
  return M;
}

void SparseRationalMatrix::set(int r, int c, const Rational& v) {
  auto& col = columns[static_cast<size_t>(c)].terms;
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const auto& t, int i) { return t.first < i; });
  if (it != col.end() && it->first == r) {
    if (v == 0) col.erase(it);
    else it->second = v;
  } else if (v != 0) {
    col.insert(it, {r, v});
  }
}

SparseVector SparseRationalMatrix::apply(const SparseVector& v) const {
  SparseVector out;
  for (const auto& [j, c] : v.terms) out.add_scaled(columns[static_cast<size_t>(j)], c);
  return out;
}

SparseRationalMatrix SparseRationalMatrix::multiply(const SparseRationalMatrix& B) const {
  if (cols != B.rows) throw std::invalid_argument("matrix product shape mismatch");
  SparseRationalMatrix C(rows, B.cols);
  for (int j = 0; j < B.cols; ++j)
    C.columns[static_cast<size_t>(j)] = apply(B.columns[static_cast<size_t>(j)]);
  return C;
}

SparseRationalMatrix SparseRationalMatrix::transpose() const {
  SparseRationalMatrix T(cols, rows);
  for (int j = 0; j < cols; ++j)
    for (const auto& [i, v] : columns[static_cast<size_t>(j)].terms)
      T.columns[static_cast<size_t>(i)].terms.emplace_back(j, v);
  return T;  // per-column terms arrive in increasing row order already
}

Rational SparseRationalMatrix::trace() const {
  Rational t = 0;
  int d = std::min(rows, cols);
  for (int i = 0; i < d; ++i) t += columns[static_cast<size_t>(i)].coeff(i);
  return t;
}

SparseVector EchelonForm::reduce(SparseVector v) const {
  // Collect pivot hits first; eliminating one never introduces another.
  std::vector<std::pair<int, Rational>> hits;
  for (const auto& [i, c] : v.terms)
    if (rows_.count(i)) hits.emplace_back(i, c);
  for (const auto& [p, c] : hits) v.add_scaled(rows_.at(p), -c);
  return v;
}

bool EchelonForm::insert(SparseVector v) {
  SparseVector w = reduce(std::move(v));
  if (w.empty()) return false;
  int p = w.leading_index();
  w.scale(1 / w.leading_coeff());
  for (auto& [q, row] : rows_) {
    Rational c = row.coeff(p);
    if (c != 0) row.add_scaled(w, -c);
  }
  rows_.emplace(p, std::move(w));
  return true;
}

std::vector<int> EchelonForm::pivots() const {
  std::vector<int> out;
  out.reserve(rows_.size());
  for (const auto& [p, _] : rows_) out.push_back(p);
  return out;
}

std::vector<int> EchelonForm::nonpivots() const {
  std::vector<int> out;
  auto it = rows_.begin();
  for (int i = 0; i < dim_; ++i) {
    while (it != rows_.end() && it->first < i) ++it;
    if (it != rows_.end() && it->first == i) continue;
    out.push_back(i);
  }
  return out;
}

SparseVector EchelonForm::quotient_coords(const SparseVector& v) const {
  SparseVector r = reduce(v);
  if (r.empty()) return r;
  std::vector<int> np = nonpivots();
  SparseVector out;
  out.terms.reserve(r.terms.size());
  for (const auto& [i, c] : r.terms) {
    auto it = std::lower_bound(np.begin(), np.end(), i);
    out.terms.emplace_back(static_cast<int>(it - np.begin()), c);
  }
  return out;
}

std::vector<SparseVector> Subspace::basis() const {
  std::vector<SparseVector> out;
  out.reserve(ech.rows().size());
  for (const auto& [p, row] : ech.rows()) out.push_back(row);
  return out;
}

SparseRationalMatrix Subspace::basis_matrix() const {
  SparseRationalMatrix B(ambient_dim, dim());
  int j = 0;
  for (const auto& [p, row] : ech.rows()) B.columns[static_cast<size_t>(j++)] = row;
  return B;
}

long rank(const SparseRationalMatrix& M) {
  EchelonForm ech(M.cols);
  long r = 0;
  SparseRationalMatrix T = M.transpose();
  for (const auto& row : T.columns)
    if (ech.insert(row)) ++r;
  return r;
}

Subspace column_space(const SparseRationalMatrix& M) {
  Subspace S(M.rows);
  for (const auto& col : M.columns) S.ech.insert(col);
  return S;
}

Subspace nullspace(const SparseRationalMatrix& M) {
  EchelonForm rowspan(M.cols);
  SparseRationalMatrix T = M.transpose();
  for (const auto& row : T.columns) rowspan.insert(row);
  Subspace N(M.cols);
  for (int f : rowspan.nonpivots()) {
    SparseVector v = SparseVector::unit(f);
    for (const auto& [p, row] : rowspan.rows()) {
      Rational c = row.coeff(f);
      if (c != 0) v.add_scaled(SparseVector::unit(p), -c);
    }
    std::sort(v.terms.begin(), v.terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    N.ech.insert(std::move(v));
  }
  return N;
}

bool contains(const Subspace& S, const SparseVector& v) {
  if (!v.empty() && v.terms.back().first >= S.ambient_dim)
    throw std::invalid_argument("contains: dimension mismatch");
  return S.ech.contains(v);
}

SparseRationalMatrix induced_on_subspace(const SparseRationalMatrix& A, const Subspace& S) {
  if (A.rows != S.ambient_dim || A.cols != S.ambient_dim)
    throw std::invalid_argument("induced_on_subspace: dimension mismatch");
  int k = S.dim();
  SparseRationalMatrix C(k, k);
  std::vector<int> piv = S.ech.pivots();
  int j = 0;
  for (const auto& [p, b] : S.ech.rows()) {
    SparseVector w = A.apply(b);
    // coordinates in the RREF basis are the pivot entries
    SparseVector col, check;
    for (size_t t = 0; t < piv.size(); ++t) {
      Rational c = w.coeff(piv[t]);
      if (c != 0) {
        col.terms.emplace_back(static_cast<int>(t), c);
        check.add_scaled(S.ech.rows().at(piv[t]), c);
      }
    }
    if (!(check == w)) throw NotInvariantError();
    C.columns[static_cast<size_t>(j++)] = std::move(col);
  }
  return C;
}

Rational induced_trace(const SparseRationalMatrix& A, const Subspace& S) {
  Rational t = 0;
  for (const auto& [p, b] : S.ech.rows()) t += A.apply(b).coeff(p);
  return t;
}

Rational Polynomial::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

void Polynomial::trim() {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

std::string Polynomial::to_string() const {
  if (coeffs.empty()) return "0";
  std::ostringstream os;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (i) os << " + ";
    os << cactus::to_string(coeffs[i]);
    if (i >= 1) os << "*t";
    if (i >= 2) os << '^' << i;
  }
  return os.str();
}

LinearSolve solve_exact(const std::vector<SparseVector>& lhs_rows,
                        const std::vector<Rational>& rhs, int unknowns) {
  // Augmented system: unknown columns 0..unknowns-1, rhs at column `unknowns`.
  EchelonForm ech(unknowns + 1);
  for (size_t r = 0; r < lhs_rows.size(); ++r) {
    SparseVector row = lhs_rows[r];
    if (rhs[r] != 0) row.terms.emplace_back(unknowns, rhs[r]);
    ech.insert(std::move(row));
  }
  LinearSolve out;
  if (ech.rows().count(unknowns)) {
    out.status = FitStatus::infeasible;
    return out;
  }
  if (ech.rank() < unknowns) {
    out.status = FitStatus::underdetermined;
    return out;
  }
  out.status = FitStatus::ok;
  out.solution.assign(static_cast<size_t>(unknowns), 0);
  for (const auto& [p, row] : ech.rows())
    out.solution[static_cast<size_t>(p)] = row.coeff(unknowns);
  return out;
}

PolynomialFit interpolate_polynomial(const std::vector<std::pair<long, Rational>>& points,
                                     int max_deg) {
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = i + 1; j < points.size(); ++j)
      if (points[i].first == points[j].first)
        throw std::invalid_argument("interpolate_polynomial: repeated x value");
  int k = max_deg + 1;
  std::vector<SparseVector> rows;
  std::vector<Rational> rhs;
  for (const auto& [x, y] : points) {
    SparseVector row;
    Rational pw = 1;
    for (int d = 0; d < k; ++d) {
      if (pw != 0) row.terms.emplace_back(d, pw);
      pw *= x;
    }
    rows.push_back(std::move(row));
    rhs.push_back(y);
  }
  LinearSolve s = solve_exact(rows, rhs, k);
  PolynomialFit fit;
  if (s.status == FitStatus::infeasible) {
    fit.status = FitStatus::infeasible;
    return fit;
  }
  if (s.status == FitStatus::underdetermined) {
    fit.status = FitStatus::underdetermined;
    return fit;
  }
  fit.status = FitStatus::ok;
  fit.poly.coeffs = s.solution;
  fit.poly.trim();
  return fit;
}

}  // namespace cactus
