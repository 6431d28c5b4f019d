#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cactus/rational.hpp"

namespace cactus {

struct NotInvariantError : std::runtime_error {
  NotInvariantError() : std::runtime_error("subspace is not invariant") {}
};

/// Sparse vector over Q: sorted (index, nonzero value) pairs.
struct SparseVector {
  std::vector<std::pair<int, Rational>> terms;

  bool empty() const { return terms.empty(); }
  size_t nnz() const { return terms.size(); }
  int leading_index() const { return terms.front().first; }
  const Rational& leading_coeff() const { return terms.front().second; }
  Rational coeff(int idx) const;

  static SparseVector unit(int idx, Rational c = 1);

  void add_scaled(const SparseVector& other, const Rational& c);  // this += c*other
  void scale(const Rational& c);
  void negate();

  bool operator==(const SparseVector&) const = default;
};

/// Exact sparse rational matrix, column-major.
struct SparseRationalMatrix {
  int rows = 0, cols = 0;
  std::vector<SparseVector> columns;

  SparseRationalMatrix() = default;
  SparseRationalMatrix(int r, int c) : rows(r), cols(c), columns(static_cast<size_t>(c)) {}

  static SparseRationalMatrix identity(int n);

  Rational entry(int r, int c) const { return columns[static_cast<size_t>(c)].coeff(r); }
  void set(int r, int c, const Rational& v);

  SparseVector apply(const SparseVector& v) const;  // A*v
  SparseRationalMatrix multiply(const SparseRationalMatrix& B) const;  // A*B
  SparseRationalMatrix transpose() const;
  Rational trace() const;

  bool operator==(const SparseRationalMatrix&) const = default;
};

/// Reduced row echelon basis of a subspace of Q^dim. Rows are kept fully
/// reduced: each row has coefficient 1 at its pivot and every other row has
/// 0 there, so rows are supported on their own pivot plus non-pivot columns.
/// Pivot choice is the smallest index, which makes the form deterministic.
class EchelonForm {
 public:
  explicit EchelonForm(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(rows_.size()); }

  /// Reduce-and-insert; returns true if the rank grew.
  bool insert(SparseVector v);

  /// Remainder of v modulo the row span (supported on non-pivot columns).
  SparseVector reduce(SparseVector v) const;

  bool contains(const SparseVector& v) const { return reduce(v).empty(); }

  const std::map<int, SparseVector>& rows() const { return rows_; }
  std::vector<int> pivots() const;
  std::vector<int> nonpivots() const;

  /// reduce(v) re-indexed over the non-pivot columns (quotient coordinates).
  SparseVector quotient_coords(const SparseVector& v) const;

 private:
  int dim_;
  std::map<int, SparseVector> rows_;  // pivot -> row
};

/// Subspace of Q^ambient_dim given by an echelonized basis; the basis
/// vectors are the RREF rows read as columns.
struct Subspace {
  int ambient_dim = 0;
  EchelonForm ech;

  explicit Subspace(int dim) : ambient_dim(dim), ech(dim) {}

  int dim() const { return ech.rank(); }
  std::vector<SparseVector> basis() const;
  SparseRationalMatrix basis_matrix() const;
};

long rank(const SparseRationalMatrix& M);
Subspace column_space(const SparseRationalMatrix& M);
Subspace nullspace(const SparseRationalMatrix& M);

/// Exact membership of v in the span of S's basis.
/// Throws std::invalid_argument on dimension mismatch.
bool contains(const Subspace& S, const SparseVector& v);

/// The unique C with A*B = B*C, B the basis of S.
/// Throws NotInvariantError when some column of A*B leaves span(B).
SparseRationalMatrix induced_on_subspace(const SparseRationalMatrix& A, const Subspace& S);

/// Trace of the action induced by A on the invariant subspace S.
/// Cheap: with an RREF basis the coordinate of A*b_j on b_j is just the
/// entry of A*b_j at b_j's pivot. Does not verify invariance.
Rational induced_trace(const SparseRationalMatrix& A, const Subspace& S);

/// Dense univariate polynomial over Q, ascending coefficients, trimmed.
struct Polynomial {
  std::vector<Rational> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Rational eval(const Rational& x) const;
  void trim();

  bool operator==(const Polynomial&) const = default;
  std::string to_string() const;
};

enum class FitStatus { ok, infeasible, underdetermined };

struct PolynomialFit {
  FitStatus status = FitStatus::infeasible;
  Polynomial poly;
};

/// The unique polynomial of degree <= max_deg through all points, if one
/// exists (exact Vandermonde solve with consistency check).
/// Throws std::invalid_argument on repeated x values.
PolynomialFit interpolate_polynomial(const std::vector<std::pair<long, Rational>>& points,
                                     int max_deg);

/// Exact least-structure linear solve: rows of `lhs` paired with `rhs`.
/// Returns the unique solution, or infeasible/underdetermined status.
struct LinearSolve {
  FitStatus status = FitStatus::infeasible;
  std::vector<Rational> solution;
};
LinearSolve solve_exact(const std::vector<SparseVector>& lhs_rows,
                        const std::vector<Rational>& rhs, int unknowns);

}  // namespace cactus
