#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cactus/exactla.hpp"

using namespace cactus;

namespace {

SparseVector vec(std::initializer_list<std::pair<int, Rational>> ts) {
  SparseVector v;
  for (const auto& [i, c] : ts)
    if (c != 0) v.terms.emplace_back(i, c);
  return v;
}

}  // namespace

TEST_CASE("sparse vector arithmetic") {
  SparseVector v = vec({{0, 2}, {3, Rational(1, 2)}});
  CHECK(v.coeff(0) == 2);
  CHECK(v.coeff(1) == 0);
  CHECK(v.coeff(3) == Rational(1, 2));
  v.add_scaled(vec({{1, 1}, {3, Rational(-1, 2)}}), 1);
  CHECK(v == vec({{0, 2}, {1, 1}}));  // cancelled term dropped
  v.scale(Rational(-3));
  CHECK(v == vec({{0, -6}, {1, -3}}));
  v.add_scaled(vec({{0, 3}}), 2);
  CHECK(v.coeff(0) == 0);
  CHECK(v.nnz() == 1);
}

TEST_CASE("matrix operations") {
  SparseRationalMatrix A(2, 3);
  A.set(0, 0, 1); A.set(0, 1, 2); A.set(1, 1, 3); A.set(1, 2, 4);
  SparseRationalMatrix B(3, 2);
  B.set(0, 0, 1); B.set(1, 0, 1); B.set(2, 1, Rational(1, 2));
  SparseRationalMatrix C = A.multiply(B);
  CHECK(C.entry(0, 0) == 3);
  CHECK(C.entry(1, 0) == 3);
  CHECK(C.entry(0, 1) == 0);
  CHECK(C.entry(1, 1) == 2);
  CHECK(A.transpose().entry(1, 0) == 2);
  CHECK(A.transpose().transpose() == A);
  CHECK(C.trace() == 5);
  CHECK(SparseRationalMatrix::identity(4).trace() == 4);
  CHECK_THROWS_AS(B.multiply(B), std::invalid_argument);
}

TEST_CASE("echelon form is a fully reduced RREF") {
  EchelonForm e(5);
  CHECK(e.insert(vec({{0, 1}, {1, 2}, {2, 1}})));
  CHECK(e.insert(vec({{1, 1}, {2, 1}})));
  CHECK_FALSE(e.insert(vec({{0, 2}, {1, 2}, {2, 0}})));  // 2*r1 - 2*r2 after scaling
  CHECK(e.rank() == 2);
  // pivots normalized to 1, eliminated from every other row
  for (const auto& [p, row] : e.rows()) {
    CHECK(row.coeff(p) == 1);
    for (const auto& [q, other] : e.rows())
      if (q != p) CHECK(other.coeff(p) == 0);
  }
  CHECK(e.pivots() == std::vector<int>{0, 1});
  CHECK(e.nonpivots() == std::vector<int>{2, 3, 4});
  CHECK(e.contains(vec({{0, 3}, {1, 4}, {2, 1}})));
  CHECK_FALSE(e.contains(vec({{3, 1}})));
  // quotient coordinates live on the non-pivot columns
  SparseVector q = e.quotient_coords(vec({{0, 1}, {3, 5}}));
  CHECK(q.coeff(1) == 5);       // column 3 is the second non-pivot
  CHECK(q.coeff(0) != 0);       // reduction pushed the pivot part onto column 2
}

TEST_CASE("rank, column space, nullspace") {
  SparseRationalMatrix M(3, 4);
  M.set(0, 0, 1); M.set(1, 0, 2);
  M.set(0, 1, 2); M.set(1, 1, 4);          // dependent on column 0
  M.set(2, 2, 1);
  M.set(0, 3, 1); M.set(1, 3, 2); M.set(2, 3, 3);  // col0 + 3*col2
  CHECK(rank(M) == 2);
  Subspace cs = column_space(M);
  CHECK(cs.dim() == 2);
  CHECK(contains(cs, vec({{0, 1}, {1, 2}, {2, -7}})));
  CHECK_FALSE(contains(cs, vec({{0, 1}})));
  Subspace ns = nullspace(M);
  CHECK(ns.dim() == 2);  // rank-nullity
  for (const SparseVector& b : ns.basis()) CHECK(M.apply(b).empty());
  CHECK_THROWS_AS(contains(Subspace(2), vec({{5, 1}})), std::invalid_argument);
}

TEST_CASE("induced action on an invariant subspace") {
  // A swaps coordinates 0,1 and fixes 2; span{e0+e1, e2} is invariant
  SparseRationalMatrix A(3, 3);
  A.set(1, 0, 1); A.set(0, 1, 1); A.set(2, 2, 1);
  Subspace S(3);
  S.ech.insert(vec({{0, 1}, {1, 1}}));
  S.ech.insert(vec({{2, 1}}));
  SparseRationalMatrix C = induced_on_subspace(A, S);
  CHECK(C == SparseRationalMatrix::identity(2));
  CHECK(induced_trace(A, S) == 2);

  Subspace bad(3);
  bad.ech.insert(vec({{0, 1}}));  // e0 maps to e1, outside the span
  CHECK_THROWS_AS(induced_on_subspace(A, bad), NotInvariantError);
}

TEST_CASE("induced trace agrees with the induced matrix") {
  SparseRationalMatrix A(4, 4);
  A.set(0, 0, 2); A.set(1, 0, 1); A.set(0, 1, 1); A.set(1, 1, 3);
  A.set(2, 2, 5); A.set(3, 3, Rational(1, 3)); A.set(2, 3, 7);
  Subspace T(4);
  T.ech.insert(vec({{2, 1}}));
  T.ech.insert(vec({{3, 1}}));
  SparseRationalMatrix C = induced_on_subspace(A, T);
  CHECK(induced_trace(A, T) == C.trace());
  CHECK(C.trace() == Rational(16, 3));
}

TEST_CASE("exact linear solve") {
  // x + y = 3, x - y = 1  ->  x = 2, y = 1
  std::vector<SparseVector> rows{vec({{0, 1}, {1, 1}}), vec({{0, 1}, {1, -1}})};
  LinearSolve s = solve_exact(rows, {3, 1}, 2);
  REQUIRE(s.status == FitStatus::ok);
  CHECK(s.solution == std::vector<Rational>{2, 1});

  LinearSolve under = solve_exact({vec({{0, 1}, {1, 1}})}, {3}, 2);
  CHECK(under.status == FitStatus::underdetermined);

  std::vector<SparseVector> bad{vec({{0, 1}}), vec({{0, 1}})};
  LinearSolve infeas = solve_exact(bad, {1, 2}, 1);
  CHECK(infeas.status == FitStatus::infeasible);
}

TEST_CASE("polynomial interpolation") {
  // y = (x-1)(x-2)(x-3)/6
  std::vector<std::pair<long, Rational>> pts;
  for (long x = 3; x <= 7; ++x)
    pts.emplace_back(x, Rational((x - 1) * (x - 2) * (x - 3)) / 6);
  PolynomialFit fit = interpolate_polynomial(pts, 3);
  REQUIRE(fit.status == FitStatus::ok);
  CHECK(fit.poly.coeffs == std::vector<Rational>{-1, Rational(11, 6), -1, Rational(1, 6)});
  CHECK(fit.poly.eval(10) == 84);
  CHECK(fit.poly.degree() == 3);

  PolynomialFit low = interpolate_polynomial(pts, 2);
  CHECK(low.status == FitStatus::infeasible);

  pts.emplace_back(3, Rational(0));
  CHECK_THROWS_AS(interpolate_polynomial(pts, 3), std::invalid_argument);

  PolynomialFit c = interpolate_polynomial({{2, 5}}, 0);
  REQUIRE(c.status == FitStatus::ok);
  CHECK(c.poly.coeffs == std::vector<Rational>{5});
}

TEST_CASE("polynomial printing and trim") {
  Polynomial p{{0, Rational(1, 2), 0}};
  p.trim();
  CHECK(p.degree() == 1);
  CHECK(p.to_string() == "0 + 1/2*t");
  Polynomial z{{}};
  CHECK(z.to_string() == "0");
}
