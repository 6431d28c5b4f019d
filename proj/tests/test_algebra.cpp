#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cactus/algebra.hpp"

#include <random>

using namespace cactus;

namespace {

Permutation random_permutation(int n, std::mt19937& rng) {
  std::vector<int> img(static_cast<size_t>(n));
  for (int v = 1; v <= n; ++v) img[static_cast<size_t>(v - 1)] = v;
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(img);
}

long long choose(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (long long j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

}  // namespace

TEST_CASE("family names round trip") {
  for (Family f : all_families()) CHECK(parse_family(family_name(f)) == f);
  CHECK_THROWS_AS(parse_family("nope"), std::invalid_argument);
}

TEST_CASE("generator normalization") {
  // antisymmetric arity 4: sorting sign is the inversion parity
  CHECK(normalize_generator(Family::mbar, 6, {2, 3, 4, 5}).sign == 1);
  CHECK(normalize_generator(Family::mbar, 6, {3, 2, 4, 5}).sign == -1);
  CHECK(normalize_generator(Family::mbar, 6, {5, 4, 3, 2}).sign == 1);
  CHECK(normalize_generator(Family::mbar, 6, {5, 4, 3, 2}).canonical == GenIndex{2, 3, 4, 5});
  CHECK(normalize_generator(Family::mbar, 6, {2, 2, 4, 5}).sign == 0);

  CHECK(normalize_generator(Family::arnold, 4, {3, 1}).sign == 1);
  CHECK(normalize_generator(Family::arnold, 4, {3, 1}).canonical == GenIndex{1, 3});
  CHECK(normalize_generator(Family::arnold, 4, {2, 2}).sign == 0);

  CHECK(normalize_generator(Family::pfb, 4, {3, 1}).sign == -1);
  CHECK(normalize_generator(Family::pfb, 4, {1, 3}).sign == 1);

  // ordered families keep the tuple as-is
  CHECK(normalize_generator(Family::pvb, 4, {3, 1}).canonical == GenIndex{3, 1});
  CHECK(normalize_generator(Family::psigma, 4, {1, 1}).sign == 0);

  CHECK(normalize_generator(Family::m0, 4, {2, 1}).sign == 0);   // theta_{1,2} = 0
  CHECK(normalize_generator(Family::m0, 4, {3, 1}).sign == 1);

  CHECK_THROWS_AS(normalize_generator(Family::mbar, 6, {1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(normalize_generator(Family::arnold, 4, {1, 5}), std::invalid_argument);
}

TEST_CASE("presentation sizes") {
  for (int n = 2; n <= 7; ++n) {
    CHECK(presentation(Family::mbar, n).generators.size() == choose(n, 4));
    CHECK(presentation(Family::arnold, n).generators.size() == choose(n, 2));
    CHECK(presentation(Family::m0, n).generators.size() == choose(n, 2) - 1);
    CHECK(presentation(Family::pfb, n).generators.size() == choose(n, 2));
    CHECK(presentation(Family::pvb, n).generators.size() == static_cast<size_t>(n) * (n - 1));
    CHECK(presentation(Family::psigma, n).generators.size() == static_cast<size_t>(n) * (n - 1));
  }
  CHECK(presentation(Family::mbar, 7).linear_relators().size() == choose(7, 5));
  CHECK(presentation(Family::arnold, 5).linear_relators().empty());
  CHECK(presentation(Family::m0, 5).quadratic_relators().empty());
  CHECK(presentation(Family::m0, 5).ambient == Family::arnold);
}

TEST_CASE("degree-one space and rewrite") {
  for (int n = 3; n <= 9; ++n)
    CHECK(degree_one_space(Family::mbar, n).dim() == choose(n - 1, 3));
  DegreeOneSpace V1 = degree_one_space(Family::mbar, 6);
  // the five-term relators vanish after rewriting into the chosen basis
  for (const SparseVector& rel : presentation(Family::mbar, 6).linear_relators()) {
    SparseVector img;
    AlgebraPresentation P = presentation(Family::mbar, 6);
    for (const auto& [g, c] : rel.terms) img.add_scaled(V1.rewrite(P.generators[static_cast<size_t>(g)]), c);
    CHECK(img.empty());
  }
  // express is antisymmetric in the raw indices
  SparseVector a = V1.express({2, 3, 4, 5});
  SparseVector b = V1.express({3, 2, 4, 5});
  b.negate();
  CHECK(a == b);
  CHECK(V1.express({2, 2, 4, 5}).empty());
}

TEST_CASE("exterior index rank and unrank") {
  for (int d = 0; d <= 8; ++d)
    for (int i = 0; i <= 4; ++i) {
      ExteriorIndex EI(d, i);
      CHECK(EI.size() == choose(d, i));
      std::vector<int> prev;
      for (long long r = 0; r < EI.size(); ++r) {
        std::vector<int> mono = EI.unrank(r);
        CHECK(EI.rank(mono) == r);
        if (r) CHECK(prev < mono);  // lexicographic enumeration
        prev = mono;
      }
    }
}

TEST_CASE("wedge products") {
  ExteriorIndex EI2(4, 2);
  SparseVector e0 = SparseVector::unit(0), e1 = SparseVector::unit(1);
  SparseVector w01 = wedge({&e0, &e1}, EI2);
  SparseVector w10 = wedge({&e1, &e0}, EI2);
  CHECK(w01 == SparseVector::unit(static_cast<int>(EI2.rank({0, 1}))));
  w10.negate();
  CHECK(w01 == w10);
  CHECK(wedge({&e0, &e0}, EI2).empty());

  // bilinearity against a hand expansion: (e0+2e2)^(e1-e3)
  SparseVector x = SparseVector::unit(0);
  x.add_scaled(SparseVector::unit(2), 2);
  SparseVector y = SparseVector::unit(1);
  y.add_scaled(SparseVector::unit(3), -1);
  SparseVector w = wedge({&x, &y}, EI2);
  CHECK(w.coeff(static_cast<int>(EI2.rank({0, 1}))) == 1);
  CHECK(w.coeff(static_cast<int>(EI2.rank({0, 3}))) == -1);
  CHECK(w.coeff(static_cast<int>(EI2.rank({1, 2}))) == -2);  // e2^e1 = -e1^e2
  CHECK(w.coeff(static_cast<int>(EI2.rank({2, 3}))) == -2);
}

TEST_CASE("graded dimensions match the brute-force oracle") {
  for (Family f : all_families())
    for (int n = 0; n <= 6; ++n)
      for (int i = 0; i <= 2; ++i)
        CHECK(graded_basis(f, n, i).dim == brute_force_dimension(f, n, i));
  CHECK_THROWS_AS(brute_force_dimension(Family::mbar, 7, 1), SizeGuardError);
}

TEST_CASE("known graded dimensions") {
  for (int n = 3; n <= 9; ++n)
    CHECK(graded_basis(Family::mbar, n, 1).dim == choose(n - 1, 3));
  CHECK(graded_basis(Family::mbar, 4, 2).dim == 0);
  CHECK(graded_basis(Family::arnold, 4, 1).dim == 6);
  CHECK(graded_basis(Family::pvb, 4, 1).dim == 12);
  CHECK(graded_basis(Family::m0, 4, 1).dim == 5);
  CHECK(graded_basis(Family::mbar, 5, 0).dim == 1);
}

TEST_CASE("quotient action is a group homomorphism") {
  std::mt19937 rng(7);
  for (Family f : all_families())
    for (int i = 1; i <= 2; ++i) {
      int n = 6;
      const GradedBasis& gb = graded_basis(f, n, i);
      for (int trial = 0; trial < 2; ++trial) {
        Permutation p = random_permutation(n, rng);
        Permutation q = random_permutation(n, rng);
        SparseRationalMatrix lhs = quotient_action_matrix(gb, p.compose(q));
        SparseRationalMatrix rhs = quotient_action_matrix(gb, p).multiply(quotient_action_matrix(gb, q));
        CHECK(lhs == rhs);
      }
      CHECK(quotient_action_matrix(gb, Permutation::identity(n)) ==
            SparseRationalMatrix::identity(static_cast<int>(gb.dim)));
    }
}

TEST_CASE("relation space is invariant under the action") {
  std::mt19937 rng(11);
  for (Family f : all_families()) {
    if (f == Family::m0) continue;  // relations live in the ambient algebra
    int n = 5, i = 2;
    EchelonForm R = relation_space(f, n, i);
    SparseRationalMatrix A = action_matrix(f, n, i, random_permutation(n, rng));
    for (const auto& [p, row] : R.rows()) CHECK(R.contains(A.apply(row)));
  }
}

TEST_CASE("quotient trace matches the matrix trace") {
  std::mt19937 rng(23);
  for (Family f : all_families())
    for (int i = 1; i <= 2; ++i) {
      int n = 6;
      const GradedBasis& gb = graded_basis(f, n, i);
      for (int trial = 0; trial < 3; ++trial) {
        Permutation p = random_permutation(n, rng);
        CHECK(quotient_trace(gb, p) == quotient_action_matrix(gb, p).trace());
      }
      CHECK(quotient_trace(gb, Permutation::identity(n)) == Rational(static_cast<long>(gb.dim)));
    }
}

TEST_CASE("pullback functoriality") {
  // injections f: [4] -> [5], g: [5] -> [7]; pullback(g o f) = pullback(g) * pullback(f)
  std::vector<int> f{2, 4, 1, 5};
  std::vector<int> g{3, 7, 1, 4, 6};
  std::vector<int> gf(f.size());
  for (size_t t = 0; t < f.size(); ++t) gf[t] = g[static_cast<size_t>(f[t] - 1)];
  for (Family fam : all_families())
    for (int i = 1; i <= 2; ++i) {
      SparseRationalMatrix Pf = pullback_matrix(fam, f, 4, 5, i);
      SparseRationalMatrix Pg = pullback_matrix(fam, g, 5, 7, i);
      SparseRationalMatrix Pgf = pullback_matrix(fam, gf, 4, 7, i);
      CHECK(Pgf == Pg.multiply(Pf));
    }
  // identity inclusion pulls back to the identity
  CHECK(pullback_matrix(Family::mbar, canonical_inclusion(5, 5), 5, 5, 1) ==
        SparseRationalMatrix::identity(4));
  CHECK_THROWS_AS(pullback_matrix(Family::mbar, {1, 1, 2, 3}, 4, 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(pullback_matrix(Family::mbar, {1, 2, 3, 9}, 4, 5, 1), std::invalid_argument);
}

TEST_CASE("pullback commutes with relabeled actions") {
  // For sigma in S_n fixing the image setwise... use the canonical inclusion
  // and a permutation of the first m labels: inclusion o sigma_m = sigma_n o inclusion.
  std::mt19937 rng(5);
  int m = 4, n = 6, i = 1;
  Family fam = Family::mbar;
  const GradedBasis& gm = graded_basis(fam, m, i);
  const GradedBasis& gn = graded_basis(fam, n, i);
  SparseRationalMatrix P = pullback_matrix(fam, canonical_inclusion(m, n), m, n, i);
  for (int trial = 0; trial < 3; ++trial) {
    Permutation sm = random_permutation(m, rng);
    std::vector<int> img = sm.images;
    for (int v = m + 1; v <= n; ++v) img.push_back(v);
    Permutation sn(img);
    CHECK(quotient_action_matrix(gn, sn).multiply(P) ==
          P.multiply(quotient_action_matrix(gm, sm)));
  }
}

TEST_CASE("size guards") {
  CHECK_NOTHROW(check_size_guard(Family::mbar, 13, 1));
  CHECK_THROWS_AS(check_size_guard(Family::mbar, 14, 1), SizeGuardError);
  CHECK_NOTHROW(check_size_guard(Family::mbar, 10, 2));
  CHECK_THROWS_AS(check_size_guard(Family::mbar, 11, 2), SizeGuardError);
  CHECK_THROWS_AS(check_size_guard(Family::arnold, 9, 3), SizeGuardError);
  CHECK_NOTHROW(check_size_guard(Family::arnold, 9, 3, /*allow_large=*/true));
  try {
    check_size_guard(Family::mbar, 14, 2);
    CHECK(false);
  } catch (const SizeGuardError& e) {
    CHECK(std::string(e.what()).find("C(") != std::string::npos);  // explains the wall
  }
}

TEST_CASE("m0 sits inside arnold") {
  for (int n = 3; n <= 6; ++n) {
    const GradedBasis& gb = graded_basis(Family::m0, n, 1);
    CHECK(gb.dim == choose(n, 2) - 1);
    REQUIRE(gb.ambient != nullptr);
    CHECK(gb.ambient->family == Family::arnold);
    CHECK(gb.image->dim() == gb.dim);
  }
  // theta-span misses the class of w_{1,2}: codimension 1 in degree 1
  CHECK(graded_basis(Family::arnold, 5, 1).dim - graded_basis(Family::m0, 5, 1).dim == 1);
}
