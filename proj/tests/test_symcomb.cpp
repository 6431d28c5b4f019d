#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cactus/symcomb.hpp"

#include <set>

using namespace cactus;

TEST_CASE("partition enumeration") {
  CHECK(partitions(0).size() == 1);
  CHECK(partitions(0)[0] == Partition());
  auto p4 = partitions(4);
  REQUIRE(p4.size() == 5);
  CHECK(p4.front() == Partition({4}));
  CHECK(p4.back() == Partition({1, 1, 1, 1}));
  // reverse-lex order and no duplicates, count cross-checked against the
  // independent recurrence
  for (int n = 1; n <= 15; ++n) {
    auto ps = partitions(n);
    std::set<Partition> seen;
    for (size_t i = 0; i < ps.size(); ++i) {
      CHECK(ps[i].size() == n);
      if (i) CHECK(ps[i - 1].parts > ps[i].parts);
      seen.insert(ps[i]);
    }
    CHECK(seen.size() == ps.size());
    CHECK(partition_count(n) == Integer(static_cast<long>(ps.size())));
  }
}

TEST_CASE("partition parse round trip") {
  for (const Partition& p : partitions(7)) CHECK(Partition::parse(p.to_string()) == p);
  CHECK(Partition::parse("[]") == Partition());
  CHECK(Partition::parse("[3,1,1]") == Partition({3, 1, 1}));
  CHECK_THROWS_AS(Partition::parse("[1,3]"), std::invalid_argument);
  CHECK_THROWS_AS(Partition::parse("nope"), std::invalid_argument);
}

TEST_CASE("permutations and cycle types") {
  Permutation id = Permutation::identity(5);
  CHECK(cycle_type(id) == Partition({1, 1, 1, 1, 1}));
  Permutation t = Permutation::transposition(5, 2, 4);
  CHECK(t(2) == 4);
  CHECK(t(4) == 2);
  CHECK(t(1) == 1);
  CHECK(cycle_type(t) == Partition({2, 1, 1, 1}));
  CHECK(t.compose(t) == id);
  for (const Partition& mu : partitions(6)) {
    Permutation p = Permutation::from_cycle_type(mu);
    CHECK(cycle_type(p) == mu);
    CHECK(p.compose(p.inverse()) == Permutation::identity(6));
  }
}

TEST_CASE("class sizes partition the group") {
  for (int n = 1; n <= 8; ++n) {
    Integer total = 0;
    for (const Partition& mu : partitions(n)) total += class_size(mu);
    CHECK(total == factorial(n));
  }
}

TEST_CASE("S4 character table pinned") {
  // rows: (4), (3,1), (2,2), (2,1,1), (1^4); columns in the same class order
  Partition l4({4}), l31({3, 1}), l22({2, 2}), l211({2, 1, 1}), l1111({1, 1, 1, 1});
  Partition c4({4}), c31({3, 1}), c22({2, 2}), c211({2, 1, 1}), c1111({1, 1, 1, 1});
  auto chi = [](const Partition& l, const Partition& m) { return irreducible_character(l, m); };
  CHECK(chi(l4, c1111) == 1);   CHECK(chi(l4, c211) == 1);   CHECK(chi(l4, c22) == 1);
  CHECK(chi(l4, c31) == 1);     CHECK(chi(l4, c4) == 1);
  CHECK(chi(l31, c1111) == 3);  CHECK(chi(l31, c211) == 1);  CHECK(chi(l31, c22) == -1);
  CHECK(chi(l31, c31) == 0);    CHECK(chi(l31, c4) == -1);
  CHECK(chi(l22, c1111) == 2);  CHECK(chi(l22, c211) == 0);  CHECK(chi(l22, c22) == 2);
  CHECK(chi(l22, c31) == -1);   CHECK(chi(l22, c4) == 0);
  CHECK(chi(l211, c1111) == 3); CHECK(chi(l211, c211) == -1); CHECK(chi(l211, c22) == -1);
  CHECK(chi(l211, c31) == 0);   CHECK(chi(l211, c4) == 1);
  CHECK(chi(l1111, c1111) == 1); CHECK(chi(l1111, c211) == -1); CHECK(chi(l1111, c22) == 1);
  CHECK(chi(l1111, c31) == 1);  CHECK(chi(l1111, c4) == -1);
}

TEST_CASE("character degree equals hook length dimension") {
  for (int n = 1; n <= 8; ++n) {
    Partition id_class(std::vector<int>(static_cast<size_t>(n), 1));
    for (const Partition& lam : partitions(n))
      CHECK(Integer(static_cast<long>(irreducible_character(lam, id_class))) == irreducible_dimension(lam));
  }
}

TEST_CASE("sign character values") {
  for (int n = 1; n <= 7; ++n) {
    Partition sign(std::vector<int>(static_cast<size_t>(n), 1));
    for (const Partition& mu : partitions(n)) {
      int expected = ((n - mu.length()) % 2) ? -1 : 1;
      CHECK(irreducible_character(sign, mu) == expected);
    }
  }
}

TEST_CASE("orthogonality of irreducible characters") {
  for (int n = 1; n <= 7; ++n) {
    auto ps = partitions(n);
    for (size_t a = 0; a < ps.size(); ++a)
      for (size_t b = a; b < ps.size(); ++b) {
        Rational ip = inner_product(irreducible_class_function(n, ps[a]),
                                    irreducible_class_function(n, ps[b]));
        CHECK(ip == Rational(a == b ? 1 : 0));
      }
  }
}

TEST_CASE("padding") {
  CHECK(pad_partition(Partition(), 4) == Partition({4}));
  CHECK(pad_partition(Partition({1, 1, 1}), 6) == Partition({3, 1, 1, 1}));
  CHECK(pad_partition(Partition({2}), 4) == Partition({2, 2}));
  CHECK_THROWS_AS(pad_partition(Partition({2}), 3), std::invalid_argument);
  for (const Partition& lam : partitions(4))
    CHECK(unpad_partition(pad_partition(lam, 9)) == lam);
}

TEST_CASE("power cycle types") {
  CHECK(power_cycle_type(Partition({4}), 2) == Partition({2, 2}));
  CHECK(power_cycle_type(Partition({6}), 4) == Partition({3, 3}));
  CHECK(power_cycle_type(Partition({3, 2}), 3) == Partition({2, 1, 1, 1}));
  // agreement with actual permutation powers
  for (const Partition& mu : partitions(7))
    for (int k = 1; k <= 4; ++k) {
      Permutation p = Permutation::from_cycle_type(mu);
      Permutation q = Permutation::identity(7);
      for (int t = 0; t < k; ++t) q = p.compose(q);
      CHECK(cycle_type(q) == power_cycle_type(mu, k));
    }
}

TEST_CASE("exterior powers of the standard representation") {
  // Lambda^k(std) of S_n is the irreducible indexed by (n-k, 1^k)
  for (int n = 4; n <= 7; ++n) {
    ClassFunction std_char(n);
    for (const Partition& mu : partitions(n)) std_char[mu] = mu.count(1) - 1;
    for (int k = 0; k <= 3; ++k) {
      std::vector<int> hook{n - k};
      for (int t = 0; t < k; ++t) hook.push_back(1);
      CHECK(exterior_power_character(std_char, k) ==
            irreducible_class_function(n, Partition(hook)));
    }
  }
}

TEST_CASE("exterior power dimensions are binomials") {
  ClassFunction chi(6);
  for (const Partition& mu : partitions(6)) chi[mu] = mu.count(1);  // permutation rep
  Partition id_class({1, 1, 1, 1, 1, 1});
  for (int k = 0; k <= 6; ++k)
    CHECK(exterior_power_character(chi, k).at(id_class) == binomial(6, k));
}

TEST_CASE("character polynomials") {
  CharacterPolynomial x1 = CharacterPolynomial::variable(1);
  CharacterPolynomial x2 = CharacterPolynomial::variable(2);
  CHECK(x2.degree() == 2);
  CHECK((x1 * x2).degree() == 3);
  Partition mu({3, 2, 2, 1, 1});
  CHECK(x1.eval(mu) == Rational(2));
  CHECK(x2.eval(mu) == Rational(2));
  CHECK(CharacterPolynomial::variable(3).eval(mu) == Rational(1));
  // binomial_in agrees with the binomial of the count
  for (int l = 1; l <= 3; ++l)
    for (int k = 0; k <= 3; ++k) {
      Rational got = CharacterPolynomial::binomial_in(l, k).eval(mu);
      Rational want(binomial(static_cast<unsigned long>(mu.count(l)), static_cast<unsigned long>(k)));
      CHECK(got == want);
    }
  // (X1 - 1 choose 2) style arithmetic: (X1^2 - X1)/2 == C(X1,2)
  CharacterPolynomial lhs = (x1 * x1 - x1) * Rational(1, 2);
  CHECK(lhs == CharacterPolynomial::binomial_in(1, 2));
  // eval_on produces a class function matching pointwise eval
  ClassFunction cf = lhs.eval_on(5);
  for (const Partition& m : partitions(5)) CHECK(cf.at(m) == lhs.eval(m));
}

TEST_CASE("multiplicity tables") {
  MultiplicityTable t;
  t.n = 6;
  CHECK(t.weight() == 0);
  t.mult[Partition({1, 1, 1})] = 1;
  CHECK(t.weight() == 3);
  CHECK(t.total_dimension() == irreducible_dimension(Partition({3, 1, 1, 1})));
  t.mult[Partition({2})] = 2;
  CHECK(t.weight() == 3);
}
