#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "cactus/rational.hpp"

namespace cactus {

/// Partition of a nonnegative integer: weakly decreasing positive parts.
/// The empty partition is the unique partition of 0.
struct Partition {
  std::vector<int> parts;

  Partition() = default;
  explicit Partition(std::vector<int> p);

  int size() const;  // sum of parts
  int length() const { return static_cast<int>(parts.size()); }
  int part(int i) const { return parts[static_cast<size_t>(i)]; }
  /// Number of parts equal to l.
  int count(int l) const;

  auto operator<=>(const Partition&) const = default;

  std::string to_string() const;  // "[3,1,1]", "[]" for empty
  static Partition parse(const std::string& s);
};

/// Permutation of {1..n} in one-line notation (images[i-1] = image of i).
struct Permutation {
  std::vector<int> images;

  Permutation() = default;
  explicit Permutation(std::vector<int> imgs);

  static Permutation identity(int n);
  /// Canonical permutation with the given cycle type (cycles laid out
  /// consecutively on 1..n).
  static Permutation from_cycle_type(const Partition& mu);
  static Permutation transposition(int n, int a, int b);

  int n() const { return static_cast<int>(images.size()); }
  int operator()(int i) const { return images[static_cast<size_t>(i - 1)]; }
  /// (*this) following other: (p.compose(q))(i) = p(q(i)).
  Permutation compose(const Permutation& other) const;
  Permutation inverse() const;

  auto operator<=>(const Permutation&) const = default;
};

/// All partitions of n, each once, in reverse lexicographic order
/// ((n) first, (1^n) last).
std::vector<Partition> partitions(int n);

/// Number of partitions of n by the standard counting recurrence.
/// Independent of partitions(); used as an enumeration oracle.
Integer partition_count(int n);

Partition cycle_type(const Permutation& p);

/// Size of the conjugacy class with cycle type mu in S_{|mu|}.
Integer class_size(const Partition& mu);

/// chi_{V_lam}(mu) via the Murnaghan-Nakayama recursion, memoized.
long long irreducible_character(const Partition& lam, const Partition& mu);

/// dim V_lam by the hook length formula.
Integer irreducible_dimension(const Partition& lam);

/// lam[n] = (n - |lam|, lam_1, ..., lam_j).
/// Throws std::invalid_argument when n < |lam| + lam_1.
Partition pad_partition(const Partition& lam, int n);

/// Drops the first part.
Partition unpad_partition(const Partition& mu);

/// Cycle type of sigma^k for any sigma of cycle type mu:
/// a part l splits into gcd(l,k) parts of length l/gcd(l,k).
Partition power_cycle_type(const Partition& mu, int k);

/// Exact class function on S_n: one value per cycle type of n.
struct ClassFunction {
  int n = 0;
  std::map<Partition, Rational> values;

  ClassFunction() = default;
  explicit ClassFunction(int n_) : n(n_) {}

  const Rational& at(const Partition& mu) const;
  Rational& operator[](const Partition& mu) { return values[mu]; }

  bool operator==(const ClassFunction&) const = default;
};

ClassFunction irreducible_class_function(int n, const Partition& lam);

/// (1/n!) sum_mu class_size(mu) f(mu) g(mu).
/// Throws std::invalid_argument on size mismatch.
Rational inner_product(const ClassFunction& f, const ClassFunction& g);

/// Character of the i-th exterior power via Newton's identities on the
/// power sums p_k(mu) = chi(power_cycle_type(mu, k)).
ClassFunction exterior_power_character(const ClassFunction& chi, int i);

/// Polynomial in the cycle-counting class functions X_1, X_2, ...
/// Stored in the monomial basis prod X_l^{e_l}; deg X_l = l.
struct CharacterPolynomial {
  /// exponent vector (e_1,...,e_r) -> coefficient; no zero coefficients,
  /// no trailing zero exponents in keys.
  std::map<std::vector<int>, Rational> coefficients;

  int degree() const;

  static CharacterPolynomial constant(const Rational& c);
  static CharacterPolynomial variable(int l);  // X_l
  /// binom(X_l, k) expanded into the monomial basis.
  static CharacterPolynomial binomial_in(int l, int k);

  CharacterPolynomial operator+(const CharacterPolynomial& o) const;
  CharacterPolynomial operator-(const CharacterPolynomial& o) const;
  CharacterPolynomial operator*(const CharacterPolynomial& o) const;
  CharacterPolynomial operator*(const Rational& c) const;

  /// Substitute X_l := number of parts of mu equal to l.
  Rational eval(const Partition& mu) const;
  ClassFunction eval_on(int n) const;

  bool operator==(const CharacterPolynomial&) const = default;
  std::string to_string() const;
};

/// Irreducible multiplicities indexed by unpadded partitions.
struct MultiplicityTable {
  int n = 0;
  std::map<Partition, long long> mult;

  bool operator==(const MultiplicityTable&) const = default;
  /// max |lambda| over constituents; 0 for the zero space.
  int weight() const;
  Integer total_dimension() const;
};

}  // namespace cactus
