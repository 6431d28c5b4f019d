#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cactus/exactla.hpp"
#include "cactus/symcomb.hpp"

namespace cactus {

/// The six Table-style presented families.
enum class Family { mbar, arnold, m0, pvb, pfb, psigma };

std::string family_name(Family f);
Family parse_family(const std::string& s);
std::vector<Family> all_families();

/// Canonical generator index tuple (size 4 for mbar, 2 for the rest).
using GenIndex = std::vector<int>;

enum class Symmetry { antisymmetric, symmetric, none };

/// Canonical form of a generator index tuple and the symmetry sign.
/// sign 0 means the generator is zero (repeated index under a symmetric or
/// antisymmetric scheme, or theta_{1,2} for m0).
struct NormalizedGenerator {
  GenIndex canonical;
  int sign = 0;
};
NormalizedGenerator normalize_generator(Family f, int n, const GenIndex& raw);

/// A quadratic relator: formal sum of ordered products of canonical
/// generators, sum c_t * (g_t1 g_t2) = 0.
struct QuadRelator {
  struct Term {
    GenIndex g1, g2;
    Rational coeff;
  };
  std::vector<Term> terms;
};

/// Fully instantiated presentation at level n.
struct AlgebraPresentation {
  Family family = Family::mbar;
  int n = 0;
  int arity = 2;
  Symmetry symmetry = Symmetry::none;
  std::optional<Family> ambient;  // m0 -> arnold

  std::vector<GenIndex> generators;  // canonical, lex sorted
  std::map<GenIndex, int> gen_pos;

  /// Linear relators in degree 1, as vectors over the canonical generator
  /// coordinates (mbar's five-term relations; empty for the others).
  std::vector<SparseVector> linear_relators() const;

  std::vector<QuadRelator> quadratic_relators() const;
};

AlgebraPresentation presentation(Family f, int n);

/// Degree-1 space: chosen basis of H^1 plus a rewrite table expressing any
/// canonical generator over the basis.
struct DegreeOneSpace {
  Family family = Family::mbar;
  int n = 0;
  std::vector<GenIndex> basis;
  std::map<GenIndex, int> pos;

  int dim() const { return static_cast<int>(basis.size()); }

  /// Canonical generator -> combination of basis elements. For mbar,
  /// generators without index 1 go through the four-term rewrite.
  SparseVector rewrite(const GenIndex& canonical) const;

  /// Arbitrary index tuple: normalize then rewrite (zero vector when the
  /// normalized generator is zero).
  SparseVector express(const GenIndex& raw) const;
};

DegreeOneSpace degree_one_space(Family f, int n);

/// Lex rank/unrank of strictly increasing i-tuples over {0..d-1}
/// (the monomial coordinates of the i-th exterior power).
struct ExteriorIndex {
  int d = 0, i = 0;

  ExteriorIndex(int d_, int i_) : d(d_), i(i_) {}
  long long size() const;
  long long rank(const std::vector<int>& mono) const;
  std::vector<int> unrank(long long r) const;
};

/// Wedge of degree-1 vectors into exterior-power monomial coordinates.
SparseVector wedge(const std::vector<const SparseVector*>& factors, const ExteriorIndex& EI);
/// Wedge a vector already in Lambda^k coordinates with a degree-1 vector.
SparseVector wedge_extend(const SparseVector& v, const ExteriorIndex& EIk,
                          const SparseVector& x, const ExteriorIndex& EIk1);

/// Degree-1 action of p on the chosen basis: columns over basis coordinates.
std::vector<SparseVector> degree_one_action(const DegreeOneSpace& V1, const Permutation& p);

/// Graded piece of the quotient algebra.
struct GradedBasis {
  Family family = Family::mbar;
  int n = 0, degree = 0;
  long long dim = 0;
  long long relation_dim = 0;
  /// Chosen monomial transversal, each monomial a tuple of generator tuples.
  std::vector<std::vector<GenIndex>> basis_monomials;

  std::shared_ptr<DegreeOneSpace> V1;
  /// RREF of the relation space R_i inside Lambda^i(V1); quotient basis is
  /// indexed by its non-pivot monomials. Not used for m0.
  std::shared_ptr<EchelonForm> relations;
  std::vector<long long> transversal;  // monomial ranks of the quotient basis

  /// m0 only: the ambient arnold piece and the image subspace of
  /// Lambda^i(theta-span) inside it, plus the theta monomials picked as basis.
  std::shared_ptr<GradedBasis> ambient;
  std::shared_ptr<Subspace> image;
};

/// Relation space R_i in Lambda^i(V1): rewritten quadratic relators wedged
/// with all Lambda^{i-2} monomials, echelonized. R_0 = R_1 = 0.
/// Throws std::invalid_argument for m0 (which uses ambient images instead).
EchelonForm relation_space(Family f, int n, int i);

const GradedBasis& graded_basis(Family f, int n, int i);

/// Action of p on Lambda^i(V1) monomial coordinates.
SparseRationalMatrix action_matrix(Family f, int n, int i, const Permutation& p);

/// Action of p on the quotient basis coordinates of H^i.
SparseRationalMatrix quotient_action_matrix(const GradedBasis& gb, const Permutation& p);

/// Character value of p on H^i (trace on the quotient).
Rational quotient_trace(const GradedBasis& gb, const Permutation& p);

/// Pullback H^i(level m) -> H^i(level n) along the injection f (f[k-1] is the
/// image of label k). Throws std::invalid_argument when f is not injective.
SparseRationalMatrix pullback_matrix(Family fam, const std::vector<int>& f, int m, int n, int i);

std::vector<int> canonical_inclusion(int m, int n);

/// Independent oracle: enumerate all generator monomials and impose the
/// linear and quadratic relations by one global row reduction (no chosen
/// degree-1 basis). Guarded to n <= 6, i <= 2.
long long brute_force_dimension(Family f, int n, int i);

struct SizeGuardError : std::runtime_error {
  explicit SizeGuardError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Default ceilings: n <= 13 for i <= 1, n <= 10 for i = 2, n <= 8 beyond.
/// Throws SizeGuardError (message includes the ambient Lambda^i dimension
/// estimate) unless allow_large is set.
void check_size_guard(Family f, int n, int i, bool allow_large = false);

}  // namespace cactus
