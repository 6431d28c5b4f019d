#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cactus/algebra.hpp"

namespace cactus {

/// Exact character of H^i at level n (one value per cycle type).
/// Value at the identity class equals the graded dimension.
ClassFunction character(Family f, int n, int i, bool allow_large = false);

/// Irreducible multiplicities of H^i, keyed by unpadded partitions.
/// Throws std::runtime_error on a non-integer or negative multiplicity.
MultiplicityTable decompose(Family f, int n, int i, bool allow_large = false);

/// Same decomposition from an already-computed character.
MultiplicityTable decompose_character(const ClassFunction& chi);

int weight_observed(const MultiplicityTable& t);

/// True iff the S_n-orbit of the pullback images from all levels <= m spans
/// H^i at level n. (Images from k < m factor through level m, so only the
/// canonical inclusion from m is expanded.)
bool generation_degree_check(Family f, int i, int m, int n, bool allow_large = false);

struct StabilityEntry {
  int n = 0;
  bool injective = false;      // pullback to level n+1 injective
  bool orbit_spanning = false; // S_{n+1}-orbit of the image spans level n+1
  bool multiplicities_stable = false;  // table matches the previous level
  MultiplicityTable table;
};

struct StabilityReport {
  Family family = Family::mbar;
  int degree = 0;
  int n_lo = 0, n_hi = 0;
  std::vector<StabilityEntry> entries;
  /// Smallest n in range from which all three conditions hold through the
  /// top of the range; absent when they fail at the top.
  std::optional<int> observed_onset;
  int guaranteed_onset = 0;  // the 6i bound
};

StabilityReport rep_stability_report(Family f, int i, int n_lo, int n_hi,
                                     bool allow_large = false);

struct CoinvariantEntry {
  int n = 0;
  long long dim = 0;           // coinvariant dimension at a+n labels
  SparseRationalMatrix tmap;   // induced map to the level-(n+1) coinvariants
  bool injective = false, surjective = false;
  bool iso() const { return injective && surjective; }
};

struct CoinvariantProbe {
  Family family = Family::mbar;
  int degree = 0;
  int a = 0;  // frozen labels, placed before the n moving labels
  int n_lo = 0, n_hi = 0;
  std::vector<CoinvariantEntry> entries;
};

/// Coinvariants of H^i at a+n labels under S_n permuting the last n labels,
/// with the transition maps induced by the canonical inclusion.
CoinvariantProbe coinvariant_probe(Family f, int i, int a, int n_lo, int n_hi,
                                   bool allow_large = false);

struct CharPolyFit {
  FitStatus status = FitStatus::infeasible;
  CharacterPolynomial poly;
  bool validated = false;
  std::vector<std::string> failures;  // classes where validation broke
};

/// One exact solve over every (class, n) pair of fit_ns for the coefficients
/// of a character polynomial of degree <= max_deg; validated on check_ns.
CharPolyFit fit_character_polynomial(Family f, int i, const std::vector<int>& fit_ns,
                                     const std::vector<int>& check_ns, int max_deg,
                                     bool allow_large = false);

struct BettiFit {
  FitStatus status = FitStatus::infeasible;
  Polynomial poly;
  bool validated = false;
  std::vector<std::string> failures;
};

BettiFit fit_betti_polynomial(Family f, int i, const std::vector<int>& fit_ns,
                              const std::vector<int>& check_ns, int max_deg,
                              bool allow_large = false);

/// Class-by-class comparison of the degree-1 mbar character against the
/// third exterior power of the standard representation.
bool model_check_h1(int n);

}  // namespace cactus
