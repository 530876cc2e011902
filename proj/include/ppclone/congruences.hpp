#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ppclone/algebra.hpp"
#include "ppclone/partition.hpp"

namespace ppclone {

/// Guard for full-lattice enumeration.
inline constexpr int kCongruenceDomainLimit = 12;

/// Least congruence of A containing the given pairs (union-find fixpoint).
Partition congruence_generated(const Algebra& a, const std::vector<std::pair<int, int>>& pairs);

/// true iff theta is invariant under all operations of A.
bool is_congruence(const Algebra& a, const Partition& theta);

struct CongruenceLattice {
  std::vector<Partition> congruences;       // sorted canonically; contains 0_A and 1_A
  std::vector<std::pair<int, int>> covers;  // (i,j) with congruences[i] covered by [j]

  int index_of(const Partition& theta) const;
  std::vector<int> covers_of(int i) const;
};

/// All congruences: principal ones closed under join, covers by inclusion.
CongruenceLattice all_congruences(const Algebra& a);

struct SubdirectIrreducibility {
  bool irreducible = false;
  std::optional<Partition> monolith;
};

SubdirectIrreducibility is_subdirectly_irreducible(const Algebra& a);

struct QuotientResult {
  Algebra algebra;                            // carrier = blocks ordered by least member
  std::vector<std::pair<int, int>> graph;     // (x, x/theta) pairs
};

/// Quotient algebra together with the graph of the quotient map.
QuotientResult quotient(const Algebra& a, const Partition& theta);

/// The unique cover of theta in L, if it has exactly one.
std::optional<Partition> meet_irreducible_cover(const Partition& theta,
                                                const CongruenceLattice& lattice);

Partition join(const Algebra& a, const Partition& t1, const Partition& t2);

}  // namespace ppclone
