#pragma once

#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "ppclone/partition.hpp"
#include "ppclone/registry.hpp"
#include "ppclone/relation.hpp"

namespace ppclone {

inline constexpr int kParallelogramArityLimit = 20;

/// proj_I(R): tuple-wise restriction to the ascending coordinate set I
/// (0-based), deduplicated, canonical order.
Relation projection(const Relation& R, const std::vector<int>& coords,
                    const std::string& name);

struct PpWitness {
  std::vector<int> split;  // coordinate set I of the failing binary view
  std::vector<int> a, b;   // I-side tuples
  std::vector<int> c, d;   // complement-side tuples
};

struct PpCheck {
  bool holds = true;
  std::optional<PpWitness> witness;
};

/// Parallelogram property across every proper nonempty split I | [n]\I.
/// Unary relations have no proper splits and pass vacuously.
PpCheck has_parallelogram_property(const Relation& R);

/// Sig(R): triples (i,a,b) witnessed by tuple pairs agreeing strictly
/// before coordinate i, with values a and b at i.
struct SignatureSet {
  std::set<std::tuple<int, int, int>> triples;

  bool contains(int i, int a, int b) const { return triples.count({i, a, b}) > 0; }
  int size() const { return static_cast<int>(triples.size()); }
};

SignatureSet signature(const Relation& R);

/// false iff swapping coordinate i between any two values never changes
/// membership.
bool depends_on(const BasisRegistry& basis, const Relation& R, int coord);

bool is_subdirect(const BasisRegistry& basis, const Relation& R);

/// The operations of the context algebras acting on the tuples of a closed
/// relation, re-indexed by canonical tuple position.
Algebra induced_algebra(const BasisRegistry& basis, const Relation& R);

struct CriticalReport {
  bool is_critical = false;
  std::vector<int> dummy_coordinates;
  Relation cover;                            // R* = meet of all strictly larger subpowers
  std::vector<std::vector<int>> key_tuples;  // R* \ R
};

/// R* as the intersection of Sg(R + t) over every tuple t outside R.
CriticalReport cover_and_keys(const BasisRegistry& basis, const Relation& R);

struct Linkedness {
  Relation projection;  // proj_I(R), canonical order
  Partition partition;  // on the projection's tuple indices
};

/// Linkedness congruence theta_I on proj_I(R): two I-parts are identified
/// iff they share a complementary witness. Requires the parallelogram
/// property unless allow_no_pp is set, in which case non-transitive linking
/// is reported as a diagnostic error.
Linkedness linkedness_congruence(const BasisRegistry& basis, const Relation& R,
                                 const std::vector<int>& coords, bool allow_no_pp = false);

/// Least invariant superset of R with the parallelogram property
/// (alternating subalgebra generation and parallelogram completion).
Relation parallelogram_closure(const BasisRegistry& basis, const Relation& R,
                               const std::string& name);

/// Greedy-lex maximal subpower containing R and omitting `forbidden`.
Relation maximal_avoiding(const BasisRegistry& basis, const Relation& R,
                          std::span<const int> forbidden, const std::string& name);

/// Greedy-lex maximal subpower containing R, with the parallelogram
/// property, whose signature omits the given triple.
Relation maximal_signature_avoiding(const BasisRegistry& basis, const Relation& R,
                                    std::tuple<int, int, int> triple, const std::string& name);

struct DecompositionPart {
  std::vector<int> coords;  // ascending, 0-based
  Relation relation;        // over those coordinates
  bool from_signature = false;
  std::tuple<int, int, int> triple{-1, -1, -1};
};

/// Lemma-6 style decomposition: the <=k-ary projections of R plus one
/// maximal signature-avoiding part per triple missing from Sig(R') with
/// a in proj_i(R'), where R' is the parallelogram closure of R. The parts,
/// cylindrified back to arity n, intersect to exactly R.
std::vector<DecompositionPart> critical_decomposition(const BasisRegistry& basis,
                                                      const Relation& R, int k);

/// Intersection of cylindrified parts (test/verification helper).
Relation intersect_parts(const BasisRegistry& basis, const std::vector<std::string>& sorts,
                         const std::vector<DecompositionPart>& parts, const std::string& name);

}  // namespace ppclone
