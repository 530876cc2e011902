#pragma once

#include <optional>
#include <string>

#include "ppclone/eval.hpp"
#include "ppclone/formula.hpp"
#include "ppclone/registry.hpp"
#include "ppclone/relation.hpp"

namespace ppclone {

/// A pp-definition together with the basis its atoms live in (a minimal
/// self-contained snapshot) and its measured length. Every builder verifies
/// the formula against the input relation before returning.
struct DefinitionResult {
  PpFormula formula;
  BasisRegistry basis;
  LengthReport report;
  std::string method;  // baker_pixley | affine | chain | composite
};

struct VerifyOutcome {
  bool ok = true;
  std::vector<int> differing_tuple;  // in exactly one of {evaluated, R}
};

VerifyOutcome verify_definition(const DefinitionResult& result, const Relation& R);

/// Conjunction of all <=k-ary projections (Baker-Pixley). Requires a
/// (k+1)-ary near-unanimity polymorphism compatible with R (caller-checked);
/// verification failure signals a violated precondition.
DefinitionResult baker_pixley(BasisRegistry& work, const Relation& R, int k);

/// Defining linear system over Z_p via Gaussian elimination, encoded as
/// ternary addition chains over {R_Lin, C_0..C_{p-1}}.
DefinitionResult affine_definition(BasisRegistry& work, const Relation& R, int p);

struct PowerTransportResult {
  Relation flattened;      // nk-ary over the base sort
  DefinitionResult glue;   // defines R over the power sort
};

/// Flattens a relation over a power sort and rebuilds it from the diagonal
/// relations P_i and the diagonal lift of the flattening.
PowerTransportResult power_transport(BasisRegistry& work, const Relation& R);

struct HsTransportResult {
  Relation preimage;       // over the common base sort
  DefinitionResult glue;   // defines R via homomorphism graphs
};

/// Transports a relation over Base/Subalgebra/Quotient sorts to its preimage
/// over the common base algebra, with homomorphism-graph glue.
HsTransportResult hs_transport(BasisRegistry& work, const Relation& R);

struct ReduceCriticalResult {
  Relation reduced;        // over quotient sorts; all theta_i trivial
  DefinitionResult glue;   // defines R as the preimage of the reduced relation
};

/// Quotients each coordinate by its linkedness congruence theta_i.
ReduceCriticalResult reduce_critical(BasisRegistry& work, const Relation& R);

/// Theorem-10 chain construction for a reduced critical subdirect relation
/// with the parallelogram property: a single atom for arity <= 3, otherwise
/// a chain of ternary quotient atoms Q with one fresh variable per step.
DefinitionResult chain_decompose(BasisRegistry& work, const Relation& R);

/// Full pipeline. Dispatches: affine route when the relation is closed
/// under x-y+z over a prime domain; Baker-Pixley when the sort algebra has a
/// near-unanimity term; single atom for arity <= 3; otherwise the critical
/// decomposition with per-part reduction and chain definitions, using the
/// given edge parameter k (least k <= 3 with an edge term when omitted).
DefinitionResult short_pp_definition(BasisRegistry& work, const Relation& R,
                                     std::optional<int> k = std::nullopt);

/// Snapshot of exactly the sorts and relations a formula needs.
BasisRegistry minimal_basis(const BasisRegistry& work, const PpFormula& f);

/// Appends psi's atoms to target, mapping psi's head variables to the given
/// target variables and renaming psi's bound variables fresh.
void inline_subformula(PpFormula& target, const PpFormula& psi, const std::vector<int>& head_map);

}  // namespace ppclone
