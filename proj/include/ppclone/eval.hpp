#pragma once

#include "ppclone/formula.hpp"
#include "ppclone/registry.hpp"
#include "ppclone/relation.hpp"

namespace ppclone {

/// All assignments of the head variables for which some assignment of the
/// bound variables satisfies every atom. Backtracking search with per-atom
/// consistency filtering; the result is canonically ordered.
Relation evaluate_pp_formula(const PpFormula& f, const BasisRegistry& basis);

/// Membership query for a single head assignment (no materialization).
bool formula_holds(const PpFormula& f, const BasisRegistry& basis, std::span<const int> tuple);

}  // namespace ppclone
