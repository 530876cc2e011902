#include "ppclone/errors.hpp"

namespace ppclone {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::arity_mismatch: return "ArityMismatch";
    case Errc::element_out_of_range: return "ElementOutOfRange";
    case Errc::sort_mismatch: return "SortMismatch";
    case Errc::unknown_symbol: return "UnknownSymbol";
    case Errc::missing_translation: return "MissingTranslation";
    case Errc::duplicate_name: return "DuplicateName";
    case Errc::invariant_violation: return "InvariantViolation";
    case Errc::domain_too_large: return "DomainTooLarge";
    case Errc::not_a_congruence: return "NotACongruence";
    case Errc::not_in_lattice: return "NotInLattice";
    case Errc::bad_coordinate_set: return "BadCoordinateSet";
    case Errc::bad_coordinate: return "BadCoordinate";
    case Errc::arity_too_large: return "ArityTooLarge";
    case Errc::no_parallelogram_property: return "NoParallelogramProperty";
    case Errc::not_invariant: return "NotInvariant";
    case Errc::forbidden_inside_r: return "ForbiddenInsideR";
    case Errc::not_subdirect: return "NotSubdirect";
    case Errc::not_affine: return "NotAffine";
    case Errc::empty_relation: return "EmptyRelation";
    case Errc::not_a_power_sort: return "NotAPowerSort";
    case Errc::unrelated_sorts: return "UnrelatedSorts";
    case Errc::precondition_failed: return "PreconditionFailed";
    case Errc::recursion_invariant_broken: return "RecursionInvariantBroken";
    case Errc::verification_failed: return "VerificationFailed";
    case Errc::no_edge_term_found: return "NoEdgeTermFound";
    case Errc::certificate_construction_failed: return "CertificateConstructionFailed";
    case Errc::budget_exhausted: return "BudgetExhausted";
    case Errc::parse_error: return "ParseError";
  }
  return "Error";
}

}  // namespace ppclone
