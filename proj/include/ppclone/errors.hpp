#pragma once

#include <stdexcept>
#include <string>

namespace ppclone {

enum class Errc {
  arity_mismatch,
  element_out_of_range,
  sort_mismatch,
  unknown_symbol,
  missing_translation,
  duplicate_name,
  invariant_violation,
  domain_too_large,
  not_a_congruence,
  not_in_lattice,
  bad_coordinate_set,
  bad_coordinate,
  arity_too_large,
  no_parallelogram_property,
  not_invariant,
  forbidden_inside_r,
  not_subdirect,
  not_affine,
  empty_relation,
  not_a_power_sort,
  unrelated_sorts,
  precondition_failed,
  recursion_invariant_broken,
  verification_failed,
  no_edge_term_found,
  certificate_construction_failed,
  budget_exhausted,
  parse_error,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace ppclone
