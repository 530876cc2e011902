#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ppclone/registry.hpp"

namespace ppclone {

/// One conjunct: either a relation atom Sym(v,...) or an equality v = w.
struct PpAtom {
  bool is_eq = false;
  std::string symbol;      // empty for equality atoms
  std::vector<int> vars;   // indices into the formula's variable table

  bool operator==(const PpAtom&) const = default;
};

/// Prenex existential conjunctive formula. Variables are stored free-first;
/// indices 0..num_free-1 are the head variables.
struct PpFormula {
  std::string name;                    // head relation name
  int num_free = 0;
  std::vector<std::string> var_names;  // free then bound
  std::vector<std::string> var_sorts;  // parallel to var_names
  std::vector<PpAtom> atoms;

  int num_bound() const { return static_cast<int>(var_names.size()) - num_free; }
  bool operator==(const PpFormula&) const = default;
};

/// Structural sanity checks against a registry (atoms resolve, arities and
/// sorts line up, equality atoms share a sort).
void check_formula(const PpFormula& f, const BasisRegistry& basis);

struct LengthReport {
  int arity = 0;
  int length = 0;
  int atom_count = 0;
  int quantifier_count = 0;
  std::string method;
};

/// |phi| = quantifier count + sum over atoms of (1 + atom arity); equality
/// atoms count as arity 2.
LengthReport formula_length(const PpFormula& f);

/// Replaces every relation atom of f by the translation formula for its
/// symbol, with translation bound variables renamed fresh per occurrence.
/// Equality atoms are kept as-is.
PpFormula substitute_basis(const PpFormula& f,
                           const std::map<std::string, PpFormula>& translations);

}  // namespace ppclone
