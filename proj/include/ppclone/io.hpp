#pragma once

#include <string>
#include <vector>

#include "ppclone/algebra.hpp"
#include "ppclone/formula.hpp"
#include "ppclone/registry.hpp"

namespace ppclone {

/// Parses a file consisting of one `algebra` block.
Algebra parse_algebra(const std::string& text);

/// Parses `algebra` and `relation` blocks; algebras register base sorts
/// (sort id = algebra name). Returns the names of the relations added.
std::vector<std::string> parse_basis(const std::string& text, BasisRegistry& registry);

/// Parses `relation` blocks only, against already-registered sorts.
std::vector<std::string> parse_relations(const std::string& text, BasisRegistry& registry);

/// Parses a `def` line; variable sorts are inferred from atom positions.
PpFormula parse_formula(const std::string& text, const BasisRegistry& registry);

std::string serialize_algebra(const Algebra& a);
std::string serialize_relation(const Relation& r);
std::string serialize_formula(const PpFormula& f);
/// All sorts (as algebra blocks) followed by all relations, in name order.
std::string serialize_basis(const BasisRegistry& registry);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace ppclone
