#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ppclone/relation.hpp"
#include "ppclone/sorts.hpp"

namespace ppclone {

/// Named sorts plus the named relations usable as pp-formula atoms.
class BasisRegistry {
 public:
  void register_sort(Sort sort);
  void register_relation(Relation rel);
  /// Re-registering an identical relation is a no-op; a different relation
  /// under an existing name is an error.
  void register_or_check_relation(const Relation& rel);

  bool has_sort(const std::string& id) const { return sorts_.count(id) > 0; }
  bool has_relation(const std::string& name) const { return relations_.count(name) > 0; }
  const Sort& sort(const std::string& id) const;
  const Relation& relation(const std::string& name) const;
  const Algebra& sort_algebra(const std::string& id) const { return sort(id).algebra; }
  int sort_size(const std::string& id) const { return sort(id).algebra.size(); }

  const std::map<std::string, Sort>& sorts() const { return sorts_; }
  const std::map<std::string, Relation>& relations() const { return relations_; }

  /// Registers a base sort whose carrier is the given algebra; id = algebra name.
  const Sort& ensure_base_sort(const Algebra& algebra);
  /// Derived-sort constructors; identical constructions are deduplicated and
  /// return the previously registered sort.
  const Sort& ensure_subalgebra_sort(const std::string& parent, const std::vector<int>& subset);
  const Sort& ensure_quotient_sort(const std::string& parent, const Partition& partition);
  const Sort& ensure_power_sort(const std::string& parent, int exponent);
  const Sort& ensure_product_sort(const std::string& left, const std::string& right);

  /// Subalgebra <-> parent translations for derived sorts.
  int subalgebra_child_of(const Sort& sub, int parent_element) const;
  int quotient_class_of(const Sort& quot, int parent_element) const;

  /// Validates a name for use in files (identifier charset).
  static void check_name(const std::string& name);

 private:
  const Sort& intern_sort(Sort sort, const char* prefix);
  std::map<std::string, Sort> sorts_;
  std::map<std::string, Relation> relations_;
  int fresh_counter_ = 0;
};

}  // namespace ppclone
