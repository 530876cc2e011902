#pragma once

#include <span>
#include <string>
#include <vector>

#include "ppclone/errors.hpp"

namespace ppclone {

/// Finite domain; elements are the integers 0..size-1.
struct Domain {
  int size = 1;
};

/// A finitary operation on 0..domain_size-1, stored as a full table in
/// lexicographic argument order (first argument most significant).
class OperationTable {
 public:
  OperationTable(std::string name, int arity, int domain_size, std::vector<int> table);

  const std::string& name() const { return name_; }
  int arity() const { return arity_; }
  int domain_size() const { return domain_size_; }
  const std::vector<int>& table() const { return table_; }

  /// Table lookup without argument validation.
  int apply(std::span<const int> args) const {
    int idx = 0;
    for (int a : args) idx = idx * domain_size_ + a;
    return table_[idx];
  }

  bool operator==(const OperationTable&) const = default;

 private:
  std::string name_;
  int arity_;
  int domain_size_;
  std::vector<int> table_;
};

/// Checked table evaluation.
int eval_operation(const OperationTable& op, std::span<const int> args);

/// A finite algebra: a domain together with named basic operations.
class Algebra {
 public:
  Algebra() : name_("trivial"), domain_{1} {}
  Algebra(std::string name, Domain domain, std::vector<OperationTable> ops);

  const std::string& name() const { return name_; }
  const Domain& domain() const { return domain_; }
  int size() const { return domain_.size; }
  const std::vector<OperationTable>& operations() const { return ops_; }
  const OperationTable* find_operation(const std::string& name) const;

  bool operator==(const Algebra&) const = default;

 private:
  std::string name_;
  Domain domain_;
  std::vector<OperationTable> ops_;
};

}  // namespace ppclone
