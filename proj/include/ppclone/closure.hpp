#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ppclone/algebra.hpp"
#include "ppclone/registry.hpp"
#include "ppclone/relation.hpp"

namespace ppclone {

/// A product of sort carriers with the shared operation signature acting
/// coordinate-wise. All sorts must agree on operation names and arities.
class ProductContext {
 public:
  static ProductContext from_sorts(const BasisRegistry& basis,
                                   std::vector<std::string> sort_ids);
  static ProductContext from_power(const Algebra& algebra, int n);
  static ProductContext for_relation(const BasisRegistry& basis, const Relation& rel);

  int n() const { return static_cast<int>(dims_.size()); }
  int dim(int c) const { return dims_[c]; }
  const std::vector<int>& dims() const { return dims_; }
  const std::vector<std::string>& sort_ids() const { return sort_ids_; }
  std::int64_t space() const { return space_; }

  int op_count() const { return static_cast<int>(op_names_.size()); }
  const std::string& op_name(int i) const { return op_names_[i]; }
  int op_arity(int i) const { return op_arities_[i]; }
  const OperationTable& coord_op(int op, int c) const {
    return algebras_[alg_of_[c]].operations()[op];
  }

  /// result[c] = op applied to args' c-th coordinates.
  void apply(int op, std::span<const int* const> args, int* result) const;

  std::int64_t encode(std::span<const int> tuple) const;
  void decode(std::int64_t value, int* tuple) const;

 private:
  std::vector<std::string> sort_ids_;
  std::vector<int> dims_;
  std::vector<Algebra> algebras_;  // unique carrier algebras
  std::vector<int> alg_of_;        // coordinate -> algebras_ index
  std::vector<std::string> op_names_;
  std::vector<int> op_arities_;
  std::int64_t space_ = 1;
};

struct DerivationStep {
  int op = -1;            // -1: generator
  std::vector<int> args;  // indices of earlier elements
};

struct ClosureResult {
  std::vector<std::vector<int>> elements;  // discovery order
  std::vector<DerivationStep> steps;       // aligned with elements
};

/// Least superset of the generators closed under all operations applied
/// coordinate-wise (BFS fixpoint), with one producing step per element.
ClosureResult close_with_derivation(const ProductContext& ctx,
                                    const std::vector<std::vector<int>>& generators);

/// Same closure on encoded indices, without derivation; sorted ascending.
/// Requires ctx.space() <= kIndexedSpaceLimit.
std::vector<std::int64_t> close_indexed(const ProductContext& ctx,
                                        std::vector<std::int64_t> generators);

inline constexpr std::int64_t kIndexedSpaceLimit = std::int64_t{1} << 22;

/// Closure for arbitrarily large spaces (hash-based membership).
std::vector<std::vector<int>> close_tuples(const ProductContext& ctx,
                                           const std::vector<std::vector<int>>& generators);

/// Closure of a relation's tuple set, returned as a canonical Relation.
Relation close_relation(const BasisRegistry& basis, const Relation& rel,
                        const std::string& result_name);

/// true iff the tuple set is closed (i.e. the relation is a subpower).
bool is_closed(const BasisRegistry& basis, const Relation& rel);

std::vector<std::int64_t> encode_all(const ProductContext& ctx, const Relation& rel);
Relation relation_from_indices(const ProductContext& ctx, std::vector<std::int64_t> indices,
                               const std::string& name);

}  // namespace ppclone
