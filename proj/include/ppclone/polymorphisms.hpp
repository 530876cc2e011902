#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ppclone/algebra.hpp"
#include "ppclone/registry.hpp"
#include "ppclone/relation.hpp"

namespace ppclone {

enum class SchemeKind { edge, maltsev, near_unanimity, majority };

/// An identity scheme over two variables: each row is an argument pattern
/// over {x,y} with a required result in {x,y}.
class IdentityScheme {
 public:
  struct Row {
    std::vector<int> pattern;  // 0 = x, 1 = y
    int result;                // 0 = x, 1 = y
  };

  static IdentityScheme edge(int k);
  static IdentityScheme maltsev();
  static IdentityScheme near_unanimity(int arity);
  static IdentityScheme majority();

  SchemeKind kind() const { return kind_; }
  int arity() const { return arity_; }
  const std::vector<Row>& rows() const { return rows_; }
  std::string describe() const;

 private:
  SchemeKind kind_;
  int arity_;
  std::vector<Row> rows_;
};

struct CompatibilityResult {
  bool compatible = true;
  /// On failure: the selected rows of R and their coordinate-wise image.
  std::vector<std::vector<int>> witness_rows;
  std::vector<int> witness_image;
};

/// Coordinate-wise preservation of R by op (R single-sorted over op's domain).
CompatibilityResult is_compatible(const OperationTable& op, const Relation& R,
                                  const BasisRegistry& basis);

struct PolymorphismResult {
  bool polymorphism = true;
  std::string failing_relation;
  CompatibilityResult detail;
};

PolymorphismResult is_polymorphism(const OperationTable& op, const BasisRegistry& basis);

struct IdentityCheck {
  bool satisfied = true;
  int failing_row = -1;
  int x = -1, y = -1;
};

IdentityCheck satisfies_identity_scheme(const OperationTable& op, const IdentityScheme& s);

enum class SearchStatus { found, none, exhausted };

struct FindTermResult {
  SearchStatus status = SearchStatus::none;
  std::optional<OperationTable> table;
  std::int64_t nodes = 0;
};

inline constexpr std::int64_t kDefaultSearchBudget = 100000000;  // PPCLONE_BUDGET default

/// Exhaustive backtracking search for an operation table satisfying the
/// scheme and compatible with every registered relation. Identity-forced
/// cells are fixed first; remaining cells are filled in lexicographic order
/// with incremental compatibility pruning. Returns the lexicographically
/// least solution; `none` is a proof of nonexistence, `exhausted` is not.
FindTermResult find_term(const BasisRegistry& basis, const IdentityScheme& scheme,
                         std::int64_t budget = kDefaultSearchBudget);

/// All `arity`-ary term operations of the algebra, as tables (closure of the
/// projections under the basic operations acting pointwise).
std::vector<OperationTable> term_operations(const Algebra& a, int arity, std::int64_t budget);

/// Least k in [2, max_k] such that the algebra has a k-edge term, together
/// with one such term.
struct EdgeTermResult {
  bool found = false;
  int k = 0;
  std::optional<OperationTable> term;
};
EdgeTermResult find_edge_term_of_algebra(const Algebra& a, int max_k,
                                         std::int64_t budget = kDefaultSearchBudget);

}  // namespace ppclone
