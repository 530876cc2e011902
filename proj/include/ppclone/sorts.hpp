#pragma once

#include <string>
#include <vector>

#include "ppclone/algebra.hpp"
#include "ppclone/partition.hpp"

namespace ppclone {

enum class SortKind { base, subalgebra, quotient, power, product };

/// A sort is a carrier algebra plus the provenance of its construction.
/// Canonical element encodings:
///   subalgebra : element i  <->  i-th least member of the parent subset
///   quotient   : element i  <->  i-th block ordered by least member
///   power      : element i  <->  lexicographic index of its parent tuple
///   product    : element i  <->  left * |right| + right
struct Sort {
  std::string id;
  Algebra algebra;
  SortKind kind = SortKind::base;
  std::string parent;            // subalgebra/quotient/power; product: left parent
  std::string parent2;           // product: right parent
  std::vector<int> subset;       // subalgebra: parent elements, ascending
  Partition partition;           // quotient: congruence of the parent
  int exponent = 0;              // power

  bool same_construction(const Sort& o) const {
    return algebra == o.algebra && kind == o.kind && parent == o.parent &&
           parent2 == o.parent2 && subset == o.subset && partition == o.partition &&
           exponent == o.exponent;
  }
};

/// Mixed-radix helpers for power/product element encodings.
std::vector<int> decode_power(int value, int base_size, int exponent);
int encode_power(std::span<const int> tuple, int base_size);

}  // namespace ppclone
