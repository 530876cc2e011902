#pragma once

#include <vector>

namespace ppclone {

/// Partition of 0..size-1 in canonical form: every element maps to the least
/// element of its block.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> reps);

  static Partition identity(int size);
  static Partition full(int size);

  int size() const { return static_cast<int>(rep_.size()); }
  int rep(int x) const { return rep_[x]; }
  bool same(int a, int b) const { return rep_[a] == rep_[b]; }
  int block_count() const;
  std::vector<std::vector<int>> blocks() const;
  /// Index of x's block among blocks ordered by representative.
  int block_index(int x) const;
  std::vector<int> representatives() const;

  bool is_identity() const;
  bool is_full() const;
  /// true iff every block of *this is contained in a block of other.
  bool refines(const Partition& other) const;

  bool operator==(const Partition&) const = default;
  bool operator<(const Partition& o) const { return rep_ < o.rep_; }

 private:
  std::vector<int> rep_;
};

/// Mutable union-find used to build partitions.
class UnionFind {
 public:
  explicit UnionFind(int size);
  int find(int x);
  bool merge(int a, int b);  // returns true if the classes were distinct
  Partition to_partition();

 private:
  std::vector<int> parent_;
};

Partition meet(const Partition& a, const Partition& b);

}  // namespace ppclone
