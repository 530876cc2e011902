#pragma once

#include <span>
#include <string>
#include <vector>

namespace ppclone {

/// A multi-sorted finite relation: a canonically ordered, duplicate-free set
/// of n-tuples. Tuples are stored flat with stride n, sorted lexicographically.
class Relation {
 public:
  Relation() = default;
  /// Tuples may arrive unsorted/duplicated; they are canonicalized here.
  Relation(std::string name, int arity, std::vector<std::string> sorts,
           std::vector<std::vector<int>> tuples);
  /// Fast path: data must already be sorted lexicographically without duplicates.
  static Relation from_sorted(std::string name, int arity, std::vector<std::string> sorts,
                              std::vector<int> flat);

  const std::string& name() const { return name_; }
  int arity() const { return arity_; }
  const std::vector<std::string>& sorts() const { return sorts_; }
  int tuple_count() const { return arity_ == 0 ? 0 : static_cast<int>(data_.size()) / arity_; }
  bool empty() const { return data_.empty(); }

  std::span<const int> tuple(int i) const {
    return {data_.data() + static_cast<size_t>(i) * arity_, static_cast<size_t>(arity_)};
  }
  const std::vector<int>& flat() const { return data_; }

  bool contains(std::span<const int> t) const;
  /// Position of t in the canonical order, or -1.
  int index_of(std::span<const int> t) const;

  std::vector<std::vector<int>> tuples() const;

  Relation renamed(std::string new_name) const;
  /// Same tuples over different sort labels (sizes must continue to fit).
  Relation resorted(std::string new_name, std::vector<std::string> new_sorts) const;

  /// Set equality ignoring names and sort labels.
  bool same_tuples(const Relation& other) const {
    return arity_ == other.arity_ && data_ == other.data_;
  }

  bool operator==(const Relation&) const = default;

 private:
  std::string name_;
  int arity_ = 0;
  std::vector<std::string> sorts_;
  std::vector<int> data_;
};

/// Lexicographic comparison of two equal-length tuples.
int compare_tuples(std::span<const int> a, std::span<const int> b);

}  // namespace ppclone
