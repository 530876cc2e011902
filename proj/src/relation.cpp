#include "ppclone/relation.hpp"

#include <algorithm>

#include "ppclone/errors.hpp"

namespace ppclone {

int compare_tuples(std::span<const int> a, std::span<const int> b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

Relation::Relation(std::string name, int arity, std::vector<std::string> sorts,
                   std::vector<std::vector<int>> tuples)
    : name_(std::move(name)), arity_(arity), sorts_(std::move(sorts)) {
  if (arity_ < 1) fail(Errc::invariant_violation, "relation arity must be positive");
  if (static_cast<int>(sorts_.size()) != arity_)
    fail(Errc::invariant_violation, "relation '" + name_ + "' sort list does not match arity");
  std::sort(tuples.begin(), tuples.end());
  tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
  data_.reserve(tuples.size() * arity_);
  for (const auto& t : tuples) {
    if (static_cast<int>(t.size()) != arity_)
      fail(Errc::invariant_violation, "tuple length does not match arity in '" + name_ + "'");
    data_.insert(data_.end(), t.begin(), t.end());
  }
}

Relation Relation::from_sorted(std::string name, int arity, std::vector<std::string> sorts,
                               std::vector<int> flat) {
  if (arity < 1) fail(Errc::invariant_violation, "relation arity must be positive");
  if (static_cast<int>(sorts.size()) != arity)
    fail(Errc::invariant_violation, "relation '" + name + "' sort list does not match arity");
  if (flat.size() % arity != 0)
    fail(Errc::invariant_violation, "flat tuple data not a multiple of arity");
  Relation r;
  r.name_ = std::move(name);
  r.arity_ = arity;
  r.sorts_ = std::move(sorts);
  r.data_ = std::move(flat);
  return r;
}

bool Relation::contains(std::span<const int> t) const { return index_of(t) >= 0; }

int Relation::index_of(std::span<const int> t) const {
  int lo = 0, hi = tuple_count();
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    int c = compare_tuples(tuple(mid), t);
    if (c == 0) return mid;
    if (c < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  return -1;
}

std::vector<std::vector<int>> Relation::tuples() const {
  std::vector<std::vector<int>> out;
  out.reserve(tuple_count());
  for (int i = 0; i < tuple_count(); ++i) {
    auto t = tuple(i);
    out.emplace_back(t.begin(), t.end());
  }
  return out;
}

Relation Relation::renamed(std::string new_name) const {
  Relation r = *this;
  r.name_ = std::move(new_name);
  return r;
}

Relation Relation::resorted(std::string new_name, std::vector<std::string> new_sorts) const {
  if (static_cast<int>(new_sorts.size()) != arity_)
    fail(Errc::sort_mismatch, "resort of '" + name_ + "' has wrong sort count");
  Relation r = *this;
  r.name_ = std::move(new_name);
  r.sorts_ = std::move(new_sorts);
  return r;
}

}  // namespace ppclone
