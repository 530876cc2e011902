#include "ppclone/partition.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "ppclone/errors.hpp"

namespace ppclone {

Partition::Partition(std::vector<int> reps) : rep_(std::move(reps)) {
  for (int x = 0; x < size(); ++x) {
    int r = rep_[x];
    if (r < 0 || r > x || rep_[r] != r)
      fail(Errc::invariant_violation, "partition representatives not canonical");
  }
}

Partition Partition::identity(int size) {
  std::vector<int> r(size);
  std::iota(r.begin(), r.end(), 0);
  return Partition(std::move(r));
}

Partition Partition::full(int size) { return Partition(std::vector<int>(size, 0)); }

int Partition::block_count() const {
  int c = 0;
  for (int x = 0; x < size(); ++x)
    if (rep_[x] == x) ++c;
  return c;
}

std::vector<std::vector<int>> Partition::blocks() const {
  std::map<int, std::vector<int>> by_rep;
  for (int x = 0; x < size(); ++x) by_rep[rep_[x]].push_back(x);
  std::vector<std::vector<int>> out;
  out.reserve(by_rep.size());
  for (auto& [r, b] : by_rep) out.push_back(std::move(b));
  return out;
}

int Partition::block_index(int x) const {
  int r = rep_[x];
  int idx = 0;
  for (int y = 0; y < r; ++y)
    if (rep_[y] == y) ++idx;
  return idx;
}

std::vector<int> Partition::representatives() const {
  std::vector<int> out;
  for (int x = 0; x < size(); ++x)
    if (rep_[x] == x) out.push_back(x);
  return out;
}

bool Partition::is_identity() const {
  for (int x = 0; x < size(); ++x)
    if (rep_[x] != x) return false;
  return true;
}

bool Partition::is_full() const {
  for (int x = 0; x < size(); ++x)
    if (rep_[x] != 0) return false;
  return true;
}

bool Partition::refines(const Partition& other) const {
  for (int x = 0; x < size(); ++x)
    if (other.rep(x) != other.rep(rep_[x])) return false;
  return true;
}

UnionFind::UnionFind(int size) : parent_(size) { std::iota(parent_.begin(), parent_.end(), 0); }

int UnionFind::find(int x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool UnionFind::merge(int a, int b) {
  int ra = find(a), rb = find(b);
  if (ra == rb) return false;
  if (ra > rb) std::swap(ra, rb);
  parent_[rb] = ra;  // keep least element as root
  return true;
}

Partition UnionFind::to_partition() {
  std::vector<int> reps(parent_.size());
  for (int x = 0; x < static_cast<int>(parent_.size()); ++x) reps[x] = find(x);
  return Partition(std::move(reps));
}

Partition meet(const Partition& a, const Partition& b) {
  std::map<std::pair<int, int>, int> first;
  std::vector<int> reps(a.size());
  for (int x = 0; x < a.size(); ++x) {
    auto key = std::make_pair(a.rep(x), b.rep(x));
    auto [it, fresh] = first.try_emplace(key, x);
    reps[x] = it->second;
  }
  return Partition(std::move(reps));
}

}  // namespace ppclone
