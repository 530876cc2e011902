#include "ppclone/congruences.hpp"

#include <algorithm>
#include <set>

#include "ppclone/errors.hpp"

namespace ppclone {

namespace {

/// Merges f(args) with f(args[p := b]) for all single-coordinate related
/// perturbations until stable.
Partition close_under_operations(const Algebra& a, UnionFind uf) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& op : a.operations()) {
      int r = op.arity();
      if (r == 0) continue;
      std::vector<int> args(r, 0);
      while (true) {
        int base = op.apply(args);
        for (int p = 0; p < r; ++p) {
          int orig = args[p];
          for (int b = 0; b < a.size(); ++b) {
            if (b == orig || uf.find(b) != uf.find(orig)) continue;
            args[p] = b;
            if (uf.merge(base, op.apply(args))) changed = true;
            args[p] = orig;
          }
        }
        int pos = r - 1;
        while (pos >= 0 && ++args[pos] == a.size()) args[pos--] = 0;
        if (pos < 0) break;
      }
    }
  }
  return uf.to_partition();
}

}  // namespace

Partition congruence_generated(const Algebra& a, const std::vector<std::pair<int, int>>& pairs) {
  UnionFind uf(a.size());
  for (auto [x, y] : pairs) {
    if (x < 0 || x >= a.size() || y < 0 || y >= a.size())
      fail(Errc::element_out_of_range, "congruence generator pair outside domain");
    uf.merge(x, y);
  }
  return close_under_operations(a, std::move(uf));
}

bool is_congruence(const Algebra& a, const Partition& theta) {
  if (theta.size() != a.size()) return false;
  for (const auto& op : a.operations()) {
    int r = op.arity();
    if (r == 0) continue;
    std::vector<int> args(r, 0);
    while (true) {
      int base = op.apply(args);
      for (int p = 0; p < r; ++p) {
        int orig = args[p];
        for (int b = 0; b < a.size(); ++b) {
          if (b == orig || !theta.same(b, orig)) continue;
          args[p] = b;
          if (!theta.same(base, op.apply(args))) return false;
          args[p] = orig;
        }
      }
      int pos = r - 1;
      while (pos >= 0 && ++args[pos] == a.size()) args[pos--] = 0;
      if (pos < 0) break;
    }
  }
  return true;
}

Partition join(const Algebra& a, const Partition& t1, const Partition& t2) {
  UnionFind uf(a.size());
  for (int x = 0; x < a.size(); ++x) {
    uf.merge(x, t1.rep(x));
    uf.merge(x, t2.rep(x));
  }
  return close_under_operations(a, std::move(uf));
}

int CongruenceLattice::index_of(const Partition& theta) const {
  for (size_t i = 0; i < congruences.size(); ++i)
    if (congruences[i] == theta) return static_cast<int>(i);
  return -1;
}

std::vector<int> CongruenceLattice::covers_of(int i) const {
  std::vector<int> out;
  for (auto [lo, hi] : covers)
    if (lo == i) out.push_back(hi);
  return out;
}

CongruenceLattice all_congruences(const Algebra& a) {
  if (a.size() > kCongruenceDomainLimit)
    fail(Errc::domain_too_large, "congruence lattice enumeration limited to domains of size " +
                                     std::to_string(kCongruenceDomainLimit));
  std::set<Partition> all;
  all.insert(Partition::identity(a.size()));
  std::vector<Partition> work;
  for (int x = 0; x < a.size(); ++x)
    for (int y = x + 1; y < a.size(); ++y) {
      Partition p = congruence_generated(a, {{x, y}});
      if (all.insert(p).second) work.push_back(p);
    }
  // close under join (meet = block intersection is automatic for the
  // inclusion-based covering computation but kept for the invariant check)
  while (!work.empty()) {
    Partition p = work.back();
    work.pop_back();
    std::vector<Partition> snapshot(all.begin(), all.end());
    for (const auto& q : snapshot) {
      Partition j = join(a, p, q);
      if (all.insert(j).second) work.push_back(j);
    }
  }

  CongruenceLattice lat;
  lat.congruences.assign(all.begin(), all.end());
  for (size_t i = 0; i < lat.congruences.size(); ++i) {
    for (size_t j = 0; j < lat.congruences.size(); ++j) {
      if (i == j) continue;
      const Partition& lo = lat.congruences[i];
      const Partition& hi = lat.congruences[j];
      if (!lo.refines(hi) || lo == hi) continue;
      bool covered = true;
      for (size_t m = 0; m < lat.congruences.size(); ++m) {
        if (m == i || m == j) continue;
        const Partition& mid = lat.congruences[m];
        if (lo.refines(mid) && mid.refines(hi) && !(mid == lo) && !(mid == hi)) {
          covered = false;
          break;
        }
      }
      if (covered) lat.covers.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return lat;
}

SubdirectIrreducibility is_subdirectly_irreducible(const Algebra& a) {
  CongruenceLattice lat = all_congruences(a);
  int zero = lat.index_of(Partition::identity(a.size()));
  auto covers = lat.covers_of(zero);
  SubdirectIrreducibility out;
  out.irreducible = covers.size() == 1;
  if (out.irreducible) out.monolith = lat.congruences[covers[0]];
  return out;
}

QuotientResult quotient(const Algebra& a, const Partition& theta) {
  if (theta.size() != a.size())
    fail(Errc::not_a_congruence, "partition size does not match domain");
  if (!is_congruence(a, theta))
    fail(Errc::not_a_congruence, "partition is not invariant under the operations");

  auto reps = theta.representatives();
  int q = static_cast<int>(reps.size());
  std::vector<OperationTable> ops;
  for (const auto& op : a.operations()) {
    int r = op.arity();
    std::int64_t cells = 1;
    for (int i = 0; i < r; ++i) cells *= q;
    std::vector<int> table;
    table.reserve(cells);
    std::vector<int> args(r, 0), lifted(r);
    for (std::int64_t cell = 0; cell < cells; ++cell) {
      for (int i = 0; i < r; ++i) lifted[i] = reps[args[i]];
      table.push_back(theta.block_index(op.apply(lifted)));
      for (int i = r - 1; i >= 0; --i) {
        if (++args[i] < q) break;
        args[i] = 0;
      }
    }
    ops.emplace_back(op.name(), r, q, std::move(table));
  }

  QuotientResult out{Algebra(a.name() + "_q", Domain{q}, std::move(ops)), {}};
  for (int x = 0; x < a.size(); ++x) out.graph.emplace_back(x, theta.block_index(x));
  return out;
}

std::optional<Partition> meet_irreducible_cover(const Partition& theta,
                                                const CongruenceLattice& lattice) {
  int i = lattice.index_of(theta);
  if (i < 0) fail(Errc::not_in_lattice, "partition is not in the given lattice");
  auto covers = lattice.covers_of(i);
  if (covers.size() == 1) return lattice.congruences[covers[0]];
  return std::nullopt;
}

}  // namespace ppclone
