#include "ppclone/registry.hpp"

#include <algorithm>
#include <cctype>

#include "ppclone/errors.hpp"

namespace ppclone {

namespace {

/// Applies one operation of the parent algebra under an element translation.
std::vector<int> map_table(const OperationTable& op, int child_size,
                           const std::vector<int>& child_to_parent,
                           const std::vector<int>& parent_to_child, const std::string& what) {
  int r = op.arity();
  std::vector<int> table;
  std::int64_t cells = 1;
  for (int i = 0; i < r; ++i) cells *= child_size;
  table.reserve(cells);
  std::vector<int> args(r, 0), parent_args(r, 0);
  for (std::int64_t cell = 0; cell < cells; ++cell) {
    for (int i = 0; i < r; ++i) parent_args[i] = child_to_parent[args[i]];
    int res = op.apply(parent_args);
    int child = parent_to_child[res];
    if (child < 0)
      fail(Errc::invariant_violation, what + ": operation '" + op.name() + "' leaves the subset");
    table.push_back(child);
    for (int i = r - 1; i >= 0; --i) {
      if (++args[i] < child_size) break;
      args[i] = 0;
    }
  }
  return table;
}

void check_congruence(const Algebra& a, const Partition& theta) {
  if (theta.size() != a.size())
    fail(Errc::not_a_congruence, "partition size does not match algebra domain");
  for (const auto& op : a.operations()) {
    int r = op.arity();
    if (r == 0) continue;
    std::int64_t cells = 1;
    for (int i = 0; i < r; ++i) cells *= a.size();
    std::vector<int> args(r, 0);
    for (std::int64_t cell = 0; cell < cells; ++cell) {
      int base = op.apply(args);
      for (int p = 0; p < r; ++p) {
        int orig = args[p];
        for (int b = 0; b < a.size(); ++b) {
          if (b == orig || !theta.same(b, orig)) continue;
          args[p] = b;
          if (!theta.same(base, op.apply(args))) {
            args[p] = orig;
            fail(Errc::not_a_congruence,
                 "partition not invariant under operation '" + op.name() + "'");
          }
        }
        args[p] = orig;
      }
      for (int i = r - 1; i >= 0; --i) {
        if (++args[i] < a.size()) break;
        args[i] = 0;
      }
    }
  }
}

}  // namespace

void BasisRegistry::check_name(const std::string& name) {
  if (name.empty() || (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_'))
    fail(Errc::invariant_violation, "invalid name '" + name + "'");
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
      fail(Errc::invariant_violation, "invalid name '" + name + "'");
}

void BasisRegistry::register_sort(Sort sort) {
  check_name(sort.id);
  if (sorts_.count(sort.id)) {
    if (sorts_.at(sort.id).same_construction(sort)) return;
    fail(Errc::duplicate_name, "sort '" + sort.id + "' registered twice");
  }
  sorts_.emplace(sort.id, std::move(sort));
}

void BasisRegistry::register_relation(Relation rel) {
  check_name(rel.name());
  if (relations_.count(rel.name()))
    fail(Errc::duplicate_name, "relation '" + rel.name() + "' registered twice");
  for (int i = 0; i < rel.arity(); ++i) {
    auto it = sorts_.find(rel.sorts()[i]);
    if (it == sorts_.end())
      fail(Errc::unknown_symbol,
           "relation '" + rel.name() + "' uses unregistered sort '" + rel.sorts()[i] + "'");
    int size = it->second.algebra.size();
    for (int t = 0; t < rel.tuple_count(); ++t) {
      int v = rel.tuple(t)[i];
      if (v < 0 || v >= size)
        fail(Errc::element_out_of_range, "tuple entry " + std::to_string(v) +
                                             " outside sort '" + rel.sorts()[i] + "' in '" +
                                             rel.name() + "'");
    }
  }
  relations_.emplace(rel.name(), std::move(rel));
}

void BasisRegistry::register_or_check_relation(const Relation& rel) {
  auto it = relations_.find(rel.name());
  if (it == relations_.end()) {
    register_relation(rel);
    return;
  }
  if (!(it->second == rel))
    fail(Errc::duplicate_name, "relation '" + rel.name() + "' registered with different value");
}

const Sort& BasisRegistry::sort(const std::string& id) const {
  auto it = sorts_.find(id);
  if (it == sorts_.end()) fail(Errc::unknown_symbol, "unknown sort '" + id + "'");
  return it->second;
}

const Relation& BasisRegistry::relation(const std::string& name) const {
  auto it = relations_.find(name);
  if (it == relations_.end()) fail(Errc::unknown_symbol, "unknown relation '" + name + "'");
  return it->second;
}

const Sort& BasisRegistry::ensure_base_sort(const Algebra& algebra) {
  Sort s;
  s.id = algebra.name();
  s.algebra = algebra;
  s.kind = SortKind::base;
  auto it = sorts_.find(s.id);
  if (it != sorts_.end()) {
    if (!it->second.same_construction(s))
      fail(Errc::duplicate_name, "sort '" + s.id + "' registered twice");
    return it->second;
  }
  register_sort(s);
  return sorts_.at(algebra.name());
}

const Sort& BasisRegistry::intern_sort(Sort sort, const char* prefix) {
  for (const auto& [id, existing] : sorts_)
    if (existing.same_construction(sort)) return existing;
  std::string id;
  do {
    id = std::string(prefix) + std::to_string(fresh_counter_++);
  } while (sorts_.count(id));
  sort.id = id;
  sort.algebra = Algebra(id, sort.algebra.domain(), sort.algebra.operations());
  sorts_.emplace(id, std::move(sort));
  return sorts_.at(id);
}

const Sort& BasisRegistry::ensure_subalgebra_sort(const std::string& parent,
                                                  const std::vector<int>& subset) {
  const Sort& p = sort(parent);
  if (subset.empty()) fail(Errc::invariant_violation, "subalgebra subset must be nonempty");
  if (!std::is_sorted(subset.begin(), subset.end()) ||
      std::adjacent_find(subset.begin(), subset.end()) != subset.end())
    fail(Errc::invariant_violation, "subalgebra subset must be strictly ascending");
  if (subset.front() < 0 || subset.back() >= p.algebra.size())
    fail(Errc::element_out_of_range, "subalgebra subset outside parent domain");

  std::vector<int> parent_to_child(p.algebra.size(), -1);
  for (int i = 0; i < static_cast<int>(subset.size()); ++i) parent_to_child[subset[i]] = i;

  int child_size = static_cast<int>(subset.size());
  std::vector<OperationTable> ops;
  for (const auto& op : p.algebra.operations())
    ops.emplace_back(op.name(), op.arity(), child_size,
                     map_table(op, child_size, subset, parent_to_child, "subalgebra sort"));

  Sort s;
  s.algebra = Algebra("tmp", Domain{child_size}, std::move(ops));
  s.kind = SortKind::subalgebra;
  s.parent = parent;
  s.subset = subset;
  return intern_sort(std::move(s), "s");
}

const Sort& BasisRegistry::ensure_quotient_sort(const std::string& parent,
                                                const Partition& partition) {
  const Sort& p = sort(parent);
  check_congruence(p.algebra, partition);

  auto reps = partition.representatives();
  int child_size = static_cast<int>(reps.size());
  std::vector<int> parent_to_child(p.algebra.size());
  for (int x = 0; x < p.algebra.size(); ++x) parent_to_child[x] = partition.block_index(x);

  std::vector<OperationTable> ops;
  for (const auto& op : p.algebra.operations())
    ops.emplace_back(op.name(), op.arity(), child_size,
                     map_table(op, child_size, reps, parent_to_child, "quotient sort"));

  Sort s;
  s.algebra = Algebra("tmp", Domain{child_size}, std::move(ops));
  s.kind = SortKind::quotient;
  s.parent = parent;
  s.partition = partition;
  return intern_sort(std::move(s), "q");
}

const Sort& BasisRegistry::ensure_power_sort(const std::string& parent, int exponent) {
  const Sort& p = sort(parent);
  if (exponent < 1) fail(Errc::invariant_violation, "power exponent must be positive");
  std::int64_t size = 1;
  for (int i = 0; i < exponent; ++i) {
    size *= p.algebra.size();
    if (size > 4096) fail(Errc::domain_too_large, "power sort too large");
  }
  int child_size = static_cast<int>(size);

  std::vector<OperationTable> ops;
  for (const auto& op : p.algebra.operations()) {
    int r = op.arity();
    std::int64_t cells = 1;
    for (int i = 0; i < r; ++i) cells *= child_size;
    if (cells > (std::int64_t{1} << 26)) fail(Errc::domain_too_large, "power sort table too large");
    std::vector<int> table;
    table.reserve(cells);
    std::vector<int> args(r, 0);
    std::vector<std::vector<int>> decoded(r);
    std::vector<int> coord_args(r);
    for (std::int64_t cell = 0; cell < cells; ++cell) {
      for (int i = 0; i < r; ++i) decoded[i] = decode_power(args[i], p.algebra.size(), exponent);
      std::vector<int> result(exponent);
      for (int c = 0; c < exponent; ++c) {
        for (int i = 0; i < r; ++i) coord_args[i] = decoded[i][c];
        result[c] = op.apply(coord_args);
      }
      table.push_back(encode_power(result, p.algebra.size()));
      for (int i = r - 1; i >= 0; --i) {
        if (++args[i] < child_size) break;
        args[i] = 0;
      }
    }
    ops.emplace_back(op.name(), r, child_size, std::move(table));
  }

  Sort s;
  s.algebra = Algebra("tmp", Domain{child_size}, std::move(ops));
  s.kind = SortKind::power;
  s.parent = parent;
  s.exponent = exponent;
  return intern_sort(std::move(s), "pw");
}

const Sort& BasisRegistry::ensure_product_sort(const std::string& left, const std::string& right) {
  const Sort& a = sort(left);
  const Sort& b = sort(right);
  int la = a.algebra.size(), lb = b.algebra.size();
  if (static_cast<std::int64_t>(la) * lb > 4096)
    fail(Errc::domain_too_large, "product sort too large");
  int child_size = la * lb;

  std::vector<OperationTable> ops;
  for (size_t oi = 0; oi < a.algebra.operations().size(); ++oi) {
    const auto& opa = a.algebra.operations()[oi];
    if (oi >= b.algebra.operations().size() ||
        b.algebra.operations()[oi].name() != opa.name() ||
        b.algebra.operations()[oi].arity() != opa.arity())
      fail(Errc::sort_mismatch, "product sorts have mismatched operation signatures");
    const auto& opb = b.algebra.operations()[oi];
    int r = opa.arity();
    std::int64_t cells = 1;
    for (int i = 0; i < r; ++i) cells *= child_size;
    if (cells > (std::int64_t{1} << 26))
      fail(Errc::domain_too_large, "product sort table too large");
    std::vector<int> table;
    table.reserve(cells);
    std::vector<int> args(r, 0), left_args(r), right_args(r);
    for (std::int64_t cell = 0; cell < cells; ++cell) {
      for (int i = 0; i < r; ++i) {
        left_args[i] = args[i] / lb;
        right_args[i] = args[i] % lb;
      }
      table.push_back(opa.apply(left_args) * lb + opb.apply(right_args));
      for (int i = r - 1; i >= 0; --i) {
        if (++args[i] < child_size) break;
        args[i] = 0;
      }
    }
    ops.emplace_back(opa.name(), r, child_size, std::move(table));
  }
  if (a.algebra.operations().size() != b.algebra.operations().size())
    fail(Errc::sort_mismatch, "product sorts have mismatched operation signatures");

  Sort s;
  s.algebra = Algebra("tmp", Domain{child_size}, std::move(ops));
  s.kind = SortKind::product;
  s.parent = left;
  s.parent2 = right;
  return intern_sort(std::move(s), "pr");
}

int BasisRegistry::subalgebra_child_of(const Sort& sub, int parent_element) const {
  auto it = std::lower_bound(sub.subset.begin(), sub.subset.end(), parent_element);
  if (it == sub.subset.end() || *it != parent_element)
    fail(Errc::element_out_of_range, "element not in subalgebra subset");
  return static_cast<int>(it - sub.subset.begin());
}

int BasisRegistry::quotient_class_of(const Sort& quot, int parent_element) const {
  return quot.partition.block_index(parent_element);
}

std::vector<int> decode_power(int value, int base_size, int exponent) {
  std::vector<int> t(exponent);
  for (int i = exponent - 1; i >= 0; --i) {
    t[i] = value % base_size;
    value /= base_size;
  }
  return t;
}

int encode_power(std::span<const int> tuple, int base_size) {
  int v = 0;
  for (int a : tuple) v = v * base_size + a;
  return v;
}

}  // namespace ppclone
