#include "ppclone/polymorphisms.hpp"

#include <algorithm>

#include "ppclone/closure.hpp"
#include "ppclone/errors.hpp"

namespace ppclone {

IdentityScheme IdentityScheme::edge(int k) {
  if (k < 2) fail(Errc::invariant_violation, "edge parameter must be at least 2");
  IdentityScheme s;
  s.kind_ = SchemeKind::edge;
  s.arity_ = k + 1;
  // e(y,y,x,...,x) ~ x ; e(y,x,y,x,...,x) ~ x ; then a single y in each
  // position from the fourth onwards
  Row r1{std::vector<int>(k + 1, 0), 0};
  r1.pattern[0] = r1.pattern[1] = 1;
  s.rows_.push_back(std::move(r1));
  Row r2{std::vector<int>(k + 1, 0), 0};
  r2.pattern[0] = r2.pattern[2] = 1;
  s.rows_.push_back(std::move(r2));
  for (int j = 3; j < k + 1; ++j) {
    Row r{std::vector<int>(k + 1, 0), 0};
    r.pattern[j] = 1;
    s.rows_.push_back(std::move(r));
  }
  return s;
}

IdentityScheme IdentityScheme::maltsev() {
  IdentityScheme s;
  s.kind_ = SchemeKind::maltsev;
  s.arity_ = 3;
  s.rows_.push_back(Row{{0, 0, 1}, 1});  // m(x,x,y) ~ y
  s.rows_.push_back(Row{{1, 0, 0}, 1});  // m(y,x,x) ~ y
  return s;
}

IdentityScheme IdentityScheme::near_unanimity(int arity) {
  if (arity < 3) fail(Errc::invariant_violation, "near-unanimity arity must be at least 3");
  IdentityScheme s;
  s.kind_ = arity == 3 ? SchemeKind::majority : SchemeKind::near_unanimity;
  s.arity_ = arity;
  for (int j = 0; j < arity; ++j) {
    Row r{std::vector<int>(arity, 0), 0};
    r.pattern[j] = 1;
    s.rows_.push_back(std::move(r));
  }
  return s;
}

IdentityScheme IdentityScheme::majority() { return near_unanimity(3); }

std::string IdentityScheme::describe() const {
  switch (kind_) {
    case SchemeKind::edge: return "edge:" + std::to_string(arity_ - 1);
    case SchemeKind::maltsev: return "maltsev";
    case SchemeKind::majority: return "majority";
    case SchemeKind::near_unanimity: return "nu:" + std::to_string(arity_);
  }
  return "?";
}

CompatibilityResult is_compatible(const OperationTable& op, const Relation& R,
                                  const BasisRegistry& basis) {
  for (const auto& s : R.sorts())
    if (s != R.sorts()[0])
      fail(Errc::sort_mismatch, "is_compatible requires a single-sorted relation");
  if (basis.sort_size(R.sorts()[0]) != op.domain_size())
    fail(Errc::sort_mismatch, "relation sort does not match the operation domain");

  int r = op.arity();
  int n = R.arity();
  int m = R.tuple_count();
  CompatibilityResult out;
  if (m == 0 || r == 0) {
    if (r == 0 && m >= 0) {
      // a constant must itself lie in R coordinate-wise
      std::vector<int> image(n, op.apply({}));
      if (!R.contains(image)) {
        out.compatible = false;
        out.witness_image = image;
      }
    }
    return out;
  }
  std::vector<int> sel(r, 0);
  std::vector<int> image(n);
  std::vector<int> args(r);
  while (true) {
    for (int c = 0; c < n; ++c) {
      for (int i = 0; i < r; ++i) args[i] = R.tuple(sel[i])[c];
      image[c] = op.apply(args);
    }
    if (!R.contains(image)) {
      out.compatible = false;
      for (int i = 0; i < r; ++i) {
        auto t = R.tuple(sel[i]);
        out.witness_rows.emplace_back(t.begin(), t.end());
      }
      out.witness_image = image;
      return out;
    }
    int pos = r - 1;
    while (pos >= 0 && ++sel[pos] == m) sel[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

PolymorphismResult is_polymorphism(const OperationTable& op, const BasisRegistry& basis) {
  PolymorphismResult out;
  for (const auto& [name, rel] : basis.relations()) {
    CompatibilityResult c = is_compatible(op, rel, basis);
    if (!c.compatible) {
      out.polymorphism = false;
      out.failing_relation = name;
      out.detail = std::move(c);
      return out;
    }
  }
  return out;
}

IdentityCheck satisfies_identity_scheme(const OperationTable& op, const IdentityScheme& s) {
  if (op.arity() != s.arity())
    fail(Errc::arity_mismatch, "operation arity does not match the identity scheme");
  int d = op.domain_size();
  std::vector<int> args(op.arity());
  for (int x = 0; x < d; ++x) {
    for (int y = 0; y < d; ++y) {
      for (size_t ri = 0; ri < s.rows().size(); ++ri) {
        const auto& row = s.rows()[ri];
        for (int i = 0; i < op.arity(); ++i) args[i] = row.pattern[i] ? y : x;
        int want = row.result ? y : x;
        if (op.apply(args) != want)
          return IdentityCheck{false, static_cast<int>(ri), x, y};
      }
    }
  }
  return IdentityCheck{};
}

namespace {

class TermSearch {
 public:
  TermSearch(const BasisRegistry& basis, const IdentityScheme& scheme, std::int64_t budget)
      : basis_(basis), scheme_(scheme), budget_(budget) {
    if (basis.sorts().empty()) fail(Errc::invariant_violation, "find_term needs a sort");
    sort_id_ = basis.sorts().begin()->first;
    for (const auto& [name, rel] : basis.relations())
      for (const auto& s : rel.sorts())
        if (s != sort_id_) fail(Errc::sort_mismatch, "find_term requires a single-sorted basis");
    if (basis.sorts().size() > 1 && !basis.relations().empty())
      sort_id_ = basis.relations().begin()->second.sorts()[0];
    d_ = basis.sort_size(sort_id_);
    arity_ = scheme.arity();
    cells_ = 1;
    for (int i = 0; i < arity_; ++i) cells_ *= d_;
    table_.assign(cells_, -1);
  }

  FindTermResult run() {
    FindTermResult res;
    if (!force_identities()) {
      res.status = SearchStatus::none;
      res.nodes = nodes_;
      return res;
    }
    if (!partial_compatible()) {
      res.status = SearchStatus::none;
      res.nodes = nodes_;
      return res;
    }
    for (std::int64_t c = 0; c < cells_; ++c)
      if (table_[c] < 0) free_cells_.push_back(c);
    int outcome = dfs(0);
    res.nodes = nodes_;
    if (outcome == 1) {
      res.status = SearchStatus::found;
      res.table = OperationTable("term", arity_, d_, table_);
    } else if (outcome == 0) {
      res.status = SearchStatus::none;
    } else {
      res.status = SearchStatus::exhausted;
    }
    return res;
  }

 private:
  bool force_identities() {
    std::vector<int> args(arity_);
    for (int x = 0; x < d_; ++x)
      for (int y = 0; y < d_; ++y)
        for (const auto& row : scheme_.rows()) {
          std::int64_t idx = 0;
          for (int i = 0; i < arity_; ++i) idx = idx * d_ + (row.pattern[i] ? y : x);
          int want = row.result ? y : x;
          if (table_[idx] >= 0 && table_[idx] != want) return false;
          table_[idx] = want;
        }
    return true;
  }

  /// Checks every argument selection whose image is fully determined.
  bool partial_compatible() {
    for (const auto& [name, rel] : basis_.relations()) {
      int n = rel.arity();
      int m = rel.tuple_count();
      if (m == 0) continue;
      std::vector<int> sel(arity_, 0);
      std::vector<int> image(n);
      while (true) {
        bool determined = true;
        for (int c = 0; c < n && determined; ++c) {
          std::int64_t idx = 0;
          for (int i = 0; i < arity_; ++i) idx = idx * d_ + rel.tuple(sel[i])[c];
          int v = table_[idx];
          if (v < 0)
            determined = false;
          else
            image[c] = v;
        }
        if (determined && !rel.contains(image)) return false;
        int pos = arity_ - 1;
        while (pos >= 0 && ++sel[pos] == m) sel[pos--] = 0;
        if (pos < 0) break;
      }
    }
    return true;
  }

  // 1 = found, 0 = exhausted subtree (no solution), -1 = budget
  int dfs(size_t next) {
    if (next == free_cells_.size()) return 1;
    std::int64_t cell = free_cells_[next];
    for (int v = 0; v < d_; ++v) {
      if (++nodes_ > budget_) return -1;
      table_[cell] = v;
      if (partial_compatible()) {
        int sub = dfs(next + 1);
        if (sub != 0) return sub;
      }
    }
    table_[cell] = -1;
    return 0;
  }

  const BasisRegistry& basis_;
  const IdentityScheme& scheme_;
  std::int64_t budget_;
  std::string sort_id_;
  int d_ = 0;
  int arity_ = 0;
  std::int64_t cells_ = 0;
  std::vector<int> table_;
  std::vector<std::int64_t> free_cells_;
  std::int64_t nodes_ = 0;
};

}  // namespace

FindTermResult find_term(const BasisRegistry& basis, const IdentityScheme& scheme,
                         std::int64_t budget) {
  return TermSearch(basis, scheme, budget).run();
}

std::vector<OperationTable> term_operations(const Algebra& a, int arity, std::int64_t budget) {
  std::int64_t args = 1;
  for (int i = 0; i < arity; ++i) args *= a.size();
  // a term operation is a point of A^(A^arity); close the projections
  ProductContext ctx = ProductContext::from_power(a, static_cast<int>(args));
  std::vector<std::vector<int>> gens;
  for (int p = 0; p < arity; ++p) {
    std::vector<int> proj(args);
    for (std::int64_t t = 0; t < args; ++t) {
      std::int64_t rest = t;
      int digit = 0;
      for (int i = arity - 1; i >= 0; --i) {
        int dv = static_cast<int>(rest % a.size());
        rest /= a.size();
        if (i == p) digit = dv;
      }
      proj[t] = digit;
    }
    gens.push_back(std::move(proj));
  }
  auto funcs = close_tuples(ctx, gens);
  if (static_cast<std::int64_t>(funcs.size()) * args > budget)
    fail(Errc::budget_exhausted, "term clone too large");
  std::vector<OperationTable> out;
  out.reserve(funcs.size());
  for (auto& f : funcs) out.emplace_back("term", arity, a.size(), std::move(f));
  std::sort(out.begin(), out.end(),
            [](const OperationTable& x, const OperationTable& y) { return x.table() < y.table(); });
  return out;
}

EdgeTermResult find_edge_term_of_algebra(const Algebra& a, int max_k, std::int64_t budget) {
  for (int k = 2; k <= max_k; ++k) {
    IdentityScheme scheme = IdentityScheme::edge(k);
    auto terms = term_operations(a, k + 1, budget);
    for (const auto& t : terms) {
      if (satisfies_identity_scheme(t, scheme).satisfied) {
        EdgeTermResult res;
        res.found = true;
        res.k = k;
        res.term = t;
        return res;
      }
    }
  }
  return EdgeTermResult{};
}

}  // namespace ppclone
