#include "ppclone/closure.hpp"

#include <algorithm>
#include <unordered_set>

#include "ppclone/errors.hpp"

namespace ppclone {

ProductContext ProductContext::from_sorts(const BasisRegistry& basis,
                                          std::vector<std::string> sort_ids) {
  ProductContext ctx;
  ctx.sort_ids_ = std::move(sort_ids);
  if (ctx.sort_ids_.empty()) fail(Errc::invariant_violation, "empty product context");
  for (const auto& id : ctx.sort_ids_) {
    const Algebra& a = basis.sort_algebra(id);
    int ai = -1;
    for (size_t i = 0; i < ctx.algebras_.size(); ++i)
      if (ctx.algebras_[i] == a) {
        ai = static_cast<int>(i);
        break;
      }
    if (ai < 0) {
      ai = static_cast<int>(ctx.algebras_.size());
      ctx.algebras_.push_back(a);
    }
    ctx.alg_of_.push_back(ai);
    ctx.dims_.push_back(a.size());
    ctx.space_ *= a.size();
  }
  const Algebra& first = ctx.algebras_.front();
  for (const auto& op : first.operations()) {
    ctx.op_names_.push_back(op.name());
    ctx.op_arities_.push_back(op.arity());
  }
  for (const auto& a : ctx.algebras_) {
    if (a.operations().size() != ctx.op_names_.size())
      fail(Errc::sort_mismatch, "sorts have different operation signatures");
    for (size_t i = 0; i < ctx.op_names_.size(); ++i)
      if (a.operations()[i].name() != ctx.op_names_[i] ||
          a.operations()[i].arity() != ctx.op_arities_[i])
        fail(Errc::sort_mismatch, "sorts have different operation signatures");
  }
  return ctx;
}

ProductContext ProductContext::from_power(const Algebra& algebra, int n) {
  ProductContext ctx;
  ctx.sort_ids_.assign(n, algebra.name());
  ctx.algebras_.push_back(algebra);
  ctx.alg_of_.assign(n, 0);
  ctx.dims_.assign(n, algebra.size());
  for (int i = 0; i < n; ++i) ctx.space_ *= algebra.size();
  for (const auto& op : algebra.operations()) {
    ctx.op_names_.push_back(op.name());
    ctx.op_arities_.push_back(op.arity());
  }
  return ctx;
}

ProductContext ProductContext::for_relation(const BasisRegistry& basis, const Relation& rel) {
  return from_sorts(basis, rel.sorts());
}

void ProductContext::apply(int op, std::span<const int* const> args, int* result) const {
  int r = op_arities_[op];
  int buf[8];
  for (int c = 0; c < n(); ++c) {
    for (int i = 0; i < r; ++i) buf[i] = args[i][c];
    result[c] = coord_op(op, c).apply({buf, static_cast<size_t>(r)});
  }
}

std::int64_t ProductContext::encode(std::span<const int> tuple) const {
  std::int64_t v = 0;
  for (int c = 0; c < n(); ++c) v = v * dims_[c] + tuple[c];
  return v;
}

void ProductContext::decode(std::int64_t value, int* tuple) const {
  for (int c = n() - 1; c >= 0; --c) {
    tuple[c] = static_cast<int>(value % dims_[c]);
    value /= dims_[c];
  }
}

namespace {

/// Coordinate-split operation tables over encoded indices: an op maps
/// (hi,lo)-pairs via two dense lookup tables. Falls back to decode/apply
/// when a table would be oversized.
struct IndexedOps {
  struct Op {
    int arity;
    bool fast = false;
    std::vector<int> hi_table;  // size hi_space^arity
    std::vector<int> lo_table;  // size lo_space^arity
  };
  std::int64_t hi_space = 1, lo_space = 1;
  std::vector<Op> ops;
  const ProductContext* ctx;

  explicit IndexedOps(const ProductContext& c) : ctx(&c) {
    // balanced split of coordinates into prefix/suffix
    int split = 0;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::int64_t pre = 1;
    std::vector<std::int64_t> prefix(c.n() + 1, 1);
    for (int i = 0; i < c.n(); ++i) prefix[i + 1] = prefix[i] * c.dim(i);
    for (int s = 0; s <= c.n(); ++s) {
      std::int64_t hi = prefix[s], lo = c.space() / prefix[s];
      std::int64_t m = std::max(hi, lo);
      if (m < best) {
        best = m;
        split = s;
      }
    }
    hi_space = prefix[split];
    lo_space = c.space() / hi_space;

    for (int oi = 0; oi < c.op_count(); ++oi) {
      Op op;
      op.arity = c.op_arity(oi);
      std::int64_t hi_cells = 1, lo_cells = 1;
      bool ok = op.arity >= 1 && op.arity <= 3;
      for (int i = 0; ok && i < op.arity; ++i) {
        hi_cells *= hi_space;
        lo_cells *= lo_space;
        if (hi_cells > (std::int64_t{1} << 22) || lo_cells > (std::int64_t{1} << 22)) ok = false;
      }
      if (ok) {
        op.fast = true;
        op.hi_table = build_half(oi, 0, split, hi_space, hi_cells);
        op.lo_table = build_half(oi, split, c.n(), lo_space, lo_cells);
      }
      ops.push_back(std::move(op));
    }
  }

  std::vector<int> build_half(int oi, int c_begin, int c_end, std::int64_t half_space,
                              std::int64_t cells) {
    int r = ctx->op_arity(oi);
    int m = c_end - c_begin;
    std::vector<int> table(cells);
    if (m == 0) {  // single cell
      table.assign(1, 0);
      return table;
    }
    std::vector<std::vector<int>> dec(r, std::vector<int>(m));
    std::vector<std::int64_t> args(r, 0);
    std::vector<int> buf(r);
    for (std::int64_t cell = 0; cell < cells; ++cell) {
      std::int64_t rest = cell;
      for (int i = r - 1; i >= 0; --i) {
        args[i] = rest % half_space;
        rest /= half_space;
      }
      for (int i = 0; i < r; ++i) {
        std::int64_t v = args[i];
        for (int c = c_end - 1; c >= c_begin; --c) {
          dec[i][c - c_begin] = static_cast<int>(v % ctx->dim(c));
          v /= ctx->dim(c);
        }
      }
      std::int64_t res = 0;
      for (int c = c_begin; c < c_end; ++c) {
        for (int i = 0; i < r; ++i) buf[i] = dec[i][c - c_begin];
        res = res * ctx->dim(c) + ctx->coord_op(oi, c).apply({buf.data(), buf.size()});
      }
      table[cell] = static_cast<int>(res);
    }
    return table;
  }

  std::int64_t apply(int oi, std::span<const std::int64_t> args) const {
    const Op& op = ops[oi];
    if (op.fast) {
      std::int64_t hi_idx = 0, lo_idx = 0;
      for (int i = 0; i < op.arity; ++i) {
        hi_idx = hi_idx * hi_space + args[i] / lo_space;
        lo_idx = lo_idx * lo_space + args[i] % lo_space;
      }
      return static_cast<std::int64_t>(op.hi_table[hi_idx]) * lo_space + op.lo_table[lo_idx];
    }
    int n = ctx->n();
    std::vector<std::vector<int>> dec(op.arity, std::vector<int>(n));
    for (int i = 0; i < op.arity; ++i) ctx->decode(args[i], dec[i].data());
    std::vector<const int*> ptrs(op.arity);
    for (int i = 0; i < op.arity; ++i) ptrs[i] = dec[i].data();
    std::vector<int> out(n);
    ctx->apply(oi, {ptrs.data(), ptrs.size()}, out.data());
    return ctx->encode(out);
  }
};

}  // namespace

std::vector<std::int64_t> close_indexed(const ProductContext& ctx,
                                        std::vector<std::int64_t> generators) {
  if (ctx.space() > kIndexedSpaceLimit)
    fail(Errc::domain_too_large, "indexed closure beyond space limit");
  IndexedOps iops(ctx);
  std::vector<bool> member(ctx.space(), false);
  std::vector<std::int64_t> list;
  list.reserve(generators.size());
  for (auto g : generators) {
    if (!member[g]) {
      member[g] = true;
      list.push_back(g);
    }
  }
  // nullary operations contribute their constants unconditionally
  for (int oi = 0; oi < ctx.op_count(); ++oi) {
    if (ctx.op_arity(oi) != 0) continue;
    std::vector<int> out(ctx.n());
    ctx.apply(oi, {}, out.data());
    std::int64_t v = ctx.encode(out);
    if (!member[v]) {
      member[v] = true;
      list.push_back(v);
    }
  }
  if (list.empty()) return {};

  size_t old = 0;
  size_t cur = list.size();
  std::int64_t args[3];
  while (old < cur) {
    for (int oi = 0; oi < ctx.op_count(); ++oi) {
      int r = ctx.op_arity(oi);
      if (r == 0) continue;
      if (r == 1) {
        for (size_t i = old; i < cur; ++i) {
          args[0] = list[i];
          std::int64_t v = iops.apply(oi, {args, 1});
          if (!member[v]) {
            member[v] = true;
            list.push_back(v);
          }
        }
      } else if (r == 2) {
        for (size_t i = 0; i < cur; ++i) {
          size_t jstart = i < old ? old : 0;
          args[0] = list[i];
          for (size_t j = jstart; j < cur; ++j) {
            args[1] = list[j];
            std::int64_t v = iops.apply(oi, {args, 2});
            if (!member[v]) {
              member[v] = true;
              list.push_back(v);
            }
          }
        }
      } else if (r == 3) {
        for (size_t i = 0; i < cur; ++i) {
          args[0] = list[i];
          for (size_t j = 0; j < cur; ++j) {
            args[1] = list[j];
            size_t kstart = (i < old && j < old) ? old : 0;
            for (size_t k = kstart; k < cur; ++k) {
              args[2] = list[k];
              std::int64_t v = iops.apply(oi, {args, 3});
              if (!member[v]) {
                member[v] = true;
                list.push_back(v);
              }
            }
          }
        }
      } else {
        // generic arity: enumerate argument vectors with at least one index
        // in the fresh range [old, cur)
        std::vector<std::int64_t> a(r);
        std::vector<size_t> idx(r, 0);
        while (true) {
          bool fresh = false;
          for (int i = 0; i < r; ++i)
            if (idx[i] >= old) fresh = true;
          if (fresh) {
            for (int i = 0; i < r; ++i) a[i] = list[idx[i]];
            std::int64_t v = iops.apply(oi, {a.data(), a.size()});
            if (!member[v]) {
              member[v] = true;
              list.push_back(v);
            }
          }
          int pos = r - 1;
          while (pos >= 0 && ++idx[pos] == cur) idx[pos--] = 0;
          if (pos < 0) break;
        }
      }
    }
    old = cur;
    cur = list.size();
  }
  std::sort(list.begin(), list.end());
  return list;
}

namespace {

struct TupleHash {
  size_t operator()(const std::vector<int>& t) const {
    size_t seed = t.size();
    for (int v : t) seed ^= static_cast<size_t>(v) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    return seed;
  }
};

ClosureResult close_generic(const ProductContext& ctx,
                            const std::vector<std::vector<int>>& generators,
                            bool want_derivation) {
  ClosureResult res;
  std::unordered_map<std::vector<int>, int, TupleHash> index;
  auto add = [&](std::vector<int> t, DerivationStep step) -> bool {
    auto [it, fresh] = index.try_emplace(t, static_cast<int>(res.elements.size()));
    if (!fresh) return false;
    res.elements.push_back(std::move(t));
    if (want_derivation) res.steps.push_back(std::move(step));
    return true;
  };
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != ctx.n())
      fail(Errc::invariant_violation, "generator arity mismatch");
    for (int c = 0; c < ctx.n(); ++c)
      if (g[c] < 0 || g[c] >= ctx.dim(c))
        fail(Errc::element_out_of_range, "generator entry outside sort domain");
    add(g, DerivationStep{});
  }
  for (int oi = 0; oi < ctx.op_count(); ++oi) {
    if (ctx.op_arity(oi) != 0) continue;
    std::vector<int> out(ctx.n());
    ctx.apply(oi, {}, out.data());
    DerivationStep st;
    st.op = oi;
    add(std::move(out), std::move(st));
  }

  size_t old = 0, cur = res.elements.size();
  while (old < cur) {
    for (int oi = 0; oi < ctx.op_count(); ++oi) {
      int r = ctx.op_arity(oi);
      if (r == 0) continue;
      std::vector<size_t> idx(r, 0);
      std::vector<const int*> ptrs(r);
      std::vector<int> out(ctx.n());
      while (true) {
        bool fresh = false;
        for (int i = 0; i < r; ++i)
          if (idx[i] >= old) fresh = true;
        if (fresh) {
          for (int i = 0; i < r; ++i) ptrs[i] = res.elements[idx[i]].data();
          ctx.apply(oi, {ptrs.data(), ptrs.size()}, out.data());
          DerivationStep st;
          st.op = oi;
          if (want_derivation) {
            st.args.reserve(r);
            for (int i = 0; i < r; ++i) st.args.push_back(static_cast<int>(idx[i]));
          }
          add(out, std::move(st));
        }
        int pos = r - 1;
        while (pos >= 0 && ++idx[pos] == cur) idx[pos--] = 0;
        if (pos < 0) break;
      }
    }
    old = cur;
    cur = res.elements.size();
  }
  return res;
}

}  // namespace

ClosureResult close_with_derivation(const ProductContext& ctx,
                                    const std::vector<std::vector<int>>& generators) {
  return close_generic(ctx, generators, true);
}

std::vector<std::vector<int>> close_tuples(const ProductContext& ctx,
                                           const std::vector<std::vector<int>>& generators) {
  return close_generic(ctx, generators, false).elements;
}

std::vector<std::int64_t> encode_all(const ProductContext& ctx, const Relation& rel) {
  std::vector<std::int64_t> out;
  out.reserve(rel.tuple_count());
  for (int i = 0; i < rel.tuple_count(); ++i) out.push_back(ctx.encode(rel.tuple(i)));
  return out;
}

Relation relation_from_indices(const ProductContext& ctx, std::vector<std::int64_t> indices,
                               const std::string& name) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  std::vector<int> flat(indices.size() * ctx.n());
  for (size_t i = 0; i < indices.size(); ++i) ctx.decode(indices[i], flat.data() + i * ctx.n());
  return Relation::from_sorted(name, ctx.n(), ctx.sort_ids(), std::move(flat));
}

Relation close_relation(const BasisRegistry& basis, const Relation& rel,
                        const std::string& result_name) {
  ProductContext ctx = ProductContext::for_relation(basis, rel);
  if (ctx.space() <= kIndexedSpaceLimit) {
    auto closed = close_indexed(ctx, encode_all(ctx, rel));
    return relation_from_indices(ctx, std::move(closed), result_name);
  }
  auto closed = close_tuples(ctx, rel.tuples());
  return Relation(result_name, rel.arity(), rel.sorts(), std::move(closed));
}

bool is_closed(const BasisRegistry& basis, const Relation& rel) {
  return close_relation(basis, rel, rel.name()).same_tuples(rel);
}

}  // namespace ppclone
