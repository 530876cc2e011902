#include "ppclone/analysis.hpp"

#include <algorithm>
#include <map>

#include "ppclone/closure.hpp"
#include "ppclone/errors.hpp"

namespace ppclone {

namespace {

void check_coords(const Relation& R, const std::vector<int>& coords) {
  if (coords.empty()) fail(Errc::bad_coordinate_set, "coordinate set must be nonempty");
  for (size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] < 0 || coords[i] >= R.arity())
      fail(Errc::bad_coordinate_set, "coordinate outside 1..n");
    if (i > 0 && coords[i] <= coords[i - 1])
      fail(Errc::bad_coordinate_set, "coordinates must be strictly increasing");
  }
}

void check_invariant(const BasisRegistry& basis, const Relation& R, const char* who) {
  if (!is_closed(basis, R))
    fail(Errc::not_invariant, std::string(who) + ": relation '" + R.name() +
                                  "' is not invariant under its sort algebras");
}

}  // namespace

Relation projection(const Relation& R, const std::vector<int>& coords,
                    const std::string& name) {
  check_coords(R, coords);
  int m = static_cast<int>(coords.size());
  std::vector<std::string> sorts;
  sorts.reserve(m);
  for (int c : coords) sorts.push_back(R.sorts()[c]);
  std::vector<std::vector<int>> tuples;
  tuples.reserve(R.tuple_count());
  for (int t = 0; t < R.tuple_count(); ++t) {
    auto tup = R.tuple(t);
    std::vector<int> p(m);
    for (int i = 0; i < m; ++i) p[i] = tup[coords[i]];
    tuples.push_back(std::move(p));
  }
  return Relation(name, m, std::move(sorts), std::move(tuples));
}

PpCheck has_parallelogram_property(const Relation& R) {
  int n = R.arity();
  if (n > kParallelogramArityLimit)
    fail(Errc::arity_too_large, "parallelogram check limited to arity " +
                                    std::to_string(kParallelogramArityLimit));
  PpCheck out;
  if (n < 2) return out;  // no proper splits
  for (unsigned mask = 1; mask < (1u << n) - 1; ++mask) {
    std::vector<int> I, J;
    for (int i = 0; i < n; ++i)
      ((mask >> i) & 1 ? I : J).push_back(i);
    // group complement-side neighborhoods by I-side value
    std::map<std::vector<int>, std::vector<std::vector<int>>> nb;
    for (int t = 0; t < R.tuple_count(); ++t) {
      auto tup = R.tuple(t);
      std::vector<int> a(I.size()), c(J.size());
      for (size_t i = 0; i < I.size(); ++i) a[i] = tup[I[i]];
      for (size_t j = 0; j < J.size(); ++j) c[j] = tup[J[j]];
      nb[std::move(a)].push_back(std::move(c));
    }
    for (auto& [a, v] : nb) std::sort(v.begin(), v.end());
    for (auto it1 = nb.begin(); it1 != nb.end(); ++it1) {
      for (auto it2 = nb.begin(); it2 != nb.end(); ++it2) {
        if (it1 == it2) continue;
        const auto& na = it1->second;
        const auto& nbv = it2->second;
        std::vector<std::vector<int>> shared, only_a;
        std::set_intersection(na.begin(), na.end(), nbv.begin(), nbv.end(),
                              std::back_inserter(shared));
        if (shared.empty()) continue;
        std::set_difference(na.begin(), na.end(), nbv.begin(), nbv.end(),
                            std::back_inserter(only_a));
        if (only_a.empty()) continue;
        out.holds = false;
        PpWitness w;
        w.split = I;
        w.a = it1->first;
        w.b = it2->first;
        w.c = shared.front();
        w.d = only_a.front();
        out.witness = std::move(w);
        return out;
      }
    }
  }
  return out;
}

SignatureSet signature(const Relation& R) {
  SignatureSet sig;
  int n = R.arity();
  int m = R.tuple_count();
  for (int i = 0; i < n; ++i) {
    // tuples are sorted, so equal length-i prefixes are contiguous
    int start = 0;
    while (start < m) {
      int end = start + 1;
      while (end < m &&
             std::equal(R.tuple(end).begin(), R.tuple(end).begin() + i, R.tuple(start).begin()))
        ++end;
      std::vector<int> vals;
      for (int t = start; t < end; ++t) vals.push_back(R.tuple(t)[i]);
      std::sort(vals.begin(), vals.end());
      vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
      for (int a : vals)
        for (int b : vals) sig.triples.insert({i, a, b});
      start = end;
    }
  }
  return sig;
}

bool depends_on(const BasisRegistry& basis, const Relation& R, int coord) {
  if (coord < 0 || coord >= R.arity()) fail(Errc::bad_coordinate, "coordinate outside 1..n");
  int size = basis.sort_size(R.sorts()[coord]);
  std::vector<int> probe;
  for (int t = 0; t < R.tuple_count(); ++t) {
    auto tup = R.tuple(t);
    probe.assign(tup.begin(), tup.end());
    for (int a = 0; a < size; ++a) {
      probe[coord] = a;
      if (!R.contains(probe)) return true;
    }
  }
  return false;
}

bool is_subdirect(const BasisRegistry& basis, const Relation& R) {
  for (int i = 0; i < R.arity(); ++i) {
    Relation p = projection(R, {i}, "p");
    if (p.tuple_count() != basis.sort_size(R.sorts()[i])) return false;
  }
  return true;
}

Algebra induced_algebra(const BasisRegistry& basis, const Relation& R) {
  check_invariant(basis, R, "induced_algebra");
  ProductContext ctx = ProductContext::for_relation(basis, R);
  int m = R.tuple_count();
  std::vector<OperationTable> ops;
  for (int oi = 0; oi < ctx.op_count(); ++oi) {
    int r = ctx.op_arity(oi);
    std::int64_t cells = 1;
    for (int i = 0; i < r; ++i) cells *= m;
    if (cells > (std::int64_t{1} << 24)) fail(Errc::domain_too_large, "induced algebra too large");
    std::vector<int> table;
    table.reserve(cells);
    std::vector<int> sel(r, 0);
    std::vector<const int*> ptrs(r);
    std::vector<int> image(R.arity());
    for (std::int64_t cell = 0; cell < cells; ++cell) {
      for (int i = 0; i < r; ++i) ptrs[i] = R.tuple(sel[i]).data();
      ctx.apply(oi, {ptrs.data(), ptrs.size()}, image.data());
      int idx = R.index_of(image);
      if (idx < 0) fail(Errc::not_invariant, "relation not closed in induced_algebra");
      table.push_back(idx);
      for (int i = r - 1; i >= 0; --i) {
        if (++sel[i] < m) break;
        sel[i] = 0;
      }
    }
    ops.emplace_back(ctx.op_name(oi), r, m, std::move(table));
  }
  return Algebra(R.name() + "_ind", Domain{std::max(m, 1)}, std::move(ops));
}

CriticalReport cover_and_keys(const BasisRegistry& basis, const Relation& R) {
  check_invariant(basis, R, "cover_and_keys");
  ProductContext ctx = ProductContext::for_relation(basis, R);
  if (ctx.space() > kIndexedSpaceLimit)
    fail(Errc::domain_too_large, "cover_and_keys beyond space limit");
  std::int64_t N = ctx.space();

  std::vector<bool> in_r(N, false);
  for (auto v : encode_all(ctx, R)) in_r[v] = true;
  std::vector<bool> in_cover(N, true);
  std::int64_t cover_extra = N - R.tuple_count();

  auto base = encode_all(ctx, R);
  for (std::int64_t t = 0; t < N && cover_extra > 0; ++t) {
    if (in_r[t]) continue;
    auto gens = base;
    gens.push_back(t);
    auto closed = close_indexed(ctx, std::move(gens));
    // intersect
    size_t pos = 0;
    for (std::int64_t v = 0; v < N; ++v) {
      while (pos < closed.size() && closed[pos] < v) ++pos;
      bool member = pos < closed.size() && closed[pos] == v;
      if (in_cover[v] && !member) {
        in_cover[v] = false;
        if (!in_r[v]) --cover_extra;
      }
    }
  }

  CriticalReport rep;
  std::vector<std::int64_t> cover_idx;
  for (std::int64_t v = 0; v < N; ++v)
    if (in_cover[v] || in_r[v]) cover_idx.push_back(v);
  rep.cover = relation_from_indices(ctx, cover_idx, R.name() + "_cover");
  for (std::int64_t v = 0; v < N; ++v)
    if (in_cover[v] && !in_r[v]) {
      std::vector<int> t(ctx.n());
      ctx.decode(v, t.data());
      rep.key_tuples.push_back(std::move(t));
    }
  for (int i = 0; i < R.arity(); ++i)
    if (!depends_on(basis, R, i)) rep.dummy_coordinates.push_back(i);
  rep.is_critical = !rep.key_tuples.empty() && rep.dummy_coordinates.empty();
  return rep;
}

Linkedness linkedness_congruence(const BasisRegistry& basis, const Relation& R,
                                 const std::vector<int>& coords, bool allow_no_pp) {
  check_coords(R, coords);
  if (static_cast<int>(coords.size()) >= R.arity())
    fail(Errc::bad_coordinate_set, "linkedness needs a proper coordinate subset");
  bool pp = has_parallelogram_property(R).holds;
  if (!pp && !allow_no_pp)
    fail(Errc::no_parallelogram_property,
         "linkedness congruence requires the parallelogram property");

  Linkedness out;
  out.projection = projection(R, coords, R.name() + "_proj");
  int m = out.projection.tuple_count();
  std::vector<int> comp;
  for (int i = 0; i < R.arity(); ++i)
    if (!std::binary_search(coords.begin(), coords.end(), i)) comp.push_back(i);

  UnionFind uf(m);
  std::map<std::vector<int>, int> first_witness;
  std::vector<std::pair<int, std::vector<int>>> links;  // (proj index, complement value)
  for (int t = 0; t < R.tuple_count(); ++t) {
    auto tup = R.tuple(t);
    std::vector<int> a(coords.size()), c(comp.size());
    for (size_t i = 0; i < coords.size(); ++i) a[i] = tup[coords[i]];
    for (size_t j = 0; j < comp.size(); ++j) c[j] = tup[comp[j]];
    int idx = out.projection.index_of(a);
    auto [it, fresh] = first_witness.try_emplace(c, idx);
    if (!fresh) uf.merge(it->second, idx);
    links.emplace_back(idx, std::move(c));
  }
  out.partition = uf.to_partition();

  if (!pp) {
    // diagnostic: without PP the one-step linking may fail transitivity
    std::map<std::vector<int>, std::set<int>> direct;  // complement -> proj indices
    for (auto& [idx, c] : links) direct[c].insert(idx);
    for (int u = 0; u < m; ++u)
      for (int v = u + 1; v < m; ++v) {
        if (!out.partition.same(u, v)) continue;
        bool linked = false;
        for (auto& [c, s] : direct)
          if (s.count(u) && s.count(v)) {
            linked = true;
            break;
          }
        if (!linked)
          fail(Errc::no_parallelogram_property,
               "NotTransitiveWithoutPP: one-step linkedness is not transitive");
      }
  }

  // the partition must be invariant under the projection's algebra
  if (m > 0) {
    Algebra ind = induced_algebra(basis, out.projection);
    if (!is_congruence(ind, out.partition))
      fail(Errc::not_invariant, "linkedness partition is not a congruence of the projection");
  }
  return out;
}

Relation parallelogram_closure(const BasisRegistry& basis, const Relation& R,
                               const std::string& name) {
  check_invariant(basis, R, "parallelogram_closure");
  Relation X = R.renamed(name);
  int n = R.arity();
  if (n > kParallelogramArityLimit) fail(Errc::arity_too_large, "arity beyond split guard");
  while (true) {
    PpCheck chk = has_parallelogram_property(X);
    if (chk.holds) return X;
    // collect every missing completion across every split, then regenerate
    std::vector<std::vector<int>> additions;
    for (unsigned mask = 1; mask < (1u << n) - 1; ++mask) {
      std::vector<int> I, J;
      for (int i = 0; i < n; ++i)
        ((mask >> i) & 1 ? I : J).push_back(i);
      std::map<std::vector<int>, std::vector<std::vector<int>>> nb;
      for (int t = 0; t < X.tuple_count(); ++t) {
        auto tup = X.tuple(t);
        std::vector<int> a(I.size()), c(J.size());
        for (size_t i = 0; i < I.size(); ++i) a[i] = tup[I[i]];
        for (size_t j = 0; j < J.size(); ++j) c[j] = tup[J[j]];
        nb[std::move(a)].push_back(std::move(c));
      }
      for (auto& [a, v] : nb) std::sort(v.begin(), v.end());
      for (auto& [a, na] : nb)
        for (auto& [b, nbv] : nb) {
          if (a == b) continue;
          bool share = false;
          {
            size_t i = 0, j = 0;
            while (i < na.size() && j < nbv.size()) {
              int c = compare_tuples({na[i].data(), na[i].size()}, {nbv[j].data(), nbv[j].size()});
              if (c == 0) {
                share = true;
                break;
              }
              (c < 0 ? i : j)++;
            }
          }
          if (!share) continue;
          for (const auto& d : na) {
            if (std::binary_search(nbv.begin(), nbv.end(), d)) continue;
            std::vector<int> t(n);
            for (size_t i = 0; i < I.size(); ++i) t[I[i]] = b[i];
            for (size_t j = 0; j < J.size(); ++j) t[J[j]] = d[j];
            additions.push_back(std::move(t));
          }
        }
    }
    auto tuples = X.tuples();
    tuples.insert(tuples.end(), additions.begin(), additions.end());
    Relation grown(name, n, X.sorts(), std::move(tuples));
    X = close_relation(basis, grown, name);
  }
}

Relation maximal_avoiding(const BasisRegistry& basis, const Relation& R,
                          std::span<const int> forbidden, const std::string& name) {
  if (R.contains(forbidden)) fail(Errc::forbidden_inside_r, "forbidden tuple lies in R");
  check_invariant(basis, R, "maximal_avoiding");
  ProductContext ctx = ProductContext::for_relation(basis, R);
  if (ctx.space() > kIndexedSpaceLimit)
    fail(Errc::domain_too_large, "maximal_avoiding beyond space limit");
  std::int64_t fb = ctx.encode(forbidden);
  std::vector<std::int64_t> cur = encode_all(ctx, R);
  for (std::int64_t t = 0; t < ctx.space(); ++t) {
    if (t == fb || std::binary_search(cur.begin(), cur.end(), t)) continue;
    auto gens = cur;
    gens.push_back(t);
    auto closed = close_indexed(ctx, std::move(gens));
    if (!std::binary_search(closed.begin(), closed.end(), fb)) cur = std::move(closed);
  }
  return relation_from_indices(ctx, std::move(cur), name);
}

Relation maximal_signature_avoiding(const BasisRegistry& basis, const Relation& R,
                                    std::tuple<int, int, int> triple, const std::string& name) {
  check_invariant(basis, R, "maximal_signature_avoiding");
  Relation cur = parallelogram_closure(basis, R, name);
  if (signature(cur).contains(std::get<0>(triple), std::get<1>(triple), std::get<2>(triple)))
    fail(Errc::precondition_failed, "signature triple already present in the closure");
  ProductContext ctx = ProductContext::for_relation(basis, R);
  if (ctx.space() > kIndexedSpaceLimit)
    fail(Errc::domain_too_large, "maximal_signature_avoiding beyond space limit");
  std::vector<int> buf(ctx.n());
  for (std::int64_t t = 0; t < ctx.space(); ++t) {
    ctx.decode(t, buf.data());
    if (cur.contains(buf)) continue;
    auto tuples = cur.tuples();
    tuples.push_back(buf);
    Relation grown = parallelogram_closure(
        basis, close_relation(basis, Relation(name, cur.arity(), cur.sorts(), std::move(tuples)),
                              name),
        name);
    if (!signature(grown).contains(std::get<0>(triple), std::get<1>(triple), std::get<2>(triple)))
      cur = std::move(grown);
  }
  return cur;
}

std::vector<DecompositionPart> critical_decomposition(const BasisRegistry& basis,
                                                      const Relation& R, int k) {
  check_invariant(basis, R, "critical_decomposition");
  int n = R.arity();
  std::vector<DecompositionPart> parts;

  // all <= k-ary projections
  std::vector<std::vector<int>> subsets;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (!cur.empty() && static_cast<int>(cur.size()) <= k) subsets.push_back(cur);
    if (static_cast<int>(cur.size()) >= k) return;
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(subsets.begin(), subsets.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  for (const auto& I : subsets) {
    DecompositionPart part;
    part.coords = I;
    std::string pname = R.name() + "_I";
    for (size_t i = 0; i < I.size(); ++i) pname += (i ? "_" : "") + std::to_string(I[i] + 1);
    part.relation = projection(R, I, pname);
    parts.push_back(std::move(part));
  }

  // signature-indexed parts over the parallelogram closure
  Relation Rp = parallelogram_closure(basis, R, R.name() + "_pcl");
  SignatureSet sig = signature(Rp);
  for (int i = 0; i < n; ++i) {
    Relation pi = projection(Rp, {i}, "p");
    int size = basis.sort_size(R.sorts()[i]);
    for (int a = 0; a < size; ++a) {
      if (!pi.contains(std::vector<int>{a})) continue;
      for (int b = 0; b < size; ++b) {
        if (sig.contains(i, a, b)) continue;
        std::string sname = R.name() + "_sig" + std::to_string(i + 1) + "_" + std::to_string(a) +
                            "_" + std::to_string(b);
        Relation S = maximal_signature_avoiding(basis, Rp, {i, a, b}, sname);
        std::vector<int> support;
        for (int j = 0; j < n; ++j)
          if (depends_on(basis, S, j)) support.push_back(j);
        if (support.empty()) support.push_back(i);
        DecompositionPart part;
        part.coords = support;
        part.relation = projection(S, support, sname);
        part.from_signature = true;
        part.triple = {i, a, b};
        parts.push_back(std::move(part));
      }
    }
  }
  return parts;
}

Relation intersect_parts(const BasisRegistry& basis, const std::vector<std::string>& sorts,
                         const std::vector<DecompositionPart>& parts, const std::string& name) {
  int n = static_cast<int>(sorts.size());
  std::vector<int> dims(n);
  for (int i = 0; i < n; ++i) dims[i] = basis.sort_size(sorts[i]);
  std::vector<std::vector<int>> out;
  std::vector<int> t(n, 0);
  while (true) {
    bool ok = true;
    for (const auto& part : parts) {
      std::vector<int> p(part.coords.size());
      for (size_t i = 0; i < part.coords.size(); ++i) p[i] = t[part.coords[i]];
      if (!part.relation.contains(p)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(t);
    int pos = n - 1;
    while (pos >= 0 && ++t[pos] == dims[pos]) t[pos--] = 0;
    if (pos < 0) break;
  }
  return Relation(name, n, sorts, std::move(out));
}

}  // namespace ppclone
