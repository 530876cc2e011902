#include "ppclone/subpowers.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "ppclone/eval.hpp"
#include "ppclone/errors.hpp"
#include "ppclone/ppdef.hpp"

namespace ppclone {

GenerateResult generate(const BasisRegistry& basis, const std::string& sort_id, int n,
                        const std::vector<std::vector<int>>& generators) {
  std::vector<std::string> sorts(n, sort_id);
  ProductContext ctx = ProductContext::from_sorts(basis, sorts);
  ClosureResult closure = close_with_derivation(ctx, generators);
  std::vector<std::vector<int>> tuples = closure.elements;
  Relation rel("Sg", n, sorts, std::move(tuples));
  return GenerateResult{std::move(rel), std::move(closure), std::move(ctx)};
}

DerivationTrace extract_trace(const GenerateResult& gen, std::span<const int> target) {
  int idx = -1;
  for (size_t i = 0; i < gen.closure.elements.size(); ++i) {
    const auto& e = gen.closure.elements[i];
    if (std::equal(e.begin(), e.end(), target.begin(), target.end())) {
      idx = static_cast<int>(i);
      break;
    }
  }
  if (idx < 0) fail(Errc::certificate_construction_failed, "target not in generated relation");

  // collect the ancestors of the target, then emit them in discovery order
  std::vector<bool> needed(gen.closure.elements.size(), false);
  std::vector<int> stack{idx};
  needed[idx] = true;
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    for (int a : gen.closure.steps[cur].args)
      if (!needed[a]) {
        needed[a] = true;
        stack.push_back(a);
      }
  }
  std::vector<int> order;
  std::vector<int> remap(gen.closure.elements.size(), -1);
  for (size_t i = 0; i < gen.closure.elements.size(); ++i)
    if (needed[i]) {
      remap[i] = static_cast<int>(order.size());
      order.push_back(static_cast<int>(i));
    }
  DerivationTrace trace;
  trace.reserve(order.size());
  for (int i : order) {
    const DerivationStep& st = gen.closure.steps[i];
    TraceStep out;
    if (st.op < 0) {
      out.op = "gen";
    } else {
      out.op = gen.context.op_name(st.op);
      for (int a : st.args) out.args.push_back(remap[a]);
    }
    out.result = gen.closure.elements[i];
    trace.push_back(std::move(out));
  }
  return trace;
}

TraceCheck verify_membership_certificate(const BasisRegistry& basis, const std::string& sort_id,
                                         int n, const std::vector<std::vector<int>>& generators,
                                         std::span<const int> target,
                                         const DerivationTrace& trace) {
  std::vector<std::string> sorts(n, sort_id);
  ProductContext ctx = ProductContext::from_sorts(basis, sorts);
  std::set<std::vector<int>> gen_set(generators.begin(), generators.end());

  TraceCheck out;
  auto fail_step = [&](int i, const std::string& why) {
    out.ok = false;
    out.failing_step = i;
    out.reason = why;
    return out;
  };
  if (trace.empty()) return fail_step(-1, "empty trace");
  for (size_t i = 0; i < trace.size(); ++i) {
    const TraceStep& st = trace[i];
    if (static_cast<int>(st.result.size()) != n) return fail_step(i, "result arity mismatch");
    if (st.op == "gen") {
      if (!gen_set.count(st.result)) return fail_step(i, "generator step not in generator set");
      continue;
    }
    int oi = -1;
    for (int o = 0; o < ctx.op_count(); ++o)
      if (ctx.op_name(o) == st.op) oi = o;
    if (oi < 0) return fail_step(i, "unknown operation '" + st.op + "'");
    if (static_cast<int>(st.args.size()) != ctx.op_arity(oi))
      return fail_step(i, "argument count mismatch");
    std::vector<const int*> ptrs;
    for (int a : st.args) {
      if (a < 0 || a >= static_cast<int>(i)) return fail_step(i, "argument index out of range");
      ptrs.push_back(trace[a].result.data());
    }
    std::vector<int> image(n);
    ctx.apply(oi, {ptrs.data(), ptrs.size()}, image.data());
    if (image != st.result) return fail_step(i, "step result does not match operation image");
  }
  const auto& last = trace.back().result;
  if (!std::equal(last.begin(), last.end(), target.begin(), target.end()))
    return fail_step(static_cast<int>(trace.size()) - 1, "final result is not the target");
  return out;
}

SeparationCheck verify_separation_certificate(const SeparationCertificate& cert,
                                              const std::vector<std::vector<int>>& generators,
                                              std::span<const int> target) {
  SeparationCheck out;
  for (const auto& g : generators) {
    if (!formula_holds(cert.formula, cert.basis, g)) {
      out.ok = false;
      out.failing_generator = g;
      return out;
    }
  }
  out.holds_on_target = formula_holds(cert.formula, cert.basis, target);
  if (out.holds_on_target) out.ok = false;
  return out;
}

SmpResult smp(const BasisRegistry& basis, const std::string& sort_id,
              std::span<const int> target, const std::vector<std::vector<int>>& generators,
              const BasisRegistry* gamma) {
  int n = static_cast<int>(target.size());
  for (const auto& g : generators)
    if (static_cast<int>(g.size()) != n)
      fail(Errc::arity_mismatch, "generator arity differs from target");
  GenerateResult gen = generate(basis, sort_id, n, generators);

  SmpResult out;
  if (gen.relation.contains(target)) {
    out.member = true;
    out.trace = extract_trace(gen, target);
    return out;
  }

  // No-instance: a separating pp-formula from the short-definition pipeline
  BasisRegistry work = gamma ? *gamma : BasisRegistry{};
  if (!work.has_sort(sort_id)) work.ensure_base_sort(basis.sort_algebra(sort_id));
  Relation sg = gen.relation.renamed("SgG");
  DefinitionResult def = short_pp_definition(work, sg, std::nullopt);

  SeparationCertificate cert{def.formula, def.basis};
  SeparationCheck chk = verify_separation_certificate(cert, generators, target);
  if (!chk.ok)
    fail(Errc::certificate_construction_failed,
         "pipeline formula does not separate the instance");
  out.certificate = std::move(cert);
  return out;
}

namespace {

std::int64_t space_size(const BasisRegistry& basis, const std::string& sort_id, int n) {
  std::int64_t space = 1;
  for (int i = 0; i < n; ++i) space *= basis.sort_size(sort_id);
  return space;
}

}  // namespace

std::vector<Relation> enumerate_subpowers(const BasisRegistry& basis, const std::string& sort_id,
                                          int n) {
  if (space_size(basis, sort_id, n) > kSubpowerEnumerationLimit)
    fail(Errc::domain_too_large, "subpower enumeration limited to |A|^n <= " +
                                     std::to_string(kSubpowerEnumerationLimit));
  std::vector<std::string> sorts(n, sort_id);
  ProductContext ctx = ProductContext::from_sorts(basis, sorts);
  std::int64_t N = ctx.space();

  std::set<std::vector<std::int64_t>> seen;
  std::vector<std::vector<std::int64_t>> work;
  std::vector<std::int64_t> empty = close_indexed(ctx, {});
  seen.insert(empty);
  work.push_back(empty);
  while (!work.empty()) {
    auto cur = std::move(work.back());
    work.pop_back();
    for (std::int64_t t = 0; t < N; ++t) {
      if (std::binary_search(cur.begin(), cur.end(), t)) continue;
      auto gens = cur;
      gens.push_back(t);
      auto closed = close_indexed(ctx, std::move(gens));
      if (seen.insert(closed).second) work.push_back(closed);
    }
  }
  std::vector<Relation> out;
  int counter = 0;
  for (const auto& s : seen)
    out.push_back(relation_from_indices(ctx, s, "sub" + std::to_string(counter++)));
  std::sort(out.begin(), out.end(), [](const Relation& a, const Relation& b) {
    if (a.tuple_count() != b.tuple_count()) return a.tuple_count() < b.tuple_count();
    return a.flat() < b.flat();
  });
  return out;
}

std::int64_t count_subpowers(const BasisRegistry& basis, const std::string& sort_id, int n) {
  return static_cast<std::int64_t>(enumerate_subpowers(basis, sort_id, n).size());
}

std::string serialize_trace(const DerivationTrace& trace) {
  std::ostringstream out;
  out << "trace\n";
  for (const auto& st : trace) {
    out << st.op;
    for (int a : st.args) out << ' ' << a;
    out << " ->";
    for (int v : st.result) out << ' ' << v;
    out << "\n";
  }
  out << "end\n";
  return out.str();
}

DerivationTrace parse_trace(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  DerivationTrace trace;
  bool started = false, ended = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (toks.empty()) continue;
    if (!started) {
      if (toks.size() != 1 || toks[0] != "trace")
        fail(Errc::parse_error, "line " + std::to_string(lineno) + ": expected 'trace'");
      started = true;
      continue;
    }
    if (toks.size() == 1 && toks[0] == "end") {
      ended = true;
      break;
    }
    TraceStep st;
    st.op = toks[0];
    size_t arrow = 0;
    for (size_t i = 1; i < toks.size(); ++i)
      if (toks[i] == "->") arrow = i;
    if (arrow == 0) fail(Errc::parse_error, "line " + std::to_string(lineno) + ": missing '->'");
    for (size_t i = 1; i < arrow; ++i) st.args.push_back(std::stoi(toks[i]));
    for (size_t i = arrow + 1; i < toks.size(); ++i) st.result.push_back(std::stoi(toks[i]));
    trace.push_back(std::move(st));
  }
  if (!started || !ended) fail(Errc::parse_error, "malformed trace file");
  return trace;
}

}  // namespace ppclone
