#include "ppclone/formula.hpp"

#include <set>

#include "ppclone/errors.hpp"

namespace ppclone {

void check_formula(const PpFormula& f, const BasisRegistry& basis) {
  int nvars = static_cast<int>(f.var_names.size());
  if (f.num_free < 1 || f.num_free > nvars)
    fail(Errc::invariant_violation, "formula '" + f.name + "' has no head variables");
  if (static_cast<int>(f.var_sorts.size()) != nvars)
    fail(Errc::invariant_violation, "variable sort list length mismatch");
  for (const auto& s : f.var_sorts)
    if (!basis.has_sort(s)) fail(Errc::unknown_symbol, "unknown sort '" + s + "' in formula");
  for (const auto& atom : f.atoms) {
    for (int v : atom.vars)
      if (v < 0 || v >= nvars)
        fail(Errc::invariant_violation, "atom references undeclared variable");
    if (atom.is_eq) {
      if (atom.vars.size() != 2) fail(Errc::invariant_violation, "equality atom must be binary");
      if (f.var_sorts[atom.vars[0]] != f.var_sorts[atom.vars[1]])
        fail(Errc::sort_mismatch, "equality atom variables have different sorts");
    } else {
      if (!basis.has_relation(atom.symbol))
        fail(Errc::unknown_symbol, "unknown relation '" + atom.symbol + "' in formula");
      const Relation& rel = basis.relation(atom.symbol);
      if (static_cast<int>(atom.vars.size()) != rel.arity())
        fail(Errc::arity_mismatch, "atom '" + atom.symbol + "' has wrong variable count");
      for (int i = 0; i < rel.arity(); ++i)
        if (f.var_sorts[atom.vars[i]] != rel.sorts()[i])
          fail(Errc::sort_mismatch, "atom '" + atom.symbol + "' variable sort mismatch");
    }
  }
}

LengthReport formula_length(const PpFormula& f) {
  LengthReport rep;
  rep.arity = f.num_free;
  rep.quantifier_count = f.num_bound();
  rep.atom_count = static_cast<int>(f.atoms.size());
  int len = rep.quantifier_count;
  for (const auto& atom : f.atoms) len += 1 + static_cast<int>(atom.vars.size());
  rep.length = len;
  return rep;
}

PpFormula substitute_basis(const PpFormula& f,
                           const std::map<std::string, PpFormula>& translations) {
  PpFormula out;
  out.name = f.name;
  out.num_free = f.num_free;
  out.var_names = f.var_names;
  out.var_sorts = f.var_sorts;

  std::set<std::string> used(f.var_names.begin(), f.var_names.end());
  int next_bound = 1;
  auto fresh_name = [&]() {
    std::string n;
    do {
      n = "y" + std::to_string(next_bound++);
    } while (used.count(n));
    used.insert(n);
    return n;
  };

  for (const auto& atom : f.atoms) {
    if (atom.is_eq) {
      out.atoms.push_back(atom);
      continue;
    }
    auto it = translations.find(atom.symbol);
    if (it == translations.end())
      fail(Errc::missing_translation, "no translation for symbol '" + atom.symbol + "'");
    const PpFormula& psi = it->second;
    if (psi.num_free != static_cast<int>(atom.vars.size()))
      fail(Errc::arity_mismatch, "translation for '" + atom.symbol + "' has wrong head arity");
    for (int i = 0; i < psi.num_free; ++i)
      if (psi.var_sorts[i] != f.var_sorts[atom.vars[i]])
        fail(Errc::sort_mismatch, "translation for '" + atom.symbol + "' has wrong head sorts");

    // head vars map to the atom's variables, bound vars map to fresh ones
    std::vector<int> var_map(psi.var_names.size());
    for (int i = 0; i < psi.num_free; ++i) var_map[i] = atom.vars[i];
    for (int i = psi.num_free; i < static_cast<int>(psi.var_names.size()); ++i) {
      var_map[i] = static_cast<int>(out.var_names.size());
      out.var_names.push_back(fresh_name());
      out.var_sorts.push_back(psi.var_sorts[i]);
    }
    for (const auto& a : psi.atoms) {
      PpAtom copy = a;
      for (int& v : copy.vars) v = var_map[v];
      out.atoms.push_back(std::move(copy));
    }
  }
  return out;
}

}  // namespace ppclone
