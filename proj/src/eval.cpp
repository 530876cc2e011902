#include "ppclone/eval.hpp"

#include <algorithm>

#include "ppclone/errors.hpp"

namespace ppclone {

namespace {

class Search {
 public:
  Search(const PpFormula& f, const BasisRegistry& basis) : f_(f), basis_(basis) {
    check_formula(f, basis);
    int nvars = static_cast<int>(f.var_names.size());
    domain_.resize(nvars);
    for (int v = 0; v < nvars; ++v) domain_[v] = basis.sort_size(f.var_sorts[v]);
    assign_.assign(nvars, -1);
    atoms_of_var_.resize(nvars);
    for (size_t ai = 0; ai < f.atoms.size(); ++ai) {
      rels_.push_back(f.atoms[ai].is_eq ? nullptr : &basis.relation(f.atoms[ai].symbol));
      for (int v : f.atoms[ai].vars) atoms_of_var_[v].push_back(static_cast<int>(ai));
    }
  }

  /// true iff the atom admits some tuple consistent with the current partial
  /// assignment of its variables.
  bool atom_consistent(int ai) const {
    const PpAtom& atom = f_.atoms[ai];
    if (atom.is_eq) {
      int a = assign_[atom.vars[0]], b = assign_[atom.vars[1]];
      return a < 0 || b < 0 || a == b;
    }
    const Relation& rel = *rels_[ai];
    int n = rel.arity();
    for (int t = 0; t < rel.tuple_count(); ++t) {
      auto tup = rel.tuple(t);
      bool ok = true;
      for (int i = 0; i < n; ++i) {
        int a = assign_[atom.vars[i]];
        if (a >= 0 && a != tup[i]) {
          ok = false;
          break;
        }
      }
      if (ok) return true;
    }
    return false;
  }

  bool consistent_after(int var) const {
    for (int ai : atoms_of_var_[var])
      if (!atom_consistent(ai)) return false;
    return true;
  }

  bool search_bound(int v) {
    if (v == static_cast<int>(assign_.size())) return true;
    for (int val = 0; val < domain_[v]; ++val) {
      assign_[v] = val;
      if (consistent_after(v) && search_bound(v + 1)) {
        assign_[v] = -1;
        return true;
      }
    }
    assign_[v] = -1;
    return false;
  }

  void search_free(int v, std::vector<int>& out) {
    if (v == f_.num_free) {
      if (search_bound(v))
        out.insert(out.end(), assign_.begin(), assign_.begin() + f_.num_free);
      return;
    }
    for (int val = 0; val < domain_[v]; ++val) {
      assign_[v] = val;
      if (consistent_after(v)) search_free(v + 1, out);
    }
    assign_[v] = -1;
  }

  bool holds_on(std::span<const int> tuple) {
    if (static_cast<int>(tuple.size()) != f_.num_free)
      fail(Errc::arity_mismatch, "tuple arity does not match formula head");
    for (int v = 0; v < f_.num_free; ++v) {
      if (tuple[v] < 0 || tuple[v] >= domain_[v])
        fail(Errc::element_out_of_range, "tuple entry outside head sort");
      assign_[v] = tuple[v];
      if (!consistent_after(v)) {
        std::fill(assign_.begin(), assign_.end(), -1);
        return false;
      }
    }
    bool ok = search_bound(f_.num_free);
    std::fill(assign_.begin(), assign_.end(), -1);
    return ok;
  }

  Relation run() {
    std::vector<int> flat;
    search_free(0, flat);
    std::vector<std::string> head_sorts(f_.var_sorts.begin(),
                                        f_.var_sorts.begin() + f_.num_free);
    return Relation::from_sorted(f_.name, f_.num_free, std::move(head_sorts), std::move(flat));
  }

 private:
  const PpFormula& f_;
  const BasisRegistry& basis_;
  std::vector<int> domain_;
  std::vector<int> assign_;
  std::vector<std::vector<int>> atoms_of_var_;
  std::vector<const Relation*> rels_;
};

}  // namespace

Relation evaluate_pp_formula(const PpFormula& f, const BasisRegistry& basis) {
  return Search(f, basis).run();
}

bool formula_holds(const PpFormula& f, const BasisRegistry& basis, std::span<const int> tuple) {
  return Search(f, basis).holds_on(tuple);
}

}  // namespace ppclone
