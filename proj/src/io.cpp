#include "ppclone/io.hpp"

#include <fstream>
#include <sstream>

#include "ppclone/errors.hpp"

namespace ppclone {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& msg) {
  fail(Errc::parse_error, "line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

int to_int(const std::string& s, int line) {
  try {
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) parse_fail(line, "expected integer, got '" + s + "'");
    return v;
  } catch (const std::exception&) {
    parse_fail(line, "expected integer, got '" + s + "'");
  }
}

struct Lines {
  std::vector<std::string> raw;
  size_t pos = 0;

  explicit Lines(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) raw.push_back(line);
  }
  bool eof() {
    skip_blank();
    return pos >= raw.size();
  }
  void skip_blank() {
    while (pos < raw.size() && split_ws(raw[pos]).empty()) ++pos;
  }
  int lineno() const { return static_cast<int>(pos) + 1; }
  std::string next() { return raw[pos++]; }
  std::string peek_first_token() {
    skip_blank();
    if (pos >= raw.size()) return "";
    auto toks = split_ws(raw[pos]);
    return toks.empty() ? "" : toks[0];
  }
};

Algebra parse_algebra_block(Lines& in) {
  int line0 = in.lineno();
  auto header = split_ws(in.next());
  if (header.size() != 2 || header[0] != "algebra")
    parse_fail(line0, "expected 'algebra <name>'");
  std::string name = header[1];

  if (in.eof()) parse_fail(in.lineno(), "expected 'domain <size>'");
  auto dom = split_ws(in.next());
  if (dom.size() != 2 || dom[0] != "domain") parse_fail(in.lineno() - 1, "expected 'domain <size>'");
  int size = to_int(dom[1], in.lineno() - 1);
  if (size < 1) parse_fail(in.lineno() - 1, "domain size must be positive");

  std::vector<OperationTable> ops;
  while (true) {
    if (in.eof()) parse_fail(in.lineno(), "unterminated algebra block (missing 'end')");
    int lop = in.lineno();
    auto toks = split_ws(in.next());
    if (toks.size() == 1 && toks[0] == "end") break;
    if (toks.size() != 3 || toks[0] != "op") parse_fail(lop, "expected 'op <name> <arity>' or 'end'");
    int arity = to_int(toks[2], lop);
    if (arity < 0) parse_fail(lop, "operation arity must be non-negative");
    if (in.eof()) parse_fail(in.lineno(), "expected operation table line");
    int ltab = in.lineno();
    auto entries = split_ws(in.next());
    std::vector<int> table;
    table.reserve(entries.size());
    for (const auto& e : entries) {
      int v = to_int(e, ltab);
      if (v < 0 || v >= size)
        fail(Errc::invariant_violation,
             "line " + std::to_string(ltab) + ": table entry " + e + " outside domain");
      table.push_back(v);
    }
    std::int64_t want = 1;
    for (int i = 0; i < arity; ++i) want *= size;
    if (static_cast<std::int64_t>(table.size()) != want)
      fail(Errc::invariant_violation, "line " + std::to_string(ltab) + ": table for '" + toks[1] +
                                          "' has " + std::to_string(table.size()) +
                                          " entries, expected " + std::to_string(want));
    ops.emplace_back(toks[1], arity, size, std::move(table));
  }
  return Algebra(name, Domain{size}, std::move(ops));
}

void parse_relation_block(Lines& in, BasisRegistry& registry, std::vector<std::string>& names) {
  int line0 = in.lineno();
  auto header = split_ws(in.next());
  // relation <name> <arity> over <sort>...
  if (header.size() < 5 || header[0] != "relation" || header[3] != "over")
    parse_fail(line0, "expected 'relation <name> <arity> over <sort>...'");
  std::string name = header[1];
  int arity = to_int(header[2], line0);
  if (arity < 1) parse_fail(line0, "relation arity must be positive");
  std::vector<std::string> sorts(header.begin() + 4, header.end());
  if (static_cast<int>(sorts.size()) != arity) parse_fail(line0, "sort list does not match arity");
  std::vector<int> dims(arity);
  for (int i = 0; i < arity; ++i) {
    if (!registry.has_sort(sorts[i]))
      fail(Errc::unknown_symbol,
           "line " + std::to_string(line0) + ": unknown sort '" + sorts[i] + "'");
    dims[i] = registry.sort_size(sorts[i]);
  }

  std::vector<std::vector<int>> tuples;
  while (true) {
    if (in.eof()) parse_fail(in.lineno(), "unterminated relation block (missing 'end')");
    int lt = in.lineno();
    auto toks = split_ws(in.next());
    if (toks.size() == 1 && toks[0] == "end") break;
    if (static_cast<int>(toks.size()) != arity)
      parse_fail(lt, "tuple has " + std::to_string(toks.size()) + " entries, expected " +
                         std::to_string(arity));
    std::vector<int> t(arity);
    for (int i = 0; i < arity; ++i) {
      t[i] = to_int(toks[i], lt);
      if (t[i] < 0 || t[i] >= dims[i])
        fail(Errc::invariant_violation, "line " + std::to_string(lt) + ": entry " + toks[i] +
                                            " outside sort '" + sorts[i] + "'");
    }
    tuples.push_back(std::move(t));
  }
  registry.register_relation(Relation(name, arity, std::move(sorts), std::move(tuples)));
  names.push_back(name);
}

}  // namespace

Algebra parse_algebra(const std::string& text) {
  Lines in(text);
  if (in.eof()) fail(Errc::parse_error, "empty algebra file");
  Algebra a = parse_algebra_block(in);
  if (!in.eof()) parse_fail(in.lineno(), "trailing content after algebra block");
  return a;
}

std::vector<std::string> parse_basis(const std::string& text, BasisRegistry& registry) {
  Lines in(text);
  std::vector<std::string> names;
  while (!in.eof()) {
    std::string head = in.peek_first_token();
    if (head == "algebra") {
      Algebra a = parse_algebra_block(in);
      registry.ensure_base_sort(a);
    } else if (head == "relation") {
      parse_relation_block(in, registry, names);
    } else {
      parse_fail(in.lineno(), "expected 'algebra' or 'relation' block");
    }
  }
  return names;
}

std::vector<std::string> parse_relations(const std::string& text, BasisRegistry& registry) {
  Lines in(text);
  std::vector<std::string> names;
  while (!in.eof()) {
    if (in.peek_first_token() != "relation")
      parse_fail(in.lineno(), "expected 'relation' block");
    parse_relation_block(in, registry, names);
  }
  return names;
}

namespace {

bool valid_var_token(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return !std::isdigit(static_cast<unsigned char>(s[0]));
}

}  // namespace

PpFormula parse_formula(const std::string& text, const BasisRegistry& registry) {
  // single logical line: def Name(x1,...,xn) := [EX y1 ... yk .] atom & atom | true
  std::string line;
  {
    std::istringstream in(text);
    std::string l;
    bool got = false;
    while (std::getline(in, l)) {
      if (split_ws(l).empty()) continue;
      if (got) fail(Errc::parse_error, "formula file must contain a single def line");
      line = l;
      got = true;
    }
    if (!got) fail(Errc::parse_error, "empty formula file");
  }

  auto syntax = [&](const std::string& msg) { fail(Errc::parse_error, msg + " in: " + line); };

  size_t p = line.find("def ");
  if (p != 0) syntax("expected 'def'");
  size_t lp = line.find('(');
  if (lp == std::string::npos) syntax("expected '(' after relation name");
  std::string name = line.substr(4, lp - 4);
  size_t rp = line.find(')', lp);
  if (rp == std::string::npos) syntax("expected ')'");

  PpFormula f;
  f.name = name;
  {
    std::string heads = line.substr(lp + 1, rp - lp - 1);
    std::string cur;
    std::istringstream hs(heads);
    while (std::getline(hs, cur, ',')) {
      // trim
      while (!cur.empty() && cur.front() == ' ') cur.erase(cur.begin());
      while (!cur.empty() && cur.back() == ' ') cur.pop_back();
      if (!valid_var_token(cur)) syntax("bad head variable '" + cur + "'");
      f.var_names.push_back(cur);
    }
  }
  f.num_free = static_cast<int>(f.var_names.size());
  if (f.num_free < 1) syntax("formula needs at least one head variable");

  size_t as = line.find(":=", rp);
  if (as == std::string::npos) syntax("expected ':='");
  std::string body = line.substr(as + 2);

  // optional quantifier prefix
  {
    auto toks = split_ws(body);
    if (!toks.empty() && toks[0] == "EX") {
      size_t dot = body.find('.');
      if (dot == std::string::npos) syntax("expected '.' after EX variable list");
      auto qvars = split_ws(body.substr(0, dot));
      for (size_t i = 1; i < qvars.size(); ++i) {
        if (!valid_var_token(qvars[i])) syntax("bad bound variable '" + qvars[i] + "'");
        f.var_names.push_back(qvars[i]);
      }
      if (static_cast<int>(f.var_names.size()) == f.num_free)
        syntax("EX with no bound variables");
      body = body.substr(dot + 1);
    }
  }

  std::map<std::string, int> var_index;
  for (size_t i = 0; i < f.var_names.size(); ++i) {
    if (var_index.count(f.var_names[i])) syntax("duplicate variable '" + f.var_names[i] + "'");
    var_index[f.var_names[i]] = static_cast<int>(i);
  }
  auto var_of = [&](const std::string& v) {
    auto it = var_index.find(v);
    if (it == var_index.end()) syntax("undeclared variable '" + v + "'");
    return it->second;
  };

  // atoms separated by '&'
  std::vector<std::string> atom_strs;
  {
    std::string cur;
    std::istringstream bs(body);
    while (std::getline(bs, cur, '&')) atom_strs.push_back(cur);
  }
  if (atom_strs.size() == 1 && split_ws(atom_strs[0]).size() == 1 &&
      split_ws(atom_strs[0])[0] == "true") {
    atom_strs.clear();
  }

  for (const auto& raw : atom_strs) {
    auto toks = split_ws(raw);
    if (toks.empty()) syntax("empty atom");
    if (toks.size() == 3 && toks[1] == "=") {
      PpAtom atom;
      atom.is_eq = true;
      atom.vars = {var_of(toks[0]), var_of(toks[2])};
      f.atoms.push_back(std::move(atom));
      continue;
    }
    std::string s = raw;
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    size_t alp = s.find('(');
    if (alp == std::string::npos || s.back() != ')') syntax("malformed atom '" + raw + "'");
    PpAtom atom;
    atom.symbol = s.substr(0, alp);
    std::string args = s.substr(alp + 1, s.size() - alp - 2);
    std::string cur;
    std::istringstream asAtoms(args);
    while (std::getline(asAtoms, cur, ',')) atom.vars.push_back(var_of(cur));
    if (atom.vars.empty()) syntax("atom with no variables");
    if (!registry.has_relation(atom.symbol))
      fail(Errc::unknown_symbol, "unknown relation '" + atom.symbol + "'");
    f.atoms.push_back(std::move(atom));
  }

  // sort inference: relation atoms pin sorts; equality atoms propagate them
  f.var_sorts.assign(f.var_names.size(), "");
  for (const auto& atom : f.atoms) {
    if (atom.is_eq) continue;
    const Relation& rel = registry.relation(atom.symbol);
    if (static_cast<int>(atom.vars.size()) != rel.arity())
      fail(Errc::arity_mismatch, "atom '" + atom.symbol + "' has wrong variable count");
    for (int i = 0; i < rel.arity(); ++i) {
      std::string& s = f.var_sorts[atom.vars[i]];
      if (s.empty())
        s = rel.sorts()[i];
      else if (s != rel.sorts()[i])
        fail(Errc::sort_mismatch, "variable '" + f.var_names[atom.vars[i]] +
                                      "' used with sorts '" + s + "' and '" + rel.sorts()[i] +
                                      "'");
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& atom : f.atoms) {
      if (!atom.is_eq) continue;
      std::string& a = f.var_sorts[atom.vars[0]];
      std::string& b = f.var_sorts[atom.vars[1]];
      if (a.empty() && !b.empty()) {
        a = b;
        changed = true;
      } else if (b.empty() && !a.empty()) {
        b = a;
        changed = true;
      } else if (!a.empty() && a != b) {
        fail(Errc::sort_mismatch, "equality joins variables of different sorts");
      }
    }
  }
  for (size_t i = 0; i < f.var_sorts.size(); ++i)
    if (f.var_sorts[i].empty())
      fail(Errc::parse_error,
           "cannot infer sort of variable '" + f.var_names[i] + "' (not used in any atom)");

  check_formula(f, registry);
  return f;
}

std::string serialize_algebra(const Algebra& a) {
  std::ostringstream out;
  out << "algebra " << a.name() << "\n";
  out << "domain " << a.size() << "\n";
  for (const auto& op : a.operations()) {
    out << "op " << op.name() << " " << op.arity() << "\n";
    for (size_t i = 0; i < op.table().size(); ++i) {
      if (i) out << ' ';
      out << op.table()[i];
    }
    out << "\n";
  }
  out << "end\n";
  return out.str();
}

std::string serialize_relation(const Relation& r) {
  std::ostringstream out;
  out << "relation " << r.name() << " " << r.arity() << " over";
  for (const auto& s : r.sorts()) out << ' ' << s;
  out << "\n";
  for (int t = 0; t < r.tuple_count(); ++t) {
    auto tup = r.tuple(t);
    for (int i = 0; i < r.arity(); ++i) {
      if (i) out << ' ';
      out << tup[i];
    }
    out << "\n";
  }
  out << "end\n";
  return out.str();
}

std::string serialize_formula(const PpFormula& f) {
  std::ostringstream out;
  out << "def " << f.name << "(";
  for (int i = 0; i < f.num_free; ++i) {
    if (i) out << ',';
    out << f.var_names[i];
  }
  out << ") :=";
  if (f.num_bound() > 0) {
    out << " EX";
    for (size_t i = f.num_free; i < f.var_names.size(); ++i) out << ' ' << f.var_names[i];
    out << " .";
  }
  if (f.atoms.empty()) {
    out << " true";
  } else {
    for (size_t ai = 0; ai < f.atoms.size(); ++ai) {
      const PpAtom& atom = f.atoms[ai];
      out << (ai ? " & " : " ");
      if (atom.is_eq) {
        out << f.var_names[atom.vars[0]] << " = " << f.var_names[atom.vars[1]];
      } else {
        out << atom.symbol << "(";
        for (size_t i = 0; i < atom.vars.size(); ++i) {
          if (i) out << ',';
          out << f.var_names[atom.vars[i]];
        }
        out << ")";
      }
    }
  }
  out << "\n";
  return out.str();
}

std::string serialize_basis(const BasisRegistry& registry) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [id, sort] : registry.sorts()) {
    if (!first) out << "\n";
    first = false;
    Algebra named(id, sort.algebra.domain(), sort.algebra.operations());
    out << serialize_algebra(named);
  }
  for (const auto& [name, rel] : registry.relations()) {
    if (!first) out << "\n";
    first = false;
    out << serialize_relation(rel);
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::parse_error, "cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::parse_error, "cannot write file '" + path + "'");
  out << content;
}

}  // namespace ppclone
