#include "thhkit/format.hpp"

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "thhkit/errors.hpp"

namespace thhkit {

std::string to_string(DocKind k) {
  switch (k) {
    case DocKind::Presentation: return "presentation";
    case DocKind::Dga: return "dga";
    case DocKind::RingTable: return "ring-table";
    case DocKind::ThhTable: return "thh-table";
    case DocKind::BasisCandidate: return "basis-candidate";
  }
  return "";
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool all_digits(const std::string& s) {
  return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
}

int parse_int(const std::string& s, int line, const std::string& what) {
  std::string t = trim(s);
  bool neg = !t.empty() && t[0] == '-';
  if (neg) t = t.substr(1);
  if (!all_digits(t) || t.size() > 9) throw ParseError(line, "expected an integer " + what + ", got '" + trim(s) + "'");
  const int v = std::stoi(t);
  return neg ? -v : v;
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c == ' ' || c == '\t' || c == '*' || c == '+' || c == '-' || c == '=' || c == ',' || c == ':' || c == '#')
      return false;
  return s == "1" || !all_digits(s);
}

std::optional<DocKind> kind_from(const std::string& s) {
  for (DocKind k : {DocKind::Presentation, DocKind::Dga, DocKind::RingTable, DocKind::ThhTable, DocKind::BasisCandidate})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

std::pair<std::string, std::string> split_eq(const std::string& rest, int line) {
  const auto eq = rest.find('=');
  if (eq == std::string::npos) throw ParseError(line, "expected '='");
  return {trim(rest.substr(0, eq)), trim(rest.substr(eq + 1))};
}

// Directives allowed per document kind.
const std::map<DocKind, std::set<std::string>>& allowed() {
  static const std::map<DocKind, std::set<std::string>> table = {
      {DocKind::Presentation, {"kind", "ring", "cap", "signs", "gen", "rel"}},
      {DocKind::Dga, {"kind", "ring", "cap", "basis", "unit", "d", "mul"}},
      {DocKind::RingTable, {"kind", "ring", "cap", "basis", "unit", "mul"}},
      {DocKind::ThhTable, {"kind", "ring", "cap", "provenance", "note", "dim", "group"}},
      {DocKind::BasisCandidate, {"kind", "ring", "cap", "signs", "gen", "rel", "basis", "unit", "mul", "candidate"}},
  };
  return table;
}

}  // namespace

Expr parse_expr(const std::string& text, int line) {
  Expr out;
  int sign = 1;
  bool pending = false;  // an operator waiting for its term
  std::string cur;
  auto push = [&] {
    const std::string t = trim(cur);
    cur.clear();
    if (t.empty()) return;
    Term term;
    std::vector<std::string> parts;
    std::stringstream ss(t);
    std::string part;
    while (std::getline(ss, part, '*')) parts.push_back(trim(part));
    if (t.back() == '*') parts.push_back("");
    std::size_t first = 0;
    if (all_digits(parts[0])) {
      term.coeff = mpz_class(parts[0]);
      first = 1;
    }
    for (std::size_t i = first; i < parts.size(); ++i) {
      if (!valid_name(parts[i])) throw ParseError(line, "bad factor '" + parts[i] + "' in '" + trim(text) + "'");
      term.factors.push_back(parts[i]);
    }
    term.coeff *= sign;
    sign = 1;
    pending = false;
    if (term.coeff != 0) out.push_back(std::move(term));
  };
  for (char c : text) {
    if (c == '+' || c == '-') {
      if (!trim(cur).empty()) push();
      if (c == '-') sign = -sign;
      pending = true;
    } else {
      cur += c;
    }
  }
  push();
  if (pending) throw ParseError(line, "dangling operator in '" + trim(text) + "'");
  return out;
}

std::string render_expr(const Expr& e) {
  if (e.empty()) return "0";
  std::string s;
  for (const auto& t : e) {
    mpz_class c = t.coeff;
    const bool neg = c < 0;
    if (neg) c = -c;
    s += s.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    std::string body;
    for (const auto& f : t.factors) body += (body.empty() ? "" : "*") + f;
    if (body.empty())
      s += c.get_str();
    else
      s += (c == 1 ? "" : c.get_str() + "*") + body;
  }
  return s;
}

InputDocument parse_document(const std::string& text) {
  InputDocument doc;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  bool any = false, has_ring = false, has_cap = false, has_note = false;
  std::set<std::string> seen_names, seen_d, seen_candidates;
  std::set<std::pair<std::string, std::string>> seen_mul;
  std::set<int> seen_values, seen_basis_degrees;
  std::vector<std::pair<std::string, int>> directives;
  static const std::regex basis_re(R"(^deg\s+(-?\d+)\s*:\s*(.*)$)");
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string l = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (l.empty()) continue;
    any = true;
    const auto sp = l.find_first_of(" \t");
    const std::string key = l.substr(0, sp);
    const std::string rest = sp == std::string::npos ? "" : trim(l.substr(sp));
    directives.emplace_back(key, line);
    auto dup = [&](bool seen, const std::string& what) {
      if (seen) throw ParseError(line, "duplicate declaration of " + what);
    };
    if (key == "kind") {
      dup(doc.explicit_kind, "kind");
      auto k = kind_from(rest);
      if (!k) throw ParseError(line, "unknown document kind '" + rest + "'");
      doc.kind = *k;
      doc.explicit_kind = true;
    } else if (key == "ring") {
      dup(has_ring, "ring");
      try {
        doc.ring = parse_ring(rest);
      } catch (const MathError& e) {
        throw ParseError(line, e.what());
      }
      has_ring = true;
    } else if (key == "cap") {
      dup(has_cap, "cap");
      doc.cap = parse_int(rest, line, "cap");
      if (doc.cap < 0) throw ParseError(line, "cap must be >= 0");
      has_cap = true;
    } else if (key == "signs") {
      dup(doc.explicit_signs, "signs");
      if (rest == "koszul")
        doc.signs = SignRule::Koszul;
      else if (rest == "ungraded")
        doc.signs = SignRule::Ungraded;
      else
        throw ParseError(line, "signs must be koszul or ungraded");
      doc.explicit_signs = true;
    } else if (key == "gen") {
      std::istringstream ts(rest);
      std::vector<std::string> tok;
      for (std::string w; ts >> w;) tok.push_back(w);
      if (tok.size() != 5 || tok[1] != "deg" || tok[3] != "kind")
        throw ParseError(line, "expected 'gen <name> deg <d> kind poly|ext|trunc:<h>'");
      if (!valid_name(tok[0]) || tok[0].find('^') != std::string::npos)
        throw ParseError(line, "bad generator name '" + tok[0] + "'");
      dup(!seen_names.insert(tok[0]).second, "generator " + tok[0]);
      GenLine g;
      g.line = line;
      g.spec.name = tok[0];
      g.spec.degree = parse_int(tok[2], line, "degree");
      if (tok[4] == "poly") {
        g.spec.kind = GenKind::Polynomial;
      } else if (tok[4] == "ext") {
        g.spec.kind = GenKind::Exterior;
      } else if (tok[4].rfind("trunc:", 0) == 0) {
        g.spec.kind = GenKind::Truncated;
        g.spec.height = parse_int(tok[4].substr(6), line, "truncation height");
        if (g.spec.height < 2) throw ParseError(line, "truncation height must be >= 2");
      } else {
        throw ParseError(line, "unknown generator kind '" + tok[4] + "'");
      }
      doc.generators.push_back(std::move(g));
    } else if (key == "rel") {
      auto [lhs, rhs] = split_eq(rest, line);
      Expr l_expr = parse_expr(lhs, line);
      if (l_expr.size() != 1 || l_expr[0].coeff != 1 || l_expr[0].factors.empty())
        throw ParseError(line, "relation left side must be a single monomial");
      doc.relations.push_back({l_expr[0].factors, parse_expr(rhs, line), line});
    } else if (key == "basis") {
      std::smatch m;
      if (!std::regex_match(rest, m, basis_re)) throw ParseError(line, "expected 'basis deg <d>: <names>'");
      BasisLine b;
      b.line = line;
      b.degree = parse_int(m[1].str(), line, "degree");
      dup(!seen_basis_degrees.insert(b.degree).second, "basis in degree " + std::to_string(b.degree));
      std::string names = m[2].str();
      for (char& c : names)
        if (c == ',') c = ' ';
      std::istringstream ns(names);
      for (std::string w; ns >> w;) {
        if (!valid_name(w)) throw ParseError(line, "bad basis name '" + w + "'");
        dup(!seen_names.insert(w).second, "basis element " + w);
        b.names.push_back(w);
      }
      if (b.names.empty()) throw ParseError(line, "basis line lists no names");
      doc.basis.push_back(std::move(b));
    } else if (key == "unit") {
      dup(doc.unit.has_value(), "unit");
      if (!valid_name(rest)) throw ParseError(line, "bad unit name '" + rest + "'");
      doc.unit = rest;
    } else if (key == "d" || key == "candidate") {
      auto [name, value] = split_eq(rest, line);
      if (!valid_name(name)) throw ParseError(line, "bad name '" + name + "'");
      auto& seen = key == "d" ? seen_d : seen_candidates;
      dup(!seen.insert(name).second, key + " " + name);
      (key == "d" ? doc.differential : doc.candidates).push_back({name, parse_expr(value, line), line});
    } else if (key == "mul") {
      auto [lhs, value] = split_eq(rest, line);
      const auto star = lhs.find('*');
      if (star == std::string::npos) throw ParseError(line, "expected 'mul <a>*<b> = <expr>'");
      MulLine m{trim(lhs.substr(0, star)), trim(lhs.substr(star + 1)), parse_expr(value, line), line};
      if (!valid_name(m.left) || !valid_name(m.right)) throw ParseError(line, "expected 'mul <a>*<b> = <expr>'");
      dup(!seen_mul.insert({m.left, m.right}).second, "product " + m.left + "*" + m.right);
      doc.products.push_back(std::move(m));
    } else if (key == "dim" || key == "group") {
      auto [deg, value] = split_eq(rest, line);
      ValueLine v;
      v.line = line;
      v.degree = parse_int(deg, line, "degree");
      dup(!seen_values.insert(v.degree).second, "value in degree " + std::to_string(v.degree));
      if (key == "dim") {
        v.value = GradedValue::of_dimension(static_cast<std::size_t>(parse_int(value, line, "dimension")));
      } else {
        try {
          v.value = GradedValue::of_group(FgAbelianGroup::parse(value));
        } catch (const MathError& e) {
          throw ParseError(line, e.what());
        }
      }
      doc.values.push_back(std::move(v));
    } else if (key == "provenance") {
      dup(doc.provenance.has_value(), "provenance");
      if (rest == "external-literature")
        doc.provenance = Provenance::ExternalLiterature;
      else if (rest == "user")
        doc.provenance = Provenance::User;
      else
        throw ParseError(line, "provenance must be external-literature or user");
    } else if (key == "note") {
      dup(has_note, "note");
      doc.note = rest;
      has_note = true;
    } else {
      throw ParseError(line, "unknown directive '" + key + "'");
    }
  }
  if (!any) throw ParseError(1, "empty document");

  if (!doc.explicit_kind) {
    auto has = [&](const std::string& k) {
      for (const auto& [d, l] : directives)
        if (d == k) return true;
      return false;
    };
    if (has("candidate"))
      doc.kind = DocKind::BasisCandidate;
    else if (has("d"))
      doc.kind = DocKind::Dga;
    else if (has("basis") || has("mul") || has("unit"))
      doc.kind = DocKind::RingTable;
    else if (has("provenance") || has("dim") || has("group") || has("note"))
      doc.kind = DocKind::ThhTable;
    else
      doc.kind = DocKind::Presentation;
  }
  const auto& ok = allowed().at(doc.kind);
  for (const auto& [d, l] : directives)
    if (!ok.count(d)) throw ParseError(l, "directive '" + d + "' is not allowed in a " + to_string(doc.kind) + " document");
  if (!has_ring) throw ParseError(line, "missing 'ring' declaration");
  if (!has_cap) throw ParseError(line, "missing 'cap' declaration");
  if (doc.kind == DocKind::ThhTable && !doc.provenance) throw ParseError(line, "THH tables must declare provenance");
  if (doc.kind == DocKind::BasisCandidate && !doc.generators.empty() && !doc.basis.empty())
    throw ParseError(line, "a basis-candidate document uses either generators or a basis, not both");
  return doc;
}

InputDocument read_document(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError(0, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_document(ss.str());
}

std::string render_document(const InputDocument& doc) {
  std::string s;
  if (doc.explicit_kind) s += "kind " + to_string(doc.kind) + "\n";
  s += "ring " + doc.ring.name() + "\n";
  s += "cap " + std::to_string(doc.cap) + "\n";
  if (doc.explicit_signs) s += std::string("signs ") + (doc.signs == SignRule::Koszul ? "koszul" : "ungraded") + "\n";
  for (const auto& g : doc.generators) {
    std::string kind = g.spec.kind == GenKind::Polynomial ? "poly"
                       : g.spec.kind == GenKind::Exterior ? "ext"
                                                          : "trunc:" + std::to_string(g.spec.height);
    s += "gen " + g.spec.name + " deg " + std::to_string(g.spec.degree) + " kind " + kind + "\n";
  }
  for (const auto& r : doc.relations) s += "rel " + render_expr({Term{1, r.lhs}}) + " = " + render_expr(r.rhs) + "\n";
  for (const auto& b : doc.basis) {
    s += "basis deg " + std::to_string(b.degree) + ":";
    for (const auto& n : b.names) s += " " + n;
    s += "\n";
  }
  if (doc.unit) s += "unit " + *doc.unit + "\n";
  for (const auto& d : doc.differential) s += "d " + d.name + " = " + render_expr(d.value) + "\n";
  for (const auto& m : doc.products) s += "mul " + m.left + "*" + m.right + " = " + render_expr(m.value) + "\n";
  if (doc.provenance) s += "provenance " + to_string(*doc.provenance) + "\n";
  if (!doc.note.empty()) s += "note " + doc.note + "\n";
  for (const auto& v : doc.values)
    s += (v.value.over_field ? "dim " : "group ") + std::to_string(v.degree) + " = " + v.value.to_string() + "\n";
  for (const auto& c : doc.candidates) s += "candidate " + c.name + " = " + render_expr(c.value) + "\n";
  return s;
}

// ---------------------------------------------------------------------------

namespace {

Monomial monomial_of(const Presentation& p, const std::vector<std::string>& factors, int line) {
  Monomial m(p.generators.size(), 0);
  for (const auto& f : factors) {
    const auto caret = f.find('^');
    const std::string name = f.substr(0, caret);
    const int e = caret == std::string::npos ? 1 : parse_int(f.substr(caret + 1), line, "exponent");
    if (e < 0) throw ParseError(line, "negative exponent in '" + f + "'");
    const int g = p.generator_index(name);
    if (g < 0) throw ParseError(line, "unknown generator '" + name + "'");
    m[static_cast<std::size_t>(g)] += e;
  }
  return m;
}

bool presentation_like(const InputDocument& doc) {
  return doc.kind == DocKind::Presentation || (doc.kind == DocKind::BasisCandidate && doc.basis.empty());
}

struct TableNames {
  std::map<std::string, std::size_t> index;
  std::size_t unit = 0;
};

TableNames names_of(const InputDocument& doc) {
  TableNames n;
  for (const auto& b : doc.basis)
    for (const auto& name : b.names) n.index.emplace(name, n.index.size());
  const std::string unit = doc.unit.value_or("1");
  auto it = n.index.find(unit);
  if (it == n.index.end()) {
    int line = 1;
    for (const auto& b : doc.basis) line = b.line;
    throw ParseError(line, "unit '" + unit + "' is not a declared basis element");
  }
  n.unit = it->second;
  return n;
}

// Table expression: each term is a scalar, a basis name, or (when the
// products are already known) a product of basis names.
Vec table_expr(const Expr& e, const TableNames& n, const RingTable* t, const Ring& ring, int line) {
  Vec out;
  for (const auto& term : e) {
    Vec v{{n.unit, 1}};
    for (std::size_t i = 0; i < term.factors.size(); ++i) {
      auto it = n.index.find(term.factors[i]);
      if (it == n.index.end()) throw ParseError(line, "unknown basis element '" + term.factors[i] + "'");
      if (i == 0) {
        v = Vec{{it->second, 1}};
      } else {
        if (!t) throw ParseError(line, "products of basis elements are not allowed here");
        v = t->multiply(v, Vec{{it->second, 1}});
      }
    }
    vec_axpy(out, v, term.coeff, ring);
  }
  return out;
}

}  // namespace

Presentation build_presentation(const InputDocument& doc) {
  if (!presentation_like(doc)) throw ParseError(1, "document is not a presentation");
  Presentation p;
  p.ring = doc.ring;
  p.signs = doc.signs;
  for (const auto& g : doc.generators) p.generators.push_back(g.spec);
  for (const auto& r : doc.relations) {
    Relation rel;
    rel.lhs = monomial_of(p, r.lhs, r.line);
    for (const auto& t : r.rhs) rel.rhs.emplace_back(monomial_of(p, t.factors, r.line), t.coeff);
    p.relations.push_back(std::move(rel));
  }
  return p;
}

std::shared_ptr<const Algebra> build_algebra(const InputDocument& doc) {
  return Algebra::create(build_presentation(doc), doc.cap);
}

RingTable build_table(const InputDocument& doc) {
  if (presentation_like(doc)) return table_from_algebra(*build_algebra(doc));
  if (doc.kind == DocKind::ThhTable) throw ParseError(1, "a THH table has no multiplication");
  const TableNames n = names_of(doc);
  std::vector<TableEntry> entries(n.index.size());
  for (const auto& b : doc.basis)
    for (const auto& name : b.names) entries[n.index.at(name)] = {name, b.degree};
  const std::size_t size = entries.size();
  std::vector<std::vector<Vec>> products(size, std::vector<Vec>(size));
  for (std::size_t j = 0; j < size; ++j) {
    products[n.unit][j] = Vec{{j, 1}};
    products[j][n.unit] = Vec{{j, 1}};
  }
  for (const auto& m : doc.products) {
    auto l = n.index.find(m.left), r = n.index.find(m.right);
    if (l == n.index.end()) throw ParseError(m.line, "unknown basis element '" + m.left + "'");
    if (r == n.index.end()) throw ParseError(m.line, "unknown basis element '" + m.right + "'");
    products[l->second][r->second] = table_expr(m.value, n, nullptr, doc.ring, m.line);
  }
  return RingTable(doc.ring, doc.cap, std::move(entries), std::move(products), Vec{{n.unit, 1}});
}

DGA build_dga(const InputDocument& doc) {
  if (doc.kind != DocKind::Dga && doc.kind != DocKind::RingTable)
    throw ParseError(1, "document is not a DGA (kind " + to_string(doc.kind) + ")");
  RingTable t = build_table(doc);
  const TableNames n = names_of(doc);
  std::vector<Vec> d(t.size());
  for (const auto& line : doc.differential) {
    auto it = n.index.find(line.name);
    if (it == n.index.end()) throw ParseError(line.line, "unknown basis element '" + line.name + "'");
    d[it->second] = table_expr(line.value, n, nullptr, doc.ring, line.line);
  }
  const bool connective = t.size() == 0 || t.min_degree() >= 0;
  return DGA::create(std::move(t), std::move(d), connective);
}

THHTable build_thh_table(const InputDocument& doc) {
  if (doc.kind != DocKind::ThhTable) throw ParseError(1, "document is not a THH table");
  THHTable t;
  t.ring = doc.ring;
  t.cap = doc.cap;
  t.provenance = doc.provenance.value_or(Provenance::User);
  t.note = doc.note;
  std::map<int, GradedValue> by_degree;
  for (const auto& v : doc.values) {
    if (v.degree < 0 || v.degree > doc.cap)
      throw ParseError(v.line, "degree " + std::to_string(v.degree) + " is outside 0.." + std::to_string(doc.cap));
    if (v.value.over_field != doc.ring.is_field())
      throw ParseError(v.line, doc.ring.is_field() ? "use 'dim' over a field" : "use 'group' over " + doc.ring.name());
    by_degree[v.degree] = v.value;
  }
  for (int d = 0; d <= doc.cap; ++d) {
    auto it = by_degree.find(d);
    if (it == by_degree.end()) throw ParseError(1, "missing value for degree " + std::to_string(d));
    t.values.push_back(it->second);
  }
  t.validate();
  return t;
}

std::vector<BasisCandidate> build_candidates(const InputDocument& doc, const RingTable& t) {
  std::vector<BasisCandidate> out;
  if (presentation_like(doc)) {
    auto alg = build_algebra(doc);
    const Presentation& p = alg->presentation();
    for (const auto& c : doc.candidates) {
      Element e = alg->zero();
      for (const auto& term : c.value) e = e + alg->monomial(monomial_of(p, term.factors, c.line), term.coeff);
      Vec v;
      for (const auto& [m, coeff] : e.terms()) {
        const int i = t.index_of(alg->render_monomial(m));
        if (i < 0) throw ParseError(c.line, "'" + alg->render_monomial(m) + "' lies above the cap");
        vec_axpy(v, Vec{{static_cast<std::size_t>(i), 1}}, coeff, t.ring());
      }
      out.push_back({c.name, v});
    }
    return out;
  }
  const TableNames n = names_of(doc);
  for (const auto& c : doc.candidates) out.push_back({c.name, table_expr(c.value, n, &t, doc.ring, c.line)});
  return out;
}

}  // namespace thhkit
