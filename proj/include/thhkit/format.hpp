#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "thhkit/algebra.hpp"
#include "thhkit/basis.hpp"
#include "thhkit/dga.hpp"
#include "thhkit/hochschild.hpp"
#include "thhkit/table.hpp"
#include "thhkit/thh.hpp"

namespace thhkit {

enum class DocKind { Presentation, Dga, RingTable, ThhTable, BasisCandidate };
std::string to_string(DocKind k);

/// One term of an element expression: coefficient times a product of raw
/// factors ("x^2", "y" or a table basis name).
struct Term {
  mpz_class coeff = 1;
  std::vector<std::string> factors;
  bool operator==(const Term&) const = default;
};
using Expr = std::vector<Term>;

/// "2*x^2*y - z + 3"; "0" for the empty sum.
Expr parse_expr(const std::string& text, int line);
std::string render_expr(const Expr& e);

// Every directive remembers its source line for error messages; the line
// is not part of equality.
struct GenLine {
  GeneratorSpec spec;
  int line = 0;
  bool operator==(const GenLine& o) const { return spec == o.spec; }
};
struct RelLine {
  std::vector<std::string> lhs;  // factors of the monomial
  Expr rhs;
  int line = 0;
  bool operator==(const RelLine& o) const { return lhs == o.lhs && rhs == o.rhs; }
};
struct BasisLine {
  int degree = 0;
  std::vector<std::string> names;
  int line = 0;
  bool operator==(const BasisLine& o) const { return degree == o.degree && names == o.names; }
};
struct DefLine {  // d x = ..., candidate x = ...
  std::string name;
  Expr value;
  int line = 0;
  bool operator==(const DefLine& o) const { return name == o.name && value == o.value; }
};
struct MulLine {
  std::string left, right;
  Expr value;
  int line = 0;
  bool operator==(const MulLine& o) const { return left == o.left && right == o.right && value == o.value; }
};
struct ValueLine {  // dim d = n / group d = ...
  int degree = 0;
  GradedValue value;
  int line = 0;
  bool operator==(const ValueLine& o) const { return degree == o.degree && value == o.value; }
};

struct InputDocument {
  DocKind kind = DocKind::Presentation;
  bool explicit_kind = false;
  Ring ring = Ring::integers();
  int cap = 0;
  SignRule signs = SignRule::Koszul;
  bool explicit_signs = false;
  std::vector<GenLine> generators;
  std::vector<RelLine> relations;
  std::vector<BasisLine> basis;
  std::optional<std::string> unit;
  std::vector<DefLine> differential;
  std::vector<MulLine> products;
  std::vector<DefLine> candidates;
  std::optional<Provenance> provenance;
  std::string note;
  std::vector<ValueLine> values;
  bool operator==(const InputDocument&) const = default;
};

/// Line-oriented grammar (see docs/FORMAT.md). Throws ParseError with the
/// offending line; an empty document fails at line 1.
InputDocument parse_document(const std::string& text);
InputDocument read_document(const std::string& path);
std::string render_document(const InputDocument& doc);

/// Builders. Unknown names and missing declarations raise ParseError at the
/// offending line; mathematical failures raise MathError.
Presentation build_presentation(const InputDocument& doc);
std::shared_ptr<const Algebra> build_algebra(const InputDocument& doc);
/// Presentations are expanded into their structure constants; tables and
/// DGAs are read directly (a DGA contributes its underlying ring).
RingTable build_table(const InputDocument& doc);
DGA build_dga(const InputDocument& doc);
THHTable build_thh_table(const InputDocument& doc);
std::vector<BasisCandidate> build_candidates(const InputDocument& doc, const RingTable& t);

}  // namespace thhkit
