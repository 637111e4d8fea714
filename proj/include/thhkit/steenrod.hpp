#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "thhkit/algebra.hpp"

namespace thhkit {

enum class SteenrodBasis { Xi, Zeta };

/// Q^s (beta = false) or βQ^s (beta = true).
struct DLOp {
  bool beta = false;
  long s = 0;
  bool operator==(const DLOp&) const = default;
  auto operator<=>(const DLOp&) const = default;
  std::string to_string() const;  // "Q2", "bQ1"
};

/// Composite of operations, applied right to left.
struct DLWord {
  unsigned long p = 2;
  std::vector<DLOp> factors;
  /// "Q2", "bQ1", "Q1 Q2" or "Q1*Q2". Throws MathError("InvalidWord").
  static DLWord parse(unsigned long p, const std::string& text);
  std::string to_string() const;
};

struct ActionEntry {
  std::string generator;
  DLOp op;
  Element value;
};

/// An expanded algebra with Dyer–Lashof data: tabulated generator values
/// plus aliases for names that are not generators (e.g. xi1 = -zeta1).
class SteenrodContext {
 public:
  SteenrodContext(unsigned long p, std::shared_ptr<const Algebra> algebra, std::vector<ActionEntry> actions = {},
                  std::map<std::string, Element> aliases = {});

  unsigned long p() const { return p_; }
  const std::shared_ptr<const Algebra>& algebra() const { return algebra_; }
  const std::vector<ActionEntry>& actions() const { return actions_; }
  const std::map<std::string, Element>& aliases() const { return aliases_; }
  const Element* lookup(std::size_t generator, const DLOp& op) const;
  /// Generator or alias by name; throws MathError("UnknownGenerator").
  Element named(const std::string& name) const;
  /// Degree shift of an operation: s (p = 2), 2s(p-1) - beta (odd p).
  long shift(const DLOp& op) const;
  /// Same context without table entries lying below the instability range.
  SteenrodContext without_unstable_entries() const;

 private:
  unsigned long p_;
  std::shared_ptr<const Algebra> algebra_;
  std::vector<ActionEntry> actions_;
  std::map<std::string, Element> aliases_;
  std::map<std::pair<std::size_t, DLOp>, std::size_t> lookup_;
};

/// Dual Steenrod algebra through `cap`. Xi: generators xi_r (and tau_s at
/// odd p), no operation table. Zeta: generators zeta_r (odd p: tau0,
/// zeta_r, taubar_s with s >= 1) and the generator formulas as the table.
SteenrodContext dual_steenrod(unsigned long p, SteenrodBasis basis, int cap);

/// HF_p-homology of HZ: odd p F_p[xi_r] ⊗ Λ(tau_s | s >= 1); p = 2
/// F_2[xi1sq] ⊗ F_2[xi_r | r >= 2] with |xi1sq| = 2.
SteenrodContext hfp_homology_of_hz(unsigned long p, int cap);

/// Image under the canonical map into the Xi-presented dual Steenrod
/// algebra (xi1sq -> xi1^2, other generators by name).
Element hz_to_dual_steenrod(const Element& e, const SteenrodContext& target);

/// The generator formulas through `cap`, in the Zeta presentation.
std::vector<ActionEntry> generator_formulas(unsigned long p, const std::shared_ptr<const Algebra>& zeta_algebra);

/// Evaluates one operation on a homogeneous element. Rules in order:
/// tabulated generator value, instability (zero below, p-th power at the
/// top), Cartan formula over the monomial, β as a graded derivation.
/// Throws MathError("MissingGeneratorAction"), ("DegreeOverflow"),
/// ("Inhomogeneous").
Element apply_op(const DLOp& op, const Element& e, const SteenrodContext& ctx);
Element apply_dl(const DLWord& w, const Element& e, const SteenrodContext& ctx);

/// Right tensor factor of a term: a known monomial of B or an opaque marker
/// such as "Q1(y)" standing for an operation whose value is not known.
struct BPart {
  bool symbolic = false;
  Monomial mono;       // when !symbolic
  std::string marker;  // when symbolic
  int degree = 0;
  bool operator==(const BPart&) const = default;
};

struct TensorTerm {
  Monomial a;
  BPart b;
  mpz_class coeff;
};

/// Sum of a ⊗ b terms where b may be symbolic. Terms are kept in canonical
/// order (A monomial, then rendered B part).
class SymbolicTensor {
 public:
  SymbolicTensor(std::shared_ptr<const Algebra> a, std::shared_ptr<const Algebra> b) : a_(std::move(a)), b_(std::move(b)) {}
  void add(const Monomial& a, const BPart& b, const mpz_class& c);
  std::vector<TensorTerm> terms() const;
  bool is_zero() const { return terms_.empty(); }
  std::string render_b(const BPart& b) const;
  std::string to_string() const;
  /// Coefficient of a ⊗ b for a known B monomial.
  mpz_class coefficient(const Monomial& a, const Monomial& b) const;
  const std::shared_ptr<const Algebra>& a_algebra() const { return a_; }
  const std::shared_ptr<const Algebra>& b_algebra() const { return b_; }

 private:
  std::shared_ptr<const Algebra> a_, b_;
  std::map<std::pair<Monomial, std::string>, TensorTerm> terms_;
};

/// Cartan expansion of an operation across A ⊗ B. A-side values come from
/// `a_ctx`; B-side values are the unit rule, instability and the p-th power
/// at the top, otherwise symbolic markers. `e` must lie in tensor(A, B).
SymbolicTensor apply_dl_tensor(const DLWord& w, const Element& e, const SteenrodContext& a_ctx,
                               const std::shared_ptr<const Algebra>& b);

}  // namespace thhkit
