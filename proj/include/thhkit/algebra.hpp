#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thhkit/ring.hpp"

namespace thhkit {

enum class GenKind { Polynomial, Exterior, Truncated };

struct GeneratorSpec {
  std::string name;
  int degree = 0;
  GenKind kind = GenKind::Polynomial;
  int height = 0;  // only for Truncated: generator^height = 0

  bool operator==(const GeneratorSpec&) const = default;
};

enum class SignRule { Koszul, Ungraded };

/// Exponent vector, one entry per generator.
using Monomial = std::vector<int>;

/// Linear combination of raw monomials. Used for relation right-hand sides.
using MonomialSum = std::vector<std::pair<Monomial, mpz_class>>;

/// Rewrite rule lhs -> rhs. Every rhs monomial must be smaller than lhs in
/// the (degree, lex) order so that rewriting terminates.
struct Relation {
  Monomial lhs;
  MonomialSum rhs;

  bool operator==(const Relation&) const = default;
};

struct Presentation {
  Ring ring = Ring::integers();
  std::vector<GeneratorSpec> generators;
  std::vector<Relation> relations;
  SignRule signs = SignRule::Koszul;

  int generator_index(const std::string& name) const;  // -1 if absent
  bool operator==(const Presentation&) const = default;
};

/// Total order on monomials of the same length: degree first, then
/// lexicographic on exponents.
bool monomial_less(const Presentation& p, const Monomial& a, const Monomial& b);

class Element;

/// A presentation expanded through a degree cap: canonical monomial basis
/// per degree, normal forms for reducible monomials, and the product.
/// Immutable after construction; share through std::shared_ptr.
class Algebra : public std::enable_shared_from_this<Algebra> {
 public:
  /// Validates the presentation and checks confluence of the relations in
  /// every degree <= cap. Throws MathError("NonConfluentRelations") etc.
  static std::shared_ptr<const Algebra> create(Presentation presentation, int cap);

  const Presentation& presentation() const { return pres_; }
  const Ring& ring() const { return pres_.ring; }
  int cap() const { return cap_; }
  std::size_t num_generators() const { return pres_.generators.size(); }

  int degree(const Monomial& m) const;
  /// Canonical basis of degree d (0 <= d <= cap), ordered by descending lex.
  const std::vector<Monomial>& basis(int d) const;
  std::size_t dimension(int d) const { return basis(d).size(); }

  /// Product of two monomials before relations: Koszul sign and generator
  /// kinds applied. nullopt when the product vanishes by kind.
  std::optional<std::pair<int, Monomial>> raw_product(const Monomial& a, const Monomial& b) const;

  /// Normal form of c * m (relations applied).
  std::map<Monomial, mpz_class> normal_form(const Monomial& m, const mpz_class& c = 1) const;

  Element one() const;
  Element zero() const;
  Element generator(const std::string& name) const;
  Element generator(std::size_t index) const;
  Element monomial(const Monomial& m, const mpz_class& c = 1) const;

  std::string render_monomial(const Monomial& m) const;

  /// For tensor algebras: generators [0, split) form the left factor.
  /// Equals num_generators() for algebras that are not tensors.
  std::size_t tensor_split() const { return split_; }

 private:
  Algebra(Presentation p, int cap) : pres_(std::move(p)), cap_(cap), split_(pres_.generators.size()) {}
  friend std::shared_ptr<const Algebra> tensor(const std::shared_ptr<const Algebra>&,
                                               const std::shared_ptr<const Algebra>&, int);

  void validate() const;
  void expand();
  std::map<Monomial, mpz_class> reduce_once(const Monomial& m, std::size_t relation, const mpz_class& c) const;
  std::map<Monomial, mpz_class> normal_form_uncached(const Monomial& m, const mpz_class& c) const;

  Presentation pres_;
  int cap_;
  std::size_t split_;
  std::vector<std::vector<Monomial>> basis_;
  std::map<Monomial, std::map<Monomial, mpz_class>> nf_cache_;
};

/// Sparse element of an Algebra. Never stores zero coefficients.
class Element {
 public:
  Element() = default;
  Element(std::shared_ptr<const Algebra> algebra, std::map<Monomial, mpz_class> terms);

  const std::shared_ptr<const Algebra>& algebra() const { return alg_; }
  const std::map<Monomial, mpz_class>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// nullopt for zero or inhomogeneous elements.
  std::optional<int> degree() const;
  bool is_homogeneous() const;
  mpz_class coefficient(const Monomial& m) const;

  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator-() const;
  Element operator*(const Element& o) const;
  Element scaled(const mpz_class& c) const;
  Element pow(unsigned n) const;
  bool operator==(const Element& o) const;
  bool operator!=(const Element& o) const { return !(*this == o); }

  /// Terms in (degree, descending lex) order: "xi1^4 + 2*xi2".
  std::string to_string() const;

 private:
  void check_same(const Element& o) const;

  std::shared_ptr<const Algebra> alg_;
  std::map<Monomial, mpz_class> terms_;
};

/// Free tensor product over a common field; (a⊗x)(b⊗y) = (-1)^{|x||b|} ab⊗xy.
std::shared_ptr<const Algebra> tensor(const std::shared_ptr<const Algebra>& a,
                                      const std::shared_ptr<const Algebra>& b, int cap);

/// Embeds a ⊗ 1 or 1 ⊗ b into a tensor produced by tensor().
Element embed_left(const std::shared_ptr<const Algebra>& t, const Element& a);
Element embed_right(const std::shared_ptr<const Algebra>& t, const Element& b);

/// Canonical monomial basis of every degree 0..cap (index = degree).
std::vector<std::vector<Monomial>> expand_basis(const Presentation& p, int cap);

/// All kind-respecting monomials of degree d, relations ignored.
std::vector<Monomial> enumerate_monomials(const Presentation& p, int d);

}  // namespace thhkit
