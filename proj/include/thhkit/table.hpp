#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "thhkit/algebra.hpp"
#include "thhkit/ring.hpp"

namespace thhkit {

/// Sparse coordinate vector: basis index -> nonzero coefficient.
using Vec = std::map<std::size_t, mpz_class>;

/// target += c * v, dropping zeros.
void vec_axpy(Vec& target, const Vec& v, const mpz_class& c, const Ring& ring);
Vec vec_scaled(const Vec& v, const mpz_class& c, const Ring& ring);

struct TableEntry {
  std::string name;
  int degree = 0;
  bool operator==(const TableEntry&) const = default;
};

/// Graded ring given by structure constants on a free basis. Products
/// landing above `cap` are truncated to zero, so the table describes the
/// ring faithfully in degrees <= cap.
class RingTable {
 public:
  RingTable() : ring_(Ring::integers()) {}
  /// Validates shapes and degrees and reduces coefficients; does not check
  /// associativity (see check()).
  RingTable(Ring ring, int cap, std::vector<TableEntry> basis, std::vector<std::vector<Vec>> products, Vec unit);

  const Ring& ring() const { return ring_; }
  int cap() const { return cap_; }
  std::size_t size() const { return basis_.size(); }
  const std::vector<TableEntry>& basis() const { return basis_; }
  const TableEntry& entry(std::size_t i) const { return basis_.at(i); }
  int index_of(const std::string& name) const;
  std::vector<std::size_t> indices_of_degree(int d) const;
  std::size_t dimension(int d) const { return indices_of_degree(d).size(); }
  int min_degree() const;
  int max_degree() const;

  const Vec& product(std::size_t i, std::size_t j) const { return products_.at(i).at(j); }
  const std::vector<std::vector<Vec>>& products() const { return products_; }
  const Vec& unit() const { return unit_; }
  /// Index of the unit when it is a single basis element with coefficient 1.
  std::optional<std::size_t> unit_index() const;

  Vec basis_vector(std::size_t i) const { return Vec{{i, 1}}; }
  Vec multiply(const Vec& a, const Vec& b) const;
  /// Degree of a nonzero homogeneous vector; nullopt otherwise.
  std::optional<int> degree_of(const Vec& v) const;
  std::string render(const Vec& v) const;

  std::optional<std::string> associativity_violation() const;
  std::optional<std::string> unit_violation() const;
  /// Throws MathError("NonAssociativeTable") or MathError("NonUnital").
  void check() const;

  bool operator==(const RingTable& o) const = default;

 private:
  Ring ring_;
  int cap_ = 0;
  std::vector<TableEntry> basis_;
  std::vector<std::vector<Vec>> products_;
  Vec unit_;
};

/// Structure constants of an expanded algebra through its cap; basis
/// elements are named by their rendered monomials ("1", "x", "x^2*y").
RingTable table_from_algebra(const Algebra& a);

/// Graded tensor product with (a⊗x)(b⊗y) = (-1)^{|x||b|} ab⊗xy, truncated
/// at cap. Entries are named "a⊗x".
RingTable tensor_tables(const RingTable& a, const RingTable& b, int cap);

/// Change of basis making the unit a basis element: a degree-0 basis
/// element with invertible unit coordinate is replaced by the unit.
/// Throws MathError("NonUnital") when no such element exists.
RingTable normalize_unit(const RingTable& t);

}  // namespace thhkit
