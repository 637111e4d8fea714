#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thhkit/linalg.hpp"
#include "thhkit/table.hpp"

namespace thhkit {

/// Differential graded algebra on a finite free basis. The complex is
/// exactly the span of the table's basis; nothing lives above the cap.
class DGA {
 public:
  /// Validates degrees of d, d∘d = 0, the Leibniz rule on all basis pairs,
  /// unitality and associativity. Throws MathError with codes
  /// "InvalidDifferential", "DifferentialNotSquareZero", "LeibnizViolation",
  /// "NonUnital", "NonAssociativeTable".
  static DGA create(RingTable table, std::vector<Vec> differential, bool connective = true);

  const RingTable& table() const { return table_; }
  const Ring& ring() const { return table_.ring(); }
  const std::vector<Vec>& differential() const { return d_; }
  bool connective() const { return connective_; }
  Vec apply_d(const Vec& v) const;
  /// Matrix of d restricted to degree n: rows = degree n-1 basis, cols = degree n basis.
  Matrix differential_matrix(int n) const;
  bool operator==(const DGA&) const = default;

 private:
  DGA(RingTable t, std::vector<Vec> d, bool c) : table_(std::move(t)), d_(std::move(d)), connective_(c) {}
  RingTable table_;
  std::vector<Vec> d_;
  bool connective_ = true;
};

struct HomologyDegree {
  int degree = 0;
  /// Over a field the group is recorded as free of rank = dimension.
  FgAbelianGroup group;
  std::size_t dimension = 0;
  /// One cycle per cyclic summand: torsion summands first, then free ones.
  std::vector<Vec> representatives;
  std::vector<mpz_class> orders;  // 0 marks a free summand

  // Projection data: field route uses `spanning` = boundaries followed by
  // representatives; integral route uses the two Smith transforms.
  Matrix spanning;
  Matrix outgoing;       // d_n, to reject non-cycles
  Matrix kernel_coords;  // rows of V^{-1} past the rank of d_n
  Matrix quotient_u;     // U of the second Smith form
  std::vector<mpz_class> quotient_diag;
};

class Homology {
 public:
  Homology(Ring ring, std::vector<HomologyDegree> degrees, std::vector<std::vector<std::size_t>> indices)
      : ring_(std::move(ring)), degrees_(std::move(degrees)), indices_(std::move(indices)) {}

  const Ring& ring() const { return ring_; }
  bool over_field() const { return ring_.is_field(); }
  const std::vector<HomologyDegree>& degrees() const { return degrees_; }
  const HomologyDegree* at(int degree) const;
  /// "0", "3" (field dimension) or "Z + Z/2".
  std::string value_string(int degree) const;

  /// Coordinates of a cycle in the chosen generators, reduced modulo the
  /// summand orders. Throws MathError("RepresentativeFailure") if the input
  /// is not a cycle of that degree.
  std::vector<mpz_class> project(int degree, const Vec& cycle) const;

 private:
  Ring ring_;
  std::vector<HomologyDegree> degrees_;
  std::vector<std::vector<std::size_t>> indices_;  // table indices per entry of degrees_
};

/// Over F_p via row reduction, over Z via Smith normal form. Z/m with m
/// composite raises MathError("NotSupported").
Homology homology(const DGA& x);

/// Products of representatives projected back to homology. Over Z every
/// homology group must be free; otherwise MathError("TorsionInHomology")
/// lists the offending degrees.
RingTable homology_ring(const DGA& x);

/// Zero differential on an associative, unital, nonnegatively graded table.
DGA formal_dga(const RingTable& t);

}  // namespace thhkit
