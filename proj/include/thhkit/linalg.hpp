#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <tuple>
#include <string>
#include <vector>

#include "thhkit/ring.hpp"

namespace thhkit {

/// Dense matrix of arbitrary-precision integers. Over F_p / Z/m the entries
/// are representatives and callers reduce through the Ring.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Matrix identity(std::size_t n);
  /// Build from (row, col, value) triples.
  static Matrix from_entries(std::size_t rows, std::size_t cols,
                             const std::vector<std::tuple<std::size_t, std::size_t, mpz_class>>& entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  mpz_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const mpz_class& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix operator*(const Matrix& o) const;
  bool operator==(const Matrix& o) const = default;
  Matrix transposed() const;
  bool is_zero() const;
  Matrix reduced(const Ring& ring) const;
  std::vector<mpz_class> column(std::size_t c) const;
  std::vector<mpz_class> apply(const std::vector<mpz_class>& v) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const mpz_class& k);
  void add_col(std::size_t dst, std::size_t src, const mpz_class& k);
  void scale_row(std::size_t r, const mpz_class& k);
  void scale_col(std::size_t c, const mpz_class& k);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<mpz_class> data_;
};

using IntegerMatrix = Matrix;

struct SmithForm {
  Matrix d, u, v;         // u * m * v == d
  Matrix u_inv, v_inv;    // inverses of u and v
  std::size_t rank = 0;   // number of nonzero diagonal entries
  std::vector<mpz_class> diagonal() const;
};

/// Smith normal form over Z with unimodular transforms; diagonal entries
/// are nonnegative and d_1 | d_2 | ... .
SmithForm smith_normal_form(const Matrix& m);

/// Diagonal of the Smith form without tracking transforms.
std::vector<mpz_class> invariant_factors(Matrix m);

/// Determinant over Z (Bareiss).
mpz_class determinant(const Matrix& m);

/// Reduced row echelon form over a field.
struct Echelon {
  Matrix rref;                     // reduced, same shape as input
  std::vector<std::size_t> pivots; // pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};
Echelon row_reduce(const Matrix& m, const Ring& field);

/// Basis of {x : m x = 0} over a field, one vector per free column,
/// in increasing free-column order.
std::vector<std::vector<mpz_class>> kernel_basis(const Matrix& m, const Ring& field);

struct SolutionSet {
  std::vector<mpz_class> particular;
  std::vector<std::vector<mpz_class>> kernel;
};
/// All x with m x = target over a field; nullopt when inconsistent.
std::optional<SolutionSet> solve_linear(const Matrix& m, const std::vector<mpz_class>& target, const Ring& field);

/// Inverse of a square matrix over Z, Z/m or F_p. nullopt if not invertible.
std::optional<Matrix> invert(const Matrix& m, const Ring& ring);

/// Rank over F_p using 64-bit word arithmetic. Requires p < 2^31.
std::size_t rank_mod_p(std::vector<std::vector<std::uint64_t>> rows, std::uint64_t p);

/// Finitely generated abelian group Z^r ⊕ Z/d_1 ⊕ ... with d_i | d_{i+1}.
class FgAbelianGroup {
 public:
  FgAbelianGroup() = default;
  /// Accepts arbitrary cyclic orders (0 = Z, 1 = trivial) and normalizes.
  static FgAbelianGroup from_cyclic(const std::vector<mpz_class>& orders);
  static FgAbelianGroup free(std::size_t rank) { return from_cyclic(std::vector<mpz_class>(rank, 0)); }

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<mpz_class>& torsion() const { return torsion_; }
  bool is_zero() const { return free_rank_ == 0 && torsion_.empty(); }
  bool is_free() const { return torsion_.empty(); }

  FgAbelianGroup operator+(const FgAbelianGroup& o) const;  // direct sum
  bool operator==(const FgAbelianGroup& o) const = default;

  /// "0", "Z", "Z^2 + Z/2 + Z/6"
  std::string to_string() const;
  /// Inverse of to_string(); throws MathError on bad text.
  static FgAbelianGroup parse(const std::string& text);

 private:
  std::size_t free_rank_ = 0;
  std::vector<mpz_class> torsion_;
};

FgAbelianGroup tensor_fg(const FgAbelianGroup& a, const FgAbelianGroup& b);
/// Tor_1^Z(A, B).
FgAbelianGroup tor_fg(const FgAbelianGroup& a, const FgAbelianGroup& b);

}  // namespace thhkit
