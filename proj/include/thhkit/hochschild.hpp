#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thhkit/dga.hpp"
#include "thhkit/linalg.hpp"
#include "thhkit/table.hpp"

namespace thhkit {

/// A graded module value: a dimension over a field or a group over Z.
struct GradedValue {
  bool over_field = true;
  std::size_t dimension = 0;
  FgAbelianGroup group;

  static GradedValue of_dimension(std::size_t d) { return {true, d, FgAbelianGroup::free(d)}; }
  static GradedValue of_group(FgAbelianGroup g) { return {false, g.free_rank(), std::move(g)}; }
  bool is_zero() const { return over_field ? dimension == 0 : group.is_zero(); }
  std::string to_string() const { return over_field ? std::to_string(dimension) : group.to_string(); }
  bool operator==(const GradedValue&) const = default;
};

enum class Exactness { Exact, TruncationLimited };
std::string to_string(Exactness e);

struct GradedModuleResult {
  int degree_cap = 0;
  int length_cap = 0;
  Exactness exactness = Exactness::Exact;
  std::vector<GradedValue> values;  // index = total degree, 0..degree_cap
};

/// Normalized Hochschild complex of a unital table (optionally with an
/// internal differential). Chains of total degree t are tuples
/// (a0, a1, ..., an) of basis indices, a_i (i >= 1) never the unit, with
/// t = n + Σ|a_i| and n <= length_cap.
struct HochschildComplex {
  Ring ring = Ring::integers();
  int degree_cap = 0;
  int length_cap = 0;
  bool exact = true;
  RingTable table;
  std::vector<std::vector<std::vector<std::size_t>>> chains;  // [t] -> tuples, t in 0..degree_cap+1
  std::vector<std::vector<Vec>> boundary;                     // [t][column] over chains[t-1]

  /// D_{t-1} ∘ D_t == 0 for every stored t.
  bool square_zero() const;
  std::string render_chain(int t, std::size_t i) const;
};

/// length_cap defaults to degree_cap + 1 for connected inputs (A_0 = R·1),
/// which makes every reported degree exact, and to degree_cap + 2 otherwise.
HochschildComplex hochschild_complex(const RingTable& a, const std::vector<Vec>* differential, int degree_cap,
                                     std::optional<int> length_cap = std::nullopt);

/// Homology of the complex in total degrees 0..degree_cap.
GradedModuleResult complex_homology(const HochschildComplex& c);

/// HH of a graded algebra given as a table (field or Z). Requires
/// table.cap() >= degree_cap.
GradedModuleResult hh(const RingTable& a, int degree_cap, std::optional<int> length_cap = std::nullopt);

/// HH of a connective DGA: total differential b + (-1)^n δ.
GradedModuleResult hh_dga(const DGA& x, int degree_cap, std::optional<int> length_cap = std::nullopt);

/// Integral HH of a connected graded ring with free pieces. Raises
/// MathError("NonFreePieces") for non-integral input and
/// MathError("NotConnected") when A_0 is bigger than Z.
GradedModuleResult hh_over_Z(const RingTable& a, int degree_cap);

}  // namespace thhkit
