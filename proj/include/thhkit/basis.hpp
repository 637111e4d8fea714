#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "thhkit/linalg.hpp"
#include "thhkit/table.hpp"

namespace thhkit {

struct BasisCandidate {
  std::string name;
  Vec coords;  // in the ambient table's basis
};

/// Homogeneous basis whose pairwise products are basis elements or zero.
struct MonoidBasis {
  static constexpr int kZero = -1;

  struct Member {
    std::string name;
    int degree = 0;
    Vec coords;
  };
  std::vector<Member> elements;
  std::size_t unit_index = 0;
  std::vector<std::vector<int>> product;  // element index or kZero
};

struct Violation {
  std::size_t left = 0, right = 0;
  std::string left_name, right_name;
  Vec product;
  std::string product_text;
  std::string describe() const;  // "Violation at (y,x): y*x = -x*y"
};

/// Certifies a candidate basis or reports the first offending pair in
/// row-major order. Throws MathError("NotABasis") when the candidates are
/// inhomogeneous, miss the unit, or fail to form a basis degreewise.
std::variant<MonoidBasis, Violation> check_monoid_basis(const RingTable& t, const std::vector<BasisCandidate>& b);

enum class SearchStatus { Found, ProvenNone, BudgetExhausted };

struct SearchResult {
  SearchStatus status = SearchStatus::BudgetExhausted;
  std::optional<MonoidBasis> basis;
  std::size_t candidates_examined = 0;
  std::string scope;  // description of the space searched
};

struct SearchOptions {
  std::size_t budget = 1000000;  // node limit for the backtracking search
  int coefficient_bound = 1;     // |entries| tried over Z when some piece has rank > 1
};

/// Exhaustive over F_p; over Z exhaustive only when every graded piece has
/// rank <= 1 (candidates are ±generators). Otherwise a bounded search that
/// can only end in Found or BudgetExhausted.
SearchResult search_monoid_basis(const RingTable& t, const SearchOptions& opts = {});

struct WedgeModel {
  struct Summand {
    std::string name;
    int degree = 0;
  };
  std::vector<Summand> summands;
  std::size_t unit_index = 0;
  std::vector<std::vector<int>> multiplication;  // summand index or -1
};

/// Throws MathError("AssociativityFailure") when the monoid-with-zero is not
/// associative and unital with additive degrees.
WedgeModel wedge_model(const MonoidBasis& b);

/// Table with structure constants 0/1 in the monoid basis.
RingTable table_from_wedge(const WedgeModel& w, const Ring& ring, int cap);

/// Change-of-basis matrix (columns = basis coordinates in the ambient table).
Matrix change_of_basis(const RingTable& t, const MonoidBasis& b);

}  // namespace thhkit
