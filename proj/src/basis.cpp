#include "thhkit/basis.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "thhkit/errors.hpp"
#include "thhkit/linalg.hpp"

namespace thhkit {

std::string Violation::describe() const {
  return "Violation at (" + left_name + "," + right_name + "): " + left_name + "*" + right_name + " = " + product_text;
}

namespace {

Vec reduced(const Vec& v, const Ring& ring) {
  Vec out;
  vec_axpy(out, v, 1, ring);
  return out;
}

}  // namespace

std::variant<MonoidBasis, Violation> check_monoid_basis(const RingTable& t, const std::vector<BasisCandidate>& b) {
  const Ring& ring = t.ring();
  if (t.unit().empty()) throw MathError("NotABasis", "the zero ring has no basis containing a unit");
  MonoidBasis out;
  std::optional<std::size_t> unit;
  std::set<std::string> names;
  for (std::size_t i = 0; i < b.size(); ++i) {
    Vec v = reduced(b[i].coords, ring);
    auto d = t.degree_of(v);
    if (!d) throw MathError("NotABasis", "candidate " + b[i].name + " is zero or not homogeneous");
    if (!names.insert(b[i].name).second) throw MathError("NotABasis", "duplicate candidate name " + b[i].name);
    if (v == t.unit() && !unit) unit = i;
    out.elements.push_back({b[i].name, *d, std::move(v)});
  }
  if (!unit) throw MathError("NotABasis", "the unit is not among the candidates");
  out.unit_index = *unit;
  for (int d = t.min_degree(); d <= t.max_degree(); ++d) {
    auto idx = t.indices_of_degree(d);
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < out.elements.size(); ++i)
      if (out.elements[i].degree == d) members.push_back(i);
    if (members.size() != idx.size())
      throw MathError("NotABasis", "degree " + std::to_string(d) + " needs " + std::to_string(idx.size()) +
                                       " candidates, got " + std::to_string(members.size()));
    if (idx.empty()) continue;
    Matrix m(idx.size(), idx.size());
    for (std::size_t c = 0; c < members.size(); ++c)
      for (const auto& [k, v] : out.elements[members[c]].coords) {
        auto pos = std::lower_bound(idx.begin(), idx.end(), k) - idx.begin();
        m(static_cast<std::size_t>(pos), c) = v;
      }
    if (!invert(m, ring)) throw MathError("NotABasis", "candidates in degree " + std::to_string(d) + " are not a basis");
  }
  const std::size_t n = out.elements.size();
  out.product.assign(n, std::vector<int>(n, MonoidBasis::kZero));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec p = t.multiply(out.elements[i].coords, out.elements[j].coords);
      if (p.empty()) continue;
      int hit = MonoidBasis::kZero;
      for (std::size_t k = 0; k < n && hit < 0; ++k)
        if (out.elements[k].coords == p) hit = static_cast<int>(k);
      if (hit < 0) {
        std::string text = t.render(p);
        return Violation{i, j, out.elements[i].name, out.elements[j].name, std::move(p), std::move(text)};
      }
      out.product[i][j] = hit;
    }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<BasisCandidate> standard_candidates(const RingTable& t) {
  std::vector<BasisCandidate> out;
  for (std::size_t i = 0; i < t.size(); ++i) out.push_back({t.entry(i).name, t.basis_vector(i)});
  return out;
}

std::string signed_name(const std::string& name, const mpz_class& c) {
  if (c == 1) return name;
  if (c == -1) return "-" + name;
  return c.get_str() + "*" + name;
}

// All sign choices on rank-one pieces; the unit keeps its sign.
SearchResult search_signs(const RingTable& t) {
  SearchResult r;
  std::vector<std::size_t> flips;
  auto unit = t.unit_index();
  for (std::size_t i = 0; i < t.size(); ++i)
    if (!unit || i != *unit) flips.push_back(i);
  const std::size_t patterns = std::size_t{1} << flips.size();
  r.scope = std::to_string(flips.size()) + " rank-1 pieces over Z, " + std::to_string(patterns) + " sign patterns";
  for (std::size_t mask = 0; mask < patterns; ++mask) {
    ++r.candidates_examined;
    auto cands = standard_candidates(t);
    for (std::size_t k = 0; k < flips.size(); ++k)
      if (mask & (std::size_t{1} << k)) {
        auto& c = cands[flips[k]];
        c.coords.begin()->second = -1;
        c.name = signed_name(c.name, -1);
      }
    auto res = check_monoid_basis(t, cands);
    if (auto* mb = std::get_if<MonoidBasis>(&res)) {
      r.status = SearchStatus::Found;
      r.basis = *mb;
      return r;
    }
  }
  r.status = SearchStatus::ProvenNone;
  return r;
}

struct Backtrack {
  const RingTable& t;
  const SearchOptions& opts;
  bool exhaustive = true;
  bool out_of_budget = false;
  std::size_t nodes = 0;
  std::vector<int> degrees;
  std::map<int, std::vector<std::size_t>> idx;
  std::map<int, std::vector<Vec>> chosen;
  std::optional<MonoidBasis> found;

  std::vector<mpz_class> coefficient_range() const {
    std::vector<mpz_class> out;
    const Ring& ring = t.ring();
    if (ring.is_integers()) {
      for (int c = -opts.coefficient_bound; c <= opts.coefficient_bound; ++c) out.push_back(c);
    } else {
      for (mpz_class c = 0; c < ring.modulus(); ++c) out.push_back(c);
    }
    return out;
  }

  std::vector<Vec> candidates(int d) const {
    const auto& ix = idx.at(d);
    auto range = coefficient_range();
    std::vector<Vec> out;
    std::vector<std::size_t> digit(ix.size(), 0);
    while (true) {
      Vec v;
      for (std::size_t k = 0; k < ix.size(); ++k)
        if (range[digit[k]] != 0) v.emplace(ix[k], range[digit[k]]);
      if (!v.empty()) out.push_back(std::move(v));
      std::size_t k = 0;
      while (k < ix.size() && ++digit[k] == range.size()) digit[k++] = 0;
      if (k == ix.size()) break;
    }
    return out;
  }

  bool spans(int d, const std::vector<Vec>& vs) const {
    const auto& ix = idx.at(d);
    Matrix m(ix.size(), ix.size());
    for (std::size_t c = 0; c < vs.size(); ++c)
      for (const auto& [k, v] : vs[c]) m(static_cast<std::size_t>(std::lower_bound(ix.begin(), ix.end(), k) - ix.begin()), c) = v;
    return t.ring().is_unit(t.ring().reduce(determinant(m)));
  }

  bool in_set(const std::vector<Vec>& s, const Vec& v) const { return std::find(s.begin(), s.end(), v) != s.end(); }

  bool closed_under_degree_zero(int d, const std::vector<Vec>& s) const {
    auto z = chosen.find(0);
    const std::vector<Vec>& zero = d == 0 ? s : z->second;
    for (const auto& a : zero)
      for (const auto& b : s) {
        for (const Vec& p : {t.multiply(a, b), t.multiply(b, a)})
          if (!p.empty() && !in_set(s, p)) return false;
      }
    return true;
  }

  void run(std::size_t level) {
    if (found || out_of_budget) return;
    if (level == degrees.size()) {
      std::vector<BasisCandidate> cands;
      for (int d : degrees)
        for (const auto& v : chosen[d]) cands.push_back({t.render(v), v});
      auto res = check_monoid_basis(t, cands);
      if (auto* mb = std::get_if<MonoidBasis>(&res)) found = *mb;
      return;
    }
    const int d = degrees[level];
    const std::size_t k = idx[d].size();
    std::vector<Vec> forced;
    if (d == 0) forced.push_back(t.unit());
    for (int i : degrees) {
      if (i <= 0 || i >= d) continue;
      int j = d - i;
      if (j <= 0 || j >= d || !chosen.count(j)) continue;
      for (const auto& a : chosen[i])
        for (const auto& b : chosen[j]) {
          Vec p = t.multiply(a, b);
          if (!p.empty() && !in_set(forced, p)) forced.push_back(std::move(p));
        }
    }
    if (forced.size() > k) return;
    auto pool = candidates(d);
    pool.erase(std::remove_if(pool.begin(), pool.end(), [&](const Vec& v) { return in_set(forced, v); }), pool.end());
    std::vector<Vec> current = forced;
    std::function<void(std::size_t)> pick = [&](std::size_t from) {
      if (found || out_of_budget) return;
      if (current.size() == k) {
        if (++nodes > opts.budget) {
          out_of_budget = true;
          return;
        }
        if (!spans(d, current) || !closed_under_degree_zero(d, current)) return;
        chosen[d] = current;
        run(level + 1);
        chosen.erase(d);
        return;
      }
      for (std::size_t c = from; c < pool.size(); ++c) {
        current.push_back(pool[c]);
        pick(c + 1);
        current.pop_back();
        if (found || out_of_budget) return;
      }
    };
    pick(0);
  }
};

}  // namespace

SearchResult search_monoid_basis(const RingTable& t, const SearchOptions& opts) {
  if (t.min_degree() < 0) throw MathError("NotConnective", "monoid bases are only searched for nonnegatively graded tables");
  if (t.unit().empty()) throw MathError("NotABasis", "the zero ring has no basis containing a unit");
  bool rank_one = true;
  for (int d = t.min_degree(); d <= t.max_degree(); ++d) rank_one = rank_one && t.dimension(d) <= 1;
  if (t.ring().is_integers() && rank_one && t.unit_index()) return search_signs(t);

  SearchResult r;
  if (t.unit_index()) {
    ++r.candidates_examined;
    auto res = check_monoid_basis(t, standard_candidates(t));
    if (auto* mb = std::get_if<MonoidBasis>(&res)) {
      r.status = SearchStatus::Found;
      r.basis = *mb;
      r.scope = "given basis";
      return r;
    }
  }
  Backtrack bt{t, opts, true, false, 0, {}, {}, {}, std::nullopt};
  bt.exhaustive = !t.ring().is_integers();
  for (int d = t.min_degree(); d <= t.max_degree(); ++d)
    if (t.dimension(d) > 0) {
      bt.degrees.push_back(d);
      bt.idx[d] = t.indices_of_degree(d);
    }
  bt.run(0);
  r.candidates_examined += bt.nodes;
  if (t.ring().is_integers())
    r.scope = "bases with entries in [-" + std::to_string(opts.coefficient_bound) + "," +
              std::to_string(opts.coefficient_bound) + "] (not exhaustive over Z)";
  else
    r.scope = "all degreewise bases over " + t.ring().name();
  if (bt.found) {
    r.status = SearchStatus::Found;
    r.basis = std::move(bt.found);
  } else if (bt.out_of_budget || !bt.exhaustive) {
    r.status = SearchStatus::BudgetExhausted;
  } else {
    r.status = SearchStatus::ProvenNone;
  }
  return r;
}

// ---------------------------------------------------------------------------

WedgeModel wedge_model(const MonoidBasis& b) {
  WedgeModel w;
  const std::size_t n = b.elements.size();
  for (const auto& e : b.elements) w.summands.push_back({e.name, e.degree});
  w.unit_index = b.unit_index;
  w.multiplication = b.product;
  auto fail = [](const std::string& msg) { throw MathError("AssociativityFailure", msg); };
  if (w.multiplication.size() != n) fail("multiplication table has the wrong shape");
  auto mul = [&](int x, int y) { return x < 0 || y < 0 ? -1 : w.multiplication[x][y]; };
  for (std::size_t i = 0; i < n; ++i) {
    const int ii = static_cast<int>(i), u = static_cast<int>(w.unit_index);
    if (mul(u, ii) != ii || mul(ii, u) != ii) fail("unit does not act trivially on " + w.summands[i].name);
    for (std::size_t j = 0; j < n; ++j) {
      int p = w.multiplication[i][j];
      if (p >= 0 && w.summands[p].degree != w.summands[i].degree + w.summands[j].degree)
        fail("degrees do not add for " + w.summands[i].name + "*" + w.summands[j].name);
      for (std::size_t k = 0; k < n; ++k)
        if (mul(p, static_cast<int>(k)) != mul(ii, w.multiplication[j][k]))
          fail("(" + w.summands[i].name + "*" + w.summands[j].name + ")*" + w.summands[k].name + " differs from " +
               w.summands[i].name + "*(" + w.summands[j].name + "*" + w.summands[k].name + ")");
    }
  }
  return w;
}

RingTable table_from_wedge(const WedgeModel& w, const Ring& ring, int cap) {
  std::vector<TableEntry> basis;
  for (const auto& s : w.summands) basis.push_back({s.name, s.degree});
  const std::size_t n = basis.size();
  std::vector<std::vector<Vec>> products(n, std::vector<Vec>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (w.multiplication[i][j] >= 0) products[i][j].emplace(static_cast<std::size_t>(w.multiplication[i][j]), 1);
  return RingTable(ring, cap, std::move(basis), std::move(products), Vec{{w.unit_index, 1}});
}

Matrix change_of_basis(const RingTable& t, const MonoidBasis& b) {
  Matrix m(t.size(), b.elements.size());
  for (std::size_t c = 0; c < b.elements.size(); ++c)
    for (const auto& [k, v] : b.elements[c].coords) m(k, c) = v;
  return m;
}

}  // namespace thhkit
