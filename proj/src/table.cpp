#include "thhkit/table.hpp"

#include <algorithm>
#include <limits>

#include "thhkit/errors.hpp"

namespace thhkit {

void vec_axpy(Vec& target, const Vec& v, const mpz_class& c, const Ring& ring) {
  if (c == 0) return;
  for (const auto& [i, x] : v) {
    auto [it, inserted] = target.try_emplace(i, 0);
    it->second = ring.add(it->second, c * x);
    if (it->second == 0) target.erase(it);
  }
}

Vec vec_scaled(const Vec& v, const mpz_class& c, const Ring& ring) {
  Vec out;
  vec_axpy(out, v, c, ring);
  return out;
}

namespace {

Vec reduce_vec(const Vec& v, const Ring& ring) {
  Vec out;
  for (const auto& [i, x] : v) {
    mpz_class r = ring.reduce(x);
    if (r != 0) out.emplace(i, r);
  }
  return out;
}

}  // namespace

RingTable::RingTable(Ring ring, int cap, std::vector<TableEntry> basis, std::vector<std::vector<Vec>> products, Vec unit)
    : ring_(std::move(ring)), cap_(cap), basis_(std::move(basis)), products_(std::move(products)) {
  const std::size_t n = basis_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (basis_[i].degree > cap_)
      throw MathError("InvalidTable", "basis element " + basis_[i].name + " lies above the cap");
    for (std::size_t j = 0; j < i; ++j)
      if (basis_[i].name == basis_[j].name) throw MathError("InvalidTable", "duplicate basis name " + basis_[i].name);
  }
  if (products_.size() != n) throw MathError("InvalidTable", "product table has the wrong number of rows");
  for (std::size_t i = 0; i < n; ++i) {
    if (products_[i].size() != n) throw MathError("InvalidTable", "product table has the wrong number of columns");
    for (std::size_t j = 0; j < n; ++j) {
      Vec& p = products_[i][j];
      p = reduce_vec(p, ring_);
      const int d = basis_[i].degree + basis_[j].degree;
      if (d > cap_) {
        p.clear();
        continue;
      }
      for (const auto& [k, c] : p) {
        if (k >= n) throw MathError("InvalidTable", "product refers to an unknown basis element");
        if (basis_[k].degree != d)
          throw MathError("InvalidTable", "product " + basis_[i].name + "*" + basis_[j].name + " has the wrong degree");
      }
    }
  }
  unit_ = reduce_vec(unit, ring_);
  for (const auto& [k, c] : unit_)
    if (k >= n || basis_[k].degree != 0) throw MathError("InvalidTable", "unit must lie in degree 0");
}

int RingTable::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].name == name) return static_cast<int>(i);
  return -1;
}

std::vector<std::size_t> RingTable::indices_of_degree(int d) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].degree == d) out.push_back(i);
  return out;
}

int RingTable::min_degree() const {
  int m = 0;
  for (const auto& e : basis_) m = std::min(m, e.degree);
  return m;
}

int RingTable::max_degree() const {
  int m = 0;
  for (const auto& e : basis_) m = std::max(m, e.degree);
  return m;
}

std::optional<std::size_t> RingTable::unit_index() const {
  if (unit_.size() == 1 && unit_.begin()->second == 1) return unit_.begin()->first;
  return std::nullopt;
}

Vec RingTable::multiply(const Vec& a, const Vec& b) const {
  Vec out;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) vec_axpy(out, products_[i][j], x * y, ring_);
  return out;
}

std::optional<int> RingTable::degree_of(const Vec& v) const {
  if (v.empty()) return std::nullopt;
  int d = basis_.at(v.begin()->first).degree;
  for (const auto& [i, c] : v)
    if (basis_.at(i).degree != d) return std::nullopt;
  return d;
}

std::string RingTable::render(const Vec& v) const {
  if (v.empty()) return "0";
  std::string s;
  for (const auto& [i, c] : v) {
    mpz_class x = c;
    if (!ring_.is_integers() && 2 * x > ring_.modulus()) x -= ring_.modulus();
    bool neg = x < 0;
    if (neg) x = -x;
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    if (x != 1) s += x.get_str() + "*";
    s += basis_[i].name;
  }
  return s;
}

std::optional<std::string> RingTable::associativity_violation() const {
  const std::size_t n = basis_.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vec& ij = products_[i][j];
      for (std::size_t k = 0; k < n; ++k) {
        Vec left = multiply(ij, basis_vector(k));
        Vec right = multiply(basis_vector(i), products_[j][k]);
        if (left != right)
          return "(" + basis_[i].name + "*" + basis_[j].name + ")*" + basis_[k].name + " = " + render(left) + " but " +
                 basis_[i].name + "*(" + basis_[j].name + "*" + basis_[k].name + ") = " + render(right);
      }
    }
  return std::nullopt;
}

std::optional<std::string> RingTable::unit_violation() const {
  if (unit_.empty()) return std::string("unit is zero");
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    Vec e = basis_vector(i);
    if (multiply(unit_, e) != e) return "1*" + basis_[i].name + " = " + render(multiply(unit_, e));
    if (multiply(e, unit_) != e) return basis_[i].name + "*1 = " + render(multiply(e, unit_));
  }
  return std::nullopt;
}

void RingTable::check() const {
  if (auto v = unit_violation()) throw MathError("NonUnital", *v);
  if (auto v = associativity_violation()) throw MathError("NonAssociativeTable", *v);
}

RingTable table_from_algebra(const Algebra& a) {
  std::vector<TableEntry> basis;
  std::map<Monomial, std::size_t> index;
  std::vector<Monomial> monos;
  for (int d = 0; d <= a.cap(); ++d)
    for (const auto& m : a.basis(d)) {
      index.emplace(m, basis.size());
      basis.push_back({a.render_monomial(m), d});
      monos.push_back(m);
    }
  const std::size_t n = basis.size();
  std::vector<std::vector<Vec>> products(n, std::vector<Vec>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (basis[i].degree + basis[j].degree > a.cap()) continue;
      Element p = a.monomial(monos[i]) * a.monomial(monos[j]);
      for (const auto& [m, c] : p.terms()) products[i][j].emplace(index.at(m), c);
    }
  Vec unit;
  unit.emplace(index.at(Monomial(a.num_generators(), 0)), 1);
  return RingTable(a.ring(), a.cap(), std::move(basis), std::move(products), std::move(unit));
}

RingTable tensor_tables(const RingTable& a, const RingTable& b, int cap) {
  if (a.ring() != b.ring()) throw MathError("RingMismatch", "tensor factors over different rings");
  std::vector<TableEntry> basis;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  const int lo = a.min_degree() + b.min_degree();
  for (int d = lo; d <= cap; ++d)
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (a.entry(i).degree + b.entry(j).degree != d) continue;
        index.emplace(std::make_pair(i, j), basis.size());
        pairs.emplace_back(i, j);
        basis.push_back({a.entry(i).name + "⊗" + b.entry(j).name, d});
      }
  const Ring& ring = a.ring();
  const std::size_t n = basis.size();
  std::vector<std::vector<Vec>> products(n, std::vector<Vec>(n));
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) {
      auto [i, x] = pairs[s];
      auto [j, y] = pairs[t];
      if (basis[s].degree + basis[t].degree > cap) continue;
      const int sign = (b.entry(x).degree * a.entry(j).degree) % 2 != 0 ? -1 : 1;
      for (const auto& [k, c] : a.product(i, j))
        for (const auto& [l, e] : b.product(x, y)) {
          auto it = index.find({k, l});
          if (it == index.end()) continue;
          Vec term{{it->second, 1}};
          vec_axpy(products[s][t], term, c * e * sign, ring);
        }
    }
  Vec unit;
  for (const auto& [k, c] : a.unit())
    for (const auto& [l, e] : b.unit()) vec_axpy(unit, Vec{{index.at({k, l}), 1}}, c * e, ring);
  return RingTable(ring, cap, std::move(basis), std::move(products), std::move(unit));
}

RingTable normalize_unit(const RingTable& t) {
  if (t.unit_index()) return t;
  const Ring& ring = t.ring();
  std::optional<std::size_t> pick;
  for (const auto& [k, c] : t.unit())
    if (ring.is_unit(c)) {
      pick = k;
      break;
    }
  if (!pick) throw MathError("NonUnital", "no degree-0 basis element can be exchanged for the unit");
  const std::size_t j = *pick;
  const mpz_class uj_inv = ring.inverse(t.unit().at(j));
  // Old coordinates -> new coordinates where slot j now holds the unit.
  auto to_new = [&](const Vec& v) {
    Vec out;
    auto it = v.find(j);
    mpz_class vj = it == v.end() ? mpz_class(0) : it->second;
    for (const auto& [k, c] : v)
      if (k != j) vec_axpy(out, Vec{{k, 1}}, c, ring);
    if (vj != 0) {
      mpz_class f = vj * uj_inv;
      vec_axpy(out, Vec{{j, 1}}, f, ring);
      for (const auto& [k, c] : t.unit())
        if (k != j) vec_axpy(out, Vec{{k, 1}}, -f * c, ring);
    }
    return out;
  };
  auto old_vector = [&](std::size_t i) { return i == j ? t.unit() : t.basis_vector(i); };
  std::vector<TableEntry> basis = t.basis();
  if (t.index_of("1") < 0) basis[j].name = "1";
  const std::size_t n = t.size();
  std::vector<std::vector<Vec>> products(n, std::vector<Vec>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) products[a][b] = to_new(t.multiply(old_vector(a), old_vector(b)));
  return RingTable(ring, t.cap(), std::move(basis), std::move(products), Vec{{j, 1}});
}

}  // namespace thhkit
