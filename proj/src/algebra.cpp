#include "thhkit/algebra.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "thhkit/errors.hpp"

namespace thhkit {

int Presentation::generator_index(const std::string& name) const {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i].name == name) return static_cast<int>(i);
  return -1;
}

namespace {

int monomial_degree(const Presentation& p, const Monomial& m) {
  int d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * p.generators[i].degree;
  return d;
}

int max_exponent(const GeneratorSpec& g) {
  switch (g.kind) {
    case GenKind::Exterior: return 1;
    case GenKind::Truncated: return g.height - 1;
    case GenKind::Polynomial: break;
  }
  return -1;  // unbounded
}

}  // namespace

bool monomial_less(const Presentation& p, const Monomial& a, const Monomial& b) {
  int da = monomial_degree(p, a), db = monomial_degree(p, b);
  if (da != db) return da < db;
  return a < b;
}

std::vector<Monomial> enumerate_monomials(const Presentation& p, int d) {
  std::vector<Monomial> out;
  const std::size_t n = p.generators.size();
  Monomial cur(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int remaining) {
    if (i == n) {
      if (remaining == 0) out.push_back(cur);
      return;
    }
    const auto& g = p.generators[i];
    int bound = max_exponent(g);
    if (g.degree == 0) {
      int top = bound < 0 ? 0 : bound;
      for (int e = 0; e <= top; ++e) {
        cur[i] = e;
        rec(i + 1, remaining);
      }
    } else {
      for (int e = 0; e * g.degree <= remaining; ++e) {
        if (bound >= 0 && e > bound) break;
        cur[i] = e;
        rec(i + 1, remaining - e * g.degree);
      }
    }
    cur[i] = 0;
  };
  if (d >= 0) rec(0, d);
  return out;
}

std::shared_ptr<const Algebra> Algebra::create(Presentation presentation, int cap) {
  if (cap < 0) throw MathError("InvalidCap", "degree cap must be >= 0");
  std::shared_ptr<Algebra> a(new Algebra(std::move(presentation), cap));
  a->validate();
  a->expand();
  return a;
}

void Algebra::validate() const {
  const auto& gens = pres_.generators;
  std::set<std::string> names;
  for (const auto& g : gens) {
    if (g.name.empty()) throw MathError("InvalidPresentation", "generator with empty name");
    if (!names.insert(g.name).second) throw MathError("InvalidPresentation", "duplicate generator " + g.name);
    if (g.degree < 0) throw MathError("InvalidPresentation", "generator " + g.name + " has negative degree");
    if (g.kind == GenKind::Truncated && g.height < 2)
      throw MathError("InvalidPresentation", "truncation height of " + g.name + " must be >= 2");
    if (g.kind == GenKind::Polynomial && g.degree == 0)
      throw MathError("InvalidPresentation", "polynomial generator " + g.name + " in degree 0 gives an infinite degree-0 piece");
    bool odd = g.degree % 2 != 0;
    bool big = g.kind == GenKind::Polynomial || (g.kind == GenKind::Truncated && g.height > 2);
    if (pres_.signs == SignRule::Koszul && odd && big && !pres_.ring.char_two())
      throw MathError("InvalidPresentation", "odd generator " + g.name + " must be exterior (or trunc:2) under the Koszul rule outside characteristic 2");
  }
  for (std::size_t r = 0; r < pres_.relations.size(); ++r) {
    const auto& rel = pres_.relations[r];
    if (rel.lhs.size() != gens.size()) throw MathError("InvalidPresentation", "relation arity mismatch");
    int d = monomial_degree(pres_, rel.lhs);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      int b = max_exponent(gens[i]);
      if (b >= 0 && rel.lhs[i] > b)
        throw MathError("InvalidPresentation", "relation " + std::to_string(r + 1) + " has a left side that already vanishes");
    }
    for (const auto& [m, c] : rel.rhs) {
      if (monomial_degree(pres_, m) != d)
        throw MathError("InvalidPresentation", "relation " + std::to_string(r + 1) + " is not homogeneous");
      if (!monomial_less(pres_, m, rel.lhs))
        throw MathError("InvalidPresentation",
                        "relation " + std::to_string(r + 1) + " right side is not smaller than its left side in the rewriting order");
    }
  }
}

int Algebra::degree(const Monomial& m) const { return monomial_degree(pres_, m); }

const std::vector<Monomial>& Algebra::basis(int d) const {
  static const std::vector<Monomial> empty;
  if (d < 0 || d > cap_) return empty;
  return basis_[static_cast<std::size_t>(d)];
}

std::optional<std::pair<int, Monomial>> Algebra::raw_product(const Monomial& a, const Monomial& b) const {
  const auto& gens = pres_.generators;
  Monomial out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = a[i] + b[i];
    int bound = max_exponent(gens[i]);
    if (bound >= 0 && out[i] > bound) return std::nullopt;
  }
  int sign = 1;
  if (pres_.signs == SignRule::Koszul && !pres_.ring.char_two()) {
    // b's factor j moves left past a's factors i > j.
    long parity = 0;
    long odd_a_suffix = 0;
    for (std::size_t k = a.size(); k-- > 0;) {
      if (gens[k].degree % 2 != 0) {
        parity += static_cast<long>(b[k]) * odd_a_suffix;
        odd_a_suffix += a[k];
      }
    }
    if (parity % 2 != 0) sign = -1;
  }
  return std::make_pair(sign, std::move(out));
}

namespace {

void accumulate(std::map<Monomial, mpz_class>& into, const Monomial& m, const mpz_class& c, const Ring& ring) {
  auto [it, inserted] = into.try_emplace(m, 0);
  it->second = ring.add(it->second, c);
  if (it->second == 0) into.erase(it);
}

bool divides(const Monomial& d, const Monomial& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    if (d[i] > m[i]) return false;
  return true;
}

}  // namespace

std::map<Monomial, mpz_class> Algebra::reduce_once(const Monomial& m, std::size_t r, const mpz_class& c) const {
  const auto& rel = pres_.relations[r];
  Monomial rest(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) rest[i] = m[i] - rel.lhs[i];
  auto split = raw_product(rel.lhs, rest);
  // lhs * rest == sign * m, so m == sign * lhs * rest -> sign * rhs * rest.
  std::map<Monomial, mpz_class> out;
  if (!split) return out;
  const mpz_class sc = c * split->first;
  for (const auto& [rm, rc] : rel.rhs) {
    auto prod = raw_product(rm, rest);
    if (!prod) continue;
    for (const auto& [nm, nc] : normal_form(prod->second, sc * rc * prod->first)) accumulate(out, nm, nc, ring());
  }
  return out;
}

std::map<Monomial, mpz_class> Algebra::normal_form_uncached(const Monomial& m, const mpz_class& c) const {
  for (std::size_t r = 0; r < pres_.relations.size(); ++r)
    if (divides(pres_.relations[r].lhs, m)) return reduce_once(m, r, c);
  std::map<Monomial, mpz_class> out;
  mpz_class v = ring().reduce(c);
  if (v != 0) out.emplace(m, v);
  return out;
}

std::map<Monomial, mpz_class> Algebra::normal_form(const Monomial& m, const mpz_class& c) const {
  auto it = nf_cache_.find(m);
  if (it == nf_cache_.end()) return normal_form_uncached(m, c);
  std::map<Monomial, mpz_class> out;
  for (const auto& [nm, nc] : it->second) accumulate(out, nm, nc * c, ring());
  return out;
}

void Algebra::expand() {
  basis_.assign(static_cast<std::size_t>(cap_) + 1, {});
  for (int d = 0; d <= cap_; ++d) {
    auto monos = enumerate_monomials(pres_, d);
    std::sort(monos.begin(), monos.end());  // ascending lex == rewriting order within a degree
    for (const auto& m : monos) {
      std::vector<std::size_t> applicable;
      for (std::size_t r = 0; r < pres_.relations.size(); ++r)
        if (divides(pres_.relations[r].lhs, m)) applicable.push_back(r);
      if (applicable.empty()) {
        basis_[static_cast<std::size_t>(d)].push_back(m);
        continue;
      }
      auto nf = reduce_once(m, applicable.front(), 1);
      for (std::size_t k = 1; k < applicable.size(); ++k) {
        if (reduce_once(m, applicable[k], 1) != nf)
          throw MathError("NonConfluentRelations",
                          "monomial " + render_monomial(m) + " in degree " + std::to_string(d) +
                              " has two distinct normal forms (relations " + std::to_string(applicable.front() + 1) +
                              " and " + std::to_string(applicable[k] + 1) + ")");
      }
      nf_cache_.emplace(m, std::move(nf));
    }
    auto& b = basis_[static_cast<std::size_t>(d)];
    std::sort(b.begin(), b.end(), [](const Monomial& x, const Monomial& y) { return y < x; });
  }
}

std::string Algebra::render_monomial(const Monomial& m) const {
  auto part = [&](std::size_t from, std::size_t to) {
    std::string s;
    for (std::size_t i = from; i < to; ++i) {
      if (m[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += pres_.generators[i].name;
      if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s.empty() ? std::string("1") : s;
  };
  if (split_ < m.size()) return part(0, split_) + "⊗" + part(split_, m.size());
  return part(0, m.size());
}

Element Algebra::zero() const { return Element(shared_from_this(), {}); }

Element Algebra::one() const { return monomial(Monomial(num_generators(), 0)); }

Element Algebra::monomial(const Monomial& m, const mpz_class& c) const {
  if (m.size() != num_generators()) throw MathError("InvalidMonomial", "monomial arity mismatch");
  for (std::size_t i = 0; i < m.size(); ++i) {
    int b = max_exponent(pres_.generators[i]);
    if (m[i] < 0) throw MathError("InvalidMonomial", "negative exponent");
    if (b >= 0 && m[i] > b) return zero();
  }
  return Element(shared_from_this(), normal_form(m, c));
}

Element Algebra::generator(std::size_t index) const {
  Monomial m(num_generators(), 0);
  m.at(index) = 1;
  return monomial(m);
}

Element Algebra::generator(const std::string& name) const {
  int i = pres_.generator_index(name);
  if (i < 0) throw MathError("UnknownGenerator", name);
  return generator(static_cast<std::size_t>(i));
}

// ---------------------------------------------------------------------------

Element::Element(std::shared_ptr<const Algebra> algebra, std::map<Monomial, mpz_class> terms)
    : alg_(std::move(algebra)), terms_(std::move(terms)) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second = alg_->ring().reduce(it->second);
    it = it->second == 0 ? terms_.erase(it) : std::next(it);
  }
}

void Element::check_same(const Element& o) const {
  if (alg_ != o.alg_) throw MathError("MixedAlgebras", "operands live in different algebras");
}

std::optional<int> Element::degree() const {
  if (terms_.empty() || !is_homogeneous()) return std::nullopt;
  return alg_->degree(terms_.begin()->first);
}

bool Element::is_homogeneous() const {
  if (terms_.empty()) return true;
  int d = alg_->degree(terms_.begin()->first);
  for (const auto& [m, c] : terms_)
    if (alg_->degree(m) != d) return false;
  return true;
}

mpz_class Element::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

Element Element::operator+(const Element& o) const {
  check_same(o);
  auto out = terms_;
  for (const auto& [m, c] : o.terms_) accumulate(out, m, c, alg_->ring());
  return Element(alg_, std::move(out));
}

Element Element::operator-() const { return scaled(-1); }

Element Element::operator-(const Element& o) const { return *this + (-o); }

Element Element::scaled(const mpz_class& c) const {
  std::map<Monomial, mpz_class> out;
  for (const auto& [m, v] : terms_) out.emplace(m, v * c);
  return Element(alg_, std::move(out));
}

Element Element::operator*(const Element& o) const {
  check_same(o);
  const Ring& ring = alg_->ring();
  std::map<Monomial, mpz_class> out;
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : o.terms_) {
      auto prod = alg_->raw_product(a, b);
      if (!prod) continue;
      for (const auto& [m, c] : alg_->normal_form(prod->second, ca * cb * prod->first)) accumulate(out, m, c, ring);
    }
  }
  return Element(alg_, std::move(out));
}

Element Element::pow(unsigned n) const {
  Element result = alg_->one();
  for (unsigned i = 0; i < n; ++i) result = result * *this;
  return result;
}

bool Element::operator==(const Element& o) const {
  if (alg_ != o.alg_) return false;
  return terms_ == o.terms_;
}

std::string Element::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Monomial, mpz_class>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(), [&](const auto& x, const auto& y) {
    int dx = alg_->degree(x.first), dy = alg_->degree(y.first);
    if (dx != dy) return dx < dy;
    return y.first < x.first;
  });
  std::string s;
  for (const auto& [m, c] : sorted) {
    mpz_class v = c;
    // Over Z/m print the representative closest to zero for readability.
    if (!alg_->ring().is_integers() && 2 * v > alg_->ring().modulus()) v -= alg_->ring().modulus();
    bool neg = v < 0;
    if (neg) v = -v;
    if (s.empty()) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    std::string mono = alg_->render_monomial(m);
    bool unit_mono = std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
    if (v != 1 || (unit_mono && alg_->tensor_split() == m.size())) {
      s += v.get_str();
      if (!unit_mono || alg_->tensor_split() < m.size()) s += "*" + mono;
    } else {
      s += mono;
    }
  }
  return s;
}

// ---------------------------------------------------------------------------

std::shared_ptr<const Algebra> tensor(const std::shared_ptr<const Algebra>& a, const std::shared_ptr<const Algebra>& b,
                                      int cap) {
  if (a->ring() != b->ring()) throw MathError("RingMismatch", "tensor factors over different rings");
  if (!a->ring().is_field())
    throw MathError("NonFieldCoefficients", "tensor product is only implemented over a field; use the Kunneth route for Z");
  if (a->presentation().signs != b->presentation().signs)
    throw MathError("InvalidPresentation", "tensor factors use different sign rules");
  Presentation p;
  p.ring = a->ring();
  p.signs = a->presentation().signs;
  const std::size_t na = a->num_generators(), nb = b->num_generators();
  p.generators = a->presentation().generators;
  for (const auto& g : b->presentation().generators) {
    if (p.generator_index(g.name) >= 0)
      throw MathError("InvalidPresentation", "generator name " + g.name + " occurs in both tensor factors");
    p.generators.push_back(g);
  }
  auto widen = [&](const Monomial& m, bool left) {
    Monomial out(na + nb, 0);
    std::copy(m.begin(), m.end(), out.begin() + (left ? 0 : static_cast<long>(na)));
    return out;
  };
  for (int side = 0; side < 2; ++side) {
    const auto& src = side == 0 ? a : b;
    for (const auto& rel : src->presentation().relations) {
      Relation r;
      r.lhs = widen(rel.lhs, side == 0);
      for (const auto& [m, c] : rel.rhs) r.rhs.emplace_back(widen(m, side == 0), c);
      p.relations.push_back(std::move(r));
    }
  }
  std::shared_ptr<Algebra> t(new Algebra(std::move(p), cap));
  t->split_ = na;
  t->validate();
  t->expand();
  return t;
}

Element embed_left(const std::shared_ptr<const Algebra>& t, const Element& a) {
  std::map<Monomial, mpz_class> out;
  for (const auto& [m, c] : a.terms()) {
    Monomial w(t->num_generators(), 0);
    std::copy(m.begin(), m.end(), w.begin());
    out.emplace(std::move(w), c);
  }
  return Element(t, std::move(out));
}

Element embed_right(const std::shared_ptr<const Algebra>& t, const Element& b) {
  std::map<Monomial, mpz_class> out;
  const std::size_t off = t->tensor_split();
  for (const auto& [m, c] : b.terms()) {
    Monomial w(t->num_generators(), 0);
    std::copy(m.begin(), m.end(), w.begin() + static_cast<long>(off));
    out.emplace(std::move(w), c);
  }
  return Element(t, std::move(out));
}

std::vector<std::vector<Monomial>> expand_basis(const Presentation& p, int cap) {
  auto alg = Algebra::create(p, cap);
  std::vector<std::vector<Monomial>> out;
  for (int d = 0; d <= cap; ++d) out.push_back(alg->basis(d));
  return out;
}

}  // namespace thhkit
