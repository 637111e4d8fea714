#include "thhkit/steenrod.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

#include "thhkit/errors.hpp"

namespace thhkit {

std::string DLOp::to_string() const { return std::string(beta ? "bQ" : "Q") + std::to_string(s); }

DLWord DLWord::parse(unsigned long p, const std::string& text) {
  DLWord w;
  w.p = p;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    DLOp op;
    std::string t = token;
    token.clear();
    if (t.rfind("bQ", 0) == 0) {
      op.beta = true;
      t = t.substr(2);
    } else if (t.rfind("βQ", 0) == 0) {
      op.beta = true;
      t = t.substr(std::string("βQ").size());
    } else if (!t.empty() && t[0] == 'Q') {
      t = t.substr(1);
    } else {
      throw MathError("InvalidWord", "cannot parse operation '" + t + "'");
    }
    if (t.rfind("^", 0) == 0) t = t.substr(1);
    std::size_t pos = 0;
    if (t.empty()) throw MathError("InvalidWord", "operation needs an index");
    long s = 0;
    try {
      s = std::stol(t, &pos);
    } catch (...) {
      throw MathError("InvalidWord", "bad operation index '" + t + "'");
    }
    if (pos != t.size()) throw MathError("InvalidWord", "bad operation index '" + t + "'");
    op.s = s;
    if (op.beta && p == 2) throw MathError("InvalidWord", "no Bockstein-composed operations at p = 2");
    w.factors.push_back(op);
  };
  for (char c : text) {
    if (c == ' ' || c == '*' || c == '\t') {
      flush();
    } else {
      token += c;
    }
  }
  flush();
  if (w.factors.empty()) throw MathError("InvalidWord", "empty operation word");
  return w;
}

std::string DLWord::to_string() const {
  std::string s;
  for (const auto& f : factors) s += (s.empty() ? "" : " ") + f.to_string();
  return s;
}

// ---------------------------------------------------------------------------

SteenrodContext::SteenrodContext(unsigned long p, std::shared_ptr<const Algebra> algebra, std::vector<ActionEntry> actions,
                                 std::map<std::string, Element> aliases)
    : p_(p), algebra_(std::move(algebra)), actions_(std::move(actions)), aliases_(std::move(aliases)) {
  if (!is_prime(mpz_class(p))) throw MathError("InvalidRing", "p must be prime");
  if (algebra_->ring() != Ring::fp(p)) throw MathError("RingMismatch", "Dyer–Lashof data needs coefficients in F_p");
  for (std::size_t i = 0; i < actions_.size(); ++i) {
    const auto& a = actions_[i];
    int g = algebra_->presentation().generator_index(a.generator);
    if (g < 0) throw MathError("UnknownGenerator", a.generator);
    if (a.op.beta && p == 2) throw MathError("InvalidWord", "no Bockstein-composed operations at p = 2");
    if (a.value.algebra() != algebra_) throw MathError("MixedAlgebras", "action value lives in another algebra");
    const int expected = algebra_->presentation().generators[static_cast<std::size_t>(g)].degree + static_cast<int>(shift(a.op));
    if (!a.value.is_zero() && a.value.degree() != expected)
      throw MathError("InvalidTable", a.op.to_string() + "(" + a.generator + ") must have degree " + std::to_string(expected));
    if (!lookup_.emplace(std::make_pair(static_cast<std::size_t>(g), a.op), i).second)
      throw MathError("InvalidTable", "duplicate entry for " + a.op.to_string() + "(" + a.generator + ")");
  }
}

const Element* SteenrodContext::lookup(std::size_t generator, const DLOp& op) const {
  auto it = lookup_.find({generator, op});
  return it == lookup_.end() ? nullptr : &actions_[it->second].value;
}

Element SteenrodContext::named(const std::string& name) const {
  if (algebra_->presentation().generator_index(name) >= 0) return algebra_->generator(name);
  auto it = aliases_.find(name);
  if (it != aliases_.end()) return it->second;
  throw MathError("UnknownGenerator", "no generator named " + name);
}

long SteenrodContext::shift(const DLOp& op) const {
  if (p_ == 2) return op.s;
  return 2 * op.s * static_cast<long>(p_ - 1) - (op.beta ? 1 : 0);
}

namespace {

// Smallest s with Q^s possibly nonzero on an element of degree n.
long instability_floor(unsigned long p, long n) { return p == 2 ? n : (n + 1) / 2; }

}  // namespace

SteenrodContext SteenrodContext::without_unstable_entries() const {
  std::vector<ActionEntry> kept;
  for (const auto& a : actions_) {
    int g = algebra_->presentation().generator_index(a.generator);
    long n = algebra_->presentation().generators[static_cast<std::size_t>(g)].degree;
    bool below = p_ == 2 ? a.op.s < n : 2 * a.op.s < n;
    if (!below) kept.push_back(a);
  }
  return SteenrodContext(p_, algebra_, std::move(kept), aliases_);
}

// ---------------------------------------------------------------------------

namespace {

struct GenDef {
  int degree;
  std::string name;
  GenKind kind;
};

Presentation presentation_of(unsigned long p, std::vector<GenDef> defs) {
  std::stable_sort(defs.begin(), defs.end(), [](const GenDef& a, const GenDef& b) { return a.degree < b.degree; });
  Presentation pres;
  pres.ring = Ring::fp(p);
  for (const auto& d : defs) pres.generators.push_back({d.name, d.degree, d.kind, 0});
  return pres;
}

long ipow(long b, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// Polynomial generators of degree 2(p^r - 1) (odd p) or 2^r - 1 (p = 2), r >= first.
void add_polynomials(std::vector<GenDef>& defs, unsigned long p, int cap, const std::string& stem, int first) {
  for (int r = first;; ++r) {
    long d = p == 2 ? ipow(2, r) - 1 : 2 * (ipow(static_cast<long>(p), r) - 1);
    if (d > cap) break;
    defs.push_back({static_cast<int>(d), stem + std::to_string(r), GenKind::Polynomial});
  }
}

// Exterior generators of degree 2p^s - 1, s >= first.
void add_exteriors(std::vector<GenDef>& defs, unsigned long p, int cap, const std::string& stem, int first) {
  for (int s = first;; ++s) {
    long d = 2 * ipow(static_cast<long>(p), s) - 1;
    if (d > cap) break;
    defs.push_back({static_cast<int>(d), stem + std::to_string(s), GenKind::Exterior});
  }
}

}  // namespace

std::vector<ActionEntry> generator_formulas(unsigned long p, const std::shared_ptr<const Algebra>& a) {
  std::vector<ActionEntry> out;
  const auto& pres = a->presentation();
  auto has = [&](const std::string& n) { return pres.generator_index(n) >= 0; };
  if (p == 2) {
    if (!has("zeta1")) return out;
    for (int s = 1; has("zeta" + std::to_string(s)); ++s)
      out.push_back({"zeta1", DLOp{false, ipow(2, s) - 2}, a->generator("zeta" + std::to_string(s))});
    return out;
  }
  if (!has("tau0")) return out;
  const long pl = static_cast<long>(p);
  for (int s = 1;; ++s) {
    const long idx = (ipow(pl, s) - 1) / (pl - 1);
    const mpz_class sign = s % 2 ? -1 : 1;
    bool any = false;
    if (has("taubar" + std::to_string(s))) {
      out.push_back({"tau0", DLOp{false, idx}, a->generator("taubar" + std::to_string(s)).scaled(sign)});
      any = true;
    }
    if (has("zeta" + std::to_string(s))) {
      out.push_back({"tau0", DLOp{true, idx}, a->generator("zeta" + std::to_string(s)).scaled(sign)});
      any = true;
    }
    if (!any) break;
  }
  return out;
}

SteenrodContext dual_steenrod(unsigned long p, SteenrodBasis basis, int cap) {
  if (cap < 0) throw MathError("InvalidCap", "degree cap must be >= 0");
  std::vector<GenDef> defs;
  const bool zeta = basis == SteenrodBasis::Zeta;
  if (p == 2) {
    add_polynomials(defs, p, cap, zeta ? "zeta" : "xi", 1);
  } else {
    if (zeta) {
      if (cap >= 1) defs.push_back({1, "tau0", GenKind::Exterior});
      add_polynomials(defs, p, cap, "zeta", 1);
      add_exteriors(defs, p, cap, "taubar", 1);
    } else {
      add_polynomials(defs, p, cap, "xi", 1);
      add_exteriors(defs, p, cap, "tau", 0);
    }
  }
  auto alg = Algebra::create(presentation_of(p, defs), cap);
  const auto& pres = alg->presentation();
  std::map<std::string, Element> aliases;
  // zeta1 = -xi1 (equal at p = 2).
  const mpz_class minus = p == 2 ? 1 : -1;
  if (zeta && pres.generator_index("zeta1") >= 0) aliases.emplace("xi1", alg->generator("zeta1").scaled(minus));
  if (!zeta && pres.generator_index("xi1") >= 0) aliases.emplace("zeta1", alg->generator("xi1").scaled(minus));
  if (zeta && p != 2 && pres.generator_index("tau0") >= 0) aliases.emplace("taubar0", alg->generator("tau0"));
  std::vector<ActionEntry> actions;
  if (zeta) actions = generator_formulas(p, alg);
  return SteenrodContext(p, alg, std::move(actions), std::move(aliases));
}

SteenrodContext hfp_homology_of_hz(unsigned long p, int cap) {
  if (cap < 0) throw MathError("InvalidCap", "degree cap must be >= 0");
  std::vector<GenDef> defs;
  if (p == 2) {
    if (cap >= 2) defs.push_back({2, "xi1sq", GenKind::Polynomial});
    add_polynomials(defs, p, cap, "xi", 2);
  } else {
    add_polynomials(defs, p, cap, "xi", 1);
    add_exteriors(defs, p, cap, "tau", 1);
  }
  return SteenrodContext(p, Algebra::create(presentation_of(p, defs), cap));
}

Element hz_to_dual_steenrod(const Element& e, const SteenrodContext& target) {
  const auto& src = e.algebra()->presentation();
  Element out = target.algebra()->zero();
  for (const auto& [m, c] : e.terms()) {
    Element term = target.algebra()->one().scaled(c);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      const std::string& name = src.generators[i].name;
      Element g = name == "xi1sq" ? target.named("xi1").pow(2) : target.named(name);
      term = term * g.pow(static_cast<unsigned>(m[i]));
    }
    out = out + term;
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

class Evaluator {
 public:
  explicit Evaluator(const SteenrodContext& ctx) : ctx_(ctx), alg_(*ctx.algebra()) {}

  Element eval(const DLOp& op, const Monomial& m) {
    auto key = std::make_tuple(op.beta, op.s, m);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Element v = compute(op, m);
    memo_.emplace(std::move(key), v);
    return v;
  }

 private:
  Element compute(const DLOp& op, const Monomial& m) {
    const unsigned long p = ctx_.p();
    const long n = alg_.degree(m);
    int total = 0;
    std::size_t first = m.size();
    for (std::size_t i = 0; i < m.size(); ++i) {
      total += m[i];
      if (m[i] > 0 && first == m.size()) first = i;
    }
    if (total == 0) return !op.beta && op.s == 0 ? alg_.one() : alg_.zero();
    if (total == 1)
      if (const Element* v = ctx_.lookup(first, op)) return *v;
    const Element self = alg_.monomial(m);
    if (p == 2) {
      if (op.s < n) return alg_.zero();
      if (op.s == n) return top(self, n);
    } else {
      if (2 * op.s < n) return alg_.zero();
      if (2 * op.s == n) return op.beta ? alg_.zero() : top(self, n);
    }
    const long target = n + ctx_.shift(op);
    if (target > alg_.cap())
      throw MathError("DegreeOverflow", op.to_string() + "(" + alg_.render_monomial(m) + ") has degree " +
                                            std::to_string(target) + ", above the cap " + std::to_string(alg_.cap()));
    if (total == 1)
      throw MathError("MissingGeneratorAction",
                      op.to_string() + "(" + alg_.render_monomial(m) + ") is neither tabulated nor forced by instability");
    Monomial g(m.size(), 0), rest = m;
    g[first] = 1;
    rest[first] -= 1;
    const long g_deg = alg_.degree(g);
    const long upper = op.s - instability_floor(p, alg_.degree(rest));
    Element out = alg_.zero();
    for (long i = 0; i <= upper; ++i) {
      const long j = op.s - i;
      if (!op.beta) {
        Element qg = eval({false, i}, g);
        if (qg.is_zero()) continue;
        out = out + qg * eval({false, j}, rest);
      } else {
        Element bqg = eval({true, i}, g);
        if (!bqg.is_zero()) out = out + bqg * eval({false, j}, rest);
        Element qg = eval({false, i}, g);
        if (!qg.is_zero()) out = out + (qg * eval({true, j}, rest)).scaled(g_deg % 2 ? -1 : 1);
      }
    }
    return out;
  }

  Element top(const Element& self, long n) {
    const long d = n * static_cast<long>(ctx_.p());
    if (d > alg_.cap())
      throw MathError("DegreeOverflow", "p-th power of a degree-" + std::to_string(n) + " element exceeds the cap");
    return self.pow(static_cast<unsigned>(ctx_.p()));
  }

  const SteenrodContext& ctx_;
  const Algebra& alg_;
  std::map<std::tuple<bool, long, Monomial>, Element> memo_;
};

}  // namespace

Element apply_op(const DLOp& op, const Element& e, const SteenrodContext& ctx) {
  if (e.algebra() != ctx.algebra()) throw MathError("MixedAlgebras", "element does not live in the context algebra");
  if (op.beta && ctx.p() == 2) throw MathError("InvalidWord", "no Bockstein-composed operations at p = 2");
  if (!e.is_homogeneous()) throw MathError("Inhomogeneous", "operations are evaluated on homogeneous elements");
  Evaluator ev(ctx);
  Element out = ctx.algebra()->zero();
  for (const auto& [m, c] : e.terms()) out = out + ev.eval(op, m).scaled(c);
  return out;
}

Element apply_dl(const DLWord& w, const Element& e, const SteenrodContext& ctx) {
  if (w.p != ctx.p()) throw MathError("InvalidWord", "operation word and context use different primes");
  Element cur = e;
  for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) cur = apply_op(*it, cur, ctx);
  return cur;
}

// ---------------------------------------------------------------------------

std::string SymbolicTensor::render_b(const BPart& b) const {
  return b.symbolic ? b.marker : b_->render_monomial(b.mono);
}

void SymbolicTensor::add(const Monomial& a, const BPart& b, const mpz_class& c) {
  const Ring& ring = a_->ring();
  auto key = std::make_pair(a, render_b(b));
  auto [it, inserted] = terms_.try_emplace(key, TensorTerm{a, b, 0});
  it->second.coeff = ring.add(it->second.coeff, c);
  if (it->second.coeff == 0) terms_.erase(it);
}

std::vector<TensorTerm> SymbolicTensor::terms() const {
  std::vector<TensorTerm> out;
  for (const auto& [k, t] : terms_) out.push_back(t);
  return out;
}

mpz_class SymbolicTensor::coefficient(const Monomial& a, const Monomial& b) const {
  auto it = terms_.find({a, b_->render_monomial(b)});
  return it == terms_.end() ? mpz_class(0) : it->second.coeff;
}

std::string SymbolicTensor::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<TensorTerm> sorted = terms();
  std::stable_sort(sorted.begin(), sorted.end(), [&](const TensorTerm& x, const TensorTerm& y) {
    int dx = a_->degree(x.a), dy = a_->degree(y.a);
    if (dx != dy) return dx > dy;
    return y.a < x.a;
  });
  const mpz_class& p = a_->ring().modulus();
  std::string s;
  for (const auto& t : sorted) {
    mpz_class v = t.coeff;
    if (2 * v > p) v -= p;
    bool neg = v < 0;
    if (neg) v = -v;
    s += s.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    if (v != 1) s += v.get_str() + "*";
    s += a_->render_monomial(t.a) + "⊗" + render_b(t.b);
  }
  return s;
}

namespace {

std::vector<std::pair<BPart, mpz_class>> b_side(const DLOp& op, const BPart& y, unsigned long p, long shift,
                                               const Algebra& b) {
  std::vector<std::pair<BPart, mpz_class>> out;
  const bool unit = !y.symbolic && std::all_of(y.mono.begin(), y.mono.end(), [](int e) { return e == 0; });
  if (unit) {
    if (!op.beta && op.s == 0) out.emplace_back(y, 1);
    return out;
  }
  const long n = y.degree;
  const bool below = p == 2 ? op.s < n : 2 * op.s < n;
  const bool at_top = p == 2 ? op.s == n : 2 * op.s == n;
  if (below || (at_top && op.beta)) return out;
  if (at_top) {
    if (y.symbolic) {
      out.emplace_back(BPart{true, {}, "(" + y.marker + ")^" + std::to_string(p), static_cast<int>(n * static_cast<long>(p))}, 1);
      return out;
    }
    Element power = b.monomial(y.mono).pow(static_cast<unsigned>(p));
    for (const auto& [m, c] : power.terms()) out.emplace_back(BPart{false, m, "", b.degree(m)}, c);
    return out;
  }
  const std::string inner = y.symbolic ? y.marker : b.render_monomial(y.mono);
  out.emplace_back(BPart{true, {}, op.to_string() + "(" + inner + ")", static_cast<int>(n + shift)}, 1);
  return out;
}

}  // namespace

SymbolicTensor apply_dl_tensor(const DLWord& w, const Element& e, const SteenrodContext& a_ctx,
                               const std::shared_ptr<const Algebra>& b) {
  const auto& t = e.algebra();
  const Algebra& a = *a_ctx.algebra();
  const std::size_t na = a.num_generators();
  if (t->tensor_split() != na || t->num_generators() != na + b->num_generators())
    throw MathError("MixedAlgebras", "element does not live in the tensor of the two given algebras");
  if (w.p != a_ctx.p()) throw MathError("InvalidWord", "operation word and context use different primes");
  const unsigned long p = a_ctx.p();
  SymbolicTensor cur(a_ctx.algebra(), b);
  for (const auto& [m, c] : e.terms()) {
    Monomial am(m.begin(), m.begin() + static_cast<long>(na)), bm(m.begin() + static_cast<long>(na), m.end());
    cur.add(am, BPart{false, bm, "", b->degree(bm)}, c);
  }
  for (auto f = w.factors.rbegin(); f != w.factors.rend(); ++f) {
    const DLOp op = *f;
    if (op.beta && p == 2) throw MathError("InvalidWord", "no Bockstein-composed operations at p = 2");
    SymbolicTensor next(a_ctx.algebra(), b);
    for (const auto& term : cur.terms()) {
      const bool a_unit = std::all_of(term.a.begin(), term.a.end(), [](int x) { return x == 0; });
      const bool b_unit = !term.b.symbolic && std::all_of(term.b.mono.begin(), term.b.mono.end(), [](int x) { return x == 0; });
      const Element a_elt = a.monomial(term.a);
      const long a_deg = a.degree(term.a);
      long lo = 0, hi = op.s - (b_unit ? 0 : instability_floor(p, term.b.degree));
      if (b_unit) lo = op.s;
      if (a_unit) lo = hi = 0;
      lo = std::max(lo, 0L);
      for (long i = lo; i <= hi; ++i) {
        const long j = op.s - i;
        auto add_products = [&](const Element& left, const DLOp& bop, const mpz_class& sign) {
          if (left.is_zero()) return;
          for (const auto& [bp, bc] : b_side(bop, term.b, p, a_ctx.shift(bop), *b))
            for (const auto& [lm, lc] : left.terms()) next.add(lm, bp, term.coeff * sign * lc * bc);
        };
        if (!op.beta) {
          add_products(apply_op({false, i}, a_elt, a_ctx), {false, j}, 1);
        } else {
          add_products(apply_op({true, i}, a_elt, a_ctx), {false, j}, 1);
          add_products(apply_op({false, i}, a_elt, a_ctx), {true, j}, a_deg % 2 ? -1 : 1);
        }
      }
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace thhkit
