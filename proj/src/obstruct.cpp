#include "thhkit/obstruct.hpp"

#include <functional>

#include "thhkit/errors.hpp"
#include "thhkit/steenrod.hpp"

namespace thhkit {

std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Unsolvable: return "Unsolvable";
    case VerdictStatus::SolvableWitness: return "SolvableWitness";
    case VerdictStatus::Incomplete: return "Incomplete";
  }
  return "";
}

std::string to_string(ObstructionProblem p) {
  switch (p) {
    case ObstructionProblem::SquareP2: return "square";
    case ObstructionProblem::SquareP2Control: return "square-control";
    case ObstructionProblem::BocksteinQ1: return "bockstein";
    case ObstructionProblem::BocksteinQ1Control: return "bockstein-control";
  }
  return "";
}

std::string to_string(ExtensionVerdict v) {
  switch (v) {
    case ExtensionVerdict::CertifiedExtension: return "CertifiedExtension";
    case ExtensionVerdict::CertifiedNonExtension: return "CertifiedNonExtension";
    case ExtensionVerdict::Unknown: return "Unknown";
  }
  return "";
}

namespace {

const std::vector<std::string> kAssumptions = {
    "the comparison map on HF_p-homology is injective",
    "the comparison map sends a⊗1 to a⊗1 for every a",
};

struct Setup {
  unsigned long p = 2;
  std::vector<std::string> basis;
  std::string equation;
  std::string ambient;
  std::string certificate;
  std::function<Candidate(const std::vector<long>&)> eval;
};

RingTable with_unit_basis(const RingTable& b) { return b.unit_index() ? b : normalize_unit(b); }

void check_input(const RingTable& b, unsigned long p) {
  if (b.ring() != Ring::fp(p)) throw MathError("RingMismatch", "B must be an F_" + std::to_string(p) + " table");
  if (b.min_degree() < 0) throw MathError("NotConnective", "B must be nonnegatively graded");
}

Setup square_setup(const RingTable& input, bool control) {
  check_input(input, 2);
  if (input.cap() < 2) throw MathError("CapTooSmall", "B must be known through degree 2");
  const RingTable b = with_unit_basis(input);
  const RingTable a = control ? table_from_algebra(*dual_steenrod(2, SteenrodBasis::Xi, 2).algebra())
                              : table_from_algebra(*hfp_homology_of_hz(2, 2).algebra());
  auto t = std::make_shared<RingTable>(tensor_tables(a, b, 2));
  const std::string a_name = control ? "xi1^2" : "xi1sq";
  const std::string target_name = a_name + "⊗" + b.entry(*b.unit_index()).name;
  const int target = t->index_of(target_name);
  if (target < 0) throw MathError("InternalError", "target " + target_name + " missing from the tensor table");
  const auto ones = t->indices_of_degree(1);
  Setup s;
  s.p = 2;
  for (std::size_t i : ones) s.basis.push_back(t->entry(i).name);
  s.equation = "z^2 = " + target_name;
  s.ambient = control ? "A_*(xi) ⊗ B" : "HF_2_*HZ ⊗ B";
  if (!control)
    s.certificate =
        "HF_2_*HZ is zero in degree 1, so every degree-1 z is 1⊗y with y in B_1. Then z^2 = 1⊗y^2 has "
        "HF_2_*HZ-degree 0 while " + target_name + " has HF_2_*HZ-degree 2, so no z works for any B.";
  const Vec target_vec{{static_cast<std::size_t>(target), 1}};
  s.eval = [t, ones, target_vec, target_name](const std::vector<long>& coords) {
    Vec z;
    for (std::size_t k = 0; k < coords.size(); ++k)
      if (coords[k]) vec_axpy(z, Vec{{ones[k], 1}}, coords[k], t->ring());
    Candidate c;
    c.coords = coords;
    c.element = t->render(z);
    const Vec sq = t->multiply(z, z);
    c.image = t->render(sq);
    c.solves = sq == target_vec;
    if (!c.solves) c.refutation = "z^2 = " + c.image + " differs from " + target_name;
    return c;
  };
  return s;
}

Setup bockstein_setup(unsigned long p, const RingTable& input, int cap, bool control) {
  if (p == 2 || !is_prime(mpz_class(p))) throw MathError("InvalidRing", "the Bockstein obstruction needs an odd prime");
  if (cap < static_cast<int>(2 * p - 2))
    throw MathError("CapTooSmall", "cap must be at least 2p - 2 = " + std::to_string(2 * p - 2));
  check_input(input, p);
  // Only B_1 enters: βQ^1 is linear and its value on 1⊗y stays symbolic.
  const int inner = static_cast<int>(2 * p - 1);
  Presentation bp;
  bp.ring = Ring::fp(p);
  for (std::size_t i : input.indices_of_degree(1)) bp.generators.push_back({input.entry(i).name, 1, GenKind::Exterior, 0});
  auto b = Algebra::create(bp, inner);
  auto ctx = std::make_shared<SteenrodContext>(control ? dual_steenrod(p, SteenrodBasis::Zeta, inner)
                                                       : hfp_homology_of_hz(p, inner));
  auto t = tensor(ctx->algebra(), b, inner);
  const auto ones = t->basis(1);
  Setup s;
  s.p = p;
  for (const auto& m : ones) s.basis.push_back(t->render_monomial(m));
  s.equation = "βQ1 z = xi1⊗1";
  s.ambient = control ? "A_*(zeta) ⊗ B" : "HF_" + std::to_string(p) + "_*HZ ⊗ B";
  if (!control)
    s.certificate =
        "HF_p_*HZ has nothing in degrees 1..2p-3, so every degree-1 z is a sum of terms 1⊗y with y in B_1, and "
        "βQ1(1⊗y) = 1⊗βQ1(y) has A-degree 0 by the Cartan formula. A term a⊗y with |a| > 0 would only "
        "produce A-degrees above |a| >= |xi1|. Either way xi1⊗1 is never a summand. Unknown operations on B "
        "are kept as opaque markers; the argument uses only A-side degrees.";
  SymbolicTensor target(ctx->algebra(), b);
  const Monomial b_unit(b->num_generators(), 0);
  const Element xi1 = ctx->named("xi1");
  for (const auto& [m, c] : xi1.terms()) target.add(m, BPart{false, b_unit, "", 0}, c);
  const DLWord word = DLWord::parse(p, "bQ1");
  s.eval = [t, b, ctx, ones, target, word](const std::vector<long>& coords) {
    Element z = t->zero();
    for (std::size_t k = 0; k < coords.size(); ++k)
      if (coords[k]) z = z + t->monomial(ones[k], coords[k]);
    Candidate c;
    c.coords = coords;
    c.element = z.to_string();
    if (c.element.empty()) c.element = "0";
    SymbolicTensor img = apply_dl_tensor(word, z, *ctx, b);
    c.image = img.to_string();
    SymbolicTensor diff = img;
    for (const auto& term : target.terms()) diff.add(term.a, term.b, -term.coeff);
    c.solves = diff.is_zero();
    if (!c.solves) c.refutation = "βQ1 z = " + c.image + " differs from xi1⊗1 = " + target.to_string();
    return c;
  };
  return s;
}

Setup make_setup(ObstructionProblem problem, unsigned long p, const RingTable& b, int cap) {
  switch (problem) {
    case ObstructionProblem::SquareP2: return square_setup(b, false);
    case ObstructionProblem::SquareP2Control: return square_setup(b, true);
    case ObstructionProblem::BocksteinQ1: return bockstein_setup(p, b, cap, false);
    case ObstructionProblem::BocksteinQ1Control: return bockstein_setup(p, b, cap, true);
  }
  throw MathError("InternalError", "unknown obstruction problem");
}

// Number of coefficient vectors, or 0 when it exceeds the limit.
unsigned long space_size(unsigned long p, std::size_t dim, unsigned long limit) {
  unsigned long n = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    if (n > limit / p) return 0;
    n *= p;
  }
  return n;
}

std::vector<long> decode(unsigned long index, unsigned long p, std::size_t dim) {
  std::vector<long> c(dim, 0);
  for (std::size_t k = dim; k-- > 0;) {
    c[k] = static_cast<long>(index % p);
    index /= p;
  }
  return c;
}

Verdict run(ObstructionProblem problem, unsigned long p, const RingTable& b, int cap) {
  if (cap < 2) throw MathError("CapTooSmall", "cap must be at least 2");
  const Setup s = make_setup(problem, p, b, cap);
  Verdict v;
  v.problem = problem;
  v.p = p;
  v.cap = cap;
  v.equation = s.equation;
  v.basis = s.basis;
  v.symbolic_certificate = s.certificate;
  v.assumptions = kAssumptions;
  const unsigned long n = space_size(p, s.basis.size(), kMaxCandidates);
  std::string dims = "degree 1 of " + s.ambient + ", dimension " + std::to_string(s.basis.size()) + " over F_" +
                     std::to_string(p) + ", cap " + std::to_string(cap);
  if (n == 0) {
    v.status = VerdictStatus::Incomplete;
    v.search_space = dims + ", more than " + std::to_string(kMaxCandidates) + " candidates (not enumerated)";
    return v;
  }
  v.search_space = dims + ", " + std::to_string(n) + " candidates";
  for (unsigned long i = 0; i < n; ++i) {
    v.candidates.push_back(s.eval(decode(i, p, s.basis.size())));
    if (v.candidates.back().solves && !v.witness) v.witness = v.candidates.back().element;
  }
  v.status = v.witness ? VerdictStatus::SolvableWitness : VerdictStatus::Unsolvable;
  return v;
}

}  // namespace

Verdict square_obstruction_p2(const RingTable& b, int cap) { return run(ObstructionProblem::SquareP2, 2, b, cap); }

Verdict square_obstruction_p2_control(const RingTable& b, int cap) {
  return run(ObstructionProblem::SquareP2Control, 2, b, cap);
}

Verdict bockstein_q1_obstruction(unsigned long p, const RingTable& b, int cap) {
  return run(ObstructionProblem::BocksteinQ1, p, b, cap);
}

Verdict bockstein_q1_obstruction_control(unsigned long p, const RingTable& b, int cap) {
  return run(ObstructionProblem::BocksteinQ1Control, p, b, cap);
}

bool replay(const Verdict& v, const RingTable& b) {
  const Setup s = make_setup(v.problem, v.p, b, v.cap);
  if (s.basis != v.basis) return false;
  const unsigned long n = space_size(v.p, s.basis.size(), kMaxCandidates);
  if (v.status == VerdictStatus::Incomplete) return n == 0 && v.candidates.empty();
  if (n != v.candidates.size()) return false;
  bool any = false;
  for (unsigned long i = 0; i < n; ++i) {
    const Candidate& rec = v.candidates[i];
    if (rec.coords != decode(i, v.p, s.basis.size())) return false;
    const Candidate again = s.eval(rec.coords);
    if (again.element != rec.element || again.image != rec.image || again.solves != rec.solves ||
        again.refutation != rec.refutation)
      return false;
    any = any || again.solves;
  }
  return any == (v.status == VerdictStatus::SolvableWitness);
}

// ---------------------------------------------------------------------------

std::vector<Relation> presentation_relations(const Presentation& p) {
  std::vector<Relation> out;
  for (std::size_t i = 0; i < p.generators.size(); ++i) {
    const auto& g = p.generators[i];
    if (g.kind == GenKind::Polynomial) continue;
    Monomial lhs(p.generators.size(), 0);
    lhs[i] = g.kind == GenKind::Exterior ? 2 : g.height;
    out.push_back({lhs, {}});
  }
  for (const auto& r : p.relations) out.push_back(r);
  return out;
}

ForcedMapResult forced_unit_map(const std::shared_ptr<const Algebra>& h, const std::vector<std::string>& designated,
                                const std::vector<Relation>& relations, int cap, unsigned long budget) {
  const Ring& ring = h->ring();
  if (!ring.is_field()) throw MathError("RingMismatch", "forced unit maps need coefficients in F_p");
  if (cap < 0) throw MathError("InvalidCap", "degree cap must be >= 0");
  const unsigned long p = ring.modulus().get_ui();
  const int inner = std::min(cap, h->cap());
  auto a = dual_steenrod(p, SteenrodBasis::Xi, inner).algebra();
  auto t = tensor(a, h, inner);

  ForcedMapResult r;
  r.p = p;
  r.cap = inner;
  r.designated = designated;

  std::vector<Element> images;
  for (std::size_t g = 0; g < h->num_generators(); ++g) images.push_back(embed_right(t, h->generator(g)));

  // Options per designated generator: leading term plus every combination of
  // a⊗h with |a| > 0 in the same degree.
  std::vector<std::size_t> slots;
  std::vector<std::vector<Element>> options;
  for (const auto& name : designated) {
    const int g = h->presentation().generator_index(name);
    if (g < 0) throw MathError("UnknownGenerator", "no generator named " + name);
    const int deg = h->presentation().generators[static_cast<std::size_t>(g)].degree;
    std::vector<Element> terms;
    for (int da = 1; da <= deg && da <= inner; ++da)
      for (const auto& am : a->basis(da))
        for (const auto& hm : h->basis(deg - da)) {
          Element term = embed_left(t, a->monomial(am)) * embed_right(t, h->monomial(hm));
          if (!term.is_zero()) terms.push_back(term);
        }
    const unsigned long n = space_size(p, terms.size(), budget);
    if (n == 0) {
      r.complete = false;
      return r;
    }
    std::vector<Element> opts;
    for (unsigned long i = 0; i < n; ++i) {
      Element e = images[static_cast<std::size_t>(g)];
      const auto c = decode(i, p, terms.size());
      for (std::size_t k = 0; k < terms.size(); ++k)
        if (c[k]) e = e + terms[k].scaled(c[k]);
      opts.push_back(e);
    }
    slots.push_back(static_cast<std::size_t>(g));
    options.push_back(std::move(opts));
  }

  unsigned long total = 1;
  for (const auto& o : options) {
    if (total > budget / o.size()) {
      r.complete = false;
      return r;
    }
    total *= o.size();
  }

  std::vector<const Relation*> checked;
  for (const auto& rel : relations) {
    std::string text = h->render_monomial(rel.lhs) + " = ";
    std::string rhs;
    for (const auto& [m, c] : rel.rhs) rhs += (rhs.empty() ? "" : " + ") + c.get_str() + "*" + h->render_monomial(m);
    text += rhs.empty() ? "0" : rhs;
    if (h->degree(rel.lhs) > inner) {
      r.unchecked_relations.push_back(text);
    } else {
      r.relations.push_back(text);
      checked.push_back(&rel);
    }
  }

  auto substitute = [&](const std::vector<Element>& img, const Monomial& m) {
    Element out = t->one();
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0) out = out * img[i].pow(static_cast<unsigned>(m[i]));
    return out;
  };

  for (unsigned long idx = 0; idx < total; ++idx) {
    ++r.enumerated;
    std::vector<Element> img = images;
    unsigned long rest = idx;
    std::vector<std::size_t> choice(options.size());
    for (std::size_t k = options.size(); k-- > 0;) {
      choice[k] = rest % options[k].size();
      rest /= options[k].size();
      img[slots[k]] = options[k][choice[k]];
    }
    bool ok = true;
    for (const Relation* rel : checked) {
      Element rhs = t->zero();
      for (const auto& [m, c] : rel->rhs) rhs = rhs + substitute(img, m).scaled(c);
      if (substitute(img, rel->lhs) != rhs) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    UnitMapCandidate cand;
    for (std::size_t k = 0; k < slots.size(); ++k)
      cand.assignment.emplace_back(designated[k], img[slots[k]].to_string());
    r.survivors.push_back(std::move(cand));
  }
  return r;
}

// ---------------------------------------------------------------------------

std::vector<GroundVerdict> extension_status(const DGA& x, int cap, const ExtensionOptions& opts) {
  std::vector<GroundVerdict> out;
  GroundVerdict own;
  own.ground = x.ring();
  if (!opts.formal) {
    own.reason = "formality not asserted; the monoid basis criterion needs a formal DGA";
  } else if (!x.connective()) {
    own.reason = "the monoid basis criterion needs a connective DGA";
  } else {
    try {
      const RingTable hr = homology_ring(x);
      SearchOptions so;
      so.budget = opts.budget;
      const SearchResult found = search_monoid_basis(hr, so);
      if (found.basis) {
        own.verdict = ExtensionVerdict::CertifiedExtension;
        own.basis = found.basis;
        own.reason = "formal, and the homology ring has a monoid-with-zero basis";
      } else if (found.status == SearchStatus::ProvenNone) {
        own.reason = "the homology ring has no monoid-with-zero basis (" + found.scope + ")";
      } else {
        own.reason = "monoid basis search exhausted its budget (" + found.scope + ")";
      }
    } catch (const MathError& e) {
      own.reason = std::string("homology ring unavailable: ") + e.what();
    }
  }
  out.push_back(own);

  const Ring& ring = x.ring();
  if (ring.is_field()) {
    const unsigned long p = ring.modulus().get_ui();
    GroundVerdict z;
    z.ground = Ring::integers();
    if (p != 2 && !opts.e_infinity) {
      z.reason = "the odd-primary obstruction needs an E-infinity F_p-DGA";
    } else {
      try {
        const RingTable b = homology_ring(x);
        Verdict v = p == 2 ? square_obstruction_p2(b, cap) : bockstein_q1_obstruction(p, b, cap);
        if (v.status == VerdictStatus::Unsolvable) {
          z.verdict = ExtensionVerdict::CertifiedNonExtension;
          z.reason = p == 2 ? "defined over F_2; " + v.equation + " has no solution"
                            : "E-infinity over F_" + std::to_string(p) + "; " + v.equation + " has no solution";
        } else {
          z.reason = "obstruction search was " + to_string(v.status);
        }
        z.obstruction = std::move(v);
      } catch (const MathError& e) {
        z.reason = std::string("obstruction unavailable: ") + e.what();
      }
    }
    out.push_back(std::move(z));
  }

  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < out.size(); ++j)
      if (i != j && out[i].ground == out[j].ground && out[i].verdict != ExtensionVerdict::Unknown &&
          out[j].verdict != ExtensionVerdict::Unknown && out[i].verdict != out[j].verdict)
        throw MathError("InternalError", "contradictory verdicts over " + out[i].ground.name());
  return out;
}

}  // namespace thhkit
