// Batch front end: every subcommand reads input documents, runs one library
// operation and prints a report (text, or JSON with --json).

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "report.hpp"
#include "thhkit/basis.hpp"
#include "thhkit/dga.hpp"
#include "thhkit/errors.hpp"
#include "thhkit/format.hpp"
#include "thhkit/hochschild.hpp"
#include "thhkit/obstruct.hpp"
#include "thhkit/parallel.hpp"
#include "thhkit/steenrod.hpp"
#include "thhkit/thh.hpp"

using namespace thhkit;
using thhkit::cli::Json;

namespace {

std::string status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "Found";
    case SearchStatus::ProvenNone: return "ProvenNone";
    case SearchStatus::BudgetExhausted: return "BudgetExhausted";
  }
  return "";
}

Json table_json(const RingTable& t) {
  Json j;
  j["ring"] = t.ring().name();
  j["cap"] = t.cap();
  Json basis = Json::array();
  for (const auto& e : t.basis()) basis.push_back(Json{{"name", e.name}, {"degree", e.degree}});
  j["basis"] = basis;
  const auto unit = t.unit_index();
  j["unit"] = unit ? t.entry(*unit).name : t.render(t.unit());
  Json products = Json::array();
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = 0; b < t.size(); ++b) {
      if (unit && (a == *unit || b == *unit)) continue;
      if (t.product(a, b).empty()) continue;
      products.push_back(t.entry(a).name + "*" + t.entry(b).name + " = " + t.render(t.product(a, b)));
    }
  j["products"] = products;
  return j;
}

Json basis_json(const RingTable& t, const MonoidBasis& b) {
  Json out = Json::array();
  for (const auto& e : b.elements) out.push_back(Json{{"name", e.name}, {"degree", e.degree}, {"coords", t.render(e.coords)}});
  return out;
}

Json graded_json(const GradedModuleResult& r) {
  Json j;
  j["degree_cap"] = r.degree_cap;
  j["length_cap"] = r.length_cap;
  j["exactness"] = to_string(r.exactness);
  Json values = Json::array();
  for (std::size_t d = 0; d < r.values.size(); ++d)
    values.push_back(Json{{"degree", static_cast<int>(d)}, {"value", r.values[d].to_string()}});
  j["values"] = values;
  return j;
}

Json verdict_json(const Verdict& v, const RingTable& b) {
  Json j;
  j["problem"] = to_string(v.problem);
  j["status"] = to_string(v.status);
  j["p"] = v.p;
  j["cap"] = v.cap;
  j["equation"] = v.equation;
  j["search_space"] = v.search_space;
  j["basis"] = v.basis;
  Json cands = Json::array();
  for (const auto& c : v.candidates)
    cands.push_back(Json{{"z", c.element}, {"image", c.image}, {"result", c.solves ? "solves" : c.refutation}});
  j["candidates"] = cands;
  j["witness"] = v.witness ? *v.witness : "none";
  if (!v.symbolic_certificate.empty()) j["symbolic_certificate"] = v.symbolic_certificate;
  j["assumptions"] = v.assumptions;
  j["replay"] = replay(v, b) ? "ok" : "MISMATCH";
  return j;
}

RingTable table_of(const InputDocument& doc) { return build_table(doc); }

DGA dga_of(const InputDocument& doc) {
  if (doc.kind == DocKind::Dga) return build_dga(doc);
  return formal_dga(build_table(doc));
}

Element eval_element(const std::string& text, const SteenrodContext& ctx) {
  Element out = ctx.algebra()->zero();
  for (const auto& term : parse_expr(text, 0)) {
    Element e = ctx.algebra()->one().scaled(term.coeff);
    for (const auto& f : term.factors) {
      const auto caret = f.find('^');
      const unsigned exp = caret == std::string::npos ? 1 : static_cast<unsigned>(std::stoul(f.substr(caret + 1)));
      e = e * ctx.named(f.substr(0, caret)).pow(exp);
    }
    out = out + e;
  }
  return out;
}

SteenrodBasis basis_of(const std::string& s) {
  if (s == "xi") return SteenrodBasis::Xi;
  if (s == "zeta") return SteenrodBasis::Zeta;
  throw ParseError(0, "--basis must be xi or zeta");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"thhkit: graded algebra, Hochschild and Dyer-Lashof computations"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  unsigned threads = 0;
  app.add_flag("--json", json, "Machine-readable output");
  app.add_option("--threads", threads, "Worker threads (0 = hardware)");

  std::string file, thh_file;
  int cap = -1, length_cap = -1, coefficient_bound = 1;
  unsigned long p = 2, budget = 1000000;
  bool formal = false, override_cert = false, control = false, e_infinity = false, no_relations = false;
  std::string op, elt, basis = "zeta";
  std::vector<std::string> gens;

  auto* homology_cmd = app.add_subcommand("homology", "Homology of a DGA");
  homology_cmd->add_option("file", file)->required();
  auto* ring_cmd = app.add_subcommand("homology-ring", "Homology ring of a DGA");
  ring_cmd->add_option("file", file)->required();
  auto* check_cmd = app.add_subcommand("check-basis", "Check a candidate monoid-with-zero basis");
  check_cmd->add_option("file", file)->required();
  auto* search_cmd = app.add_subcommand("search-basis", "Search for a monoid-with-zero basis");
  search_cmd->add_option("file", file)->required();
  search_cmd->add_option("--budget", budget);
  search_cmd->add_option("--coefficient-bound", coefficient_bound);
  auto* wedge_cmd = app.add_subcommand("wedge-model", "Monoid-with-zero model of a ring");
  wedge_cmd->add_option("file", file)->required();
  wedge_cmd->add_option("--budget", budget);
  auto* hh_cmd = app.add_subcommand("hh", "Hochschild homology of a graded ring");
  hh_cmd->add_option("file", file)->required();
  hh_cmd->add_option("--cap", cap)->required();
  hh_cmd->add_option("--length-cap", length_cap);
  auto* hh_dga_cmd = app.add_subcommand("hh-dga", "Hochschild homology of a DGA");
  hh_dga_cmd->add_option("file", file)->required();
  hh_dga_cmd->add_option("--cap", cap)->required();
  hh_dga_cmd->add_option("--length-cap", length_cap);
  auto* thh_cmd = app.add_subcommand("thh", "THH groups through the splitting formula");
  thh_cmd->add_option("file", file)->required();
  thh_cmd->add_option("--thh", thh_file, "THH coefficient table")->required();
  thh_cmd->add_option("--cap", cap)->required();
  thh_cmd->add_flag("--formal", formal, "Assert that the DGA is formal");
  thh_cmd->add_flag("--override", override_cert, "Assume the extension hypothesis");
  auto* st_cmd = app.add_subcommand("steenrod-table", "Dual Steenrod algebra and its operation table");
  st_cmd->add_option("--p", p)->required();
  st_cmd->add_option("--cap", cap)->required();
  st_cmd->add_option("--basis", basis);
  auto* dl_cmd = app.add_subcommand("apply-dl", "Apply a Dyer-Lashof word in the dual Steenrod algebra");
  dl_cmd->add_option("--p", p)->required();
  dl_cmd->add_option("--op", op)->required();
  dl_cmd->add_option("--elt", elt)->required();
  dl_cmd->add_option("--basis", basis);
  dl_cmd->add_option("--cap", cap);
  auto* sq_cmd = app.add_subcommand("obstruct-square", "z^2 = xi1^2⊗1 search at p = 2");
  sq_cmd->add_option("file", file)->required();
  sq_cmd->add_option("--cap", cap)->required();
  sq_cmd->add_flag("--control", control, "Use A_* in place of HF_2_*HZ");
  auto* bk_cmd = app.add_subcommand("obstruct-bockstein", "βQ1 z = xi1⊗1 search at odd p");
  bk_cmd->add_option("file", file)->required();
  bk_cmd->add_option("--p", p)->required();
  bk_cmd->add_option("--cap", cap)->required();
  bk_cmd->add_flag("--control", control, "Use A_* in place of HF_p_*HZ");
  auto* fm_cmd = app.add_subcommand("forced-map", "Unit map candidates surviving the relations");
  fm_cmd->add_option("file", file)->required();
  fm_cmd->add_option("--cap", cap)->required();
  fm_cmd->add_option("--gen", gens, "Designated generators (default: all)");
  fm_cmd->add_flag("--no-relations", no_relations);
  fm_cmd->add_option("--budget", budget);
  auto* ext_cmd = app.add_subcommand("extension-status", "Certify or refute the extension property");
  ext_cmd->add_option("file", file)->required();
  ext_cmd->add_option("--cap", cap)->required();
  ext_cmd->add_flag("--formal", formal, "Assert that the DGA is formal");
  ext_cmd->add_flag("--e-infinity", e_infinity, "Assert an E-infinity F_p-DGA (odd p)");
  ext_cmd->add_option("--budget", budget);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  if (threads) set_thread_count(threads);

  try {
    Json r;
    auto* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();
    r["command"] = name;
    if (name == "homology") {
      const DGA x = dga_of(read_document(file));
      const Homology h = homology(x);
      r["ring"] = h.ring().name();
      Json degrees = Json::array();
      for (const auto& d : h.degrees()) {
        Json reps = Json::array();
        for (const auto& v : d.representatives) reps.push_back(x.table().render(v));
        degrees.push_back(Json{{"degree", d.degree}, {"value", h.value_string(d.degree)}, {"representatives", reps}});
      }
      r["degrees"] = degrees;
    } else if (name == "homology-ring") {
      r["homology_ring"] = table_json(homology_ring(dga_of(read_document(file))));
    } else if (name == "check-basis") {
      const InputDocument doc = read_document(file);
      const RingTable t = table_of(doc);
      std::vector<BasisCandidate> cands = build_candidates(doc, t);
      r["source"] = cands.empty() ? "table basis" : "candidate lines";
      if (cands.empty())
        for (std::size_t i = 0; i < t.size(); ++i) cands.push_back({t.entry(i).name, Vec{{i, 1}}});
      Json names = Json::array();
      for (const auto& c : cands) names.push_back(c.name);
      r["candidates"] = names;
      const auto res = check_monoid_basis(t, cands);
      if (const auto* v = std::get_if<Violation>(&res)) {
        r["result"] = "violation";
        r["detail"] = v->describe();
      } else {
        r["result"] = "certified";
        r["detail"] = "every product of candidates is a candidate or zero";
      }
    } else if (name == "search-basis") {
      const RingTable t = table_of(read_document(file));
      SearchOptions so;
      so.budget = budget;
      so.coefficient_bound = coefficient_bound;
      const SearchResult s = search_monoid_basis(t, so);
      r["status"] = status_name(s.status);
      r["candidates_examined"] = s.candidates_examined;
      r["scope"] = s.scope;
      r["basis"] = s.basis ? basis_json(t, *s.basis) : Json::array();
    } else if (name == "wedge-model") {
      const InputDocument doc = read_document(file);
      const RingTable t = table_of(doc);
      std::optional<MonoidBasis> mb;
      const auto cands = build_candidates(doc, t);
      if (!cands.empty()) {
        auto res = check_monoid_basis(t, cands);
        if (const auto* v = std::get_if<Violation>(&res))
          r["status"] = v->describe();
        else
          mb = std::get<MonoidBasis>(res);
      } else {
        SearchOptions so;
        so.budget = budget;
        const SearchResult s = search_monoid_basis(t, so);
        if (s.basis)
          mb = s.basis;
        else
          r["status"] = status_name(s.status);
      }
      if (mb) {
        const WedgeModel w = wedge_model(*mb);
        r["status"] = "model";
        Json summands = Json::array();
        for (const auto& s : w.summands) summands.push_back(Json{{"name", s.name}, {"degree", s.degree}});
        r["summands"] = summands;
        r["unit"] = w.summands[w.unit_index].name;
        Json products = Json::array();
        for (std::size_t a = 0; a < w.summands.size(); ++a)
          for (std::size_t b = 0; b < w.summands.size(); ++b) {
            if (a == w.unit_index || b == w.unit_index) continue;
            const int c = w.multiplication[a][b];
            products.push_back(w.summands[a].name + "*" + w.summands[b].name + " = " +
                               (c < 0 ? "0" : w.summands[static_cast<std::size_t>(c)].name));
          }
        r["products"] = products;
      }
    } else if (name == "hh") {
      const RingTable t = table_of(read_document(file));
      r["ring"] = t.ring().name();
      r["result"] = graded_json(hh(t, cap, length_cap >= 0 ? std::optional<int>(length_cap) : std::nullopt));
    } else if (name == "hh-dga") {
      const DGA x = dga_of(read_document(file));
      r["ring"] = x.ring().name();
      r["result"] = graded_json(hh_dga(x, cap, length_cap >= 0 ? std::optional<int>(length_cap) : std::nullopt));
    } else if (name == "thh") {
      const InputDocument doc = read_document(file);
      const THHTable table = build_thh_table(read_document(thh_file));
      const KunnethResult k = doc.kind == DocKind::Dga ? thh_of_dga(build_dga(doc), table, cap, formal, override_cert)
                                                       : thh_of_table(build_table(doc), table, cap, override_cert);
      r["ring"] = k.ring.name();
      r["degree_cap"] = k.degree_cap;
      r["hh_exactness"] = to_string(k.hh_exactness);
      r["certification"] = k.certification;
      r["thh_table"] = Json{{"provenance", to_string(table.provenance)}, {"note", table.note}};
      Json degrees = Json::array();
      for (const auto& d : k.degrees) {
        Json e{{"degree", d.degree}, {"value", d.tensor_part.to_string()}};
        if (!k.ring.is_field()) {
          e["tor_part"] = d.tor_part.to_string();
          e["flag"] = to_string(d.flag);
        }
        degrees.push_back(e);
      }
      r["degrees"] = degrees;
    } else if (name == "steenrod-table") {
      const SteenrodContext ctx = dual_steenrod(p, basis_of(basis), cap);
      const auto& alg = ctx.algebra();
      r["p"] = p;
      r["basis"] = basis;
      r["cap"] = cap;
      Json g = Json::array();
      for (const auto& s : alg->presentation().generators)
        g.push_back(Json{{"name", s.name}, {"degree", s.degree}, {"kind", s.kind == GenKind::Exterior ? "ext" : "poly"}});
      r["generators"] = g;
      Json aliases = Json::array();
      for (const auto& [n, e] : ctx.aliases()) aliases.push_back(n + " = " + e.to_string());
      r["aliases"] = aliases;
      Json actions = Json::array();
      for (const auto& a : ctx.actions())
        actions.push_back(a.op.to_string() + "(" + a.generator + ") = " + (a.value.is_zero() ? "0" : a.value.to_string()));
      r["actions"] = actions;
    } else if (name == "apply-dl") {
      const DLWord w = DLWord::parse(p, op);
      const SteenrodBasis sb = basis_of(basis);
      int c = cap;
      bool derived = false;
      if (c < 0) {
        // Smallest power-of-two cap where the names resolve, then widen to
        // the degree the word reaches.
        int probe = 1;
        for (;; probe *= 2) {
          try {
            eval_element(elt, dual_steenrod(p, sb, probe));
            break;
          } catch (const MathError& e) {
            if (e.code() != "UnknownGenerator" || probe > 4096) throw;
          }
        }
        const SteenrodContext ctx = dual_steenrod(p, sb, probe);
        const Element e = eval_element(elt, ctx);
        long top = e.degree().value_or(0);
        for (const auto& f : w.factors) top += ctx.shift(f);
        c = static_cast<int>(std::max<long>(top, probe));
        derived = true;
      }
      const SteenrodContext ctx = dual_steenrod(p, sb, c);
      const Element e = eval_element(elt, ctx);
      const Element v = apply_dl(w, e, ctx);
      r["p"] = p;
      r["basis"] = basis;
      r["cap"] = c;
      r["cap_source"] = derived ? "derived from the element and the word" : "flag";
      r["op"] = w.to_string();
      r["element"] = e.is_zero() ? "0" : e.to_string();
      r["result"] = v.is_zero() ? "0" : v.to_string();
    } else if (name == "obstruct-square" || name == "obstruct-bockstein") {
      const RingTable b = table_of(read_document(file));
      Verdict v;
      if (name == "obstruct-square")
        v = control ? square_obstruction_p2_control(b, cap) : square_obstruction_p2(b, cap);
      else
        v = control ? bockstein_q1_obstruction_control(p, b, cap) : bockstein_q1_obstruction(p, b, cap);
      r["verdict"] = verdict_json(v, b);
    } else if (name == "forced-map") {
      const InputDocument doc = read_document(file);
      auto h = build_algebra(doc);
      std::vector<std::string> designated = gens;
      if (designated.empty())
        for (const auto& g : h->presentation().generators) designated.push_back(g.name);
      const auto rels = no_relations ? std::vector<Relation>{} : presentation_relations(h->presentation());
      const ForcedMapResult fm = forced_unit_map(h, designated, rels, cap, budget);
      r["p"] = fm.p;
      r["cap"] = fm.cap;
      r["designated"] = fm.designated;
      r["enumerated"] = fm.enumerated;
      r["complete"] = fm.complete;
      r["relations"] = fm.relations;
      r["unchecked_relations"] = fm.unchecked_relations;
      Json surv = Json::array();
      for (const auto& s : fm.survivors) {
        Json a = Json::array();
        for (const auto& [g, img] : s.assignment) a.push_back("i(" + g + ") = " + img);
        surv.push_back(Json{{"assignment", a}});
      }
      r["survivors"] = surv;
    } else if (name == "extension-status") {
      const DGA x = dga_of(read_document(file));
      ExtensionOptions eo;
      eo.formal = formal;
      eo.e_infinity = e_infinity;
      eo.budget = budget;
      Json verdicts = Json::array();
      for (const auto& g : extension_status(x, cap, eo)) {
        Json e{{"ground", g.ground.name()}, {"verdict", to_string(g.verdict)}, {"reason", g.reason}};
        if (g.basis) {
          Json names = Json::array();
          for (const auto& m : g.basis->elements) names.push_back(m.name);
          e["basis"] = names;
        }
        if (g.obstruction)
          e["obstruction"] = Json{{"status", to_string(g.obstruction->status)},
                                  {"equation", g.obstruction->equation},
                                  {"search_space", g.obstruction->search_space}};
        verdicts.push_back(e);
      }
      r["verdicts"] = verdicts;
    }
    std::cout << (json ? r.dump(2) + "\n" : cli::render_text(r));
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const MathError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
