#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "quadmod/bundle.hpp"
#include "quadmod/induced.hpp"

namespace quadmod {

struct CommandOptions {
  std::string object;
  std::string hom;
  std::string source;
  std::string target;
  std::string morphism;
  std::size_t max_order = 64;
  std::optional<std::size_t> max_cosets;
  std::size_t samples = default_law_samples;
  std::uint64_t seed = 1;
  bool presentation = false;
  bool close_omega = false;
};

struct CommandOutcome {
  int exit_code = 0;
  Json report = Json::object();
  /// Result bundle, canonical text.
  std::optional<std::string> bundle;
  /// Presentation dump for induce-nil2 --presentation.
  std::optional<std::string> presentation;
};

inline const std::vector<std::string>& command_verbs() {
  static const std::vector<std::string> verbs{
      "verify",        "classify",    "from-nil2",   "to-crossed-complex",
      "pullback-nil2", "pullback-quad", "induce-nil2", "induce-quad",
      "cokernel",      "tensor",      "homs",        "adjunction-check"};
  return verbs;
}

/// 2 for input that cannot be read or resolved, 1 for everything else.
inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::SyntaxError:
    case ErrorKind::UnresolvedReference:
    case ErrorKind::TypeMismatch:
      return 2;
    default:
      return 1;
  }
}

inline Json error_json(const Error& e) {
  std::string msg = e.what();
  const auto kind = std::string(to_string(e.kind()));
  if (msg.rfind(kind + ": ", 0) == 0) msg = msg.substr(kind.size() + 2);
  return Json{{"kind", kind}, {"message", msg}, {"witness", e.witness()}};
}

namespace detail {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline const std::string& need(const std::string& v, const char* flag) {
  if (v.empty()) throw UsageError(std::string("missing required option ") + flag);
  return v;
}

inline Json axiom_json(const AxiomResult& a) {
  Json w = Json::array();
  for (const auto& x : a.witnesses) w.push_back(Json{{"check", x.check}, {"values", x.values}});
  return Json{{"status", std::string(to_string(a.status))},
              {"violations", a.violations},
              {"witnesses", w},
              {"notes", a.notes}};
}

inline Json report_json(const QuadReport& r) {
  Json out = Json::object();
  for (const auto& a : r.axioms) out[a.axiom] = axiom_json(a);
  return out;
}

inline std::string report_summary(const QuadReport& r) {
  if (r.ok()) return "QM1..QM4: pass";
  std::string s;
  for (const auto& a : r.axioms)
    if (a.status != AxiomStatus::Pass) {
      if (!s.empty()) s += ", ";
      s += a.axiom + ": " + (a.status == AxiomStatus::Fail ? "fail" : "skipped");
    }
  return s;
}

inline Json classification_json(const Classification& c) {
  Json out{{"class", std::string(to_string(c.kind))}};
  if (c.peiffer_witness) out["peiffer_witness"] = *c.peiffer_witness;
  if (c.triple_witness) {
    out["triple_witness"] = *c.triple_witness;
    out["bracket"] = c.triple_bracket;
  }
  return out;
}

inline Json orders(const QuadraticModule& q) {
  return Json{{"C0", q.C0()->order()}, {"C1", q.C1()->order()}, {"C2", q.C2()->order()}};
}

inline Json law_json(const LawReport& r) {
  Json laws = Json::array();
  for (const auto& c : r.checks)
    laws.push_back(Json{{"law", c.law},
                        {"samples", c.samples},
                        {"violations", c.violations},
                        {"witnesses", c.witnesses}});
  return Json{{"ok", r.ok()}, {"samples", r.total_samples()}, {"laws", laws}};
}

inline QuadPtr verified(const Bundle& b, const std::string& name) {
  return verify_quadratic(b.get<QuadObject>(name).candidate);
}

inline std::vector<std::string> targets_of(const Bundle& b, const std::string& object,
                                           std::vector<std::string> all, const char* type) {
  if (!object.empty()) return {object};
  if (all.empty()) throw UsageError(std::string("bundle has no ") + type + " objects");
  return all;
}

inline CommandOutcome cmd_verify(const Bundle& b, const CommandOptions& o) {
  CommandOutcome out;
  Json objs = Json::object();
  bool all_ok = true;
  for (const auto& name : targets_of(b, o.object, b.names_of<QuadObject>(), "quadmod")) {
    const auto& c = b.get<QuadObject>(name).candidate;
    auto rep = check_quadratic(c);
    all_ok = all_ok && rep.ok();
    Json entry{{"summary", report_summary(rep)}, {"axioms", report_json(rep)}};
    if (rep.classification) entry["nil2"] = classification_json(*rep.classification);
    objs[name] = entry;
  }
  out.report["objects"] = objs;
  out.report["status"] = all_ok ? "ok" : "fail";
  out.exit_code = all_ok ? 0 : 1;
  return out;
}

inline CommandOutcome cmd_classify(const Bundle& b, const CommandOptions& o) {
  CommandOutcome out;
  Json objs = Json::object();
  for (const auto& name : targets_of(b, o.object, b.names_of<PreCrossedModule>(), "precrossed"))
    objs[name] = classification_json(classify(b.get<PreCrossedModule>(name)));
  out.report["objects"] = objs;
  out.report["status"] = "ok";
  return out;
}

inline CommandOutcome cmd_from_nil2(const Bundle& b, const CommandOptions& o) {
  const auto& name = need(o.object, "--object");
  auto q = from_nil2(Nil2Module(b.get<PreCrossedModule>(name)));
  BundleWriter w(b);
  const auto qn = w.quadmod(name + ".quad", *q);
  CommandOutcome out;
  out.report = Json{{"status", "ok"},
                    {"result", qn},
                    {"orders", orders(*q)},
                    {"C", q->base.C.invariant_factors},
                    {"tensor_moduli", q->tensor.moduli},
                    {"summary", report_summary(check_quadratic(q->candidate()))}};
  out.bundle = w.str();
  return out;
}

inline CommandOutcome cmd_to_crossed(const Bundle& b, const CommandOptions& o) {
  const auto& name = need(o.object, "--object");
  auto q = verified(b, name);
  auto cc = to_crossed_complex(*q);
  BundleWriter w(b);
  const auto pn = w.precrossed(name + ".crossed", PreCrossedModule(cc.d1, cc.act1));
  const auto d2 = w.hom(name + ".crossed.d2", cc.d2);
  const auto a2 = w.action(name + ".crossed.act2", cc.act2);
  w.meta("crossed-complex." + name, pn + " " + d2 + " " + a2);
  CommandOutcome out;
  out.report = Json{{"status", "ok"}, {"crossed_module", pn}, {"d2", d2}, {"act2", a2},
                    {"orders", orders(*q)}};
  out.bundle = w.str();
  return out;
}

inline CommandOutcome cmd_pullback_nil2(const Bundle& b, const CommandOptions& o) {
  const auto& name = need(o.object, "--object");
  const auto& sigma = b.get<GroupHom>(need(o.hom, "--hom"));
  auto pb = pullback_nil2(Nil2Module(b.get<PreCrossedModule>(name)), sigma);
  BundleWriter w(b);
  const auto rn = w.precrossed(name + ".pullback", pb.result.pcm());
  const auto pn = w.hom(name + ".pullback.projection", pb.proj_M);
  CommandOutcome out;
  out.report = Json{{"status", "ok"},
                    {"result", rn},
                    {"projection", pn},
                    {"order", pb.result.M()->order()},
                    {"class", std::string(to_string(classify(pb.result.pcm()).kind))}};
  out.bundle = w.str();
  return out;
}

inline CommandOutcome cmd_pullback_quad(const Bundle& b, const CommandOptions& o) {
  const auto& name = need(o.object, "--object");
  const auto& sigma = b.get<GroupHom>(need(o.hom, "--hom"));
  auto q = verified(b, name);
  auto pq = pullback_quad(q, sigma);
  BundleWriter w(b);
  const auto rn = w.quadmod(name + ".pullback", *pq.result);
  const auto mn = w.qmorphism(name + ".pullback.morphism", rn, name, pq.morphism.f0,
                              pq.morphism.f1, pq.morphism.f2);
  CommandOutcome out;
  out.report = Json{{"status", "ok"},
                    {"result", rn},
                    {"morphism", mn},
                    {"orders", orders(*pq.result)},
                    {"summary", report_summary(check_quadratic(pq.result->candidate()))}};
  out.bundle = w.str();
  return out;
}

inline CommandOutcome cmd_induce_nil2(const Bundle& b, const CommandOptions& o) {
  const auto& name = need(o.object, "--object");
  const auto& f = b.get<GroupHom>(need(o.hom, "--hom"));
  Nil2Module n(b.get<PreCrossedModule>(name));
  CommandOutcome out;
  out.report["status"] = "ok";
  BundleWriter w(b);
  std::optional<Nil2Module> exact;
  if (o.presentation) {
    auto ip = induced_presentation(n, f);
    out.presentation = dump_presentation(ip.presentation);
    auto pg = enumerate_presentation_quotient(ip, o.max_order, resolve_coset_cap(o.max_cosets));
    Json pj{{"generators", ip.presentation.generator_count()},
            {"relators", ip.presentation.relators.size()},
            {"verdict", to_string(pg.verdict)},
            {"cosets_defined", pg.cosets_defined}};
    if (pg.verdict == EnumerationVerdict::Finite) {
      auto pc = presented_precrossed(ip, pg);
      pj["order"] = pg.group->order();
      pj["class"] = std::string(to_string(classify(pc).kind));
      if (f.is_epi())
        pj["matches_quotient"] =
            find_precrossed_isomorphism(pc, induce_nil2_epi(n, f).result.pcm(), o.max_order)
                .has_value();
    }
    out.report["presentation"] = pj;
  }
  if (f.is_epi()) {
    auto ind = induce_nil2_epi(n, f);
    const auto rn = w.precrossed(name + ".induced", ind.result.pcm());
    const auto tn = w.hom(name + ".induced.unit", ind.theta);
    out.report["mode"] = "epi";
    out.report["result"] = rn;
    out.report["unit"] = tn;
    out.report["order"] = ind.result.M()->order();
    out.report["displacement_order"] = ind.displacement.subgroup.order();
  } else {
    auto quo = quotient(kernel_of(f));
    auto iota = detail::descend_hom(f, quo, "f");
    auto epi = induce_nil2_epi(n, quo.projection);
    auto mono = induce_nil2_mono(epi.result, iota);
    auto laws = check_mono_laws(mono, o.samples, o.seed);
    const auto rn = w.precrossed(name + ".induced.image", epi.result.pcm());
    out.report["mode"] = "word";
    out.report["image_stage"] = rn;
    out.report["image_order"] = quo.group->order();
    out.report["copies"] = mono.transversal.size();
    out.report["transversal"] = mono.transversal.reps;
    out.report["laws"] = law_json(laws);
    out.report["seed"] = o.seed;
    if (!laws.ok()) {
      out.report["status"] = "fail";
      out.exit_code = 1;
    }
  }
  out.bundle = w.str();
  return out;
}

inline CommandOutcome cmd_induce_quad(const Bundle& b, const CommandOptions& o) {
  const auto& name = need(o.object, "--object");
  const auto& phi = b.get<GroupHom>(need(o.hom, "--hom"));
  auto q = verified(b, name);
  const auto mode = o.close_omega ? EpiTopLevel::OmegaClosed : EpiTopLevel::Displacement;
  CommandOutcome out;
  out.report["status"] = "ok";
  out.report["top_level"] = o.close_omega ? "omega-closed" : "displacement";
  BundleWriter w(b);
  auto emit_epi = [&](const InducedQuadEpi& ind, const std::string& rname) {
    const auto rn = w.quadmod(rname, *ind.result);
    const auto un = w.qmorphism(rname + ".unit", name, rn, ind.unit.f0, ind.unit.f1, ind.unit.f2);
    out.report["result"] = rn;
    out.report["unit"] = un;
    out.report["orders"] = orders(*ind.result);
    out.report["summary"] = report_summary(check_quadratic(ind.result->candidate()));
  };
  if (phi.is_epi()) {
    out.report["mode"] = "epi";
    emit_epi(induce_quad_epi(q, phi, default_tensor_cap, mode), name + ".induced");
  } else {
    auto quo = quotient(kernel_of(phi));
    auto iota = detail::descend_hom(phi, quo, "phi");
    auto epi = induce_quad_epi(q, quo.projection, default_tensor_cap, mode);
    auto mono = induce_quad_mono(epi.result, iota);
    auto laws = check_mono_quad_laws(mono, o.samples, o.seed);
    out.report["mode"] = "word";
    emit_epi(epi, name + ".induced.image");
    out.report["copies"] = mono.transversal().size();
    out.report["transversal"] = mono.transversal().reps;
    out.report["laws"] = law_json(laws);
    out.report["seed"] = o.seed;
    if (!laws.ok()) {
      out.report["status"] = "fail";
      out.exit_code = 1;
    }
  }
  out.bundle = w.str();
  return out;
}

inline QuadraticMorphism resolve_morphism(const Bundle& b, const std::string& name) {
  const auto& m = b.get<MorphismObject>(name);
  return build_morphism(verified(b, m.source), verified(b, m.target), m.f2, m.f1, m.f0);
}

inline CommandOutcome cmd_cokernel(const Bundle& b, const CommandOptions& o) {
  const auto& name = need(o.morphism, "--morphism");
  auto c = cokernel(resolve_morphism(b, name));
  CommandOutcome out;
  out.report["quotient_order"] = c.projection.target()->order();
  out.report["closure_order"] = c.closure.order();
  if (!c.ok()) {
    out.report["status"] = "fail";
    out.report["error"] = error_json(*c.failure);
    out.exit_code = 1;
    return out;
  }
  BundleWriter w(b);
  const auto rn = w.quadmod(name + ".cokernel", *c.result);
  const auto& m = b.get<MorphismObject>(name);
  const auto pn = w.qmorphism(name + ".cokernel.projection", m.target, rn, c.from_target->f0,
                              c.from_target->f1, c.from_target->f2);
  out.report["status"] = "ok";
  out.report["result"] = rn;
  out.report["projection"] = pn;
  out.report["orders"] = orders(*c.result);
  out.report["summary"] = report_summary(check_quadratic(c.result->candidate()));
  out.bundle = w.str();
  return out;
}

inline CommandOutcome cmd_tensor(const Bundle& b, const CommandOptions& o) {
  const auto& name = need(o.object, "--object");
  CommandOutcome out;
  AbelianDecomposition c;
  auto it = b.objects.find(name);
  if (it != b.objects.end() && std::holds_alternative<PreCrossedModule>(it->second)) {
    c = quadratic_base(b.get<PreCrossedModule>(name)).C;
    out.report["of"] = "C";
  } else {
    c = abelian_invariants(b.get<GroupPtr>(name));
    out.report["of"] = "group";
  }
  auto t = tensor_square(c);
  out.report["status"] = "ok";
  out.report["order"] = c.group->order();
  out.report["invariant_factors"] = c.invariant_factors;
  out.report["tensor_moduli"] = t.moduli;
  out.report["tensor_order"] = t.product->order();
  return out;
}

inline CommandOutcome cmd_homs(const Bundle& b, const CommandOptions& o) {
  const auto& g = b.get<GroupPtr>(need(o.source, "--source"));
  const auto& h = b.get<GroupPtr>(need(o.target, "--target"));
  auto homs = enumerate_homs(g, h, {o.max_order, o.max_order, {}});
  Json maps = Json::array();
  for (const auto& f : homs) maps.push_back(f.map());
  CommandOutcome out;
  out.report = Json{{"status", "ok"}, {"count", homs.size()}, {"maps", maps}};
  return out;
}

inline CommandOutcome cmd_adjunction(const Bundle& b, const CommandOptions& o) {
  const auto& sigma = b.get<GroupHom>(need(o.hom, "--hom"));
  auto x = verified(b, need(o.source, "--source"));
  auto y = verified(b, need(o.target, "--target"));
  auto r = adjunction_count(sigma, x, y, o.max_order);
  CommandOutcome out;
  const bool eq = r.induced_side == r.pullback_side;
  out.report = Json{{"status", eq ? "ok" : "fail"},
                    {"regime", r.regime},
                    {"induced_side", r.induced_side},
                    {"pullback_side", r.pullback_side},
                    {"equal", eq}};
  out.exit_code = eq ? 0 : 1;
  return out;
}

}  // namespace detail

/// Dispatches one verb. Module errors become a report with exit code 1 (2 for
/// unreadable or unresolved input); a missing option or unknown verb is a
/// usage error with exit code 2.
inline CommandOutcome run_command(const std::string& verb, const CommandOptions& opts,
                                  const Bundle& b) {
  CommandOutcome out;
  try {
    if (verb == "verify") out = detail::cmd_verify(b, opts);
    else if (verb == "classify") out = detail::cmd_classify(b, opts);
    else if (verb == "from-nil2") out = detail::cmd_from_nil2(b, opts);
    else if (verb == "to-crossed-complex") out = detail::cmd_to_crossed(b, opts);
    else if (verb == "pullback-nil2") out = detail::cmd_pullback_nil2(b, opts);
    else if (verb == "pullback-quad") out = detail::cmd_pullback_quad(b, opts);
    else if (verb == "induce-nil2") out = detail::cmd_induce_nil2(b, opts);
    else if (verb == "induce-quad") out = detail::cmd_induce_quad(b, opts);
    else if (verb == "cokernel") out = detail::cmd_cokernel(b, opts);
    else if (verb == "tensor") out = detail::cmd_tensor(b, opts);
    else if (verb == "homs") out = detail::cmd_homs(b, opts);
    else if (verb == "adjunction-check") out = detail::cmd_adjunction(b, opts);
    else throw detail::UsageError("unknown verb \"" + verb + "\"");
  } catch (const detail::UsageError& e) {
    out = CommandOutcome{};
    out.exit_code = 2;
    out.report["status"] = "error";
    out.report["error"] = Json{{"kind", "Usage"}, {"message", e.what()}, {"witness", Json::array()}};
  } catch (const Error& e) {
    out = CommandOutcome{};
    out.exit_code = exit_code_for(e.kind());
    out.report["status"] = "error";
    out.report["error"] = error_json(e);
  }
  out.report["verb"] = verb;
  return out;
}

namespace detail {

inline void text_lines(std::ostream& os, const Json& v, const std::string& prefix) {
  if (v.is_object() && !v.empty()) {
    for (auto it = v.begin(); it != v.end(); ++it)
      text_lines(os, *it, prefix.empty() ? it.key() : prefix + "." + it.key());
  } else if (v.is_array() && !v.empty() && !v.front().is_primitive()) {
    for (std::size_t i = 0; i < v.size(); ++i)
      text_lines(os, v[i], prefix + "[" + std::to_string(i) + "]");
  } else if (v.is_string()) {
    os << prefix << ": " << v.get<std::string>() << "\n";
  } else {
    os << prefix << ": " << v.dump() << "\n";
  }
}

}  // namespace detail

/// Human-readable report: one "path: value" line per leaf, sorted.
inline std::string render_text(const Json& report) {
  std::ostringstream os;
  detail::text_lines(os, report, "");
  return os.str();
}

/// Machine report: canonical JSON.
inline std::string render_machine(const Json& report) { return canonical_text(report); }

/// What the CLI prints: the report, with the result bundle and presentation
/// dump folded in unless the bundle went to a file.
inline std::string render_outcome(const CommandOutcome& out, bool machine,
                                  const std::string& written = {}) {
  Json report = out.report;
  if (!written.empty()) report["written"] = written;
  const bool inline_bundle = out.bundle && written.empty();
  if (machine) {
    if (inline_bundle) report["bundle"] = Json::parse(*out.bundle);
    if (out.presentation) report["presentation_dump"] = *out.presentation;
    return render_machine(report);
  }
  std::string text = render_text(report);
  if (out.presentation) text += "--- presentation ---\n" + *out.presentation;
  if (inline_bundle) text += "--- bundle ---\n" + *out.bundle;
  return text;
}

}  // namespace quadmod
