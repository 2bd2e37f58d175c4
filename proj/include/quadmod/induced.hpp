#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quadmod/free_product.hpp"
#include "quadmod/presentation.hpp"
#include "quadmod/pullback.hpp"

namespace quadmod {

/// F(X x Q)/S for a P-group X and f : P -> Q. Generator (x,q) has index
/// x * |Q| + q; the boundary rule is (x,q) -> q^-1 g(x) q for g : X -> Q and
/// the action rule is (x,q)^{q'} = (x, q q').
struct InducedPresentation {
  GroupPtr carrier;
  GroupHom f;
  GroupHom boundary;  // g = f o d, X -> Q
  Presentation presentation;

  const GroupPtr& target() const { return f.target(); }
  std::size_t generator(Elem x, Elem q) const { return x * target()->order() + q; }
  std::pair<Elem, Elem> pair(std::size_t gen) const {
    const auto nq = target()->order();
    return {static_cast<Elem>(gen / nq), static_cast<Elem>(gen % nq)};
  }
  Elem boundary_of(std::size_t gen) const {
    const auto [x, q] = pair(gen);
    return target()->conj(boundary(x), q);
  }
  std::size_t act_on_generator(std::size_t gen, Elem q2) const {
    const auto [x, q] = pair(gen);
    return generator(x, target()->mul(q, q2));
  }
};

namespace detail {

inline InducedPresentation induced_generators(const GroupPtr& x, const GroupHom& f,
                                              const GroupHom& boundary) {
  InducedPresentation ip{x, f, boundary, {}};
  const auto& q = *f.target();
  for (Elem a = 0; a < x->order(); ++a)
    for (Elem b = 0; b < q.order(); ++b)
      ip.presentation.generator_names.push_back("(" + x->label(a) + "," + q.label(b) + ")");
  return ip;
}

inline void begin_family(Presentation& p, std::string name, std::string description) {
  p.families.push_back({std::move(name), std::move(description), p.relators.size(), 0});
}

inline void add_relator(Presentation& p, Word w) {
  p.relators.push_back(std::move(w));
  ++p.families.back().count;
}

/// (x,q)(x',q)(xx',q)^-1 for all (x,x',q) and (x^p,q)(x,f(p)q)^-1 for all (x,p,q).
inline void add_induced_families(InducedPresentation& ip, const GroupAction& act,
                                 const std::string& prefix) {
  const auto& x = *ip.carrier;
  const auto& q = *ip.target();
  const auto& p = *ip.f.source();
  auto& pres = ip.presentation;
  auto g = [&](Elem a, Elem b) { return letter(ip.generator(a, b)); };
  begin_family(pres, prefix + "1", "(x,q)(x',q)(xx',q)^-1");
  for (Elem a = 0; a < x.order(); ++a)
    for (Elem b = 0; b < x.order(); ++b)
      for (Elem c = 0; c < q.order(); ++c) add_relator(pres, {g(a, c), g(b, c), -g(x.mul(a, b), c)});
  begin_family(pres, prefix + "2", "(x^p,q)(x,f(p)q)^-1");
  for (Elem a = 0; a < x.order(); ++a)
    for (Elem s = 0; s < p.order(); ++s)
      for (Elem c = 0; c < q.order(); ++c)
        add_relator(pres, {g(act(a, s), c), -g(a, q.mul(ip.f(s), c))});
}

}  // namespace detail

/// Presentation of the induced nil(2)-module f_*(M) = F(M x Q)/S.
inline InducedPresentation induced_presentation(const PreCrossedModule& n, const GroupHom& f) {
  if (!same_group(f.source(), n.Q()))
    throw Error(ErrorKind::TypeMismatch, "map does not start at the base group");
  auto ip = detail::induced_generators(n.M(), f, compose(f, n.boundary()));
  detail::add_induced_families(ip, n.action(), "S");
  return ip;
}

inline InducedPresentation induced_presentation(const Nil2Module& n, const GroupHom& f) {
  return induced_presentation(n.pcm(), f);
}

/// Presentation of phi_*(L) = F(L x Q)/S'. Family S'1 is read as
/// (l, phi(d1 m) q)(l^{d1 m}, q)^-1, S'3 as (l^p,q)(l,phi(p)q)^-1 and S'4
/// is the action rule (l,q)^{q'} = (l,qq') itself, so its relators are empty.
inline InducedPresentation induced_presentation_top(const QuadraticModule& q, const GroupHom& phi) {
  if (!same_group(phi.source(), q.C0()))
    throw Error(ErrorKind::TypeMismatch, "map does not start at C0");
  auto ip = detail::induced_generators(q.C2(), phi, compose(phi, compose(q.d1, q.d2)));
  const auto& l = *q.C2();
  const auto& m = *q.C1();
  const auto& qq = *phi.target();
  auto& pres = ip.presentation;
  auto g = [&](Elem a, Elem b) { return letter(ip.generator(a, b)); };
  detail::begin_family(pres, "S'1", "(l,q)^{(m,q)}(l^m,q)^-1");
  for (Elem a = 0; a < l.order(); ++a)
    for (Elem x = 0; x < m.order(); ++x)
      for (Elem c = 0; c < qq.order(); ++c)
        detail::add_relator(pres, {g(a, qq.mul(phi(q.d1(x)), c)), -g(q.act2(a, q.d1(x)), c)});
  detail::begin_family(pres, "S'2", "(l,q)(l',q)(ll',q)^-1");
  for (Elem a = 0; a < l.order(); ++a)
    for (Elem b = 0; b < l.order(); ++b)
      for (Elem c = 0; c < qq.order(); ++c)
        detail::add_relator(pres, {g(a, c), g(b, c), -g(l.mul(a, b), c)});
  detail::begin_family(pres, "S'3", "(l^p,q)(l,phi(p)q)^-1");
  for (Elem a = 0; a < l.order(); ++a)
    for (Elem s = 0; s < q.C0()->order(); ++s)
      for (Elem c = 0; c < qq.order(); ++c)
        detail::add_relator(pres, {g(q.act2(a, s), c), -g(a, qq.mul(phi(s), c))});
  detail::begin_family(pres, "S'4", "(l,q)^{q'}(l,qq')^-1");
  for (Elem a = 0; a < l.order(); ++a)
    for (Elem c = 0; c < qq.order(); ++c)
      for (Elem d = 0; d < qq.order(); ++d) {
        const auto gen = ip.act_on_generator(ip.generator(a, c), d);
        detail::add_relator(pres, {letter(gen), letter(ip.generator(a, qq.mul(c, d)), true)});
      }
  return ip;
}

inline PresentedGroup enumerate_presentation_quotient(
    const InducedPresentation& ip, std::size_t max_order = default_presentation_order,
    std::size_t max_cosets = default_max_cosets) {
  return enumerate_presentation(ip.presentation, max_order, max_cosets);
}

/// Boundary and Q-action realized on a finite enumerated quotient; both are
/// validated (homomorphism, action and pre-crossed laws) on all elements.
inline PreCrossedModule presented_precrossed(const InducedPresentation& ip,
                                             const PresentedGroup& pg) {
  if (pg.verdict != EnumerationVerdict::Finite)
    throw Error(ErrorKind::NotComputable, "presentation did not enumerate to a finite group");
  const auto& g = *pg.group;
  const auto& q = *ip.target();
  const auto ngen = ip.presentation.generator_count();
  std::vector<Elem> bimg(ngen);
  for (std::size_t k = 0; k < ngen; ++k) bimg[k] = ip.boundary_of(k);
  std::vector<Elem> bmap(g.order());
  for (Elem e = 0; e < g.order(); ++e) bmap[e] = evaluate_word(q, pg.element_words[e], bimg);
  GroupHom boundary(pg.group, ip.target(), std::move(bmap));
  for (std::size_t k = 0; k < ngen; ++k)
    if (boundary(pg.generator_images[k]) != bimg[k])
      throw Error(ErrorKind::NotWellDefined, "boundary rule does not respect the relators",
                  {static_cast<std::int64_t>(k)});
  std::vector<Elem> table(g.order() * q.order());
  for (Elem c = 0; c < q.order(); ++c) {
    std::vector<Elem> img(ngen);
    for (std::size_t k = 0; k < ngen; ++k) img[k] = pg.generator_images[ip.act_on_generator(k, c)];
    for (Elem e = 0; e < g.order(); ++e)
      table[e * q.order() + c] = evaluate_word(g, pg.element_words[e], img);
  }
  GroupAction act(ip.target(), pg.group, std::move(table));
  return PreCrossedModule(std::move(boundary), std::move(act));
}

namespace detail {

inline void require_epi(const GroupHom& f) {
  if (f.is_epi()) return;
  std::vector<char> hit(f.target()->order(), 0);
  for (Elem x : f.image()) hit[x] = 1;
  Elem miss = 0;
  while (hit[miss]) ++miss;
  throw Error(ErrorKind::NotEpimorphism,
              detail::cat("map is not surjective: ", miss, " is not in the image"), {miss});
}

/// P-action on X that is trivial on ker f, transported to Q = f(P).
inline GroupAction descend_action(const GroupAction& act, const GroupHom& f) {
  const auto& x = *act.carrier();
  const auto& q = *f.target();
  constexpr Elem unset = static_cast<Elem>(-1);
  std::vector<Elem> section(q.order(), unset);
  for (Elem p = 0; p < f.source()->order(); ++p)
    if (section[f(p)] == unset) section[f(p)] = p;
  std::vector<Elem> table(x.order() * q.order());
  for (Elem a = 0; a < x.order(); ++a)
    for (Elem c = 0; c < q.order(); ++c) table[a * q.order() + c] = act(a, section[c]);
  for (Elem a = 0; a < x.order(); ++a)
    for (Elem p = 0; p < f.source()->order(); ++p)
      if (act(a, p) != table[a * q.order() + f(p)])
        throw Error(ErrorKind::NotWellDefined,
                    detail::cat("action does not factor through the quotient at (", a, ",", p, ")"),
                    {a, p});
  return GroupAction(GroupAction::Trusted{}, f.target(), act.carrier(), std::move(table));
}

/// h : A/N -> B with h(aN) = g(a), checked on all of A.
inline GroupHom descend_hom(const GroupHom& g, const Quotient& quo, const char* what) {
  std::vector<Elem> map(quo.group->order());
  for (Elem c = 0; c < map.size(); ++c) map[c] = g(quo.representatives[c]);
  for (Elem a = 0; a < g.source()->order(); ++a)
    if (map[quo.projection(a)] != g(a))
      throw Error(ErrorKind::NotWellDefined, detail::cat(what, " does not factor at ", a), {a});
  return GroupHom(GroupHom::Trusted{}, quo.group, g.target(), std::move(map));
}

}  // namespace detail

/// Isomorphism M -> M' compatible with boundaries and actions over a shared
/// base, searched among all homomorphisms M -> M'.
inline std::optional<GroupHom> find_precrossed_isomorphism(const PreCrossedModule& a,
                                                          const PreCrossedModule& b,
                                                          std::size_t max_order = 64) {
  if (a.M()->order() != b.M()->order() || !same_group(a.Q(), b.Q())) return std::nullopt;
  for (auto& f : enumerate_homs(a.M(), b.M(), {max_order, max_order, {}})) {
    if (!f.is_iso()) continue;
    bool ok = true;
    for (Elem m = 0; m < a.M()->order() && ok; ++m) {
      ok = b.boundary()(f(m)) == a.boundary()(m);
      for (Elem q = 0; q < a.Q()->order() && ok; ++q)
        ok = f(a.action()(m, q)) == b.action()(f(m), q);
    }
    if (ok) return std::move(f);
  }
  return std::nullopt;
}

struct InducedNil2Epi {
  Nil2Module result;
  /// theta(m) = m[K,M], a nil(2)-morphism over f
  GroupHom theta;
  Displacement displacement;
};

/// M/[K,M] -> Q for f : P ->> Q with K = ker f.
inline InducedNil2Epi induce_nil2_epi(const Nil2Module& n, const GroupHom& f) {
  if (!same_group(f.source(), n.Q()))
    throw Error(ErrorKind::TypeMismatch, "map does not start at the base group");
  detail::require_epi(f);
  auto disp = displacement_subgroup(n.action(), f.kernel());
  auto quo = quotient(disp.subgroup);
  auto act = detail::descend_action(quotient_action(n.action(), quo), f);
  auto boundary = detail::descend_hom(compose(f, n.boundary()), quo, "f d");
  Nil2Module result(PreCrossedModule(std::move(boundary), std::move(act)));
  if (auto v = nil2_morphism_violation(n.pcm(), result.pcm(), quo.projection, f))
    throw Error(ErrorKind::NotMorphism, "(theta, f) fails: " + v->first, v->second);
  return InducedNil2Epi{std::move(result), quo.projection, std::move(disp)};
}

struct QuotientQuad {
  QuadPtr result;
  QuadraticMorphism unit;
};

/// (C2/NL -> C1/NM -> Q) for normal, invariant NL, NM and f0 : C0 ->> Q whose
/// kernel acts trivially on the quotients. omega' is read off class
/// representatives and checked on every tensor element. With
/// `close_under_omega`, NL is first enlarged by omega of the kernel of
/// C (x) C -> C' (x) C', so omega' always factors.
inline QuotientQuad quotient_quadratic(const QuadPtr& q, const Subgroup& nl_in, const Subgroup& nm,
                                       const GroupHom& f0,
                                       std::size_t tensor_cap = default_tensor_cap,
                                       bool close_under_omega = false) {
  detail::require_epi(f0);
  auto qm = quotient(nm);
  auto d1 = detail::descend_hom(compose(f0, q->d1), qm, "d1");
  auto act1 = detail::descend_action(quotient_action(q->act1, qm), f0);
  PreCrossedModule pcm(d1, act1);
  auto base = quadratic_base(pcm);
  auto tensor = tensor_square(base.C, tensor_cap);
  auto star = induced_on_base(q->base, base, qm.projection);
  auto tmap = tensor_map(q->tensor, tensor, star);
  Subgroup nl = nl_in;
  if (close_under_omega) {
    std::vector<Elem> seeds(nl.elements.begin(), nl.elements.end());
    for (Elem s : tmap.kernel()) seeds.push_back(q->omega(s));
    nl = normal_closure(q->C2(), seeds);
  }
  auto ql = quotient(nl);
  auto d2 = detail::descend_hom(compose(qm.projection, q->d2), ql, "d2");
  auto act2 = detail::descend_action(quotient_action(q->act2, ql), f0);
  constexpr Elem unset = static_cast<Elem>(-1);
  std::vector<Elem> omega(tensor.product->order(), unset);
  for (Elem s = 0; s < q->tensor.product->order(); ++s) {
    const Elem v = ql.projection(q->omega(s));
    auto& slot = omega[tmap(s)];
    if (slot == unset)
      slot = v;
    else if (slot != v)
      throw Error(ErrorKind::NotWellDefined,
                  detail::cat("omega does not factor through the quotient at tensor element ", s),
                  {s});
  }
  for (Elem t = 0; t < omega.size(); ++t)
    if (omega[t] == unset)
      throw Error(ErrorKind::NotWellDefined, detail::cat("tensor element ", t, " is not reached"),
                  {t});
  auto result = verify_quadratic(QuadCandidate{d1, d2, act1, act2, std::move(omega)}, tensor_cap);
  auto unit = build_morphism(q, result, ql.projection, qm.projection, f0);
  return QuotientQuad{std::move(result), std::move(unit)};
}

enum class EpiTopLevel {
  Displacement,  // L/[K,L]
  OmegaClosed,   // L/N, N the normal closure of [K,L] and omega(ker(C(x)C -> C'(x)C'))
};

struct InducedQuadEpi {
  QuadPtr result;
  /// (sigma_2, sigma_1, phi) from the source
  QuadraticMorphism unit;
  Displacement top;     // [K,L]
  Displacement middle;  // [K,M]
};

/// L/[K,L] -> M/[K,M] -> Q for phi : P ->> Q, K = ker phi.
inline InducedQuadEpi induce_quad_epi(const QuadPtr& q, const GroupHom& phi,
                                      std::size_t tensor_cap = default_tensor_cap,
                                      EpiTopLevel top = EpiTopLevel::Displacement) {
  if (!same_group(phi.source(), q->C0()))
    throw Error(ErrorKind::TypeMismatch, "map does not start at C0");
  detail::require_epi(phi);
  const auto k = phi.kernel();
  auto dl = displacement_subgroup(q->act2, k);
  auto dm = displacement_subgroup(q->act1, k);
  auto qq = quotient_quadratic(q, dl.subgroup, dm.subgroup, phi, tensor_cap,
                               top == EpiTopLevel::OmegaClosed);
  return InducedQuadEpi{std::move(qq.result), std::move(qq.unit), std::move(dl), std::move(dm)};
}

struct InducedFactorization {
  QuadraticMorphism morphism;
  std::size_t matching_candidates = 0;
  bool exhaustive = false;
};

/// For a morphism (f2, f1, phi) from the source, the factorization
/// (f2*, f1*, id_Q) through the unit with f2*(l[K,L]) = f2(l), checked well
/// defined on all class members and unique among all morphisms over id_Q.
inline InducedFactorization induced_universal_check(const InducedQuadEpi& ind,
                                                    const QuadPtr& target,
                                                    const QuadraticMorphism& given,
                                                    std::size_t max_order = 64) {
  const auto& unit = ind.unit;
  if (!same_group(given.source->C1(), unit.source->C1()) ||
      !same_group(given.source->C2(), unit.source->C2()) || !(given.f0 == unit.f0) ||
      !same_group(given.target->C1(), target->C1()) || !same_group(target->C0(), ind.result->C0()))
    throw Error(ErrorKind::TypeMismatch, "given morphism is not over phi into the target");
  auto lift = [](const GroupHom& proj, const GroupHom& f, const char* what) {
    std::vector<Elem> map(proj.target()->order(), static_cast<Elem>(-1));
    for (Elem a = 0; a < proj.source()->order(); ++a) {
      auto& slot = map[proj(a)];
      if (slot == static_cast<Elem>(-1))
        slot = f(a);
      else if (slot != f(a))
        throw Error(ErrorKind::NotWellDefined, detail::cat(what, " does not kill the class of ", a),
                    {a});
    }
    return GroupHom(proj.target(), f.target(), std::move(map));
  };
  auto f1s = lift(unit.f1, given.f1, "f1");
  auto f2s = lift(unit.f2, given.f2, "f2");
  auto m = build_morphism(ind.result, target, f2s, f1s, identity_hom(target->C0()));
  InducedFactorization out{m, 1, false};
  const bool small = ind.result->C1()->order() <= max_order &&
                     ind.result->C2()->order() <= max_order &&
                     target->C1()->order() <= max_order && target->C2()->order() <= max_order;
  if (small) {
    MorphismEnumerationOptions opts;
    opts.max_order = max_order;
    std::size_t matches = 0;
    for (const auto& h : enumerate_quad_morphisms(ind.result, target, identity_hom(target->C0()),
                                                  opts)) {
      if (compose(h.f1, unit.f1) == given.f1 && compose(h.f2, unit.f2) == given.f2) {
        ++matches;
        if (!(h.f1 == m.f1 && h.f2 == m.f2))
          throw Error(ErrorKind::NonUnique, "a second factoring morphism exists");
      }
    }
    out.matching_candidates = matches;
    out.exhaustive = true;
  }
  return out;
}

struct InducedGeneral {
  GroupHom pi;    // P ->> P/ker phi
  GroupHom iota;  // P/ker phi >-> Q
  InducedQuadEpi epi;
  MonoInducedQuad mono;
  LawReport laws;
};

/// phi = iota o pi: the epi leg computed exactly, the mono leg as the word
/// level free-product layer with sampled law checks.
inline InducedGeneral induce_quad_general(const QuadPtr& q, const GroupHom& phi,
                                          std::size_t samples = default_law_samples,
                                          std::uint64_t seed = 1) {
  if (!same_group(phi.source(), q->C0()))
    throw Error(ErrorKind::TypeMismatch, "map does not start at C0");
  auto quo = quotient(kernel_of(phi));
  auto iota = detail::descend_hom(phi, quo, "phi");
  auto epi = induce_quad_epi(q, quo.projection);
  auto mono = induce_quad_mono(epi.result, iota);
  auto laws = check_mono_quad_laws(mono, samples, seed);
  return InducedGeneral{quo.projection, std::move(iota), std::move(epi), std::move(mono),
                        std::move(laws)};
}

struct Cokernel {
  GroupHom projection;  // Q ->> Q/P-bar
  Subgroup closure;     // P-bar
  /// null when a level-wise quotient fails to carry a quadratic structure
  QuadPtr result;
  /// target -> result over the projection
  std::optional<QuadraticMorphism> from_target;
  std::optional<Error> failure;

  bool ok() const { return result != nullptr; }
};

/// Cokernel of (f2, f1, f0) : X -> Y over Q/P-bar, P-bar the normal closure of
/// f0(P). Y is induced along Q ->> Q/P-bar; the induced source only enters
/// through its image, generated by f1*((x,q)) = f1(x)^q, whose normal closure
/// is factored out level-wise. A NotWellDefined or axiom failure on the way is
/// recorded in `failure`, the construction is not adjusted.
inline Cokernel cokernel(const QuadraticMorphism& m, std::size_t tensor_cap = default_tensor_cap) {
  const auto& y = m.target;
  const auto& x = m.source;
  auto img = m.f0.image();
  auto pbar = normal_closure(y->C0(), img);
  auto quo = quotient(pbar);
  Cokernel out{quo.projection, pbar, nullptr, std::nullopt, std::nullopt};
  try {
    auto ybar = induce_quad_epi(y, quo.projection, tensor_cap);
    const auto& r = *ybar.result;
    const auto nq = r.C0()->order();
    std::vector<Elem> seeds1, seeds2;
    for (Elem g = 0; g < x->C1()->order(); ++g)
      for (Elem c = 0; c < nq; ++c) seeds1.push_back(r.act1(ybar.unit.f1(m.f1(g)), c));
    for (Elem a = 0; a < x->C2()->order(); ++a)
      for (Elem c = 0; c < nq; ++c) seeds2.push_back(r.act2(ybar.unit.f2(m.f2(a)), c));
    auto nm = normal_closure(r.C1(), seeds1);
    auto nl = normal_closure(r.C2(), seeds2);
    auto qq = quotient_quadratic(ybar.result, nl, nm, identity_hom(r.C0()), tensor_cap);
    out.from_target = build_morphism(y, qq.result, compose(qq.unit.f2, ybar.unit.f2),
                                     compose(qq.unit.f1, ybar.unit.f1), quo.projection);
    out.result = std::move(qq.result);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotWellDefined && e.kind() != ErrorKind::AxiomFailure &&
        e.kind() != ErrorKind::NotNormal)
      throw;
    out.failure = e;
  }
  return out;
}

inline QuadPtr trivial_quadratic(const GroupPtr& c0) {
  auto one = trivial_group();
  return verify_quadratic(QuadCandidate{trivial_hom(one, c0), identity_hom(one),
                                        trivial_action(c0, one), trivial_action(c0, one), {0}});
}

struct AdjunctionCounts {
  std::size_t induced_side = 0;   // |Hom(sigma_* X, Y)| over C0
  std::size_t pullback_side = 0;  // |Hom(X, sigma^* Y)| over B
  std::string regime;
};

/// Both hom-set sizes of the adjunction along a monomorphism sigma. Only
/// computable when sigma_* X is finite here: sigma an isomorphism, or X
/// trivial above B.
inline AdjunctionCounts adjunction_count(const GroupHom& sigma, const QuadPtr& x, const QuadPtr& y,
                                         std::size_t max_order = 64) {
  if (!same_group(sigma.source(), x->C0()) || !same_group(sigma.target(), y->C0()))
    throw Error(ErrorKind::TypeMismatch, "sigma does not connect the two bases");
  if (auto k = first_nontrivial_kernel_element(sigma))
    throw Error(ErrorKind::NotMonomorphism,
                detail::cat("sigma is not injective: ", *k, " lies in its kernel"), {*k});
  AdjunctionCounts out;
  QuadPtr induced;
  if (sigma.is_epi()) {
    induced = induce_quad_epi(x, sigma).result;
    out.regime = "isomorphism";
  } else if (x->C1()->is_trivial() && x->C2()->is_trivial()) {
    induced = trivial_quadratic(y->C0());
    out.regime = "trivial source";
  } else {
    throw Error(ErrorKind::NotComputable,
                "induced module along a proper monomorphism is an infinite free product");
  }
  MorphismEnumerationOptions opts;
  opts.max_order = max_order;
  out.induced_side = enumerate_quad_morphisms(induced, y, identity_hom(y->C0()), opts).size();
  auto pulled = pullback_quad(y, sigma).result;
  out.pullback_side = enumerate_quad_morphisms(x, pulled, identity_hom(x->C0()), opts).size();
  return out;
}

struct RelatorFamilyReport {
  std::string name;
  std::string form;
  bool corrected = false;
  std::size_t instances = 0;
  std::size_t nontrivial = 0;
  /// order of the normal closure of all instances in the ambient group
  std::size_t closure_order = 1;
  std::vector<std::vector<std::int64_t>> witnesses;
};

/// Push-out relators evaluated on a candidate with B = C2, C = C1, mu = d2,
/// nu = d1: the forms as printed and the forms matching the axioms in the
/// conventions used here.
inline std::vector<RelatorFamilyReport> pushout_relator_report(const QuadCandidate& c,
                                                               std::size_t tensor_cap = default_tensor_cap) {
  PreCrossedModule pcm(c.d1, c.act1);
  auto base = quadratic_base(pcm);
  auto t = tensor_square(base.C, tensor_cap);
  if (c.omega.size() != t.product->order())
    throw Error(ErrorKind::InvalidInput, "omega table does not match the tensor square");
  const auto& l = *c.C2();
  const auto& m = *c.C1();
  const auto& cm = base.class_map;
  auto om = [&](Elem u, Elem v) { return c.omega[t(u, v)]; };
  auto om2 = [&](Elem u, Elem v, Elem u2, Elem v2) {
    return c.omega[t.product->mul(t(u, v), t(u2, v2))];
  };
  std::vector<RelatorFamilyReport> out;
  auto family = [&](std::string name, std::string form, bool corrected, const GroupPtr& g,
                    auto&& each) {
    RelatorFamilyReport r{std::move(name), std::move(form), corrected, 0, 0, 1, {}};
    std::vector<Elem> values;
    each([&](Elem v, std::vector<std::int64_t> wit) {
      ++r.instances;
      if (v == g->identity()) return;
      ++r.nontrivial;
      values.push_back(v);
      if (r.witnesses.size() < witness_cap) r.witnesses.push_back(std::move(wit));
    });
    r.closure_order = normal_closure(g, values).order();
    out.push_back(std::move(r));
  };
  family("B1", "omega({mu b}(x){mu b'}) [b,b']^-1", false, c.C2(), [&](auto emit) {
    for (Elem b = 0; b < l.order(); ++b)
      for (Elem b2 = 0; b2 < l.order(); ++b2)
        emit(l.mul(om(cm(c.d2(b)), cm(c.d2(b2))), l.inv(l.commutator(b, b2))), {b, b2});
  });
  family("B1", "omega({mu b}(x){mu b'}) [b',b]^-1", true, c.C2(), [&](auto emit) {
    for (Elem b = 0; b < l.order(); ++b)
      for (Elem b2 = 0; b2 < l.order(); ++b2)
        emit(l.mul(om(cm(c.d2(b)), cm(c.d2(b2))), l.inv(l.commutator(b2, b))), {b, b2});
  });
  family("B2", "omega({mu b}(x){c}{c}(x){mu b'}) (b^-1)^{nu c} b", false, c.C2(), [&](auto emit) {
    for (Elem b = 0; b < l.order(); ++b)
      for (Elem b2 = 0; b2 < l.order(); ++b2)
        for (Elem x = 0; x < m.order(); ++x)
          emit(l.mul(l.mul(om2(cm(c.d2(b)), cm(x), cm(x), cm(c.d2(b2))),
                           c.act2(l.inv(b), c.d1(x))),
                     b),
               {b, b2, x});
  });
  family("B2", "omega({c}(x){mu b}{mu b}(x){c}) b (b^{nu c})^-1", true, c.C2(), [&](auto emit) {
    for (Elem b = 0; b < l.order(); ++b)
      for (Elem x = 0; x < m.order(); ++x)
        emit(l.mul(l.mul(om2(cm(x), cm(c.d2(b)), cm(c.d2(b)), cm(x)), b),
                   l.inv(c.act2(b, c.d1(x)))),
             {b, x});
  });
  family("C1", "mu omega({c}(x){c'}) c^{nu c} c c'^-1 c^-1", false, c.C1(), [&](auto emit) {
    for (Elem x = 0; x < m.order(); ++x)
      for (Elem y = 0; y < m.order(); ++y) {
        Elem v = c.d2(om(cm(x), cm(y)));
        v = m.mul(v, c.act1(x, c.d1(x)));
        v = m.mul(m.mul(v, x), m.mul(m.inv(y), m.inv(x)));
        emit(v, {x, y});
      }
  });
  family("C1", "mu omega({c}(x){c'}) <c,c'>^-1", true, c.C1(), [&](auto emit) {
    for (Elem x = 0; x < m.order(); ++x)
      for (Elem y = 0; y < m.order(); ++y)
        emit(m.mul(c.d2(om(cm(x), cm(y))), m.inv(pcm.peiffer(x, y))), {x, y});
  });
  return out;
}

}  // namespace quadmod
