#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quadmod/nil2.hpp"

namespace quadmod {

/// Unverified quadratic module data: C2 -d2-> C1 -d1-> C0 with actions of
/// C0 and the omega table indexed by the canonical C (x) C of (d1, act1).
struct QuadCandidate {
  GroupHom d1;
  GroupHom d2;
  GroupAction act1;
  GroupAction act2;
  std::vector<Elem> omega;

  const GroupPtr& C0() const noexcept { return d1.target(); }
  const GroupPtr& C1() const noexcept { return d1.source(); }
  const GroupPtr& C2() const noexcept { return d2.source(); }
};

enum class AxiomStatus { Pass, Fail, Skipped };

inline std::string_view to_string(AxiomStatus s) {
  switch (s) {
    case AxiomStatus::Pass: return "pass";
    case AxiomStatus::Fail: return "fail";
    case AxiomStatus::Skipped: return "skipped";
  }
  return "unknown";
}

struct Witness {
  std::string check;
  std::vector<std::int64_t> values;
};

struct AxiomResult {
  std::string axiom;
  AxiomStatus status = AxiomStatus::Pass;
  std::size_t violations = 0;
  std::vector<Witness> witnesses;
  std::vector<std::string> notes;
};

struct QuadReport {
  std::array<AxiomResult, 4> axioms{AxiomResult{"QM1"}, AxiomResult{"QM2"}, AxiomResult{"QM3"},
                                    AxiomResult{"QM4"}};
  std::optional<Classification> classification;

  bool ok() const {
    for (const auto& a : axioms)
      if (a.status != AxiomStatus::Pass) return false;
    return true;
  }
};

inline constexpr std::size_t witness_cap = 10;

class AxiomFailureError : public Error {
 public:
  AxiomFailureError(const std::string& message, std::vector<std::int64_t> witness, QuadReport report)
      : Error(ErrorKind::AxiomFailure, message, std::move(witness)), report_(std::move(report)) {}
  const QuadReport& report() const noexcept { return report_; }

 private:
  QuadReport report_;
};

/// A verified quadratic module.
struct QuadraticModule {
  GroupHom d1;
  GroupHom d2;
  GroupAction act1;
  GroupAction act2;
  QuadraticBase base;
  TensorSquare tensor;
  /// C (x) C -> C2.
  GroupHom omega;
  /// Peiffer pairing C (x) C -> C1.
  GroupHom w;
  /// C0 acting diagonally on C (x) C.
  GroupAction tensor_action;

  const GroupPtr& C0() const noexcept { return d1.target(); }
  const GroupPtr& C1() const noexcept { return d1.source(); }
  const GroupPtr& C2() const noexcept { return d2.source(); }
  PreCrossedModule nil2_part() const { return PreCrossedModule(d1, act1); }
  bool omega_trivial() const { return omega.is_trivial(); }
  QuadCandidate candidate() const { return QuadCandidate{d1, d2, act1, act2, omega.map()}; }
};

using QuadPtr = std::shared_ptr<const QuadraticModule>;

namespace detail {

inline void record(AxiomResult& r, std::string check, std::vector<std::int64_t> values) {
  r.status = AxiomStatus::Fail;
  ++r.violations;
  if (r.witnesses.size() < witness_cap) r.witnesses.push_back({std::move(check), std::move(values)});
}

inline void check_types(const QuadCandidate& c) {
  if (!same_group(c.d2.target(), c.d1.source()))
    throw Error(ErrorKind::TypeMismatch, "d2 does not land in the source of d1");
  if (!same_group(c.act1.actor(), c.C0()) || !same_group(c.act1.carrier(), c.C1()))
    throw Error(ErrorKind::TypeMismatch, "act1 must be an action of C0 on C1");
  if (!same_group(c.act2.actor(), c.C0()) || !same_group(c.act2.carrier(), c.C2()))
    throw Error(ErrorKind::TypeMismatch, "act2 must be an action of C0 on C2");
  for (Elem x : c.omega)
    if (x >= c.C2()->order()) throw Error(ErrorKind::InvalidInput, "omega value outside C2");
}

struct Prepared {
  std::optional<QuadraticBase> base;
  std::optional<TensorSquare> tensor;
  std::optional<GroupHom> w;
  std::optional<GroupAction> tensor_action;
};

}  // namespace detail

/// Evaluates QM1..QM4 exhaustively, collecting up to `witness_cap`
/// witnesses per axiom. Checks needing the quadratic base are skipped when
/// QM1 fails.
inline QuadReport check_quadratic(const QuadCandidate& c, std::size_t tensor_cap = default_tensor_cap,
                                  detail::Prepared* prepared = nullptr) {
  detail::check_types(c);
  QuadReport rep;
  auto& qm1 = rep.axioms[0];
  auto& qm2 = rep.axioms[1];
  auto& qm3 = rep.axioms[2];
  auto& qm4 = rep.axioms[3];
  const auto& c0 = *c.C0();
  const auto& c1 = *c.C1();
  const auto& c2 = *c.C2();

  // QM1: pre-crossed law, nil(2), well-defined Peiffer pairing
  for (Elem m = 0; m < c1.order(); ++m)
    for (Elem q = 0; q < c0.order(); ++q)
      if (c.d1(c.act1(m, q)) != c0.conj(c.d1(m), q))
        detail::record(qm1, "d1(m^q) = q^-1 d1(m) q", {m, q});
  detail::Prepared prep;
  if (qm1.status == AxiomStatus::Pass) {
    PreCrossedModule pcm(c.d1, c.act1);
    rep.classification = classify(pcm);
    if (rep.classification->kind == Nil2Class::NotNil2) {
      const auto& w = *rep.classification->triple_witness;
      detail::record(qm1, "nil(2): " + rep.classification->triple_bracket + " = e", {w[0], w[1], w[2]});
    } else {
      prep.base = quadratic_base(pcm);
      prep.tensor = tensor_square(prep.base->C, tensor_cap);
      try {
        prep.w = peiffer_pairing(*prep.base, *prep.tensor);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotWellDefined) throw;
        detail::record(qm1, "Peiffer pairing well defined", e.witness());
      }
    }
  }
  const bool have_base = prep.w.has_value();
  if (have_base && c.omega.size() != prep.tensor->product->order())
    throw Error(ErrorKind::InvalidInput,
                detail::cat("omega table has ", c.omega.size(), " entries, C (x) C has order ",
                            prep.tensor->product->order()));
  if (have_base) prep.tensor_action = tensor_action(*prep.tensor, prep.base->C0_action);

  // QM2
  for (Elem a = 0; a < c2.order(); ++a)
    if (c.d1(c.d2(a)) != c0.identity()) detail::record(qm2, "d1 d2 = 1", {a});
  if (have_base) {
    const auto& t = *prep.tensor->product;
    for (Elem s = 0; s < t.order(); ++s)
      for (Elem u = 0; u < t.order(); ++u)
        if (c.omega[t.mul(s, u)] != c2.mul(c.omega[s], c.omega[u]))
          detail::record(qm2, "omega is a homomorphism", {s, u});
    for (Elem s = 0; s < t.order(); ++s)
      if (c.d2(c.omega[s]) != (*prep.w)(s)) detail::record(qm2, "d2 omega = w", {s});
  }

  // QM3
  for (Elem a = 0; a < c2.order(); ++a)
    for (Elem q = 0; q < c0.order(); ++q)
      if (c.d2(c.act2(a, q)) != c.act1(c.d2(a), q)) detail::record(qm3, "d2 equivariant", {a, q});
  if (have_base) {
    const auto& t = *prep.tensor->product;
    const auto& ta = *prep.tensor_action;
    for (Elem s = 0; s < t.order(); ++s)
      for (Elem q = 0; q < c0.order(); ++q)
        if (c.omega[ta(s, q)] != c.act2(c.omega[s], q))
          detail::record(qm3, "omega equivariant", {s, q});
    const auto& cm = prep.base->class_map;
    const auto& T = *prep.tensor;
    for (Elem a = 0; a < c2.order(); ++a) {
      const Elem da = cm(c.d2(a));
      for (Elem x = 0; x < c1.order(); ++x) {
        const Elem cx = cm(x);
        const Elem s = t.mul(T(cx, da), T(da, cx));
        if (c.act2(a, c.d1(x)) != c2.mul(c.omega[s], a))
          detail::record(qm3, "a^{d1 x} = omega(({x}(x){d2 a})({d2 a}(x){x})) a", {a, x});
      }
    }
  }

  // QM4
  if (have_base) {
    const auto& cm = prep.base->class_map;
    const auto& T = *prep.tensor;
    for (Elem a = 0; a < c2.order(); ++a)
      for (Elem b = 0; b < c2.order(); ++b)
        if (c.omega[T(cm(c.d2(a)), cm(c.d2(b)))] != c2.commutator(b, a))
          detail::record(qm4, "omega({d2 a}(x){d2 b}) = [b,a]", {a, b});
  }

  if (!have_base)
    for (std::size_t i = 1; i < 4; ++i)
      if (rep.axioms[i].status == AxiomStatus::Pass) {
        rep.axioms[i].status = AxiomStatus::Skipped;
        rep.axioms[i].notes.push_back("checks needing the quadratic base skipped: QM1 failed");
      }
  if (prepared) *prepared = std::move(prep);
  return rep;
}

inline std::string summarize(const QuadReport& rep) {
  std::string out;
  for (const auto& a : rep.axioms) {
    if (!out.empty()) out += ", ";
    out += a.axiom + ": " + std::string(to_string(a.status));
  }
  return out;
}

inline QuadPtr verify_quadratic(const QuadCandidate& c, std::size_t tensor_cap = default_tensor_cap) {
  detail::Prepared prep;
  auto rep = check_quadratic(c, tensor_cap, &prep);
  if (!rep.ok()) {
    std::vector<std::int64_t> witness;
    std::string first;
    for (const auto& a : rep.axioms)
      if (a.status == AxiomStatus::Fail) {
        first = a.axiom + " (" + a.witnesses.front().check + ")";
        witness = a.witnesses.front().values;
        break;
      }
    throw AxiomFailureError("axiom " + first + " fails; " + summarize(rep), witness, rep);
  }
  GroupHom omega(GroupHom::Trusted{}, prep.tensor->product, c.C2(), c.omega);
  return std::make_shared<const QuadraticModule>(QuadraticModule{
      c.d1, c.d2, c.act1, c.act2, std::move(*prep.base), std::move(*prep.tensor), std::move(omega),
      std::move(*prep.w), std::move(*prep.tensor_action)});
}

/// C2 = C (x) C, d2 = w, omega = identity.
inline QuadPtr from_nil2(const Nil2Module& n, std::size_t tensor_cap = default_tensor_cap) {
  auto qb = quadratic_base(n);
  auto t = tensor_square(qb.C, tensor_cap);
  auto w = peiffer_pairing(qb, t);
  auto act2 = tensor_action(t, qb.C0_action);
  std::vector<Elem> omega(t.product->order());
  for (Elem s = 0; s < omega.size(); ++s) omega[s] = s;
  return verify_quadratic(QuadCandidate{n.boundary(), w, n.action(), act2, std::move(omega)},
                          tensor_cap);
}

/// A nil(2)-complex of length 2 viewed as a quadratic module with trivial
/// omega. Conditions: (i) d1 nil(2), (ii) C2 abelian C0-group with d2
/// equivariant and d1(C1) acting trivially, (iii) d1 d2 = 1.
inline QuadPtr from_nil2_complex(const GroupHom& d2, const GroupAction& act2, const Nil2Module& n,
                                 std::size_t tensor_cap = default_tensor_cap) {
  const auto& d1 = n.boundary();
  if (!same_group(d2.target(), n.M()))
    throw Error(ErrorKind::TypeMismatch, "d2 does not land in the nil(2)-module's top group");
  if (!same_group(act2.carrier(), d2.source()) || !same_group(act2.actor(), n.Q()))
    throw Error(ErrorKind::TypeMismatch, "act2 must be an action of C0 on C2");
  const auto& c2 = *d2.source();
  if (auto w = c2.noncommuting_pair())
    throw Error(ErrorKind::PreconditionFailure,
                detail::cat("(ii) C2 is not abelian: ", w->first, " and ", w->second,
                            " do not commute"),
                {w->first, w->second});
  for (Elem a = 0; a < c2.order(); ++a)
    for (Elem q = 0; q < n.Q()->order(); ++q)
      if (d2(act2(a, q)) != n.action()(d2(a), q))
        throw Error(ErrorKind::PreconditionFailure,
                    detail::cat("(ii) d2 is not C0-equivariant at (a,q) = (", a, ",", q, ")"),
                    {a, q});
  for (Elem a = 0; a < c2.order(); ++a)
    for (Elem x = 0; x < n.M()->order(); ++x)
      if (act2(a, d1(x)) != a)
        throw Error(ErrorKind::PreconditionFailure,
                    detail::cat("(ii) d1(C1) acts nontrivially on C2 at (a,x) = (", a, ",", x, ")"),
                    {a, x});
  for (Elem a = 0; a < c2.order(); ++a)
    if (d1(d2(a)) != n.Q()->identity())
      throw Error(ErrorKind::PreconditionFailure,
                  detail::cat("(iii) d1 d2 != 1 at a = ", a), {a});
  auto qb = quadratic_base(n);
  const auto tsize = tensor_square_order(qb.C.invariant_factors);
  return verify_quadratic(
      QuadCandidate{d1, d2, n.action(), act2, std::vector<Elem>(tsize, c2.identity())}, tensor_cap);
}

/// C2 -> C1 -> C0 certified as a crossed complex of length 2.
struct CrossedComplex {
  GroupHom d1;
  GroupHom d2;
  GroupAction act1;
  GroupAction act2;
};

inline CrossedComplex to_crossed_complex(const QuadraticModule& q) {
  const auto& om = q.omega;
  for (Elem s = 0; s < om.source()->order(); ++s)
    if (om(s) != q.C2()->identity())
      throw Error(ErrorKind::OmegaNotTrivial, detail::cat("omega(", s, ") != e"), {s});
  const auto pcm = q.nil2_part();
  for (Elem x = 0; x < q.C1()->order(); ++x)
    for (Elem y = 0; y < q.C1()->order(); ++y)
      if (pcm.peiffer(x, y) != q.C1()->identity())
        throw Error(ErrorKind::AxiomFailure,
                    detail::cat("(i) Peiffer identity fails at (", x, ",", y, ")"), {x, y});
  if (auto w = q.C2()->noncommuting_pair())
    throw Error(ErrorKind::AxiomFailure, "(ii) C2 is not abelian", {w->first, w->second});
  for (Elem a = 0; a < q.C2()->order(); ++a)
    for (Elem x = 0; x < q.C1()->order(); ++x)
      if (q.act2(a, q.d1(x)) != a)
        throw Error(ErrorKind::AxiomFailure,
                    detail::cat("(iii) d1(C1) acts nontrivially at (a,x) = (", a, ",", x, ")"),
                    {a, x});
  return CrossedComplex{q.d1, q.d2, q.act1, q.act2};
}

/// (f2, f1, f0) between verified quadratic modules.
struct QuadraticMorphism {
  QuadPtr source;
  QuadPtr target;
  GroupHom f0;
  GroupHom f1;
  GroupHom f2;
  /// phi_* : C -> C'
  GroupHom induced_star;
};

/// First violated morphism condition, or nullopt. phi_* is written to
/// `star` when the nil(2) part is a morphism.
inline std::optional<Witness> morphism_violation(const QuadraticModule& x, const QuadraticModule& y,
                                                 const GroupHom& f2, const GroupHom& f1,
                                                 const GroupHom& f0,
                                                 std::optional<GroupHom>* star = nullptr) {
  if (!same_group(f0.source(), x.C0()) || !same_group(f0.target(), y.C0()) ||
      !same_group(f1.source(), x.C1()) || !same_group(f1.target(), y.C1()) ||
      !same_group(f2.source(), x.C2()) || !same_group(f2.target(), y.C2()))
    return Witness{"level groups do not match", {}};
  if (auto v = nil2_morphism_violation(x.nil2_part(), y.nil2_part(), f1, f0))
    return Witness{v->first, v->second};
  for (Elem a = 0; a < x.C2()->order(); ++a)
    if (y.d2(f2(a)) != f1(x.d2(a))) return Witness{"d2' f2 = f1 d2", {a}};
  for (Elem a = 0; a < x.C2()->order(); ++a)
    for (Elem q = 0; q < x.C0()->order(); ++q)
      if (f2(x.act2(a, q)) != y.act2(f2(a), f0(q)))
        return Witness{"f2(a^q) = f2(a)^{f0(q)}", {a, q}};
  GroupHom phi = induced_on_base(x.base, y.base, f1);
  const auto& cx = *x.base.C.group;
  for (Elem u = 0; u < cx.order(); ++u)
    for (Elem v = 0; v < cx.order(); ++v)
      if (f2(x.omega(x.tensor(u, v))) != y.omega(y.tensor(phi(u), phi(v))))
        return Witness{"f2 omega = omega' (phi* (x) phi*)", {u, v}};
  if (star) *star = std::move(phi);
  return std::nullopt;
}

inline QuadraticMorphism build_morphism(const QuadPtr& x, const QuadPtr& y, GroupHom f2, GroupHom f1,
                                        GroupHom f0) {
  std::optional<GroupHom> star;
  if (auto v = morphism_violation(*x, *y, f2, f1, f0, &star))
    throw Error(ErrorKind::NotMorphism, "quadratic morphism condition fails: " + v->check, v->values);
  return QuadraticMorphism{x, y, std::move(f0), std::move(f1), std::move(f2), std::move(*star)};
}

inline QuadraticMorphism identity_morphism(const QuadPtr& x) {
  return build_morphism(x, x, identity_hom(x->C2()), identity_hom(x->C1()), identity_hom(x->C0()));
}

/// g after f, re-verified.
inline QuadraticMorphism compose(const QuadraticMorphism& g, const QuadraticMorphism& f) {
  return build_morphism(f.source, g.target, compose(g.f2, f.f2), compose(g.f1, f.f1),
                        compose(g.f0, f.f0));
}

struct MorphismEnumerationOptions {
  std::size_t max_order = 64;
};

/// All quadratic morphisms X -> Y whose bottom map is f0, in lexicographic
/// order of (f1, f2).
inline std::vector<QuadraticMorphism> enumerate_quad_morphisms(
    const QuadPtr& x, const QuadPtr& y, const GroupHom& f0,
    const MorphismEnumerationOptions& opts = {}) {
  HomEnumerationOptions ho;
  ho.max_source = opts.max_order;
  ho.max_target = opts.max_order;
  std::vector<QuadraticMorphism> out;
  const auto pcm_x = x->nil2_part();
  const auto pcm_y = y->nil2_part();
  auto f1s = enumerate_homs(x->C1(), y->C1(), ho);
  const auto& cx = *x->base.C.group;
  constexpr Elem unset = static_cast<Elem>(-1);
  for (const auto& f1 : f1s) {
    if (nil2_morphism_violation(pcm_x, pcm_y, f1, f0)) continue;
    GroupHom phi = induced_on_base(x->base, y->base, f1);
    // f2 is forced on the image of omega
    std::vector<Elem> fixed(x->C2()->order(), unset);
    std::vector<Elem> hint;
    bool consistent = true;
    for (Elem u = 0; u < cx.order() && consistent; ++u)
      for (Elem v = 0; v < cx.order() && consistent; ++v) {
        const Elem a = x->omega(x->tensor(u, v));
        const Elem b = y->omega(y->tensor(phi(u), phi(v)));
        if (fixed[a] == unset) {
          fixed[a] = b;
          hint.push_back(a);
        } else {
          consistent = fixed[a] == b;
        }
      }
    if (!consistent) continue;
    auto opts2 = ho;
    opts2.preferred_generators = hint;
    opts2.generator_filter = [&](Elem gen, Elem img) {
      if (fixed[gen] != unset && fixed[gen] != img) return false;
      return y->d2(img) == f1(x->d2(gen));
    };
    for (const auto& f2 : enumerate_homs(x->C2(), y->C2(), opts2)) {
      std::optional<GroupHom> star;
      if (morphism_violation(*x, *y, f2, f1, f0, &star)) continue;
      out.push_back(QuadraticMorphism{x, y, f0, f1, f2, std::move(*star)});
    }
  }
  return out;
}

/// All morphisms X -> Y for every f0 : C0 -> C0'.
inline std::vector<QuadraticMorphism> enumerate_quad_morphisms(
    const QuadPtr& x, const QuadPtr& y, const MorphismEnumerationOptions& opts = {}) {
  HomEnumerationOptions ho;
  ho.max_source = opts.max_order;
  ho.max_target = opts.max_order;
  std::vector<QuadraticMorphism> out;
  for (const auto& f0 : enumerate_homs(x->C0(), y->C0(), ho))
    for (auto& m : enumerate_quad_morphisms(x, y, f0, opts)) out.push_back(std::move(m));
  return out;
}

/// Level-wise isomorphism test used to compare constructions.
inline bool is_isomorphism(const QuadraticMorphism& m) {
  return m.f0.is_iso() && m.f1.is_iso() && m.f2.is_iso();
}

}  // namespace quadmod
