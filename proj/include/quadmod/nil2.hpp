#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quadmod/subgroup.hpp"
#include "quadmod/tensor.hpp"

namespace quadmod {

/// boundary : M -> Q with a right action of Q on M such that
/// boundary(m^q) = q^{-1} boundary(m) q.
class PreCrossedModule {
 public:
  PreCrossedModule(GroupHom boundary, GroupAction action)
      : boundary_(std::move(boundary)), action_(std::move(action)) {
    if (!same_group(boundary_.source(), action_.carrier()) ||
        !same_group(boundary_.target(), action_.actor()))
      throw Error(ErrorKind::TypeMismatch,
                  "boundary M -> Q and action of Q on M refer to different groups");
    const auto& q = *Q();
    for (Elem m = 0; m < M()->order(); ++m)
      for (Elem g = 0; g < q.order(); ++g)
        if (boundary_(action_(m, g)) != q.conj(boundary_(m), g))
          throw Error(ErrorKind::NotEquivariant,
                      detail::cat("d(m^q) != q^-1 d(m) q at (m,q) = (", m, ",", g, ")"), {m, g});
  }

  const GroupHom& boundary() const noexcept { return boundary_; }
  const GroupAction& action() const noexcept { return action_; }
  const GroupPtr& M() const noexcept { return boundary_.source(); }
  const GroupPtr& Q() const noexcept { return boundary_.target(); }

  /// <x,y> = x^{-1} y^{-1} x y^{d x}
  Elem peiffer(Elem x, Elem y) const noexcept {
    const auto& m = *M();
    return m.mul(m.mul(m.mul(m.inv(x), m.inv(y)), x), action_(y, boundary_(x)));
  }

 private:
  GroupHom boundary_;
  GroupAction action_;
};

inline PreCrossedModule build_precrossed(GroupHom boundary, GroupAction action) {
  return PreCrossedModule(std::move(boundary), std::move(action));
}

/// The identity on G with conjugation.
inline PreCrossedModule conjugation_module(const GroupPtr& g) {
  return PreCrossedModule(identity_hom(g), conjugation_action(g));
}

inline Elem peiffer(const PreCrossedModule& pcm, Elem x, Elem y) { return pcm.peiffer(x, y); }

enum class Nil2Class { Crossed, Nil2NotCrossed, NotNil2 };

inline std::string_view to_string(Nil2Class c) {
  switch (c) {
    case Nil2Class::Crossed: return "Crossed";
    case Nil2Class::Nil2NotCrossed: return "Nil2NotCrossed";
    case Nil2Class::NotNil2: return "NotNil2";
  }
  return "Unknown";
}

struct Classification {
  Nil2Class kind = Nil2Class::Crossed;
  /// First (x,y) with <x,y> != e, if any.
  std::optional<std::array<Elem, 2>> peiffer_witness;
  /// First (x,y,z) violating a length-3 bracket, if any.
  std::optional<std::array<Elem, 3>> triple_witness;
  /// "<<x,y>,z>" or "<x,<y,z>>" for the violated bracket.
  std::string triple_bracket;
};

/// Exhaustive classification: both association orders of the length-3
/// brackets are evaluated on every triple.
inline Classification classify(const PreCrossedModule& pcm) {
  const auto n = pcm.M()->order();
  const auto e = pcm.M()->identity();
  std::vector<Elem> pt(n * n);
  Classification c;
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      pt[x * n + y] = pcm.peiffer(x, y);
      if (pt[x * n + y] != e && !c.peiffer_witness) c.peiffer_witness = std::array{x, y};
    }
  if (!c.peiffer_witness) return c;
  c.kind = Nil2Class::Nil2NotCrossed;
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z) {
        if (pt[pt[x * n + y] * n + z] != e) {
          c.kind = Nil2Class::NotNil2;
          c.triple_witness = std::array{x, y, z};
          c.triple_bracket = "<<x,y>,z>";
          return c;
        }
        if (pt[x * n + pt[y * n + z]] != e) {
          c.kind = Nil2Class::NotNil2;
          c.triple_witness = std::array{x, y, z};
          c.triple_bracket = "<x,<y,z>>";
          return c;
        }
      }
  return c;
}

/// A pre-crossed module certified to satisfy P3 = 1.
class Nil2Module {
 public:
  explicit Nil2Module(PreCrossedModule pcm) : pcm_(std::move(pcm)), cls_(classify(pcm_)) {
    if (cls_.kind == Nil2Class::NotNil2) {
      const auto& w = *cls_.triple_witness;
      throw Error(ErrorKind::NotNil2,
                  detail::cat(cls_.triple_bracket, " != e at (x,y,z) = (", w[0], ",", w[1], ",",
                              w[2], ")"),
                  {w[0], w[1], w[2]});
    }
  }

  const PreCrossedModule& pcm() const noexcept { return pcm_; }
  const Classification& classification() const noexcept { return cls_; }
  bool is_crossed() const noexcept { return cls_.kind == Nil2Class::Crossed; }
  const GroupHom& boundary() const noexcept { return pcm_.boundary(); }
  const GroupAction& action() const noexcept { return pcm_.action(); }
  const GroupPtr& M() const noexcept { return pcm_.M(); }
  const GroupPtr& Q() const noexcept { return pcm_.Q(); }

 private:
  PreCrossedModule pcm_;
  Classification cls_;
};

/// C = (M / <M,M>)^ab with x -> {x} and the induced Q-action.
struct QuadraticBase {
  PreCrossedModule source;
  /// Normal closure of the Peiffer elements <x,y>.
  Subgroup peiffer_subgroup;
  /// M / <M,M>, the associated crossed module's top group.
  GroupPtr cr_group;
  /// Kernel of M -> C: Peiffer elements and commutators.
  Subgroup kernel;
  AbelianDecomposition C;
  /// x -> {x}, surjective M -> C.
  GroupHom class_map;
  GroupAction C0_action;
  /// Minimal element index in each class.
  std::vector<Elem> representatives;
};

inline QuadraticBase quadratic_base(const PreCrossedModule& pcm) {
  const auto cls = classify(pcm);
  if (cls.kind == Nil2Class::NotNil2) {
    const auto& w = *cls.triple_witness;
    throw Error(ErrorKind::NotNil2,
                detail::cat(cls.triple_bracket, " != e at (x,y,z) = (", w[0], ",", w[1], ",", w[2],
                            ")"),
                {w[0], w[1], w[2]});
  }
  const auto& m = pcm.M();
  std::vector<Elem> peiffers, seeds;
  for (Elem x = 0; x < m->order(); ++x)
    for (Elem y = 0; y < m->order(); ++y) {
      peiffers.push_back(pcm.peiffer(x, y));
      seeds.push_back(pcm.peiffer(x, y));
      seeds.push_back(m->commutator(x, y));
    }
  auto p = normal_closure(m, peiffers);
  auto cr = quotient(p);
  auto k = normal_closure(m, seeds);
  auto quo = quotient(k);
  auto dec = abelian_invariants(quo.group);
  auto act = quotient_action(pcm.action(), quo);
  return QuadraticBase{pcm,
                       std::move(p),
                       cr.group,
                       std::move(k),
                       std::move(dec),
                       quo.projection,
                       std::move(act),
                       quo.representatives};
}

inline QuadraticBase quadratic_base(const Nil2Module& n) { return quadratic_base(n.pcm()); }

/// w : C (x) C -> M with w({x} (x) {y}) = <x,y>, checked to be well defined.
inline GroupHom peiffer_pairing(const QuadraticBase& qb, const TensorSquare& t) {
  if (!same_group(t.base.group, qb.C.group))
    throw Error(ErrorKind::TypeMismatch, "tensor square is not built on the quadratic base");
  const auto& pcm = qb.source;
  const auto& m = *pcm.M();
  const auto n = m.order();
  const auto& cm = qb.class_map;
  // class invariance in each slot
  for (Elem x = 0; x < n; ++x) {
    const Elem rx = qb.representatives[cm(x)];
    if (rx == x) continue;
    for (Elem y = 0; y < n; ++y) {
      if (pcm.peiffer(x, y) != pcm.peiffer(rx, y))
        throw Error(ErrorKind::NotWellDefined,
                    detail::cat("<x,y> != <x',y> with {x} = {x'} at (x,x',y) = (", x, ",", rx, ",",
                                y, ")"),
                    {x, rx, y});
      if (pcm.peiffer(y, x) != pcm.peiffer(y, rx))
        throw Error(ErrorKind::NotWellDefined,
                    detail::cat("<y,x> != <y,x'> with {x} = {x'} at (x,x',y) = (", x, ",", rx, ",",
                                y, ")"),
                    {x, rx, y});
    }
  }
  std::vector<Elem> gen_images(t.pairs.size());
  for (std::size_t p = 0; p < t.pairs.size(); ++p) {
    const auto [i, j] = t.pairs[p];
    gen_images[p] = pcm.peiffer(qb.representatives[t.base.generator_indices[i]],
                                qb.representatives[t.base.generator_indices[j]]);
  }
  std::vector<Elem> map(t.product->order());
  for (Elem s = 0; s < map.size(); ++s) {
    const auto d = t.digits(s);
    Elem v = m.identity();
    for (std::size_t p = 0; p < d.size(); ++p) v = m.mul(v, m.pow(gen_images[p], d[p]));
    map[s] = v;
  }
  const auto& tp = *t.product;
  for (Elem a = 0; a < tp.order(); ++a)
    for (Elem b = 0; b < tp.order(); ++b)
      if (map[tp.mul(a, b)] != m.mul(map[a], map[b]))
        throw Error(ErrorKind::NotWellDefined,
                    detail::cat("Peiffer pairing does not respect the relations of C (x) C at (",
                                a, ",", b, ")"),
                    {a, b});
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (map[t(cm(x), cm(y))] != pcm.peiffer(x, y))
        throw Error(ErrorKind::NotWellDefined,
                    detail::cat("w({x} (x) {y}) != <x,y> at (x,x',y) = (", x, ",", x, ",", y, ")"),
                    {x, x, y});
  return GroupHom(GroupHom::Trusted{}, t.product, pcm.M(), std::move(map));
}

/// The nil(2)-morphism condition for (f1, f0) between pre-crossed modules:
/// squares commute and f1(m^q) = f1(m)^{f0(q)}.
inline std::optional<std::pair<std::string, std::vector<std::int64_t>>> nil2_morphism_violation(
    const PreCrossedModule& src, const PreCrossedModule& dst, const GroupHom& f1,
    const GroupHom& f0) {
  if (!same_group(f1.source(), src.M()) || !same_group(f1.target(), dst.M()) ||
      !same_group(f0.source(), src.Q()) || !same_group(f0.target(), dst.Q()))
    return std::pair{std::string("level groups do not match"), std::vector<std::int64_t>{}};
  for (Elem m = 0; m < src.M()->order(); ++m)
    if (f0(src.boundary()(m)) != dst.boundary()(f1(m)))
      return std::pair{std::string("f0 d != d' f1"), std::vector<std::int64_t>{m}};
  for (Elem m = 0; m < src.M()->order(); ++m)
    for (Elem q = 0; q < src.Q()->order(); ++q)
      if (f1(src.action()(m, q)) != dst.action()(f1(m), f0(q)))
        return std::pair{std::string("f1(m^q) != f1(m)^{f0(q)}"), std::vector<std::int64_t>{m, q}};
  return std::nullopt;
}

/// phi_* : C -> C' induced by a nil(2)-morphism with level map f1.
inline GroupHom induced_on_base(const QuadraticBase& src, const QuadraticBase& dst,
                                const GroupHom& f1) {
  const auto nc = src.C.group->order();
  std::vector<Elem> map(nc);
  for (Elem c = 0; c < nc; ++c) map[c] = dst.class_map(f1(src.representatives[c]));
  for (Elem x = 0; x < src.source.M()->order(); ++x)
    if (map[src.class_map(x)] != dst.class_map(f1(x)))
      throw Error(ErrorKind::NotWellDefined,
                  detail::cat("f1 does not descend to the quadratic bases at x = ", x), {x});
  return GroupHom(GroupHom::Trusted{}, src.C.group, dst.C.group, std::move(map));
}

}  // namespace quadmod
