#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quadmod/quadratic.hpp"

namespace quadmod {

/// {(p,m) : d(m) = s(p)} inside P x M, pairs in lexicographic order.
struct FiberProduct {
  GroupPtr group;
  std::vector<std::pair<Elem, Elem>> pairs;
  /// pair (p,m) -> element, or -1
  std::vector<std::int64_t> index;  // p * |M| + m
  std::size_t m_order = 0;

  Elem at(Elem p, Elem m) const {
    const auto i = index[p * m_order + m];
    if (i < 0) throw Error(ErrorKind::InvalidInput, "pair is not in the fiber product");
    return static_cast<Elem>(i);
  }
  bool contains(Elem p, Elem m) const { return index[p * m_order + m] >= 0; }
};

inline FiberProduct fiber_product(const GroupHom& d, const GroupHom& s) {
  if (!same_group(d.target(), s.target()))
    throw Error(ErrorKind::TypeMismatch, "fiber product of maps with different targets");
  const auto& m = *d.source();
  const auto& p = *s.source();
  FiberProduct fp;
  fp.m_order = m.order();
  fp.index.assign(p.order() * m.order(), -1);
  for (Elem a = 0; a < p.order(); ++a)
    for (Elem x = 0; x < m.order(); ++x)
      if (d(x) == s(a)) {
        fp.index[a * m.order() + x] = static_cast<std::int64_t>(fp.pairs.size());
        fp.pairs.emplace_back(a, x);
      }
  const auto n = fp.pairs.size();
  std::vector<Elem> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto [a, x] = fp.pairs[i];
      const auto [b, y] = fp.pairs[j];
      table[i * n + j] = fp.at(p.mul(a, b), m.mul(x, y));
    }
  fp.group = make_trusted_group(n, std::move(table));
  return fp;
}

struct PullbackNil2 {
  Nil2Module result;
  /// sigma_1 : sigma^*(M) -> M
  GroupHom proj_M;
  FiberProduct fiber;
};

namespace detail {

/// B acting on the fiber product by (b,c)^{b'} = (b'^-1 b b', c^{s(b')}).
inline GroupAction fiber_action(const FiberProduct& fp, const GroupAction& act, const GroupHom& s) {
  const auto& b = *s.source();
  const auto n = fp.pairs.size();
  std::vector<Elem> table(n * b.order());
  for (std::size_t i = 0; i < n; ++i)
    for (Elem g = 0; g < b.order(); ++g) {
      const auto [p, m] = fp.pairs[i];
      table[i * b.order() + g] = fp.at(b.conj(p, g), act(m, s(g)));
    }
  return GroupAction(s.source(), fp.group, std::move(table));
}

inline GroupHom fiber_left(const FiberProduct& fp, const GroupPtr& p) {
  std::vector<Elem> map(fp.pairs.size());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = fp.pairs[i].first;
  return GroupHom(GroupHom::Trusted{}, fp.group, p, std::move(map));
}

inline GroupHom fiber_right(const FiberProduct& fp, const GroupPtr& m) {
  std::vector<Elem> map(fp.pairs.size());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = fp.pairs[i].second;
  return GroupHom(GroupHom::Trusted{}, fp.group, m, std::move(map));
}

}  // namespace detail

/// sigma^*(M) -> P as the fiber product of d and sigma; sigma need not be
/// injective. The result is re-verified as a nil(2)-module from scratch.
inline PullbackNil2 pullback_nil2(const Nil2Module& n, const GroupHom& sigma) {
  if (!same_group(sigma.target(), n.Q()))
    throw Error(ErrorKind::TypeMismatch, "sigma does not land in the base of the nil(2)-module");
  auto fp = fiber_product(n.boundary(), sigma);
  auto act = detail::fiber_action(fp, n.action(), sigma);
  auto beta1 = detail::fiber_left(fp, sigma.source());
  auto proj = detail::fiber_right(fp, n.M());
  Nil2Module result(PreCrossedModule(std::move(beta1), std::move(act)));
  if (auto v = nil2_morphism_violation(result.pcm(), n.pcm(), proj, sigma))
    throw Error(ErrorKind::NotMorphism, "(sigma_1, sigma) is not a nil(2)-morphism: " + v->first,
                v->second);
  return PullbackNil2{std::move(result), std::move(proj), std::move(fp)};
}

struct PullbackQuad {
  QuadPtr result;
  /// (id, mu_1, sigma) : result -> original
  QuadraticMorphism morphism;
  FiberProduct fiber;
};

inline std::optional<Elem> first_nontrivial_kernel_element(const GroupHom& f) {
  for (Elem x : f.kernel())
    if (x != f.source()->identity()) return x;
  return std::nullopt;
}

/// Pullback of a quadratic module along a monomorphism sigma : B -> C0. The
/// top group is C2 itself; d2' (c) = (1, d2 c) and omega' = omega o (mu_1* (x) mu_1*).
inline PullbackQuad pullback_quad(const QuadPtr& q, const GroupHom& sigma,
                                  std::size_t tensor_cap = default_tensor_cap) {
  if (!same_group(sigma.target(), q->C0()))
    throw Error(ErrorKind::TypeMismatch, "sigma does not land in C0");
  if (auto k = first_nontrivial_kernel_element(sigma))
    throw Error(ErrorKind::NotMonomorphism,
                detail::cat("sigma is not injective: ", *k, " lies in its kernel"), {*k});
  const auto& b = sigma.source();
  auto fp = fiber_product(q->d1, sigma);
  auto act1 = detail::fiber_action(fp, q->act1, sigma);
  auto beta1 = detail::fiber_left(fp, b);
  auto mu1 = detail::fiber_right(fp, q->C1());
  std::vector<Elem> d2map(q->C2()->order());
  for (Elem c = 0; c < d2map.size(); ++c) d2map[c] = fp.at(b->identity(), q->d2(c));
  GroupHom beta2(GroupHom::Trusted{}, q->C2(), fp.group, std::move(d2map));
  auto act2 = pull_action(q->act2, sigma);

  PreCrossedModule pcm(beta1, act1);
  auto base = quadratic_base(pcm);
  auto tensor = tensor_square(base.C, tensor_cap);
  auto star = induced_on_base(base, q->base, mu1);
  auto tmap = tensor_map(tensor, q->tensor, star);
  std::vector<Elem> omega(tensor.product->order());
  for (Elem s = 0; s < omega.size(); ++s) omega[s] = q->omega(tmap(s));
  auto result = verify_quadratic(QuadCandidate{beta1, beta2, act1, act2, std::move(omega)},
                                 tensor_cap);
  auto mor = build_morphism(result, q, identity_hom(q->C2()), mu1, sigma);
  return PullbackQuad{std::move(result), std::move(mor), std::move(fp)};
}

struct Factorization {
  QuadraticMorphism epsilon;
  /// Morphisms E -> pullback over id_B whose composite with the projection
  /// equals g. Exactly 1 when the universal property holds.
  std::size_t matching_candidates = 0;
  bool exhaustive = false;
};

/// Given a quadratic module E over B and a morphism g = (g2, g1, sigma) from
/// E to the original module, builds the unique epsilon : E -> pullback over
/// id_B with mu o epsilon = g, and confirms uniqueness by enumeration.
inline Factorization universal_factorization(const PullbackQuad& pq, const QuadPtr& e,
                                             const QuadraticMorphism& g,
                                             std::size_t max_order = 64) {
  const auto& res = pq.result;
  const auto& sigma = pq.morphism.f0;
  if (!same_group(e->C0(), res->C0()))
    throw Error(ErrorKind::NoFactorization, "E is not a quadratic module over B");
  if (!(g.f0 == sigma) || g.source.get() != e.get() ||
      !same_group(g.target->C1(), pq.morphism.target->C1()))
    throw Error(ErrorKind::NoFactorization, "test morphism is not over sigma");
  std::vector<Elem> e1(e->C1()->order());
  for (Elem x = 0; x < e1.size(); ++x) {
    const Elem p = e->d1(x);
    const Elem m = g.f1(x);
    if (!pq.fiber.contains(p, m))
      throw Error(ErrorKind::NoFactorization,
                  detail::cat("(d1 x, g1 x) outside the fiber product at x = ", x), {x});
    e1[x] = pq.fiber.at(p, m);
  }
  std::optional<QuadraticMorphism> eps;
  try {
    eps = build_morphism(e, res, g.f2, GroupHom(e->C1(), res->C1(), std::move(e1)),
                         identity_hom(e->C0()));
  } catch (const Error& err) {
    throw Error(ErrorKind::NoFactorization, std::string("candidate factorization fails: ") + err.what(),
                err.witness());
  }
  Factorization out{*eps, 1, false};
  const bool small = e->C1()->order() <= max_order && e->C2()->order() <= max_order &&
                     res->C1()->order() <= max_order && res->C2()->order() <= max_order;
  if (small) {
    MorphismEnumerationOptions opts;
    opts.max_order = max_order;
    std::size_t matches = 0;
    for (const auto& cand : enumerate_quad_morphisms(e, res, identity_hom(e->C0()), opts)) {
      const auto c1 = compose(pq.morphism.f1, cand.f1);
      const auto c2 = compose(pq.morphism.f2, cand.f2);
      if (c1 == g.f1 && c2 == g.f2) {
        ++matches;
        if (!(cand.f1 == eps->f1 && cand.f2 == eps->f2))
          throw Error(ErrorKind::NonUnique, "a second factoring morphism exists");
      }
    }
    out.matching_candidates = matches;
    out.exhaustive = true;
    if (matches != 1)
      throw Error(ErrorKind::NoFactorization,
                  detail::cat(matches, " factoring morphisms found by enumeration"));
  }
  return out;
}

/// A morphism between two modules of a fixture list, over the identity of
/// the common base.
struct FixtureArrow {
  std::size_t source = 0;
  std::size_t target = 0;
  GroupHom f1;
  std::optional<GroupHom> f2;  // quadratic level only
};

struct FunctorReport {
  std::size_t identity_checks = 0;
  std::size_t composition_checks = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// lambda(f1) = (f1*, id_P) with f1*(p,m) = (p, f1 m), checked to preserve
/// identities and composition on every composable pair of arrows.
inline FunctorReport pullback_functor_check(const std::vector<Nil2Module>& fixtures,
                                            const std::vector<FixtureArrow>& arrows,
                                            const GroupHom& sigma) {
  FunctorReport rep;
  std::vector<PullbackNil2> pb;
  for (const auto& n : fixtures) pb.push_back(pullback_nil2(n, sigma));
  auto lift = [&](const FixtureArrow& a, const GroupHom& f1) {
    const auto& src = pb[a.source];
    const auto& dst = pb[a.target];
    std::vector<Elem> map(src.fiber.pairs.size());
    for (std::size_t i = 0; i < map.size(); ++i) {
      const auto [p, m] = src.fiber.pairs[i];
      map[i] = dst.fiber.at(p, f1(m));
    }
    return GroupHom(src.result.M(), dst.result.M(), std::move(map));
  };
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    FixtureArrow id{i, i, identity_hom(fixtures[i].M()), std::nullopt};
    ++rep.identity_checks;
    if (!(lift(id, id.f1) == identity_hom(pb[i].result.M())))
      rep.failures.push_back(detail::cat("identity not preserved on fixture ", i));
  }
  for (const auto& f : arrows)
    for (const auto& g : arrows) {
      if (f.target != g.source) continue;
      ++rep.composition_checks;
      FixtureArrow gf{f.source, g.target, compose(g.f1, f.f1), std::nullopt};
      const auto lhs = lift(gf, gf.f1);
      const auto rhs = compose(lift(g, g.f1), lift(f, f.f1));
      if (!(lhs == rhs))
        rep.failures.push_back(detail::cat("composition not preserved: ", f.source, " -> ",
                                           f.target, " -> ", g.target));
      if (nil2_morphism_violation(pb[f.source].result.pcm(), pb[g.target].result.pcm(), lhs,
                                  identity_hom(sigma.source())))
        rep.failures.push_back("lifted arrow is not a nil(2)-morphism");
    }
  return rep;
}

/// sigma^*(f2, f1, id) = (f2, f1*, id_B) on pulled-back quadratic modules.
inline FunctorReport pullback_functor_check(const std::vector<QuadPtr>& fixtures,
                                            const std::vector<FixtureArrow>& arrows,
                                            const GroupHom& sigma) {
  FunctorReport rep;
  std::vector<PullbackQuad> pb;
  for (const auto& q : fixtures) pb.push_back(pullback_quad(q, sigma));
  auto lift = [&](std::size_t s, std::size_t t, const GroupHom& f2, const GroupHom& f1) {
    std::vector<Elem> map(pb[s].fiber.pairs.size());
    for (std::size_t i = 0; i < map.size(); ++i) {
      const auto [p, m] = pb[s].fiber.pairs[i];
      map[i] = pb[t].fiber.at(p, f1(m));
    }
    return build_morphism(pb[s].result, pb[t].result, f2,
                          GroupHom(pb[s].result->C1(), pb[t].result->C1(), std::move(map)),
                          identity_hom(sigma.source()));
  };
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    ++rep.identity_checks;
    const auto l = lift(i, i, identity_hom(fixtures[i]->C2()), identity_hom(fixtures[i]->C1()));
    if (!(l.f1 == identity_hom(pb[i].result->C1())) || !(l.f2 == identity_hom(pb[i].result->C2())))
      rep.failures.push_back(detail::cat("identity not preserved on fixture ", i));
  }
  for (const auto& f : arrows)
    for (const auto& g : arrows) {
      if (f.target != g.source) continue;
      ++rep.composition_checks;
      try {
        const auto lhs = lift(f.source, g.target, compose(*g.f2, *f.f2), compose(g.f1, f.f1));
        const auto rhs = compose(lift(g.source, g.target, *g.f2, g.f1),
                                 lift(f.source, f.target, *f.f2, f.f1));
        if (!(lhs.f1 == rhs.f1) || !(lhs.f2 == rhs.f2))
          rep.failures.push_back(detail::cat("composition not preserved: ", f.source, " -> ",
                                             f.target, " -> ", g.target));
      } catch (const Error& e) {
        rep.failures.push_back(e.what());
      }
    }
  return rep;
}

}  // namespace quadmod
