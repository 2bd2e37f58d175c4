#include <gtest/gtest.h>

#include "quadmod/induced.hpp"
#include "support/fixtures.hpp"

using namespace quadmod;

namespace {

std::vector<GroupHom> epis_from(const GroupPtr& q) {
  std::vector<GroupHom> out;
  for (const auto& t : fixtures::small_groups()) {
    if (t.group->order() > q->order() || q->order() % t.group->order() != 0) continue;
    for (auto& f : enumerate_homs(q, t.group, {64, 64, {}}))
      if (f.is_epi()) {
        out.push_back(std::move(f));
        break;
      }
  }
  return out;
}

GroupHom first_mono(const GroupPtr& b, const GroupPtr& c) {
  for (auto& f : enumerate_homs(b, c, {64, 64, {}}))
    if (f.is_mono()) return f;
  throw std::runtime_error("no mono");
}

}  // namespace

TEST(InducedNil2, EpiMatchesPresentation) {
  std::size_t pairs = 0;
  for (const auto& fx : fixtures::nil2_corpus()) {
    const auto& n = fx.module;
    if (n.M()->order() * n.Q()->order() > 24) continue;
    for (const auto& f : epis_from(n.Q())) {
      auto ip = induced_presentation(n, f);
      auto pg = enumerate_presentation_quotient(ip);
      ASSERT_EQ(pg.verdict, EnumerationVerdict::Finite) << fx.name;
      auto presented = presented_precrossed(ip, pg);
      auto ind = induce_nil2_epi(n, f);
      EXPECT_EQ(pg.group->order(), ind.result.M()->order()) << fx.name;
      EXPECT_TRUE(find_precrossed_isomorphism(presented, ind.result.pcm()).has_value()) << fx.name;
      ++pairs;
    }
  }
  EXPECT_GE(pairs, 20u);
}

TEST(InducedNil2, Examples) {
  auto n = Nil2Module(conjugation_module(symmetric(3)));
  auto id = induce_nil2_epi(n, identity_hom(n.Q()));
  EXPECT_EQ(id.result.M()->order(), 6u);
  EXPECT_TRUE(id.theta.is_iso());

  // along S3 ->> 1 the result is M/[M,M] = Z2 with trivial action
  auto one = trivial_group();
  auto ab = induce_nil2_epi(n, trivial_hom(n.Q(), one));
  EXPECT_EQ(ab.result.M()->order(), 2u);
  EXPECT_TRUE(ab.result.action().is_trivial());

  auto mono = first_mono(cyclic(2), n.Q());
  try {
    induce_nil2_epi(Nil2Module(conjugation_module(cyclic(2))), mono);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotEpimorphism);
    EXPECT_EQ(e.witness().size(), 1u);
  }
}

TEST(InducedNil2, PresentationDump) {
  auto n = Nil2Module(fixtures::z4_inversion());
  auto ip = induced_presentation(n, trivial_hom(n.Q(), trivial_group()));
  const auto text = dump_presentation(ip.presentation);
  EXPECT_NE(text.find("family S1"), std::string::npos);
  EXPECT_NE(text.find("family S2"), std::string::npos);
  EXPECT_EQ(ip.presentation.generator_count(), 4u);
  // Z4 / [Z2, Z4] = Z4 / <2>
  EXPECT_EQ(enumerate_presentation_quotient(ip).group->order(), 2u);
}

TEST(DescendAction, RejectsActionNotTrivialOnKernel) {
  auto n = fixtures::z4_inversion();
  EXPECT_THROW(detail::descend_action(n.action(), trivial_hom(n.Q(), trivial_group())), Error);
  auto ok = detail::descend_action(n.action(), identity_hom(n.Q()));
  EXPECT_EQ(ok(1, 1), 3u);
}

TEST(InducedQuad, EpiVerifiesAndTopMatchesPresentation) {
  std::size_t checked = 0;
  for (const auto& fx : fixtures::nil2_corpus()) {
    auto q = from_nil2(fx.module);
    if (q->C1()->order() * q->C0()->order() > 16 || q->C2()->order() > 16) continue;
    for (const auto& f : epis_from(q->C0())) {
      auto ip = induced_presentation_top(*q, f);
      auto pg = enumerate_presentation_quotient(ip);
      ASSERT_EQ(pg.verdict, EnumerationVerdict::Finite);
      auto kl = displacement_subgroup(q->act2, f.kernel()).subgroup;
      EXPECT_EQ(pg.group->order() * kl.order(), q->C2()->order()) << fx.name;
      try {
        auto ind = induce_quad_epi(q, f);
        EXPECT_TRUE(check_quadratic(ind.result->candidate()).ok()) << fx.name;
        EXPECT_EQ(ind.result->C1()->order() * ind.middle.subgroup.order(), q->C1()->order());
        EXPECT_EQ(ind.result->C2()->order(), pg.group->order());
      } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotWellDefined) << fx.name;
      }
      auto closed = induce_quad_epi(q, f, default_tensor_cap, EpiTopLevel::OmegaClosed);
      EXPECT_TRUE(check_quadratic(closed.result->candidate()).ok()) << fx.name;
      ++checked;
    }
  }
  EXPECT_GE(checked, 10u);
}

TEST(InducedQuad, OmegaObstruction) {
  // Z4 over Z2 by inversion, trivial boundary: K = Z2 fixes C (x) C = Z4 but
  // C' = Z4/[K,M] = Z2, so L/[K,L] = Z4 cannot receive omega'
  PreCrossedModule p(trivial_hom(cyclic(4), cyclic(2)),
                     GroupAction(cyclic(2), cyclic(4), {0, 0, 1, 3, 2, 2, 3, 1}));
  auto q = from_nil2(Nil2Module(p));
  auto phi = trivial_hom(q->C0(), trivial_group());
  try {
    induce_quad_epi(q, phi);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotWellDefined);
  }
  auto closed = induce_quad_epi(q, phi, default_tensor_cap, EpiTopLevel::OmegaClosed);
  EXPECT_EQ(closed.result->C1()->order(), 2u);
  EXPECT_EQ(closed.result->C2()->order(), 2u);
}

TEST(InducedQuad, UniversalProperty) {
  std::size_t confirmed = 0;
  for (const auto& fx : fixtures::nil2_corpus()) {
    if (fx.module.M()->order() > 8 || fx.module.Q()->order() > 8) continue;
    auto q = from_nil2(fx.module);
    if (q->C2()->order() > 8) continue;
    for (const auto& f : epis_from(q->C0())) {
      auto ind = induce_quad_epi(q, f, default_tensor_cap, EpiTopLevel::OmegaClosed);
      const auto& qq = f.target();
      std::vector<QuadPtr> targets{ind.result, trivial_quadratic(qq),
                                   from_nil2(Nil2Module(conjugation_module(qq)))};
      for (const auto& y : targets)
        for (const auto& g : enumerate_quad_morphisms(q, y, f)) {
          auto fz = induced_universal_check(ind, y, g);
          EXPECT_EQ(compose(fz.morphism.f1, ind.unit.f1), g.f1);
          EXPECT_EQ(compose(fz.morphism.f2, ind.unit.f2), g.f2);
          EXPECT_TRUE(fz.exhaustive);
          EXPECT_EQ(fz.matching_candidates, 1u);
          ++confirmed;
        }
    }
  }
  EXPECT_GE(confirmed, 20u);
}

TEST(InducedQuad, Functoriality) {
  auto s3 = symmetric(3);
  auto one = trivial_group();
  auto phi = trivial_hom(s3, one);
  std::vector<QuadPtr> fx{from_nil2(Nil2Module(conjugation_module(s3))),
                          from_nil2(Nil2Module(fixtures::abelian_trivial(cyclic(2), s3))),
                          trivial_quadratic(s3)};
  std::vector<InducedQuadEpi> ind;
  for (const auto& x : fx) ind.push_back(induce_quad_epi(x, phi));
  auto push = [&](std::size_t i, std::size_t j, const QuadraticMorphism& a) {
    return induced_universal_check(ind[i], ind[j].result, compose(ind[j].unit, a)).morphism;
  };
  for (std::size_t i = 0; i < fx.size(); ++i) {
    auto idm = push(i, i, build_morphism(fx[i], fx[i], identity_hom(fx[i]->C2()),
                                         identity_hom(fx[i]->C1()), identity_hom(s3)));
    EXPECT_EQ(idm.f1, identity_hom(ind[i].result->C1()));
    EXPECT_EQ(idm.f2, identity_hom(ind[i].result->C2()));
  }
  std::size_t comps = 0;
  for (std::size_t i = 0; i < fx.size(); ++i)
    for (std::size_t j = 0; j < fx.size(); ++j)
      for (std::size_t k = 0; k < fx.size(); ++k)
        for (const auto& a : enumerate_quad_morphisms(fx[i], fx[j], identity_hom(s3)))
          for (const auto& b : enumerate_quad_morphisms(fx[j], fx[k], identity_hom(s3))) {
            auto lhs = push(i, k, compose(b, a));
            auto rhs = compose(push(j, k, b), push(i, j, a));
            EXPECT_EQ(lhs.f1, rhs.f1);
            EXPECT_EQ(lhs.f2, rhs.f2);
            ++comps;
          }
  EXPECT_GT(comps, 5u);
}

TEST(InducedQuad, GeneralFactorsThroughImage) {
  auto q = from_nil2(Nil2Module(conjugation_module(symmetric(3))));
  // S3 -> D8 with image of order 2: epi onto Z2 then a mono into D8
  std::optional<GroupHom> phi;
  for (auto& h : enumerate_homs(q->C0(), dihedral(4)))
    if (h.image().size() == 2) {
      phi = h;
      break;
    }
  ASSERT_TRUE(phi);
  auto g = induce_quad_general(q, *phi, 200, 9);
  EXPECT_EQ(g.pi.target()->order(), 2u);
  EXPECT_TRUE(g.iota.is_mono());
  EXPECT_EQ(compose(g.iota, g.pi), *phi);
  EXPECT_EQ(g.mono.transversal().size(), 4u);
  EXPECT_TRUE(g.laws.ok());

  auto epi = induce_quad_general(q, identity_hom(q->C0()), 50, 1);
  EXPECT_EQ(epi.mono.transversal().size(), 1u);
  EXPECT_EQ(epi.epi.result->C1()->order(), q->C1()->order());
}

TEST(Cokernel, IdentityAndTrivialSource) {
  auto y = from_nil2(Nil2Module(conjugation_module(symmetric(3))));
  auto idm = build_morphism(y, y, identity_hom(y->C2()), identity_hom(y->C1()),
                            identity_hom(y->C0()));
  auto c = cokernel(idm);
  EXPECT_TRUE(c.result->C0()->is_trivial());
  EXPECT_TRUE(c.result->C1()->is_trivial());
  EXPECT_TRUE(c.result->C2()->is_trivial());

  auto one = trivial_group();
  auto x = trivial_quadratic(one);
  auto m = build_morphism(x, y, trivial_hom(one, y->C2()), trivial_hom(one, y->C1()),
                          trivial_hom(one, y->C0()));
  auto c2 = cokernel(m);
  EXPECT_EQ(c2.result->C0()->order(), y->C0()->order());
  EXPECT_EQ(c2.result->C1()->order(), y->C1()->order());
  EXPECT_EQ(c2.result->C2()->order(), y->C2()->order());
}

TEST(Cokernel, KillsTheImage) {
  std::size_t built = 0;
  for (const auto& fx : fixtures::nil2_corpus()) {
    if (fx.module.M()->order() > 8 || fx.module.Q()->order() > 8) continue;
    auto y = from_nil2(fx.module);
    if (y->C2()->order() > 8) continue;
    for (const auto& sub : {cyclic(2), trivial_group()}) {
      auto x = from_nil2(Nil2Module(conjugation_module(sub)));
      for (const auto& f0 : enumerate_homs(sub, y->C0()))
        for (const auto& m : enumerate_quad_morphisms(x, y, f0)) {
          auto c = cokernel(m);
          EXPECT_TRUE(compose(c.projection, m.f0).is_trivial());
          if (!c.ok()) {
            EXPECT_EQ(c.failure->kind(), ErrorKind::NotWellDefined) << fx.name;
            continue;
          }
          EXPECT_TRUE(check_quadratic(c.result->candidate()).ok());
          EXPECT_TRUE(compose(c.from_target->f1, m.f1).is_trivial());
          EXPECT_TRUE(compose(c.from_target->f2, m.f2).is_trivial());
          EXPECT_TRUE(c.from_target->f1.is_epi());
          ++built;
        }
    }
  }
  EXPECT_GT(built, 20u);
}

TEST(Adjunction, IsomorphismsAndTrivialSource) {
  std::size_t compared = 0;
  for (const auto& fx : fixtures::nil2_corpus()) {
    if (fx.module.M()->order() > 8 || fx.module.Q()->order() > 8) continue;
    auto x = from_nil2(fx.module);
    if (x->C2()->order() > 8) continue;
    const auto& b = x->C0();
    std::vector<QuadPtr> ys{x, trivial_quadratic(b), from_nil2(Nil2Module(conjugation_module(b)))};
    for (const auto& sigma : enumerate_homs(b, b)) {
      if (!sigma.is_iso()) continue;
      for (const auto& y : ys) {
        auto r = adjunction_count(sigma, x, y);
        EXPECT_EQ(r.induced_side, r.pullback_side) << fx.name;
        EXPECT_EQ(r.regime, "isomorphism");
        ++compared;
      }
    }
  }
  EXPECT_GE(compared, 10u);

  auto s3 = symmetric(3);
  auto z2 = cyclic(2);
  auto sigma = first_mono(z2, s3);
  auto r = adjunction_count(sigma, trivial_quadratic(z2),
                            from_nil2(Nil2Module(conjugation_module(s3))));
  EXPECT_EQ(r.regime, "trivial source");
  EXPECT_EQ(r.induced_side, r.pullback_side);
  try {
    adjunction_count(sigma, from_nil2(Nil2Module(conjugation_module(z2))), trivial_quadratic(s3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotComputable);
  }
}

TEST(PushoutRelators, CorrectedFormsVanishOnModules) {
  bool literal_differs = false;
  for (const auto& fx : fixtures::nil2_corpus()) {
    auto q = from_nil2(fx.module);
    if (q->C2()->order() > 16) continue;
    QuadCandidate c{q->d1, q->d2, q->act1, q->act2, q->omega.map()};
    for (const auto& r : pushout_relator_report(c)) {
      EXPECT_GT(r.instances, 0u);
      if (r.corrected)
        EXPECT_EQ(r.nontrivial, 0u) << fx.name << " " << r.name;
      else if (r.nontrivial)
        literal_differs = true;
    }
  }
  EXPECT_TRUE(literal_differs);

  // S3 on top with trivial omega: the commutator family spans A3
  auto s3 = symmetric(3);
  auto one = trivial_group();
  QuadCandidate bad{identity_hom(one), trivial_hom(s3, one), trivial_action(one, one),
                    trivial_action(one, s3), {0}};
  auto rep = pushout_relator_report(bad);
  EXPECT_EQ(rep[1].name, "B1");
  EXPECT_TRUE(rep[1].corrected);
  EXPECT_EQ(rep[1].closure_order, 3u);
}
