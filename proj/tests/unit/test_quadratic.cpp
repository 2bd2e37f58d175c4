#include <gtest/gtest.h>

#include "quadmod/quadratic.hpp"
#include "support/fixtures.hpp"

using namespace quadmod;

namespace {

QuadCandidate all_trivial_over(const GroupPtr& c0) {
  auto one = trivial_group();
  return QuadCandidate{trivial_hom(one, c0), identity_hom(one), trivial_action(c0, one),
                       trivial_action(c0, one), {0}};
}

/// C2 = S3 over trivial C1, C0 with omega trivial: only QM4 can fail.
QuadCandidate nonabelian_top() {
  auto one = trivial_group();
  auto s3 = symmetric(3);
  return QuadCandidate{identity_hom(one), trivial_hom(s3, one), trivial_action(one, one),
                       trivial_action(one, s3), {s3->identity()}};
}

}  // namespace

TEST(VerifyQuadratic, TrivialLevelsPass) {
  for (auto c0 : {trivial_group(), cyclic(3), symmetric(3)}) {
    auto rep = check_quadratic(all_trivial_over(c0));
    EXPECT_TRUE(rep.ok()) << summarize(rep);
    EXPECT_NO_THROW(verify_quadratic(all_trivial_over(c0)));
  }
}

TEST(VerifyQuadratic, NonabelianTopWithTrivialOmegaFailsQM4) {
  auto rep = check_quadratic(nonabelian_top());
  EXPECT_EQ(rep.axioms[0].status, AxiomStatus::Pass);
  EXPECT_EQ(rep.axioms[1].status, AxiomStatus::Pass);
  EXPECT_EQ(rep.axioms[2].status, AxiomStatus::Pass);
  EXPECT_EQ(rep.axioms[3].status, AxiomStatus::Fail);
  EXPECT_LE(rep.axioms[3].witnesses.size(), witness_cap);
  EXPECT_GT(rep.axioms[3].violations, witness_cap);  // 36 pairs, 18 noncommuting
  for (const auto& w : rep.axioms[3].witnesses) {
    auto s3 = symmetric(3);
    EXPECT_NE(s3->commutator(static_cast<Elem>(w.values[1]), static_cast<Elem>(w.values[0])),
              s3->identity());
  }
  try {
    verify_quadratic(nonabelian_top());
    FAIL();
  } catch (const AxiomFailureError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AxiomFailure);
    EXPECT_NE(std::string(e.what()).find("QM4"), std::string::npos);
  }
}

TEST(VerifyQuadratic, BrokenOmegaIsReported) {
  auto n = Nil2Module(fixtures::z4_inversion());
  auto q = from_nil2(n);
  auto c = q->candidate();
  c.omega.assign(c.omega.size(), c.C2()->identity());
  auto rep = check_quadratic(c);
  EXPECT_EQ(rep.axioms[1].status, AxiomStatus::Fail);  // d2 omega != w
  EXPECT_EQ(rep.axioms[1].witnesses.front().check, "d2 omega = w");
}

TEST(VerifyQuadratic, NotNil2FailsQM1AndSkipsRest) {
  auto p = fixtures::to_trivial(symmetric(3));
  auto one = trivial_group();
  QuadCandidate c{p.boundary(), trivial_hom(one, p.M()), p.action(), trivial_action(p.Q(), one),
                  {0}};
  auto rep = check_quadratic(c);
  EXPECT_EQ(rep.axioms[0].status, AxiomStatus::Fail);
  EXPECT_EQ(rep.axioms[3].status, AxiomStatus::Skipped);
}

TEST(FromNil2, CorpusPasses) {
  for (const auto& f : fixtures::nil2_corpus()) {
    QuadPtr q;
    ASSERT_NO_THROW(q = from_nil2(f.module)) << f.name;
    EXPECT_TRUE(same_group(q->C2(), q->tensor.product));
    EXPECT_EQ(q->d2.is_trivial(), f.module.is_crossed()) << f.name;
    EXPECT_TRUE(check_quadratic(q->candidate()).ok());
  }
  auto q = from_nil2(Nil2Module(conjugation_module(trivial_group())));
  EXPECT_EQ(q->C2()->order(), 1u);
}

TEST(FromNil2Complex, Examples) {
  auto n = Nil2Module(conjugation_module(symmetric(3)));
  auto one = trivial_group();
  EXPECT_NO_THROW(from_nil2_complex(trivial_hom(one, n.M()), trivial_action(n.Q(), one), n));
  auto z2 = cyclic(2);
  auto q = from_nil2_complex(trivial_hom(z2, n.M()), trivial_action(n.Q(), z2), n);
  EXPECT_TRUE(q->omega_trivial());
  auto s3 = symmetric(3);
  try {
    from_nil2_complex(trivial_hom(s3, n.M()), trivial_action(n.Q(), s3), n);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PreconditionFailure);
    EXPECT_NE(std::string(e.what()).find("(ii)"), std::string::npos);
  }
  // d1 d2 != 1
  auto z3 = cyclic(3);
  std::vector<Elem> into;
  for (Elem x = 0; x < 6; ++x)
    if (s3->element_order(x) == 3) into.push_back(x);
  auto d2 = build_hom(z3, n.M(), {n.M()->identity(), into[0], into[1]});
  if (d2.map()[2] != n.M()->mul(into[0], into[0]))
    d2 = build_hom(z3, n.M(), {n.M()->identity(), into[1], into[0]});
  try {
    from_nil2_complex(d2, trivial_action(n.Q(), z3), n);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PreconditionFailure);
  }
}

TEST(FromNil2Complex, NonCrossedBaseFailsQM2) {
  auto n = Nil2Module(fixtures::z4_inversion());
  auto one = trivial_group();
  try {
    from_nil2_complex(trivial_hom(one, n.M()), trivial_action(n.Q(), one), n);
    FAIL();
  } catch (const AxiomFailureError& e) {
    EXPECT_EQ(e.report().axioms[1].status, AxiomStatus::Fail);
  }
}

TEST(ToCrossedComplex, RoundTripAndGate) {
  auto n = Nil2Module(conjugation_module(symmetric(3)));
  auto z2 = cyclic(2);
  auto q = from_nil2_complex(trivial_hom(z2, n.M()), trivial_action(n.Q(), z2), n);
  auto cc = to_crossed_complex(*q);
  EXPECT_EQ(cc.d1, n.boundary());
  EXPECT_EQ(cc.d2, trivial_hom(z2, n.M()));
  EXPECT_EQ(cc.act2, trivial_action(n.Q(), z2));
  // from_nil2 on a crossed module: omega = id on C (x) C, trivial only if C (x) C is
  auto s3q = from_nil2(n);  // C = Z2, C (x) C = Z2
  try {
    to_crossed_complex(*s3q);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OmegaNotTrivial);
  }
  auto perfect = from_nil2(Nil2Module(conjugation_module(trivial_group())));
  EXPECT_NO_THROW(to_crossed_complex(*perfect));
  EXPECT_NO_THROW(to_crossed_complex(*verify_quadratic(all_trivial_over(symmetric(3)))));
}

TEST(TrivialOmega, DerivedProperties) {
  std::size_t seen = 0;
  for (const auto& f : fixtures::nil2_corpus()) {
    if (!f.module.is_crossed()) continue;
    // nil(2)-complexes with C2 = Z2 and a trivial action
    auto z2 = cyclic(2);
    auto q = from_nil2_complex(trivial_hom(z2, f.module.M()), trivial_action(f.module.Q(), z2),
                               f.module);
    ASSERT_TRUE(q->omega_trivial());
    EXPECT_TRUE(q->C2()->is_abelian());
    EXPECT_EQ(classify(q->nil2_part()).kind, Nil2Class::Crossed);
    for (Elem a = 0; a < q->C2()->order(); ++a)
      for (Elem x = 0; x < q->C1()->order(); ++x) EXPECT_EQ(q->act2(a, q->d1(x)), a);
    ++seen;
  }
  EXPECT_GT(seen, 5u);
}

TEST(Morphisms, IdentityCompositionAndEnumeration) {
  auto x = from_nil2(Nil2Module(fixtures::z4_inversion()));
  auto id = identity_morphism(x);
  auto again = compose(id, id);
  EXPECT_EQ(again.f1, id.f1);
  auto all = enumerate_quad_morphisms(x, x);
  EXPECT_FALSE(all.empty());
  std::size_t composed = 0;
  for (const auto& f : all)
    for (const auto& g : all) {
      auto h = compose(g, f);
      EXPECT_FALSE(morphism_violation(*x, *x, h.f2, h.f1, h.f0).has_value());
      ++composed;
    }
  EXPECT_EQ(composed, all.size() * all.size());
  // morphisms into the all-trivial module over the same base: exactly one per f0
  auto t = verify_quadratic(all_trivial_over(trivial_group()));
  EXPECT_EQ(enumerate_quad_morphisms(x, t).size(), 1u);
}

TEST(Morphisms, RejectsNonMorphism) {
  auto x = from_nil2(Nil2Module(fixtures::z4_inversion()));
  auto z4 = x->C1();
  // f1 = identity with f0 trivial breaks the boundary square
  EXPECT_THROW(build_morphism(x, x, identity_hom(x->C2()), identity_hom(z4),
                              trivial_hom(x->C0(), x->C0())),
               Error);
}
