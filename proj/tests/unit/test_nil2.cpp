#include <gtest/gtest.h>

#include "quadmod/nil2.hpp"
#include "support/fixtures.hpp"

using namespace quadmod;

namespace {

/// Direct evaluation of the classification from the definitions.
Nil2Class brute_classify(const PreCrossedModule& p) {
  const auto& m = *p.M();
  auto pf = [&](Elem x, Elem y) {
    return m.mul(m.mul(m.mul(m.inv(x), m.inv(y)), x), p.action()(y, p.boundary()(x)));
  };
  bool crossed = true;
  for (Elem x = 0; x < m.order(); ++x)
    for (Elem y = 0; y < m.order(); ++y) crossed = crossed && pf(x, y) == m.identity();
  if (crossed) return Nil2Class::Crossed;
  for (Elem x = 0; x < m.order(); ++x)
    for (Elem y = 0; y < m.order(); ++y)
      for (Elem z = 0; z < m.order(); ++z)
        if (pf(pf(x, y), z) != m.identity() || pf(x, pf(y, z)) != m.identity())
          return Nil2Class::NotNil2;
  return Nil2Class::Nil2NotCrossed;
}

}  // namespace

TEST(PreCrossed, Examples) {
  EXPECT_NO_THROW(conjugation_module(symmetric(3)));
  EXPECT_NO_THROW(fixtures::abelian_trivial(abelian_group({2, 2}), symmetric(3)));
  auto z2 = cyclic(2);
  EXPECT_NO_THROW(PreCrossedModule(identity_hom(z2), trivial_action(z2, z2)));
  // S3 with identity boundary but trivial action breaks equivariance
  auto s3 = symmetric(3);
  try {
    PreCrossedModule(identity_hom(s3), trivial_action(s3, s3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotEquivariant);
    EXPECT_EQ(e.witness().size(), 2u);
  }
}

TEST(Peiffer, Examples) {
  auto p = conjugation_module(dihedral(4));
  for (Elem x = 0; x < 8; ++x)
    for (Elem y = 0; y < 8; ++y) EXPECT_EQ(peiffer(p, x, y), p.M()->identity());
  auto z = fixtures::z4_inversion();
  for (Elem y = 0; y < 4; ++y) EXPECT_EQ(peiffer(z, 0, y), 0u);
  EXPECT_EQ(peiffer(z, 1, 1), 2u);
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(conjugation_module(symmetric(3))).kind, Nil2Class::Crossed);
  EXPECT_EQ(classify(fixtures::abelian_trivial(cyclic(6), cyclic(2))).kind, Nil2Class::Crossed);
  auto c = classify(fixtures::z4_inversion());
  EXPECT_EQ(c.kind, Nil2Class::Nil2NotCrossed);
  ASSERT_TRUE(c.peiffer_witness);
  auto bad = classify(fixtures::to_trivial(symmetric(3)));
  EXPECT_EQ(bad.kind, Nil2Class::NotNil2);
  ASSERT_TRUE(bad.triple_witness);
  auto z8 = classify(fixtures::z8_inversion());
  EXPECT_EQ(z8.kind, Nil2Class::NotNil2);
  EXPECT_EQ(z8.triple_bracket, "<x,<y,z>>");
  EXPECT_THROW(Nil2Module(fixtures::to_trivial(symmetric(3))), Error);
}

TEST(Classify, MinimalNonCrossedNil2HasOrderFour) {
  // no nil(2)-module with |M| <= 3 is non-crossed, over any small Q
  for (const auto& m : fixtures::small_groups()) {
    if (m.group->order() > 4) continue;
    bool found = false;
    for (const auto& q : fixtures::small_groups()) {
      if (q.group->order() > 8) continue;
      for (const auto& p : fixtures::precrossed_structures(m.group, q.group))
        found = found || classify(p).kind == Nil2Class::Nil2NotCrossed;
    }
    EXPECT_EQ(found, m.group->order() == 4) << m.name;
  }
}

TEST(Classify, AgreesWithBruteForceOnGeneratedCorpus) {
  std::size_t checked = 0;
  for (const auto& m : fixtures::small_groups())
    for (const auto& q : fixtures::small_groups()) {
      if (m.group->order() * q.group->order() > 32) continue;
      for (const auto& p : fixtures::precrossed_structures(m.group, q.group, 40)) {
        const auto c = classify(p);
        EXPECT_EQ(c.kind, brute_classify(p));
        const bool all_trivial = c.kind == Nil2Class::Crossed;
        bool peiffer_trivial = true;
        for (Elem x = 0; x < p.M()->order(); ++x)
          for (Elem y = 0; y < p.M()->order(); ++y)
            peiffer_trivial = peiffer_trivial && p.peiffer(x, y) == p.M()->identity();
        EXPECT_EQ(all_trivial, peiffer_trivial);
        ++checked;
      }
    }
  EXPECT_GT(checked, 100u);
}

TEST(QuadraticBase, Examples) {
  auto ab = quadratic_base(fixtures::abelian_trivial(cyclic(6), trivial_group()));
  EXPECT_EQ(ab.C.group->order(), 6u);
  auto s3 = quadratic_base(conjugation_module(symmetric(3)));
  EXPECT_EQ(s3.C.invariant_factors, (std::vector<std::int64_t>{2}));
  auto t = quadratic_base(conjugation_module(trivial_group()));
  EXPECT_EQ(t.C.group->order(), 1u);
  try {
    quadratic_base(fixtures::to_trivial(symmetric(3)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotNil2);
  }
}

TEST(QuadraticBase, Invariants) {
  for (const auto& f : fixtures::nil2_corpus()) {
    const auto& p = f.module.pcm();
    auto qb = quadratic_base(p);
    const auto& cm = qb.class_map;
    EXPECT_TRUE(cm.is_epi()) << f.name;
    for (Elem x = 0; x < p.M()->order(); ++x)
      for (Elem y = 0; y < p.M()->order(); ++y) {
        EXPECT_EQ(cm(p.peiffer(x, y)), qb.C.group->identity()) << f.name;
        EXPECT_EQ(cm(p.M()->commutator(x, y)), qb.C.group->identity()) << f.name;
      }
    for (Elem x = 0; x < p.M()->order(); ++x)
      for (Elem q = 0; q < p.Q()->order(); ++q)
        EXPECT_EQ(cm(p.action()(x, q)), qb.C0_action(cm(x), q)) << f.name;
    EXPECT_TRUE(std::includes(qb.kernel.elements.begin(), qb.kernel.elements.end(),
                              qb.peiffer_subgroup.elements.begin(),
                              qb.peiffer_subgroup.elements.end()));
  }
}

TEST(PeifferPairing, ExamplesAndBoundaryLaw) {
  for (const auto& f : fixtures::nil2_corpus()) {
    const auto& p = f.module.pcm();
    auto qb = quadratic_base(p);
    auto t = tensor_square(qb.C);
    auto w = peiffer_pairing(qb, t);
    if (f.module.is_crossed()) EXPECT_TRUE(w.is_trivial()) << f.name;
    const auto& q = *p.Q();
    for (Elem x = 0; x < p.M()->order(); ++x)
      for (Elem y = 0; y < p.M()->order(); ++y) {
        EXPECT_EQ(w(t(qb.class_map(x), qb.class_map(y))), p.peiffer(x, y));
        // right-action pre-crossed law forces Peiffer elements into ker d
        EXPECT_EQ(p.boundary()(p.peiffer(x, y)), q.identity());
      }
  }
  auto z = fixtures::z4_inversion();
  auto qb = quadratic_base(z);
  auto t = tensor_square(qb.C);
  EXPECT_EQ(t.product->order(), 2u);
  auto w = peiffer_pairing(qb, t);
  EXPECT_FALSE(w.is_trivial());
  EXPECT_EQ(w(t(1, 1)), 2u);
}
