#include <gtest/gtest.h>

#include <numeric>

#include "quadmod/tensor.hpp"
#include "support/oracles.hpp"

using namespace quadmod;

namespace {

std::vector<GroupPtr> abelian_targets(std::int64_t max_order) {
  std::vector<GroupPtr> out;
  for (std::int64_t n = 1; n <= max_order; ++n)
    for (const auto& t : oracle::abelian_types(n)) out.push_back(abelian_group(t));
  return out;
}

/// Factoring hom T -> A through the canonical generators, or nullopt if the
/// generator images violate the cyclic orders.
std::optional<std::vector<Elem>> factor(const TensorSquare& t, const FiniteGroup& a,
                                        const std::vector<Elem>& bilinear) {
  const auto nc = t.base_order();
  std::vector<Elem> gen(t.pairs.size());
  for (std::size_t p = 0; p < t.pairs.size(); ++p) {
    const auto [i, j] = t.pairs[p];
    gen[p] = bilinear[t.base.generator_indices[i] * nc + t.base.generator_indices[j]];
    if (t.moduli[p] % static_cast<std::int64_t>(a.element_order(gen[p])) != 0) return std::nullopt;
  }
  std::vector<Elem> h(t.product->order());
  for (Elem s = 0; s < h.size(); ++s) {
    const auto d = t.digits(s);
    Elem v = a.identity();
    for (std::size_t p = 0; p < d.size(); ++p) v = a.mul(v, a.pow(gen[p], d[p]));
    h[s] = v;
  }
  return h;
}

}  // namespace

TEST(TensorSquare, Examples) {
  auto trivial = tensor_square(trivial_group());
  EXPECT_EQ(trivial.product->order(), 1u);
  auto z2 = tensor_square(cyclic(2));
  EXPECT_EQ(z2.product->order(), 2u);
  EXPECT_NE(z2(1, 1), z2.product->identity());
  auto z6 = tensor_square(abelian_group({2, 3}));
  EXPECT_EQ(z6.product->order(), 6u);
  EXPECT_EQ(z6.base.invariant_factors, (std::vector<std::int64_t>{6}));
}

TEST(TensorSquare, OrderBilinearityGeneration) {
  for (std::int64_t n = 1; n <= 16; ++n)
    for (const auto& type : oracle::abelian_types(n)) {
      auto c = abelian_group(type);
      std::size_t predicted = 1;
      for (auto a : type)
        for (auto b : type) predicted *= static_cast<std::size_t>(std::gcd(a, b));
      if (predicted > default_tensor_cap) {
        EXPECT_THROW(tensor_square(c), Error);
        continue;
      }
      auto t = tensor_square(c);
      EXPECT_EQ(t.product->order(), predicted);
      const auto& T = *t.product;
      for (Elem x = 0; x < c->order(); ++x)
        for (Elem x2 = 0; x2 < c->order(); ++x2)
          for (Elem y = 0; y < c->order(); ++y) {
            EXPECT_EQ(t(c->mul(x, x2), y), T.mul(t(x, y), t(x2, y)));
            EXPECT_EQ(t(y, c->mul(x, x2)), T.mul(t(y, x), t(y, x2)));
          }
      std::vector<Elem> img(t.bilinear.begin(), t.bilinear.end());
      EXPECT_EQ(generated_elements(T, img).size(), T.order());
    }
}

TEST(TensorSquare, UniversalPropertySmall) {
  // every bilinear map C x C -> A factors uniquely through C (x) C
  for (std::int64_t n = 1; n <= 6; ++n)
    for (const auto& type : oracle::abelian_types(n)) {
      auto c = abelian_group(type);
      auto t = tensor_square(c);
      for (const auto& a : abelian_targets(8)) {
        auto bil = oracle::bilinear_maps(*c, *a);
        auto homs = enumerate_homs(t.product, a, {64, 64, {}});
        EXPECT_EQ(bil.size(), homs.size());
        std::set<std::vector<Elem>> composites;
        for (const auto& h : homs) {
          std::vector<Elem> comp(t.bilinear.size());
          for (std::size_t k = 0; k < comp.size(); ++k) comp[k] = h(t.bilinear[k]);
          composites.insert(comp);
        }
        EXPECT_EQ(composites.size(), homs.size());
        EXPECT_EQ(composites, std::set<std::vector<Elem>>(bil.begin(), bil.end()));
        for (const auto& b : bil) {
          auto h = factor(t, *a, b);
          ASSERT_TRUE(h.has_value());
          for (std::size_t k = 0; k < b.size(); ++k) EXPECT_EQ((*h)[t.bilinear[k]], b[k]);
        }
      }
    }
}

TEST(TensorSquare, CapAndMaps) {
  EXPECT_THROW(tensor_square(abelian_group({2, 2, 2, 2})), Error);
  auto c = abelian_group({2, 4});
  auto t = tensor_square(c);
  for (const auto& f : enumerate_homs(c, c)) {
    auto tf = tensor_map(t, t, f);
    EXPECT_NO_THROW(GroupHom(tf.source(), tf.target(), tf.map()));
    for (Elem x = 0; x < c->order(); ++x)
      for (Elem y = 0; y < c->order(); ++y) EXPECT_EQ(tf(t(x, y)), t(f(x), f(y)));
  }
}
