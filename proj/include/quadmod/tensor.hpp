#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "quadmod/abelian.hpp"
#include "quadmod/catalog.hpp"

namespace quadmod {

/// C (x) C for a finite abelian C, realized as the product over ordered
/// pairs (i,j) of Z/gcd(d_i,d_j), pairs in lexicographic order and encoded
/// in mixed radix with the first pair fastest.
struct TensorSquare {
  AbelianDecomposition base;
  GroupPtr product;
  /// bilinear[x * |C| + y] = x (x) y
  std::vector<Elem> bilinear;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::int64_t> moduli;

  std::size_t base_order() const noexcept { return base.group->order(); }
  Elem operator()(Elem x, Elem y) const noexcept { return bilinear[x * base_order() + y]; }

  std::vector<std::int64_t> digits(Elem t) const {
    std::vector<std::int64_t> out(moduli.size());
    std::size_t r = t;
    for (std::size_t p = 0; p < moduli.size(); ++p) {
      out[p] = static_cast<std::int64_t>(r % static_cast<std::size_t>(moduli[p]));
      r /= static_cast<std::size_t>(moduli[p]);
    }
    return out;
  }

  Elem from_digits(const std::vector<std::int64_t>& d) const {
    std::size_t idx = 0, scale = 1;
    for (std::size_t p = 0; p < moduli.size(); ++p) {
      auto v = d[p] % moduli[p];
      if (v < 0) v += moduli[p];
      idx += scale * static_cast<std::size_t>(v);
      scale *= static_cast<std::size_t>(moduli[p]);
    }
    return static_cast<Elem>(idx);
  }
};

inline constexpr std::size_t default_tensor_cap = 1024;

inline std::size_t tensor_square_order(const std::vector<std::int64_t>& factors) {
  std::size_t n = 1;
  for (auto a : factors)
    for (auto b : factors) n *= static_cast<std::size_t>(std::gcd(a, b));
  return n;
}

inline TensorSquare tensor_square(const AbelianDecomposition& c,
                                  std::size_t max_order = default_tensor_cap) {
  const auto& d = c.invariant_factors;
  const std::size_t predicted = tensor_square_order(d);
  if (predicted > max_order)
    throw Error(ErrorKind::BoundExceeded,
                detail::cat("|C (x) C| = ", predicted, " exceeds the cap ", max_order),
                {static_cast<std::int64_t>(predicted)});
  TensorSquare t{c, nullptr, {}, {}, {}};
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j) {
      t.pairs.emplace_back(i, j);
      t.moduli.push_back(std::gcd(d[i], d[j]));
    }
  t.product = abelian_group(t.moduli);
  const std::size_t n = c.group->order();
  t.bilinear.resize(n * n);
  std::vector<std::int64_t> digits(t.moduli.size());
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      for (std::size_t p = 0; p < t.pairs.size(); ++p)
        digits[p] = c.coordinates[x][t.pairs[p].first] * c.coordinates[y][t.pairs[p].second];
      t.bilinear[x * n + y] = t.from_digits(digits);
    }
  return t;
}

inline TensorSquare tensor_square(const GroupPtr& c, std::size_t max_order = default_tensor_cap) {
  return tensor_square(abelian_invariants(c), max_order);
}

/// f (x) f : C (x) C -> C' (x) C' for a homomorphism f : C -> C'.
inline GroupHom tensor_map(const TensorSquare& src, const TensorSquare& dst, const GroupHom& f) {
  if (!same_group(f.source(), src.base.group) || !same_group(f.target(), dst.base.group))
    throw Error(ErrorKind::TypeMismatch, "tensor_map: hom does not match the tensor bases");
  const auto& T = *dst.product;
  std::vector<Elem> gen_images(src.pairs.size());
  for (std::size_t p = 0; p < src.pairs.size(); ++p) {
    const auto [i, j] = src.pairs[p];
    gen_images[p] = dst(f(src.base.generator_indices[i]), f(src.base.generator_indices[j]));
  }
  std::vector<Elem> map(src.product->order());
  for (Elem t = 0; t < map.size(); ++t) {
    const auto dg = src.digits(t);
    Elem v = T.identity();
    for (std::size_t p = 0; p < dg.size(); ++p) v = T.mul(v, T.pow(gen_images[p], dg[p]));
    map[t] = v;
  }
  const auto nc = src.base_order();
  for (Elem x = 0; x < nc; ++x)
    for (Elem y = 0; y < nc; ++y)
      if (map[src(x, y)] != dst(f(x), f(y)))
        throw Error(ErrorKind::NotWellDefined,
                    detail::cat("f(x) (x) f(y) mismatch at (x,y) = (", x, ",", y, ")"), {x, y});
  return GroupHom(GroupHom::Trusted{}, src.product, dst.product, std::move(map));
}

/// The diagonal action of Q on C (x) C induced by an action on C.
inline GroupAction tensor_action(const TensorSquare& t, const GroupAction& act) {
  if (!same_group(act.carrier(), t.base.group))
    throw Error(ErrorKind::TypeMismatch, "tensor_action: action is not on the tensor base");
  const auto nq = act.actor()->order();
  const auto nt = t.product->order();
  std::vector<Elem> table(nt * nq);
  for (Elem q = 0; q < nq; ++q) {
    std::vector<Elem> fq(t.base_order());
    for (Elem x = 0; x < fq.size(); ++x) fq[x] = act(x, q);
    const GroupHom hq(GroupHom::Trusted{}, t.base.group, t.base.group, std::move(fq));
    const auto tq = tensor_map(t, t, hq);
    for (Elem s = 0; s < nt; ++s) table[s * nq + q] = tq(s);
  }
  return GroupAction(GroupAction::Trusted{}, act.actor(), t.product, std::move(table));
}

}  // namespace quadmod
