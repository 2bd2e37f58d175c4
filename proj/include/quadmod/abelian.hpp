#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "quadmod/subgroup.hpp"

namespace quadmod {

/// Invariant factor decomposition of a finite abelian group.
struct AbelianDecomposition {
  GroupPtr group;
  /// d1 | d2 | ... | dk, all > 1.
  std::vector<std::int64_t> invariant_factors;
  /// generator_indices[i] has order invariant_factors[i].
  std::vector<Elem> generator_indices;
  /// coordinates[x][i] in [0, d_i).
  std::vector<std::vector<std::int64_t>> coordinates;

  std::size_t rank() const noexcept { return invariant_factors.size(); }

  /// Element with the given coordinates (reduced modulo the factors).
  Elem element(const std::vector<std::int64_t>& coords) const {
    Elem x = group->identity();
    for (std::size_t i = 0; i < rank(); ++i) {
      auto c = coords[i] % invariant_factors[i];
      if (c < 0) c += invariant_factors[i];
      x = group->mul(x, group->pow(generator_indices[i], c));
    }
    return x;
  }
};

/// Invariant factors by maximal-order peeling: repeatedly pick a coset of
/// maximal order in A/H and lift it to an element of the same order.
inline AbelianDecomposition abelian_invariants(const GroupPtr& g) {
  if (auto w = g->noncommuting_pair())
    throw Error(ErrorKind::NotAbelian,
                detail::cat("elements ", w->first, " and ", w->second, " do not commute"),
                {w->first, w->second});
  std::vector<Elem> gens;
  std::vector<std::int64_t> orders;
  std::vector<char> in_h(g->order(), 0);
  std::vector<Elem> h{g->identity()};
  in_h[g->identity()] = 1;
  while (h.size() < g->order()) {
    Elem best = 0;
    std::int64_t best_order = 0;
    for (Elem x = 0; x < g->order(); ++x) {
      if (in_h[x]) continue;
      std::int64_t r = 1;
      for (Elem y = x; !in_h[y]; y = g->mul(y, x)) ++r;
      if (r > best_order) {
        best_order = r;
        best = x;
      }
    }
    Elem lift = best;
    for (Elem k : h) {
      const Elem y = g->mul(best, k);
      if (static_cast<std::int64_t>(g->element_order(y)) == best_order) {
        lift = y;
        break;
      }
    }
    gens.push_back(lift);
    orders.push_back(best_order);
    h = generated_elements(*g, gens);
    std::fill(in_h.begin(), in_h.end(), 0);
    for (Elem x : h) in_h[x] = 1;
  }
  std::reverse(gens.begin(), gens.end());
  std::reverse(orders.begin(), orders.end());

  AbelianDecomposition d{g, orders, gens, std::vector<std::vector<std::int64_t>>(g->order())};
  std::vector<std::int64_t> c(orders.size(), 0);
  std::size_t filled = 0;
  while (true) {
    const Elem x = d.element(c);
    if (!d.coordinates[x].empty())
      throw Error(ErrorKind::InvalidInput, "abelian decomposition is not injective");
    d.coordinates[x] = c;
    ++filled;
    std::size_t i = 0;
    while (i < c.size() && ++c[i] == orders[i]) c[i++] = 0;
    if (i == c.size()) break;
  }
  if (filled != g->order())
    throw Error(ErrorKind::InvalidInput, "abelian decomposition does not cover the group");
  return d;
}

}  // namespace quadmod
