#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "quadmod/hom.hpp"

namespace quadmod {

/// A subgroup recorded as a sorted element list of its parent.
struct Subgroup {
  GroupPtr parent;
  std::vector<Elem> elements;

  std::size_t order() const noexcept { return elements.size(); }
  bool contains(Elem x) const { return std::binary_search(elements.begin(), elements.end(), x); }
  bool is_trivial() const noexcept { return elements.size() == 1; }
  bool is_whole() const noexcept { return elements.size() == parent->order(); }

  std::vector<char> mask() const {
    std::vector<char> out(parent->order(), 0);
    for (Elem x : elements) out[x] = 1;
    return out;
  }

  /// The subgroup as a group in its own right, indexed by position in
  /// `elements`, together with its inclusion into the parent.
  std::pair<GroupPtr, GroupHom> as_group() const {
    const std::size_t n = elements.size();
    std::vector<Elem> pos(parent->order(), 0);
    for (std::size_t i = 0; i < n; ++i) pos[elements[i]] = static_cast<Elem>(i);
    std::vector<Elem> table(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        table[i * n + j] = pos[parent->mul(elements[i], elements[j])];
    std::vector<std::string> labels;
    if (!parent->labels().empty())
      for (Elem x : elements) labels.push_back(parent->label(x));
    auto sub = make_trusted_group(n, std::move(table), std::move(labels));
    GroupHom incl(GroupHom::Trusted{}, sub, parent, elements);
    return {sub, std::move(incl)};
  }
};

inline Subgroup whole_group(const GroupPtr& g) {
  Subgroup s{g, {}};
  for (Elem x = 0; x < g->order(); ++x) s.elements.push_back(x);
  return s;
}

inline Subgroup trivial_subgroup(const GroupPtr& g) { return Subgroup{g, {g->identity()}}; }

inline Subgroup generated_subgroup(const GroupPtr& g, std::span<const Elem> gens) {
  return Subgroup{g, generated_elements(*g, gens)};
}

inline Subgroup kernel_of(const GroupHom& f) { return Subgroup{f.source(), f.kernel()}; }
inline Subgroup image_of(const GroupHom& f) { return Subgroup{f.target(), f.image()}; }

/// Smallest normal subgroup containing `seeds`: saturate under conjugation
/// by every element and under multiplication.
inline Subgroup normal_closure(const GroupPtr& g, std::span<const Elem> seeds) {
  std::vector<char> in(g->order(), 0);
  std::vector<Elem> elems{g->identity()};
  in[g->identity()] = 1;
  std::vector<Elem> gens;
  auto add_gen = [&](Elem s) {
    if (in[s]) return;
    gens.push_back(s);
    // extend the closure by right multiplication with the new generator
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (Elem t : gens) {
        const Elem x = g->mul(elems[i], t);
        if (!in[x]) {
          in[x] = 1;
          elems.push_back(x);
        }
      }
  };
  for (Elem s : seeds) {
    if (s >= g->order()) throw Error(ErrorKind::InvalidInput, "seed outside group");
    add_gen(s);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    const auto snapshot = gens;
    for (Elem s : snapshot)
      for (Elem c = 0; c < g->order(); ++c) {
        const Elem x = g->conj(s, c);
        if (!in[x]) {
          add_gen(x);
          grew = true;
        }
      }
  }
  std::sort(elems.begin(), elems.end());
  return Subgroup{g, std::move(elems)};
}

/// First (n, g) in index order with g^{-1} n g outside the subgroup.
inline std::optional<std::pair<Elem, Elem>> normality_witness(const Subgroup& n) {
  const auto& g = n.parent;
  const auto m = n.mask();
  for (Elem x : n.elements)
    for (Elem c = 0; c < g->order(); ++c)
      if (!m[g->conj(x, c)]) return std::pair{x, c};
  return std::nullopt;
}

inline bool is_normal(const Subgroup& n) { return !normality_witness(n).has_value(); }

/// Invariance of a subgroup under a group action on its parent.
inline bool is_invariant(const Subgroup& n, const GroupAction& act) {
  const auto m = n.mask();
  for (Elem x : n.elements)
    for (Elem q = 0; q < act.actor()->order(); ++q)
      if (!m[act(x, q)]) return false;
  return true;
}

struct Quotient {
  GroupPtr group;
  GroupHom projection;
  /// Minimal element index of each coset, in coset order.
  std::vector<Elem> representatives;
};

/// G/N with cosets ordered by their minimal element index.
inline Quotient quotient(const Subgroup& n) {
  const auto& g = n.parent;
  if (auto w = normality_witness(n))
    throw Error(ErrorKind::NotNormal,
                detail::cat("conjugate of ", w->first, " by ", w->second, " leaves the subgroup"),
                {w->first, w->second});
  constexpr Elem unset = static_cast<Elem>(-1);
  std::vector<Elem> coset(g->order(), unset);
  std::vector<Elem> reps;
  for (Elem x = 0; x < g->order(); ++x) {
    if (coset[x] != unset) continue;
    const auto idx = static_cast<Elem>(reps.size());
    reps.push_back(x);
    for (Elem k : n.elements) coset[g->mul(x, k)] = idx;
  }
  const std::size_t r = reps.size();
  std::vector<Elem> table(r * r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) table[i * r + j] = coset[g->mul(reps[i], reps[j])];
  auto q = make_trusted_group(r, std::move(table));
  GroupHom proj(GroupHom::Trusted{}, g, q, std::move(coset));
  return Quotient{q, std::move(proj), std::move(reps)};
}

/// Action of the actor on G/N induced by an action on G that preserves N.
inline GroupAction quotient_action(const GroupAction& act, const Quotient& quo) {
  const auto nq = act.actor()->order();
  const auto r = quo.group->order();
  std::vector<Elem> table(r * nq);
  for (Elem c = 0; c < r; ++c)
    for (Elem q = 0; q < nq; ++q) table[c * nq + q] = quo.projection(act(quo.representatives[c], q));
  // validated: a non-invariant N shows up as a broken action law or as
  // dependence on the representative, which the check below catches
  for (Elem m = 0; m < act.carrier()->order(); ++m)
    for (Elem q = 0; q < nq; ++q)
      if (quo.projection(act(m, q)) != table[quo.projection(m) * nq + q])
        throw Error(ErrorKind::NotWellDefined,
                    detail::cat("action does not descend to the quotient at (m,q) = (", m, ",", q,
                                ")"),
                    {m, q});
  return GroupAction(GroupAction::Trusted{}, act.actor(), quo.group, std::move(table));
}

struct Displacement {
  Subgroup subgroup;
  /// True when the plain subgroup generated by the displacements was not
  /// normal and the normal closure had to add elements.
  bool closure_added = false;
};

/// [K,L]: normal closure in L of all l^{-1} l^k, k in K.
inline Displacement displacement_subgroup(const GroupAction& act, std::span<const Elem> k_elems) {
  const auto& l = act.carrier();
  std::vector<char> seen(l->order(), 0);
  std::vector<Elem> seeds;
  for (Elem k : k_elems)
    for (Elem x = 0; x < l->order(); ++x) {
      const Elem d = l->mul(l->inv(x), act(x, k));
      if (!seen[d]) {
        seen[d] = 1;
        seeds.push_back(d);
      }
    }
  std::sort(seeds.begin(), seeds.end());
  const auto plain = generated_elements(*l, seeds);
  auto closed = normal_closure(l, seeds);
  const bool added = closed.elements.size() != plain.size();
  return Displacement{std::move(closed), added};
}

}  // namespace quadmod
