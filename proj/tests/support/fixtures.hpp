#pragma once

#include <string>
#include <vector>

#include "quadmod/catalog.hpp"
#include "quadmod/nil2.hpp"

namespace fixtures {

using namespace quadmod;

struct NamedGroup {
  std::string name;
  GroupPtr group;
};

/// Groups used to generate pre-crossed modules. Kept to ones whose
/// automorphism groups stay small.
inline std::vector<NamedGroup> small_groups() {
  return {{"1", trivial_group()},
          {"Z2", cyclic(2)},
          {"Z3", cyclic(3)},
          {"Z4", cyclic(4)},
          {"Z2xZ2", abelian_group({2, 2})},
          {"Z5", cyclic(5)},
          {"Z6", cyclic(6)},
          {"S3", symmetric(3)},
          {"Z8", cyclic(8)},
          {"Z2xZ4", abelian_group({2, 4})},
          {"D8", dihedral(4)},
          {"Q8", quaternion()}};
}

/// Pre-crossed law without throwing.
inline bool is_precrossed(const GroupHom& d, const GroupAction& act) {
  const auto& q = *d.target();
  for (Elem m = 0; m < d.source()->order(); ++m)
    for (Elem g = 0; g < q.order(); ++g)
      if (d(act(m, g)) != q.conj(d(m), g)) return false;
  return true;
}

/// Every pre-crossed module structure M -> Q (all boundaries, all actions),
/// at most `limit` of them, in deterministic order.
inline std::vector<PreCrossedModule> precrossed_structures(const GroupPtr& m, const GroupPtr& q,
                                                           std::size_t limit = 1000000) {
  std::vector<PreCrossedModule> out;
  const auto acts = enumerate_actions(q, m);
  const auto ds = enumerate_homs(m, q);
  for (const auto& d : ds)
    for (const auto& a : acts) {
      if (out.size() >= limit) return out;
      if (is_precrossed(d, a)) out.emplace_back(d, a);
    }
  return out;
}

/// Z/4 with Z/2 acting by inversion and boundary reduction mod 2: the
/// smallest nil(2)-module that is not crossed (<1,1> = 2).
inline PreCrossedModule z4_inversion() {
  auto z4 = cyclic(4), z2 = cyclic(2);
  GroupHom d(z4, z2, {0, 1, 0, 1});
  GroupAction act(z2, z4, {0, 0, 1, 3, 2, 2, 3, 1});
  return PreCrossedModule(d, act);
}

/// G -> 1 with trivial action: Peiffer commutators are ordinary ones.
inline PreCrossedModule to_trivial(const GroupPtr& g) {
  auto one = trivial_group();
  return PreCrossedModule(trivial_hom(g, one), trivial_action(one, g));
}

/// Abelian A with trivial action and trivial boundary into Q.
inline PreCrossedModule abelian_trivial(const GroupPtr& a, const GroupPtr& q) {
  return PreCrossedModule(trivial_hom(a, q), trivial_action(q, a));
}

struct NamedNil2 {
  std::string name;
  Nil2Module module;
};

/// Z8 over Z2 by inversion, boundary mod 2: <x,<y,z>> = 4 for odd x,y,z.
inline PreCrossedModule z8_inversion() {
  auto z8 = cyclic(8), z2 = cyclic(2);
  std::vector<Elem> tbl(16);
  for (Elem m = 0; m < 8; ++m) {
    tbl[m * 2 + 0] = m;
    tbl[m * 2 + 1] = static_cast<Elem>((8 - m) % 8);
  }
  return PreCrossedModule(GroupHom(z8, z2, {0, 1, 0, 1, 0, 1, 0, 1}), GroupAction(z2, z8, tbl));
}

/// Nil(2) fixture corpus: crossed and non-crossed, tensor squares small.
inline std::vector<NamedNil2> nil2_corpus() {
  std::vector<NamedNil2> out;
  auto add = [&](std::string name, PreCrossedModule p) {
    out.push_back({std::move(name), Nil2Module(std::move(p))});
  };
  add("trivial", conjugation_module(trivial_group()));
  add("conj-Z2", conjugation_module(cyclic(2)));
  add("conj-Z4", conjugation_module(cyclic(4)));
  add("conj-S3", conjugation_module(symmetric(3)));
  add("conj-D8", conjugation_module(dihedral(4)));
  add("conj-Q8", conjugation_module(quaternion()));
  add("Z4-inversion", z4_inversion());
  add("D8-to-1", to_trivial(dihedral(4)));
  add("Q8-to-1", to_trivial(quaternion()));
  add("Z2xZ2-trivial-over-Z2", abelian_trivial(abelian_group({2, 2}), cyclic(2)));
  add("Z3-trivial-over-S3", abelian_trivial(cyclic(3), symmetric(3)));
  add("Z6-trivial-over-1", abelian_trivial(cyclic(6), trivial_group()));
  {
    // Z2 included in the center of Z4
    auto z2 = cyclic(2), z4 = cyclic(4);
    add("Z2-into-Z4", PreCrossedModule(GroupHom(z2, z4, {0, 2}), trivial_action(z4, z2)));
  }
  {
    // Z4 over Z2 by inversion with trivial boundary: crossed
    auto z4 = cyclic(4), z2 = cyclic(2);
    add("Z4-inv-trivial-boundary",
        PreCrossedModule(trivial_hom(z4, z2), GroupAction(z2, z4, {0, 0, 1, 3, 2, 2, 3, 1})));
  }
  {
    // Z8 over Z2 acting by x -> 5x, boundary mod 2
    auto z8 = cyclic(8), z2 = cyclic(2);
    std::vector<Elem> tbl(16);
    for (Elem m = 0; m < 8; ++m) {
      tbl[m * 2 + 0] = m;
      tbl[m * 2 + 1] = static_cast<Elem>((5 * m) % 8);
    }
    add("Z8-times5", PreCrossedModule(GroupHom(z8, z2, {0, 1, 0, 1, 0, 1, 0, 1}),
                                      GroupAction(z2, z8, tbl)));
  }
  return out;
}

}  // namespace fixtures
