#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "quadmod/hom.hpp"

namespace quadmod {

using Permutation = std::vector<Elem>;

/// Closes a set of permutations of {0..n-1} under composition. Product is
/// "apply left factor first": (p*q)(i) = q(p(i)). Elements are sorted
/// lexicographically, so the identity permutation is element 0.
inline GroupPtr from_permutations(std::size_t degree, const std::vector<Permutation>& gens,
                                  std::vector<Permutation>* elements_out = nullptr) {
  Permutation id(degree);
  for (Elem i = 0; i < degree; ++i) id[i] = i;
  for (const auto& p : gens) {
    if (p.size() != degree) throw Error(ErrorKind::InvalidInput, "permutation of wrong degree");
    auto s = p;
    std::sort(s.begin(), s.end());
    if (s != id) throw Error(ErrorKind::InvalidInput, "not a permutation");
  }
  auto compose_perm = [&](const Permutation& p, const Permutation& q) {
    Permutation r(degree);
    for (Elem i = 0; i < degree; ++i) r[i] = q[p[i]];
    return r;
  };
  std::map<Permutation, Elem> seen{{id, 0}};
  std::vector<Permutation> elems{id};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& s : gens) {
      auto x = compose_perm(elems[i], s);
      if (seen.emplace(x, 0).second) elems.push_back(std::move(x));
    }
  std::sort(elems.begin(), elems.end());
  Elem k = 0;
  for (const auto& e : elems) seen[e] = k++;
  const std::size_t n = elems.size();
  std::vector<Elem> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a * n + b] = seen.at(compose_perm(elems[a], elems[b]));
  if (elements_out) *elements_out = elems;
  return make_trusted_group(n, std::move(table));
}

inline GroupPtr trivial_group() { return make_trusted_group(1, {0}); }

inline GroupPtr cyclic(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidInput, "cyclic group of order 0");
  std::vector<Elem> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a * n + b] = static_cast<Elem>((a + b) % n);
  return make_trusted_group(n, std::move(table));
}

/// Z/m1 x ... x Z/mk in mixed radix, first coordinate fastest; element 0 is
/// the identity.
inline GroupPtr abelian_group(const std::vector<std::int64_t>& moduli) {
  std::size_t n = 1;
  for (auto m : moduli) {
    if (m <= 0) throw Error(ErrorKind::InvalidInput, "non-positive modulus");
    n *= static_cast<std::size_t>(m);
  }
  std::vector<std::vector<std::int64_t>> digits(n, std::vector<std::int64_t>(moduli.size()));
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t r = x;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
      digits[x][i] = static_cast<std::int64_t>(r % moduli[i]);
      r /= moduli[i];
    }
  }
  std::vector<Elem> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t idx = 0, scale = 1;
      for (std::size_t i = 0; i < moduli.size(); ++i) {
        idx += scale * static_cast<std::size_t>((digits[a][i] + digits[b][i]) % moduli[i]);
        scale *= moduli[i];
      }
      table[a * n + b] = static_cast<Elem>(idx);
    }
  return make_trusted_group(n, std::move(table));
}

/// Dihedral group of order 2n acting on an n-gon.
inline GroupPtr dihedral(std::size_t n) {
  if (n < 3) {
    // order 2 and 4: Z/2 and Z/2 x Z/2
    return n == 1 ? cyclic(2) : abelian_group({2, 2});
  }
  Permutation r(n), s(n);
  for (Elem i = 0; i < n; ++i) {
    r[i] = static_cast<Elem>((i + 1) % n);
    s[i] = static_cast<Elem>((n - i) % n);
  }
  return from_permutations(n, {r, s});
}

inline GroupPtr symmetric(std::size_t n) {
  if (n <= 1) return trivial_group();
  Permutation t(n), c(n);
  for (Elem i = 0; i < n; ++i) {
    t[i] = i;
    c[i] = static_cast<Elem>((i + 1) % n);
  }
  std::swap(t[0], t[1]);
  return from_permutations(n, {t, c});
}

inline GroupPtr alternating(std::size_t n) {
  if (n <= 2) return trivial_group();
  std::vector<Permutation> gens;
  for (Elem k = 2; k < n; ++k) {
    Permutation p(n);
    for (Elem i = 0; i < n; ++i) p[i] = i;
    p[0] = 1;
    p[1] = k;
    p[k] = 0;
    gens.push_back(p);
  }
  return from_permutations(n, gens);
}

/// Quaternion group of order 8.
inline GroupPtr quaternion() {
  // elements 1,i,j,k,-1,-i,-j,-k as 0..7
  const int mul[8][8] = {
      {0, 1, 2, 3, 4, 5, 6, 7}, {1, 4, 3, 6, 5, 0, 7, 2}, {2, 7, 4, 1, 6, 3, 0, 5},
      {3, 2, 5, 4, 7, 6, 1, 0}, {4, 5, 6, 7, 0, 1, 2, 3}, {5, 0, 7, 2, 1, 4, 3, 6},
      {6, 3, 0, 5, 2, 7, 4, 1}, {7, 6, 1, 0, 3, 2, 5, 4}};
  std::vector<Elem> table(64);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) table[a * 8 + b] = static_cast<Elem>(mul[a][b]);
  return make_trusted_group(8, std::move(table),
                            {"1", "i", "j", "k", "-1", "-i", "-j", "-k"});
}

/// G x H with (g,h) at index g*|H| + h.
inline GroupPtr direct_product(const GroupPtr& g, const GroupPtr& h) {
  const std::size_t ng = g->order(), nh = h->order(), n = ng * nh;
  std::vector<Elem> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      table[a * n + b] = static_cast<Elem>(g->mul(a / nh, b / nh) * nh + h->mul(a % nh, b % nh));
  return make_trusted_group(n, std::move(table));
}

inline GroupHom product_projection_left(const GroupPtr& prod, const GroupPtr& g, const GroupPtr& h) {
  std::vector<Elem> map(prod->order());
  for (Elem x = 0; x < map.size(); ++x) map[x] = static_cast<Elem>(x / h->order());
  return GroupHom(GroupHom::Trusted{}, prod, g, std::move(map));
}

inline GroupHom product_projection_right(const GroupPtr& prod, const GroupPtr& g, const GroupPtr& h) {
  (void)g;
  std::vector<Elem> map(prod->order());
  for (Elem x = 0; x < map.size(); ++x) map[x] = static_cast<Elem>(x % h->order());
  return GroupHom(GroupHom::Trusted{}, prod, h, std::move(map));
}

inline GroupHom product_inclusion_left(const GroupPtr& prod, const GroupPtr& g, const GroupPtr& h) {
  std::vector<Elem> map(g->order());
  for (Elem x = 0; x < map.size(); ++x)
    map[x] = static_cast<Elem>(x * h->order() + h->identity());
  return GroupHom(GroupHom::Trusted{}, g, prod, std::move(map));
}

inline GroupHom product_inclusion_right(const GroupPtr& prod, const GroupPtr& g, const GroupPtr& h) {
  std::vector<Elem> map(h->order());
  for (Elem x = 0; x < map.size(); ++x)
    map[x] = static_cast<Elem>(g->identity() * h->order() + x);
  return GroupHom(GroupHom::Trusted{}, h, prod, std::move(map));
}

/// Aut(M) as a group, with elements the automorphisms of M (sorted by map)
/// and product (a*b)(m) = b(a(m)), so that homomorphisms Q -> Aut(M) are
/// exactly right actions.
struct AutomorphismGroup {
  GroupPtr group;
  std::vector<GroupHom> automorphisms;
};

inline AutomorphismGroup automorphism_group(const GroupPtr& m, std::size_t max_order = 64,
                                            std::size_t max_aut = 256) {
  HomEnumerationOptions opts;
  opts.max_source = max_order;
  opts.max_target = max_order;
  std::vector<GroupHom> autos;
  for (auto& f : enumerate_homs(m, m, opts))
    if (f.is_iso()) autos.push_back(std::move(f));
  if (autos.size() > max_aut)
    throw Error(ErrorKind::BoundExceeded,
                detail::cat("|Aut(M)| = ", autos.size(), " exceeds ", max_aut),
                {static_cast<std::int64_t>(autos.size())});
  std::vector<Permutation> perms;
  for (const auto& f : autos) perms.push_back(f.map());
  std::vector<Permutation> elems;
  auto group = from_permutations(m->order(), perms, &elems);
  std::vector<GroupHom> ordered;
  for (auto& p : elems) ordered.emplace_back(GroupHom::Trusted{}, m, m, p);
  return AutomorphismGroup{group, std::move(ordered)};
}

/// All right actions of Q on M by automorphisms, in lexicographic order of
/// the underlying homomorphism Q -> Aut(M); at most `limit` are returned.
inline std::vector<GroupAction> enumerate_actions(const GroupPtr& q, const GroupPtr& m,
                                                  std::size_t limit = 1000,
                                                  std::size_t max_aut = 200) {
  auto aut = automorphism_group(m, 64, max_aut);
  HomEnumerationOptions opts;
  opts.max_source = std::max<std::size_t>(q->order(), 24);
  opts.max_target = max_aut;
  std::vector<GroupAction> out;
  for (const auto& h : enumerate_homs(q, aut.group, opts)) {
    if (out.size() >= limit) break;
    std::vector<Elem> table(m->order() * q->order());
    for (Elem x = 0; x < m->order(); ++x)
      for (Elem g = 0; g < q->order(); ++g) table[x * q->order() + g] = aut.automorphisms[h(g)](x);
    out.emplace_back(GroupAction::Trusted{}, q, m, std::move(table));
  }
  return out;
}

}  // namespace quadmod
