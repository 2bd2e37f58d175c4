#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "quadmod/group.hpp"

namespace quadmod {

/// A homomorphism stored as a total lookup table source element -> target
/// element. Construction verifies the homomorphism law on all pairs.
class GroupHom {
 public:
  struct Trusted {};

  GroupHom(GroupPtr source, GroupPtr target, std::vector<Elem> map)
      : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
    if (map_.size() != source_->order())
      throw Error(ErrorKind::InvalidInput,
                  detail::cat("map has ", map_.size(), " entries, source has order ",
                              source_->order()));
    for (Elem x : map_)
      if (x >= target_->order())
        throw Error(ErrorKind::InvalidInput,
                    detail::cat("map value ", x, " outside target of order ", target_->order()));
    for (Elem a = 0; a < source_->order(); ++a)
      for (Elem b = 0; b < source_->order(); ++b)
        if (map_[source_->mul(a, b)] != target_->mul(map_[a], map_[b]))
          throw Error(ErrorKind::NotHomomorphism,
                      detail::cat("f(", a, "*", b, ") != f(", a, ")*f(", b, ")"), {a, b});
  }

  GroupHom(Trusted, GroupPtr source, GroupPtr target, std::vector<Elem> map)
      : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {}

  const GroupPtr& source() const noexcept { return source_; }
  const GroupPtr& target() const noexcept { return target_; }
  const std::vector<Elem>& map() const noexcept { return map_; }
  Elem operator()(Elem x) const noexcept { return map_[x]; }

  std::vector<Elem> kernel() const {
    std::vector<Elem> out;
    for (Elem x = 0; x < source_->order(); ++x)
      if (map_[x] == target_->identity()) out.push_back(x);
    return out;
  }

  std::vector<Elem> image() const {
    std::vector<char> hit(target_->order(), 0);
    for (Elem x : map_) hit[x] = 1;
    std::vector<Elem> out;
    for (Elem y = 0; y < target_->order(); ++y)
      if (hit[y]) out.push_back(y);
    return out;
  }

  bool is_mono() const { return kernel().size() == 1; }
  bool is_epi() const { return image().size() == target_->order(); }
  bool is_iso() const { return is_mono() && is_epi(); }
  bool is_trivial() const {
    return std::all_of(map_.begin(), map_.end(),
                       [&](Elem y) { return y == target_->identity(); });
  }

  friend bool operator==(const GroupHom& f, const GroupHom& g) {
    return same_group(f.source_, g.source_) && same_group(f.target_, g.target_) &&
           f.map_ == g.map_;
  }

 private:
  GroupPtr source_;
  GroupPtr target_;
  std::vector<Elem> map_;
};

inline GroupHom build_hom(GroupPtr source, GroupPtr target, std::vector<Elem> map) {
  return GroupHom(std::move(source), std::move(target), std::move(map));
}

inline GroupHom identity_hom(const GroupPtr& g) {
  std::vector<Elem> map(g->order());
  for (Elem x = 0; x < g->order(); ++x) map[x] = x;
  return GroupHom(GroupHom::Trusted{}, g, g, std::move(map));
}

inline GroupHom trivial_hom(const GroupPtr& source, const GroupPtr& target) {
  return GroupHom(GroupHom::Trusted{}, source, target,
                  std::vector<Elem>(source->order(), target->identity()));
}

/// g after f.
inline GroupHom compose(const GroupHom& g, const GroupHom& f) {
  if (!same_group(f.target(), g.source()))
    throw Error(ErrorKind::TypeMismatch, "composition of non-composable homomorphisms");
  std::vector<Elem> map(f.source()->order());
  for (Elem x = 0; x < map.size(); ++x) map[x] = g(f(x));
  return GroupHom(GroupHom::Trusted{}, f.source(), g.target(), std::move(map));
}

/// A right action of `actor` on `carrier` by automorphisms, stored as
/// act(m, q) = m^q in a |carrier| x |actor| table.
class GroupAction {
 public:
  struct Trusted {};

  GroupAction(GroupPtr actor, GroupPtr carrier, std::vector<Elem> table)
      : actor_(std::move(actor)), carrier_(std::move(carrier)), table_(std::move(table)) {
    const auto nq = actor_->order();
    const auto nm = carrier_->order();
    if (table_.size() != nq * nm)
      throw Error(ErrorKind::InvalidInput,
                  detail::cat("action table has ", table_.size(), " entries, expected ", nq * nm));
    for (Elem x : table_)
      if (x >= nm) throw Error(ErrorKind::InvalidInput, "action value out of range");
    for (Elem m = 0; m < nm; ++m)
      if ((*this)(m, actor_->identity()) != m)
        throw Error(ErrorKind::NotAction, detail::cat("m^e != m for m = ", m), {m});
    for (Elem m = 0; m < nm; ++m)
      for (Elem q = 0; q < nq; ++q)
        for (Elem r = 0; r < nq; ++r)
          if ((*this)((*this)(m, q), r) != (*this)(m, actor_->mul(q, r)))
            throw Error(ErrorKind::NotAction,
                        detail::cat("(m^q)^r != m^(qr) for (m,q,r) = (", m, ",", q, ",", r, ")"),
                        {m, q, r});
    for (Elem q = 0; q < nq; ++q)
      for (Elem m = 0; m < nm; ++m)
        for (Elem n = 0; n < nm; ++n)
          if ((*this)(carrier_->mul(m, n), q) !=
              carrier_->mul((*this)(m, q), (*this)(n, q)))
            throw Error(ErrorKind::NotAction,
                        detail::cat("(mn)^q != m^q n^q for (m,n,q) = (", m, ",", n, ",", q, ")"),
                        {m, n, q});
  }

  GroupAction(Trusted, GroupPtr actor, GroupPtr carrier, std::vector<Elem> table)
      : actor_(std::move(actor)), carrier_(std::move(carrier)), table_(std::move(table)) {}

  const GroupPtr& actor() const noexcept { return actor_; }
  const GroupPtr& carrier() const noexcept { return carrier_; }
  const std::vector<Elem>& table() const noexcept { return table_; }

  /// m^q
  Elem operator()(Elem m, Elem q) const noexcept { return table_[m * actor_->order() + q]; }

  bool is_trivial() const {
    for (Elem m = 0; m < carrier_->order(); ++m)
      for (Elem q = 0; q < actor_->order(); ++q)
        if ((*this)(m, q) != m) return false;
    return true;
  }

  friend bool operator==(const GroupAction& a, const GroupAction& b) {
    return same_group(a.actor_, b.actor_) && same_group(a.carrier_, b.carrier_) &&
           a.table_ == b.table_;
  }

 private:
  GroupPtr actor_;
  GroupPtr carrier_;
  std::vector<Elem> table_;
};

inline GroupAction trivial_action(const GroupPtr& actor, const GroupPtr& carrier) {
  std::vector<Elem> table(actor->order() * carrier->order());
  for (Elem m = 0; m < carrier->order(); ++m)
    for (Elem q = 0; q < actor->order(); ++q) table[m * actor->order() + q] = m;
  return GroupAction(GroupAction::Trusted{}, actor, carrier, std::move(table));
}

/// m^q = q^{-1} m q.
inline GroupAction conjugation_action(const GroupPtr& g) {
  std::vector<Elem> table(g->order() * g->order());
  for (Elem m = 0; m < g->order(); ++m)
    for (Elem q = 0; q < g->order(); ++q) table[m * g->order() + q] = g->conj(m, q);
  return GroupAction(GroupAction::Trusted{}, g, g, std::move(table));
}

/// The action of `along.source()` given by m^p = m^{along(p)}.
inline GroupAction pull_action(const GroupAction& act, const GroupHom& along) {
  if (!same_group(along.target(), act.actor()))
    throw Error(ErrorKind::TypeMismatch, "hom target is not the acting group");
  const auto np = along.source()->order();
  std::vector<Elem> table(act.carrier()->order() * np);
  for (Elem m = 0; m < act.carrier()->order(); ++m)
    for (Elem p = 0; p < np; ++p) table[m * np + p] = act(m, along(p));
  return GroupAction(GroupAction::Trusted{}, along.source(), act.carrier(), std::move(table));
}

struct HomEnumerationOptions {
  std::size_t max_source = 24;
  std::size_t max_target = 24;
  /// Optional pruning on generator images: (generator element, candidate image).
  std::function<bool(Elem, Elem)> generator_filter;
  /// Elements tried first when choosing the generating set of G.
  std::vector<Elem> preferred_generators;
};

namespace detail {

/// Extends generator images along the right Cayley graph; returns nullopt
/// when two paths to the same element disagree.
inline std::optional<std::vector<Elem>> extend_from_generators(const FiniteGroup& g,
                                                               const FiniteGroup& h,
                                                               const std::vector<Elem>& gens,
                                                               const std::vector<Elem>& images) {
  constexpr Elem unset = static_cast<Elem>(-1);
  std::vector<Elem> map(g.order(), unset);
  std::vector<Elem> queue{g.identity()};
  map[g.identity()] = h.identity();
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Elem x = queue[i];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const Elem y = g.mul(x, gens[k]);
      const Elem v = h.mul(map[x], images[k]);
      if (map[y] == unset) {
        map[y] = v;
        queue.push_back(y);
      } else if (map[y] != v) {
        return std::nullopt;
      }
    }
  }
  return map;
}

}  // namespace detail

/// All homomorphisms G -> H, duplicate free, sorted lexicographically by map.
/// Candidates are generator images with compatible orders, extended and
/// checked along the Cayley graph.
inline std::vector<GroupHom> enumerate_homs(const GroupPtr& g, const GroupPtr& h,
                                            const HomEnumerationOptions& opts = {}) {
  if (g->order() > opts.max_source || h->order() > opts.max_target)
    throw Error(ErrorKind::BoundExceeded,
                detail::cat("hom enumeration bound exceeded: |G| = ", g->order(),
                            ", |H| = ", h->order(), " (limits ", opts.max_source, ", ",
                            opts.max_target, ")"),
                {static_cast<std::int64_t>(g->order()), static_cast<std::int64_t>(h->order())});
  const auto gens = generating_set(*g, opts.preferred_generators);
  std::vector<std::vector<Elem>> candidates(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const auto ord = g->element_order(gens[k]);
    for (Elem y = 0; y < h->order(); ++y) {
      if (ord % h->element_order(y) != 0) continue;
      if (opts.generator_filter && !opts.generator_filter(gens[k], y)) continue;
      candidates[k].push_back(y);
    }
  }
  std::vector<std::vector<Elem>> maps;
  std::vector<Elem> images(gens.size());
  std::vector<std::size_t> pos(gens.size(), 0);
  const bool empty = std::any_of(candidates.begin(), candidates.end(),
                                 [](const auto& c) { return c.empty(); });
  if (!empty) {
    while (true) {
      for (std::size_t k = 0; k < gens.size(); ++k) images[k] = candidates[k][pos[k]];
      if (auto map = detail::extend_from_generators(*g, *h, gens, images))
        maps.push_back(std::move(*map));
      std::size_t k = 0;
      while (k < gens.size() && ++pos[k] == candidates[k].size()) pos[k++] = 0;
      if (k == gens.size()) break;
    }
  }
  std::sort(maps.begin(), maps.end());
  std::vector<GroupHom> out;
  out.reserve(maps.size());
  for (auto& m : maps) out.emplace_back(GroupHom::Trusted{}, g, h, std::move(m));
  return out;
}

}  // namespace quadmod
