#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "quadmod/error.hpp"

namespace quadmod {

/// Index of a group element inside its multiplication table.
using Elem = std::uint32_t;

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A finite group stored as a closed multiplication table. Elements are the
/// integers 0..order()-1; the identity is wherever the table says it is.
class FiniteGroup {
 public:
  struct Trusted {};

  /// Builds from a flat row-major table known to satisfy the group axioms
  /// (products, quotients and restrictions of existing groups).
  FiniteGroup(Trusted, std::size_t order, std::vector<Elem> table,
              std::vector<std::string> labels = {})
      : n_(order), table_(std::move(table)), labels_(std::move(labels)) {
    identity_ = find_identity().value();
    inverse_.resize(n_);
    for (Elem a = 0; a < n_; ++a) inverse_[a] = find_inverse(a).value();
  }

  std::size_t order() const noexcept { return n_; }
  Elem identity() const noexcept { return identity_; }

  Elem mul(Elem a, Elem b) const noexcept { return table_[a * n_ + b]; }
  Elem inv(Elem a) const noexcept { return inverse_[a]; }

  /// g^{-1} a g, the right conjugate a^g.
  Elem conj(Elem a, Elem g) const noexcept { return mul(mul(inv(g), a), g); }

  /// [a,b] = a^{-1} b^{-1} a b.
  Elem commutator(Elem a, Elem b) const noexcept {
    return mul(mul(inv(a), inv(b)), mul(a, b));
  }

  Elem pow(Elem a, std::int64_t k) const noexcept {
    if (k < 0) {
      a = inv(a);
      k = -k;
    }
    Elem result = identity_;
    Elem base = a;
    while (k > 0) {
      if (k & 1) result = mul(result, base);
      base = mul(base, base);
      k >>= 1;
    }
    return result;
  }

  std::size_t element_order(Elem a) const noexcept {
    std::size_t k = 1;
    for (Elem x = a; x != identity_; x = mul(x, a)) ++k;
    return k;
  }

  bool is_abelian() const noexcept { return !noncommuting_pair().has_value(); }

  std::optional<std::pair<Elem, Elem>> noncommuting_pair() const noexcept {
    for (Elem a = 0; a < n_; ++a)
      for (Elem b = a + 1; b < n_; ++b)
        if (mul(a, b) != mul(b, a)) return std::pair{a, b};
    return std::nullopt;
  }

  bool is_trivial() const noexcept { return n_ == 1; }

  std::span<const Elem> table() const noexcept { return table_; }
  std::span<const Elem> inverses() const noexcept { return inverse_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  std::string label(Elem a) const {
    return a < labels_.size() ? labels_[a] : std::to_string(a);
  }

  std::vector<std::vector<Elem>> rows() const {
    std::vector<std::vector<Elem>> out(n_);
    for (std::size_t a = 0; a < n_; ++a)
      out[a].assign(table_.begin() + a * n_, table_.begin() + (a + 1) * n_);
    return out;
  }

  friend bool operator==(const FiniteGroup& x, const FiniteGroup& y) {
    return x.n_ == y.n_ && x.table_ == y.table_;
  }

 private:
  FiniteGroup() = default;

  friend GroupPtr build_group(const std::vector<std::vector<std::int64_t>>&,
                              std::vector<std::string>);

  std::optional<Elem> find_identity() const {
    for (Elem e = 0; e < n_; ++e) {
      bool ok = true;
      for (Elem a = 0; a < n_ && ok; ++a)
        ok = mul(e, a) == a && mul(a, e) == a;
      if (ok) return e;
    }
    return std::nullopt;
  }

  std::optional<Elem> find_inverse(Elem a) const {
    for (Elem b = 0; b < n_; ++b)
      if (mul(a, b) == identity_ && mul(b, a) == identity_) return b;
    return std::nullopt;
  }

  std::size_t n_ = 0;
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;
  std::vector<std::string> labels_;
  Elem identity_ = 0;
};

/// Validates a raw multiplication table and builds the group. Identity is
/// checked first, then inverses, then associativity, so each error names the
/// first witness in index order.
inline GroupPtr build_group(const std::vector<std::vector<std::int64_t>>& raw,
                            std::vector<std::string> labels = {}) {
  const std::size_t n = raw.size();
  if (n == 0) throw Error(ErrorKind::InvalidInput, "empty multiplication table");
  std::vector<Elem> flat(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    if (raw[a].size() != n)
      throw Error(ErrorKind::InvalidInput,
                  detail::cat("row ", a, " has ", raw[a].size(), " entries, expected ", n),
                  {static_cast<std::int64_t>(a)});
    for (std::size_t b = 0; b < n; ++b) {
      const auto v = raw[a][b];
      if (v < 0 || static_cast<std::size_t>(v) >= n)
        throw Error(ErrorKind::InvalidInput,
                    detail::cat("entry (", a, ",", b, ") = ", v, " out of range"),
                    {static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)});
      flat[a * n + b] = static_cast<Elem>(v);
    }
  }
  if (!labels.empty() && labels.size() != n)
    throw Error(ErrorKind::InvalidInput, "label count does not match order");

  FiniteGroup g;
  g.n_ = n;
  g.table_ = std::move(flat);
  g.labels_ = std::move(labels);
  auto e = g.find_identity();
  if (!e) throw Error(ErrorKind::NoIdentity, "no two-sided identity element");
  g.identity_ = *e;
  g.inverse_.resize(n);
  for (Elem a = 0; a < n; ++a) {
    auto b = g.find_inverse(a);
    if (!b)
      throw Error(ErrorKind::NoInverse, detail::cat("element ", a, " has no inverse"),
                  {static_cast<std::int64_t>(a)});
    g.inverse_[a] = *b;
  }
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      const Elem ab = g.mul(a, b);
      for (Elem c = 0; c < n; ++c)
        if (g.mul(ab, c) != g.mul(a, g.mul(b, c)))
          throw Error(ErrorKind::NotAssociative,
                      detail::cat("(", a, "*", b, ")*", c, " != ", a, "*(", b, "*", c, ")"),
                      {a, b, c});
    }
  return std::make_shared<const FiniteGroup>(std::move(g));
}

inline GroupPtr build_group(const std::vector<std::vector<Elem>>& rows,
                            std::vector<std::string> labels = {}) {
  std::vector<std::vector<std::int64_t>> raw(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) raw[i].assign(rows[i].begin(), rows[i].end());
  return build_group(raw, std::move(labels));
}

inline GroupPtr make_trusted_group(std::size_t order, std::vector<Elem> table,
                                   std::vector<std::string> labels = {}) {
  return std::make_shared<const FiniteGroup>(FiniteGroup::Trusted{}, order,
                                             std::move(table), std::move(labels));
}

inline bool same_group(const GroupPtr& a, const GroupPtr& b) {
  return a == b || (a && b && *a == *b);
}

/// Smallest subgroup containing `gens`, as a sorted element list.
inline std::vector<Elem> generated_elements(const FiniteGroup& g, std::span<const Elem> gens) {
  std::vector<char> seen(g.order(), 0);
  std::vector<Elem> out{g.identity()};
  seen[g.identity()] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (Elem s : gens) {
      const Elem x = g.mul(out[i], s);
      if (!seen[x]) {
        seen[x] = 1;
        out.push_back(x);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

/// Greedy small generating set: each step adds the element that enlarges the
/// generated subgroup the most (ties to the smallest index). Elements of
/// `preferred` are exhausted first.
inline std::vector<Elem> generating_set(const FiniteGroup& g, std::span<const Elem> preferred = {}) {
  std::vector<Elem> gens;
  std::vector<Elem> current{g.identity()};
  std::vector<char> pref(g.order(), 0);
  for (Elem x : preferred) pref[x] = 1;
  bool use_pref = !preferred.empty();
  while (current.size() < g.order()) {
    std::vector<char> in(g.order(), 0);
    for (Elem x : current) in[x] = 1;
    Elem best = 0;
    std::size_t best_size = 0;
    for (Elem x = 0; x < g.order(); ++x) {
      if (in[x] || (use_pref && !pref[x])) continue;
      auto trial = gens;
      trial.push_back(x);
      const auto size = generated_elements(g, trial).size();
      if (size > best_size) {
        best_size = size;
        best = x;
      }
    }
    if (best_size == 0) {
      use_pref = false;
      continue;
    }
    gens.push_back(best);
    current = generated_elements(g, gens);
  }
  return gens;
}

}  // namespace quadmod
