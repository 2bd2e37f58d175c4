#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "quadmod/quadratic.hpp"

namespace quadmod {

/// Right transversal of phi(P) in Q: the minimal element of each right coset
/// phi(P)q, in increasing order. The identity is always representative 0.
struct Transversal {
  GroupHom phi;
  std::vector<Elem> reps;
  std::vector<std::size_t> coset_of;  // q -> index of its coset
  std::vector<Elem> preimage;         // phi(p) -> p

  std::size_t size() const { return reps.size(); }

  /// t q = phi(p) u, returned as (p, index of u).
  std::pair<Elem, std::size_t> decompose(std::size_t t, Elem q) const {
    const auto& g = *phi.target();
    const Elem x = g.mul(reps[t], q);
    const auto u = coset_of[x];
    const Elem h = g.mul(x, g.inv(reps[u]));
    return {preimage[h], u};
  }
};

inline Transversal right_transversal(const GroupHom& phi) {
  if (!phi.is_mono()) {
    Elem k = 0;
    for (Elem x : phi.kernel())
      if (x != phi.source()->identity()) k = x;
    throw Error(ErrorKind::NotMonomorphism,
                detail::cat("map is not injective: ", k, " lies in its kernel"), {k});
  }
  const auto& q = *phi.target();
  const auto& p = *phi.source();
  Transversal t{phi, {}, std::vector<std::size_t>(q.order(), SIZE_MAX),
                std::vector<Elem>(q.order(), 0)};
  for (Elem a = 0; a < p.order(); ++a) t.preimage[phi(a)] = a;
  for (Elem x = 0; x < q.order(); ++x) {
    if (t.coset_of[x] != SIZE_MAX) continue;
    const auto idx = t.reps.size();
    t.reps.push_back(x);
    for (Elem a = 0; a < p.order(); ++a) t.coset_of[q.mul(phi(a), x)] = idx;
  }
  return t;
}

/// Reduced word in a free product of copies of one finite group: no identity
/// syllables, adjacent syllables in different copies.
struct FreeProductWord {
  std::vector<std::pair<std::uint32_t, Elem>> syllables;

  bool empty() const { return syllables.empty(); }
  std::size_t length() const { return syllables.size(); }
  friend bool operator==(const FreeProductWord&, const FreeProductWord&) = default;
  friend auto operator<=>(const FreeProductWord&, const FreeProductWord&) = default;
};

class FreeProduct {
 public:
  FreeProduct(GroupPtr factor, std::size_t copies) : factor_(std::move(factor)), copies_(copies) {}

  const GroupPtr& factor() const { return factor_; }
  std::size_t copies() const { return copies_; }

  FreeProductWord identity() const { return {}; }

  FreeProductWord letter(std::size_t copy, Elem x) const {
    if (copy >= copies_ || x >= factor_->order())
      throw Error(ErrorKind::InvalidInput, "letter out of range");
    FreeProductWord w;
    if (x != factor_->identity()) w.syllables.emplace_back(static_cast<std::uint32_t>(copy), x);
    return w;
  }

  FreeProductWord normalize(const std::vector<std::pair<std::uint32_t, Elem>>& syl) const {
    FreeProductWord w;
    for (auto [c, x] : syl) push(w, c, x);
    return w;
  }

  bool is_normal(const FreeProductWord& w) const {
    for (std::size_t i = 0; i < w.syllables.size(); ++i) {
      if (w.syllables[i].second == factor_->identity() || w.syllables[i].first >= copies_)
        return false;
      if (i && w.syllables[i - 1].first == w.syllables[i].first) return false;
    }
    return true;
  }

  FreeProductWord multiply(const FreeProductWord& a, const FreeProductWord& b) const {
    FreeProductWord w = a;
    for (auto [c, x] : b.syllables) push(w, c, x);
    return w;
  }

  FreeProductWord inverse(const FreeProductWord& a) const {
    FreeProductWord w;
    for (auto it = a.syllables.rbegin(); it != a.syllables.rend(); ++it)
      w.syllables.emplace_back(it->first, factor_->inv(it->second));
    return w;
  }

  FreeProductWord commutator(const FreeProductWord& a, const FreeProductWord& b) const {
    return multiply(multiply(inverse(a), inverse(b)), multiply(a, b));
  }

  /// Applies f(copy, x) -> (copy', x') to every syllable and renormalizes.
  template <class F>
  FreeProductWord map_syllables(const FreeProductWord& w, F f) const {
    FreeProductWord out;
    for (auto [c, x] : w.syllables) {
      auto [c2, x2] = f(c, x);
      push(out, static_cast<std::uint32_t>(c2), x2);
    }
    return out;
  }

  template <class Rng>
  FreeProductWord random_word(Rng& rng, std::size_t max_syllables) const {
    std::uniform_int_distribution<std::size_t> len(0, max_syllables);
    std::uniform_int_distribution<std::uint32_t> copy(0, static_cast<std::uint32_t>(copies_ - 1));
    std::uniform_int_distribution<Elem> elem(0, static_cast<Elem>(factor_->order() - 1));
    std::vector<std::pair<std::uint32_t, Elem>> syl(len(rng));
    for (auto& s : syl) s = {copy(rng), elem(rng)};
    return normalize(syl);
  }

  std::string text(const FreeProductWord& w) const {
    if (w.empty()) return "1";
    std::string s;
    for (auto [c, x] : w.syllables) {
      if (!s.empty()) s += ' ';
      s += detail::cat("(t", c, ",", factor_->label(x), ")");
    }
    return s;
  }

 private:
  void push(FreeProductWord& w, std::uint32_t c, Elem x) const {
    if (x == factor_->identity()) return;
    if (!w.syllables.empty() && w.syllables.back().first == c) {
      const Elem y = factor_->mul(w.syllables.back().second, x);
      if (y == factor_->identity())
        w.syllables.pop_back();
      else
        w.syllables.back().second = y;
    } else {
      w.syllables.emplace_back(c, x);
    }
  }

  GroupPtr factor_;
  std::size_t copies_;
};

/// Mono-induced nil(2)-module as a free product of copies M_t, t in a right
/// transversal of phi(P) in Q. (m_t)^q = (m^p)_u where t q = phi(p) u, and
/// delta(m_t) = t^-1 phi(d m) t.
struct MonoInducedNil2 {
  PreCrossedModule source;
  Transversal transversal;
  FreeProduct words;

  FreeProductWord act(const FreeProductWord& w, Elem q) const {
    return words.map_syllables(w, [&](std::uint32_t t, Elem m) {
      const auto [p, u] = transversal.decompose(t, q);
      return std::pair<std::size_t, Elem>{u, source.action()(m, p)};
    });
  }

  Elem boundary(const FreeProductWord& w) const {
    const auto& q = *transversal.phi.target();
    Elem v = q.identity();
    for (auto [t, m] : w.syllables)
      v = q.mul(v, q.conj(transversal.phi(source.boundary()(m)), transversal.reps[t]));
    return v;
  }

  /// theta(m) = m in the copy of the identity coset.
  FreeProductWord unit(Elem m) const { return words.letter(0, m); }
};

inline MonoInducedNil2 induce_nil2_mono(const PreCrossedModule& n, const GroupHom& f) {
  if (!same_group(f.source(), n.Q()))
    throw Error(ErrorKind::TypeMismatch, "map does not start at the base group");
  auto t = right_transversal(f);
  const auto copies = t.size();
  return MonoInducedNil2{n, std::move(t), FreeProduct(n.M(), copies)};
}

inline MonoInducedNil2 induce_nil2_mono(const Nil2Module& n, const GroupHom& f) {
  return induce_nil2_mono(n.pcm(), f);
}

/// Quadratic layer over a monomorphism: B = *_t L_t, C = *_t M_t,
/// gamma(l_t) = (d2 l)_t and omega({m_t}(x){m'_t}) = (omega({m}(x){m'}))_t.
struct MonoInducedQuad {
  QuadPtr source;
  MonoInducedNil2 middle;
  FreeProduct top;

  const Transversal& transversal() const { return middle.transversal; }

  FreeProductWord act_top(const FreeProductWord& w, Elem q) const {
    return top.map_syllables(w, [&](std::uint32_t t, Elem l) {
      const auto [p, u] = transversal().decompose(t, q);
      return std::pair<std::size_t, Elem>{u, source->act2(l, p)};
    });
  }

  FreeProductWord gamma(const FreeProductWord& w) const {
    return middle.words.map_syllables(w, [&](std::uint32_t t, Elem l) {
      return std::pair<std::size_t, Elem>{t, source->d2(l)};
    });
  }

  FreeProductWord omega(std::size_t t, Elem m, Elem m2) const {
    const auto& cm = source->base.class_map;
    return top.letter(t, source->omega(source->tensor(cm(m), cm(m2))));
  }

  /// The Peiffer pairing on the copy t: <m_t, m2_t>.
  FreeProductWord peiffer(std::size_t t, Elem m, Elem m2) const {
    return middle.words.letter(t, middle.source.peiffer(m, m2));
  }

  /// (l_t)^{m_t} = (l^m)_t with l^m = l^{d1 m}.
  FreeProductWord cross_action(std::size_t t, Elem l, Elem m) const {
    return top.letter(t, source->act2(l, source->d1(m)));
  }
};

inline MonoInducedQuad induce_quad_mono(const QuadPtr& q, const GroupHom& phi) {
  auto mid = induce_nil2_mono(q->nil2_part(), phi);
  const auto copies = mid.transversal.size();
  return MonoInducedQuad{q, std::move(mid), FreeProduct(q->C2(), copies)};
}

struct LawCheck {
  std::string law;
  std::size_t samples = 0;
  std::size_t violations = 0;
  std::vector<std::string> witnesses;
};

struct LawReport {
  std::vector<LawCheck> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (c.violations) return false;
    return true;
  }
  std::size_t total_samples() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.samples;
    return n;
  }
};

inline constexpr std::size_t default_law_samples = 1000;
inline constexpr std::size_t sampled_word_length = 6;

namespace detail {

class LawRecorder {
 public:
  explicit LawRecorder(LawReport& rep) : rep_(rep) {}
  void record(const std::string& law, bool ok, const std::string& witness) {
    LawCheck* c = nullptr;
    for (auto& x : rep_.checks)
      if (x.law == law) c = &x;
    if (!c) {
      rep_.checks.push_back({law, 0, 0, {}});
      c = &rep_.checks.back();
    }
    ++c->samples;
    if (!ok) {
      ++c->violations;
      if (c->witnesses.size() < witness_cap) c->witnesses.push_back(witness);
    }
  }

 private:
  LawReport& rep_;
};

}  // namespace detail

/// Seeded sampled checks of the word-level structure: associativity,
/// identity and inverses, right action laws, delta a homomorphism and the
/// pre-crossed law delta(w^q) = q^-1 delta(w) q.
inline LawReport check_mono_laws(const MonoInducedNil2& mi, std::size_t samples = default_law_samples,
                                 std::uint64_t seed = 1) {
  LawReport rep;
  detail::LawRecorder rec(rep);
  std::mt19937_64 rng(seed);
  const auto& fp = mi.words;
  const auto& q = *mi.transversal.phi.target();
  std::uniform_int_distribution<Elem> qd(0, static_cast<Elem>(q.order() - 1));
  for (std::size_t i = 0; i < samples; ++i) {
    const auto a = fp.random_word(rng, sampled_word_length);
    const auto b = fp.random_word(rng, sampled_word_length);
    const auto c = fp.random_word(rng, sampled_word_length);
    const Elem g = qd(rng);
    const Elem h = qd(rng);
    const auto wit = [&] { return fp.text(a) + " | " + fp.text(b) + " | q=" + q.label(g); };
    rec.record("normal form", fp.is_normal(fp.multiply(a, b)), wit());
    rec.record("(ab)c = a(bc)",
               fp.multiply(fp.multiply(a, b), c) == fp.multiply(a, fp.multiply(b, c)), wit());
    rec.record("a a^-1 = 1", fp.multiply(a, fp.inverse(a)).empty(), wit());
    rec.record("w^1 = w", mi.act(a, q.identity()) == a, wit());
    rec.record("(w^q)^q' = w^(qq')", mi.act(mi.act(a, g), h) == mi.act(a, q.mul(g, h)), wit());
    rec.record("(ab)^q = a^q b^q",
               mi.act(fp.multiply(a, b), g) == fp.multiply(mi.act(a, g), mi.act(b, g)), wit());
    rec.record("delta(ab) = delta(a) delta(b)",
               mi.boundary(fp.multiply(a, b)) == q.mul(mi.boundary(a), mi.boundary(b)), wit());
    rec.record("delta(w^q) = q^-1 delta(w) q",
               mi.boundary(mi.act(a, g)) == q.conj(mi.boundary(a), g), wit());
  }
  return rep;
}

/// Sampled checks of the quadratic word layer: gamma a homomorphism,
/// equivariant, delta gamma = 1, gamma omega = w copywise, omega equivariant
/// across copies and the cross action matching the delta action.
inline LawReport check_mono_quad_laws(const MonoInducedQuad& mq,
                                      std::size_t samples = default_law_samples,
                                      std::uint64_t seed = 1) {
  LawReport rep = check_mono_laws(mq.middle, samples, seed);
  detail::LawRecorder rec(rep);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const auto& top = mq.top;
  const auto& mid = mq.middle.words;
  const auto& q = *mq.transversal().phi.target();
  const auto& m = *mq.source->C1();
  const auto& l = *mq.source->C2();
  std::uniform_int_distribution<Elem> qd(0, static_cast<Elem>(q.order() - 1));
  std::uniform_int_distribution<Elem> md(0, static_cast<Elem>(m.order() - 1));
  std::uniform_int_distribution<Elem> ld(0, static_cast<Elem>(l.order() - 1));
  std::uniform_int_distribution<std::size_t> td(0, mq.transversal().size() - 1);
  for (std::size_t i = 0; i < samples; ++i) {
    const auto a = top.random_word(rng, sampled_word_length);
    const auto b = top.random_word(rng, sampled_word_length);
    const Elem g = qd(rng);
    const Elem h = qd(rng);
    const auto t = td(rng);
    const Elem x = md(rng), y = md(rng);
    const Elem z = ld(rng);
    const auto wit = [&] { return top.text(a) + " | " + top.text(b) + " | q=" + q.label(g); };
    rec.record("top normal form", top.is_normal(top.multiply(a, b)), wit());
    rec.record("top (w^q)^q' = w^(qq')",
               mq.act_top(mq.act_top(a, g), h) == mq.act_top(a, q.mul(g, h)), wit());
    rec.record("top (ab)^q = a^q b^q",
               mq.act_top(top.multiply(a, b), g) == top.multiply(mq.act_top(a, g), mq.act_top(b, g)),
               wit());
    rec.record("gamma(ab) = gamma(a) gamma(b)",
               mq.gamma(top.multiply(a, b)) == mid.multiply(mq.gamma(a), mq.gamma(b)), wit());
    rec.record("gamma(w^q) = gamma(w)^q", mq.gamma(mq.act_top(a, g)) == mq.middle.act(mq.gamma(a), g),
               wit());
    rec.record("delta gamma = 1", mq.middle.boundary(mq.gamma(a)) == q.identity(), wit());
    rec.record("gamma omega_t = <,>_t", mq.gamma(mq.omega(t, x, y)) == mq.peiffer(t, x, y),
               detail::cat("t=", t, " m=", x, " m'=", y));
    const auto [p, u] = mq.transversal().decompose(t, g);
    const auto& act1 = mq.source->act1;
    rec.record("omega_t(m,m')^q = omega_u(m^p,m'^p)",
               mq.act_top(mq.omega(t, x, y), g) == mq.omega(u, act1(x, p), act1(y, p)),
               detail::cat("t=", t, " q=", g));
    rec.record("(l_t)^{m_t} = (l_t)^{delta(m_t)}",
               mq.cross_action(t, z, x) ==
                   mq.act_top(top.letter(t, z), mq.middle.boundary(mid.letter(t, x))),
               detail::cat("t=", t, " l=", z, " m=", x));
  }
  return rep;
}

/// Whether `target` is a product of at most `bound` elements of
/// `conjugated` (already closed under the conjugations of interest and under
/// inverses). Returns the shortest length found.
template <class T, class Mul>
std::optional<std::size_t> bounded_membership(const T& target, const T& identity,
                                              const std::vector<T>& conjugated, std::size_t bound,
                                              Mul mul) {
  if (target == identity) return 0;
  std::set<T> seen{identity};
  std::vector<T> frontier{identity};
  for (std::size_t d = 1; d <= bound && !frontier.empty(); ++d) {
    std::vector<T> next;
    for (const auto& x : frontier)
      for (const auto& r : conjugated) {
        T y = mul(x, r);
        if (!seen.insert(y).second) continue;
        if (y == target) return d;
        next.push_back(std::move(y));
      }
    frontier = std::move(next);
  }
  return std::nullopt;
}

/// Membership of `target` in the normal closure of `relators` in a finite
/// group, using at most `bound` conjugated relators.
inline std::optional<std::size_t> bounded_membership(const FiniteGroup& g,
                                                     const std::vector<Elem>& relators,
                                                     Elem target, std::size_t bound) {
  std::set<Elem> conj;
  for (Elem r : relators)
    for (Elem c = 0; c < g.order(); ++c) {
      conj.insert(g.conj(r, c));
      conj.insert(g.conj(g.inv(r), c));
    }
  std::vector<Elem> list(conj.begin(), conj.end());
  return bounded_membership(target, g.identity(), list, bound,
                            [&](Elem a, Elem b) { return g.mul(a, b); });
}

/// The same in a free product, conjugating by the supplied words.
inline std::optional<std::size_t> bounded_membership(const FreeProduct& fp,
                                                     const std::vector<FreeProductWord>& relators,
                                                     const std::vector<FreeProductWord>& conjugators,
                                                     const FreeProductWord& target,
                                                     std::size_t bound) {
  std::set<FreeProductWord> conj;
  for (const auto& r : relators)
    for (const auto& c : conjugators) {
      const auto ci = fp.inverse(c);
      conj.insert(fp.multiply(fp.multiply(ci, r), c));
      conj.insert(fp.multiply(fp.multiply(ci, fp.inverse(r)), c));
    }
  std::vector<FreeProductWord> list(conj.begin(), conj.end());
  return bounded_membership(target, fp.identity(), list, bound,
                            [&](const FreeProductWord& a, const FreeProductWord& b) {
                              return fp.multiply(a, b);
                            });
}

}  // namespace quadmod
