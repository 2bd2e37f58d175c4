#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "quadmod/group.hpp"

namespace quadmod {

/// Letters are g+1 for generator g and -(g+1) for its inverse.
using Word = std::vector<std::int32_t>;

inline std::int32_t letter(std::size_t gen, bool inverse = false) {
  const auto l = static_cast<std::int32_t>(gen + 1);
  return inverse ? -l : l;
}

inline Word free_reduce(const Word& w) {
  Word out;
  for (auto l : w) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

inline Word cyclic_reduce(Word w) {
  w = free_reduce(w);
  std::size_t a = 0, b = w.size();
  while (b - a >= 2 && w[a] == -w[b - 1]) {
    ++a;
    --b;
  }
  return Word(w.begin() + static_cast<std::ptrdiff_t>(a), w.begin() + static_cast<std::ptrdiff_t>(b));
}

inline Word invert_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) l = -l;
  return out;
}

struct RelatorFamily {
  std::string name;
  std::string description;
  std::size_t first = 0;  // index of the first relator of the family
  std::size_t count = 0;
};

struct Presentation {
  std::vector<std::string> generator_names;
  std::vector<Word> relators;
  std::vector<RelatorFamily> families;

  std::size_t generator_count() const { return generator_names.size(); }

  std::string word_text(const Word& w) const {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) s += ' ';
      s += generator_names[static_cast<std::size_t>(std::abs(w[i]) - 1)];
      if (w[i] < 0) s += "^-1";
    }
    return s;
  }

  /// Free and cyclically reduced, empty relators dropped, duplicates removed.
  std::vector<Word> reduced_relators() const {
    std::set<Word> seen;
    std::vector<Word> out;
    for (const auto& r : relators) {
      auto c = cyclic_reduce(r);
      if (c.empty()) continue;
      if (seen.insert(c).second) out.push_back(std::move(c));
    }
    return out;
  }
};

/// Text dump: one generator per line, then one relator per line tagged with
/// its family.
inline std::string dump_presentation(const Presentation& p) {
  std::ostringstream os;
  os << "generators " << p.generator_count() << "\n";
  for (const auto& g : p.generator_names) os << "  " << g << "\n";
  os << "relators " << p.relators.size() << "\n";
  for (const auto& f : p.families) {
    os << "family " << f.name << " " << f.count << " : " << f.description << "\n";
    for (std::size_t i = f.first; i < f.first + f.count; ++i)
      os << "  " << p.word_text(p.relators[i]) << "\n";
  }
  return os.str();
}

inline constexpr std::size_t default_max_cosets = 200000;
inline constexpr std::size_t default_presentation_order = 64;

/// Flag value if given, else QUADMOD_MAX_COSETS, else the default.
inline std::size_t resolve_coset_cap(std::optional<std::size_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("QUADMOD_MAX_COSETS")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return default_max_cosets;
}

enum class EnumerationVerdict { Finite, Unbounded };

inline const char* to_string(EnumerationVerdict v) {
  return v == EnumerationVerdict::Finite ? "Finite" : "Unbounded";
}

struct PresentedGroup {
  EnumerationVerdict verdict = EnumerationVerdict::Unbounded;
  GroupPtr group;  // set when Finite
  std::vector<Elem> generator_images;
  /// Shortest-path word for each element, read off the coset table.
  std::vector<Word> element_words;
  std::size_t cosets_defined = 0;
};

namespace detail {

class CosetTable {
 public:
  CosetTable(std::size_t gens, std::size_t cap) : cols_(2 * gens), cap_(cap) { add_row(); }

  bool overflow() const { return overflow_; }
  std::size_t defined() const { return parent_.size(); }
  bool live(std::size_t c) const { return parent_[c] == c; }
  std::int64_t at(std::size_t c, std::size_t x) const { return table_[c * cols_ + x]; }

  static std::size_t column(std::int32_t l) {
    return l > 0 ? 2 * static_cast<std::size_t>(l - 1) : 2 * static_cast<std::size_t>(-l - 1) + 1;
  }
  static std::size_t inverse_column(std::size_t x) { return x ^ 1u; }

  void define(std::size_t c, std::size_t x) {
    if (parent_.size() >= cap_) {
      overflow_ = true;
      return;
    }
    const auto n = add_row();
    set(c, x, n);
    set(n, inverse_column(x), c);
  }

  void scan_and_fill(std::size_t c, const Word& w) {
    std::size_t f = c, b = c;
    std::size_t i = 0;
    std::size_t j = w.size();  // half-open: letters [i, j) remain
    while (true) {
      while (i < j && at(f, column(w[i])) >= 0) f = static_cast<std::size_t>(at(f, column(w[i++])));
      if (i == j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j > i && at(b, inverse_column(column(w[j - 1]))) >= 0)
        b = static_cast<std::size_t>(at(b, inverse_column(column(w[--j]))));
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        set(f, column(w[i]), b);
        set(b, inverse_column(column(w[i])), f);
        return;
      }
      define(f, column(w[i]));
      if (overflow_) return;
    }
  }

  void fill_row(std::size_t c) {
    for (std::size_t x = 0; x < cols_ && live(c) && !overflow_; ++x)
      if (at(c, x) < 0) define(c, x);
  }

 private:
  std::size_t add_row() {
    const auto n = parent_.size();
    parent_.push_back(n);
    table_.resize(table_.size() + cols_, -1);
    return n;
  }
  void set(std::size_t c, std::size_t x, std::size_t v) {
    table_[c * cols_ + x] = static_cast<std::int64_t>(v);
  }
  void unset(std::size_t c, std::size_t x) { table_[c * cols_ + x] = -1; }

  std::size_t rep(std::size_t c) {
    std::size_t r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      const auto next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  void merge(std::size_t a, std::size_t b, std::vector<std::size_t>& queue) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    queue.push_back(b);
  }

  void coincidence(std::size_t a, std::size_t b) {
    std::vector<std::size_t> queue;
    merge(a, b, queue);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const auto e = queue[i];
      for (std::size_t x = 0; x < cols_; ++x) {
        if (at(e, x) < 0) continue;
        const auto f = static_cast<std::size_t>(at(e, x));
        unset(f, inverse_column(x));
        const auto e1 = rep(e);
        const auto f1 = rep(f);
        if (at(e1, x) >= 0) {
          merge(f1, static_cast<std::size_t>(at(e1, x)), queue);
        } else if (at(f1, inverse_column(x)) >= 0) {
          merge(e1, static_cast<std::size_t>(at(f1, inverse_column(x))), queue);
        } else {
          set(e1, x, f1);
          set(f1, inverse_column(x), e1);
        }
      }
    }
  }

  std::size_t cols_;
  std::size_t cap_;
  bool overflow_ = false;
  std::vector<std::size_t> parent_;
  std::vector<std::int64_t> table_;
};

}  // namespace detail

/// Coset enumeration over the trivial subgroup (HLT strategy with
/// coincidence processing). Hitting `max_cosets` gives an Unbounded verdict;
/// a completed enumeration with more than `max_order` elements throws
/// BoundExceeded. The element numbering is breadth first from the identity,
/// generator columns in order, so the result is canonical.
inline PresentedGroup enumerate_presentation(const Presentation& pres,
                                             std::size_t max_order = default_presentation_order,
                                             std::size_t max_cosets = default_max_cosets) {
  const auto rels = pres.reduced_relators();
  const auto ngens = pres.generator_count();
  detail::CosetTable ct(ngens, std::max<std::size_t>(max_cosets, 1));
  PresentedGroup out;
  for (std::size_t c = 0; c < ct.defined() && !ct.overflow(); ++c) {
    if (!ct.live(c)) continue;
    for (const auto& r : rels) {
      ct.scan_and_fill(c, r);
      if (!ct.live(c) || ct.overflow()) break;
    }
    if (ct.live(c)) ct.fill_row(c);
  }
  out.cosets_defined = ct.defined();
  if (ct.overflow()) return out;

  const auto cols = 2 * ngens;
  std::vector<std::int64_t> number(ct.defined(), -1);
  std::vector<std::size_t> order{0};
  std::vector<Word> words{{}};
  std::vector<std::size_t> parent{0};
  std::vector<std::size_t> via{0};
  number[0] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto c = order[i];
    for (std::size_t x = 0; x < cols; ++x) {
      const auto d = static_cast<std::size_t>(ct.at(c, x));
      if (number[d] >= 0) continue;
      if (order.size() >= max_order)
        throw Error(ErrorKind::BoundExceeded,
                    detail::cat("presented group has more than ", max_order, " elements"),
                    {static_cast<std::int64_t>(max_order)});
      number[d] = static_cast<std::int64_t>(order.size());
      order.push_back(d);
      auto w = words[i];
      w.push_back(x % 2 == 0 ? letter(x / 2) : letter(x / 2, true));
      words.push_back(std::move(w));
      parent.push_back(i);
      via.push_back(x);
    }
  }
  const auto n = order.size();
  // perm[j][i] = element i times element j, i.e. coset i read along word j
  std::vector<std::vector<Elem>> perm(n, std::vector<Elem>(n));
  for (std::size_t i = 0; i < n; ++i) perm[0][i] = static_cast<Elem>(i);
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      const auto mid = order[perm[parent[j]][i]];
      perm[j][i] = static_cast<Elem>(number[static_cast<std::size_t>(ct.at(mid, via[j]))]);
    }
  std::vector<Elem> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = perm[j][i];
  out.group = make_trusted_group(n, std::move(table));
  out.generator_images.resize(ngens);
  for (std::size_t g = 0; g < ngens; ++g)
    out.generator_images[g] = static_cast<Elem>(number[static_cast<std::size_t>(ct.at(0, 2 * g))]);
  out.element_words = std::move(words);
  out.verdict = EnumerationVerdict::Finite;
  return out;
}

/// Value of a word under an assignment of generators to group elements.
inline Elem evaluate_word(const FiniteGroup& g, const Word& w, const std::vector<Elem>& images) {
  Elem v = g.identity();
  for (auto l : w) {
    const Elem x = images[static_cast<std::size_t>(std::abs(l) - 1)];
    v = g.mul(v, l > 0 ? x : g.inv(x));
  }
  return v;
}

}  // namespace quadmod
