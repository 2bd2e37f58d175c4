#pragma once

#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "quadmod/catalog.hpp"
#include "quadmod/nil2.hpp"
#include "quadmod/quadratic.hpp"

namespace quadmod {

using Json = nlohmann::json;

inline constexpr const char* bundle_format_tag = "quadmod-bundle";
inline constexpr const char* bundle_version = "1";

/// Quadratic module data as read; verification is left to the caller.
struct QuadObject {
  QuadCandidate candidate;
};

struct MorphismObject {
  std::string source;
  std::string target;
  GroupHom f0;
  GroupHom f1;
  GroupHom f2;
};

using BundleObject =
    std::variant<GroupPtr, GroupHom, GroupAction, PreCrossedModule, QuadObject, MorphismObject>;

inline const char* object_type_name(const BundleObject& o) {
  constexpr const char* names[] = {"group", "hom", "action", "precrossed", "quadmod", "qmorphism"};
  return names[o.index()];
}

struct Bundle {
  std::string version = bundle_version;
  std::map<std::string, std::string> metadata;
  std::map<std::string, BundleObject> objects;
  /// Definitions as written, keyed like `objects`.
  std::map<std::string, Json> source;

  bool contains(const std::string& name) const { return objects.count(name) != 0; }

  template <class T>
  const T& get(const std::string& name) const {
    auto it = objects.find(name);
    if (it == objects.end())
      throw Error(ErrorKind::UnresolvedReference, "no object named \"" + name + "\"");
    if (auto* p = std::get_if<T>(&it->second)) return *p;
    throw Error(ErrorKind::TypeMismatch,
                "object \"" + name + "\" is a " + object_type_name(it->second));
  }

  /// Names of objects of one type, in key order.
  template <class T>
  std::vector<std::string> names_of() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : objects)
      if (std::holds_alternative<T>(v)) out.push_back(k);
    return out;
  }
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] inline void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::SyntaxError, path + ": " + what);
}

inline const Json& field(const Json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(path, std::string("missing field \"") + key + "\"");
  return *it;
}

inline std::string string_field(const Json& obj, const char* key, const std::string& path) {
  const auto& v = field(obj, key, path);
  if (!v.is_string()) schema_error(path + "." + key, "expected a string");
  return v.get<std::string>();
}

inline std::int64_t int_value(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) schema_error(path, "expected an integer");
  return v.get<std::int64_t>();
}

inline std::vector<std::int64_t> int_list(const Json& v, const std::string& path) {
  if (!v.is_array()) schema_error(path, "expected an array of integers");
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(int_value(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<Elem> elem_list(const Json& v, const std::string& path, std::size_t bound) {
  std::vector<Elem> out;
  std::size_t i = 0;
  for (auto x : int_list(v, path)) {
    if (x < 0 || static_cast<std::size_t>(x) >= bound)
      throw Error(ErrorKind::InvalidInput,
                  detail::cat(path, "[", i, "] = ", x, " is not an element index below ", bound),
                  {static_cast<std::int64_t>(i), x});
    out.push_back(static_cast<Elem>(x));
    ++i;
  }
  return out;
}

inline GroupPtr builtin_group(const Json& obj, const std::string& path) {
  const auto kind = string_field(obj, "builtin", path);
  auto n = [&] {
    const auto v = int_value(field(obj, "n", path), path + ".n");
    if (v < 1 || v > 64) schema_error(path + ".n", "out of range 1..64");
    return static_cast<std::size_t>(v);
  };
  if (kind == "trivial") return trivial_group();
  if (kind == "cyclic") return cyclic(n());
  if (kind == "dihedral") return dihedral(n());
  if (kind == "symmetric") {
    const auto k = n();
    if (k > 5) schema_error(path + ".n", "symmetric groups above degree 5 are not supported");
    return symmetric(k);
  }
  if (kind == "alternating") {
    const auto k = n();
    if (k > 5) schema_error(path + ".n", "alternating groups above degree 5 are not supported");
    return alternating(k);
  }
  if (kind == "quaternion") return quaternion();
  if (kind == "abelian") return abelian_group(int_list(field(obj, "moduli", path), path + ".moduli"));
  schema_error(path + ".builtin", "unknown builtin \"" + kind + "\"");
}

class Resolver {
 public:
  Resolver(const Json& objects, Bundle& out) : objects_(objects), out_(out) {}

  void resolve_all() {
    for (auto it = objects_.begin(); it != objects_.end(); ++it) resolve(it.key());
  }

 private:
  const BundleObject& resolve(const std::string& name) {
    if (auto it = out_.objects.find(name); it != out_.objects.end()) return it->second;
    auto src = objects_.find(name);
    if (src == objects_.end())
      throw Error(ErrorKind::UnresolvedReference, "no object named \"" + name + "\"");
    if (!active_.insert(name).second)
      throw Error(ErrorKind::SyntaxError, "reference cycle through \"" + name + "\"");
    const auto path = "objects." + name;
    if (!src->is_object()) schema_error(path, "expected an object");
    auto obj = build(*src, path);
    active_.erase(name);
    out_.source.emplace(name, *src);
    return out_.objects.emplace(name, std::move(obj)).first->second;
  }

  template <class T>
  const T& ref(const Json& obj, const char* key, const std::string& path) {
    const auto name = string_field(obj, key, path);
    const auto& o = resolve(name);
    if (auto* p = std::get_if<T>(&o)) return *p;
    throw Error(ErrorKind::TypeMismatch, path + "." + key + ": \"" + name + "\" is a " +
                                             object_type_name(o));
  }

  static void same(const GroupPtr& a, const GroupPtr& b, const std::string& what) {
    if (a != b) throw Error(ErrorKind::TypeMismatch, what);
  }

  BundleObject build(const Json& obj, const std::string& path) {
    const auto type = string_field(obj, "type", path);
    if (type == "group") {
      if (obj.contains("builtin")) return builtin_group(obj, path);
      const auto& t = field(obj, "table", path);
      if (!t.is_array()) schema_error(path + ".table", "expected an array of rows");
      std::vector<std::vector<std::int64_t>> rows;
      for (std::size_t i = 0; i < t.size(); ++i)
        rows.push_back(int_list(t[i], path + ".table[" + std::to_string(i) + "]"));
      std::vector<std::string> labels;
      if (auto it = obj.find("labels"); it != obj.end()) {
        if (!it->is_array()) schema_error(path + ".labels", "expected an array of strings");
        for (const auto& l : *it) {
          if (!l.is_string()) schema_error(path + ".labels", "expected an array of strings");
          labels.push_back(l.get<std::string>());
        }
      }
      return build_group(rows, std::move(labels));
    }
    if (type == "hom") {
      const auto& s = ref<GroupPtr>(obj, "source", path);
      const auto& t = ref<GroupPtr>(obj, "target", path);
      return GroupHom(s, t, elem_list(field(obj, "map", path), path + ".map", t->order()));
    }
    if (type == "action") {
      const auto& q = ref<GroupPtr>(obj, "actor", path);
      const auto& m = ref<GroupPtr>(obj, "carrier", path);
      const auto& rows = field(obj, "table", path);
      if (!rows.is_array() || rows.size() != m->order())
        schema_error(path + ".table", detail::cat("expected ", m->order(), " rows, one per carrier element"));
      std::vector<Elem> table;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto rp = path + ".table[" + std::to_string(i) + "]";
        auto row = elem_list(rows[i], rp, m->order());
        if (row.size() != q->order()) schema_error(rp, detail::cat("expected ", q->order(), " entries"));
        table.insert(table.end(), row.begin(), row.end());
      }
      return GroupAction(q, m, std::move(table));
    }
    if (type == "precrossed") {
      const auto& d = ref<GroupHom>(obj, "boundary", path);
      const auto& a = ref<GroupAction>(obj, "action", path);
      same(d.source(), a.carrier(), path + ": boundary source is not the acted-on group");
      same(d.target(), a.actor(), path + ": boundary target is not the acting group");
      return PreCrossedModule(d, a);
    }
    if (type == "quadmod") {
      const auto& c0 = ref<GroupPtr>(obj, "c0", path);
      const auto& c1 = ref<GroupPtr>(obj, "c1", path);
      const auto& c2 = ref<GroupPtr>(obj, "c2", path);
      const auto& d1 = ref<GroupHom>(obj, "d1", path);
      const auto& d2 = ref<GroupHom>(obj, "d2", path);
      const auto& a1 = ref<GroupAction>(obj, "act1", path);
      const auto& a2 = ref<GroupAction>(obj, "act2", path);
      same(d1.source(), c1, path + ": d1 does not start at c1");
      same(d1.target(), c0, path + ": d1 does not end at c0");
      same(d2.source(), c2, path + ": d2 does not start at c2");
      same(d2.target(), c1, path + ": d2 does not end at c1");
      same(a1.actor(), c0, path + ": act1 is not an action of c0");
      same(a1.carrier(), c1, path + ": act1 does not act on c1");
      same(a2.actor(), c0, path + ": act2 is not an action of c0");
      same(a2.carrier(), c2, path + ": act2 does not act on c2");
      auto omega = elem_list(field(obj, "omega", path), path + ".omega", c2->order());
      return QuadObject{QuadCandidate{d1, d2, a1, a2, std::move(omega)}};
    }
    if (type == "qmorphism") {
      const auto src = string_field(obj, "source", path);
      const auto dst = string_field(obj, "target", path);
      const auto& x = ref<QuadObject>(obj, "source", path).candidate;
      const auto& y = ref<QuadObject>(obj, "target", path).candidate;
      const auto& f0 = ref<GroupHom>(obj, "f0", path);
      const auto& f1 = ref<GroupHom>(obj, "f1", path);
      const auto& f2 = ref<GroupHom>(obj, "f2", path);
      same(f0.source(), x.C0(), path + ": f0 does not start at the source C0");
      same(f0.target(), y.C0(), path + ": f0 does not end at the target C0");
      same(f1.source(), x.C1(), path + ": f1 does not start at the source C1");
      same(f1.target(), y.C1(), path + ": f1 does not end at the target C1");
      same(f2.source(), x.C2(), path + ": f2 does not start at the source C2");
      same(f2.target(), y.C2(), path + ": f2 does not end at the target C2");
      return MorphismObject{src, dst, f0, f1, f2};
    }
    schema_error(path + ".type", "unknown object type \"" + type + "\"");
  }

  const Json& objects_;
  Bundle& out_;
  std::set<std::string> active_;
};

}  // namespace detail

/// Parses and resolves a bundle. JSON syntax errors carry line and column
/// (witness {line, column}); schema errors name the offending path.
inline Bundle parse_bundle_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const auto [line, col] = detail::line_column(text, e.byte);
    throw Error(ErrorKind::SyntaxError, detail::cat("line ", line, ", column ", col, ": invalid JSON"),
                {static_cast<std::int64_t>(line), static_cast<std::int64_t>(col)});
  }
  if (!doc.is_object()) detail::schema_error("$", "expected an object");
  if (auto it = doc.find("format"); it != doc.end() && *it != bundle_format_tag)
    detail::schema_error("format", "expected \"quadmod-bundle\"");
  Bundle b;
  b.version = detail::string_field(doc, "version", "$");
  if (b.version != bundle_version)
    detail::schema_error("version", "unsupported version \"" + b.version + "\"");
  if (auto it = doc.find("metadata"); it != doc.end()) {
    if (!it->is_object()) detail::schema_error("metadata", "expected an object of strings");
    for (auto m = it->begin(); m != it->end(); ++m) {
      if (!m->is_string()) detail::schema_error("metadata." + m.key(), "expected a string");
      b.metadata[m.key()] = m->get<std::string>();
    }
  }
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (it.key() != "format" && it.key() != "version" && it.key() != "metadata" &&
        it.key() != "objects")
      detail::schema_error(it.key(), "unknown top-level field");
  if (auto it = doc.find("objects"); it != doc.end()) {
    if (!it->is_object()) detail::schema_error("objects", "expected an object");
    detail::Resolver(*it, b).resolve_all();
  }
  return b;
}

inline Bundle parse_bundle(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_bundle_text(text);
}

inline Bundle parse_bundle_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::SyntaxError, "cannot read \"" + path + "\"");
  return parse_bundle(in);
}

/// Canonical text: sorted keys, two-space indent, arrays of scalars on one
/// line, trailing newline.
inline void write_canonical(std::ostream& os, const Json& v, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const std::string inner(static_cast<std::size_t>(indent + 2), ' ');
  if (v.is_object()) {
    if (v.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    bool first = true;
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (!first) os << ",\n";
      first = false;
      os << inner << Json(it.key()).dump() << ": ";
      write_canonical(os, *it, indent + 2);
    }
    os << "\n" << pad << "}";
  } else if (v.is_array()) {
    bool flat = true;
    for (const auto& x : v) flat = flat && x.is_primitive();
    if (flat) {
      os << "[";
      for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i].dump();
      os << "]";
      return;
    }
    os << "[\n";
    for (std::size_t i = 0; i < v.size(); ++i) {
      os << inner;
      write_canonical(os, v[i], indent + 2);
      os << (i + 1 < v.size() ? ",\n" : "\n");
    }
    os << pad << "]";
  } else {
    os << v.dump();
  }
}

inline std::string canonical_text(const Json& v) {
  std::ostringstream os;
  write_canonical(os, v);
  os << "\n";
  return os.str();
}

/// Accumulates named objects for output. Groups, homs and actions already
/// registered (by identity) are referenced by their existing name.
class BundleWriter {
 public:
  BundleWriter() = default;

  /// Carries every definition of `b` over verbatim.
  explicit BundleWriter(const Bundle& b) {
    for (const auto& [name, src] : b.source) objects_[name] = src;
    for (const auto& [name, obj] : b.objects) {
      if (auto* g = std::get_if<GroupPtr>(&obj)) groups_.emplace(g->get(), name);
    }
    metadata_ = b.metadata;
  }

  void meta(const std::string& key, const std::string& value) { metadata_[key] = value; }

  std::string group(const std::string& name, const GroupPtr& g) {
    if (auto it = groups_.find(g.get()); it != groups_.end()) return it->second;
    for (const auto& [ptr, existing] : groups_)
      if (*ptr == *g) return existing;
    const auto n = fresh(name);
    Json rows = Json::array();
    for (const auto& r : g->rows()) rows.push_back(r);
    Json obj{{"type", "group"}, {"table", rows}};
    if (!g->labels().empty()) obj["labels"] = g->labels();
    objects_[n] = std::move(obj);
    groups_.emplace(g.get(), n);
    keep_.push_back(g);
    return n;
  }

  std::string hom(const std::string& name, const GroupHom& f) {
    const auto s = group(name + ".source", f.source());
    const auto t = group(name + ".target", f.target());
    Json map = Json::array();
    for (Elem x = 0; x < f.source()->order(); ++x) map.push_back(f(x));
    return put(name, Json{{"type", "hom"}, {"source", s}, {"target", t}, {"map", map}});
  }

  std::string action(const std::string& name, const GroupAction& a) {
    const auto q = group(name + ".actor", a.actor());
    const auto m = group(name + ".carrier", a.carrier());
    Json rows = Json::array();
    for (Elem x = 0; x < a.carrier()->order(); ++x) {
      Json row = Json::array();
      for (Elem g = 0; g < a.actor()->order(); ++g) row.push_back(a(x, g));
      rows.push_back(row);
    }
    return put(name, Json{{"type", "action"}, {"actor", q}, {"carrier", m}, {"table", rows}});
  }

  std::string precrossed(const std::string& name, const PreCrossedModule& p) {
    const auto d = hom(name + ".boundary", p.boundary());
    const auto a = action(name + ".action", p.action());
    return put(name, Json{{"type", "precrossed"}, {"boundary", d}, {"action", a}});
  }

  std::string quadmod(const std::string& name, const QuadCandidate& c) {
    Json obj{{"type", "quadmod"},
             {"c0", group(name + ".c0", c.C0())},
             {"c1", group(name + ".c1", c.C1())},
             {"c2", group(name + ".c2", c.C2())},
             {"d1", hom(name + ".d1", c.d1)},
             {"d2", hom(name + ".d2", c.d2)},
             {"act1", action(name + ".act1", c.act1)},
             {"act2", action(name + ".act2", c.act2)},
             {"omega", c.omega}};
    return put(name, std::move(obj));
  }

  std::string quadmod(const std::string& name, const QuadraticModule& q) {
    return quadmod(name, q.candidate());
  }

  std::string qmorphism(const std::string& name, const std::string& source,
                        const std::string& target, const GroupHom& f0, const GroupHom& f1,
                        const GroupHom& f2) {
    return put(name, Json{{"type", "qmorphism"},
                          {"source", source},
                          {"target", target},
                          {"f0", hom(name + ".f0", f0)},
                          {"f1", hom(name + ".f1", f1)},
                          {"f2", hom(name + ".f2", f2)}});
  }

  Json to_json() const {
    Json meta = Json::object();
    for (const auto& [k, v] : metadata_) meta[k] = v;
    Json objs = Json::object();
    for (const auto& [k, v] : objects_) objs[k] = v;
    return Json{{"format", bundle_format_tag},
                {"version", bundle_version},
                {"metadata", meta},
                {"objects", objs}};
  }

  std::string str() const { return canonical_text(to_json()); }

 private:
  std::string fresh(const std::string& name) {
    if (!objects_.count(name)) return name;
    for (std::size_t k = 2;; ++k) {
      auto n = name + "." + std::to_string(k);
      if (!objects_.count(n)) return n;
    }
  }
  std::string put(const std::string& name, Json obj) {
    for (const auto& [k, v] : objects_)
      if (v == obj) return k;
    const auto n = fresh(name);
    objects_[n] = std::move(obj);
    return n;
  }

  std::map<std::string, Json> objects_;
  std::map<std::string, std::string> metadata_;
  std::map<const FiniteGroup*, std::string> groups_;
  std::vector<GroupPtr> keep_;
};

/// serialize(parse(x)): every definition as written, canonical layout.
inline std::string serialize_bundle(const Bundle& b) { return BundleWriter(b).str(); }

}  // namespace quadmod
