#pragma once

#include <cctype>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "fusys/builtin.hpp"
#include "fusys/burnside.hpp"
#include "fusys/error.hpp"
#include "fusys/linalg.hpp"

namespace fusys {

using json = nlohmann::json;

/// Parses "(1 2 3)(4 5)" (points 1..degree, spaces or commas) into images on
/// 0..degree-1. "()" is the identity.
inline Permutation parse_cycles(const std::string& text, int degree) {
  Permutation p(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) p[static_cast<std::size_t>(i)] = i;
  std::vector<bool> used(static_cast<std::size_t>(degree), false);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
  };
  skip();
  while (i < text.size()) {
    if (text[i] != '(') throw ValidationError("cycle notation: expected '(' in \"" + text + "\"");
    ++i;
    std::vector<int> cycle;
    while (true) {
      skip();
      if (i >= text.size()) throw ValidationError("cycle notation: unterminated cycle in \"" + text + "\"");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw ValidationError("cycle notation: unexpected character in \"" + text + "\"");
      int v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        if (v > degree) break;
        ++i;
      }
      if (v < 1 || v > degree) throw ValidationError("cycle notation: point out of range in \"" + text + "\"");
      if (used[static_cast<std::size_t>(v - 1)])
        throw ValidationError("cycle notation: repeated point in \"" + text + "\"");
      used[static_cast<std::size_t>(v - 1)] = true;
      cycle.push_back(v - 1);
    }
    for (std::size_t k = 0; k < cycle.size(); ++k)
      p[static_cast<std::size_t>(cycle[k])] = cycle[(k + 1) % cycle.size()];
    skip();
  }
  return p;
}

namespace detail {

inline std::vector<int> int_list(const json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError(what + ": expected an array of integers");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ValidationError(what + ": expected an array of integers");
    out.push_back(v.get<int>());
  }
  return out;
}

inline Permutation permutation_from_json(const json& j, int degree) {
  if (j.is_string()) return parse_cycles(j.get<std::string>(), degree);
  // image arrays use points 1..degree
  auto img = int_list(j, "permutation");
  if (static_cast<int>(img.size()) != degree) throw GroupError("permutation has wrong degree");
  for (int& v : img) --v;
  return img;
}

}  // namespace detail

/// Reads a group description: exactly one of "cayley", "permutations" (with
/// "degree") or "builtin", plus an optional "label".
inline GroupDescription parse_group_description(const json& j) {
  if (!j.is_object()) throw ValidationError("group description must be a JSON object");
  int kinds = static_cast<int>(j.contains("cayley")) + static_cast<int>(j.contains("permutations")) +
              static_cast<int>(j.contains("builtin"));
  if (kinds != 1) throw ValidationError("group description needs exactly one of cayley, permutations, builtin");
  for (const auto& [key, v] : j.items())
    if (key != "cayley" && key != "permutations" && key != "builtin" && key != "degree" && key != "label")
      throw ValidationError("group description: unknown key \"" + key + "\"");
  GroupDescription d;
  json canon = json::object();
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw ValidationError("group label must be a string");
    d.label = j["label"].get<std::string>();
    canon["label"] = d.label;
  }
  if (j.contains("builtin")) {
    if (!j["builtin"].is_string()) throw ValidationError("builtin group name must be a string");
    d.spec = GroupDescription::Builtin{detail::trim(j["builtin"].get<std::string>())};
    canon["builtin"] = std::get<GroupDescription::Builtin>(d.spec).name;
  } else if (j.contains("permutations")) {
    if (!j.contains("degree") || !j["degree"].is_number_integer())
      throw ValidationError("permutation group needs an integer \"degree\"");
    GroupDescription::Permutations ps;
    ps.degree = j["degree"].get<int>();
    if (ps.degree <= 0) throw GroupError("permutation degree must be positive");
    if (!j["permutations"].is_array()) throw ValidationError("\"permutations\" must be an array");
    json gens = json::array();
    for (const auto& g : j["permutations"]) {
      ps.generators.push_back(detail::permutation_from_json(g, ps.degree));
      json img = json::array();
      for (int v : ps.generators.back()) img.push_back(v + 1);
      gens.push_back(img);
    }
    canon["permutations"] = gens;
    canon["degree"] = ps.degree;
    d.spec = std::move(ps);
  } else {
    if (!j["cayley"].is_array()) throw ValidationError("\"cayley\" must be an array of rows");
    GroupDescription::Cayley c;
    for (const auto& row : j["cayley"]) c.table.push_back(detail::int_list(row, "cayley row"));
    canon["cayley"] = j["cayley"];
    d.spec = std::move(c);
  }
  d.descriptor = canon.dump();
  return d;
}

/// Process-wide interning of groups by descriptor, so that two files naming
/// the same group produce elements of the same module.
class GroupRegistry {
 public:
  static GroupRegistry& instance() {
    static GroupRegistry r;
    return r;
  }

  GroupPtr get(const GroupDescription& d, std::size_t max_order = kDefaultMaxOrder) {
    {
      std::lock_guard lock(mutex_);
      auto it = groups_.find(d.descriptor);
      if (it != groups_.end()) {
        if (static_cast<std::size_t>(it->second->order()) > max_order)
          throw GroupError("group order exceeds cap " + std::to_string(max_order));
        return it->second;
      }
    }
    GroupPtr g = build_group(d, max_order);
    std::lock_guard lock(mutex_);
    return groups_.emplace(d.descriptor, g).first->second;
  }

  GroupPtr get(const json& j, std::size_t max_order = kDefaultMaxOrder) {
    return get(parse_group_description(j), max_order);
  }

 private:
  std::mutex mutex_;
  std::map<std::string, GroupPtr> groups_;
};

/// The description a group was built from, or its Cayley table when it was
/// built directly.
inline json group_to_json(const FiniteGroup& g) {
  if (!g.descriptor().empty()) return json::parse(g.descriptor());
  json rows = json::array();
  for (int a = 0; a < g.order(); ++a) {
    json row = json::array();
    for (int b = 0; b < g.order(); ++b) row.push_back(g.mul(a, b));
    rows.push_back(row);
  }
  json out{{"cayley", rows}};
  if (!g.label().empty()) out["label"] = g.label();
  return out;
}

inline json integer_to_json(const Integer& z) {
  if (fits_int64(z)) return json(static_cast<std::int64_t>(z.get_si()));
  return json(z.get_str());
}

inline Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    Integer z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw ValidationError("malformed integer \"" + j.get<std::string>() + "\"");
    return z;
  }
  throw ValidationError("expected an integer");
}

inline json rational_to_json(const Rational& q) {
  return json{{"num", integer_to_json(q.get_num())}, {"den", integer_to_json(q.get_den())}};
}

inline Rational rational_from_json(const json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den")) throw ValidationError("rational must be {num, den}");
  Integer den = integer_from_json(j["den"]);
  if (den == 0) throw ValidationError("rational with zero denominator");
  Rational q(integer_from_json(j["num"]), den);
  q.canonicalize();
  return q;
}

inline json subgroup_to_json(const Subgroup& s) {
  return json{{"label", s.group().label()}, {"group", group_to_json(s.group())}, {"elements", s.elements()}};
}

inline Subgroup subgroup_from_json(const json& j, std::size_t max_order = kDefaultMaxOrder) {
  if (!j.is_object() || !j.contains("group")) throw ValidationError("subgroup needs a \"group\" description");
  GroupPtr g = GroupRegistry::instance().get(j["group"], max_order);
  if (!j.contains("elements")) return Subgroup::whole(g);
  return Subgroup(g, detail::int_list(j["elements"], "subgroup elements"));
}

inline json element_to_json(const Element& x) {
  const Context& c = x.context();
  json terms = json::array();
  for (const auto& [pair, coeff] : x.terms()) {
    json t{{"K", pair.source.elements()}, {"phi", pair.images}};
    t["num"] = integer_to_json(coeff.get_num());
    t["den"] = integer_to_json(coeff.get_den());
    terms.push_back(std::move(t));
  }
  return json{{"context", {{"G", subgroup_to_json(c.source)}, {"H", subgroup_to_json(c.target)}, {"p", c.p}}},
              {"terms", terms}};
}

inline Element element_from_json(const json& j, std::size_t max_order = kDefaultMaxOrder) {
  if (!j.is_object() || !j.contains("context") || !j.contains("terms"))
    throw ValidationError("element needs \"context\" and \"terms\"");
  const json& c = j["context"];
  if (!c.contains("G") || !c.contains("H") || !c.contains("p") || !c["p"].is_number_integer())
    throw ValidationError("element context needs G, H and p");
  Subgroup g = subgroup_from_json(c["G"], max_order);
  Subgroup h = subgroup_from_json(c["H"], max_order);
  int p = c["p"].get<int>();
  if (!is_prime(p)) throw ValidationError("p = " + std::to_string(p) + " is not prime");
  Element x(Context{g, h, p});
  if (!j["terms"].is_array()) throw ValidationError("\"terms\" must be an array");
  for (const auto& t : j["terms"]) {
    if (!t.contains("K") || !t.contains("phi")) throw ValidationError("term needs K and phi");
    Subgroup k(g.group_ptr(), detail::int_list(t["K"], "K"));
    Hom pair{k, detail::int_list(t["phi"], "phi")};
    try {
      validate_pair(g, h, pair);
    } catch (const std::invalid_argument& e) {
      throw ValidationError(e.what());
    }
    Rational q = rational_from_json(t);
    if (!is_p_local(q, p)) throw ValidationError("coefficient " + q.get_str() + " is not p-local");
    x.add(pair, q);
  }
  return x;
}

/// Short label for a basis pair: source elements and images by index.
inline std::string pair_label(const Hom& pair) {
  std::string s = "K=[";
  for (std::size_t i = 0; i < pair.source.elements().size(); ++i)
    s += (i ? "," : "") + std::to_string(pair.source.elements()[i]);
  s += "] phi=[";
  for (std::size_t i = 0; i < pair.images.size(); ++i) s += (i ? "," : "") + std::to_string(pair.images[i]);
  return s + "]";
}

inline json matrix_to_json(const Matrix& m, const std::vector<std::string>& row_labels,
                           const std::vector<std::string>& col_labels) {
  if (row_labels.size() != m.rows() || col_labels.size() != m.cols())
    throw std::invalid_argument("matrix_to_json: label count mismatch");
  json data = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rational_to_json(m(r, c)));
    data.push_back(std::move(row));
  }
  return json{{"rows", row_labels}, {"cols", col_labels}, {"data", data}};
}

inline Matrix matrix_from_json(const json& j) {
  if (!j.contains("data") || !j["data"].is_array()) throw ValidationError("matrix needs \"data\"");
  Matrix m;
  for (const auto& row : j["data"]) {
    std::vector<Rational> r;
    for (const auto& v : row) r.push_back(rational_from_json(v));
    m.append_row(r);
  }
  if (j.contains("cols") && m.rows() == 0) m = Matrix(0, j["cols"].size());
  return m;
}

inline json hom_to_json(const Hom& h) { return json{{"source", h.source.elements()}, {"images", h.images}}; }

}  // namespace fusys
