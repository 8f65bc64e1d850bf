#pragma once

#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fusys/group.hpp"

namespace fusys {

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

struct PermGroupSpec {
  std::vector<Permutation> gens;
  int degree = 1;
};

inline Permutation cycle_perm(int degree, int shift) {
  Permutation p(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) p[static_cast<std::size_t>(i)] = (i + shift) % degree;
  return p;
}

/// Quaternion group: index 4*s + u with sign s in {0,1} and unit u in {1,i,j,k}.
inline int quaternion_mul(int a, int b) {
  static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  int sa = a / 4, ua = a % 4, sb = b / 4, ub = b % 4;
  int s = (sa + sb + sign[ua][ub]) % 2;
  return 4 * s + unit[ua][ub];
}

inline PermGroupSpec regular_quaternion() {
  PermGroupSpec spec{{}, 8};
  for (int g : {1, 2}) {  // i, j generate
    Permutation p(8);
    for (int x = 0; x < 8; ++x) p[static_cast<std::size_t>(x)] = quaternion_mul(g, x);
    spec.gens.push_back(p);
  }
  return spec;
}

inline std::optional<PermGroupSpec> builtin_factor(const std::string& raw) {
  std::string name = trim(raw);
  auto arg = [&](const std::string& prefix) -> std::optional<int> {
    if (name.rfind(prefix, 0) != 0) return std::nullopt;
    std::string rest = trim(name.substr(prefix.size()));
    if (rest.empty()) return std::nullopt;
    for (char c : rest)
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    return std::stoi(rest);
  };
  if (name == "trivial") return PermGroupSpec{{}, 1};
  if (name == "klein4") return PermGroupSpec{{{1, 0, 3, 2}, {2, 3, 0, 1}}, 4};
  if (auto n = arg("cyclic")) {
    if (*n < 1) return std::nullopt;
    return PermGroupSpec{{cycle_perm(*n, 1)}, *n};
  }
  if (auto n = arg("dihedral")) {
    int m = *n;
    if (m < 2 || m % 2) return std::nullopt;
    int k = m / 2;
    if (k == 1) return PermGroupSpec{{{1, 0}}, 2};
    if (k == 2) return PermGroupSpec{{{1, 0, 3, 2}, {2, 3, 0, 1}}, 4};
    Permutation refl(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) refl[static_cast<std::size_t>(i)] = (k - i) % k;
    return PermGroupSpec{{cycle_perm(k, 1), refl}, k};
  }
  if (auto n = arg("quaternion")) {
    if (*n != 8) return std::nullopt;
    return regular_quaternion();
  }
  if (auto n = arg("symmetric")) {
    int k = *n;
    if (k < 1) return std::nullopt;
    if (k == 1) return PermGroupSpec{{}, 1};
    Permutation t(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) t[static_cast<std::size_t>(i)] = i;
    std::swap(t[0], t[1]);
    return PermGroupSpec{{cycle_perm(k, 1), t}, k};
  }
  if (auto n = arg("alternating")) {
    int k = *n;
    if (k < 1) return std::nullopt;
    if (k < 3) return PermGroupSpec{{}, k};
    std::vector<Permutation> gens;
    for (int i = 2; i < k; ++i) {  // 3-cycles (0 1 i)
      Permutation c(static_cast<std::size_t>(k));
      for (int x = 0; x < k; ++x) c[static_cast<std::size_t>(x)] = x;
      c[0] = 1;
      c[1] = i;
      c[static_cast<std::size_t>(i)] = 0;
      gens.push_back(c);
    }
    return PermGroupSpec{gens, k};
  }
  return std::nullopt;
}

}  // namespace detail

/// Group input: a Cayley table, permutation generators, or a builtin name.
struct GroupDescription {
  struct Cayley {
    std::vector<std::vector<int>> table;
  };
  struct Permutations {
    std::vector<Permutation> generators;
    int degree = 0;
  };
  struct Builtin {
    std::string name;
  };
  std::variant<Cayley, Permutations, Builtin> spec;
  std::string label;
  /// Canonical text identifying the description (filled by parsers, used for
  /// serialization and group interning).
  std::string descriptor;
};

/// Builtin names: "trivial", "klein4", "cyclic n", "dihedral 2n",
/// "quaternion 8", "symmetric n", "alternating n", and direct products
/// joined by " x " (e.g. "symmetric 4 x cyclic 3").
inline GroupPtr builtin_group(const std::string& name, std::size_t max_order = kDefaultMaxOrder,
                              std::string descriptor = {}, std::string label = {}) {
  std::vector<detail::PermGroupSpec> factors;
  std::size_t start = 0;
  while (true) {
    std::size_t at = name.find(" x ", start);
    std::string part = name.substr(start, at == std::string::npos ? std::string::npos : at - start);
    auto f = detail::builtin_factor(part);
    if (!f) throw GroupError("unknown builtin group '" + detail::trim(part) + "'");
    factors.push_back(std::move(*f));
    if (at == std::string::npos) break;
    start = at + 3;
  }
  int degree = 0;
  for (const auto& f : factors) degree += f.degree;
  std::vector<Permutation> gens;
  int offset = 0;
  for (const auto& f : factors) {
    for (const auto& g : f.gens) {
      Permutation p(static_cast<std::size_t>(degree));
      for (int i = 0; i < degree; ++i) p[static_cast<std::size_t>(i)] = i;
      for (int i = 0; i < f.degree; ++i) p[static_cast<std::size_t>(offset + i)] = offset + g[static_cast<std::size_t>(i)];
      gens.push_back(std::move(p));
    }
    offset += f.degree;
  }
  if (descriptor.empty()) descriptor = "{\"builtin\":\"" + detail::trim(name) + "\"}";
  if (label.empty()) label = detail::trim(name);
  return FiniteGroup::from_permutations(gens, degree, std::move(label), max_order, std::move(descriptor));
}

inline GroupPtr build_group(const GroupDescription& desc, std::size_t max_order = kDefaultMaxOrder) {
  return std::visit(
      [&](const auto& s) -> GroupPtr {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GroupDescription::Builtin>) {
          return builtin_group(s.name, max_order, desc.descriptor, desc.label);
        } else if constexpr (std::is_same_v<T, GroupDescription::Permutations>) {
          return FiniteGroup::from_permutations(s.generators, s.degree, desc.label.empty() ? "perm" : desc.label,
                                                max_order, desc.descriptor);
        } else {
          const std::size_t n = s.table.size();
          if (n > max_order) throw GroupError("group order exceeds cap " + std::to_string(max_order));
          std::vector<int> flat;
          flat.reserve(n * n);
          for (const auto& row : s.table) {
            if (row.size() != n) throw GroupError("multiplication table is not square");
            flat.insert(flat.end(), row.begin(), row.end());
          }
          return FiniteGroup::from_table(std::move(flat), n, desc.label.empty() ? "cayley" : desc.label,
                                         desc.descriptor);
        }
      },
      desc.spec);
}

}  // namespace fusys
