#pragma once

#include <string>
#include <vector>

#include "fusys/scenario.hpp"

namespace fusys {

// The built-in verification suite. The same texts ship as files under
// scenarios/ so that each entry can also be run with `verify`.
inline const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries{
      {"trivial-c2", R"json({
  "name": "trivial-c2",
  "p": 2,
  "ambient": {"builtin": "cyclic 2"},
  "U": ["S"],
  "anchors": [{"builtin": "trivial"}, {"builtin": "cyclic 2"}],
  "checks": ["saturation_oracle", "idempotents", "stability_triple", "normalizer_support", "mackey_stable"]
})json"},
      {"trivial-c4", R"json({
  "name": "trivial-c4",
  "p": 2,
  "ambient": {"builtin": "cyclic 4"},
  "U": ["S"],
  "checks": ["saturation_oracle", "idempotents", "stability_triple", "normalizer_support", "mackey_stable"]
})json"},
      {"trivial-v4", R"json({
  "name": "trivial-v4",
  "p": 2,
  "ambient": {"builtin": "klein4"},
  "U": ["S"],
  "checks": ["saturation_oracle", "idempotents", "stability_triple", "normalizer_support", "mackey_stable"]
})json"},
      {"trivial-q8", R"json({
  "name": "trivial-q8",
  "p": 2,
  "ambient": {"builtin": "quaternion 8"},
  "U": ["S"],
  "checks": ["saturation_oracle", "idempotents", "stability_triple", "normalizer_support", "mackey_stable"]
})json"},
      {"d8-internal", R"json({
  "name": "d8-internal",
  "p": 2,
  "ambient": {"builtin": "dihedral 8"},
  "H": {"group": "S"},
  "K": {"group": {"center_of": "S"}},
  "U": [{"center_of": "S"}, {"generated_by": ["(1 3)(2 4)", "(2 4)"]}, "S"],
  "checks": ["saturation_oracle", "idempotents", "stability_triple", "composition_product", "star_identity",
             "prop_equivalents", "lemma_normal_case", "normalizer_support", "mackey_stable", "mackey_corollary"]
})json"},
      {"s3-c2", R"json({
  "name": "s3-c2",
  "p": 2,
  "ambient": {"builtin": "symmetric 3"},
  "H": "F",
  "K": "F",
  "U": ["S"],
  "checks": ["saturation_oracle", "idempotents", "stability_triple", "composition_product", "star_identity",
             "prop_equivalents", "lemma_normal_case", "normalizer_support", "mackey_stable", "mackey_corollary"]
})json"},
      {"s3-c3", R"json({
  "name": "s3-c3",
  "p": 3,
  "ambient": {"builtin": "symmetric 3"},
  "H": "F",
  "K": "F",
  "U": ["S"],
  "checks": ["saturation_oracle", "idempotents", "stability_triple", "composition_product", "star_identity",
             "prop_equivalents", "lemma_normal_case", "normalizer_support", "mackey_stable", "mackey_corollary"]
})json"},
      {"a4-v4", R"json({
  "name": "a4-v4",
  "p": 2,
  "ambient": {"builtin": "alternating 4"},
  "H": {"group": "S"},
  "K": "F",
  "U": ["S"],
  "checks": ["saturation_oracle", "idempotents", "stability_triple", "composition_product", "star_identity",
             "prop_equivalents", "lemma_normal_case", "normalizer_support", "corollaries", "mackey_stable",
             "mackey_corollary"]
})json"},
      {"s4-d8-a4", R"json({
  "name": "s4-d8-a4",
  "description": "S4 at p = 2: H = F_S(S) on D8, K = F_V(A4) on the normal four-group",
  "p": 2,
  "ambient": {"builtin": "symmetric 4"},
  "S": {"generated_by": ["(1 2 3 4)", "(1 3)"]},
  "H": {"group": "S"},
  "K": {"group": {"generated_by": ["(1 2 3)", "(1 2)(3 4)"]}},
  "U": [{"generated_by": ["(1 2)(3 4)", "(1 3)(2 4)"]}, {"generated_by": ["(1 3)(2 4)"]}, "S"],
  "checks": ["saturation_oracle", "idempotents", "stability_triple", "composition_product", "star_identity",
             "prop_equivalents", "lemma_normal_case", "normalizer_support", "mackey_stable"]
})json"},
      {"s4-d8-v4", R"json({
  "name": "s4-d8-v4",
  "description": "negative fixture: K = F_V(V) is weakly normal but F is not HK",
  "p": 2,
  "ambient": {"builtin": "symmetric 4"},
  "S": {"generated_by": ["(1 2 3 4)", "(1 3)"]},
  "H": {"group": "S"},
  "K": {"group": {"generated_by": ["(1 2)(3 4)", "(1 3)(2 4)"]}},
  "expect": {"composition_product": false, "star_identity": false,
             "prop_equivalents": "refused-precondition", "mackey_corollary": "refused-precondition"},
  "checks": ["composition_product", "star_identity", "prop_equivalents", "lemma_normal_case", "mackey_corollary"]
})json"},
      {"s4-corollary", R"json({
  "name": "s4-corollary",
  "p": 2,
  "ambient": {"builtin": "symmetric 4"},
  "checks": ["corollaries"]
})json"},
      {"s4c3-corollary", R"json({
  "name": "s4c3-corollary",
  "p": 2,
  "ambient": {"builtin": "symmetric 4 x cyclic 3"},
  "checks": ["saturation_oracle", "idempotents", "corollaries"]
})json"},
      {"c4-v4-probe", R"json({
  "name": "c4-v4-probe",
  "description": "general identity with H on a cyclic R = C4 and K on T = V4, S = RT",
  "p": 2,
  "ambient": {"builtin": "symmetric 4"},
  "S": {"generated_by": ["(1 2 3 4)", "(1 3)"]},
  "H": {"group": {"generated_by": ["(1 2 3 4)"]}},
  "K": {"group": {"generated_by": ["(1 2 3)", "(1 2)(3 4)"]}},
  "checks": ["conjecture_general"]
})json"},
      {"s4-mackey", R"json({
  "name": "s4-mackey",
  "p": 2,
  "ambient": {"builtin": "symmetric 4"},
  "S": {"generated_by": ["(1 2 3 4)", "(1 3)"]},
  "H": {"group": "S"},
  "K": {"group": {"generated_by": ["(1 2 3)", "(1 2)(3 4)"]}},
  "anchors": [{"builtin": "trivial"}, {"builtin": "cyclic 2"}],
  "checks": ["mackey_stable", "mackey_corollary"]
})json"},
  };
  return entries;
}

inline std::vector<json> catalog_scenarios() {
  std::vector<json> out;
  for (const auto& e : catalog_entries()) out.push_back(json::parse(e.text));
  return out;
}

}  // namespace fusys
