#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fusys/biset.hpp"
#include "fusys/charidem.hpp"
#include "fusys/fusion.hpp"
#include "fusys/mackey.hpp"
#include "fusys/serialize.hpp"

namespace fusys {

inline constexpr const char* kToolName = "fusys";
inline constexpr const char* kToolVersion = "0.3.0";
inline constexpr std::uint64_t kDefaultSeed = 20161;

/// Execution order of the checks; a scenario lists any subset.
inline const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{
      "saturation_oracle", "idempotents",      "stability_triple",   "composition_product",
      "star_identity",     "prop_equivalents", "lemma_normal_case",  "normalizer_support",
      "corollaries",       "conjecture_general", "mackey_stable",    "mackey_corollary"};
  return names;
}

struct RunOptions {
  bool oracle = false;
  std::size_t max_order = kDefaultMaxOrder;
  double check_budget = 0;  // seconds per check, 0 for none
};

struct CheckResult {
  std::string check;
  std::string subject;
  std::string status;  // pass | fail | refused-precondition | evidence
  json expected;
  json actual;
  json witness;
  std::string detail;
  double seconds = 0;

  json to_json() const {
    json j{{"check", check}, {"status", status}, {"actual", actual}};
    if (!subject.empty()) j["subject"] = subject;
    if (!expected.is_null()) j["expected"] = expected;
    if (!witness.is_null()) j["witness"] = witness;
    if (!detail.empty()) j["detail"] = detail;
    return j;
  }
};

struct Report {
  std::string scenario;
  std::string input_hash;
  std::uint64_t seed = kDefaultSeed;
  std::vector<CheckResult> checks;
  std::vector<json> evidence;
  bool internal_error = false;

  bool ok() const {
    if (internal_error) return false;
    return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == "fail"; });
  }

  json to_json() const {
    json rows = json::array();
    for (const auto& c : checks) rows.push_back(c.to_json());
    return json{{"tool", kToolName},   {"version", kToolVersion}, {"scenario", scenario},
                {"input_hash", input_hash}, {"seed", seed},      {"checks", rows},
                {"ok", ok()}};
  }

  std::string text() const {
    std::ostringstream os;
    os << "scenario " << scenario << " (input " << input_hash << ")\n";
    for (const auto& c : checks) {
      os << "  " << c.check;
      if (!c.subject.empty()) os << " [" << c.subject << "]";
      os << ": " << c.status << "  actual=" << c.actual.dump();
      if (!c.expected.is_null()) os << " expected=" << c.expected.dump();
      char buf[32];
      std::snprintf(buf, sizeof buf, "  (%.3fs)", c.seconds);
      os << buf << '\n';
      if (!c.detail.empty()) os << "    " << c.detail << '\n';
    }
    os << "  => " << (ok() ? "ok" : "FAILED") << '\n';
    return os.str();
  }
};

namespace detail {

inline std::string subgroup_name(const Subgroup& s) {
  std::string out = "<";
  const auto& gens = s.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) out += (i ? ", " : "") + s.group().element_name(gens[i]);
  return out + ">";
}

/// Extends generator images to a homomorphism defined on `source`.
inline Hom extend_hom(const Subgroup& source, const std::vector<std::pair<int, int>>& gen_images,
                      const FiniteGroup& target) {
  const FiniteGroup& G = source.group();
  for (auto [s, fs] : gen_images) {
    if (!source.contains(s)) throw ValidationError("generator is not in the source subgroup");
    if (fs < 0 || fs >= target.order()) throw ValidationError("generator image out of range");
  }
  std::vector<int> img(source.order(), -1);
  img[static_cast<std::size_t>(source.position(G.identity()))] = target.identity();
  std::vector<int> queue{G.identity()};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    int x = queue[i];
    int fx = img[static_cast<std::size_t>(source.position(x))];
    for (auto [s, fs] : gen_images) {
      int y = G.mul(x, s);
      int fy = target.mul(fx, fs);
      int& slot = img[static_cast<std::size_t>(source.position(y))];
      if (slot == -1) {
        slot = fy;
        queue.push_back(y);
      } else if (slot != fy) {
        throw ValidationError("generator images do not define a homomorphism");
      }
    }
  }
  if (queue.size() != source.order()) throw ValidationError("map keys do not generate the source subgroup");
  Hom h{source, img};
  for (int a : source.elements())
    for (int b : source.elements())
      if (h(G.mul(a, b)) != target.mul(h(a), h(b))) throw ValidationError("generator images do not define a homomorphism");
  return h;
}

/// A parsed scenario: groups, subgroups and fusion systems, all resolved.
struct Setup {
  json source;
  std::string name;
  int p = 2;
  std::uint64_t seed = kDefaultSeed;
  GroupPtr group;
  Subgroup ambient;
  Subgroup S;
  FusionSystem F;
  std::optional<FusionSystem> H;
  std::optional<FusionSystem> K;
  std::vector<Subgroup> U;
  std::vector<Subgroup> anchors;
  std::vector<std::string> checks;
  json expect = json::object();
  bool oracle = false;
  int samples = 24;
};

class SetupBuilder {
 public:
  SetupBuilder(const json& j, const RunOptions& opts) : j_(j), opts_(opts) {}

  Setup build() {
    if (!j_.is_object()) throw ValidationError("scenario must be a JSON object");
    static const std::vector<std::string> keys{"name", "p",      "ambient", "S",      "H",     "K",
                                               "U",    "anchors", "checks", "expect", "oracle", "seed",
                                               "samples", "description"};
    for (const auto& [k, v] : j_.items())
      if (std::find(keys.begin(), keys.end(), k) == keys.end())
        throw ValidationError("scenario: unknown key \"" + k + "\"");
    Setup s;
    s.source = j_;
    if (!j_.contains("name") || !j_["name"].is_string()) throw ValidationError("scenario needs a string \"name\"");
    s.name = j_["name"].get<std::string>();
    if (!j_.contains("p") || !j_["p"].is_number_integer()) throw ValidationError("scenario needs an integer \"p\"");
    s.p = j_["p"].get<int>();
    if (!is_prime(s.p)) throw ValidationError("p = " + std::to_string(s.p) + " is not prime");
    if (!j_.contains("ambient")) throw ValidationError("scenario needs an \"ambient\" group");
    s.group = GroupRegistry::instance().get(j_["ambient"], opts_.max_order);
    s.ambient = Subgroup::whole(s.group);
    setup_ = &s;
    s.S = j_.contains("S") ? subgroup(j_["S"], "S") : sylow_subgroup(s.ambient, s.p);
    if (!is_p_group_order(static_cast<long>(s.S.order()), s.p))
      throw ValidationError("S is not a " + std::to_string(s.p) + "-group");
    s.F = FusionSystem::from_group(s.ambient, s.S, s.p);
    if (j_.contains("H")) s.H = subsystem(j_["H"], "H");
    if (j_.contains("K")) s.K = subsystem(j_["K"], "K");
    if (j_.contains("U")) {
      if (!j_["U"].is_array()) throw ValidationError("\"U\" must be an array of subgroup specs");
      for (const auto& u : j_["U"]) s.U.push_back(subgroup(u, "U"));
    }
    if (j_.contains("anchors")) {
      if (!j_["anchors"].is_array()) throw ValidationError("\"anchors\" must be an array of group descriptions");
      for (const auto& a : j_["anchors"])
        s.anchors.push_back(Subgroup::whole(GroupRegistry::instance().get(a, opts_.max_order)));
    } else {
      s.anchors.push_back(Subgroup::whole(builtin_group("trivial")));
    }
    if (!j_.contains("checks") || !j_["checks"].is_array()) throw ValidationError("scenario needs a \"checks\" array");
    for (const auto& c : j_["checks"]) {
      if (!c.is_string()) throw ValidationError("check names must be strings");
      auto name = c.get<std::string>();
      const auto& known = known_checks();
      if (std::find(known.begin(), known.end(), name) == known.end())
        throw ValidationError("unknown check \"" + name + "\"");
      s.checks.push_back(name);
    }
    if (j_.contains("expect")) {
      if (!j_["expect"].is_object()) throw ValidationError("\"expect\" must be an object");
      s.expect = j_["expect"];
      for (const auto& [k, v] : s.expect.items())
        if (std::find(s.checks.begin(), s.checks.end(), k) == s.checks.end())
          throw ValidationError("expectation for a check that is not requested: \"" + k + "\"");
    }
    for (const auto& name : s.checks) {
      static const std::vector<std::string> need_hk{"composition_product", "star_identity", "prop_equivalents",
                                                    "lemma_normal_case", "conjecture_general", "mackey_corollary"};
      if (std::find(need_hk.begin(), need_hk.end(), name) != need_hk.end() && (!s.H || !s.K))
        throw ValidationError("check \"" + name + "\" needs subsystems H and K");
      if (name == "normalizer_support" && s.U.empty())
        throw ValidationError("check \"normalizer_support\" needs a nonempty \"U\" list");
    }
    if (j_.contains("oracle")) {
      if (!j_["oracle"].is_boolean()) throw ValidationError("\"oracle\" must be a boolean");
      s.oracle = j_["oracle"].get<bool>();
    }
    s.oracle = s.oracle || opts_.oracle;
    if (j_.contains("seed")) {
      if (!j_["seed"].is_number_unsigned()) throw ValidationError("\"seed\" must be a nonnegative integer");
      s.seed = j_["seed"].get<std::uint64_t>();
    }
    if (j_.contains("samples")) {
      if (!j_["samples"].is_number_unsigned()) throw ValidationError("\"samples\" must be a nonnegative integer");
      s.samples = j_["samples"].get<int>();
    }
    setup_ = nullptr;
    return s;
  }

 private:
  int element(const json& e) const {
    const FiniteGroup& G = *setup_->group;
    if (e.is_number_integer()) {
      int x = e.get<int>();
      if (x < 0 || x >= G.order()) throw ValidationError("element index out of range");
      return x;
    }
    if (!G.has_permutations()) throw ValidationError("cycle notation needs a permutation group");
    int x = G.find_permutation(detail::permutation_from_json(e, G.degree()));
    if (x < 0) throw ValidationError("permutation " + e.dump() + " is not in the ambient group");
    return x;
  }

  Subgroup subgroup(const json& spec, const std::string& what) const {
    Setup& s = *setup_;
    if (spec.is_string()) {
      const auto name = spec.get<std::string>();
      if (name == "auto") return sylow_subgroup(s.ambient, s.p);
      if (name == "G") return s.ambient;
      if (name == "S" && s.S.valid()) return s.S;
      throw ValidationError(what + ": unknown subgroup name \"" + name + "\"");
    }
    if (!spec.is_object()) throw ValidationError(what + ": subgroup spec must be a string or an object");
    if (spec.contains("generated_by")) {
      if (!spec["generated_by"].is_array()) throw ValidationError(what + ": \"generated_by\" must be an array");
      std::vector<int> gens;
      for (const auto& e : spec["generated_by"]) gens.push_back(element(e));
      return Subgroup::generated(s.group, gens);
    }
    if (spec.contains("elements")) return Subgroup(s.group, int_list(spec["elements"], what));
    if (spec.contains("center_of")) return center(subgroup(spec["center_of"], what));
    if (spec.contains("sylow_of")) return sylow_subgroup(subgroup(spec["sylow_of"], what), s.p);
    throw ValidationError(what + ": unrecognized subgroup spec " + spec.dump());
  }

  FusionSystem subsystem(const json& spec, const std::string& what) const {
    Setup& s = *setup_;
    if (spec.is_string() && spec.get<std::string>() == "F") return s.F;
    if (!spec.is_object()) throw ValidationError(what + ": subsystem spec must be \"F\" or an object");
    if (spec.contains("generators")) {
      if (!spec.contains("on")) throw ValidationError(what + ": generator form needs \"on\"");
      Subgroup on = subgroup(spec["on"], what);
      if (!on.is_subgroup_of(s.S)) throw ValidationError(what + ": \"on\" is not a subgroup of S");
      std::vector<Hom> gens;
      for (const auto& g : spec["generators"]) {
        if (!g.contains("source") || !g.contains("map") || !g["map"].is_object())
          throw ValidationError(what + ": generator needs \"source\" and a \"map\" object");
        Subgroup src = subgroup(g["source"], what);
        std::vector<std::pair<int, int>> images;
        for (const auto& [k, v] : g["map"].items()) images.emplace_back(element(json(k)), element(v));
        Hom h = extend_hom(src, images, *s.group);
        if (!h.source.is_subgroup_of(on)) throw ValidationError(what + ": generator source is not inside \"on\"");
        for (int y : h.images)
          if (!on.contains(y)) throw ValidationError(what + ": generator image leaves \"on\"");
        gens.push_back(std::move(h));
      }
      return FusionSystem::closure(on, s.p, gens);
    }
    if (!spec.contains("group")) throw ValidationError(what + ": subsystem spec needs \"group\" or \"generators\"");
    Subgroup g = subgroup(spec["group"], what);
    Subgroup on = spec.contains("on") ? subgroup(spec["on"], what) : sylow_subgroup(g, s.p);
    if (!on.is_subgroup_of(g)) throw ValidationError(what + ": \"on\" is not a subgroup of the realizing group");
    if (!on.is_subgroup_of(s.S)) throw ValidationError(what + ": \"on\" is not a subgroup of S");
    if (!is_p_group_order(static_cast<long>(on.order()), s.p))
      throw ValidationError(what + ": \"on\" is not a " + std::to_string(s.p) + "-group");
    return FusionSystem::from_group(g, on, s.p);
  }

  const json& j_;
  RunOptions opts_;
  Setup* setup_ = nullptr;
};

inline json bool_or_status(bool v) { return json(v); }

/// Stability verdicts (definitional, marks, absorption) on sampled elements
/// of A(S, S); half of the samples are pushed into the stable part first.
inline CheckResult stability_triple(const Setup& s) {
  CheckResult r{"stability_triple", "", "pass", {}, {}, {}, {}, 0};
  std::mt19937_64 rng(s.seed);
  const Element omega = characteristic_idempotent(s.F);
  auto basis = standard_basis(Context{s.S, s.S, s.p}, true);
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  std::uniform_int_distribution<int> coeff(-3, 3);
  int stable_right = 0, stable_left = 0, agree = 0;
  for (int i = 0; i < s.samples; ++i) {
    Element x(Context{s.S, s.S, s.p});
    for (int t = 0; t < 3; ++t) x.add(basis[pick(rng)], coeff(rng));
    const int mode = static_cast<int>(rng() % 4);
    if (mode == 1) x = compose(x, omega);
    if (mode == 2) x = compose(omega, x);
    bool ok = true;
    for (Side side : {Side::right, Side::left}) {
      bool d = stability_check(x, s.F, side, StabilityMethod::definitional, Quantifier::all).ok;
      bool m = stability_check(x, s.F, side, StabilityMethod::marks, Quantifier::all).ok;
      bool a = side == Side::right ? compose(x, omega) == x : compose(omega, x) == x;
      ok = ok && d == m && m == a;
      if (d) ++(side == Side::right ? stable_right : stable_left);
      if (!(d == m && m == a) && r.witness.is_null()) {
        r.witness = element_to_json(x);
        r.detail = std::string(side == Side::right ? "right" : "left") + " verdicts disagree";
      }
    }
    if (ok) ++agree;
  }
  r.actual = json{{"samples", s.samples}, {"agreeing", agree}, {"right_stable", stable_right},
                  {"left_stable", stable_left}};
  r.status = agree == s.samples ? "pass" : "fail";
  return r;
}

inline CheckResult idempotent_check(const Setup& s) {
  CheckResult r{"idempotents", "", "pass", {}, {}, {}, {}, 0};
  Element a = characteristic_idempotent(s.F, IdempotentMethod::linear_solve);
  Element b = characteristic_idempotent(s.F, IdempotentMethod::power_iteration);
  Element c = solve_characteristic_idempotent(s.F, Normalization::f_classes);
  auto rep = verify_characteristic(a, s.F, Quantifier::all);
  bool absorbs = true;
  if (s.F.ambient()) {
    Element omega_g = characteristic_element_from_group(*s.F.ambient(), s.S, s.p);
    absorbs = compose(omega_g, a) == omega_g && compose(a, omega_g) == omega_g;
  }
  r.actual = json{{"methods_agree", a == b && a == c},
                  {"verified", rep.characteristic_idempotent()},
                  {"absorbs_group_element", absorbs},
                  {"terms", a.size()},
                  {"hash", hash_hex(fnv1a(element_text(a)))}};
  bool ok = a == b && a == c && rep.characteristic_idempotent() && absorbs;
  if (!ok) r.witness = json{{"linear_solve", element_to_json(a)}, {"power_iteration", element_to_json(b)}};
  r.status = ok ? "pass" : "fail";
  return r;
}

inline CheckResult mackey_stable_check(const Setup& s, const Subgroup& anchor) {
  CheckResult r{"mackey_stable", "anchor " + anchor.group().label(), "pass", {}, {}, {}, {}, 0};
  MackeyFunctor m(anchor, s.p);
  auto sm = stable_module(m, s.F);  // throws InternalError if the two characterizations differ
  auto tr = transfer_restriction(sm);
  bool tr_res = tr.tr * tr.res == Matrix::identity(sm.rank());
  bool res_tr = tr.res * tr.tr == sm.omega;
  r.actual = json{{"dimension", m.dimension(s.S)}, {"rank", sm.rank()}, {"tr_res_identity", tr_res},
                  {"res_tr_omega", res_tr}};
  r.status = tr_res && res_tr ? "pass" : "fail";
  return r;
}

inline CheckResult biset_oracle_check(const Setup& s) {
  CheckResult r{"biset_oracle", "", "pass", {}, {}, {}, {}, 0};
  // marks of the decomposed group biset against direct fixed-point counts
  ConcreteBiset gb = group_as_biset(s.ambient, s.S, s.S);
  Element x = decompose(gb, s.p);
  const FiniteGroup& G = *s.group;
  std::size_t mark_checks = 0, mark_bad = 0;
  for (const auto& at : standard_basis(Context{s.S, s.S, s.p}, true)) {
    long fixed = 0;
    for (int g : s.ambient.elements()) {
      bool ok = true;
      for (std::size_t i = 0; i < at.source.order() && ok; ++i)
        ok = G.mul(g, at.source.elements()[i]) == G.mul(at.images[i], g);
      if (ok) ++fixed;
    }
    ++mark_checks;
    if (mark(x, at) != Rational(fixed)) ++mark_bad;
  }
  // double coset products against amalgamated bisets on the support of omega
  const Element omega = characteristic_idempotent(s.F);
  std::size_t products = 0, product_bad = 0;
  Context sq{s.S, s.S, s.p};
  for (const auto& [a, ca] : omega.terms())
    for (const auto& [b, cb] : omega.terms()) {
      Element formula = compose(Element::basis(sq, a), Element::basis(sq, b));
      Element sets = decompose(amalgamate(realize(s.S, s.S, a), realize(s.S, s.S, b)), s.p);
      ++products;
      if (!(formula == sets)) {
        ++product_bad;
        if (r.witness.is_null()) r.witness = json{{"left", hom_to_json(a)}, {"right", hom_to_json(b)}};
      }
    }
  r.actual = json{{"marks_checked", mark_checks}, {"marks_mismatched", mark_bad}, {"products_checked", products},
                  {"products_mismatched", product_bad}};
  r.status = mark_bad == 0 && product_bad == 0 ? "pass" : "fail";
  return r;
}

/// Applies an expectation to a check whose natural outcome is `holds`.
inline void settle(CheckResult& r, const Setup& s, bool holds) {
  if (s.expect.contains(r.check)) {
    r.expected = s.expect[r.check];
    if (r.expected.is_boolean()) {
      r.status = holds == r.expected.get<bool>() ? "pass" : "fail";
      return;
    }
    r.status = "fail";
    r.detail = "check ran but the scenario expects " + r.expected.dump();
    return;
  }
  r.status = holds ? "pass" : "fail";
}

inline void refuse(CheckResult& r, const Setup& s, const std::string& why) {
  r.detail = why;
  r.status = "refused-precondition";
  if (s.expect.contains(r.check)) {
    r.expected = s.expect[r.check];
    if (r.expected != json("refused-precondition")) {
      r.status = "fail";
      r.detail = "refused (" + why + ") but the scenario expects " + r.expected.dump();
    }
  }
}

inline std::vector<CheckResult> run_check(const std::string& name, const Setup& s, std::vector<json>& evidence) {
  std::vector<CheckResult> out;
  auto row = [&](std::string subject = {}) {
    return CheckResult{name, std::move(subject), "pass", {}, {}, {}, {}, 0};
  };
  if (name == "saturation_oracle") {
    auto r = row("F");
    auto v = saturation_check(s.F);
    r.actual = v.ok;
    if (!v.ok) {
      r.detail = v.detail;
      if (v.witness) r.witness = hom_to_json(*v.witness);
    }
    settle(r, s, v.ok);
    out.push_back(std::move(r));
  } else if (name == "idempotents") {
    out.push_back(idempotent_check(s));
  } else if (name == "stability_triple") {
    out.push_back(stability_triple(s));
  } else if (name == "composition_product") {
    auto r = row();
    auto v = is_composition_product(s.F, *s.H, *s.K);
    r.actual = v.ok;
    if (!v.ok) {
      r.detail = v.detail;
      if (v.witness) r.witness = hom_to_json(*v.witness);
    }
    settle(r, s, v.ok);
    out.push_back(std::move(r));
  } else if (name == "star_identity") {
    auto r = row();
    if (!(s.H->S() == s.F.S())) {
      refuse(r, s, "H is not a fusion system on S");
    } else {
      auto c = check_star_identity(s.F, *s.H, *s.K);
      r.actual = c.equal;
      if (!c.equal) r.witness = element_to_json(c.difference());
      settle(r, s, c.equal);
    }
    out.push_back(std::move(r));
  } else if (name == "prop_equivalents") {
    auto r = row();
    try {
      auto c = check_prop_equivalents(s.F, *s.H, *s.K);
      r.actual = json{{"star", c.star}, {"cond1", c.cond1}, {"cond2", c.cond2}};
      settle(r, s, c.agree());
    } catch (const PreconditionError& e) {
      refuse(r, s, e.what());
    }
    out.push_back(std::move(r));
  } else if (name == "lemma_normal_case") {
    auto r = row();
    try {
      auto c = check_lemma_normal_case(s.F, *s.H, *s.K);
      r.actual = json{{"cp", c.cp}, {"aut_factor", c.aut_factor}, {"cp_with_normalizer", c.cp_with_normalizer}};
      settle(r, s, c.agree());
    } catch (const PreconditionError& e) {
      refuse(r, s, e.what());
    }
    out.push_back(std::move(r));
  } else if (name == "normalizer_support") {
    for (const auto& u : s.U) {
      auto r = row("U=" + subgroup_name(u));
      if (!u.is_subgroup_of(s.S) || !u.is_normal_in(s.S)) {
        refuse(r, s, "U is not normal in S");
      } else {
        auto c = check_normalizer_support(s.F, u);
        r.actual = json{{"is_normalizer", c.is_normalizer}, {"support_ok", c.support_ok}};
        if (c.witness) r.witness = hom_to_json(*c.witness);
        settle(r, s, c.agree());
      }
      out.push_back(std::move(r));
    }
  } else if (name == "corollaries") {
    auto r = row();
    auto c = check_corollaries(s.ambient, s.p);
    r.actual = json{{"hyperfocal", c.hyperfocal}, {"pprime", c.pprime}, {"T_order", c.t.order()}};
    settle(r, s, c.hyperfocal && c.pprime);
    out.push_back(std::move(r));
  } else if (name == "conjecture_general") {
    auto r = row();
    try {
      auto e = check_conjecture_general(s.F, *s.H, *s.K);
      r.actual = json{{"cp", e.cp}, {"identity", e.identity}, {"lhs_hash", e.lhs_hash}, {"rhs_hash", e.rhs_hash}};
      r.status = "evidence";
      evidence.push_back(json{{"scenario", s.name},
                              {"cp", e.cp},
                              {"identity", e.identity},
                              {"lhs-hash", e.lhs_hash},
                              {"rhs-hash", e.rhs_hash}});
    } catch (const PreconditionError& e) {
      refuse(r, s, e.what());
    }
    out.push_back(std::move(r));
  } else if (name == "mackey_stable") {
    for (const auto& a : s.anchors) out.push_back(mackey_stable_check(s, a));
  } else if (name == "mackey_corollary") {
    for (const auto& a : s.anchors) {
      auto r = row("anchor " + a.group().label());
      try {
        MackeyFunctor m(a, s.p);
        auto c = check_corollary_mackey(m, s.F, *s.H, *s.K);
        r.actual = json{{"equal", c.equal}, {"rows", c.lhs.rows()}, {"cols", c.lhs.cols()}};
        if (!c.equal) {
          std::vector<std::string> rl(c.lhs.rows()), cl(c.lhs.cols());
          for (std::size_t i = 0; i < rl.size(); ++i) rl[i] = "K" + std::to_string(i);
          for (std::size_t i = 0; i < cl.size(); ++i) cl[i] = "H" + std::to_string(i);
          r.witness = matrix_to_json(c.difference(), rl, cl);
        }
        settle(r, s, c.equal);
      } catch (const PreconditionError& e) {
        refuse(r, s, e.what());
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace detail

/// Validates a scenario without running it; throws ValidationError or
/// GroupError on bad input.
inline detail::Setup parse_scenario(const json& j, const RunOptions& opts = {}) {
  return detail::SetupBuilder(j, opts).build();
}

/// Runs the requested checks in dependency order.
inline Report run_scenario(const json& j, const RunOptions& opts = {}) {
  detail::Setup s = parse_scenario(j, opts);
  Report rep;
  rep.scenario = s.name;
  rep.input_hash = hash_hex(fnv1a(j.dump()));
  rep.seed = s.seed;
  std::vector<std::string> order;
  for (const auto& name : known_checks())
    if (std::find(s.checks.begin(), s.checks.end(), name) != s.checks.end()) order.push_back(name);
  if (s.oracle) order.push_back("biset_oracle");
  for (const auto& name : order) {
    auto start = std::chrono::steady_clock::now();
    std::vector<CheckResult> rows =
        name == "biset_oracle" ? std::vector<CheckResult>{detail::biset_oracle_check(s)}
                               : detail::run_check(name, s, rep.evidence);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (auto& r : rows) {
      r.seconds = secs / static_cast<double>(rows.size());
      if (opts.check_budget > 0 && secs > opts.check_budget) {
        r.status = "fail";
        r.detail = "exceeded the per-check time budget";
      }
      rep.checks.push_back(std::move(r));
    }
  }
  return rep;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

struct CatalogEntry {
  std::string name;
  const char* text;
};

/// Runs scenarios on a pool of `jobs` threads; reports come back sorted by
/// scenario name. A scenario that throws yields a report whose single row
/// is a failure carrying the message.
inline std::vector<Report> run_many(const std::vector<json>& scenarios, const RunOptions& opts, unsigned jobs) {
  std::vector<Report> reports(scenarios.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < scenarios.size(); i = next++) {
      try {
        reports[i] = run_scenario(scenarios[i], opts);
      } catch (const std::exception& e) {
        Report r;
        r.scenario = scenarios[i].value("name", "scenario-" + std::to_string(i));
        r.input_hash = hash_hex(fnv1a(scenarios[i].dump()));
        r.internal_error = dynamic_cast<const std::invalid_argument*>(&e) == nullptr;
        r.checks.push_back(CheckResult{"scenario", "", "fail", {}, {}, {}, e.what(), 0});
        reports[i] = std::move(r);
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(scenarios.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::sort(reports.begin(), reports.end(), [](const Report& a, const Report& b) { return a.scenario < b.scenario; });
  return reports;
}

inline json aggregate_json(const std::vector<Report>& reports) {
  json rows = json::array();
  bool ok = true;
  for (const auto& r : reports) {
    rows.push_back(r.to_json());
    ok = ok && r.ok();
  }
  return json{{"tool", kToolName}, {"version", kToolVersion}, {"scenarios", rows}, {"ok", ok}};
}

}  // namespace fusys
