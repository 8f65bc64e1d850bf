// Acceptance run: one line per criterion, exact arithmetic, wall-clock budget.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "fusys/fusys.hpp"

using namespace fusys;

namespace {

Subgroup whole(const char* name) { return Subgroup::whole(builtin_group(name)); }

Subgroup gen(const Subgroup& g, std::vector<std::vector<int>> perms) {
  std::vector<int> gens;
  for (auto& p : perms) gens.push_back(g.group().find_permutation(p));
  return Subgroup::generated(g.group_ptr(), gens);
}

struct S4 {
  Subgroup g = whole("symmetric 4");
  Subgroup d8 = gen(g, {{1, 2, 3, 0}, {2, 1, 0, 3}});
  Subgroup v4 = gen(g, {{1, 0, 3, 2}, {2, 3, 0, 1}});
  Subgroup z = gen(g, {{2, 3, 0, 1}});
  Subgroup c4 = gen(g, {{1, 2, 3, 0}});
  Subgroup a4 = gen(g, {{1, 2, 0, 3}, {1, 0, 3, 2}});
  FusionSystem f = FusionSystem::from_group(g, d8, 2);
  FusionSystem h = FusionSystem::from_group(d8, d8, 2);
  FusionSystem k = FusionSystem::from_group(a4, v4, 2);
  FusionSystem kv = FusionSystem::from_group(v4, v4, 2);
};

std::vector<detail::Setup> catalog_setups() {
  std::vector<detail::Setup> out;
  for (const auto& j : catalog_scenarios()) out.push_back(parse_scenario(j));
  return out;
}

struct Outcome {
  bool ok = true;
  std::string note;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

bool run(int id, const char* title, double budget, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.note = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (o.ok && secs >= budget) {
    o.ok = false;
    o.note = "over budget";
  }
  std::printf("[%s] %2d %-44s %8.3fs / %4.0fs  %s\n", o.ok ? "PASS" : "FAIL", id, title, secs, budget,
              o.note.c_str());
  std::fflush(stdout);
  return o.ok;
}

std::vector<Subgroup> small_groups() { return {whole("cyclic 2"), whole("klein4"), whole("dihedral 8")}; }

void marks_injective(Outcome& o) {
  for (const auto& s : small_groups()) {
    auto basis = standard_basis(s, s, false);
    Matrix m(basis.size(), basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) m(i, j) = mark_of_pair(s, s, basis[i], basis[j]);
    o.require(rank(m) == basis.size(), s.group().label() + ": mark matrix is singular");
  }
}

void composition_oracle(Outcome& o) {
  for (const auto& s : small_groups()) {
    Context c{s, s, 2};
    auto basis = standard_basis(c, true);
    std::vector<ConcreteBiset> sets;
    for (const auto& b : basis) sets.push_back(realize(s, s, b));
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) {
        Element formula = compose(Element::basis(c, basis[i]), Element::basis(c, basis[j]));
        Element set_level = decompose(amalgamate(sets[i], sets[j]), 2);
        o.require(formula == set_level, s.group().label() + ": products differ at a basis pair");
      }
  }
}

void idempotents(Outcome& o) {
  for (const char* name : {"cyclic 2", "cyclic 4", "klein4", "dihedral 8", "quaternion 8"}) {
    auto s = whole(name);
    auto f = FusionSystem::from_group(s, s, 2);
    o.require(characteristic_idempotent(f) == identity_element(s, 2), std::string(name) + ": omega is not [S,id]");
  }
  auto s3 = whole("symmetric 3");
  auto f3 = FusionSystem::from_group(s3, sylow_subgroup(s3, 2), 2);
  o.require(characteristic_idempotent(f3) == identity_element(f3.S(), 2), "S3: omega is not [C2,id]");
  S4 t;
  auto rep = verify_characteristic(characteristic_idempotent(t.f), t.f, Quantifier::all);
  o.require(rep.characteristic_idempotent() && rep.augmentation_value == 1, "S4: omega fails verification");
  for (const auto& s : catalog_setups()) {
    Element a = solve_characteristic_idempotent(s.F);
    Element b = power_iteration_idempotent(s.F);
    o.require(a == b, s.name + ": linear and power results differ");
    Element big = characteristic_element_from_group(s.ambient, s.S, s.p);
    o.require(compose(big, a) == big, s.name + ": absorption fails");
  }
}

void biconditional(Outcome& o) {
  S4 t;
  o.require(is_composition_product(t.f, t.h, t.k).ok, "positive: not a composition product");
  o.require(check_star_identity(t.f, t.h, t.k).equal, "positive: star identity fails");
  o.require(is_weakly_normal(t.k, t.f).ok, "positive: K not weakly normal");
  o.require(!is_composition_product(t.f, t.h, t.kv).ok, "negative: composition product holds");
  o.require(!check_star_identity(t.f, t.h, t.kv).equal, "negative: star identity holds");
}

void prop_equivalents(Outcome& o) {
  int used = 0;
  for (const auto& s : catalog_setups()) {
    if (!s.H || !s.K || !(s.H->S() == s.S)) continue;
    if (!is_composition_product(s.F, *s.H, *s.K).ok) continue;
    auto r = check_prop_equivalents(s.F, *s.H, *s.K);
    o.require(r.agree() && r.star, s.name + ": conditions disagree");
    ++used;
  }
  o.require(used >= 3, "too few scenarios satisfy the hypothesis");
}

void normal_case(Outcome& o) {
  int used = 0;
  for (const auto& s : catalog_setups()) {
    if (!s.H || !s.K || !(s.H->S() == s.S)) continue;
    if (!is_weakly_normal(*s.K, s.F).ok) continue;
    o.require(check_lemma_normal_case(s.F, *s.H, *s.K).agree(), s.name + ": verdicts differ");
    ++used;
  }
  o.require(used >= 3, "too few weakly normal scenarios");
  S4 t;
  for (const auto* u : {&t.v4, &t.z, &t.d8})
    o.require(check_normalizer_support(t.f, *u).agree(), "normalizer and support verdicts differ");
}

void corollaries(Outcome& o) {
  auto c = check_corollaries(whole("symmetric 4"), 2);
  o.require(c.hyperfocal, "S4: first corollary fails");
  o.require(c.t.order() == 4, "S4: hyperfocal subgroup is not V4");
  o.require(c.pprime, "S4: second corollary fails");
  o.require(check_corollaries(whole("symmetric 4 x cyclic 3"), 2).pprime, "S4 x C3: second corollary fails");
}

void mackey(Outcome& o) {
  S4 t;
  for (const char* anchor : {"trivial", "cyclic 2"}) {
    MackeyFunctor m(whole(anchor), 2);
    o.require(check_corollary_mackey(m, t.f, t.h, t.k).equal, std::string(anchor) + ": composites differ");
    for (const auto& s : catalog_setups()) {
      auto sm = stable_module(MackeyFunctor(whole(anchor), s.p), s.F);  // throws if the two characterizations differ
      auto trr = transfer_restriction(sm);
      o.require(trr.tr * trr.res == Matrix::identity(sm.rank()), s.name + ": tr res is not the identity");
      o.require(trr.res * trr.tr == sm.omega, s.name + ": res tr is not M(omega)");
    }
  }
}

void stability(Outcome& o) {
  std::mt19937_64 rng(kDefaultSeed);
  int samples = 0;
  for (const auto& s : catalog_setups()) {
    const Element omega = characteristic_idempotent(s.F);
    Context c{s.S, s.S, s.p};
    auto basis = standard_basis(c, true);
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int i = 0; i < 16; ++i) {
      Element x(c);
      for (int k = 0; k < 3; ++k) x.add(basis[pick(rng)], coeff(rng));
      const int mode = static_cast<int>(rng() % 4);
      if (mode == 1) x = compose(x, omega);
      if (mode == 2) x = compose(omega, x);
      for (Side side : {Side::right, Side::left}) {
        bool d = stability_check(x, s.F, side, StabilityMethod::definitional, Quantifier::all).ok;
        bool mk = stability_check(x, s.F, side, StabilityMethod::marks, Quantifier::all).ok;
        bool a = side == Side::right ? compose(x, omega) == x : compose(omega, x) == x;
        o.require(d == mk && mk == a, s.name + ": stability verdicts disagree");
      }
      ++samples;
    }
  }
  o.require(samples >= 200, "fewer than 200 samples");
}

void probe(Outcome& o) {
  S4 t;
  auto h = FusionSystem::from_group(t.c4, t.c4, 2);
  auto a = check_conjecture_general(t.f, h, t.k);
  auto b = check_conjecture_general(t.f, h, t.k);
  o.require(a.lhs_hash == b.lhs_hash && a.rhs_hash == b.rhs_hash && a.cp == b.cp && a.identity == b.identity,
            "probe is not deterministic");
  for (const auto& e : catalog_entries())
    if (e.name == "c4-v4-probe") {
      Report x = run_scenario(json::parse(e.text));
      Report y = run_scenario(json::parse(e.text));
      o.require(x.evidence.size() == 1 && x.evidence == y.evidence, "evidence row missing or unstable");
      if (o.ok && !x.evidence.empty()) {
        const json& row = x.evidence[0];
        o.require(row["cp"].is_boolean() && row["identity"].is_boolean(), "evidence booleans missing");
        o.note = "cp=" + row["cp"].dump() + " identity=" + row["identity"].dump();
      }
    }
}

}  // namespace

int main() {
  int failed = 0;
  failed += !run(1, "marks injectivity", 30, marks_injective);
  failed += !run(2, "composition oracle equivalence", 120, composition_oracle);
  failed += !run(3, "characteristic idempotents", 120, idempotents);
  failed += !run(4, "composition product biconditional", 120, biconditional);
  failed += !run(5, "equivalent conditions", 60, prop_equivalents);
  failed += !run(6, "normal case and normalizer support", 120, normal_case);
  failed += !run(7, "corollaries", 180, corollaries);
  failed += !run(8, "Mackey functor corollary", 180, mackey);
  failed += !run(9, "stability triple equivalence", 120, stability);
  failed += !run(10, "general identity probe", 60, probe);
  std::printf("%s: %d of 10 criteria failed\n", failed ? "FAILED" : "ok", failed);
  return failed ? 1 : 0;
}
