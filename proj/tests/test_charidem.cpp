#include <gtest/gtest.h>

#include "fusys/biset.hpp"
#include "fusys/builtin.hpp"
#include "fusys/charidem.hpp"
#include "oracle.hpp"

using namespace fusys;

namespace {

Subgroup whole(const char* name) { return Subgroup::whole(builtin_group(name)); }

int perm(const Subgroup& g, std::vector<int> images) {
  int x = g.group().find_permutation(images);
  EXPECT_GE(x, 0);
  return x;
}

Subgroup gen(const Subgroup& g, std::vector<std::vector<int>> perms) {
  std::vector<int> gens;
  for (auto& p : perms) gens.push_back(perm(g, p));
  return Subgroup::generated(g.group_ptr(), gens);
}

struct S4Setup {
  Subgroup g = whole("symmetric 4");
  Subgroup d8 = gen(g, {{1, 2, 3, 0}, {2, 1, 0, 3}});
  Subgroup v4 = gen(g, {{1, 0, 3, 2}, {2, 3, 0, 1}});
  Subgroup z = gen(g, {{2, 3, 0, 1}});
  Subgroup a4 = gen(g, {{1, 2, 0, 3}, {1, 0, 3, 2}});
  FusionSystem f = FusionSystem::from_group(g, d8, 2);
  FusionSystem h = FusionSystem::from_group(d8, d8, 2);
  FusionSystem k_pos = FusionSystem::from_group(a4, v4, 2);
  FusionSystem k_neg = FusionSystem::from_group(v4, v4, 2);
};

FusionSystem sylow_system(const Subgroup& g, int p) { return FusionSystem::from_group(g, sylow_subgroup(g, p), p); }

// S normal, abelian and self-centralizing in G: G = sum over cosets gS of
// [S, c_g], each c_g distinct, and omega = G / |G : S|.
Element normal_sylow_oracle(const Subgroup& g, const Subgroup& s, int p) {
  std::set<std::vector<int>> auts;
  for (int x : g.elements()) auts.insert(conjugation_hom(s, x).images);
  EXPECT_EQ(auts.size() * s.order(), g.order());
  Element out(Context{s, s, p});
  for (const auto& img : auts) out.add(Hom{s, img}, Rational(1, static_cast<long>(auts.size())));
  return out;
}

std::vector<std::pair<const char*, int>> catalog_groups() {
  return {{"cyclic 2", 2},    {"cyclic 4", 2},    {"klein4", 2},        {"dihedral 8", 2},
          {"quaternion 8", 2}, {"symmetric 3", 2}, {"symmetric 3", 3},  {"alternating 4", 2},
          {"symmetric 4", 2}, {"symmetric 4 x cyclic 3", 2}};
}

}  // namespace

TEST(CharacteristicIdempotent, TrivialSystems) {
  for (const char* name : {"cyclic 2", "cyclic 4", "klein4", "dihedral 8", "quaternion 8"}) {
    auto s = whole(name);
    auto f = FusionSystem::from_group(s, s, 2);
    EXPECT_EQ(characteristic_idempotent(f), identity_element(s, 2)) << name;
    EXPECT_EQ(characteristic_idempotent(f, IdempotentMethod::power_iteration), identity_element(s, 2)) << name;
  }
}

TEST(CharacteristicIdempotent, S3AtTwo) {
  auto g = whole("symmetric 3");
  auto f = sylow_system(g, 2);
  EXPECT_EQ(characteristic_idempotent(f), identity_element(f.S(), 2));
}

TEST(CharacteristicIdempotent, NormalAbelianSylow) {
  // A4 at 2 and S3 at 3: S is abelian, normal and self-centralizing
  for (auto [name, p] : {std::pair{"alternating 4", 2}, {"symmetric 3", 3}}) {
    auto g = whole(name);
    auto f = sylow_system(g, p);
    EXPECT_EQ(characteristic_idempotent(f), normal_sylow_oracle(g, f.S(), p)) << name;
  }
}

TEST(CharacteristicIdempotent, S4VerifiesWithAugmentationOne) {
  S4Setup t;
  Element omega = characteristic_idempotent(t.f);
  auto rep = verify_characteristic(omega, t.f, Quantifier::all);
  EXPECT_TRUE(rep.characteristic_idempotent());
  EXPECT_EQ(rep.augmentation_value, 1);
  // supported on D8 with coefficient 1 and on the normal four-group
  EXPECT_EQ(omega.coefficient(identity_hom(t.d8)), 1);
  EXPECT_EQ(omega.coefficient(identity_hom(t.v4)), Rational(-1, 3));
  EXPECT_EQ(omega.coefficient(conjugation_hom(t.v4, perm(t.g, {1, 2, 0, 3}))), Rational(1, 3));
  EXPECT_EQ(omega.size(), 3u);
}

TEST(CharacteristicIdempotent, MethodsAndNormalizationsAgree) {
  for (auto [name, p] : catalog_groups()) {
    auto g = whole(name);
    auto f = sylow_system(g, p);
    Element a = solve_characteristic_idempotent(f, Normalization::s_classes);
    Element b = solve_characteristic_idempotent(f, Normalization::f_classes);
    Element c = power_iteration_idempotent(f);
    EXPECT_EQ(a, b) << name;
    EXPECT_EQ(a, c) << name;
    a.assert_p_local();
  }
}

TEST(CharacteristicIdempotent, Absorption) {
  for (auto [name, p] : catalog_groups()) {
    auto g = whole(name);
    auto f = sylow_system(g, p);
    Element omega = characteristic_idempotent(f);
    Element big = characteristic_element_from_group(g, f.S(), p);
    EXPECT_EQ(compose(big, omega), big) << name;
    EXPECT_EQ(compose(omega, big), big) << name;
  }
}

TEST(CharacteristicElement, GroupBisetIsCharacteristicNotIdempotent) {
  S4Setup t;
  Element big = characteristic_element_from_group(t.g, t.d8, 2);
  auto rep = verify_characteristic(big, t.f);
  EXPECT_TRUE(rep.characteristic());
  EXPECT_EQ(rep.augmentation_value, 3);
  Element third = Rational(1, 3) * big;
  auto r3 = verify_characteristic(third, t.f);
  EXPECT_TRUE(r3.augmentation_one);
  EXPECT_FALSE(r3.idempotent);
}

TEST(CharacteristicElement, S3SquareMatchesSetLevel) {
  auto g = whole("symmetric 3");
  auto s = sylow_subgroup(g, 2);
  ConcreteBiset gb = group_as_biset(g, s, s);
  Element big = decompose(gb, 2);
  Element sq = decompose(amalgamate(gb, gb), 2);
  EXPECT_EQ(compose(big, big), sq);
  Context c{s, s, 2};
  Element expect = Element::basis(c, identity_hom(s)) +
                   Element::basis(c, Hom{Subgroup::trivial(g.group_ptr()), {g.group().identity()}}, 4);
  EXPECT_EQ(sq, expect);
}

TEST(CharacteristicIdempotent, NonSaturatedSystemIsRejected) {
  auto v = whole("klein4");
  auto a = v.generators();
  std::vector<int> images(v.order());
  for (std::size_t i = 0; i < v.order(); ++i) {
    int x = v.elements()[i];
    images[i] = x == a[0] ? a[1] : x == a[1] ? a[0] : x;
  }
  auto f = FusionSystem::closure(v, 2, {Hom{v, images}});
  EXPECT_THROW(characteristic_idempotent(f), IdempotentError);
  EXPECT_THROW(power_iteration_idempotent(f), PreconditionError);
}

TEST(StarIdentity, PositiveAndNegative) {
  S4Setup t;
  auto pos = check_star_identity(t.f, t.h, t.k_pos);
  EXPECT_TRUE(pos.equal);
  EXPECT_TRUE(pos.difference().is_zero());
  auto neg = check_star_identity(t.f, t.h, t.k_neg);
  EXPECT_FALSE(neg.equal);
  EXPECT_FALSE(neg.difference().is_zero());
  EXPECT_THROW(check_star_identity(t.f, t.k_pos, t.k_pos), PreconditionError);
}

TEST(StarIdentity, AgreesWithCompositionProduct) {
  S4Setup t;
  auto kz = FusionSystem::from_group(t.z, t.z, 2);
  for (const auto* k : {&t.k_pos, &t.k_neg, &t.f, &kz})
    for (const auto* h : {&t.h, &t.f}) {
      if (!is_weakly_normal(*k, t.f).ok) continue;
      EXPECT_EQ(check_star_identity(t.f, *h, *k).equal, is_composition_product(t.f, *h, *k).ok);
    }
}

TEST(PropEquivalents, AgreeAndRefuse) {
  S4Setup t;
  auto r = check_prop_equivalents(t.f, t.h, t.k_pos);
  EXPECT_TRUE(r.agree());
  EXPECT_TRUE(r.star);
  EXPECT_THROW(check_prop_equivalents(t.f, t.h, t.k_neg), PreconditionError);
}

TEST(LemmaNormalCase, Verdicts) {
  S4Setup t;
  auto pos = check_lemma_normal_case(t.f, t.h, t.k_pos);
  EXPECT_TRUE(pos.agree());
  EXPECT_TRUE(pos.cp);
  auto neg = check_lemma_normal_case(t.f, t.h, t.k_neg);
  EXPECT_TRUE(neg.agree());
  EXPECT_FALSE(neg.cp);
  auto kz = FusionSystem::from_group(t.z, t.z, 2);
  EXPECT_THROW(check_lemma_normal_case(t.f, t.h, kz), PreconditionError);
}

TEST(NormalizerSupport, S4Subgroups) {
  S4Setup t;
  auto v = check_normalizer_support(t.f, t.v4);
  EXPECT_TRUE(v.is_normalizer);
  EXPECT_TRUE(v.support_ok);
  auto z = check_normalizer_support(t.f, t.z);
  EXPECT_FALSE(z.is_normalizer);
  EXPECT_FALSE(z.support_ok);
  ASSERT_TRUE(z.witness.has_value());
  auto d = check_normalizer_support(t.f, t.d8);
  EXPECT_FALSE(d.is_normalizer);
  EXPECT_FALSE(d.support_ok);
  for (const auto* r : {&v, &z, &d}) EXPECT_TRUE(r->agree());
}

TEST(Corollaries, GroupInstances) {
  for (auto [name, p] : {std::pair{"symmetric 4", 2}, {"symmetric 4 x cyclic 3", 2}, {"alternating 4", 2},
                         {"symmetric 3", 3}, {"symmetric 3", 2}}) {
    auto c = check_corollaries(whole(name), p);
    EXPECT_TRUE(c.hyperfocal) << name;
    EXPECT_TRUE(c.pprime) << name;
  }
  auto c = check_corollaries(whole("symmetric 4"), 2);
  EXPECT_EQ(c.t.order(), 4u);
}

TEST(ConjectureProbe, DeterministicEvidence) {
  S4Setup t;
  auto c4 = gen(t.g, {{1, 2, 3, 0}});
  auto h = FusionSystem::from_group(c4, c4, 2);
  auto a = check_conjecture_general(t.f, h, t.k_pos);
  auto b = check_conjecture_general(t.f, h, t.k_pos);
  EXPECT_EQ(a.lhs_hash, b.lhs_hash);
  EXPECT_EQ(a.rhs_hash, b.rhs_hash);
  EXPECT_EQ(a.identity, a.lhs == a.rhs);
  EXPECT_EQ(a.lhs.context().source, t.v4);
  EXPECT_EQ(a.lhs.context().target, c4);
  // R = T = V4 does not give S
  EXPECT_THROW(check_conjecture_general(t.f, t.k_neg, t.k_pos), PreconditionError);
}

TEST(ConjectureProbe, ReducesToStarIdentityWhenRIsS) {
  S4Setup t;
  auto e = check_conjecture_general(t.f, t.h, t.k_pos);
  auto s = check_star_identity(t.f, t.h, t.k_pos);
  EXPECT_EQ(e.identity, s.equal);
}

TEST(Hashing, StableText) {
  EXPECT_EQ(hash_hex(fnv1a("")), "cbf29ce484222325");
  EXPECT_EQ(hash_hex(fnv1a("a")), "af63dc4c8601ec8c");
}
