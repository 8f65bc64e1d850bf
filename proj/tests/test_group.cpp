#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fusys/builtin.hpp"
#include "fusys/lattice.hpp"
#include "oracle.hpp"

using namespace fusys;

namespace {

Subgroup make(const GroupPtr& g, std::initializer_list<Permutation> gens) {
  std::vector<int> idx;
  for (const auto& p : gens) idx.push_back(g->find_permutation(p));
  return Subgroup::generated(g, idx);
}

}  // namespace

TEST(Group, Klein4IsElementaryAbelian) {
  auto g = builtin_group("klein4");
  EXPECT_EQ(g->order(), 4);
  for (int x = 0; x < 4; ++x) {
    if (x == g->identity()) continue;
    EXPECT_EQ(g->mul(x, x), g->identity());
    EXPECT_EQ(g->inv(x), x);
  }
}

TEST(Group, BuiltinOrders) {
  EXPECT_EQ(builtin_group("symmetric 4")->order(), 24);
  EXPECT_EQ(builtin_group("alternating 4")->order(), 12);
  EXPECT_EQ(builtin_group("dihedral 8")->order(), 8);
  EXPECT_EQ(builtin_group("quaternion 8")->order(), 8);
  EXPECT_EQ(builtin_group("cyclic 6")->order(), 6);
  EXPECT_EQ(builtin_group("trivial")->order(), 1);
  EXPECT_EQ(builtin_group("symmetric 4 x cyclic 3")->order(), 72);
}

TEST(Group, Quaternion8HasOneInvolution) {
  auto q = builtin_group("quaternion 8");
  int involutions = 0, order4 = 0;
  for (int x = 0; x < 8; ++x) {
    involutions += q->element_order(x) == 2;
    order4 += q->element_order(x) == 4;
  }
  EXPECT_EQ(involutions, 1);
  EXPECT_EQ(order4, 6);
}

TEST(Group, PermutationGeneratorsCloseToD8) {
  // (1 2 3 4) and (1 3) in 0-based image form
  std::vector<Permutation> gens{{1, 2, 3, 0}, {2, 1, 0, 3}};
  auto g = FiniteGroup::from_permutations(gens, 4, "d8");
  std::set<Permutation> seen{{0, 1, 2, 3}};
  bool grew = true;
  while (grew) {
    grew = false;
    for (auto a : std::set<Permutation>(seen))
      for (const auto& s : gens) grew |= seen.insert(FiniteGroup::compose(a, s)).second;
  }
  EXPECT_EQ(seen.size(), 8u);
  EXPECT_EQ(g->order(), 8);
  EXPECT_EQ(g->identity(), 0);
}

TEST(Group, ElementNamesUseCycles) {
  auto g = FiniteGroup::from_permutations({{1, 2, 3, 0}}, 4, "c4");
  std::set<std::string> names;
  for (int x = 0; x < g->order(); ++x) names.insert(g->element_name(x));
  EXPECT_TRUE(names.count("()"));
  EXPECT_TRUE(names.count("(1 2 3 4)"));
  EXPECT_TRUE(names.count("(1 3)(2 4)"));
}

TEST(Group, RejectsBadInput) {
  // 0 is the identity, but (1*1)*2 != 1*(1*2)
  std::vector<int> bad{0, 1, 2, 1, 2, 0, 2, 1, 0};
  EXPECT_THROW(FiniteGroup::from_table(bad, 3, "bad"), GroupError);
  EXPECT_THROW(FiniteGroup::from_table({0, 1, 1, 1}, 2, "noinv"), GroupError);
  EXPECT_THROW(FiniteGroup::from_permutations({{0, 0, 1}}, 3, "x"), GroupError);
  EXPECT_THROW(FiniteGroup::from_permutations({{1, 2, 0}}, 2, "x"), GroupError);
  EXPECT_THROW(builtin_group("symmetric 6", 512), GroupError);
  EXPECT_NO_THROW(builtin_group("symmetric 6", 720));
  EXPECT_THROW(builtin_group("cyclic"), GroupError);
  EXPECT_THROW(builtin_group("dihedral 7"), GroupError);
  EXPECT_THROW(builtin_group("frobenius 20"), GroupError);
}

TEST(Group, CayleyTableRoundTrip) {
  auto s3 = builtin_group("symmetric 3");
  auto t = FiniteGroup::from_table(s3->table(), 6, "s3 table");
  EXPECT_EQ(t->order(), 6);
  for (int a = 0; a < 6; ++a) EXPECT_EQ(t->inv(a), s3->inv(a));
}

TEST(GroupProperty, AssociativityOnRandomTriples) {
  std::mt19937 rng(20240611);
  for (const char* name : {"symmetric 4", "dihedral 8", "quaternion 8", "symmetric 4 x cyclic 3", "alternating 5"}) {
    auto g = builtin_group(name);
    std::uniform_int_distribution<int> pick(0, g->order() - 1);
    for (int t = 0; t < 2000; ++t) {
      int a = pick(rng), b = pick(rng), c = pick(rng);
      ASSERT_EQ(g->mul(g->mul(a, b), c), g->mul(a, g->mul(b, c))) << name;
      ASSERT_EQ(g->mul(g->inv(a), a), g->identity());
    }
  }
}

TEST(Lattice, C2) {
  auto lat = subgroup_lattice(builtin_group("cyclic 2"));
  ASSERT_EQ(lat.size(), 2u);
  EXPECT_EQ(lat[0][0].order(), 1u);
  EXPECT_EQ(lat[1][0].order(), 2u);
}

TEST(Lattice, D8MatchesSubsetOracle) {
  auto g = builtin_group("dihedral 8");
  auto subs = oracle::subset_subgroups(*g);
  EXPECT_EQ(subs.size(), 10u);
  EXPECT_EQ(oracle::conjugacy_class_count(*g, subs), 8u);
  auto mine = all_subgroups(Subgroup::whole(g));
  std::set<std::vector<int>> got;
  for (auto& s : mine) got.insert(s.elements());
  EXPECT_EQ(got, subs);
  EXPECT_EQ(subgroup_lattice(g).size(), 8u);
}

TEST(Lattice, S4MatchesGeneratedOracle) {
  auto g = builtin_group("symmetric 4");
  auto subs = oracle::two_generated_subgroups(*g);
  EXPECT_EQ(subs.size(), 30u);
  EXPECT_EQ(oracle::conjugacy_class_count(*g, subs), 11u);
  auto lat = subgroup_lattice(g);
  EXPECT_EQ(lat.size(), 11u);
  std::size_t total = 0;
  std::set<std::vector<int>> got;
  for (auto& cls : lat) {
    total += cls.size();
    for (auto& s : cls) got.insert(s.elements());
    for (std::size_t i = 1; i < cls.size(); ++i) EXPECT_TRUE(cls[0] < cls[i]);
  }
  EXPECT_EQ(total, 30u);
  EXPECT_EQ(got, subs);
  for (std::size_t i = 1; i < lat.size(); ++i) EXPECT_LE(lat[i - 1][0].order(), lat[i][0].order());
}

TEST(LatticeProperty, CountsAgreeWithOracleUpTo24) {
  for (const char* name : {"cyclic 6", "klein4", "quaternion 8", "symmetric 3", "alternating 4", "dihedral 12",
                           "cyclic 2 x cyclic 2 x cyclic 2", "cyclic 4 x cyclic 2"}) {
    auto g = builtin_group(name);
    auto subs = g->order() <= 16 ? oracle::subset_subgroups(*g) : oracle::two_generated_subgroups(*g);
    if (std::string(name) == "cyclic 2 x cyclic 2 x cyclic 2") subs = oracle::subset_subgroups(*g);
    auto mine = all_subgroups(Subgroup::whole(g));
    EXPECT_EQ(mine.size(), subs.size()) << name;
    EXPECT_EQ(subgroup_lattice(g).size(), oracle::conjugacy_class_count(*g, subs)) << name;
  }
}

TEST(DoubleCosets, S3ByTransposition) {
  auto g = builtin_group("symmetric 3");
  auto a = make(g, {{1, 0, 2}});
  auto dc = double_cosets(Subgroup::whole(g), a, a);
  ASSERT_EQ(dc.size(), 2u);
  std::multiset<std::size_t> sizes{dc[0].size, dc[1].size};
  EXPECT_EQ(sizes, (std::multiset<std::size_t>{2, 4}));
  EXPECT_EQ(dc[0].representative, 0);
}

TEST(DoubleCosets, WholeGroupIsOneCoset) {
  auto g = builtin_group("symmetric 4");
  auto whole = Subgroup::whole(g);
  auto b = sylow_subgroup(whole, 3);
  auto dc = double_cosets(whole, whole, b);
  ASSERT_EQ(dc.size(), 1u);
  EXPECT_EQ(dc[0].size, 24u);
}

TEST(DoubleCosets, S4BySylow2) {
  auto g = builtin_group("symmetric 4");
  auto whole = Subgroup::whole(g);
  auto s = sylow_subgroup(whole, 2);
  auto dc = double_cosets(whole, s, s);
  ASSERT_EQ(dc.size(), 2u);
  std::multiset<std::size_t> sizes{dc[0].size, dc[1].size};
  EXPECT_EQ(sizes, (std::multiset<std::size_t>{8, 16}));
}

TEST(DoubleCosets, RejectsNonSubgroup) {
  auto g = builtin_group("symmetric 3");
  auto h = builtin_group("symmetric 3");
  EXPECT_THROW(double_cosets(Subgroup::whole(g), Subgroup::whole(h), Subgroup::whole(g)), std::invalid_argument);
}

TEST(DoubleCosetsProperty, SizeFormula) {
  for (const char* name : {"symmetric 4", "dihedral 8", "alternating 4"}) {
    auto g = builtin_group(name);
    auto whole = Subgroup::whole(g);
    auto subs = all_subgroups(whole);
    for (std::size_t i = 0; i < subs.size(); i += 3)
      for (std::size_t j = 0; j < subs.size(); j += 2) {
        std::size_t total = 0;
        for (auto& d : double_cosets(whole, subs[i], subs[j])) {
          total += d.size;
          auto inter = subs[i].intersect(subs[j].conjugate(d.representative));
          EXPECT_EQ(d.size, subs[i].order() * subs[j].order() / inter.order());
        }
        EXPECT_EQ(total, whole.order());
      }
  }
}

TEST(CoreSubgroups, S4) {
  auto g = builtin_group("symmetric 4");
  auto c = core_subgroups(Subgroup::whole(g), 2);
  EXPECT_EQ(c.sylow.order(), 8u);
  // O^2(S4) is the set of even permutations
  std::vector<int> even;
  for (int x = 0; x < g->order(); ++x) {
    const auto& p = g->permutation(x);
    int inversions = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 1; j < p.size(); ++j) inversions += p[i] > p[j];
    if (inversions % 2 == 0) even.push_back(x);
  }
  EXPECT_EQ(c.op.elements(), even);
  EXPECT_EQ(c.hyperfocal.order(), 4u);
  EXPECT_TRUE(c.hyperfocal.is_subgroup_of(c.sylow));
  EXPECT_TRUE(c.hyperfocal.is_normal_in(Subgroup::whole(g)));
  EXPECT_TRUE(c.op.is_normal_in(Subgroup::whole(g)));
  EXPECT_TRUE(c.opprime.is_normal_in(Subgroup::whole(g)));
  EXPECT_EQ(c.opprime.order(), 24u);
}

TEST(CoreSubgroups, C6) {
  auto g = builtin_group("cyclic 6");
  auto c = core_subgroups(Subgroup::whole(g), 2);
  EXPECT_EQ(c.opprime.order(), 2u);
  EXPECT_EQ(c.sylow.order(), 2u);
}

TEST(CoreSubgroups, PGroupHasTrivialOp) {
  for (const char* name : {"dihedral 8", "quaternion 8", "cyclic 4"}) {
    auto c = core_subgroups(Subgroup::whole(builtin_group(name)), 2);
    EXPECT_EQ(c.op.order(), 1u) << name;
    EXPECT_EQ(c.hyperfocal.order(), 1u) << name;
  }
}

TEST(CoreSubgroups, SylowMissingPrimeIsTrivial) {
  auto c = core_subgroups(Subgroup::whole(builtin_group("cyclic 9")), 2);
  EXPECT_EQ(c.sylow.order(), 1u);
}

TEST(SylowProperty, OrderIsPPartAndAllSylowsConjugate) {
  for (auto [name, p] : std::vector<std::pair<const char*, int>>{
           {"symmetric 4", 2}, {"symmetric 4", 3}, {"alternating 5", 2}, {"symmetric 4 x cyclic 3", 3}}) {
    auto g = builtin_group(name);
    auto whole = Subgroup::whole(g);
    auto s = sylow_subgroup(whole, p);
    EXPECT_EQ(static_cast<long>(s.order()), p_part(g->order(), p));
    EXPECT_TRUE(is_sylow(whole, s, p));
    for (int x : whole.elements()) {
      auto t = sylow_subgroup(whole, p).conjugate(x);
      bool conj = false;
      for (int y : whole.elements()) conj |= s.conjugate(y) == t;
      EXPECT_TRUE(conj);
    }
  }
}

TEST(Homs, C2ToC2) {
  auto g = builtin_group("cyclic 2");
  auto w = Subgroup::whole(g);
  EXPECT_EQ(enumerate_homs(w, w, false).size(), 2u);
  EXPECT_EQ(enumerate_homs(w, w, true).size(), 1u);
}

TEST(Homs, AutV4) {
  auto w = Subgroup::whole(builtin_group("klein4"));
  EXPECT_EQ(enumerate_homs(w, w, true).size(), 6u);
  EXPECT_EQ(enumerate_homs(w, w, false).size(), 16u);
}

TEST(Homs, C2IntoD8) {
  auto g = builtin_group("dihedral 8");
  auto d8 = Subgroup::whole(g);
  int invol = -1, count = 0;
  for (int x = 0; x < g->order(); ++x)
    if (g->element_order(x) == 2) {
      ++count;
      if (invol < 0) invol = x;
    }
  auto c2 = Subgroup::generated(g, std::vector<int>{invol});
  EXPECT_EQ(enumerate_homs(c2, d8, true).size(), static_cast<std::size_t>(count));
  EXPECT_EQ(count, 5);
}

TEST(HomsProperty, EveryEnumeratedMapIsAHomomorphism) {
  auto g = builtin_group("symmetric 4");
  auto w = Subgroup::whole(g);
  auto d8 = sylow_subgroup(w, 2);
  for (auto& p : all_subgroups(d8)) {
    auto homs = enumerate_homs(p, d8, false);
    std::set<std::vector<int>> distinct;
    for (auto& h : homs) {
      distinct.insert(h.images);
      for (int a : p.elements())
        for (int b : p.elements()) ASSERT_EQ(h(g->mul(a, b)), g->mul(h(a), h(b)));
    }
    EXPECT_EQ(distinct.size(), homs.size());
  }
}

TEST(Subgroups, RejectsNonSubgroupSets) {
  auto g = builtin_group("symmetric 3");
  EXPECT_THROW(Subgroup(g, {0, 3}), GroupError);
  EXPECT_NO_THROW(Subgroup(g, {0, 1}));
  EXPECT_THROW(Subgroup(g, {1}), GroupError);
  EXPECT_NO_THROW(Subgroup(g, {0}));
}
