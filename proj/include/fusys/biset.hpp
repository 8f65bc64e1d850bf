#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fusys/burnside.hpp"
#include "fusys/error.hpp"
#include "fusys/group.hpp"

namespace fusys {

/// Explicit finite (source, target)-biset: `target` acts on the left, `source`
/// on the right. left[i][x] is target.elements()[i] . x, right[j][x] is
/// x . source.elements()[j].
struct ConcreteBiset {
  Subgroup source;
  Subgroup target;
  std::size_t size = 0;
  std::vector<std::vector<int>> left;
  std::vector<std::vector<int>> right;

  int act_left(int h, int x) const {
    return left[static_cast<std::size_t>(target.position(h))][static_cast<std::size_t>(x)];
  }
  int act_right(int x, int g) const {
    return right[static_cast<std::size_t>(source.position(g))][static_cast<std::size_t>(x)];
  }

  /// Actions are actions, they commute, and the left action is free.
  void validate() const {
    const FiniteGroup& A = source.group();
    const FiniteGroup& B = target.group();
    for (std::size_t x = 0; x < size; ++x) {
      const int xi = static_cast<int>(x);
      for (int h : target.elements()) {
        if (h != B.identity() && act_left(h, xi) == xi) throw ValidationError("biset: left action is not free");
        for (int g : source.elements())
          if (act_right(act_left(h, xi), g) != act_left(h, act_right(xi, g)))
            throw ValidationError("biset: actions do not commute");
      }
      if (act_left(B.identity(), xi) != xi || act_right(xi, A.identity()) != xi)
        throw ValidationError("biset: identity does not act trivially");
      for (int h1 : target.generators())
        for (int h2 : target.elements())
          if (act_left(B.mul(h1, h2), xi) != act_left(h1, act_left(h2, xi)))
            throw ValidationError("biset: left action is not an action");
      for (int g1 : source.elements())
        for (int g2 : source.generators())
          if (act_right(xi, A.mul(g1, g2)) != act_right(act_right(xi, g1), g2))
            throw ValidationError("biset: right action is not an action");
    }
  }
};

namespace detail {

/// Builds a biset on the classes of a set of labelled points. `cls` maps a
/// point label to its class index; the actions are given on labels.
template <class Label, class LeftFn, class RightFn>
ConcreteBiset biset_from_classes(const Subgroup& g, const Subgroup& h, const std::map<Label, int>& cls,
                                 std::size_t count, LeftFn act_l, RightFn act_r) {
  ConcreteBiset b{g, h, count, {}, {}};
  std::vector<Label> rep(count);
  std::vector<bool> have(count, false);
  for (const auto& [lab, c] : cls)
    if (!have[static_cast<std::size_t>(c)]) {
      have[static_cast<std::size_t>(c)] = true;
      rep[static_cast<std::size_t>(c)] = lab;
    }
  b.left.assign(h.order(), std::vector<int>(count));
  b.right.assign(g.order(), std::vector<int>(count));
  for (std::size_t i = 0; i < h.order(); ++i)
    for (std::size_t c = 0; c < count; ++c) b.left[i][c] = cls.at(act_l(h.elements()[i], rep[c]));
  for (std::size_t j = 0; j < g.order(); ++j)
    for (std::size_t c = 0; c < count; ++c) b.right[j][c] = cls.at(act_r(rep[c], g.elements()[j]));
  return b;
}

}  // namespace detail

/// h x_{K, phi} g: classes of pairs (h, g) under (h, k g) ~ (h phi(k), g).
inline ConcreteBiset realize(const Subgroup& g, const Subgroup& h, const Hom& pair) {
  const FiniteGroup& A = g.group();
  const FiniteGroup& B = h.group();
  using P = std::pair<int, int>;
  std::map<P, int> cls;
  int count = 0;
  for (int x : h.elements())
    for (int y : g.elements()) {
      if (cls.count({x, y})) continue;
      for (std::size_t i = 0; i < pair.source.order(); ++i) {
        int k = pair.source.elements()[i];
        cls.emplace(P{B.mul(x, pair.images[i]), A.mul(A.inv(k), y)}, count);
      }
      ++count;
    }
  return detail::biset_from_classes<P>(
      g, h, cls, static_cast<std::size_t>(count), [&](int u, const P& pt) { return P{B.mul(u, pt.first), pt.second}; },
      [&](const P& pt, int u) { return P{pt.first, A.mul(pt.second, u)}; });
}

/// The group g as a (s, t)-biset by multiplication, s and t subgroups of g.
/// Point i is g.elements()[i].
inline ConcreteBiset group_as_biset(const Subgroup& g, const Subgroup& s, const Subgroup& t) {
  if (!s.is_subgroup_of(g) || !t.is_subgroup_of(g)) throw std::invalid_argument("group_as_biset: not subgroups");
  const FiniteGroup& G = g.group();
  const std::size_t n = g.order();
  ConcreteBiset b{s, t, n, {}, {}};
  b.left.assign(t.order(), std::vector<int>(n));
  b.right.assign(s.order(), std::vector<int>(n));
  for (std::size_t i = 0; i < t.order(); ++i)
    for (std::size_t x = 0; x < n; ++x) b.left[i][x] = g.position(G.mul(t.elements()[i], g.elements()[x]));
  for (std::size_t j = 0; j < s.order(); ++j)
    for (std::size_t x = 0; x < n; ++x) b.right[j][x] = g.position(G.mul(g.elements()[x], s.elements()[j]));
  return b;
}

/// x x_h y for x a (h, k)-biset and y a (g, h)-biset: classes of (a, b) under
/// (a.u, b) ~ (a, u.b).
inline ConcreteBiset amalgamate(const ConcreteBiset& x, const ConcreteBiset& y) {
  if (!(x.source == y.target)) throw std::invalid_argument("amalgamate: middle groups differ");
  const Subgroup& mid = x.source;
  const FiniteGroup& M = mid.group();
  using P = std::pair<int, int>;
  std::map<P, int> cls;
  int count = 0;
  for (std::size_t a = 0; a < x.size; ++a)
    for (std::size_t b = 0; b < y.size; ++b) {
      P pt{static_cast<int>(a), static_cast<int>(b)};
      if (cls.count(pt)) continue;
      for (int u : mid.elements()) cls.emplace(P{x.act_right(pt.first, u), y.act_left(M.inv(u), pt.second)}, count);
      ++count;
    }
  return detail::biset_from_classes<P>(
      y.source, x.target, cls, static_cast<std::size_t>(count),
      [&](int u, const P& pt) { return P{x.act_left(u, pt.first), pt.second}; },
      [&](const P& pt, int u) { return P{pt.first, y.act_right(pt.second, u)}; });
}

/// Splits a left-free biset into transitive pieces and reads off the
/// stabilizer pair of each. Throws ValidationError if the left action is not
/// free.
inline Element decompose(const ConcreteBiset& b, int p) {
  Element out(Context{b.source, b.target, p});
  std::vector<bool> seen(b.size, false);
  for (std::size_t start = 0; start < b.size; ++start) {
    if (seen[start]) continue;
    const int pt = static_cast<int>(start);
    std::vector<int> orbit{pt};
    seen[start] = true;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      for (int h : b.target.generators()) {
        int y = b.act_left(h, orbit[i]);
        if (!seen[static_cast<std::size_t>(y)]) {
          seen[static_cast<std::size_t>(y)] = true;
          orbit.push_back(y);
        }
      }
      for (int g : b.source.generators()) {
        int y = b.act_right(orbit[i], g);
        if (!seen[static_cast<std::size_t>(y)]) {
          seen[static_cast<std::size_t>(y)] = true;
          orbit.push_back(y);
        }
      }
    }
    // which element of the target carries pt to each point of its left orbit
    std::map<int, int> carrier;
    for (int h : b.target.elements())
      if (!carrier.emplace(b.act_left(h, pt), h).second) throw ValidationError("biset: left action is not free");
    std::vector<int> dom, img;
    for (int g : b.source.elements()) {
      auto it = carrier.find(b.act_right(pt, g));
      if (it == carrier.end()) continue;
      dom.push_back(g);
      img.push_back(it->second);
    }
    out.add(Hom{Subgroup::unchecked(b.source.group_ptr(), std::move(dom)), std::move(img)}, 1);
  }
  return out;
}

}  // namespace fusys
