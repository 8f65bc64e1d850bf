#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fusys/error.hpp"
#include "fusys/group.hpp"

namespace fusys {

/// All subgroups of `g`, sorted by (order, element set).
inline std::vector<Subgroup> all_subgroups(const Subgroup& g) {
  const GroupPtr& G = g.group_ptr();
  auto compute = [&] {
    std::set<std::vector<int>> seen;
    std::vector<Subgroup> found{Subgroup::trivial(G)};
    seen.insert(found[0].elements());
    for (std::size_t i = 0; i < found.size(); ++i) {
      const Subgroup h = found[i];
      std::vector<char> covered(static_cast<std::size_t>(G->order()), 0);
      for (int x : h.elements()) covered[static_cast<std::size_t>(x)] = 1;
      for (int x : g.elements()) {
        if (covered[static_cast<std::size_t>(x)]) continue;
        std::vector<int> gens = h.generators();
        gens.push_back(x);
        Subgroup bigger = Subgroup::generated(G, gens);
        // <h, x> = <h, x u> for every u in h
        for (int u : h.elements()) covered[static_cast<std::size_t>(G->mul(x, u))] = 1;
        if (seen.insert(bigger.elements()).second) found.push_back(bigger);
      }
    }
    std::vector<std::vector<int>> sets;
    for (auto& s : found) sets.push_back(s.elements());
    return sets;
  };
  std::vector<std::vector<int>> sets;
  if (static_cast<int>(g.order()) == G->order())
    sets = G->cached_lattice(compute);
  else
    sets = compute();
  std::vector<Subgroup> out;
  out.reserve(sets.size());
  for (auto& s : sets) out.push_back(Subgroup::unchecked(G, s));
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements() < b.elements();
  });
  return out;
}

/// Subgroups of `g` grouped into g-conjugacy classes. Classes are ordered by
/// subgroup order, then by their representative; within a class the
/// lexicographically least element set comes first.
inline std::vector<std::vector<Subgroup>> subgroup_lattice(const Subgroup& g) {
  auto subs = all_subgroups(g);
  std::vector<bool> used(subs.size(), false);
  std::vector<std::vector<Subgroup>> classes;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (used[i]) continue;
    std::set<std::vector<int>> conj;
    for (int x : g.elements()) conj.insert(subs[i].conjugate(x).elements());
    std::vector<Subgroup> cls;
    for (std::size_t j = i; j < subs.size(); ++j)
      if (!used[j] && conj.count(subs[j].elements())) {
        used[j] = true;
        cls.push_back(subs[j]);
      }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  std::sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) {
    if (a[0].order() != b[0].order()) return a[0].order() < b[0].order();
    return a[0].elements() < b[0].elements();
  });
  return classes;
}

inline std::vector<std::vector<Subgroup>> subgroup_lattice(const GroupPtr& g) {
  return subgroup_lattice(Subgroup::whole(g));
}

/// Lexicographically least conjugate of k under g.
inline Subgroup conjugacy_representative(const Subgroup& g, const Subgroup& k) {
  Subgroup best = k;
  for (int x : g.elements()) {
    Subgroup c = k.conjugate(x);
    if (c < best) best = c;
  }
  return best;
}

struct DoubleCoset {
  int representative;
  std::size_t size;
};

/// Partition of g into double cosets a x b. The representative of each coset is
/// its least element index.
inline std::vector<DoubleCoset> double_cosets(const Subgroup& g, const Subgroup& a, const Subgroup& b) {
  if (!a.is_subgroup_of(g) || !b.is_subgroup_of(g)) throw std::invalid_argument("double_cosets: not a subgroup");
  const FiniteGroup& G = g.group();
  std::vector<char> covered(static_cast<std::size_t>(G.order()), 0);
  std::vector<DoubleCoset> out;
  for (int x : g.elements()) {
    if (covered[static_cast<std::size_t>(x)]) continue;
    std::size_t size = 0;
    for (int u : a.elements()) {
      int ux = G.mul(u, x);
      for (int v : b.elements()) {
        int y = G.mul(ux, v);
        if (!covered[static_cast<std::size_t>(y)]) {
          covered[static_cast<std::size_t>(y)] = 1;
          ++size;
        }
      }
    }
    out.push_back({x, size});
  }
  return out;
}

inline Subgroup normalizer(const Subgroup& g, const Subgroup& h) {
  std::vector<int> out;
  for (int x : g.elements())
    if (h.conjugate(x) == h) out.push_back(x);
  return Subgroup::unchecked(g.group_ptr(), std::move(out));
}

inline Subgroup centralizer(const Subgroup& g, const Subgroup& h) {
  const FiniteGroup& G = g.group();
  std::vector<int> out;
  for (int x : g.elements()) {
    bool ok = true;
    for (int y : h.generators())
      if (G.mul(x, y) != G.mul(y, x)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return Subgroup::unchecked(g.group_ptr(), std::move(out));
}

inline Subgroup center(const Subgroup& g) { return centralizer(g, g); }

inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// Largest power of p dividing n.
inline long p_part(long n, int p) {
  long r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

inline bool is_p_group_order(long n, int p) { return p_part(n, p) == n; }

/// A Sylow p-subgroup, grown greedily from the trivial group by adjoining the
/// least element that keeps it a p-group.
inline Subgroup sylow_subgroup(const Subgroup& g, int p) {
  const long target = p_part(static_cast<long>(g.order()), p);
  Subgroup s = Subgroup::trivial(g.group_ptr());
  while (static_cast<long>(s.order()) < target) {
    bool grown = false;
    for (int x : g.elements()) {
      if (s.contains(x) || !is_p_group_order(g.group().element_order(x), p)) continue;
      auto gens = s.generators();
      gens.push_back(x);
      Subgroup t = Subgroup::generated(g.group_ptr(), gens);
      if (is_p_group_order(static_cast<long>(t.order()), p)) {
        s = t;
        grown = true;
        break;
      }
    }
    if (!grown) throw InternalError("sylow_subgroup: no p-element extends a non-Sylow p-subgroup");
  }
  return s;
}

inline bool is_sylow(const Subgroup& g, const Subgroup& s, int p) {
  return s.is_subgroup_of(g) && static_cast<long>(s.order()) == p_part(static_cast<long>(g.order()), p);
}

/// Subgroup generated by the elements of g whose order satisfies `pred`.
inline Subgroup generated_by_orders(const Subgroup& g, const std::function<bool(int)>& pred) {
  std::vector<int> gens;
  for (int x : g.elements())
    if (pred(g.group().element_order(x))) gens.push_back(x);
  return Subgroup::generated(g.group_ptr(), gens);
}

struct CoreSubgroups {
  Subgroup sylow;
  Subgroup op;         // O^p(G): generated by the p'-elements
  Subgroup opprime;    // O^{p'}(G): generated by the p-elements
  Subgroup hyperfocal; // sylow intersected with O^p(G)
};

inline CoreSubgroups core_subgroups(const Subgroup& g, int p) {
  CoreSubgroups c;
  c.sylow = sylow_subgroup(g, p);
  c.op = generated_by_orders(g, [p](int o) { return o % p != 0; });
  c.opprime = generated_by_orders(g, [p](int o) { return is_p_group_order(o, p); });
  c.hyperfocal = c.sylow.intersect(c.op);
  return c;
}

/// All homomorphisms from `source` into `target` (a subgroup of some ambient
/// group), optionally injective only. Ordered lexicographically by the images
/// of source.generators().
inline std::vector<Hom> enumerate_homs(const Subgroup& source, const Subgroup& target, bool injective_only) {
  const FiniteGroup& A = source.group();
  const FiniteGroup& B = target.group();
  const auto& gens = source.generators();
  std::vector<Hom> out;
  std::vector<int> choice(gens.size(), -1);

  // Extend an assignment of generator images to all of source, or fail.
  auto extend = [&]() -> std::optional<std::vector<int>> {
    std::vector<int> img(source.order(), -1);
    img[static_cast<std::size_t>(source.position(A.identity()))] = B.identity();
    std::vector<int> queue{A.identity()};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      int x = queue[i];
      int fx = img[static_cast<std::size_t>(source.position(x))];
      for (std::size_t k = 0; k < gens.size(); ++k) {
        int y = A.mul(x, gens[k]);
        int fy = B.mul(fx, choice[k]);
        int& slot = img[static_cast<std::size_t>(source.position(y))];
        if (slot < 0) {
          slot = fy;
          queue.push_back(y);
        } else if (slot != fy) {
          return std::nullopt;
        }
      }
    }
    return img;
  };

  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == gens.size()) {
      auto img = extend();
      if (!img) return;
      Hom h{source, std::move(*img)};
      if (injective_only && !h.injective()) return;
      out.push_back(std::move(h));
      return;
    }
    int ord = A.element_order(gens[k]);
    for (int y : target.elements()) {
      if (ord % B.element_order(y) != 0) continue;
      if (injective_only && B.element_order(y) != ord) continue;
      choice[k] = y;
      rec(k + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace fusys
