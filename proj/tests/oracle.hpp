#pragma once

// Independent reference computations for the test suites. Nothing here calls
// the library's lattice, canonicalization or composition code.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "fusys/biset.hpp"
#include "fusys/burnside.hpp"
#include "fusys/group.hpp"

namespace oracle {

using namespace fusys;

inline std::vector<int> close(const FiniteGroup& g, std::vector<int> gens) {
  std::set<int> s{g.identity()};
  std::vector<int> frontier{g.identity()};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int x : frontier)
      for (int y : gens) {
        int z = g.mul(x, y);
        if (s.insert(z).second) next.push_back(z);
      }
    frontier = std::move(next);
  }
  return {s.begin(), s.end()};
}

/// Every subgroup generated by at most two elements. For the small groups in
/// the tests every subgroup is 2-generated.
inline std::set<std::vector<int>> two_generated_subgroups(const FiniteGroup& g) {
  std::set<std::vector<int>> out;
  for (int a = 0; a < g.order(); ++a)
    for (int b = a; b < g.order(); ++b) out.insert(close(g, {a, b}));
  return out;
}

/// Every subset closed under multiplication, by brute force over bit masks.
inline std::set<std::vector<int>> subset_subgroups(const FiniteGroup& g) {
  std::set<std::vector<int>> out;
  const int n = g.order();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (!(mask >> g.identity() & 1u)) continue;
    bool closed = true;
    for (int a = 0; a < n && closed; ++a)
      if (mask >> a & 1u)
        for (int b = 0; b < n && closed; ++b)
          if (mask >> b & 1u) closed = (mask >> g.mul(a, b)) & 1u;
    if (!closed) continue;
    std::vector<int> s;
    for (int a = 0; a < n; ++a)
      if (mask >> a & 1u) s.push_back(a);
    out.insert(s);
  }
  return out;
}

inline std::size_t conjugacy_class_count(const FiniteGroup& g, const std::set<std::vector<int>>& subs) {
  std::set<std::vector<int>> done;
  std::size_t classes = 0;
  for (const auto& s : subs) {
    if (done.count(s)) continue;
    ++classes;
    for (int x = 0; x < g.order(); ++x) {
      std::vector<int> c;
      for (int y : s) c.push_back(g.conj(x, y));
      std::sort(c.begin(), c.end());
      done.insert(c);
    }
  }
  return classes;
}

/// The (g, h)-orbit of a pair, listed explicitly.
inline std::vector<Hom> pair_orbit(const Subgroup& g, const Subgroup& h, const Hom& pair) {
  const FiniteGroup& A = g.group();
  const FiniteGroup& B = h.group();
  std::vector<Hom> out;
  for (int x : g.elements())
    for (int y : h.elements()) {
      std::vector<std::pair<int, int>> m;
      for (std::size_t i = 0; i < pair.source.order(); ++i)
        m.emplace_back(A.conj(x, pair.source.elements()[i]), B.conj(y, pair.images[i]));
      std::sort(m.begin(), m.end());
      std::vector<int> dom, img;
      for (auto& [a, b] : m) {
        dom.push_back(a);
        img.push_back(b);
      }
      out.push_back(Hom{Subgroup::unchecked(g.group_ptr(), dom), img});
    }
  return out;
}

inline Hom orbit_minimum(const Subgroup& g, const Subgroup& h, const Hom& pair) {
  auto orbit = pair_orbit(g, h, pair);
  return *std::min_element(orbit.begin(), orbit.end(), PairOrder{});
}

/// Twisted fixed points of <q, psi> on a concrete biset: x . q = psi(q) . x.
inline long fixed_points(const ConcreteBiset& b, const Hom& at) {
  long n = 0;
  for (std::size_t x = 0; x < b.size; ++x) {
    bool ok = true;
    for (std::size_t i = 0; i < at.source.order() && ok; ++i)
      ok = b.act_right(static_cast<int>(x), at.source.elements()[i]) == b.act_left(at.images[i], static_cast<int>(x));
    if (ok) ++n;
  }
  return n;
}

/// The opposite biset: same points, g . x := x . g^-1 and x . h := h^-1 . x.
inline ConcreteBiset opposite_biset(const ConcreteBiset& b) {
  ConcreteBiset o{b.target, b.source, b.size, {}, {}};
  o.left.resize(b.source.order());
  for (std::size_t i = 0; i < b.source.order(); ++i) {
    int g = b.source.group().inv(b.source.elements()[i]);
    o.left[i] = b.right[static_cast<std::size_t>(b.source.position(g))];
  }
  o.right.resize(b.target.order());
  for (std::size_t j = 0; j < b.target.order(); ++j) {
    int h = b.target.group().inv(b.target.elements()[j]);
    o.right[j] = b.left[static_cast<std::size_t>(b.target.position(h))];
  }
  return o;
}

/// Disjoint union of c_i copies of the realized basis bisets (nonnegative
/// integer coefficients only).
inline ConcreteBiset realize_sum(const Element& x) {
  const Context& c = x.context();
  ConcreteBiset out{c.source, c.target, 0, std::vector<std::vector<int>>(c.target.order()),
                    std::vector<std::vector<int>>(c.source.order())};
  for (const auto& [pair, coeff] : x.terms()) {
    if (coeff.get_den() != 1 || coeff < 0) throw std::invalid_argument("realize_sum: not a biset");
    ConcreteBiset piece = realize(c.source, c.target, pair);
    for (long copy = 0; copy < coeff.get_num().get_si(); ++copy) {
      const int off = static_cast<int>(out.size);
      for (std::size_t i = 0; i < piece.left.size(); ++i)
        for (int v : piece.left[i]) out.left[i].push_back(v + off);
      for (std::size_t j = 0; j < piece.right.size(); ++j)
        for (int v : piece.right[j]) out.right[j].push_back(v + off);
      out.size += piece.size;
    }
  }
  return out;
}

/// Double coset formula with a randomly chosen representative in each coset.
inline Element compose_random_reps(const Element& x, const Element& y, std::mt19937& rng) {
  const Subgroup& g = y.context().source;
  const Subgroup& h = y.context().target;
  const Subgroup& k = x.context().target;
  const FiniteGroup& B = h.group();
  Element out(Context{g, k, x.context().p});
  for (const auto& [lp, lc] : x.terms())
    for (const auto& [rp, rc] : y.terms()) {
      std::set<int> seen;
      for (int start : h.elements()) {
        if (seen.count(start)) continue;
        std::vector<int> coset;
        for (int l : lp.source.elements())
          for (int m : rp.images) {
            int z = B.mul(B.mul(l, start), m);
            if (seen.insert(z).second) coset.push_back(z);
          }
        int rep = coset[std::uniform_int_distribution<std::size_t>(0, coset.size() - 1)(rng)];
        std::vector<int> dom, img;
        for (std::size_t i = 0; i < rp.source.order(); ++i) {
          int c = B.conj(rep, rp.images[i]);
          if (!lp.source.contains(c)) continue;
          dom.push_back(rp.source.elements()[i]);
          img.push_back(lp(c));
        }
        out.add(Hom{Subgroup::unchecked(g.group_ptr(), dom), img}, lc * rc);
      }
    }
  return out;
}

/// Random element with small integer coefficients over the given basis.
inline Element random_element(const Context& ctx, const std::vector<Hom>& basis, std::mt19937& rng, int terms = 3,
                              int range = 3) {
  Element e(ctx);
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  std::uniform_int_distribution<int> coeff(-range, range);
  for (int i = 0; i < terms; ++i) e.add(basis[pick(rng)], coeff(rng));
  return e;
}

}  // namespace oracle
