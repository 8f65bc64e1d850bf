#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fusys/error.hpp"
#include "fusys/group.hpp"
#include "fusys/lattice.hpp"
#include "fusys/memo.hpp"
#include "fusys/rational.hpp"

namespace fusys {

/// A(source, target)_(p): left-free (source, target)-bisets, i.e. the target
/// group acts on the left and the source group on the right. Basis pairs are
/// (K <= source, phi: K -> target).
struct Context {
  Subgroup source;
  Subgroup target;
  int p = 2;

  bool square() const { return source == target; }
  friend bool operator==(const Context& a, const Context& b) {
    return a.p == b.p && a.source == b.source && a.target == b.target;
  }
};

namespace detail {

inline void append_subgroup_key(std::vector<int>& key, const Subgroup& s) {
  key.push_back(s.group().id());
  key.push_back(static_cast<int>(s.order()));
  key.insert(key.end(), s.elements().begin(), s.elements().end());
}

inline void append_pair_key(std::vector<int>& key, const Hom& h) {
  key.push_back(static_cast<int>(h.source.order()));
  key.insert(key.end(), h.source.elements().begin(), h.source.elements().end());
  key.insert(key.end(), h.images.begin(), h.images.end());
}

inline Memo<Hom>& canonical_memo() {
  static Memo<Hom> memo;
  return memo;
}

inline Memo<std::vector<Hom>>& product_memo() {
  static Memo<std::vector<Hom>> memo;
  return memo;
}

inline Memo<Rational>& mark_memo() {
  static Memo<Rational> memo;
  return memo;
}

}  // namespace detail

/// Checks that `pair` is (K <= g, phi: K -> h) with phi a homomorphism.
inline void validate_pair(const Subgroup& g, const Subgroup& h, const Hom& pair) {
  if (pair.source.group_ptr() != g.group_ptr() || !pair.source.is_subgroup_of(g))
    throw ValidationError("basis pair source is not a subgroup of the source group");
  if (pair.images.size() != pair.source.order()) throw ValidationError("basis pair image list has wrong length");
  for (int y : pair.images)
    if (y < 0 || y >= h.group().order() || !h.contains(y))
      throw ValidationError("basis pair image outside the target group");
  const FiniteGroup& A = g.group();
  const FiniteGroup& B = h.group();
  for (int x : pair.source.elements())
    for (int y : pair.source.generators())
      if (pair(A.mul(x, y)) != B.mul(pair(x), pair(y))) throw ValidationError("basis pair map is not a homomorphism");
}

/// Canonical representative of the class of (K, phi) under K -> gKg^-1 with
/// phi -> c_h o phi o c_g^-1, g in `g`, h in `h`: the lexicographically least
/// conjugate of K, then the least image list over the remaining freedom.
inline Hom canonicalize(const Subgroup& g, const Subgroup& h, const Hom& pair) {
  std::vector<int> key;
  detail::append_subgroup_key(key, g);
  detail::append_subgroup_key(key, h);
  detail::append_pair_key(key, pair);
  return detail::canonical_memo().get_or_compute(key, [&] {
    const FiniteGroup& A = g.group();
    const FiniteGroup& B = h.group();
    const auto& k = pair.source.elements();
    std::vector<int> best_dom;
    std::vector<int> best_g;
    std::vector<int> tmp(k.size());
    for (int x : g.elements()) {
      for (std::size_t i = 0; i < k.size(); ++i) tmp[i] = A.conj(x, k[i]);
      std::sort(tmp.begin(), tmp.end());
      if (best_dom.empty() || tmp < best_dom) {
        best_dom = tmp;
        best_g.assign(1, x);
      } else if (tmp == best_dom) {
        best_g.push_back(x);
      }
    }
    Subgroup kc = best_dom == k ? pair.source : Subgroup::unchecked(g.group_ptr(), best_dom);
    std::vector<int> base(k.size()), img(k.size()), best_img;
    for (int x : best_g) {
      int xi = A.inv(x);
      for (std::size_t i = 0; i < k.size(); ++i) base[i] = pair(A.conj(xi, best_dom[i]));
      for (int y : h.elements()) {
        for (std::size_t i = 0; i < k.size(); ++i) img[i] = B.conj(y, base[i]);
        if (best_img.empty() || img < best_img) best_img = img;
      }
    }
    return Hom{kc, std::move(best_img)};
  });
}

/// One canonical pair per class of (K <= g, phi: K -> h); injective phi only
/// when `bifree_only`. Sorted by PairOrder (larger K first).
inline std::vector<Hom> standard_basis(const Subgroup& g, const Subgroup& h, bool bifree_only) {
  std::set<Hom, PairOrder> found;
  for (const auto& cls : subgroup_lattice(g))
    for (const auto& phi : enumerate_homs(cls.front(), h, bifree_only)) found.insert(canonicalize(g, h, phi));
  return {found.begin(), found.end()};
}

inline std::vector<Hom> standard_basis(const Context& ctx, bool bifree_only) {
  return standard_basis(ctx.source, ctx.target, bifree_only);
}

/// Sparse p-local combination of canonical basis pairs in A(source, target)_(p).
class Element {
 public:
  using Terms = std::map<Hom, Rational, PairOrder>;

  Element() = default;
  explicit Element(Context ctx) : ctx_(std::move(ctx)) {}

  /// c * [pair], canonicalizing the pair.
  static Element basis(Context ctx, const Hom& pair, const Rational& c = 1) {
    Element e(std::move(ctx));
    e.add(pair, c);
    return e;
  }

  const Context& context() const { return ctx_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const Hom& pair) const {
    auto it = terms_.find(canonicalize(ctx_.source, ctx_.target, pair));
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add(const Hom& pair, const Rational& c) { add_canonical(canonicalize(ctx_.source, ctx_.target, pair), c); }

  /// Adds to a pair already known to be canonical.
  void add_canonical(const Hom& pair, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.emplace(pair, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  bool bifree() const {
    for (const auto& [pair, c] : terms_)
      if (!pair.injective()) return false;
    return true;
  }

  /// Throws InternalError unless every coefficient is p-local.
  void assert_p_local() const {
    for (const auto& [pair, c] : terms_)
      if (!is_p_local(c, ctx_.p))
        throw InternalError("coefficient " + c.get_str() + " is not " + std::to_string(ctx_.p) + "-local");
  }

  Element& operator+=(const Element& o) {
    check_same(o);
    for (const auto& [pair, c] : o.terms_) add_canonical(pair, c);
    return *this;
  }
  Element& operator-=(const Element& o) {
    check_same(o);
    for (const auto& [pair, c] : o.terms_) add_canonical(pair, -c);
    return *this;
  }
  Element& operator*=(const Rational& s) {
    if (sgn(s) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [pair, c] : terms_) c *= s;
    return *this;
  }

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Rational& s, Element a) { return a *= s; }

  friend bool operator==(const Element& a, const Element& b) { return a.ctx_ == b.ctx_ && a.terms_ == b.terms_; }

 private:
  void check_same(const Element& o) const {
    if (!(ctx_ == o.ctx_)) throw std::invalid_argument("Burnside elements live in different modules");
  }

  Context ctx_;
  Terms terms_;
};

/// Double coset formula for basis pairs:
///   [L, psi]^k_h o [M, phi]^h_g = sum over x in L\h/phi(M) of
///   [ {m in M : x phi(m) x^-1 in L}, psi o c_x o phi ].
/// Returns the canonical terms with multiplicity.
inline std::vector<Hom> compose_pairs(const Subgroup& g, const Subgroup& h, const Subgroup& k, const Hom& left,
                                      const Hom& right) {
  std::vector<int> key;
  detail::append_subgroup_key(key, g);
  detail::append_subgroup_key(key, h);
  detail::append_subgroup_key(key, k);
  detail::append_pair_key(key, left);
  detail::append_pair_key(key, right);
  return detail::product_memo().get_or_compute(key, [&] {
    const FiniteGroup& B = h.group();
    Subgroup phi_m = Subgroup::unchecked(h.group_ptr(), right.image_set());
    std::vector<Hom> out;
    for (const auto& dc : double_cosets(h, left.source, phi_m)) {
      const int x = dc.representative;
      std::vector<int> dom, img;
      for (std::size_t i = 0; i < right.source.order(); ++i) {
        int y = B.conj(x, right.images[i]);
        int pos = left.source.position(y);
        if (pos < 0) continue;
        dom.push_back(right.source.elements()[i]);
        img.push_back(left.images[static_cast<std::size_t>(pos)]);
      }
      out.push_back(canonicalize(g, k, Hom{Subgroup::unchecked(g.group_ptr(), std::move(dom)), std::move(img)}));
    }
    return out;
  });
}

/// X o Y for X in A(h, k)_(p) and Y in A(g, h)_(p); result in A(g, k)_(p).
inline Element compose(const Element& x, const Element& y) {
  const Context& cx = x.context();
  const Context& cy = y.context();
  if (!(cx.source == cy.target) || cx.p != cy.p)
    throw std::invalid_argument("compose: inner groups or primes do not match");
  Element out(Context{cy.source, cx.target, cx.p});
  for (const auto& [lp, lc] : x.terms())
    for (const auto& [rp, rc] : y.terms()) {
      Rational c = lc * rc;
      for (const auto& term : compose_pairs(cy.source, cy.target, cx.target, lp, rp)) out.add_canonical(term, c);
    }
  out.assert_p_local();
  return out;
}

/// Mark of the basis element [K, phi] at <Q, psi>:
///   (1/|K|) #{(h, g) : g Q g^-1 <= K and psi(q) h = h phi(g q g^-1) for q in Q}.
inline Rational mark_of_pair(const Subgroup& g, const Subgroup& h, const Hom& at, const Hom& basis) {
  std::vector<int> key;
  detail::append_subgroup_key(key, g);
  detail::append_subgroup_key(key, h);
  detail::append_pair_key(key, at);
  detail::append_pair_key(key, basis);
  return detail::mark_memo().get_or_compute(key, [&] {
    const FiniteGroup& A = g.group();
    const FiniteGroup& B = h.group();
    const auto& qgens = at.source.generators();
    std::vector<int> psi_q;
    for (int q : qgens) psi_q.push_back(at(q));
    std::vector<int> phi_q(qgens.size());
    long count = 0;
    for (int x : g.elements()) {
      bool inside = true;
      for (std::size_t j = 0; j < qgens.size(); ++j) {
        int c = A.conj(x, qgens[j]);
        int pos = basis.source.position(c);
        if (pos < 0) {
          inside = false;
          break;
        }
        phi_q[j] = basis.images[static_cast<std::size_t>(pos)];
      }
      if (!inside) continue;
      for (int y : h.elements()) {
        bool fixed = true;
        for (std::size_t j = 0; j < qgens.size() && fixed; ++j) fixed = B.mul(psi_q[j], y) == B.mul(y, phi_q[j]);
        if (fixed) ++count;
      }
    }
    Rational m(count, static_cast<long>(basis.source.order()));
    m.canonicalize();
    if (m.get_den() != 1) throw InternalError("mark count not divisible by |K|");
    return m;
  });
}

/// Mark of an element at one pair <Q, psi>.
inline Rational mark(const Element& x, const Hom& at) {
  Rational total = 0;
  for (const auto& [pair, c] : x.terms()) total += c * mark_of_pair(x.context().source, x.context().target, at, pair);
  return total;
}

/// Full mark vector, indexed by the canonical pairs of the standard basis
/// (all homomorphisms, or injective ones only when `bifree_index`).
inline std::map<Hom, Rational, PairOrder> marks(const Element& x, bool bifree_index = false) {
  std::map<Hom, Rational, PairOrder> out;
  for (const auto& at : standard_basis(x.context(), bifree_index)) out.emplace(at, mark(x, at));
  return out;
}

/// epsilon([P, phi]) = |S : P| on A(S, S)_(p).
inline Rational augmentation(const Element& x) {
  if (!x.context().square()) throw std::invalid_argument("augmentation: context is not square");
  Rational total = 0;
  const long s = static_cast<long>(x.context().source.order());
  for (const auto& [pair, c] : x.terms()) total += c * Rational(s / static_cast<long>(pair.source.order()));
  return total;
}

/// [K, phi] -> [phi(K), phi^-1], from A(g, h) to A(h, g). Bifree elements only.
inline Element opposite(const Element& x) {
  const Context& c = x.context();
  Element out(Context{c.target, c.source, c.p});
  for (const auto& [pair, coeff] : x.terms()) {
    if (!pair.injective()) throw std::invalid_argument("opposite: element is not bifree");
    Hom inv = inverse_hom(pair, c.target.group_ptr());
    out.add(inv, coeff);
  }
  return out;
}

/// [S, id] in A(S, S)_(p).
inline Element identity_element(const Subgroup& s, int p) {
  return Element::basis(Context{s, s, p}, identity_hom(s));
}

/// [T, incl]^S_T in A(T, S)_(p).
inline Element restriction_element(const Subgroup& t, const Subgroup& s, int p) {
  if (!t.is_subgroup_of(s)) throw std::invalid_argument("restriction_element: T is not a subgroup of S");
  return Element::basis(Context{t, s, p}, identity_hom(t));
}

/// [T, id]^T_S in A(S, T)_(p).
inline Element induction_element(const Subgroup& t, const Subgroup& s, int p) {
  if (!t.is_subgroup_of(s)) throw std::invalid_argument("induction_element: T is not a subgroup of S");
  return Element::basis(Context{s, t, p}, identity_hom(t));
}

enum class SpecialKind { restriction, induction, identity };

inline Element special_element(SpecialKind kind, const Subgroup& t, const Subgroup& s, int p) {
  switch (kind) {
    case SpecialKind::restriction:
      return restriction_element(t, s, p);
    case SpecialKind::induction:
      return induction_element(t, s, p);
    case SpecialKind::identity:
      break;
  }
  return identity_element(s, p);
}

}  // namespace fusys
