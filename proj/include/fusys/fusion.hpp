#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fusys/burnside.hpp"
#include "fusys/error.hpp"
#include "fusys/group.hpp"
#include "fusys/lattice.hpp"

namespace fusys {

/// A fusion system on a finite p-group S, stored extensionally: for every
/// subgroup P of S the set of F-morphisms P -> S (corestriction is implicit).
class FusionSystem {
 public:
  FusionSystem() = default;

  /// F_S(G): all maps c_g restricted to P with g P g^-1 <= S, g in `g`.
  static FusionSystem from_group(const Subgroup& g, const Subgroup& s, int p) {
    if (!s.is_subgroup_of(g)) throw ValidationError("fusion_from_group: S is not a subgroup of G");
    FusionSystem f(s, p);
    f.ambient_ = g;
    if (!is_sylow(g, s, p)) {
      f.warning_ = "S is not a Sylow " + std::to_string(p) + "-subgroup of " + g.group().label() +
                   "; saturation is not guaranteed";
    } else {
      f.saturated_by_construction_ = true;
    }
    const FiniteGroup& G = g.group();
    for (std::size_t i = 0; i < f.subs_.size(); ++i) {
      const Subgroup& P = f.subs_[i];
      for (int x : g.elements()) {
        std::vector<int> img;
        img.reserve(P.order());
        bool inside = true;
        for (int y : P.elements()) {
          int c = G.conj(x, y);
          if (!s.contains(c)) {
            inside = false;
            break;
          }
          img.push_back(c);
        }
        if (inside) f.homs_[i].insert(std::move(img));
      }
    }
    return f;
  }

  /// Least fusion system on S containing the given injective maps (each from
  /// a subgroup of S into S).
  static FusionSystem closure(const Subgroup& s, int p, const std::vector<Hom>& generators) {
    FusionSystem f(s, p);
    for (std::size_t i = 0; i < f.subs_.size(); ++i)
      for (int x : s.elements()) f.homs_[i].insert(conjugation_hom(f.subs_[i], x).images);
    for (const auto& g : generators) {
      if (!g.injective()) throw ValidationError("fusion_closure: generator is not injective");
      if (g.source.group_ptr() != s.group_ptr() || !g.source.is_subgroup_of(s))
        throw ValidationError("fusion_closure: generator source is not a subgroup of S");
      for (int y : g.images)
        if (y < 0 || y >= s.group().order() || !s.contains(y))
          throw ValidationError("fusion_closure: generator image is not in S");
      for (int a : g.source.elements())
        for (int b : g.source.generators())
          if (g(s.group().mul(a, b)) != s.group().mul(g(a), g(b)))
            throw ValidationError("fusion_closure: generator is not a homomorphism");
      f.homs_[f.index_of(g.source)].insert(g.images);
    }
    f.close();
    return f;
  }

  const Subgroup& S() const { return s_; }
  int p() const { return p_; }
  const std::vector<Subgroup>& subgroups() const { return subs_; }
  const std::optional<Subgroup>& ambient() const { return ambient_; }
  bool saturated_by_construction() const { return saturated_by_construction_; }
  const std::string& warning() const { return warning_; }

  std::size_t index_of(const Subgroup& q) const {
    auto it = index_.find(q.elements());
    if (it == index_.end()) throw std::invalid_argument("not a subgroup of S");
    return it->second;
  }

  /// Hom_F(P, S), sorted by image list.
  std::vector<Hom> homs(const Subgroup& q) const {
    std::size_t i = index_of(q);
    std::vector<Hom> out;
    for (const auto& img : homs_[i]) out.push_back(Hom{subs_[i], img});
    return out;
  }

  /// Hom_F(P, Q): the maps with image inside Q.
  std::vector<Hom> homs(const Subgroup& from, const Subgroup& into) const {
    std::vector<Hom> out;
    for (auto& h : homs(from)) {
      bool ok = true;
      for (int y : h.images) ok = ok && into.contains(y);
      if (ok) out.push_back(std::move(h));
    }
    return out;
  }

  /// Aut_F(P).
  std::vector<Hom> automorphisms(const Subgroup& q) const { return homs(q, q); }

  bool contains(const Hom& phi) const {
    auto it = index_.find(phi.source.elements());
    if (it == index_.end()) return false;
    return homs_[it->second].count(phi.images) > 0;
  }

  std::size_t morphism_count() const {
    std::size_t n = 0;
    for (const auto& h : homs_) n += h.size();
    return n;
  }

  /// Every morphism P -> S, over all subgroups P of S.
  std::vector<Hom> all_morphisms() const {
    std::vector<Hom> out;
    for (std::size_t i = 0; i < subs_.size(); ++i)
      for (const auto& img : homs_[i]) out.push_back(Hom{subs_[i], img});
    return out;
  }

  /// Morphisms out of one representative of each S-conjugacy class of
  /// subgroups, one per orbit under post-composition with S-conjugation.
  /// Together with S-conjugations and restrictions they generate F.
  std::vector<Hom> generating_morphisms() const {
    std::vector<Hom> out;
    const FiniteGroup& G = s_.group();
    for (const auto& cls : subgroup_lattice(s_)) {
      const Subgroup& P = cls.front();
      std::set<std::vector<int>> seen;
      for (const auto& img : homs_[index_of(P)]) {
        std::vector<int> best = img;
        for (int x : s_.elements()) {
          std::vector<int> c(img.size());
          for (std::size_t i = 0; i < img.size(); ++i) c[i] = G.conj(x, img[i]);
          best = std::min(best, c);
        }
        if (seen.insert(best).second) out.push_back(Hom{P, best});
      }
    }
    return out;
  }

  /// Integer key identifying the system (ambient group, S, morphisms).
  std::vector<int> fingerprint() const {
    std::vector<int> key{s_.group().id(), p_, static_cast<int>(s_.order())};
    key.insert(key.end(), s_.elements().begin(), s_.elements().end());
    for (const auto& set : homs_) {
      key.push_back(static_cast<int>(set.size()));
      for (const auto& img : set) key.insert(key.end(), img.begin(), img.end());
    }
    return key;
  }

  /// Same S and the same morphism sets.
  friend bool operator==(const FusionSystem& a, const FusionSystem& b) {
    return a.p_ == b.p_ && a.s_ == b.s_ && a.homs_ == b.homs_;
  }

 private:
  FusionSystem(const Subgroup& s, int p) : s_(s), p_(p) {
    if (!is_prime(p)) throw ValidationError("p = " + std::to_string(p) + " is not prime");
    if (!is_p_group_order(static_cast<long>(s.order()), p))
      throw ValidationError("S has order " + std::to_string(s.order()) + ", not a power of " + std::to_string(p));
    subs_ = all_subgroups(s);
    for (std::size_t i = 0; i < subs_.size(); ++i) index_.emplace(subs_[i].elements(), i);
    homs_.resize(subs_.size());
  }

  // Fixpoint of: restriction to subgroups, inverses of isomorphisms onto the
  // image, and composition.
  void close() {
    const std::size_t n = subs_.size();
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < n; ++i) {
        const Subgroup& P = subs_[i];
        std::vector<std::vector<int>> current(homs_[i].begin(), homs_[i].end());
        for (const auto& img : current) {
          Hom phi{P, img};
          Hom inv = inverse_hom(phi, s_.group_ptr());
          std::size_t j = index_of(inv.source);
          changed |= homs_[j].insert(inv.images).second;
          for (const auto& psi_img : std::vector<std::vector<int>>(homs_[j].begin(), homs_[j].end())) {
            Hom psi{subs_[j], psi_img};
            changed |= homs_[i].insert(compose_homs(psi, phi).images).second;
          }
          for (std::size_t k = 0; k < n; ++k) {
            const Subgroup& Q = subs_[k];
            if (Q.order() >= P.order() || !Q.is_subgroup_of(P)) continue;
            changed |= homs_[k].insert(restrict_hom(phi, Q).images).second;
          }
        }
      }
    }
  }

  friend FusionSystem normalizer_subsystem(const FusionSystem& f, const Subgroup& u);

  Subgroup s_;
  int p_ = 2;
  std::vector<Subgroup> subs_;
  std::map<std::vector<int>, std::size_t> index_;
  std::vector<std::set<std::vector<int>>> homs_;
  std::optional<Subgroup> ambient_;
  bool saturated_by_construction_ = false;
  std::string warning_;
};

/// Verdict plus the first violating morphism, if any.
struct Verdict {
  bool ok = true;
  std::optional<Hom> witness;
  std::string detail;

  explicit operator bool() const { return ok; }
  static Verdict pass() { return {}; }
  static Verdict fail(std::optional<Hom> w, std::string d) { return {false, std::move(w), std::move(d)}; }
};

/// Every morphism of `k` is a morphism of `f`.
inline Verdict is_subsystem(const FusionSystem& k, const FusionSystem& f) {
  if (k.p() != f.p()) return Verdict::fail(std::nullopt, "different primes");
  if (!k.S().is_subgroup_of(f.S())) return Verdict::fail(std::nullopt, "underlying group is not a subgroup of S");
  for (const auto& phi : k.all_morphisms())
    if (!f.contains(phi)) return Verdict::fail(phi, "morphism of the subsystem is not in F");
  return Verdict::pass();
}

/// T strongly F-closed: every F-morphism maps subgroups of T into T.
inline Verdict is_strongly_closed(const Subgroup& t, const FusionSystem& f) {
  if (!t.is_subgroup_of(f.S())) return Verdict::fail(std::nullopt, "T is not a subgroup of S");
  for (const auto& q : f.subgroups()) {
    if (!q.is_subgroup_of(t)) continue;
    for (const auto& phi : f.homs(q))
      for (int y : phi.images)
        if (!t.contains(y)) return Verdict::fail(phi, "F-morphism moves a subgroup of T outside T");
  }
  return Verdict::pass();
}

enum class Quantifier { generators, all };

/// Weak normality of `k` (on T) in `f`: T strongly closed, and
/// phi psi phi^-1 in K for every F-morphism phi and K-morphism psi between
/// subgroups of the domain of phi.
inline Verdict is_weakly_normal(const FusionSystem& k, const FusionSystem& f, Quantifier q = Quantifier::generators) {
  if (auto v = is_subsystem(k, f); !v) return v;
  const Subgroup& t = k.S();
  if (auto v = is_strongly_closed(t, f); !v) return v;
  const GroupPtr& G = f.S().group_ptr();

  std::vector<Hom> phis;
  if (q == Quantifier::all) {
    for (const auto& sub : f.subgroups())
      if (sub.is_subgroup_of(t))
        for (auto& h : f.homs(sub)) phis.push_back(std::move(h));
  } else {
    for (const auto& cls : subgroup_lattice(f.S())) {
      if (!cls.front().is_subgroup_of(t)) continue;
      for (auto& h : f.homs(cls.front())) phis.push_back(std::move(h));
    }
    for (int x : f.S().generators()) phis.push_back(conjugation_hom(t, x));
  }

  auto ksubs = all_subgroups(t);
  for (const auto& phi : phis) {
    const Subgroup& P = phi.source;
    Hom phi_inv = inverse_hom(phi, G);
    for (const auto& Q : ksubs) {
      if (!Q.is_subgroup_of(P)) continue;
      for (const auto& psi : k.homs(Q)) {
        bool inside = true;
        for (int y : psi.images) inside = inside && P.contains(y);
        if (!inside) continue;
        // phi o psi o phi^-1 on phi(Q)
        Hom on_image = restrict_hom(phi_inv, Subgroup::unchecked(G, restrict_hom(phi, Q).image_set()));
        Hom conj = compose_homs(phi, compose_homs(psi, on_image));
        if (!k.contains(conj)) return Verdict::fail(phi, "conjugating a K-morphism by phi leaves K");
      }
    }
  }
  return Verdict::pass();
}

/// N_F(U) for U normal in S: morphisms phi that extend to some F-morphism
/// on PU mapping U onto U.
inline FusionSystem normalizer_subsystem(const FusionSystem& f, const Subgroup& u) {
  if (!u.is_subgroup_of(f.S()) || !u.is_normal_in(f.S()))
    throw ValidationError("normalizer_subsystem: U must be a normal subgroup of S");
  std::vector<Hom> keep;
  for (const auto& P : f.subgroups()) {
    Subgroup pu = P.join(u);
    std::set<std::vector<int>> restricted;
    for (const auto& ext : f.homs(pu)) {
      bool fixes_u = true;
      for (int y : u.elements()) fixes_u = fixes_u && u.contains(ext(y));
      if (fixes_u) restricted.insert(restrict_hom(ext, P).images);
    }
    for (const auto& img : restricted) keep.push_back(Hom{P, img});
  }
  FusionSystem n = FusionSystem::closure(f.S(), f.p(), keep);
  n.saturated_by_construction_ = false;
  return n;
}

/// Definition of the composition product: S = RT and every F-morphism from a
/// subgroup of T into R is eta o kappa with kappa in K and eta in H.
inline Verdict is_composition_product(const FusionSystem& f, const FusionSystem& h, const FusionSystem& k) {
  if (auto v = is_subsystem(h, f); !v) throw ValidationError("composition product: H is not a subsystem of F");
  if (auto v = is_subsystem(k, f); !v) throw ValidationError("composition product: K is not a subsystem of F");
  const Subgroup& r = h.S();
  const Subgroup& t = k.S();
  const FiniteGroup& G = f.S().group();
  {
    std::set<int> prod;
    for (int a : r.elements())
      for (int b : t.elements()) prod.insert(G.mul(a, b));
    if (prod.size() != f.S().order()) return Verdict::fail(std::nullopt, "S is not the product RT");
  }
  for (const auto& P : f.subgroups()) {
    if (!P.is_subgroup_of(t)) continue;
    for (const auto& phi : f.homs(P, r)) {
      bool factors = false;
      for (const auto& kappa : k.homs(P)) {
        Hom kinv = inverse_hom(kappa, f.S().group_ptr());
        bool in_r = true;
        for (int y : kinv.source.elements()) in_r = in_r && r.contains(y);
        if (!in_r) continue;
        if (h.contains(compose_homs(phi, kinv))) {
          factors = true;
          break;
        }
      }
      if (!factors) return Verdict::fail(phi, "F-morphism does not factor as an H-morphism after a K-morphism");
    }
  }
  return Verdict::pass();
}

/// Saturation axioms checked exhaustively: every fully normalized subgroup is
/// fully centralized with Aut_S(P) Sylow in Aut_F(P), and every phi with
/// fully centralized image extends to N_phi.
inline Verdict saturation_check(const FusionSystem& f) {
  const Subgroup& s = f.S();
  const GroupPtr& G = s.group_ptr();
  const int p = f.p();
  auto aut_s = [&](const Subgroup& q) {
    std::set<std::vector<int>> out;
    Subgroup n = normalizer(s, q);
    for (int x : n.elements()) out.insert(conjugation_hom(q, x).images);
    return out;
  };
  auto image_of = [&](const Hom& phi) { return Subgroup::unchecked(G, phi.image_set()); };
  for (const auto& P : f.subgroups()) {
    auto morphs = f.homs(P);
    std::size_t max_n = 0, max_c = 0;
    for (const auto& phi : morphs) {
      Subgroup im = image_of(phi);
      max_n = std::max(max_n, normalizer(s, im).order());
      max_c = std::max(max_c, centralizer(s, im).order());
    }
    const bool fully_normalized = normalizer(s, P).order() == max_n;
    const bool fully_centralized = centralizer(s, P).order() == max_c;
    if (fully_normalized) {
      if (!fully_centralized)
        return Verdict::fail(identity_hom(P), "fully normalized subgroup is not fully centralized");
      long aut_f = static_cast<long>(f.automorphisms(P).size());
      if (static_cast<long>(aut_s(P).size()) != p_part(aut_f, p))
        return Verdict::fail(identity_hom(P), "Aut_S(P) is not Sylow in Aut_F(P)");
    }
    for (const auto& phi : morphs) {
      Subgroup im = image_of(phi);
      if (centralizer(s, im).order() != max_c) continue;
      auto target_aut = aut_s(im);
      Hom phi_inv = inverse_hom(phi, G);
      std::vector<int> nphi;
      Subgroup norm_p = normalizer(s, P);
      for (int x : norm_p.elements()) {
        Hom c = compose_homs(phi, compose_homs(conjugation_hom(P, x), phi_inv));
        if (target_aut.count(c.images)) nphi.push_back(x);
      }
      Subgroup n = Subgroup::unchecked(G, nphi);
      bool extends = false;
      for (const auto& ext : f.homs(n)) {
        if (restrict_hom(ext, P).images == phi.images) {
          extends = true;
          break;
        }
      }
      if (!extends) return Verdict::fail(phi, "morphism does not extend to N_phi");
    }
  }
  return Verdict::pass();
}

/// Support of X lies on pairs (K, phi) with phi in F. Square context on S.
inline Verdict is_F_generated(const Element& x, const FusionSystem& f) {
  if (!(x.context().source == f.S()) || !(x.context().target == f.S()))
    throw std::invalid_argument("is_F_generated: element does not live in A(S, S)");
  for (const auto& [pair, c] : x.terms())
    if (!f.contains(pair)) return Verdict::fail(pair, "support pair is not an F-morphism");
  return Verdict::pass();
}

enum class Side { left, right };
enum class StabilityMethod { definitional, marks };

namespace detail {

inline Rational mark_at(const Element& x, const Hom& at) {
  return mark(x, canonicalize(x.context().source, x.context().target, at));
}

inline std::vector<Hom> phis_for(const FusionSystem& f, Quantifier q) {
  return q == Quantifier::all ? f.all_morphisms() : f.generating_morphisms();
}

}  // namespace detail

/// Right stability (X in A(S, H)): X o [P, phi]^S_P = X o [P, incl]^S_P.
/// Left stability (X in A(G, S)): [phi(P), phi^-1]^P_S o X = [P, id]^P_S o X.
/// The marks method checks the equivalent mark identities.
inline Verdict stability_check(const Element& x, const FusionSystem& f, Side side, StabilityMethod method,
                               Quantifier q = Quantifier::generators) {
  const Context& c = x.context();
  const Subgroup& s = f.S();
  const int p = c.p;
  if (side == Side::right && !(c.source == s)) throw std::invalid_argument("right stability: source is not S");
  if (side == Side::left && !(c.target == s)) throw std::invalid_argument("left stability: target is not S");
  const GroupPtr& G = s.group_ptr();
  auto phis = detail::phis_for(f, q);

  if (method == StabilityMethod::definitional) {
    for (const auto& phi : phis) {
      const Subgroup& P = phi.source;
      if (side == Side::right) {
        auto lhs = compose(x, Element::basis(Context{P, s, p}, phi));
        auto rhs = compose(x, Element::basis(Context{P, s, p}, identity_hom(P)));
        if (!(lhs == rhs)) return Verdict::fail(phi, "right composite with [P, phi] differs from [P, incl]");
      } else {
        auto lhs = compose(Element::basis(Context{s, P, p}, inverse_hom(phi, G)), x);
        auto rhs = compose(Element::basis(Context{s, P, p}, identity_hom(P)), x);
        if (!(lhs == rhs)) return Verdict::fail(phi, "left composite with [phi(P), phi^-1] differs from [P, id]");
      }
    }
    return Verdict::pass();
  }

  const bool injective_only = x.bifree();
  if (side == Side::right) {
    // mark at <Q, psi> equals mark at <phi(Q), psi o phi^-1>, phi: Q -> S in F
    for (const auto& phi : phis) {
      Hom phi_inv = inverse_hom(phi, G);
      for (const auto& Q : all_subgroups(phi.source)) {
        Hom phi_q = restrict_hom(phi, Q);
        Subgroup im = Subgroup::unchecked(G, phi_q.image_set());
        Hom back = restrict_hom(phi_inv, im);
        for (const auto& psi : enumerate_homs(Q, c.target, injective_only)) {
          if (detail::mark_at(x, psi) != detail::mark_at(x, compose_homs(psi, back)))
            return Verdict::fail(phi, "marks differ under precomposition with phi");
        }
      }
    }
  } else {
    // mark at <Q, psi> equals mark at <Q, phi o psi>, phi defined on psi(Q)
    auto sources = all_subgroups(c.source);
    for (const auto& phi : phis) {
      for (const auto& Q : sources)
        for (const auto& psi : enumerate_homs(Q, phi.source, injective_only)) {
          if (detail::mark_at(x, psi) != detail::mark_at(x, compose_homs(phi, psi)))
            return Verdict::fail(phi, "marks differ under postcomposition with phi");
        }
    }
  }
  return Verdict::pass();
}

}  // namespace fusys
