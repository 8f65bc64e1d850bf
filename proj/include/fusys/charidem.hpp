#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fusys/biset.hpp"
#include "fusys/burnside.hpp"
#include "fusys/error.hpp"
#include "fusys/fusion.hpp"
#include "fusys/linalg.hpp"
#include "fusys/memo.hpp"
#include "fusys/rational.hpp"

namespace fusys {

/// Thrown when a check is asked for outside the hypotheses it is stated
/// under.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The group g as an (S, S)-biset, decomposed in the standard basis.
inline Element characteristic_element_from_group(const Subgroup& g, const Subgroup& s, int p) {
  return decompose(group_as_biset(g, s, s), p);
}

struct CharacteristicReport {
  bool generated = false;
  bool left_stable = false;
  bool right_stable = false;
  bool augmentation_prime_to_p = false;
  bool augmentation_one = false;
  bool idempotent = false;
  Rational augmentation_value;
  std::optional<Hom> witness;

  bool characteristic() const { return generated && left_stable && right_stable && augmentation_prime_to_p; }
  bool characteristic_idempotent() const { return characteristic() && idempotent && augmentation_one; }
};

/// Checks each defining property of a characteristic element (and of the
/// characteristic idempotent) exactly.
inline CharacteristicReport verify_characteristic(const Element& x, const FusionSystem& f,
                                                  Quantifier q = Quantifier::all) {
  CharacteristicReport r;
  auto gen = is_F_generated(x, f);
  r.generated = gen.ok;
  auto left = stability_check(x, f, Side::left, StabilityMethod::definitional, q);
  auto right = stability_check(x, f, Side::right, StabilityMethod::definitional, q);
  r.left_stable = left.ok;
  r.right_stable = right.ok;
  r.augmentation_value = augmentation(x);
  const Rational& a = r.augmentation_value;
  r.augmentation_prime_to_p = sgn(a) != 0 && is_p_local(a, f.p()) && is_p_local(1 / a, f.p());
  r.augmentation_one = a == 1;
  r.idempotent = compose(x, x) == x;
  for (const auto* v : {&gen, &left, &right})
    if (!v->ok && !r.witness) r.witness = v->witness;
  return r;
}

enum class IdempotentMethod { linear_solve, power_iteration };

/// Which subgroups share a normalization equation in the linear solve.
enum class Normalization { s_classes, f_classes };

/// Thrown when no characteristic idempotent can be produced; carries the rank
/// data of the failed system.
class IdempotentError : public std::runtime_error {
 public:
  IdempotentError(const std::string& what, std::size_t rank, std::size_t unknowns)
      : std::runtime_error(what + " (rank " + std::to_string(rank) + ", unknowns " + std::to_string(unknowns) + ")"),
        rank_(rank),
        unknowns_(unknowns) {}
  std::size_t rank() const { return rank_; }
  std::size_t unknowns() const { return unknowns_; }

 private:
  std::size_t rank_;
  std::size_t unknowns_;
};

namespace detail {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

/// Canonical pairs (K, phi) with phi in F, up to S x S conjugation.
inline std::vector<Hom> generated_basis(const FusionSystem& f) {
  std::set<Hom, PairOrder> out;
  for (const auto& cls : subgroup_lattice(f.S()))
    for (const auto& phi : f.homs(cls.front())) out.insert(canonicalize(f.S(), f.S(), phi));
  return {out.begin(), out.end()};
}

/// Groups subgroups of S into S- or F-conjugacy classes; returns a class id
/// per subgroup index of f.subgroups().
inline std::vector<std::size_t> subgroup_classes(const FusionSystem& f, Normalization n) {
  const auto& subs = f.subgroups();
  UnionFind uf(subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (n == Normalization::s_classes) {
      for (int x : f.S().elements()) uf.unite(i, f.index_of(subs[i].conjugate(x)));
    } else {
      for (const auto& phi : f.homs(subs[i]))
        uf.unite(i, f.index_of(Subgroup::unchecked(f.S().group_ptr(), phi.image_set())));
    }
  }
  std::vector<std::size_t> out(subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i) out[i] = uf.find(i);
  return out;
}

inline Element reduce_mod(const Element& x, const Integer& m) {
  Element out(x.context());
  for (const auto& [pair, c] : x.terms()) out.add_canonical(pair, Rational(fusys::reduce_mod(c, m)));
  return out;
}

inline Element compose_mod(const Element& a, const Element& b, const Integer& m) {
  return reduce_mod(compose(a, b), m);
}

inline Element power_mod(Element base, unsigned long e, const Integer& m) {
  Element result = identity_element(base.context().source, base.context().p);
  while (e > 0) {
    if (e & 1u) result = compose_mod(result, base, m);
    e >>= 1u;
    if (e > 0) base = compose_mod(base, base, m);
  }
  return result;
}

inline Memo<Element>& idempotent_memo() {
  static Memo<Element> memo;
  return memo;
}

}  // namespace detail

/// Solves for omega_F as the unique F-generated bistable element satisfying
/// the normalization: coefficients on pairs with K = S sum to 1, and those on
/// each class of proper subgroups sum to 0. Mark identities express
/// stability. Generating morphisms suffice here; the caller verifies.
inline Element solve_characteristic_idempotent(const FusionSystem& f, Normalization norm = Normalization::s_classes) {
  const Subgroup& s = f.S();
  const GroupPtr& G = s.group_ptr();
  const Context ctx{s, s, f.p()};
  auto unknowns = detail::generated_basis(f);
  auto at = standard_basis(s, s, true);
  std::map<Hom, std::size_t, PairOrder> at_index;
  for (std::size_t i = 0; i < at.size(); ++i) at_index.emplace(at[i], i);
  auto idx = [&](const Hom& h) { return at_index.at(canonicalize(s, s, h)); };

  detail::UnionFind uf(at.size());
  auto gens = f.generating_morphisms();
  for (const auto& phi : gens) {
    Hom phi_inv = inverse_hom(phi, G);
    for (const auto& q : all_subgroups(phi.source)) {
      Hom back = restrict_hom(phi_inv, Subgroup::unchecked(G, restrict_hom(phi, q).image_set()));
      for (const auto& psi : enumerate_homs(q, s, true)) uf.unite(idx(psi), idx(compose_homs(psi, back)));
    }
  }
  auto class_reps = subgroup_lattice(s);
  for (const auto& phi : gens)
    for (const auto& cls : class_reps)
      for (const auto& psi : enumerate_homs(cls.front(), phi.source, true))
        uf.unite(idx(psi), idx(compose_homs(phi, psi)));

  Matrix marks(at.size(), unknowns.size());
  for (std::size_t a = 0; a < at.size(); ++a)
    for (std::size_t u = 0; u < unknowns.size(); ++u) marks(a, u) = mark_of_pair(s, s, at[a], unknowns[u]);

  Matrix sys;
  std::vector<Rational> rhs;
  for (std::size_t a = 0; a < at.size(); ++a) {
    std::size_t r = uf.find(a);
    if (r == a) continue;
    std::vector<Rational> row(unknowns.size());
    for (std::size_t u = 0; u < unknowns.size(); ++u) row[u] = marks(a, u) - marks(r, u);
    sys.append_row(row);
    rhs.push_back(0);
  }
  auto cls = detail::subgroup_classes(f, norm);
  std::map<std::size_t, std::vector<Rational>> norm_rows;
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    auto& row = norm_rows[cls[f.index_of(unknowns[u].source)]];
    row.resize(unknowns.size());
    row[u] = 1;
  }
  const std::size_t s_class = cls[f.index_of(s)];
  for (auto& [c, row] : norm_rows) {
    sys.append_row(row);
    rhs.push_back(c == s_class ? 1 : 0);
  }
  auto sol = solve(sys, rhs);
  if (sol.status == SolveResult::Status::inconsistent)
    throw IdempotentError("characteristic idempotent: linear system is inconsistent", sol.rank, sol.unknowns);
  if (sol.status == SolveResult::Status::underdetermined)
    throw IdempotentError("characteristic idempotent: linear system has no unique solution", sol.rank, sol.unknowns);
  Element omega(ctx);
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    if (!is_p_local(sol.solution[u], f.p()))
      throw IdempotentError("characteristic idempotent: solution is not " + std::to_string(f.p()) +
                                "-local (F is not saturated?)",
                            sol.rank, sol.unknowns);
    omega.add_canonical(unknowns[u], sol.solution[u]);
  }
  return omega;
}

/// omega_F as the p-adic limit of Omega^(n!), Omega the ambient group as an
/// (S, S)-biset. Works modulo p^k, reconstructs rationals, and accepts only
/// exactly verified idempotents; k grows by 8 on failure.
inline Element power_iteration_idempotent(const FusionSystem& f, unsigned k0 = 16, unsigned k_cap = 256) {
  if (!f.ambient()) throw PreconditionError("power iteration needs a fusion system realized by a group");
  const Subgroup& s = f.S();
  Element omega_g = characteristic_element_from_group(*f.ambient(), s, f.p());
  for (unsigned k = k0; k <= k_cap; k += 8) {
    const Integer m = ipow(f.p(), k);
    Element y = detail::reduce_mod(omega_g, m);
    bool stable = false;
    for (unsigned long j = 2; j < 4 * k + 64; ++j) {
      y = detail::power_mod(y, j, m);
      if (detail::compose_mod(y, y, m) == y) {
        stable = true;
        break;
      }
    }
    if (!stable) continue;
    Element candidate(y.context());
    bool reconstructed = true;
    for (const auto& [pair, c] : y.terms()) {
      auto q = rational_reconstruct(c.get_num(), m);
      if (!q) {
        reconstructed = false;
        break;
      }
      candidate.add_canonical(pair, *q);
    }
    if (!reconstructed) continue;
    if (compose(candidate, candidate) == candidate && augmentation(candidate) == 1 &&
        compose(omega_g, candidate) == omega_g && is_F_generated(candidate, f).ok)
      return candidate;
  }
  throw IdempotentError("characteristic idempotent: power iteration did not verify up to the modulus cap", 0, 0);
}

/// omega_F by the chosen method, verified exactly (F-generated, bistable
/// over all morphisms, idempotent, augmentation 1). Results are cached per
/// fusion system.
inline Element characteristic_idempotent(const FusionSystem& f,
                                         IdempotentMethod method = IdempotentMethod::linear_solve) {
  auto key = f.fingerprint();
  key.push_back(static_cast<int>(method));
  return detail::idempotent_memo().get_or_compute(key, [&] {
    Element omega = method == IdempotentMethod::linear_solve ? solve_characteristic_idempotent(f)
                                                             : power_iteration_idempotent(f);
    auto report = verify_characteristic(omega, f, Quantifier::all);
    if (!report.characteristic_idempotent())
      throw InternalError("computed characteristic idempotent fails verification");
    return omega;
  });
}

/// Deterministic 64-bit FNV-1a hash of a text.
inline std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

/// Compact canonical text of an element: one "K|phi|c" block per term.
inline std::string element_text(const Element& x) {
  std::ostringstream os;
  os << x.context().p << ';';
  for (const auto& [pair, c] : x.terms()) {
    for (int e : pair.source.elements()) os << e << ',';
    os << '|';
    for (int e : pair.images) os << e << ',';
    os << '|' << c.get_str() << ';';
  }
  return os.str();
}

inline std::string hash_hex(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 15u];
  return out;
}

struct IdentityCheck {
  bool equal = false;
  Element lhs;
  Element rhs;
  Element difference() const { return lhs - rhs; }
};

/// omega_F o [T, incl]^S_T against omega_H o [T, incl]^S_T o omega_K, with H
/// on S and K on T.
inline IdentityCheck check_star_identity(const FusionSystem& f, const FusionSystem& h, const FusionSystem& k) {
  if (!(h.S() == f.S())) throw PreconditionError("star identity: H must be a fusion system on S");
  const int p = f.p();
  auto incl = restriction_element(k.S(), f.S(), p);
  IdentityCheck r;
  r.lhs = compose(characteristic_idempotent(f), incl);
  r.rhs = compose(compose(characteristic_idempotent(h), incl), characteristic_idempotent(k));
  r.equal = r.lhs == r.rhs;
  return r;
}

struct PropEquivalents {
  bool star = false;
  bool cond1 = false;
  bool cond2 = false;
  bool agree() const { return star == cond1 && cond1 == cond2; }
};

/// The three equivalent conditions for a composition product F = HK with H
/// on S and K on T: the star identity; left K-stability of
/// [T, id]^T_S o omega_H o [T, incl]^S_T o omega_K; right K-stability of
/// omega_K o [T, id]^T_S o omega_H o [T, incl]^S_T.
inline PropEquivalents check_prop_equivalents(const FusionSystem& f, const FusionSystem& h, const FusionSystem& k) {
  if (!is_composition_product(f, h, k).ok)
    throw PreconditionError("equivalent conditions: F is not the composition product of H and K");
  const int p = f.p();
  const Subgroup& t = k.S();
  const Subgroup& s = f.S();
  auto incl = restriction_element(t, s, p);
  auto ind = induction_element(t, s, p);
  auto wh = characteristic_idempotent(h);
  auto wk = characteristic_idempotent(k);
  PropEquivalents r;
  r.star = check_star_identity(f, h, k).equal;
  auto middle = compose(compose(ind, wh), incl);
  r.cond1 = stability_check(compose(middle, wk), k, Side::left, StabilityMethod::definitional).ok;
  r.cond2 = stability_check(compose(wk, middle), k, Side::right, StabilityMethod::definitional).ok;
  return r;
}

struct NormalCase {
  bool cp = false;
  bool aut_factor = false;
  bool cp_with_normalizer = false;
  bool agree() const { return cp == aut_factor && aut_factor == cp_with_normalizer; }
};

/// For K weakly normal on T: F = HK, Aut_F(T) = Aut_H(T) Aut_K(T) as a set
/// product, and F = N_H(T) K.
inline NormalCase check_lemma_normal_case(const FusionSystem& f, const FusionSystem& h, const FusionSystem& k) {
  if (!is_weakly_normal(k, f).ok) throw PreconditionError("normal case: K is not weakly normal in F");
  const Subgroup& t = k.S();
  NormalCase r;
  r.cp = is_composition_product(f, h, k).ok;
  std::set<std::vector<int>> product;
  for (const auto& eta : h.automorphisms(t))
    for (const auto& kappa : k.automorphisms(t)) product.insert(compose_homs(eta, kappa).images);
  std::set<std::vector<int>> aut_f;
  for (const auto& a : f.automorphisms(t)) aut_f.insert(a.images);
  r.aut_factor = product == aut_f;
  r.cp_with_normalizer = is_composition_product(f, normalizer_subsystem(h, t), k).ok;
  return r;
}

struct NormalizerSupport {
  bool is_normalizer = false;
  bool support_ok = false;
  std::optional<Hom> witness;
  bool agree() const { return is_normalizer == support_ok; }
};

/// F = N_F(U) against: omega_F is supported on pairs (P, phi) with P >= U and
/// phi in N_F(U).
inline NormalizerSupport check_normalizer_support(const FusionSystem& f, const Subgroup& u) {
  FusionSystem n = normalizer_subsystem(f, u);
  NormalizerSupport r;
  r.is_normalizer = n == f;
  r.support_ok = true;
  Element omega = characteristic_idempotent(f);
  for (const auto& [pair, c] : omega.terms()) {
    if (!u.is_subgroup_of(pair.source) || !n.contains(pair)) {
      r.support_ok = false;
      r.witness = pair;
      break;
    }
  }
  return r;
}

struct Corollaries {
  bool hyperfocal = false;
  bool pprime = false;
  Subgroup t;
};

/// Group-level instances: with T = S n O^p(G), omega_F o [T, incl] equals
/// [T, incl] o omega of F_T(O^p(G)); and omega_F = omega of F_S(N_G(S))
/// composed with omega of F_S(O^{p'}(G)).
inline Corollaries check_corollaries(const Subgroup& g, int p) {
  auto core = core_subgroups(g, p);
  const Subgroup& s = core.sylow;
  Corollaries r;
  r.t = core.hyperfocal;
  auto f = FusionSystem::from_group(g, s, p);
  auto k = FusionSystem::from_group(core.op, core.hyperfocal, p);
  auto incl = restriction_element(core.hyperfocal, s, p);
  auto wf = characteristic_idempotent(f);
  r.hyperfocal = compose(wf, incl) == compose(incl, characteristic_idempotent(k));
  auto n = FusionSystem::from_group(normalizer(g, s), s, p);
  auto o = FusionSystem::from_group(core.opprime, s, p);
  r.pprime = wf == compose(characteristic_idempotent(n), characteristic_idempotent(o));
  return r;
}

struct ConjectureEvidence {
  bool cp = false;
  bool identity = false;
  std::string lhs_hash;
  std::string rhs_hash;
  Element lhs;
  Element rhs;
};

/// Both sides of the general identity in A(T, R):
///   [R, id]^R_S o omega_F o [T, incl]^S_T   and
///   omega_H o [R, id]^R_S o [T, incl]^S_T o omega_K,
/// with the composition-product verdict. Evidence only.
inline ConjectureEvidence check_conjecture_general(const FusionSystem& f, const FusionSystem& h,
                                                   const FusionSystem& k) {
  const Subgroup& s = f.S();
  const Subgroup& r = h.S();
  const Subgroup& t = k.S();
  {
    std::set<int> prod;
    for (int a : r.elements())
      for (int b : t.elements()) prod.insert(s.group().mul(a, b));
    if (prod.size() != s.order()) throw PreconditionError("general identity: S is not the product RT");
  }
  const int p = f.p();
  auto ind = induction_element(r, s, p);
  auto incl = restriction_element(t, s, p);
  ConjectureEvidence e;
  e.cp = is_composition_product(f, h, k).ok;
  e.lhs = compose(compose(ind, characteristic_idempotent(f)), incl);
  e.rhs = compose(compose(compose(characteristic_idempotent(h), ind), incl), characteristic_idempotent(k));
  e.identity = e.lhs == e.rhs;
  e.lhs_hash = hash_hex(fnv1a(element_text(e.lhs)));
  e.rhs_hash = hash_hex(fnv1a(element_text(e.rhs)));
  return e;
}

}  // namespace fusys
