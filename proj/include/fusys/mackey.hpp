#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fusys/burnside.hpp"
#include "fusys/charidem.hpp"
#include "fusys/fusion.hpp"
#include "fusys/linalg.hpp"

namespace fusys {

/// The representable functor P |-> A(P, K0)_(p). An element X of A(P, Q)
/// acts contravariantly, Y |-> Y o X, from M(Q) to M(P).
class MackeyFunctor {
 public:
  MackeyFunctor(Subgroup anchor, int p) : anchor_(std::move(anchor)), p_(p) {}

  const Subgroup& anchor() const { return anchor_; }
  int p() const { return p_; }

  /// Canonical basis of M(P): every pair (Q <= P, Q -> K0) up to conjugacy.
  std::vector<Hom> basis(const Subgroup& q) const { return standard_basis(q, anchor_, false); }

  std::size_t dimension(const Subgroup& q) const { return basis(q).size(); }

  Context context(const Subgroup& q) const { return Context{q, anchor_, p_}; }

  /// Matrix of M(X) : M(Q) -> M(P) for X in A(P, Q); column j is the image
  /// of the j-th basis vector of M(Q).
  Matrix matrix(const Element& x) const {
    const Subgroup& from = x.context().target;
    const Subgroup& to = x.context().source;
    auto cols = basis(from);
    auto rows = basis(to);
    Matrix m(rows.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      Element y = compose(Element::basis(context(from), cols[j]), x);
      for (std::size_t i = 0; i < rows.size(); ++i) m(i, j) = y.coefficient(rows[i]);
    }
    return m;
  }

  /// Coordinates of an element of M(P) in the canonical basis.
  std::vector<Rational> coordinates(const Element& y) const {
    auto b = basis(y.context().source);
    std::vector<Rational> out;
    out.reserve(b.size());
    for (const auto& pair : b) out.push_back(y.coefficient(pair));
    return out;
  }

  Element element(const Subgroup& q, const std::vector<Rational>& coords) const {
    auto b = basis(q);
    if (coords.size() != b.size()) throw std::invalid_argument("coordinate vector has the wrong length");
    Element y(context(q));
    for (std::size_t i = 0; i < b.size(); ++i) y.add_canonical(b[i], coords[i]);
    return y;
  }

 private:
  Subgroup anchor_;
  int p_;
};

/// F-stable elements of M(S). `basis` holds one vector per row in reduced
/// echelon form; `inclusion` has those vectors as columns.
struct StableModule {
  FusionSystem fusion;
  Matrix basis;
  std::vector<std::size_t> pivots;
  Matrix inclusion;
  Matrix omega;  // M(omega_F)
  std::size_t rank() const { return basis.rows(); }
};

namespace detail {

inline Matrix row_space(const Matrix& m) {
  if (m.rows() == 0) return Matrix(0, m.cols());
  return rref(m).reduced;
}

inline void stack(Matrix& into, const Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) into.append_row(m.row(r));
}

}  // namespace detail

/// Fixed space of M(omega_F), checked against the intersection of the kernels
/// of M([P, phi]) - M([P, incl]) over every morphism of F.
inline StableModule stable_module(const MackeyFunctor& m, const FusionSystem& f) {
  if (m.p() != f.p()) throw std::invalid_argument("stable_module: prime mismatch");
  const Subgroup& s = f.S();
  const int p = f.p();
  const std::size_t n = m.dimension(s);
  StableModule out;
  out.fusion = f;
  out.omega = m.matrix(characteristic_idempotent(f));
  Matrix fixed = kernel(out.omega - Matrix::identity(n));

  Matrix conditions(0, n);
  for (const auto& phi : f.all_morphisms()) {
    Context ctx{phi.source, s, p};
    Matrix d = m.matrix(Element::basis(ctx, phi)) - m.matrix(Element::basis(ctx, identity_hom(phi.source)));
    detail::stack(conditions, d);
  }
  Matrix definitional = conditions.rows() == 0 ? Matrix::identity(n) : kernel(conditions);
  if (!(detail::row_space(definitional) == fixed))
    throw InternalError("stable elements: fixed space of omega differs from the definitional stable space");

  out.basis = fixed;
  Echelon e = rref(fixed);
  out.pivots = e.pivots;
  out.inclusion = fixed.transpose();
  return out;
}

struct TransferRestriction {
  Matrix res;  // M(F) -> M(S)
  Matrix tr;   // M(S) -> M(F)
};

/// res is the inclusion of the stable elements; tr is M(omega_F) read in
/// stable coordinates.
inline TransferRestriction transfer_restriction(const StableModule& sm) {
  TransferRestriction out;
  out.res = sm.inclusion;
  out.tr = Matrix(sm.rank(), sm.omega.cols());
  for (std::size_t i = 0; i < sm.rank(); ++i)
    for (std::size_t j = 0; j < sm.omega.cols(); ++j) out.tr(i, j) = sm.omega(sm.pivots[i], j);
  return out;
}

struct SubsystemMaps {
  Matrix tr;   // M(K) -> M(F)
  Matrix res;  // M(F) -> M(K)
};

/// tr_K^F = tr_S^F tr_T^S res_T^K and res_K^F = tr_T^K res_T^S res_S^F for
/// a subsystem K on T <= S.
inline SubsystemMaps subsystem_maps(const MackeyFunctor& m, const StableModule& f, const StableModule& k) {
  const Subgroup& s = f.fusion.S();
  const Subgroup& t = k.fusion.S();
  if (s.group_ptr() != t.group_ptr() || !t.is_subgroup_of(s))
    throw std::invalid_argument("subsystem_maps: T is not a subgroup of S");
  const int p = m.p();
  auto tf = transfer_restriction(f);
  auto tk = transfer_restriction(k);
  Matrix res_ts = m.matrix(restriction_element(t, s, p));
  Matrix tr_ts = m.matrix(induction_element(t, s, p));
  return {tf.tr * tr_ts * tk.res, tk.tr * res_ts * tf.res};
}

struct MackeyCheck {
  bool equal = false;
  Matrix lhs;  // res_K^F tr_H^F
  Matrix rhs;  // tr_T^K res_T^H
  Matrix difference() const { return lhs - rhs; }
};

/// Compares res_K^F o tr_H^F with tr_T^K o res_T^H as maps M(H) -> M(K), for
/// H on S and K weakly normal on T with F = HK.
inline MackeyCheck check_corollary_mackey(const MackeyFunctor& m, const FusionSystem& f, const FusionSystem& h,
                                          const FusionSystem& k) {
  if (!(h.S() == f.S())) throw PreconditionError("Mackey check: H must be a fusion system on S");
  if (!is_weakly_normal(k, f).ok) throw PreconditionError("Mackey check: K is not weakly normal in F");
  if (!is_composition_product(f, h, k).ok)
    throw PreconditionError("Mackey check: F is not the composition product of H and K");
  auto sf = stable_module(m, f);
  auto sh = stable_module(m, h);
  auto sk = stable_module(m, k);
  auto fh = subsystem_maps(m, sf, sh);
  auto fk = subsystem_maps(m, sf, sk);
  auto th = transfer_restriction(sh);
  auto tk = transfer_restriction(sk);
  Matrix res_ts = m.matrix(restriction_element(k.S(), f.S(), m.p()));
  MackeyCheck r;
  r.lhs = fk.res * fh.tr;
  r.rhs = tk.tr * res_ts * th.res;
  r.equal = r.lhs == r.rhs;
  return r;
}

}  // namespace fusys
