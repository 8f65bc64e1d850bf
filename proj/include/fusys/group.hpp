#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fusys {

inline constexpr std::size_t kDefaultMaxOrder = 512;

/// Invalid group input: bad table, bad permutation, cap exceeded.
class GroupError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Permutation of {0..degree-1} as an image array. Products compose right to
/// left: (a*b)[i] = a[b[i]].
using Permutation = std::vector<int>;

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A finite group stored as a dense multiplication table on element indices
/// 0..order-1. Immutable once built.
class FiniteGroup {
 public:
  /// Builds from a row-major order*order table. Validates the group axioms.
  static GroupPtr from_table(std::vector<int> table, std::size_t order, std::string label,
                             std::string descriptor = {}) {
    if (order == 0) throw GroupError("group must be nonempty");
    if (table.size() != order * order) throw GroupError("multiplication table is not square");
    for (int v : table)
      if (v < 0 || static_cast<std::size_t>(v) >= order) throw GroupError("table entry out of range");
    auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    g->n_ = static_cast<int>(order);
    g->table_ = std::move(table);
    g->label_ = std::move(label);
    g->descriptor_ = std::move(descriptor);
    g->validate();
    return g;
  }

  /// Closes the generators under composition. Elements are indexed in
  /// lexicographic order of their image arrays, so the identity is index 0.
  static GroupPtr from_permutations(const std::vector<Permutation>& gens, int degree, std::string label,
                                    std::size_t max_order = kDefaultMaxOrder, std::string descriptor = {}) {
    if (degree <= 0) throw GroupError("permutation degree must be positive");
    for (const auto& p : gens) check_permutation(p, degree);
    Permutation id(static_cast<std::size_t>(degree));
    std::iota(id.begin(), id.end(), 0);
    std::map<Permutation, int> seen{{id, 0}};
    std::vector<Permutation> elems{id};
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (const auto& s : gens) {
        Permutation prod = compose(elems[i], s);
        if (seen.emplace(prod, 0).second) {
          elems.push_back(std::move(prod));
          if (elems.size() > max_order)
            throw GroupError("group order exceeds cap " + std::to_string(max_order));
        }
      }
    }
    std::sort(elems.begin(), elems.end());
    std::map<Permutation, int> index;
    for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
    const std::size_t n = elems.size();
    std::vector<int> table(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) table[a * n + b] = index.at(compose(elems[a], elems[b]));
    auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    g->n_ = static_cast<int>(n);
    g->table_ = std::move(table);
    g->label_ = std::move(label);
    g->descriptor_ = std::move(descriptor);
    g->perms_ = std::move(elems);
    g->degree_ = degree;
    g->validate();
    return g;
  }

  int order() const { return n_; }
  /// Process-unique serial number, used to key caches.
  int id() const { return id_; }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(b)]; }
  int inv(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
  /// g x g^-1
  int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }
  int element_order(int a) const { return elt_order_[static_cast<std::size_t>(a)]; }
  const std::string& label() const { return label_; }
  /// Canonical JSON text of the description this group was built from.
  const std::string& descriptor() const { return descriptor_; }
  const std::vector<int>& table() const { return table_; }

  bool has_permutations() const { return !perms_.empty(); }
  int degree() const { return degree_; }
  const Permutation& permutation(int a) const { return perms_.at(static_cast<std::size_t>(a)); }

  /// Index of a permutation of this group's degree, or -1.
  int find_permutation(const Permutation& p) const {
    auto it = std::lower_bound(perms_.begin(), perms_.end(), p);
    if (it == perms_.end() || *it != p) return -1;
    return static_cast<int>(it - perms_.begin());
  }

  /// Cycle notation on points 1..degree for permutation groups, "g<i>" otherwise.
  std::string element_name(int a) const {
    if (perms_.empty()) return "g" + std::to_string(a);
    const auto& p = permutation(a);
    std::vector<bool> done(p.size(), false);
    std::ostringstream os;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (done[i] || p[i] == static_cast<int>(i)) continue;
      os << '(';
      std::size_t j = i;
      bool first = true;
      while (!done[j]) {
        done[j] = true;
        os << (first ? "" : " ") << j + 1;
        first = false;
        j = static_cast<std::size_t>(p[j]);
      }
      os << ')';
    }
    std::string s = os.str();
    return s.empty() ? "()" : s;
  }

  static Permutation compose(const Permutation& a, const Permutation& b) {
    Permutation r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[static_cast<std::size_t>(b[i])];
    return r;
  }

  static void check_permutation(const Permutation& p, int degree) {
    if (static_cast<int>(p.size()) != degree) throw GroupError("permutation has wrong degree");
    std::vector<bool> hit(p.size(), false);
    for (int v : p) {
      if (v < 0 || v >= degree || hit[static_cast<std::size_t>(v)]) throw GroupError("generator is not a permutation");
      hit[static_cast<std::size_t>(v)] = true;
    }
  }

  /// Subgroup lattice element sets of the whole group, cached on first use.
  template <class Compute>
  const std::vector<std::vector<int>>& cached_lattice(Compute&& compute) const {
    std::call_once(lattice_once_, [&] { lattice_ = compute(); });
    return lattice_;
  }

 private:
  FiniteGroup() : id_(next_id()) {}

  static int next_id() {
    static std::atomic<int> counter{0};
    return counter.fetch_add(1);
  }

  void validate() {
    const int n = n_;
    identity_ = -1;
    for (int e = 0; e < n && identity_ < 0; ++e) {
      bool ok = true;
      for (int x = 0; x < n && ok; ++x) ok = mul(e, x) == x && mul(x, e) == x;
      if (ok) identity_ = e;
    }
    if (identity_ < 0) throw GroupError("table has no two-sided identity");
    inverse_.assign(static_cast<std::size_t>(n), -1);
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y)
        if (mul(y, x) == identity_ && mul(x, y) == identity_) {
          inverse_[static_cast<std::size_t>(x)] = y;
          break;
        }
      if (inverse_[static_cast<std::size_t>(x)] < 0) throw GroupError("element without inverse in table");
    }
    auto assoc = [&](int a, int b, int c) { return mul(mul(a, b), c) == mul(a, mul(b, c)); };
    if (n <= 64) {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c)
            if (!assoc(a, b, c)) throw GroupError("multiplication table is not associative");
    } else {
      std::mt19937 rng(0x5eed);
      std::uniform_int_distribution<int> pick(0, n - 1);
      for (int t = 0; t < 10000; ++t)
        if (!assoc(pick(rng), pick(rng), pick(rng))) throw GroupError("multiplication table is not associative");
    }
    elt_order_.assign(static_cast<std::size_t>(n), 0);
    for (int x = 0; x < n; ++x) {
      int k = 1;
      for (int y = x; y != identity_; y = mul(y, x)) ++k;
      elt_order_[static_cast<std::size_t>(x)] = k;
    }
  }

  int id_ = 0;
  int n_ = 0;
  int identity_ = 0;
  int degree_ = 0;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<int> elt_order_;
  std::vector<Permutation> perms_;
  std::string label_;
  std::string descriptor_;
  mutable std::once_flag lattice_once_;
  mutable std::vector<std::vector<int>> lattice_;
};

/// A subgroup of a FiniteGroup, held as its sorted element set. Cheap to copy.
class Subgroup {
 public:
  Subgroup() = default;

  /// Validates closure; throws GroupError if `elems` is not a subgroup.
  Subgroup(GroupPtr g, std::vector<int> elems) : g_(std::move(g)) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    for (int x : elems)
      if (x < 0 || x >= g_->order()) throw GroupError("subgroup element out of range");
    d_ = make_data(*g_, std::move(elems));
    if (!d_->elems.empty() && !contains(g_->identity())) throw GroupError("subset lacks the identity");
    if (d_->elems.empty()) throw GroupError("subset lacks the identity");
    for (int a : d_->elems)
      for (int b : d_->elems)
        if (!contains(g_->mul(a, g_->inv(b)))) throw GroupError("subset is not closed under multiplication");
  }

  static Subgroup whole(const GroupPtr& g) {
    std::vector<int> all(static_cast<std::size_t>(g->order()));
    std::iota(all.begin(), all.end(), 0);
    return unchecked(g, std::move(all));
  }

  static Subgroup trivial(const GroupPtr& g) { return unchecked(g, {g->identity()}); }

  static Subgroup generated(const GroupPtr& g, std::span<const int> gens) {
    const FiniteGroup& G = *g;
    std::vector<char> in(static_cast<std::size_t>(G.order()), 0);
    std::vector<int> elems{G.identity()};
    in[static_cast<std::size_t>(G.identity())] = 1;
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (int s : gens) {
        int y = G.mul(elems[i], s);
        if (!in[static_cast<std::size_t>(y)]) {
          in[static_cast<std::size_t>(y)] = 1;
          elems.push_back(y);
        }
      }
    return unchecked(g, std::move(elems));
  }

  /// Trusted constructor for sets already known to be subgroups.
  static Subgroup unchecked(GroupPtr g, std::vector<int> elems) {
    std::sort(elems.begin(), elems.end());
    Subgroup s;
    s.d_ = make_data(*g, std::move(elems));
    s.g_ = std::move(g);
    return s;
  }

  bool valid() const { return static_cast<bool>(g_); }
  const FiniteGroup& group() const { return *g_; }
  const GroupPtr& group_ptr() const { return g_; }
  const std::vector<int>& elements() const { return d_->elems; }
  std::size_t order() const { return d_->elems.size(); }
  bool contains(int x) const { return d_->pos[static_cast<std::size_t>(x)] >= 0; }
  /// Position of x in elements(), or -1.
  int position(int x) const { return d_->pos[static_cast<std::size_t>(x)]; }

  bool is_subgroup_of(const Subgroup& other) const {
    if (g_ != other.g_ || order() > other.order()) return false;
    for (int x : d_->elems)
      if (!other.contains(x)) return false;
    return true;
  }

  /// g K g^-1
  Subgroup conjugate(int g) const {
    std::vector<int> out;
    out.reserve(order());
    for (int x : d_->elems) out.push_back(g_->conj(g, x));
    return unchecked(g_, std::move(out));
  }

  Subgroup intersect(const Subgroup& other) const {
    std::vector<int> out;
    for (int x : d_->elems)
      if (other.contains(x)) out.push_back(x);
    return unchecked(g_, std::move(out));
  }

  /// <this, other> inside the common ambient group.
  Subgroup join(const Subgroup& other) const {
    std::vector<int> gens = generators();
    auto og = other.generators();
    gens.insert(gens.end(), og.begin(), og.end());
    return generated(g_, gens);
  }

  bool is_normal_in(const Subgroup& over) const {
    for (int g : over.elements())
      for (int x : d_->elems)
        if (!contains(g_->conj(g, x))) return false;
    return true;
  }

  /// Greedy generating set: each generator is the least element not yet in
  /// the span of the previous ones.
  const std::vector<int>& generators() const {
    std::call_once(d_->gens_once, [this] {
      std::vector<int> gens;
      Subgroup span = trivial(g_);
      for (int x : d_->elems) {
        if (span.contains(x)) continue;
        gens.push_back(x);
        span = generated(g_, gens);
        if (span.order() == order()) break;
      }
      d_->gens = std::move(gens);
    });
    return d_->gens;
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.g_ == b.g_ && (a.d_ == b.d_ || a.d_->elems == b.d_->elems);
  }
  /// Lexicographic on element sets.
  friend bool operator<(const Subgroup& a, const Subgroup& b) { return a.d_->elems < b.d_->elems; }

 private:
  struct Data {
    std::vector<int> elems;
    std::vector<int> pos;
    mutable std::once_flag gens_once;
    mutable std::vector<int> gens;
  };

  static std::shared_ptr<const Data> make_data(const FiniteGroup& g, std::vector<int> elems) {
    auto d = std::make_shared<Data>();
    d->pos.assign(static_cast<std::size_t>(g.order()), -1);
    for (std::size_t i = 0; i < elems.size(); ++i) d->pos[static_cast<std::size_t>(elems[i])] = static_cast<int>(i);
    d->elems = std::move(elems);
    return d;
  }

  GroupPtr g_;
  std::shared_ptr<const Data> d_;
};

/// A group homomorphism from a subgroup of one ambient group into another
/// ambient group. images[i] is the image of source.elements()[i].
struct Hom {
  Subgroup source;
  std::vector<int> images;

  int operator()(int x) const { return images[static_cast<std::size_t>(source.position(x))]; }

  std::vector<int> image_set() const {
    std::vector<int> im = images;
    std::sort(im.begin(), im.end());
    im.erase(std::unique(im.begin(), im.end()), im.end());
    return im;
  }
  bool injective() const { return image_set().size() == images.size(); }

  friend bool operator==(const Hom& a, const Hom& b) {
    return a.images == b.images && a.source.elements() == b.source.elements();
  }
};

/// Total order used for canonical representatives and basis listings:
/// larger sources first, then lexicographic on (source elements, images).
struct PairOrder {
  bool operator()(const Hom& a, const Hom& b) const {
    if (a.source.order() != b.source.order()) return a.source.order() > b.source.order();
    if (a.source.elements() != b.source.elements()) return a.source.elements() < b.source.elements();
    return a.images < b.images;
  }
};

/// Lexicographic order on (source elements, images), used to pick canonical
/// representatives inside a conjugacy orbit.
inline bool lex_less(const std::vector<int>& dom_a, const std::vector<int>& img_a, const std::vector<int>& dom_b,
                     const std::vector<int>& img_b) {
  if (dom_a != dom_b) return dom_a < dom_b;
  return img_a < img_b;
}

inline Hom identity_hom(const Subgroup& k) { return Hom{k, k.elements()}; }

/// The map k -> x k x^-1 on k, x in the ambient group of k.
inline Hom conjugation_hom(const Subgroup& k, int x) {
  std::vector<int> img;
  img.reserve(k.order());
  for (int e : k.elements()) img.push_back(k.group().conj(x, e));
  return Hom{k, std::move(img)};
}

/// psi o phi, where psi is defined on (at least) the image of phi. Both live in
/// the same ambient group.
inline Hom compose_homs(const Hom& psi, const Hom& phi) {
  std::vector<int> img;
  img.reserve(phi.images.size());
  for (int y : phi.images) {
    int pos = psi.source.position(y);
    if (pos < 0) throw std::invalid_argument("compose_homs: image outside domain");
    img.push_back(psi.images[static_cast<std::size_t>(pos)]);
  }
  return Hom{phi.source, std::move(img)};
}

inline Hom restrict_hom(const Hom& phi, const Subgroup& q) {
  std::vector<int> img;
  img.reserve(q.order());
  for (int x : q.elements()) img.push_back(phi(x));
  return Hom{q, std::move(img)};
}

/// Inverse of an injective hom onto its image; `target` is the ambient group
/// of the images.
inline Hom inverse_hom(const Hom& phi, const GroupPtr& target) {
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < phi.images.size(); ++i) pairs.emplace_back(phi.images[i], phi.source.elements()[i]);
  std::sort(pairs.begin(), pairs.end());
  std::vector<int> dom, img;
  for (auto& [a, b] : pairs) {
    if (!dom.empty() && dom.back() == a) throw std::invalid_argument("inverse_hom: map is not injective");
    dom.push_back(a);
    img.push_back(b);
  }
  return Hom{Subgroup::unchecked(target, std::move(dom)), std::move(img)};
}

}  // namespace fusys
