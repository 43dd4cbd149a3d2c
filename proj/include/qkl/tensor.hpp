#pragma once
/**
 * @file tensor.hpp
 * The tensor space V^{(x)d} with its right Hecke action, the block
 * decomposition into cyclic modules M_f, the bar involution psi, and the
 * forms (.,.) and <.,.>.
 */

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkl/hecke.hpp"
#include "qkl/weights.hpp"

namespace qkl {

/// Indexing of the weight basis of V^{(x)d}.  Codes are base-N numerals
/// with position 1 most significant, so code order is lexicographic.
struct TensorSpace {
  Shape shape;
  int d = 1;

  TensorSpace() = default;
  TensorSpace(Shape s, int d_) : shape(s), d(d_) {
    if (d < 1) throw std::invalid_argument("qkl: d must be positive");
    std::uint64_t n = 1;
    for (int k = 0; k < d; ++k) {
      if (n > (std::uint64_t{1} << 40) / static_cast<std::uint64_t>(shape.size()))
        throw std::invalid_argument("qkl: tensor space too large");
      n *= shape.size();
    }
  }

  std::uint64_t dim() const {
    std::uint64_t n = 1;
    for (int k = 0; k < d; ++k) n *= shape.size();
    return n;
  }

  std::uint64_t code(const Weight& f) const {
    if (f.d() != d || !(f.shape() == shape)) throw std::invalid_argument("qkl: weight does not belong to this space");
    std::uint64_t c = 0;
    for (int i = 1; i <= d; ++i) c = c * shape.size() + shape.ordinal(f.at(i));
    return c;
  }

  std::vector<int> twice_of(std::uint64_t c) const {
    std::vector<int> t(d);
    for (int i = d - 1; i >= 0; --i) {
      t[i] = 2 * static_cast<int>(c % shape.size()) - shape.max_twice();
      c /= shape.size();
    }
    return t;
  }

  Weight weight(std::uint64_t c) const { return Weight(shape, twice_of(c)); }

  bool operator==(const TensorSpace&) const = default;
};

/// Sparse vector on the weight basis {M_g}.
template <class S>
class TensorVec {
 public:
  using Map = std::map<std::uint64_t, S>;

  TensorVec() = default;
  explicit TensorVec(TensorSpace sp) : sp_(sp) {}

  static TensorVec basis(TensorSpace sp, const Weight& g, S c = S(1)) {
    TensorVec v(sp);
    v.add(g, c);
    return v;
  }

  const TensorSpace& space() const { return sp_; }
  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_code(std::uint64_t c, const S& x) {
    if (x.is_zero()) return;
    auto [it, fresh] = terms_.emplace(c, x);
    if (!fresh) {
      it->second += x;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  void add(const Weight& g, const S& x) { add_code(sp_.code(g), x); }

  S coeff_code(std::uint64_t c) const {
    auto it = terms_.find(c);
    return it == terms_.end() ? S() : it->second;
  }
  S coeff(const Weight& g) const { return coeff_code(sp_.code(g)); }

  TensorVec& operator+=(const TensorVec& o) {
    check(o);
    for (const auto& [c, x] : o.terms_) add_code(c, x);
    return *this;
  }
  TensorVec& operator-=(const TensorVec& o) {
    check(o);
    for (const auto& [c, x] : o.terms_) add_code(c, -x);
    return *this;
  }
  friend TensorVec operator+(TensorVec a, const TensorVec& b) { return a += b; }
  friend TensorVec operator-(TensorVec a, const TensorVec& b) { return a -= b; }

  TensorVec scaled(const S& s) const {
    TensorVec r(sp_);
    for (const auto& [c, x] : terms_) r.add_code(c, x * s);
    return r;
  }

  bool operator==(const TensorVec& o) const { return sp_ == o.sp_ && terms_ == o.terms_; }

 private:
  void check(const TensorVec& o) const {
    if (!(sp_ == o.sp_)) throw std::invalid_argument("qkl: tensor vectors from different spaces");
  }
  TensorSpace sp_;
  Map terms_;
};

template <class S>
std::string to_string(const TensorVec<S>& x) {
  if (x.is_zero()) return "0";
  std::string s;
  for (const auto& [c, v] : x.terms()) {
    if (!s.empty()) s += " + ";
    s += "(" + to_string(v) + ") M[" + to_string(x.space().weight(c)) + "]";
  }
  return s;
}

/// M_g * H_i on one basis vector, added into out with factor c.
template <class S>
void add_hecke_gen_image(TensorVec<S>& out, const Weight& g, const S& c, int i, const ScalarContext<S>& ctx) {
  switch (detail::weight_edge_tag(g, i)) {
    case EdgeTag::down:
      out.add(act_weight(g, i), c);
      out.add(g, c * ctx.gap(i));
      break;
    case EdgeTag::up_in:
      out.add(act_weight(g, i), c);
      break;
    case EdgeTag::fixed_a:
    case EdgeTag::fixed_b:
      out.add(g, c * ctx.param(i));
      break;
  }
}

/// x * H_i, by the six weight-level cases.
template <class S>
TensorVec<S> act_hecke_gen(const TensorVec<S>& x, int i, const ScalarContext<S>& ctx) {
  if (i < 0 || i >= x.space().d) throw std::out_of_range("qkl: generator index out of range");
  TensorVec<S> r(x.space());
  for (const auto& [code, c] : x.terms()) add_hecke_gen_image(r, x.space().weight(code), c, i, ctx);
  return r;
}

template <class S>
TensorVec<S> act_hecke_word(TensorVec<S> x, const Word& w, const ScalarContext<S>& ctx) {
  for (int i : w.letters) x = act_hecke_gen(x, i, ctx);
  return x;
}

template <class S>
TensorVec<S> act_hecke_elt(const TensorVec<S>& x, const HeckeElt<S>& h, const ScalarContext<S>& ctx) {
  if (h.rank() != x.space().d) throw std::invalid_argument("qkl: Hecke element of wrong rank");
  TensorVec<S> r(x.space());
  for (const auto& [w, c] : h.terms()) r += act_hecke_word(x, reduced_word(w), ctx).scaled(c);
  return r;
}

template <class S>
S bilinear_std(const TensorVec<S>& x, const TensorVec<S>& y) {
  if (!(x.space() == y.space())) throw std::invalid_argument("qkl: dimension mismatch in (.,.)");
  S r;
  for (const auto& [c, a] : x.terms()) {
    auto it = y.terms().find(c);
    if (it != y.terms().end()) r += a * it->second;
  }
  return r;
}

/// Anti-linear, M_g -> M_{-g}.
template <class S>
TensorVec<S> d_twist(const TensorVec<S>& x) {
  TensorVec<S> r(x.space());
  for (const auto& [c, a] : x.terms()) r.add(x.space().weight(c).negated(), a.bar());
  return r;
}

/// The map of psi through the Hecke bar map: psi(M_{f.sigma}) = M_f bar(H_sigma),
/// for vectors supported on one orbit.
template <class S>
TensorVec<S> psi_bar(const TensorVec<S>& x, const ScalarContext<S>& ctx) {
  TensorVec<S> r(x.space());
  if (x.is_zero()) return r;
  std::optional<Weight> block;
  std::optional<CosetPoset> P;
  for (const auto& [code, c] : x.terms()) {
    Weight g = x.space().weight(code);
    Weight f = antidominant_of(g);
    if (!block) {
      block = f;
      P = coset_poset(f);
    } else if (!(f == *block)) {
      throw std::invalid_argument("qkl: psi_bar input spans several orbits");
    }
    const SignedPerm& sigma = P->node(P->index_of(g)).rep;
    HeckeElt<S> h = bar_elt(HeckeElt<S>::basis(sigma), ctx);
    r += act_hecke_elt(TensorVec<S>::basis(x.space(), f), h, ctx).scaled(c.bar());
  }
  return r;
}

// ---------------------------------------------------------------------------
// One block M_f with a dense coordinate vector per element

enum class EdgeChoice { first, last, random };

struct BlockOptions {
  EdgeChoice edge_choice = EdgeChoice::first;
  std::uint64_t seed = 0;  // used by EdgeChoice::random
};

template <class S>
class BlockModule {
 public:
  using Vec = std::vector<S>;

  BlockModule(std::shared_ptr<const CosetPoset> P, ScalarContext<S> ctx, BlockOptions opt = {})
      : P_(std::move(P)), ctx_(std::move(ctx)), opt_(opt) {
    std::mt19937_64 rng(opt.seed);
    const int n = P_->size();
    parent_.assign(n, {-1, -1});
    for (int k = 1; k < n; ++k) {
      std::vector<int> downs;
      for (int i = 0; i < P_->d(); ++i)
        if (P_->node(k).edges[i].tag == EdgeTag::down) downs.push_back(i);
      if (downs.empty()) throw std::logic_error("qkl: non-minimal node without DOWN edge");
      int i = downs.front();
      if (opt.edge_choice == EdgeChoice::last) i = downs.back();
      if (opt.edge_choice == EdgeChoice::random) i = downs[rng() % downs.size()];
      parent_[k] = {P_->node(k).edges[i].target, i};
    }
    psi_cols_.resize(n);
    psi_cols_[0] = basis(0);
    for (int k = 1; k < n; ++k) psi_cols_[k] = act_gen_inverse(psi_cols_[parent_[k].first], parent_[k].second);
    psi_support_.resize(n);
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        if (!psi_cols_[k][j].is_zero()) psi_support_[k].push_back(j);
  }

  const CosetPoset& poset() const { return *P_; }
  std::shared_ptr<const CosetPoset> poset_ptr() const { return P_; }
  const ScalarContext<S>& context() const { return ctx_; }
  int size() const { return P_->size(); }
  /// (parent node, generator) used to reach node k from below.
  std::pair<int, int> down_step(int k) const { return parent_.at(k); }

  Vec zero() const { return Vec(size()); }
  Vec basis(int k) const {
    Vec v = zero();
    v[k] = S(1);
    return v;
  }

  /// x * H_i through the coset-level formulas.
  Vec act_gen(const Vec& x, int i) const {
    Vec r = zero();
    for (int k = 0; k < size(); ++k) {
      if (x[k].is_zero()) continue;
      const Edge& e = P_->node(k).edges[i];
      switch (e.tag) {
        case EdgeTag::down:
          r[e.target] += x[k];
          r[k] += x[k] * ctx_.gap(i);
          break;
        case EdgeTag::up_in:
          r[e.target] += x[k];
          break;
        case EdgeTag::fixed_a:
        case EdgeTag::fixed_b:
          r[k] += x[k] * ctx_.param(i);
          break;
      }
    }
    return r;
  }

  Vec act_gen_inverse(const Vec& x, int i) const {
    Vec r = act_gen(x, i);
    S g = ctx_.gap(i);
    for (int k = 0; k < size(); ++k)
      if (!x[k].is_zero()) r[k] -= x[k] * g;
    return r;
  }

  Vec act_hecke(const Vec& x, const HeckeElt<S>& h) const {
    Vec r = zero();
    for (const auto& [w, c] : h.terms()) {
      Vec y = x;
      for (int i : reduced_word(w).letters) y = act_gen(y, i);
      for (int k = 0; k < size(); ++k)
        if (!y[k].is_zero()) r[k] += y[k] * c;
    }
    return r;
  }

  /// psi(M_{node k}).
  const Vec& psi_column(int k) const { return psi_cols_.at(k); }

  Vec psi(const Vec& x) const {
    Vec r = zero();
    for (int k = 0; k < size(); ++k) {
      if (x[k].is_zero()) continue;
      S c = x[k].bar();
      const Vec& col = psi_cols_[k];
      for (int j : psi_support_[k]) r[j] += col[j] * c;
    }
    return r;
  }

  TensorVec<S> to_tensor(const Vec& x, const TensorSpace& sp) const {
    TensorVec<S> v(sp);
    for (int k = 0; k < size(); ++k) v.add(P_->node(k).weight, x[k]);
    return v;
  }

  Vec from_tensor(const TensorVec<S>& v) const {
    Vec x = zero();
    for (const auto& [c, a] : v.terms()) x[P_->index_of(v.space().weight(c))] += a;
    return x;
  }

 private:
  std::shared_ptr<const CosetPoset> P_;
  ScalarContext<S> ctx_;
  BlockOptions opt_;
  std::vector<std::pair<int, int>> parent_;
  std::vector<Vec> psi_cols_;
  std::vector<std::vector<int>> psi_support_;  // nonzero rows of each column
};

/// V^{(x)d} as the direct sum of its blocks, with psi applied blockwise.
template <class S>
class TensorModule {
 public:
  TensorModule(TensorSpace sp, ScalarContext<S> ctx, BlockOptions opt = {}) : sp_(sp), ctx_(ctx) {
    for (const auto& f : antidominant_weights(sp.shape, sp.d)) {
      auto P = std::make_shared<const CosetPoset>(coset_poset(f));
      blocks_.emplace(f.twice(), BlockModule<S>(P, ctx, opt));
    }
  }

  const TensorSpace& space() const { return sp_; }
  const ScalarContext<S>& context() const { return ctx_; }

  const BlockModule<S>& block(const Weight& f) const {
    auto it = blocks_.find(f.twice());
    if (it == blocks_.end()) throw std::invalid_argument("qkl: " + to_string(f) + " is not anti-dominant");
    return it->second;
  }
  const BlockModule<S>& block_of(const Weight& g) const { return block(antidominant_of(g)); }

  std::vector<Weight> block_weights() const {
    std::vector<Weight> out;
    for (const auto& [t, b] : blocks_) out.push_back(b.poset().block_weight());
    return out;
  }

  TensorVec<S> psi(const TensorVec<S>& x) const {
    std::map<std::vector<int>, TensorVec<S>> parts;
    for (const auto& [c, a] : x.terms()) {
      Weight g = sp_.weight(c);
      auto [it, fresh] = parts.try_emplace(antidominant_of(g).twice(), sp_);
      it->second.add_code(c, a);
    }
    TensorVec<S> r(sp_);
    for (const auto& [t, part] : parts) {
      const auto& B = blocks_.at(t);
      r += B.to_tensor(B.psi(B.from_tensor(part)), sp_);
    }
    return r;
  }

  /// <x, y> = (x, D psi(y)).
  S form_angle(const TensorVec<S>& x, const TensorVec<S>& y) const { return bilinear_std(x, d_twist(psi(y))); }

 private:
  TensorSpace sp_;
  ScalarContext<S> ctx_;
  std::map<std::vector<int>, BlockModule<S>> blocks_;
};

}  // namespace qkl
