#pragma once
/**
 * @file hecke.hpp
 * Two-parameter Iwahori-Hecke algebra of type B_d on the basis {H_sigma}.
 * Scalars are any ring S carried by a ScalarContext<S>.
 */

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qkl/coxeterb.hpp"
#include "qkl/laurent.hpp"

namespace qkl {

template <class S>
class HeckeElt {
 public:
  using Map = std::map<SignedPerm, S>;

  explicit HeckeElt(int d = 0) : d_(d) {}

  static HeckeElt basis(const SignedPerm& w, S c = S(1)) {
    HeckeElt x(w.rank());
    x.add(w, c);
    return x;
  }
  static HeckeElt one(int d) { return basis(SignedPerm::identity(d)); }

  int rank() const { return d_; }
  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  S coeff(const SignedPerm& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? S() : it->second;
  }

  void add(const SignedPerm& w, const S& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(w, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  HeckeElt& operator+=(const HeckeElt& o) {
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
  }
  HeckeElt& operator-=(const HeckeElt& o) {
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
  }
  friend HeckeElt operator+(HeckeElt a, const HeckeElt& b) { return a += b; }
  friend HeckeElt operator-(HeckeElt a, const HeckeElt& b) { return a -= b; }

  HeckeElt scaled(const S& c) const {
    HeckeElt r(d_);
    for (const auto& [w, x] : terms_) r.add(w, x * c);
    return r;
  }

  bool operator==(const HeckeElt& o) const { return d_ == o.d_ && terms_ == o.terms_; }

 private:
  int d_;
  Map terms_;
};

/// x * H_i.
template <class S>
HeckeElt<S> mul_gen(const HeckeElt<S>& x, int i, const ScalarContext<S>& ctx) {
  HeckeElt<S> r(x.rank());
  const S gap = ctx.gap(i);
  for (const auto& [w, c] : x.terms()) {
    SignedPerm ws = w.times_generator(i);
    r.add(ws, c);
    if (w.has_right_descent(i)) r.add(w, c * gap);
  }
  return r;
}

/// x * H_i^{-1} = x * (H_i - (q_i - q_i^{-1})).
template <class S>
HeckeElt<S> mul_gen_inverse(const HeckeElt<S>& x, int i, const ScalarContext<S>& ctx) {
  HeckeElt<S> r = mul_gen(x, i, ctx);
  r -= x.scaled(ctx.gap(i));
  return r;
}

/// x * H_{i1} ... H_{ik}.
template <class S>
HeckeElt<S> mul_word(HeckeElt<S> x, const Word& w, const ScalarContext<S>& ctx) {
  for (int i : w.letters) x = mul_gen(x, i, ctx);
  return x;
}

template <class S>
HeckeElt<S> mul(const HeckeElt<S>& x, const HeckeElt<S>& y, const ScalarContext<S>& ctx) {
  HeckeElt<S> r(x.rank());
  for (const auto& [w, c] : y.terms()) r += mul_word(x, reduced_word(w), ctx).scaled(c);
  return r;
}

/// Anti-linear involution with H_i -> H_i^{-1}; on H_sigma it multiplies
/// inverse generators along a reduced word of sigma.
template <class S>
HeckeElt<S> bar_elt(const HeckeElt<S>& x, const ScalarContext<S>& ctx) {
  HeckeElt<S> r(x.rank());
  for (const auto& [w, c] : x.terms()) {
    HeckeElt<S> h = HeckeElt<S>::one(x.rank());
    for (int i : reduced_word(w).letters) h = mul_gen_inverse(h, i, ctx);
    r += h.scaled(c.bar());
  }
  return r;
}

template <class S>
std::string to_string(const HeckeElt<S>& x) {
  if (x.is_zero()) return "0";
  std::string s;
  for (const auto& [w, c] : x.terms()) {
    if (!s.empty()) s += " + ";
    s += "(" + to_string(c) + ") * H[" + to_string(reduced_word(w)) + "]";
  }
  return s;
}

// ---------------------------------------------------------------------------
// Presentation check

/// A relation sum_k c_k H_{w_k} = 0 written with words in the generators.
template <class S>
struct HeckeRelation {
  std::string name;
  std::vector<std::pair<S, Word>> terms;
};

template <class S>
std::vector<HeckeRelation<S>> standard_relations(int d, const ScalarContext<S>& ctx) {
  std::vector<HeckeRelation<S>> rel;
  for (int i = 0; i < d; ++i)
    rel.push_back({"quadratic " + std::to_string(i),
                   {{S(1), Word{{i, i}}}, {ctx.param_inv(i) - ctx.param(i), Word{{i}}}, {S(-1), Word{}}}});
  for (int i = 1; i + 1 < d; ++i)
    rel.push_back({"braid " + std::to_string(i) + "," + std::to_string(i + 1),
                   {{S(1), Word{{i, i + 1, i}}}, {S(-1), Word{{i + 1, i, i + 1}}}}});
  if (d >= 2)
    rel.push_back({"braid 0,1", {{S(1), Word{{0, 1, 0, 1}}}, {S(-1), Word{{1, 0, 1, 0}}}}});
  for (int i = 0; i < d; ++i)
    for (int j = i + 2; j < d; ++j)
      rel.push_back({"commute " + std::to_string(i) + "," + std::to_string(j),
                     {{S(1), Word{{i, j}}}, {S(-1), Word{{j, i}}}}});
  return rel;
}

struct PresentationReport {
  bool passed = true;
  std::string witness;  // first failing relation and basis element
};

/// Checks H_sigma * (relation) = 0 for every basis element H_sigma.
template <class S>
PresentationReport verify_presentation(int d, const ScalarContext<S>& ctx,
                                       const std::vector<HeckeRelation<S>>& relations) {
  for (const auto& sigma : all_elements(d)) {
    HeckeElt<S> start = HeckeElt<S>::basis(sigma);
    for (const auto& rel : relations) {
      HeckeElt<S> total(d);
      for (const auto& [c, w] : rel.terms) total += mul_word(start, w, ctx).scaled(c);
      if (!total.is_zero())
        return {false, "relation '" + rel.name + "' fails on H[" + to_string(reduced_word(sigma)) +
                           "]: residue " + to_string(total)};
    }
  }
  return {};
}

template <class S>
PresentationReport verify_presentation(int d, const ScalarContext<S>& ctx) {
  return verify_presentation(d, ctx, standard_relations(d, ctx));
}

}  // namespace qkl
