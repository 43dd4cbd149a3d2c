#pragma once
/**
 * @file kl.hpp
 * Canonical and dual canonical bases of a block M_f at p = q^e, and the
 * inversion identity pairing a block with the block of -f.
 */

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkl/tensor.hpp"

namespace qkl {

enum class BasisKind { canonical, dual };

inline const char* to_string(BasisKind k) { return k == BasisKind::canonical ? "canonical" : "dual"; }

enum class TieBreak { lowest_index, highest_index };

struct KLOptions {
  BlockOptions block{};
  TieBreak tie_break = TieBreak::lowest_index;
  /// Use b_0 = H_0 - p (e < 0) or H_0 (e = 0) instead of H_0 + p^{-1}.
  bool literal_candidates = false;
};

/// Columns are basis elements: coefficient(s, w) is the coefficient of
/// M_{node w} in C_{node s} (resp. C*).
class KLTable {
 public:
  KLTable(std::shared_ptr<const CosetPoset> P, BasisKind kind, PSpec spec, std::vector<std::vector<LaurentQ>> cols)
      : P_(std::move(P)), kind_(kind), spec_(spec), cols_(std::move(cols)) {}

  const CosetPoset& poset() const { return *P_; }
  std::shared_ptr<const CosetPoset> poset_ptr() const { return P_; }
  BasisKind kind() const { return kind_; }
  PSpec spec() const { return spec_; }
  int size() const { return static_cast<int>(cols_.size()); }
  const LaurentQ& coefficient(int s, int w) const { return cols_.at(s).at(w); }
  const std::vector<LaurentQ>& column(int s) const { return cols_.at(s); }
  void set_coefficient(int s, int w, LaurentQ c) { cols_.at(s).at(w) = std::move(c); }

  bool operator==(const KLTable& o) const { return kind_ == o.kind_ && spec_ == o.spec_ && cols_ == o.cols_; }

 private:
  std::shared_ptr<const CosetPoset> P_;
  BasisKind kind_;
  PSpec spec_;
  std::vector<std::vector<LaurentQ>> cols_;
};

namespace detail {

/// Whether c lies in q^{-1}Z[q^{-1}] (canonical) or qZ[q] (dual).
inline bool in_kl_lattice(const LaurentQ& c, BasisKind kind) {
  for (const auto& t : c.terms())
    if (kind == BasisKind::canonical ? t.exp[0] >= 0 : t.exp[0] <= 0) return false;
  return true;
}

/// Bar-invariant gamma with c - gamma in the lattice.
inline LaurentQ kl_correction(const LaurentQ& c, BasisKind kind) {
  LaurentQ g;
  for (const auto& t : c.terms()) {
    int n = t.exp[0];
    if (kind == BasisKind::canonical ? n < 0 : n > 0) continue;
    g += LaurentQ::q_power(n, t.coeff);
    if (n != 0) g += LaurentQ::q_power(-n, t.coeff);
  }
  return g;
}

}  // namespace detail

/// Builds C_sigma (or C*_sigma) in increasing length: a bar-invariant
/// candidate from the node below, then bar-invariant corrections from the
/// top down until every off-diagonal coefficient sits in the lattice.
inline KLTable build_kl_table(const BlockModule<LaurentQ>& B, BasisKind kind, const KLOptions& opt = {}) {
  const auto& ctx = B.context();
  if (ctx.generic) throw std::invalid_argument("qkl: canonical bases need p = q^e");
  const CosetPoset& P = B.poset();
  const int n = P.size();
  const int e = ctx.spec.e;
  std::vector<std::vector<LaurentQ>> C(n);
  C[0] = B.basis(0);
  for (int k = 1; k < n; ++k) {
    auto [j, i] = B.down_step(k);
    LaurentQ shift;
    if (kind == BasisKind::dual) {
      shift = -ctx.param(i);
    } else if (opt.literal_candidates && i == 0 && e <= 0) {
      shift = e < 0 ? -ctx.p : LaurentQ();
    } else {
      shift = ctx.param_inv(i);
    }
    std::vector<LaurentQ> X = B.act_gen(C[j], i);
    for (int w = 0; w < n; ++w)
      if (!C[j][w].is_zero()) X[w] += C[j][w] * shift;
    if (!X[k].is_one()) throw std::logic_error("qkl: candidate is not unitriangular");
    while (true) {
      int pick = -1;
      for (int w = 0; w < n; ++w) {
        if (w == k || X[w].is_zero() || detail::in_kl_lattice(X[w], kind)) continue;
        bool better = pick < 0 || P.node(w).length > P.node(pick).length ||
                      (P.node(w).length == P.node(pick).length && opt.tie_break == TieBreak::highest_index);
        if (better) pick = w;
      }
      if (pick < 0) break;
      if (P.node(pick).length >= P.node(k).length) throw std::logic_error("qkl: candidate not triangular");
      LaurentQ g = detail::kl_correction(X[pick], kind);
      for (int w = 0; w < n; ++w)
        if (!C[pick][w].is_zero()) X[w] -= C[pick][w] * g;
    }
    C[k] = std::move(X);
  }
  return KLTable(B.poset_ptr(), kind, ctx.spec, std::move(C));
}

inline KLTable canonical_basis(std::shared_ptr<const CosetPoset> P, PSpec spec, const KLOptions& opt = {}) {
  BlockModule<LaurentQ> B(std::move(P), specialized_context(spec), opt.block);
  return build_kl_table(B, BasisKind::canonical, opt);
}

inline KLTable dual_canonical_basis(std::shared_ptr<const CosetPoset> P, PSpec spec, const KLOptions& opt = {}) {
  BlockModule<LaurentQ> B(std::move(P), specialized_context(spec), opt.block);
  return build_kl_table(B, BasisKind::dual, opt);
}

inline KLTable kl_table(std::shared_ptr<const CosetPoset> P, PSpec spec, BasisKind kind, const KLOptions& opt = {}) {
  return kind == BasisKind::canonical ? canonical_basis(std::move(P), spec, opt)
                                      : dual_canonical_basis(std::move(P), spec, opt);
}

struct TableCheck {
  bool passed = true;
  std::string witness;
};

/// Unitriangularity, Bruhat support, lattice containment and psi-invariance.
inline TableCheck check_kl_table(const KLTable& T, const BlockModule<LaurentQ>& B) {
  const CosetPoset& P = T.poset();
  for (int s = 0; s < T.size(); ++s) {
    const std::string name = to_string(P.node(s).word);
    if (!T.coefficient(s, s).is_one()) return {false, name + ": diagonal coefficient is not 1"};
    for (int w = 0; w < T.size(); ++w) {
      const LaurentQ& c = T.coefficient(s, w);
      if (w == s || c.is_zero()) continue;
      if (!bruhat_leq(P.node(w).rep, P.node(s).rep))
        return {false, name + ": coefficient at " + to_string(P.node(w).word) + " outside the Bruhat interval"};
      if (!detail::in_kl_lattice(c, T.kind()))
        return {false, name + ": coefficient " + to_string(c) + " at " + to_string(P.node(w).word) +
                           " outside the lattice"};
    }
    if (B.psi(T.column(s)) != T.column(s)) return {false, name + ": not psi-invariant"};
  }
  return {};
}

/// sum_y l_{y,g}(q) l*_{-y,-h}(q^{-1}) for the block of f against the dual
/// table of the block of -f.
struct InversionReport {
  bool passed = true;
  std::string witness;
};

inline InversionReport check_inversion_sums(const KLTable& canon, const KLTable& dual_neg) {
  const CosetPoset& P = canon.poset();
  const CosetPoset& Q = dual_neg.poset();
  if (P.size() != Q.size()) return {false, "block sizes differ"};
  std::vector<int> neg(P.size());
  for (int k = 0; k < P.size(); ++k) neg[k] = Q.index_of(P.node(k).weight.negated());
  for (int g = 0; g < P.size(); ++g)
    for (int h = 0; h < P.size(); ++h) {
      LaurentQ s;
      for (int y = 0; y < P.size(); ++y) {
        const LaurentQ& a = canon.coefficient(g, y);
        if (a.is_zero()) continue;
        const LaurentQ& b = dual_neg.coefficient(neg[h], neg[y]);
        if (!b.is_zero()) s += a * b.bar();
      }
      if (s != LaurentQ(g == h ? 1 : 0))
        return {false, "g=" + to_string(P.node(g).weight) + " h=" + to_string(P.node(h).weight) +
                           ": sum is " + to_string(s)};
    }
  return {};
}

}  // namespace qkl
