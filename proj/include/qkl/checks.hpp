#pragma once
/**
 * @file checks.hpp
 * Property suites over V^{(x)d} and its blocks, each returning a
 * CheckReport: Hecke relations on the module, the bar involution, the
 * canonical basis contract, the inversion identity and form symmetry.
 */

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "qkl/kl.hpp"
#include "qkl/report.hpp"

namespace qkl {

namespace detail {
inline std::vector<std::pair<std::string, long long>> grid_params(Shape sh, int d, std::optional<int> e = {}) {
  std::vector<std::pair<std::string, long long>> v{{"r", sh.r}, {"m", sh.m}, {"d", d}};
  if (e) v.push_back({"e", *e});
  return v;
}
}  // namespace detail

inline CheckReport check_presentation(int d, const ScalarContext<LaurentQP>& ctx) {
  CheckReport rep = CheckReport::pass("hecke", {{"d", d}});
  auto pr = verify_presentation(d, ctx);
  if (!pr.passed) rep.fail(pr.witness);
  return rep;
}

/// Every defining relation annihilates every standard basis vector.
template <class S>
CheckReport check_module_relations(Shape sh, int d, const ScalarContext<S>& ctx) {
  CheckReport rep = CheckReport::pass("module-relations", detail::grid_params(sh, d, context_e(ctx)));
  TensorSpace sp(sh, d);
  auto rels = standard_relations(d, ctx);
  for (std::uint64_t c = 0; c < sp.dim(); ++c) {
    TensorVec<S> x(sp);
    x.add_code(c, S(1));
    for (const auto& rel : rels) {
      TensorVec<S> total(sp);
      for (const auto& [k, w] : rel.terms) total += act_hecke_word(x, w, ctx).scaled(k);
      if (!total.is_zero()) return rep.fail("relation '" + rel.name + "' fails on M[" + to_string(sp.weight(c)) + "]");
    }
  }
  return rep;
}

namespace detail {

/// A vector of block length that remembers which entries it touched, so
/// clearing and iterating cost only the support.
struct SupportVec {
  std::vector<LaurentQ> val;
  std::vector<int> touched;
  std::vector<char> mark;

  explicit SupportVec(int n) : val(n), mark(n, 0) {}
  void add(int k, const LaurentQ& c) {
    if (!mark[k]) {
      mark[k] = 1;
      touched.push_back(k);
      val[k] = c;
    } else {
      val[k] += c;
    }
  }
  void clear() {
    for (int k : touched) {
      val[k] = LaurentQ();
      mark[k] = 0;
    }
    touched.clear();
  }
  bool same_as(const SupportVec& o) const {
    for (int k : touched)
      if (val[k] != o.val[k]) return false;
    for (int k : o.touched)
      if (!mark[k] && !o.val[k].is_zero()) return false;
    return true;
  }
};

/// out = x * H_i (or x * H_i^{-1} = x * (H_i - gap)) read off the poset edges.
inline void support_act(const CosetPoset& P, const ScalarContext<LaurentQ>& ctx, const SupportVec& x, int i,
                        bool inverse, SupportVec& out) {
  const LaurentQ &t = ctx.param(i), &ti = ctx.param_inv(i);
  out.clear();
  for (int k : x.touched) {
    const LaurentQ& c = x.val[k];
    if (c.is_zero()) continue;
    const Edge& e = P.node(k).edges[i];
    switch (e.tag) {
      case EdgeTag::down:
        out.add(e.target, c);
        if (!inverse) out.add(k, c * t - c * ti);
        break;
      case EdgeTag::up_in:
        out.add(e.target, c);
        if (inverse) out.add(k, c * ti - c * t);
        break;
      case EdgeTag::fixed_a:
      case EdgeTag::fixed_b:
        out.add(k, c * (inverse ? ti : t));
        break;
    }
  }
}

}  // namespace detail

/// psi^2 = Id on the block, and psi(x h) = psi(x) bar(h) for random words h
/// in the generators applied to every basis vector.
inline CheckReport check_bar_block(const BlockModule<LaurentQ>& B, int words, std::uint64_t seed) {
  const CosetPoset& P = B.poset();
  const auto& ctx = B.context();
  const int n = B.size();
  CheckReport rep = CheckReport::pass("bar", detail::grid_params(P.block_weight().shape(), P.d(), ctx.spec.e));
  rep.params.push_back({"seed", static_cast<long long>(seed)});
  for (int k = 0; k < n; ++k)
    if (B.psi(B.psi_column(k)) != B.basis(k)) return rep.fail("psi^2 != Id on M[" + to_string(P.node(k).weight) + "]");
  std::vector<std::vector<int>> support(n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      if (!B.psi_column(k)[j].is_zero()) support[k].push_back(j);
  detail::SupportVec xa(n), xb(n), ra(n), rb(n), lhs(n);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> gen(0, P.d() - 1), len(1, 2 * P.d() + 2);
  for (int t = 0; t < words; ++t) {
    Word w;
    for (int k = len(rng); k > 0; --k) w.letters.push_back(gen(rng));
    for (int k = 0; k < n; ++k) {
      xa.clear();
      xa.add(k, LaurentQ(1));
      ra.clear();
      for (int j : support[k]) ra.add(j, B.psi_column(k)[j]);
      for (int i : w.letters) {
        detail::support_act(P, ctx, xa, i, false, xb);
        std::swap(xa, xb);
        detail::support_act(P, ctx, ra, i, true, rb);
        std::swap(ra, rb);
      }
      lhs.clear();
      for (int j : xa.touched) {
        if (xa.val[j].is_zero()) continue;
        const LaurentQ cb = xa.val[j].bar();
        for (int row : support[j]) lhs.add(row, B.psi_column(j)[row] * cb);
      }
      if (!lhs.same_as(ra))
        return rep.fail("psi(x h) != psi(x) bar(h) for x = M[" + to_string(P.node(k).weight) + "], h = H[" +
                        to_string(w) + "]");
    }
  }
  return rep;
}

/// Contract of check_kl_table plus independence of the DOWN-edge and
/// tie-break choices.
inline CheckReport check_basis_block(std::shared_ptr<const CosetPoset> P, PSpec spec, BasisKind kind,
                                     std::uint64_t seed) {
  CheckReport rep = CheckReport::pass(std::string("basis-") + to_string(kind),
                                      detail::grid_params(P->block_weight().shape(), P->d(), spec.e));
  BlockModule<LaurentQ> B(P, specialized_context(spec));
  KLTable T = build_kl_table(B, kind);
  auto tc = check_kl_table(T, B);
  if (!tc.passed) return rep.fail("block " + to_string(P->block_weight()) + ": " + tc.witness);
  const std::vector<KLOptions> variants = {
      {{EdgeChoice::last, 0}, TieBreak::lowest_index, false},
      {{EdgeChoice::random, seed}, TieBreak::highest_index, false},
      {{EdgeChoice::first, 0}, TieBreak::highest_index, false},
  };
  for (const auto& opt : variants) {
    BlockModule<LaurentQ> B2(P, specialized_context(spec), opt.block);
    if (!(build_kl_table(B2, kind, opt) == T))
      return rep.fail("block " + to_string(P->block_weight()) + ": basis depends on edge or tie-break choice");
  }
  return rep;
}

/// Sum identity and <C_g, C*_{-h}> = delta for the block of f.
inline CheckReport check_inversion_block(const TensorModule<LaurentQ>& M, const Weight& f) {
  const PSpec spec = M.context().spec;
  CheckReport rep = CheckReport::pass("inversion", detail::grid_params(f.shape(), f.d(), spec.e));
  const BlockModule<LaurentQ>& Bf = M.block(f);
  const BlockModule<LaurentQ>& Bn = M.block_of(f.negated());
  KLTable C = build_kl_table(Bf, BasisKind::canonical);
  KLTable D = build_kl_table(Bn, BasisKind::dual);
  auto ir = check_inversion_sums(C, D);
  if (!ir.passed) return rep.fail("block " + to_string(f) + ": " + ir.witness);
  const TensorSpace& sp = M.space();
  const CosetPoset& P = Bf.poset();
  std::vector<TensorVec<LaurentQ>> cs;
  for (int g = 0; g < P.size(); ++g) cs.push_back(Bf.to_tensor(C.column(g), sp));
  for (int h = 0; h < P.size(); ++h) {
    int nh = Bn.poset().index_of(P.node(h).weight.negated());
    // <x, y> = (x, D psi(y)); the right side is shared by every g.
    auto twisted = d_twist(M.psi(Bn.to_tensor(D.column(nh), sp)));
    for (int g = 0; g < P.size(); ++g)
      if (bilinear_std(cs[g], twisted) != LaurentQ(g == h ? 1 : 0))
        return rep.fail("<C[" + to_string(P.node(g).weight) + "], C*[-" + to_string(P.node(h).weight) +
                        "]> is not delta");
  }
  return rep;
}

/// <M_f, M_g> = <M_g, M_f> for all weight pairs.
inline CheckReport check_form_symmetry(const TensorModule<LaurentQ>& M) {
  const TensorSpace& sp = M.space();
  CheckReport rep = CheckReport::pass("form-symmetry", detail::grid_params(sp.shape, sp.d, M.context().spec.e));
  const std::uint64_t D = sp.dim();
  std::vector<TensorVec<LaurentQ>> twisted(D);  // D psi(M_g)
  for (std::uint64_t c = 0; c < D; ++c) {
    TensorVec<LaurentQ> x(sp);
    x.add_code(c, LaurentQ(1));
    twisted[c] = d_twist(M.psi(x));
  }
  for (std::uint64_t a = 0; a < D; ++a)
    for (const auto& [b, v] : twisted[a].terms())
      if (v != twisted[b].coeff_code(a))
        return rep.fail("<M[" + to_string(sp.weight(b)) + "], M[" + to_string(sp.weight(a)) + "]> is not symmetric");
  return rep;
}

}  // namespace qkl
