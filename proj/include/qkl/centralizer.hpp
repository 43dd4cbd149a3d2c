#pragma once
/**
 * @file centralizer.hpp
 * Double centralizer dimensions at a random rational value of q: the
 * commutant of the Hecke action against the algebra generated by U^i.
 * Needs GMP (gmpxx).
 */

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qkl/iquantum.hpp"

namespace qkl {

using QMatrix = std::vector<std::vector<mpq_class>>;  // row-major

inline mpq_class evaluate_at(const LaurentQ& x, const mpq_class& q) {
  mpq_class r = 0;
  for (const auto& t : x.terms()) {
    mpq_class pw = 1;
    mpq_class base = t.exp[0] >= 0 ? q : mpq_class(1 / q);
    for (int k = 0; k < std::abs(t.exp[0]); ++k) pw *= base;
    r += pw * mpq_class(static_cast<long>(t.coeff));
  }
  return r;
}

inline QMatrix evaluate_at(const TensorOperator<LaurentQ>& T, const mpq_class& q) {
  const std::size_t D = T.space().dim();
  QMatrix M(D, std::vector<mpq_class>(D, 0));
  for (std::size_t c = 0; c < D; ++c)
    for (const auto& [row, a] : T.column(c).terms()) M[row][c] = evaluate_at(a, q);
  return M;
}

inline QMatrix multiply(const QMatrix& A, const QMatrix& B) {
  const std::size_t n = A.size();
  QMatrix C(n, std::vector<mpq_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (A[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (B[k][j] != 0) C[i][j] += A[i][k] * B[k][j];
    }
  return C;
}

/// Incremental row echelon basis; insert() reports whether the span grew.
class EchelonBasis {
 public:
  bool insert(std::vector<mpq_class> v) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const mpq_class& c = v[pivots_[r]];
      if (c == 0) continue;
      mpq_class f = c;  // rows are normalized at their pivot
      for (std::size_t j = pivots_[r]; j < v.size(); ++j)
        if (rows_[r][j] != 0) v[j] -= f * rows_[r][j];
    }
    std::size_t p = 0;
    while (p < v.size() && v[p] == 0) ++p;
    if (p == v.size()) return false;
    mpq_class inv = 1 / v[p];
    for (std::size_t j = p; j < v.size(); ++j) v[j] *= inv;
    // keep rows sorted by pivot so the single forward sweep above is complete
    std::size_t at = 0;
    while (at < pivots_.size() && pivots_[at] < p) ++at;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const mpq_class c = rows_[r][p];
      if (c == 0) continue;
      for (std::size_t j = p; j < v.size(); ++j)
        if (v[j] != 0) rows_[r][j] -= c * v[j];
    }
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(at), std::move(v));
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(at), p);
    return true;
  }
  std::size_t rank() const { return rows_.size(); }

 private:
  std::vector<std::vector<mpq_class>> rows_;
  std::vector<std::size_t> pivots_;
};

inline std::vector<mpq_class> flatten(const QMatrix& M) {
  std::vector<mpq_class> v;
  for (const auto& row : M) v.insert(v.end(), row.begin(), row.end());
  return v;
}

/// dim{X : X H = H X for all H in gens}.
inline std::size_t commutant_dimension(const std::vector<QMatrix>& gens, std::size_t D) {
  EchelonBasis eq;
  // Unknown X[a][b] at index a*D+b; equation (XH - HX)[i][j] = 0.
  for (const auto& H : gens)
    for (std::size_t i = 0; i < D; ++i)
      for (std::size_t j = 0; j < D; ++j) {
        std::vector<mpq_class> row(D * D, 0);
        for (std::size_t k = 0; k < D; ++k) {
          if (H[k][j] != 0) row[i * D + k] += H[k][j];
          if (H[i][k] != 0) row[k * D + j] -= H[i][k];
        }
        eq.insert(std::move(row));
      }
  return D * D - eq.rank();
}

/// Dimension of the unital algebra generated by gens, by closure under
/// right multiplication.
inline std::size_t generated_dimension(const std::vector<QMatrix>& gens, std::size_t D) {
  EchelonBasis span;
  QMatrix I(D, std::vector<mpq_class>(D, 0));
  for (std::size_t i = 0; i < D; ++i) I[i][i] = 1;
  std::vector<QMatrix> frontier{I};
  span.insert(flatten(I));
  while (!frontier.empty()) {
    std::vector<QMatrix> next;
    for (const auto& A : frontier)
      for (const auto& g : gens) {
        QMatrix B = multiply(A, g);
        if (span.insert(flatten(B))) next.push_back(std::move(B));
      }
    frontier = std::move(next);
  }
  return span.rank();
}

struct CentralizerSample {
  mpq_class q;
  std::size_t commutant = 0;
  std::size_t generated = 0;
};

/// Samples q = a/b with 2 <= a, b <= 50 and a != b.  The Hecke operators
/// are invertible at every such point, so no retry is needed for them;
/// a sample is redrawn only if it lands on q^2 = 1.
inline CheckReport double_centralizer_dims(const IParams& P, int d, std::uint64_t seed, int samples,
                                           std::vector<CentralizerSample>* out = nullptr) {
  if (!P.spec) throw std::invalid_argument("qkl: double centralizer check needs p = q^e");
  CheckReport rep = CheckReport::pass("centralizer", iparams_list(P, d, P.spec->e));
  rep.params.push_back({"seed", static_cast<long long>(seed)});
  rep.probabilistic = true;
  auto ctx = specialized_context(*P.spec);
  TensorSpace sp(P.shape(), d);
  std::vector<TensorOperator<LaurentQ>> H;
  for (int j = 0; j < d; ++j) H.push_back(hecke_operator(sp, j, ctx));
  std::vector<TensorOperator<LaurentQ>> U;
  for (auto& g : ui_generators(P, d, ctx)) U.push_back(std::move(g.op));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(2, 50);
  for (int s = 0; s < samples; ++s) {
    int a = pick(rng), b = pick(rng);
    while (a == b) b = pick(rng);
    mpq_class q(a, b);
    q.canonicalize();
    std::vector<QMatrix> Hq, Uq;
    for (const auto& h : H) Hq.push_back(evaluate_at(h, q));
    for (const auto& u : U) Uq.push_back(evaluate_at(u, q));
    CentralizerSample cs{q, commutant_dimension(Hq, sp.dim()), generated_dimension(Uq, sp.dim())};
    if (cs.commutant != cs.generated)
      rep.fail("q=" + q.get_str() + ": commutant " + std::to_string(cs.commutant) + ", generated " +
               std::to_string(cs.generated));
    if (out) out->push_back(cs);
  }
  return rep;
}

}  // namespace qkl
