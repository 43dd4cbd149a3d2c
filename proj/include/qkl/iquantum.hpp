#pragma once
/**
 * @file iquantum.hpp
 * The quantum group U of gl(2r+m) and its coideal subalgebra U^i of type
 * AIII acting on V^{(x)d}: generator operators, B_i, the quasi K-matrix
 * and K-matrix on V, and the commutation and symmetry checks against the
 * Hecke action.
 *
 * Nodes j of the Dynkin diagram are stored doubled, like indices; node j
 * joins v_{j-1/2} and v_{j+1/2}, with E_j v_{j+1/2} = v_{j-1/2}.
 */

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "qkl/kl.hpp"
#include "qkl/report.hpp"
#include "qkl/tensor.hpp"

namespace qkl {

// ---------------------------------------------------------------------------
// Parameters

struct IParams {
  int r = 0;
  int m = 0;
  std::optional<PSpec> spec;             // p = q^e when present
  std::map<int, LaurentQP> varsigma;     // doubled white node -> parameter
  std::optional<LaurentQ> kappa0;        // m = 0 only
  bool standard = true;

  /// Parameters fixed so that U^i commutes with the Hecke action.
  static IParams make(int r, int m, std::optional<PSpec> spec = std::nullopt) {
    Shape sh(r, m);  // validates
    (void)sh;
    IParams P;
    P.r = r;
    P.m = m;
    P.spec = spec;
    for (int j : P.white_nodes()) {
      LaurentQP s(1);
      if (m == 0 && j == 0) {
        s = LaurentQP::q_power(-1);
      } else if (m >= 1 && j == -m) {
        s = LaurentQP::p_power(1);
      } else if (m >= 1 && j == m) {
        s = LaurentQP::monomial({m, -1}, (m - 1) % 2 == 0 ? 1 : -1);
      }
      P.varsigma[j] = s;
    }
    if (m == 0 && spec) P.kappa0 = quantum_integer(spec->e);
    return P;
  }

  Shape shape() const { return Shape(r, m); }

  /// Doubled nodes of I = [1-n-r, n+r-1].
  std::vector<int> nodes() const {
    std::vector<int> out;
    for (int j = 2 - m - 2 * r; j <= m + 2 * r - 2; j += 2) out.push_back(j);
    return out;
  }
  bool is_black(int j) const { return std::abs(j) <= m - 2; }
  std::vector<int> black_nodes() const {
    std::vector<int> out;
    for (int j : nodes())
      if (is_black(j)) out.push_back(j);
    return out;
  }
  std::vector<int> white_nodes() const {
    std::vector<int> out;
    for (int j : nodes())
      if (!is_black(j)) out.push_back(j);
    return out;
  }

  IParams with_varsigma(int node, LaurentQP value) const {
    IParams P = *this;
    P.varsigma.at(node) = std::move(value);
    P.standard = false;
    return P;
  }
};

namespace detail {

template <class S>
S lift(const LaurentQP& x, const ScalarContext<S>& ctx) {
  if constexpr (std::is_same_v<S, LaurentQP>) {
    return x;
  } else {
    return specialize_p(x, ctx.spec);
  }
}

template <class S>
S lift_q(const LaurentQ& x) {
  if constexpr (std::is_same_v<S, LaurentQ>) {
    return x;
  } else {
    S r;
    for (const auto& t : x.terms()) r += S::q_power(t.exp[0], t.coeff);
    return r;
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Words in the generators

enum class LetterKind { E, F, K, Kinv };

struct Letter {
  LetterKind kind;
  int node;  // doubled
  auto operator<=>(const Letter&) const = default;
};

inline std::string to_string(const Letter& l) {
  const char* k[] = {"E", "F", "K", "K^-1"};
  return std::string(k[static_cast<int>(l.kind)]) + "[" + half_to_string(l.node) + "]";
}

template <class S>
class GenWord {
 public:
  using Term = std::pair<S, std::vector<Letter>>;

  GenWord() = default;
  static GenWord letter(LetterKind k, int node, S c = S(1)) {
    GenWord g;
    g.terms_.push_back({c, {Letter{k, node}}});
    return g;
  }
  static GenWord scalar(S c) {
    GenWord g;
    if (!c.is_zero()) g.terms_.push_back({c, {}});
    return g;
  }

  const std::vector<Term>& terms() const { return terms_; }

  GenWord& operator+=(const GenWord& o) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    normalize();
    return *this;
  }
  friend GenWord operator+(GenWord a, const GenWord& b) { return a += b; }
  friend GenWord operator-(GenWord a, const GenWord& b) { return a += b.scaled(S(-1)); }

  GenWord scaled(const S& c) const {
    GenWord g;
    for (const auto& [x, w] : terms_) g.terms_.push_back({x * c, w});
    g.normalize();
    return g;
  }

  friend GenWord operator*(const GenWord& a, const GenWord& b) {
    GenWord g;
    for (const auto& [x, u] : a.terms_)
      for (const auto& [y, v] : b.terms_) {
        std::vector<Letter> w = u;
        w.insert(w.end(), v.begin(), v.end());
        g.terms_.push_back({x * y, std::move(w)});
      }
    g.normalize();
    return g;
  }

 private:
  void normalize() {
    std::map<std::vector<Letter>, S> acc;
    for (auto& [c, w] : terms_) acc[w] += c;
    terms_.clear();
    for (auto& [w, c] : acc)
      if (!c.is_zero()) terms_.push_back({c, w});
  }
  std::vector<Term> terms_;
};

/// [A, B]_{q^{-1}} = AB - q^{-1} BA.
template <class S>
GenWord<S> q_bracket(const GenWord<S>& a, const GenWord<S>& b) {
  return a * b - (b * a).scaled(S::q_power(-1));
}

// ---------------------------------------------------------------------------
// Operators on V^{(x)d}

/// Linear endomorphism stored by columns: column c is the image of the
/// basis vector with code c.
template <class S>
class TensorOperator {
 public:
  TensorOperator() = default;
  explicit TensorOperator(TensorSpace sp) : sp_(sp), cols_(sp.dim(), TensorVec<S>(sp)) {}

  static TensorOperator identity(TensorSpace sp) {
    TensorOperator T(sp);
    for (std::uint64_t c = 0; c < sp.dim(); ++c) T.cols_[c].add_code(c, S(1));
    return T;
  }

  const TensorSpace& space() const { return sp_; }
  const TensorVec<S>& column(std::uint64_t c) const { return cols_.at(c); }
  TensorVec<S>& column(std::uint64_t c) { return cols_.at(c); }
  S entry(std::uint64_t row, std::uint64_t col) const { return cols_.at(col).coeff_code(row); }

  TensorVec<S> apply(const TensorVec<S>& x) const {
    TensorVec<S> r(sp_);
    for (const auto& [c, a] : x.terms()) r += cols_[c].scaled(a);
    return r;
  }

  /// this o B
  TensorOperator compose(const TensorOperator& B) const {
    TensorOperator R(sp_);
    for (std::uint64_t c = 0; c < sp_.dim(); ++c) R.cols_[c] = apply(B.cols_[c]);
    return R;
  }

  TensorOperator& operator+=(const TensorOperator& o) {
    for (std::uint64_t c = 0; c < sp_.dim(); ++c) cols_[c] += o.cols_[c];
    return *this;
  }
  friend TensorOperator operator+(TensorOperator a, const TensorOperator& b) { return a += b; }
  friend TensorOperator operator-(TensorOperator a, const TensorOperator& b) {
    for (std::uint64_t c = 0; c < a.sp_.dim(); ++c) a.cols_[c] -= b.cols_[c];
    return a;
  }
  TensorOperator scaled(const S& s) const {
    TensorOperator R(sp_);
    for (std::uint64_t c = 0; c < sp_.dim(); ++c) R.cols_[c] = cols_[c].scaled(s);
    return R;
  }

  TensorOperator transpose() const {
    TensorOperator R(sp_);
    for (std::uint64_t c = 0; c < sp_.dim(); ++c)
      for (const auto& [row, a] : cols_[c].terms()) R.cols_[row].add_code(c, a);
    return R;
  }

  bool is_zero() const {
    for (const auto& col : cols_)
      if (!col.is_zero()) return false;
    return true;
  }

  bool operator==(const TensorOperator& o) const { return sp_ == o.sp_ && cols_ == o.cols_; }

  /// First column index where this and o differ, as "row,col" weights.
  std::string first_difference(const TensorOperator& o) const {
    for (std::uint64_t c = 0; c < sp_.dim(); ++c)
      if (!(cols_[c] == o.cols_[c]))
        return "column M[" + to_string(sp_.weight(c)) + "]: " + to_string(cols_[c]) + " vs " + to_string(o.cols_[c]);
    return {};
  }

 private:
  TensorSpace sp_;
  std::vector<TensorVec<S>> cols_;
};

/// Matrix of x -> x * H_i.
template <class S>
TensorOperator<S> hecke_operator(const TensorSpace& sp, int i, const ScalarContext<S>& ctx) {
  TensorOperator<S> T(sp);
  for (std::uint64_t c = 0; c < sp.dim(); ++c) add_hecke_gen_image(T.column(c), sp.weight(c), S(1), i, ctx);
  return T;
}

namespace detail {

/// K_j eigenvalue exponent on v_a: +1 at a = j-1/2, -1 at a = j+1/2.
inline int k_exponent(int node, int a) {
  if (a == node - 1) return 1;
  if (a == node + 1) return -1;
  return 0;
}

/// One letter applied to M_t (doubled entries t) with coefficient c.
template <class S>
void apply_letter(TensorVec<S>& out, const std::vector<int>& t, const S& c, const Letter& l) {
  const int d = static_cast<int>(t.size());
  const TensorSpace& sp = out.space();
  auto emit = [&](std::vector<int> u, int qexp) { out.add(Weight(sp.shape, std::move(u)), c * S::q_power(qexp)); };
  switch (l.kind) {
    case LetterKind::K:
    case LetterKind::Kinv: {
      int e = 0;
      for (int a : t) e += k_exponent(l.node, a);
      emit(t, l.kind == LetterKind::K ? e : -e);
      break;
    }
    case LetterKind::E: {
      int before = 0;  // K_j eigenvalues on the factors left of k
      for (int k = 0; k < d; ++k) {
        if (t[k] == l.node + 1) {
          std::vector<int> u = t;
          u[k] = l.node - 1;
          emit(std::move(u), before);
        }
        before += k_exponent(l.node, t[k]);
      }
      break;
    }
    case LetterKind::F: {
      int after = 0;  // K_j^{-1} eigenvalues on the factors right of k
      for (int k = d - 1; k >= 0; --k) {
        if (t[k] == l.node - 1) {
          std::vector<int> u = t;
          u[k] = l.node + 1;
          emit(std::move(u), after);
        }
        after -= k_exponent(l.node, t[k]);
      }
      break;
    }
  }
}

}  // namespace detail

/// Action through the iterated coproduct; the leftmost letter acts last.
template <class S>
TensorVec<S> apply_word(const GenWord<S>& w, const TensorVec<S>& x) {
  TensorVec<S> total(x.space());
  for (const auto& [coef, letters] : w.terms()) {
    TensorVec<S> y = x;
    for (auto it = letters.rbegin(); it != letters.rend() && !y.is_zero(); ++it) {
      TensorVec<S> z(x.space());
      for (const auto& [c, a] : y.terms()) detail::apply_letter(z, x.space().twice_of(c), a, *it);
      y = std::move(z);
    }
    total += y.scaled(coef);
  }
  return total;
}

template <class S>
TensorOperator<S> coproduct_action(const GenWord<S>& w, const TensorSpace& sp) {
  TensorOperator<S> T(sp);
  for (std::uint64_t c = 0; c < sp.dim(); ++c) {
    TensorVec<S> x(sp);
    x.add_code(c, S(1));
    T.column(c) = apply_word(w, x);
  }
  return T;
}

/// E_i, F_i, K_i on V (d = 1).
template <class S>
TensorVec<S> gen_on_V(const Letter& l, Shape shape, int a) {
  TensorSpace sp(shape, 1);
  GenWord<S> w;
  w = GenWord<S>::letter(l.kind, l.node);
  return apply_word(w, TensorVec<S>::basis(sp, Weight(shape, {a})));
}

// ---------------------------------------------------------------------------
// U^i generators

/// B_i as a word in E, F, K.  For i = -n the nested q-bracket
/// [[..[E_{-n+1}, E_{-n+2}]_{q^-1}, ..], E_n]_{q^-1} stands for the braid
/// group image of E_{tau(i)}; for i = n the chain runs downward.
template <class S>
GenWord<S> b_word(const IParams& P, int i, const ScalarContext<S>& ctx) {
  if (!P.varsigma.count(i)) throw std::invalid_argument("qkl: B_i needs a white node i");
  using W = GenWord<S>;
  const S vs = detail::lift(P.varsigma.at(i), ctx);
  const int m = P.m;
  W F = W::letter(LetterKind::F, i);
  W Kinv = W::letter(LetterKind::Kinv, i);
  if (m == 0 && i == 0) {
    if (!P.kappa0) throw std::invalid_argument("qkl: m = 0 needs p = q^e for kappa_0");
    if constexpr (!std::is_same_v<S, LaurentQ>) {
      throw std::invalid_argument("qkl: m = 0 needs specialized scalars");
    } else {
      return F + (W::letter(LetterKind::E, 0) * Kinv).scaled(vs) + Kinv.scaled(*P.kappa0);
    }
  }
  if (std::abs(i) > m) return F + (W::letter(LetterKind::E, -i) * Kinv).scaled(vs);
  W X;
  if (i == -m) {
    X = W::letter(LetterKind::E, -m + 2);
    for (int c = -m + 4; c <= m; c += 2) X = q_bracket(X, W::letter(LetterKind::E, c));
  } else {
    X = W::letter(LetterKind::E, m - 2);
    for (int c = m - 4; c >= -m; c -= 2) X = q_bracket(X, W::letter(LetterKind::E, c));
  }
  return F + (X * Kinv).scaled(vs);
}

/// Expected action of B_i on V, written out case by case.
template <class S>
TensorVec<S> b_table_on_V(const IParams& P, int i, int a, const ScalarContext<S>& ctx) {
  TensorSpace sp(P.shape(), 1);
  TensorVec<S> out(sp);
  auto put = [&](int b, S c) { out.add(Weight(P.shape(), {b}), c); };
  const int m = P.m;
  const S vs = detail::lift(P.varsigma.at(i), ctx);
  if (m == 0 && i == 0) {
    S k = detail::lift_q<S>(*P.kappa0);
    if (a == -1) put(1, S(1));
    if (a == 1) put(-1, S(1));
    put(a, k * S::q_power(detail::k_exponent(0, a) * -1));
    return out;
  }
  if (m >= 1 && i == -m) {
    if (a == -m - 1) put(-m + 1, S(1));
    if (a == m + 1) put(-m + 1, vs);
  } else if (m >= 1 && i == m) {
    if (a == m - 1) {
      put(m + 1, S(1));
      put(-m - 1, vs * S::q_power(-m, (m - 1) % 2 == 0 ? 1 : -1));
    }
  } else {
    if (a == i - 1) put(i + 1, S(1));
    if (a == -i + 1) put(-i - 1, vs);
  }
  return out;
}

/// Psi(B_i) on V^{(x)d}; the d = 1 matrix is checked against the table.
template <class S>
TensorOperator<S> b_operator(const IParams& P, int i, int d, const ScalarContext<S>& ctx) {
  GenWord<S> w = b_word(P, i, ctx);
  TensorSpace sp1(P.shape(), 1);
  TensorOperator<S> B1 = coproduct_action(w, sp1);
  for (int a : P.shape().alphabet_twice()) {
    TensorVec<S> expect = b_table_on_V(P, i, a, ctx);
    if (!(B1.column(sp1.code(Weight(P.shape(), {a}))) == expect))
      throw std::logic_error("qkl: B_" + half_to_string(i) + " disagrees with its table on v_" + half_to_string(a));
  }
  return d == 1 ? B1 : coproduct_action(w, TensorSpace(P.shape(), d));
}

/// mu = nu - w_black tau(nu) in epsilon coordinates, for nu = eps_b.
inline std::vector<int> y_i_weight(const IParams& P, int b) {
  Shape sh = P.shape();
  std::vector<int> mu(sh.size(), 0);
  mu[sh.ordinal(b)] += 1;
  // w_black tau(eps_b) = -eps_b on I_black, -eps_{-b} on I_white.
  int image = sh.classify_twice(b) == IndexClass::black ? b : -b;
  mu[sh.ordinal(image)] += 1;
  return mu;
}

/// mu for nu = alpha_j.
inline std::vector<int> y_i_root(const IParams& P, int j) {
  std::vector<int> a = y_i_weight(P, j - 1), b = y_i_weight(P, j + 1);
  for (std::size_t k = 0; k < a.size(); ++k) a[k] -= b[k];
  return a;
}

/// K_mu as a product of K_j^{+-1}; mu must lie in the root lattice.
template <class S>
GenWord<S> k_mu_word(const IParams& P, const std::vector<int>& mu) {
  GenWord<S> w = GenWord<S>::scalar(S(1));
  int partial = 0;
  auto alphabet = P.shape().alphabet_twice();
  for (std::size_t k = 0; k + 1 < alphabet.size(); ++k) {
    partial += mu[k];
    int node = alphabet[k] + 1;
    for (int c = 0; c < std::abs(partial); ++c)
      w = w * GenWord<S>::letter(partial > 0 ? LetterKind::K : LetterKind::Kinv, node);
  }
  partial += mu.back();
  if (partial != 0) throw std::invalid_argument("qkl: K_mu word needs mu in the root lattice");
  return w;
}

/// K_mu as a diagonal operator: q^{mu_a} on v_a, multiplicatively.
template <class S>
TensorOperator<S> k_mu_operator(const IParams& P, const std::vector<int>& mu, int d) {
  TensorSpace sp(P.shape(), d);
  TensorOperator<S> T(sp);
  for (std::uint64_t c = 0; c < sp.dim(); ++c) {
    int e = 0;
    for (int a : sp.twice_of(c)) e += mu[P.shape().ordinal(a)];
    T.column(c).add_code(c, S::q_power(e));
  }
  return T;
}

/// A named U^i generator with its image under psi_i.
template <class S>
struct IGenerator {
  std::string name;
  TensorOperator<S> op;
  TensorOperator<S> psi_image;  // Psi(psi_i(u))
};

template <class S>
std::vector<IGenerator<S>> ui_generators(const IParams& P, int d, const ScalarContext<S>& ctx) {
  TensorSpace sp(P.shape(), d);
  std::vector<IGenerator<S>> gens;
  for (int j : P.black_nodes())
    for (LetterKind k : {LetterKind::E, LetterKind::F}) {
      auto op = coproduct_action(GenWord<S>::letter(k, j), sp);
      gens.push_back({(k == LetterKind::E ? "E" : "F") + std::string("[") + half_to_string(j) + "]", op, op});
    }
  for (int b : P.shape().alphabet_twice()) {
    auto mu = y_i_weight(P, b);
    std::vector<int> neg = mu;
    for (int& x : neg) x = -x;
    gens.push_back({"K_mu[eps " + half_to_string(b) + "]", k_mu_operator<S>(P, mu, d), k_mu_operator<S>(P, neg, d)});
  }
  for (int j : P.nodes()) {
    auto mu = y_i_root(P, j);
    std::vector<int> neg = mu;
    for (int& x : neg) x = -x;
    gens.push_back({"K_mu[alpha " + half_to_string(j) + "]", coproduct_action(k_mu_word<S>(P, mu), sp),
                    coproduct_action(k_mu_word<S>(P, neg), sp)});
  }
  for (int j : P.white_nodes()) {
    auto op = b_operator(P, j, d, ctx);
    gens.push_back({"B[" + half_to_string(j) + "]", op, op});
  }
  return gens;
}

// ---------------------------------------------------------------------------
// Quasi K-matrix, xi and the K-matrix on V

template <class S>
TensorOperator<S> upsilon_on_V(const IParams& P, const ScalarContext<S>& ctx) {
  TensorSpace sp(P.shape(), 1);
  TensorOperator<S> U = TensorOperator<S>::identity(sp);
  for (int a : P.shape().alphabet_twice())
    if (P.shape().classify_twice(a) == IndexClass::plus)
      U.column(sp.code(Weight(P.shape(), {a}))).add(Weight(P.shape(), {-a}), ctx.p_inv - ctx.p);
  return U;
}

namespace detail {

/// w_black tau on epsilon-coordinate vectors.
inline std::vector<int> wtau(const IParams& P, const std::vector<int>& v) {
  Shape sh = P.shape();
  std::vector<int> out(v.size(), 0);
  for (int b : sh.alphabet_twice()) {
    int image = sh.classify_twice(b) == IndexClass::black ? b : -b;
    out[sh.ordinal(image)] -= v[sh.ordinal(b)];
  }
  return out;
}

inline int dot(const std::vector<int>& a, const std::vector<int>& b) {
  int s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

}  // namespace detail

/// xi(eps_a) by the weight recursion.  The top index is normalized to 1,
/// except when r = 0: then it is black and carries (-q)^{m-1} p^{-1}.
template <class S>
std::map<int, S> xi_by_recursion(const IParams& P, const ScalarContext<S>& ctx) {
  Shape sh = P.shape();
  auto alphabet = sh.alphabet_twice();
  const int N = sh.size();
  std::map<int, S> xi;
  xi[alphabet.back()] = P.r == 0 ? minus_q_power<S>(P.m - 1) * ctx.p_inv : S(1);
  for (int k = N - 2; k >= 0; --k) {
    int a = alphabet[k];
    int j = a + 1;  // node a + 1/2
    std::vector<int> alpha(N, 0), mu(N, 0);
    alpha[k] = 1;
    alpha[k + 1] = -1;
    mu[k + 1] = 1;  // eps_{a+1}
    std::vector<int> wa = detail::wtau(P, alpha);
    std::vector<int> diff(N);
    for (int t = 0; t < N; ++t) diff[t] = alpha[t] - wa[t];
    int e = detail::dot(alpha, wa) - detail::dot(mu, diff);
    S gamma = P.is_black(j) ? S(1) : -detail::lift(P.varsigma.at(j), ctx);
    xi[a] = gamma * S::q_power(e) * xi[alphabet[k + 1]];
  }
  return xi;
}

/// Closed form of xi: (-q)^{n+r-1/2-a} outside |a| <= n-1/2 and
/// (-q)^{m+r-1} p^{-1} inside.  Checked against the recursion.
template <class S>
std::map<int, S> xi_values(const IParams& P, const ScalarContext<S>& ctx) {
  std::map<int, S> xi;
  const int top2 = P.m + 2 * P.r - 1;  // 2(n+r-1/2)
  for (int a : P.shape().alphabet_twice()) {
    if (std::abs(a) <= P.m - 1)
      xi[a] = minus_q_power<S>(P.m + P.r - 1) * ctx.p_inv;
    else
      xi[a] = minus_q_power<S>((top2 - a) / 2);
  }
  if (P.standard && xi != xi_by_recursion(P, ctx)) throw std::logic_error("qkl: xi closed form disagrees with recursion");
  return xi;
}

/// Braid group operator T_j on V: v_{j+1/2} -> v_{j-1/2}, v_{j-1/2} -> -q v_{j+1/2}.
template <class S>
TensorOperator<S> braid_T_on_V(const IParams& P, int j) {
  TensorSpace sp(P.shape(), 1);
  TensorOperator<S> T = TensorOperator<S>::identity(sp);
  auto col = [&](int a) -> TensorVec<S>& { return T.column(sp.code(Weight(P.shape(), {a}))); };
  col(j + 1) = TensorVec<S>::basis(sp, Weight(P.shape(), {j - 1}));
  col(j - 1) = TensorVec<S>::basis(sp, Weight(P.shape(), {j + 1}), S::q_power(1, -1));
  return T;
}

/// T_{w0}: v_a -> (-q)^{r+n-a-1/2} v_{-a}.
template <class S>
TensorOperator<S> t_w0_on_V(const IParams& P) {
  TensorSpace sp(P.shape(), 1);
  TensorOperator<S> T(sp);
  for (int a : P.shape().alphabet_twice())
    T.column(sp.code(Weight(P.shape(), {a}))) =
        TensorVec<S>::basis(sp, Weight(P.shape(), {-a}), minus_q_power<S>((2 * P.r + P.m - a - 1) / 2));
  return T;
}

/// T_{w_black}: v_a -> (-q)^{n-a-1/2} v_{-a} on I_black, identity elsewhere.
template <class S>
TensorOperator<S> t_wblack_on_V(const IParams& P) {
  TensorSpace sp(P.shape(), 1);
  TensorOperator<S> T = TensorOperator<S>::identity(sp);
  for (int a : P.shape().alphabet_twice())
    if (P.shape().classify_twice(a) == IndexClass::black)
      T.column(sp.code(Weight(P.shape(), {a}))) =
          TensorVec<S>::basis(sp, Weight(P.shape(), {-a}), minus_q_power<S>((P.m - a - 1) / 2));
  return T;
}

/// Inverse of a monomial matrix whose entries are +-q^k p^l; such a unit
/// inverts to its bar.
template <class S>
TensorOperator<S> monomial_inverse(const TensorOperator<S>& T) {
  TensorOperator<S> R(T.space());
  for (std::uint64_t c = 0; c < T.space().dim(); ++c) {
    const auto& col = T.column(c);
    if (col.terms().size() != 1) throw std::invalid_argument("qkl: not a monomial matrix");
    const auto& [row, a] = *col.terms().begin();
    if (a.terms().size() != 1 || std::abs(a.terms()[0].coeff) != 1) throw std::invalid_argument("qkl: entry not a unit");
    R.column(row).add_code(c, a.bar());
  }
  return R;
}

/// K = Upsilon o xi~ o T_{w_black}^{-1} o T_{w0}^{-1} on V.
template <class S>
TensorOperator<S> kmatrix_on_V(const IParams& P, const ScalarContext<S>& ctx) {
  TensorSpace sp(P.shape(), 1);
  auto xi = xi_by_recursion(P, ctx);
  TensorOperator<S> Xi(sp);
  for (int a : P.shape().alphabet_twice()) {
    std::uint64_t c = sp.code(Weight(P.shape(), {a}));
    Xi.column(c).add_code(c, xi.at(a));
  }
  TensorOperator<S> K = upsilon_on_V(P, ctx).compose(Xi).compose(monomial_inverse(t_wblack_on_V<S>(P))).compose(
      monomial_inverse(t_w0_on_V<S>(P)));
  if (P.standard) {
    for (int a : P.shape().alphabet_twice()) {
      Weight va(P.shape(), {a}), vna(P.shape(), {-a});
      switch (P.shape().classify_twice(a)) {
        case IndexClass::black: {
          auto x = TensorVec<S>::basis(sp, va);
          if (!(K.apply(x) == x.scaled(ctx.p_inv))) throw std::logic_error("qkl: K is not p^-1 on V_black");
          break;
        }
        case IndexClass::plus: {
          auto minus = TensorVec<S>::basis(sp, va) - TensorVec<S>::basis(sp, vna, ctx.p);
          auto plus = TensorVec<S>::basis(sp, va) + TensorVec<S>::basis(sp, vna, ctx.p_inv);
          if (!(K.apply(minus) == minus.scaled(-ctx.p))) throw std::logic_error("qkl: K is not -p on V_-");
          if (!(K.apply(plus) == plus.scaled(ctx.p_inv))) throw std::logic_error("qkl: K is not p^-1 on V_+");
          break;
        }
        case IndexClass::minus:
          break;
      }
    }
  }
  return K;
}

/// A d=1 operator acting on the first tensor factor of V^{(x)d}.
template <class S>
TensorOperator<S> on_first_factor(const TensorOperator<S>& A, int d) {
  TensorSpace sp(A.space().shape, d);
  TensorOperator<S> T(sp);
  const TensorSpace& sp1 = A.space();
  for (std::uint64_t c = 0; c < sp.dim(); ++c) {
    std::vector<int> t = sp.twice_of(c);
    for (const auto& [row, a] : A.column(sp1.code(Weight(sp1.shape, {t[0]}))).terms()) {
      std::vector<int> u = t;
      u[0] = sp1.twice_of(row)[0];
      T.column(c).add(Weight(sp.shape, u), a);
    }
  }
  return T;
}

// ---------------------------------------------------------------------------
// Verifications

inline std::vector<std::pair<std::string, long long>> iparams_list(const IParams& P, int d,
                                                                   std::optional<int> e = std::nullopt) {
  std::vector<std::pair<std::string, long long>> v{{"r", P.r}, {"m", P.m}, {"d", d}};
  if (e) v.push_back({"e", *e});
  return v;
}

template <class S>
CheckReport verify_k_realizes_H0(const IParams& P, int d, const ScalarContext<S>& ctx) {
  CheckReport rep = CheckReport::pass("kmatrix", iparams_list(P, d, context_e(ctx)));
  TensorSpace sp(P.shape(), d);
  TensorOperator<S> K = on_first_factor(kmatrix_on_V(P, ctx), d);
  TensorOperator<S> H0 = hecke_operator(sp, 0, ctx);
  TensorOperator<S> H0inv = H0 - TensorOperator<S>::identity(sp).scaled(ctx.gap(0));
  if (!(H0.compose(H0inv) == TensorOperator<S>::identity(sp))) return rep.fail("H_0 - (p - p^-1) is not the inverse of H_0");
  if (!(K == H0inv)) rep.fail("K (x) Id differs from H_0^-1 at " + K.first_difference(H0inv));
  return rep;
}

template <class S>
CheckReport verify_commutation(const IParams& P, int d, const ScalarContext<S>& ctx) {
  CheckReport rep = CheckReport::pass("commute", iparams_list(P, d, context_e(ctx)));
  TensorSpace sp(P.shape(), d);
  std::vector<TensorOperator<S>> H;
  for (int j = 0; j < d; ++j) H.push_back(hecke_operator(sp, j, ctx));
  for (const auto& g : ui_generators(P, d, ctx))
    for (int j = 0; j < d; ++j)
      if (!(g.op.compose(H[j]) == H[j].compose(g.op)))
        return rep.fail(g.name + " does not commute with H_" + std::to_string(j));
  return rep;
}

/// psi_i(u x) = psi_i(u) psi_i(x) on all standard basis vectors.
inline CheckReport verify_ibar_compat(const IParams& P, int d, const TensorModule<LaurentQ>& M) {
  const auto& ctx = M.context();
  CheckReport rep = CheckReport::pass("bar", iparams_list(P, d, ctx.spec.e));
  const TensorSpace& sp = M.space();
  for (const auto& g : ui_generators(P, d, specialized_context(P.spec.value_or(ctx.spec))))
    for (std::uint64_t c = 0; c < sp.dim(); ++c) {
      TensorVec<LaurentQ> x(sp);
      x.add_code(c, LaurentQ(1));
      auto lhs = M.psi(g.op.apply(x));
      auto rhs = g.psi_image.apply(M.psi(x));
      if (!(lhs == rhs)) return rep.fail(g.name + " at M[" + to_string(sp.weight(c)) + "]");
    }
  return rep;
}

/// rho: E_i -> q^-1 F_i K_i, F_i -> q^-1 E_i K_i^-1, K -> K, anti-multiplicative.
template <class S>
GenWord<S> rho(const GenWord<S>& w) {
  using W = GenWord<S>;
  W out;
  for (const auto& [c, letters] : w.terms()) {
    W acc = W::scalar(c);
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
      const Letter& l = *it;
      W img;
      switch (l.kind) {
        case LetterKind::E:
          img = (W::letter(LetterKind::F, l.node) * W::letter(LetterKind::K, l.node)).scaled(S::q_power(-1));
          break;
        case LetterKind::F:
          img = (W::letter(LetterKind::E, l.node) * W::letter(LetterKind::Kinv, l.node)).scaled(S::q_power(-1));
          break;
        default:
          img = W::letter(l.kind, l.node);
      }
      acc = acc * img;
    }
    out += acc;
  }
  return out;
}

/// sigma'_i: anti-linear anti-automorphism with X_i -> X_{-i}.
template <class S>
GenWord<S> sigma_prime(const GenWord<S>& w) {
  using W = GenWord<S>;
  W out;
  for (const auto& [c, letters] : w.terms()) {
    W acc = W::scalar(c.bar());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) acc = acc * W::letter(it->kind, -it->node);
    out += acc;
  }
  return out;
}

/// Adjunction (u x, y) = (x, rho(u) y) and D(u x) = rho(sigma'(u)) D(x).
template <class S>
CheckReport verify_form_symmetries(const IParams& P, int d) {
  CheckReport rep = CheckReport::pass("forms", iparams_list(P, d));
  TensorSpace sp(P.shape(), d);
  for (int j : P.nodes())
    for (LetterKind k : {LetterKind::E, LetterKind::F, LetterKind::K, LetterKind::Kinv}) {
      GenWord<S> u = GenWord<S>::letter(k, j);
      std::string name = to_string(Letter{k, j});
      auto U = coproduct_action(u, sp);
      if (!(U.transpose() == coproduct_action(rho(u), sp))) return rep.fail("rho adjunction fails for " + name);
      auto R = coproduct_action(rho(sigma_prime(u)), sp);
      for (std::uint64_t c = 0; c < sp.dim(); ++c) {
        TensorVec<S> x(sp);
        x.add_code(c, S(1));
        if (!(d_twist(U.apply(x)) == R.apply(d_twist(x))))
          return rep.fail("D-twist identity fails for " + name + " at M[" + to_string(sp.weight(c)) + "]");
      }
    }
  return rep;
}

/// Products of the rank-one T_j along w0 = (s1..s_{N-1})(s1..s_{N-2})..(s1)
/// of the full and black subdiagrams, against the closed forms.
template <class S>
CheckReport verify_t_matrices(const IParams& P) {
  CheckReport rep = CheckReport::pass("tmatrix", iparams_list(P, 1));
  auto alphabet = P.shape().alphabet_twice();
  auto product = [&](int lo, int hi) {  // alphabet positions lo..hi
    TensorOperator<S> T = TensorOperator<S>::identity(TensorSpace(P.shape(), 1));
    for (int top = hi; top > lo; --top)
      for (int k = lo; k < top; ++k) T = T.compose(braid_T_on_V<S>(P, alphabet[k] + 1));
    return T;
  };
  const int N = static_cast<int>(alphabet.size());
  auto w0 = t_w0_on_V<S>(P);
  if (!(product(0, N - 1) == w0)) return rep.fail("T_w0 " + product(0, N - 1).first_difference(w0));
  auto wb = t_wblack_on_V<S>(P);
  if (!(product(P.r, P.r + P.m - 1) == wb)) rep.fail("T_wblack " + product(P.r, P.r + P.m - 1).first_difference(wb));
  return rep;
}

/// E_i^2 E_j - [2] E_i E_j E_i + E_j E_i^2 and its F analogue vanish on
/// V^{(x)d} for adjacent nodes i, j.
template <class S>
CheckReport verify_q_serre(const IParams& P, int d) {
  CheckReport rep = CheckReport::pass("serre", iparams_list(P, d));
  TensorSpace sp(P.shape(), d);
  const S two = S::q_power(1) + S::q_power(-1);
  const std::vector<int> nodes = P.nodes();
  for (int i : nodes)
    for (int j : {i - 2, i + 2}) {
      if (std::find(nodes.begin(), nodes.end(), j) == nodes.end()) continue;
      for (LetterKind k : {LetterKind::E, LetterKind::F}) {
        auto X = GenWord<S>::letter(k, i), Y = GenWord<S>::letter(k, j);
        auto serre = X * X * Y - (X * Y * X).scaled(two) + Y * X * X;
        if (!coproduct_action(serre, sp).is_zero())
          return rep.fail("Serre relation fails for " + to_string(Letter{k, i}) + ", " + to_string(Letter{k, j}));
      }
    }
  return rep;
}

/// Submodules V_- and V_black + V_+ of V, and the H_0 eigenvalues on them.
template <class S>
CheckReport verify_v_decomposition(const IParams& P, const ScalarContext<S>& ctx) {
  CheckReport rep = CheckReport::pass("vpm", iparams_list(P, 1, context_e(ctx)));
  Shape sh = P.shape();
  TensorSpace sp(sh, 1);
  auto v = [&](int a, S c = S(1)) { return TensorVec<S>::basis(sp, Weight(sh, {a}), c); };
  std::vector<TensorVec<S>> minus, rest;
  for (int a : sh.alphabet_twice()) {
    switch (sh.classify_twice(a)) {
      case IndexClass::plus:
        minus.push_back(v(a) - v(-a, ctx.p));
        rest.push_back(v(a) + v(-a, ctx.p_inv));
        break;
      case IndexClass::black:
        rest.push_back(v(a));
        break;
      default:
        break;
    }
  }
  // Membership: x in span{v_a - p v_-a} iff x = sum_a x_a (v_a - p v_-a)
  // with no black component; similarly for the complement.
  auto in_span = [&](const TensorVec<S>& x, bool want_minus) {
    TensorVec<S> rem = x;
    for (int a : sh.alphabet_twice()) {
      IndexClass c = sh.classify_twice(a);
      if (c == IndexClass::plus) {
        S xa = x.coeff(Weight(sh, {a}));
        rem -= want_minus ? (v(a) - v(-a, ctx.p)).scaled(xa) : (v(a) + v(-a, ctx.p_inv)).scaled(xa);
      } else if (c == IndexClass::black && !want_minus) {
        rem -= v(a, x.coeff(Weight(sh, {a})));
      }
    }
    return rem.is_zero();
  };
  TensorOperator<S> H0 = hecke_operator(sp, 0, ctx);
  for (const auto& x : minus)
    if (!(H0.apply(x) == x.scaled(-ctx.p_inv))) return rep.fail("H_0 is not -p^-1 on " + to_string(x));
  for (const auto& x : rest)
    if (!(H0.apply(x) == x.scaled(ctx.p))) return rep.fail("H_0 is not p on " + to_string(x));
  for (const auto& g : ui_generators(P, 1, ctx)) {
    for (const auto& x : minus)
      if (!in_span(g.op.apply(x), true)) return rep.fail(g.name + " leaves V_- at " + to_string(x));
    for (const auto& x : rest)
      if (!in_span(g.op.apply(x), false)) return rep.fail(g.name + " leaves V_black + V_+ at " + to_string(x));
  }
  return rep;
}

}  // namespace qkl
