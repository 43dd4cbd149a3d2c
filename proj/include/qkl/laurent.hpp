#pragma once
/**
 * @file laurent.hpp
 * Integer Laurent polynomials in one variable (q) or two commuting
 * variables (q, p), with the bar involution and the specialization p = q^e.
 */

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qkl {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("qkl: Laurent coefficient overflow");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("qkl: Laurent coefficient overflow");
  return r;
}

}  // namespace detail

/// Sparse Laurent polynomial with integer coefficients.  Variable 0 is q,
/// variable 1 (when present) is p.  Terms are kept sorted by exponent
/// vector with no zero coefficients, so equality is structural.
template <std::size_t Vars>
class Laurent {
  static_assert(Vars == 1 || Vars == 2, "Laurent supports q or (q, p)");

 public:
  using Exponents = std::array<int, Vars>;
  struct Term {
    Exponents exp;
    std::int64_t coeff;
    bool operator==(const Term&) const = default;
  };

  Laurent() = default;
  Laurent(std::int64_t c) {  // NOLINT: implicit from integers is intended
    if (c != 0) terms_.push_back({Exponents{}, c});
  }

  static Laurent monomial(const Exponents& e, std::int64_t c = 1) {
    Laurent r;
    if (c != 0) r.terms_.push_back({e, c});
    return r;
  }

  /// q^k (and p^0).
  static Laurent q_power(int k, std::int64_t c = 1) {
    Exponents e{};
    e[0] = k;
    return monomial(e, c);
  }

  /// p^k; only available with two variables.
  static Laurent p_power(int k, std::int64_t c = 1) {
    static_assert(Vars == 2, "p is not a variable of this ring");
    Exponents e{};
    e[1] = k;
    return monomial(e, c);
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  std::int64_t coeff(const Exponents& e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, const Exponents& x) { return t.exp < x; });
    return (it != terms_.end() && it->exp == e) ? it->coeff : 0;
  }

  /// Coefficient of q^k in a one-variable polynomial.
  std::int64_t coeff_q(int k) const {
    static_assert(Vars == 1);
    return coeff(Exponents{k});
  }

  int min_q_degree() const {
    if (is_zero()) throw std::domain_error("qkl: degree of zero polynomial");
    int m = terms_.front().exp[0];
    for (const auto& t : terms_) m = std::min(m, t.exp[0]);
    return m;
  }
  int max_q_degree() const {
    if (is_zero()) throw std::domain_error("qkl: degree of zero polynomial");
    int m = terms_.front().exp[0];
    for (const auto& t : terms_) m = std::max(m, t.exp[0]);
    return m;
  }

  bool is_one() const { return terms_.size() == 1 && terms_[0].exp == Exponents{} && terms_[0].coeff == 1; }

  Laurent operator-() const {
    Laurent r = *this;
    for (auto& t : r.terms_) t.coeff = detail::checked_mul(t.coeff, -1);
    return r;
  }

  Laurent& operator+=(const Laurent& o) { return *this = merge(*this, o, 1); }
  Laurent& operator-=(const Laurent& o) { return *this = merge(*this, o, -1); }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

  friend Laurent operator+(const Laurent& a, const Laurent& b) { return merge(a, b, 1); }
  friend Laurent operator-(const Laurent& a, const Laurent& b) { return merge(a, b, -1); }

  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (b.terms_.size() == 1 && b.terms_[0].exp == Exponents{}) return a.scaled(b.terms_[0].coeff);
    if (a.terms_.size() == 1 && a.terms_[0].exp == Exponents{}) return b.scaled(a.terms_[0].coeff);
    // A monomial factor shifts exponents uniformly, which keeps the order.
    if (b.terms_.size() == 1) return a.shifted(b.terms_[0].exp).scaled(b.terms_[0].coeff);
    if (a.terms_.size() == 1) return b.shifted(a.terms_[0].exp).scaled(a.terms_[0].coeff);
    Laurent r;
    r.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
      for (const auto& y : b.terms_) {
        Exponents e;
        for (std::size_t k = 0; k < Vars; ++k) e[k] = x.exp[k] + y.exp[k];
        r.terms_.push_back({e, detail::checked_mul(x.coeff, y.coeff)});
      }
    r.canonicalize();
    return r;
  }

  friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms_ == b.terms_; }

  /// q -> q^{-1}, p -> p^{-1}.
  Laurent bar() const {
    Laurent r;
    r.terms_.reserve(terms_.size());
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      Exponents e;
      for (std::size_t k = 0; k < Vars; ++k) e[k] = -it->exp[k];
      r.terms_.push_back({e, it->coeff});
    }
    return r;
  }

  /// Multiply by q^a p^b (b ignored for one variable).
  Laurent shifted(const Exponents& s) const {
    Laurent r = *this;
    for (auto& t : r.terms_)
      for (std::size_t k = 0; k < Vars; ++k) t.exp[k] += s[k];
    return r;
  }

  Laurent scaled(std::int64_t c) const {
    if (c == 0) return {};
    Laurent r = *this;
    for (auto& t : r.terms_) t.coeff = detail::checked_mul(t.coeff, c);
    return r;
  }

 private:
  std::vector<Term> terms_;

  void canonicalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) { return x.exp < y.exp; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      if (!out.empty() && out.back().exp == t.exp)
        out.back().coeff = detail::checked_add(out.back().coeff, t.coeff);
      else
        out.push_back(t);
      if (out.back().coeff == 0) out.pop_back();
    }
    terms_ = std::move(out);
  }

  static Laurent merge(const Laurent& a, const Laurent& b, std::int64_t sign) {
    Laurent r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && i->exp < j->exp)) {
        r.terms_.push_back(*i++);
      } else if (i == a.terms_.end() || j->exp < i->exp) {
        r.terms_.push_back({j->exp, detail::checked_mul(j->coeff, sign)});
        ++j;
      } else {
        std::int64_t c = detail::checked_add(i->coeff, detail::checked_mul(j->coeff, sign));
        if (c != 0) r.terms_.push_back({i->exp, c});
        ++i;
        ++j;
      }
    }
    return r;
  }
};

using LaurentQP = Laurent<2>;
using LaurentQ = Laurent<1>;

template <std::size_t V>
Laurent<V> bar(const Laurent<V>& x) {
  return x.bar();
}

/// Specialization p = q^e.
struct PSpec {
  int e = 1;
  bool operator==(const PSpec&) const = default;
};

inline LaurentQ specialize_p(const LaurentQP& x, PSpec s) {
  LaurentQ r;
  for (const auto& t : x.terms()) r += LaurentQ::q_power(t.exp[0] + s.e * t.exp[1], t.coeff);
  return r;
}

/// [a] = (q^a - q^{-a}) / (q - q^{-1}).
inline LaurentQ quantum_integer(int a) {
  if (a < 0) return -quantum_integer(-a);
  LaurentQ r;
  for (int k = a - 1; k >= 1 - a; k -= 2) r += LaurentQ::q_power(k);
  return r;
}

/// (-q)^k in either ring.
template <class S>
S minus_q_power(int k) {
  return S::q_power(k, (k % 2 == 0) ? 1 : -1);
}

// ---------------------------------------------------------------------------
// Text, LaTeX, parsing

namespace detail {

/// Display order: larger |q-exponent| first, positive before negative on a
/// tie, then the same rule on p.  Reproduces "q^-3 - q^-1", "p*q^2 + 1".
template <std::size_t V>
std::vector<typename Laurent<V>::Term> display_order(const Laurent<V>& x) {
  auto ts = x.terms();
  auto key = [](const typename Laurent<V>::Term& t) {
    std::array<int, 4> k{};
    k[0] = std::abs(t.exp[0]);
    k[1] = t.exp[0];
    if constexpr (V == 2) {
      k[2] = std::abs(t.exp[1]);
      k[3] = t.exp[1];
    }
    return k;
  };
  std::sort(ts.begin(), ts.end(), [&](const auto& a, const auto& b) { return key(a) > key(b); });
  return ts;
}

inline void append_power(std::string& s, const char* var, int k, bool latex) {
  if (k == 0) return;
  if (!s.empty() && !latex) s += '*';
  s += var;
  if (k == 1) return;
  if (latex) {
    s += "^{" + std::to_string(k) + "}";
  } else {
    s += '^' + std::to_string(k);
  }
}

template <std::size_t V>
std::string render(const Laurent<V>& x, bool latex) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : display_order(x)) {
    std::string mono;
    if constexpr (V == 2) append_power(mono, "p", t.exp[1], latex);
    append_power(mono, "q", t.exp[0], latex);
    std::int64_t c = t.coeff;
    bool neg = c < 0;
    std::uint64_t mag = neg ? static_cast<std::uint64_t>(-(c + 1)) + 1 : static_cast<std::uint64_t>(c);
    if (first) {
      if (neg) out += '-';
    } else if (latex) {
      out += neg ? "-" : "+";
    } else {
      out += neg ? " - " : " + ";
    }
    if (mono.empty()) {
      out += std::to_string(mag);
    } else {
      if (mag != 1) out += std::to_string(mag) + (latex ? "" : "*");
      out += mono;
    }
    first = false;
  }
  return out;
}

}  // namespace detail

template <std::size_t V>
std::string to_string(const Laurent<V>& x) {
  return detail::render(x, false);
}

template <std::size_t V>
std::string to_latex(const Laurent<V>& x) {
  return detail::render(x, true);
}

template <std::size_t V>
std::ostream& operator<<(std::ostream& os, const Laurent<V>& x) {
  return os << to_string(x);
}

/// Parses the text format produced by to_string (whitespace-insensitive).
template <std::size_t V>
Laurent<V> parse_laurent(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("qkl: cannot parse Laurent polynomial \"" + text + "\": " + why);
  };
  if (s.empty()) fail("empty");
  Laurent<V> result;
  std::size_t i = 0;
  auto read_int = [&](bool allow_sign) {
    std::size_t start = i;
    if (allow_sign && i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    std::size_t digits = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == digits) fail("expected integer at position " + std::to_string(start));
    return std::stoll(s.substr(start, i - start));
  };
  bool first = true;
  while (i < s.size()) {
    std::int64_t sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      fail("expected + or - at position " + std::to_string(i));
    }
    first = false;
    std::int64_t c = 1;
    typename Laurent<V>::Exponents e{};
    bool any = false;
    while (i < s.size() && s[i] != '+' && s[i] != '-') {
      if (any) {
        if (s[i] != '*') fail("expected * at position " + std::to_string(i));
        ++i;
      }
      any = true;
      if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        c = detail::checked_mul(c, read_int(false));
        continue;
      }
      if (i >= s.size()) fail("dangling *");
      char var = s[i++];
      std::size_t slot = 0;
      if (var == 'q') {
        slot = 0;
      } else if (var == 'p' && V == 2) {
        slot = V - 1;
      } else {
        fail(std::string("unknown variable ") + var);
      }
      int k = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        k = static_cast<int>(read_int(true));
      }
      e[slot] += k;
    }
    if (!any) fail("empty term");
    result += Laurent<V>::monomial(e, sign * c);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Scalar context

/// Values of q, p and their inverses in the chosen scalar ring S.  The
/// Hecke parameter of generator i is q_i = p for i = 0 and q otherwise.
template <class S>
struct ScalarContext {
  S q, q_inv, p, p_inv;
  bool generic = true;  // p is an independent variable
  PSpec spec{};         // meaningful when !generic

  const S& param(int i) const { return i == 0 ? p : q; }
  const S& param_inv(int i) const { return i == 0 ? p_inv : q_inv; }
  /// q_i - q_i^{-1}
  S gap(int i) const { return param(i) - param_inv(i); }
};

/// The exponent e of p = q^e, if specialized.
template <class S>
std::optional<int> context_e(const ScalarContext<S>& ctx) {
  if (ctx.generic) return std::nullopt;
  return ctx.spec.e;
}

inline ScalarContext<LaurentQP> generic_context() {
  return {LaurentQP::q_power(1), LaurentQP::q_power(-1), LaurentQP::p_power(1), LaurentQP::p_power(-1), true, {}};
}

inline ScalarContext<LaurentQ> specialized_context(PSpec s) {
  return {LaurentQ::q_power(1), LaurentQ::q_power(-1), LaurentQ::q_power(s.e), LaurentQ::q_power(-s.e), false, s};
}

}  // namespace qkl
