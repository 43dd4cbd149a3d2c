#pragma once
/**
 * @file coxeterb.hpp
 * The hyperoctahedral group W_d as signed permutations of {1..d}.
 *
 * Generators: s_0 negates window position 1, s_i (i >= 1) swaps positions
 * i and i+1.  Products compose as maps, (st)(i) = s(t(i)), so right
 * multiplication by a generator acts on window positions.
 */

#include <algorithm>
#include <compare>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace qkl {

class SignedPerm {
 public:
  SignedPerm() = default;

  explicit SignedPerm(std::vector<int> window) : w_(std::move(window)) {
    const int d = rank();
    std::vector<bool> seen(d + 1, false);
    for (int v : w_) {
      int a = std::abs(v);
      if (a < 1 || a > d || seen[a]) throw std::invalid_argument("qkl: not a signed permutation window");
      seen[a] = true;
    }
  }

  static SignedPerm identity(int d) {
    std::vector<int> w(d);
    for (int i = 0; i < d; ++i) w[i] = i + 1;
    return SignedPerm(std::move(w), Unchecked{});
  }

  static SignedPerm generator(int d, int i) { return identity(d).times_generator(i); }

  int rank() const { return static_cast<int>(w_.size()); }
  const std::vector<int>& window() const { return w_; }

  /// Value at i in {±1..±d}, using w(-i) = -w(i).
  int operator()(int i) const { return i > 0 ? w_[i - 1] : -w_[-i - 1]; }

  bool is_identity() const {
    for (int i = 0; i < rank(); ++i)
      if (w_[i] != i + 1) return false;
    return true;
  }

  /// sigma * s_i
  SignedPerm times_generator(int i) const {
    check_generator(i);
    SignedPerm r = *this;
    if (i == 0)
      r.w_[0] = -r.w_[0];
    else
      std::swap(r.w_[i - 1], r.w_[i]);
    return r;
  }

  /// s_i * sigma
  SignedPerm generator_times(int i) const {
    check_generator(i);
    SignedPerm r = *this;
    for (int& v : r.w_) {
      if (i == 0) {
        if (std::abs(v) == 1) v = -v;
      } else if (std::abs(v) == i) {
        v = v > 0 ? i + 1 : -(i + 1);
      } else if (std::abs(v) == i + 1) {
        v = v > 0 ? i : -i;
      }
    }
    return r;
  }

  friend SignedPerm operator*(const SignedPerm& a, const SignedPerm& b) {
    if (a.rank() != b.rank()) throw std::invalid_argument("qkl: rank mismatch in W_d product");
    std::vector<int> w(b.rank());
    for (int i = 1; i <= b.rank(); ++i) w[i - 1] = a(b(i));
    return SignedPerm(std::move(w), Unchecked{});
  }

  SignedPerm inverse() const {
    std::vector<int> w(rank());
    for (int i = 1; i <= rank(); ++i) {
      int v = w_[i - 1];
      w[std::abs(v) - 1] = v > 0 ? i : -i;
    }
    return SignedPerm(std::move(w), Unchecked{});
  }

  bool has_right_descent(int i) const {
    check_generator(i);
    return i == 0 ? w_[0] < 0 : w_[i - 1] > w_[i];
  }

  auto operator<=>(const SignedPerm&) const = default;

 private:
  struct Unchecked {};
  SignedPerm(std::vector<int> w, Unchecked) : w_(std::move(w)) {}

  void check_generator(int i) const {
    if (i < 0 || i >= rank()) throw std::out_of_range("qkl: generator index out of range");
  }

  std::vector<int> w_;
};

/// A sequence of generator indices; s_{i1} s_{i2} ... s_{ik}.
struct Word {
  std::vector<int> letters;
  std::size_t size() const { return letters.size(); }
  bool operator==(const Word&) const = default;
  auto operator<=>(const Word&) const = default;
};

/// inv(w) + n_B(w): ordinary inversions plus the sum of |negative values|.
inline int length(const SignedPerm& w) {
  const auto& v = w.window();
  int inv = 0, nb = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0) nb -= v[i];
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[i] > v[j]) ++inv;
  }
  return inv + nb;
}

inline SignedPerm evaluate(const Word& word, int d) {
  SignedPerm w = SignedPerm::identity(d);
  for (int i : word.letters) w = w.times_generator(i);
  return w;
}

/// Strips right descents, smallest index first, from the right end.
inline Word reduced_word(const SignedPerm& w) {
  std::vector<int> rev;
  SignedPerm x = w;
  while (!x.is_identity()) {
    int i = 0;
    while (!x.has_right_descent(i)) ++i;
    rev.push_back(i);
    x = x.times_generator(i);
  }
  return Word{{rev.rbegin(), rev.rend()}};
}

/// Lexicographically smallest reduced word, built by stripping left
/// descents smallest-first.  Used for labels ("s121" rather than "s212").
inline Word lex_min_reduced_word(const SignedPerm& w) {
  Word out;
  SignedPerm x = w;
  while (!x.is_identity()) {
    SignedPerm inv = x.inverse();
    int i = 0;
    while (!inv.has_right_descent(i)) ++i;
    out.letters.push_back(i);
    x = x.generator_times(i);
  }
  return out;
}

/// Subword property via greedy descent along one reduced word of w.
inline bool bruhat_leq(const SignedPerm& u, const SignedPerm& w) {
  if (u.rank() != w.rank()) throw std::invalid_argument("qkl: rank mismatch in Bruhat test");
  Word rw = reduced_word(w);
  SignedPerm x = u;
  for (auto it = rw.letters.rbegin(); it != rw.letters.rend(); ++it)
    if (x.has_right_descent(*it)) x = x.times_generator(*it);
  return x.is_identity();
}

/// Sign change at i: t_1 = s_0, t_i = s_{i-1} t_{i-1} s_{i-1}.
inline SignedPerm t_element(int d, int i) {
  if (i < 1 || i > d) throw std::out_of_range("qkl: t_i needs 1 <= i <= d");
  SignedPerm t = SignedPerm::identity(d);
  std::vector<int> w = t.window();
  w[i - 1] = -i;
  return SignedPerm(std::move(w));
}

/// All 2^d d! elements, sorted.
inline std::vector<SignedPerm> all_elements(int d) {
  std::vector<int> p(d);
  for (int i = 0; i < d; ++i) p[i] = i + 1;
  std::vector<SignedPerm> out;
  do {
    for (int mask = 0; mask < (1 << d); ++mask) {
      std::vector<int> w = p;
      for (int i = 0; i < d; ++i)
        if (mask & (1 << i)) w[i] = -w[i];
      out.emplace_back(std::move(w));
    }
  } while (std::next_permutation(p.begin(), p.end()));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Text forms: windows "[2,-1,3]", words "s210" (comma separated when some
// index has two digits), identity word "e".

inline std::string to_string(const SignedPerm& w) {
  std::string s = "[";
  for (std::size_t i = 0; i < w.window().size(); ++i) {
    if (i) s += ',';
    s += std::to_string(w.window()[i]);
  }
  return s + "]";
}

inline SignedPerm parse_signed_perm(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '[' && c != ']') s += c;
  std::vector<int> w;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t next = s.find(',', pos);
    if (next == std::string::npos) next = s.size();
    try {
      w.push_back(std::stoi(s.substr(pos, next - pos)));
    } catch (const std::exception&) {
      throw std::invalid_argument("qkl: bad signed permutation \"" + text + "\"");
    }
    pos = next + 1;
  }
  return SignedPerm(std::move(w));
}

inline std::string to_string(const Word& w) {
  if (w.letters.empty()) return "e";
  bool wide = std::any_of(w.letters.begin(), w.letters.end(), [](int i) { return i > 9; });
  std::string s = "s";
  for (std::size_t k = 0; k < w.letters.size(); ++k) {
    if (wide && k) s += ',';
    s += std::to_string(w.letters[k]);
  }
  return s;
}

inline Word parse_word(const std::string& text) {
  if (text == "e") return {};
  if (text.size() < 2 || text[0] != 's') throw std::invalid_argument("qkl: bad word \"" + text + "\"");
  Word w;
  std::string body = text.substr(1);
  if (body.find(',') != std::string::npos) {
    std::size_t pos = 0;
    while (pos <= body.size()) {
      std::size_t next = body.find(',', pos);
      if (next == std::string::npos) next = body.size();
      w.letters.push_back(std::stoi(body.substr(pos, next - pos)));
      pos = next + 1;
    }
  } else {
    for (char c : body) {
      if (c < '0' || c > '9') throw std::invalid_argument("qkl: bad word \"" + text + "\"");
      w.letters.push_back(c - '0');
    }
  }
  return w;
}

}  // namespace qkl
