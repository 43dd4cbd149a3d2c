#pragma once
/**
 * @file weights.hpp
 * The index set I_{r|m|r}, weights f in I^d with the right W_d-action,
 * anti-dominance, stabilizers and the poset of minimal coset
 * representatives of W_f \ W_d.
 *
 * Indices are half-integers when 2r+m is even; they are stored doubled.
 */

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkl/coxeterb.hpp"

namespace qkl {

enum class IndexClass { minus, black, plus };

/// Parameters (r, m) of I_{r|m|r} = I_o^- u I_b u I_o^+.
struct Shape {
  int r = 0;
  int m = 0;

  Shape() = default;
  Shape(int r_, int m_) : r(r_), m(m_) {
    if (r < 0 || m < 0 || 2 * r + m < 1) throw std::invalid_argument("qkl: need r, m >= 0 and 2r+m >= 1");
  }

  int size() const { return 2 * r + m; }
  int max_twice() const { return size() - 1; }

  bool contains_twice(int t) const { return std::abs(t) <= max_twice() && (t - max_twice()) % 2 == 0; }

  IndexClass classify_twice(int t) const {
    if (!contains_twice(t)) throw std::out_of_range("qkl: index outside I_{r|m|r}");
    if (t >= m + 1) return IndexClass::plus;
    if (t <= -(m + 1)) return IndexClass::minus;
    return IndexClass::black;
  }

  /// Ascending list of doubled indices.
  std::vector<int> alphabet_twice() const {
    std::vector<int> a;
    for (int t = -max_twice(); t <= max_twice(); t += 2) a.push_back(t);
    return a;
  }

  /// Position of a doubled index in the ascending alphabet.
  int ordinal(int t) const { return (t + max_twice()) / 2; }

  bool operator==(const Shape&) const = default;
};

/// Element of I_{r|m|r}, stored as twice its value.
class HalfIndex {
 public:
  HalfIndex() = default;
  static HalfIndex from_twice(int t) { return HalfIndex(t); }
  int twice() const { return t_; }
  auto operator<=>(const HalfIndex&) const = default;

 private:
  explicit HalfIndex(int t) : t_(t) {}
  int t_ = 0;
};

/// "3/2", "-1/2", "0", "-2".
inline std::string half_to_string(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

inline int parse_half(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  try {
    std::size_t slash = s.find('/');
    if (slash == std::string::npos) return 2 * std::stoi(s);
    if (s.substr(slash + 1) != "2") throw std::invalid_argument("denominator");
    int num = std::stoi(s.substr(0, slash));
    if (num % 2 == 0) throw std::invalid_argument("not reduced");
    return num;
  } catch (const std::exception&) {
    throw std::invalid_argument("qkl: bad index \"" + text + "\"");
  }
}

/// A weight f = (f(1), ..., f(d)).
class Weight {
 public:
  Weight() = default;
  Weight(Shape shape, std::vector<int> twice) : shape_(shape), t_(std::move(twice)) {
    for (int t : t_)
      if (!shape_.contains_twice(t))
        throw std::invalid_argument("qkl: weight entry " + half_to_string(t) + " outside I_{r|m|r}");
  }

  const Shape& shape() const { return shape_; }
  int d() const { return static_cast<int>(t_.size()); }
  /// Doubled entry at 1-based position i.
  int at(int i) const { return t_[i - 1]; }
  const std::vector<int>& twice() const { return t_; }
  IndexClass class_at(int i) const { return shape_.classify_twice(at(i)); }

  Weight negated() const {
    Weight w = *this;
    for (int& t : w.t_) t = -t;
    return w;
  }

  bool operator==(const Weight& o) const { return t_ == o.t_ && shape_ == o.shape_; }
  bool operator<(const Weight& o) const { return t_ < o.t_; }

 private:
  Shape shape_;
  std::vector<int> t_;
};

inline std::string to_string(const Weight& f) {
  std::string s;
  for (int i = 1; i <= f.d(); ++i) {
    if (i > 1) s += ',';
    s += half_to_string(f.at(i));
  }
  return s;
}

inline Weight parse_weight(Shape shape, const std::string& text) {
  std::vector<int> t;
  std::size_t pos = 0;
  if (text.find_first_not_of(" ") == std::string::npos) throw std::invalid_argument("qkl: empty weight");
  while (pos <= text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    t.push_back(parse_half(text.substr(pos, next - pos)));
    pos = next + 1;
  }
  return Weight(shape, std::move(t));
}

/// f * s_i.
inline Weight act_weight(const Weight& f, int i) {
  if (i < 0 || i >= f.d()) throw std::out_of_range("qkl: generator index out of range");
  std::vector<int> t = f.twice();
  if (i == 0) {
    if (f.class_at(1) != IndexClass::black) t[0] = -t[0];
  } else {
    std::swap(t[i - 1], t[i]);
  }
  return Weight(f.shape(), std::move(t));
}

/// f^sigma(i) = f(sigma(i)), with f(-j) = -f(j) for f(j) in I_o and
/// f(-j) = f(j) for f(j) in I_b.
inline Weight act_weight(const Weight& f, const SignedPerm& sigma) {
  if (sigma.rank() != f.d()) throw std::invalid_argument("qkl: rank mismatch");
  std::vector<int> t(f.d());
  for (int i = 1; i <= f.d(); ++i) {
    int j = sigma(i);
    int v = f.at(std::abs(j));
    if (j < 0 && f.shape().classify_twice(v) != IndexClass::black) v = -v;
    t[i - 1] = v;
  }
  return Weight(f.shape(), std::move(t));
}

inline bool is_antidominant(const Weight& f) {
  if (f.d() == 0) return true;
  if (f.at(1) > f.shape().m - 1) return false;
  for (int i = 1; i < f.d(); ++i)
    if (f.at(i) < f.at(i + 1)) return false;
  return true;
}

/// The anti-dominant weight in the orbit of g.
inline Weight antidominant_of(const Weight& g) {
  std::vector<int> t = g.twice();
  for (int& v : t)
    if (g.shape().classify_twice(v) == IndexClass::plus) v = -v;
  std::sort(t.begin(), t.end(), std::greater<>());
  return Weight(g.shape(), std::move(t));
}

struct StabilizerData {
  int d_black = 0;
  std::vector<SignedPerm> t_generators;
  std::vector<int> adjacent_transpositions;  // J(f)
};

inline StabilizerData stabilizer_gens(const Weight& f) {
  if (!is_antidominant(f)) throw std::invalid_argument("qkl: stabilizer_gens needs an anti-dominant weight");
  StabilizerData s;
  for (int i = 1; i <= f.d(); ++i)
    if (f.class_at(i) == IndexClass::black) ++s.d_black;
  for (int i = 1; i <= s.d_black; ++i) s.t_generators.push_back(t_element(f.d(), i));
  for (int i = 1; i < f.d(); ++i)
    if (f.at(i) == f.at(i + 1)) s.adjacent_transpositions.push_back(i);
  return s;
}

// ---------------------------------------------------------------------------
// Minimal coset representatives

enum class EdgeTag { down, up_in, fixed_a, fixed_b };

inline const char* to_string(EdgeTag t) {
  switch (t) {
    case EdgeTag::down: return "DOWN";
    case EdgeTag::up_in: return "UP_IN";
    case EdgeTag::fixed_a: return "FIXED_A";
    case EdgeTag::fixed_b: return "FIXED_B";
  }
  return "?";
}

struct Edge {
  EdgeTag tag;
  int target;  // node index for DOWN / UP_IN, -1 otherwise
};

struct CosetNode {
  Weight weight;      // g = f . sigma
  SignedPerm rep;     // minimal representative sigma
  int length = 0;
  Word word;          // lexicographically smallest reduced word of rep
  std::vector<Edge> edges;  // indexed by generator 0..d-1
};

class CosetPoset {
 public:
  const Weight& block_weight() const { return f_; }
  int d() const { return f_.d(); }
  int size() const { return static_cast<int>(nodes_.size()); }
  const CosetNode& node(int k) const { return nodes_.at(k); }
  const std::vector<CosetNode>& nodes() const { return nodes_; }

  std::optional<int> find(const Weight& g) const {
    auto it = index_.find(g.twice());
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  int index_of(const Weight& g) const {
    auto k = find(g);
    if (!k) throw std::invalid_argument("qkl: weight " + to_string(g) + " is not in the orbit of " + to_string(f_));
    return *k;
  }

 private:
  friend CosetPoset coset_poset(const Weight& f);
  Weight f_;
  std::vector<CosetNode> nodes_;
  std::map<std::vector<int>, int> index_;
};

namespace detail {

inline EdgeTag weight_edge_tag(const Weight& g, int i) {
  if (i == 0) {
    switch (g.class_at(1)) {
      case IndexClass::plus: return EdgeTag::down;
      case IndexClass::minus: return EdgeTag::up_in;
      case IndexClass::black: return EdgeTag::fixed_b;
    }
  }
  if (g.at(i) < g.at(i + 1)) return EdgeTag::down;
  if (g.at(i) > g.at(i + 1)) return EdgeTag::up_in;
  return EdgeTag::fixed_a;
}

}  // namespace detail

/// Breadth-first search from (f, e), one length level at a time.  The
/// weight-level criteria decide each edge; group-level facts are checked.
inline CosetPoset coset_poset(const Weight& f) {
  if (!is_antidominant(f)) throw std::invalid_argument("qkl: coset_poset needs an anti-dominant weight");
  const int d = f.d();
  CosetPoset P;
  P.f_ = f;
  struct Pending {
    Weight g;
    SignedPerm rep;
  };
  std::vector<Pending> level{{f, SignedPerm::identity(d)}};
  int len = 0;
  while (!level.empty()) {
    std::sort(level.begin(), level.end(),
              [](const Pending& a, const Pending& b) { return a.rep.window() < b.rep.window(); });
    for (auto& pnd : level) {
      if (length(pnd.rep) != len) throw std::logic_error("qkl: representative length mismatch");
      P.index_[pnd.g.twice()] = static_cast<int>(P.nodes_.size());
      P.nodes_.push_back({pnd.g, pnd.rep, len, lex_min_reduced_word(pnd.rep), {}});
    }
    std::map<std::vector<int>, SignedPerm> next;
    for (const auto& pnd : level) {
      for (int i = 0; i < d; ++i) {
        if (detail::weight_edge_tag(pnd.g, i) != EdgeTag::up_in) continue;
        Weight h = act_weight(pnd.g, i);
        SignedPerm s = pnd.rep.times_generator(i);
        auto [it, fresh] = next.emplace(h.twice(), s);
        if (!fresh && it->second != s)
          throw std::logic_error("qkl: two representatives reach weight " + to_string(h));
      }
    }
    level.clear();
    for (auto& [t, s] : next) level.push_back({Weight(f.shape(), t), s});
    ++len;
  }
  for (auto& node : P.nodes_) {
    node.edges.resize(d);
    for (int i = 0; i < d; ++i) {
      EdgeTag tag = detail::weight_edge_tag(node.weight, i);
      int target = -1;
      if (tag == EdgeTag::down || tag == EdgeTag::up_in) {
        target = P.index_of(act_weight(node.weight, i));
        int expect = node.length + (tag == EdgeTag::up_in ? 1 : -1);
        if (P.nodes_[target].length != expect || P.nodes_[target].rep != node.rep.times_generator(i))
          throw std::logic_error("qkl: coset edge inconsistent with group arithmetic");
      }
      node.edges[i] = {tag, target};
    }
  }
  return P;
}

struct EdgeClass {
  EdgeTag tag;
  int target = -1;                      // DOWN / UP_IN
  int fixed_generator = -1;             // FIXED_A: s' = s_k
  std::optional<SignedPerm> fixed_element;  // FIXED_A: s_k, FIXED_B: t_{sigma(1)}
};

/// Case of generator i at a node, with the stabilizer element s' or t
/// satisfying sigma s_i = s' sigma (resp. t sigma) for the FIXED cases.
inline EdgeClass classify_edge(const CosetPoset& P, int k, int i) {
  const CosetNode& n = P.node(k);
  if (i < 0 || i >= P.d()) throw std::out_of_range("qkl: generator index out of range");
  EdgeClass c{n.edges[i].tag, n.edges[i].target, -1, std::nullopt};
  const SignedPerm& s = n.rep;
  const int d = P.d();
  if (c.tag == EdgeTag::fixed_a) {
    int a = std::abs(s(i)), b = std::abs(s(i + 1));
    int lo = std::min(a, b);
    if (std::max(a, b) != lo + 1) throw std::logic_error("qkl: FIXED_A with non-adjacent |sigma(i)|, |sigma(i+1)|");
    SignedPerm sp = SignedPerm::generator(d, lo);
    if (s.times_generator(i) != sp * s) throw std::logic_error("qkl: FIXED_A conjugation fails");
    c.fixed_generator = lo;
    c.fixed_element = sp;
  } else if (c.tag == EdgeTag::fixed_b) {
    if (s(1) <= 0) throw std::logic_error("qkl: FIXED_B with sigma(1) < 0");
    SignedPerm t = t_element(d, s(1));
    if (s.times_generator(0) != t * s) throw std::logic_error("qkl: FIXED_B conjugation fails");
    c.fixed_element = t;
  }
  return c;
}

/// (f, sigma) with f anti-dominant and f . sigma = g, sigma minimal.
inline std::pair<Weight, SignedPerm> antidominant_rep(const Weight& g) {
  Weight f = antidominant_of(g);
  CosetPoset P = coset_poset(f);
  return {f, P.node(P.index_of(g)).rep};
}

/// Every weight of I_{r|m|r}^d in lexicographic order.
inline std::vector<Weight> all_weights(Shape shape, int d) {
  std::vector<int> alpha = shape.alphabet_twice();
  std::vector<Weight> out;
  std::vector<int> idx(d, 0);
  while (true) {
    std::vector<int> t(d);
    for (int k = 0; k < d; ++k) t[k] = alpha[idx[k]];
    out.emplace_back(shape, std::move(t));
    int k = d - 1;
    while (k >= 0 && ++idx[k] == static_cast<int>(alpha.size())) idx[k--] = 0;
    if (k < 0) break;
  }
  return out;
}

/// Anti-dominant weights, i.e. one per block of V^{(x)d}.
inline std::vector<Weight> antidominant_weights(Shape shape, int d) {
  std::vector<Weight> out;
  for (auto& w : all_weights(shape, d))
    if (is_antidominant(w)) out.push_back(w);
  return out;
}

}  // namespace qkl
