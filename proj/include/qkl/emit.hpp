#pragma once
/**
 * @file emit.hpp
 * Text, JSON and LaTeX forms of coset posets, KL tables and check reports.
 * JSON goes through nlohmann::json, whose object keys are sorted, so output
 * is stable across runs.
 */

#include <algorithm>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qkl/kl.hpp"
#include "qkl/report.hpp"

namespace qkl {

using Json = nlohmann::json;

struct TableParams {
  int r = 0, m = 0, d = 0, e = 0;
};

namespace detail {

/// Node indices ordered by decreasing length, then increasing index.
inline std::vector<int> by_decreasing_length(const CosetPoset& P) {
  std::vector<int> order(P.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return P.node(a).length > P.node(b).length; });
  return order;
}

inline std::string latex_word(const Word& w) {
  if (w.letters.empty()) return "";
  std::string s;
  for (std::size_t k = 0; k < w.letters.size(); ++k) {
    if (k && w.letters.size() > 1 && std::any_of(w.letters.begin(), w.letters.end(), [](int i) { return i > 9; }))
      s += ',';
    s += std::to_string(w.letters[k]);
  }
  return w.letters.size() == 1 ? "s_" + s : "s_{" + s + "}";
}

inline std::string latex_label(const char* letter, const Word& w) {
  if (w.letters.empty()) return std::string(letter) + "_f";
  return std::string(letter) + "_{f\\cdot " + latex_word(w) + "}";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Coset posets

inline std::string poset_text(const CosetPoset& P) {
  std::ostringstream os;
  os << "block " << to_string(P.block_weight()) << ": " << P.size() << " elements\n";
  for (int k = 0; k < P.size(); ++k) {
    const CosetNode& n = P.node(k);
    os << k << "  " << to_string(n.weight) << "  " << to_string(n.word) << "  " << to_string(n.rep) << "  len "
       << n.length << "  ";
    for (int i = 0; i < P.d(); ++i) {
      if (i) os << ' ';
      os << 's' << i << ':' << to_string(n.edges[i].tag);
      if (n.edges[i].target >= 0) os << "->" << n.edges[i].target;
    }
    os << '\n';
  }
  return os.str();
}

inline Json poset_json(const CosetPoset& P, const TableParams& tp) {
  Json nodes = Json::array();
  for (int k = 0; k < P.size(); ++k) {
    const CosetNode& n = P.node(k);
    Json edges = Json::array();
    for (int i = 0; i < P.d(); ++i) {
      Json e = {{"generator", i}, {"tag", to_string(n.edges[i].tag)}};
      if (n.edges[i].target >= 0) e["target"] = n.edges[i].target;
      edges.push_back(e);
    }
    nodes.push_back({{"index", k},
                     {"weight", to_string(n.weight)},
                     {"rep", to_string(n.word)},
                     {"window", to_string(n.rep)},
                     {"length", n.length},
                     {"edges", edges}});
  }
  return {{"params", {{"r", tp.r}, {"m", tp.m}, {"d", tp.d}}},
          {"block", to_string(P.block_weight())},
          {"nodes", nodes}};
}

inline std::string poset_latex(const CosetPoset& P) {
  std::string s = "{}^fW =\\{";
  for (int k = 0; k < P.size(); ++k) {
    if (k) s += ", ";
    s += P.node(k).word.letters.empty() ? "e" : detail::latex_word(P.node(k).word);
  }
  return s + "\\}";
}

// ---------------------------------------------------------------------------
// KL tables

inline std::string table_text(const KLTable& T) {
  const CosetPoset& P = T.poset();
  const char* head = T.kind() == BasisKind::canonical ? "C" : "C*";
  auto order = detail::by_decreasing_length(P);
  std::ostringstream os;
  for (int s = 0; s < T.size(); ++s) {
    os << head << '[' << to_string(P.node(s).word) << "] =";
    bool first = true;
    for (int w : order) {
      const LaurentQ& c = T.coefficient(s, w);
      if (c.is_zero()) continue;
      os << (first ? " " : " + ");
      first = false;
      if (!c.is_one()) os << '(' << to_string(c) << ") ";
      os << "M[" << to_string(P.node(w).word) << ']';
    }
    os << '\n';
  }
  return os.str();
}

inline std::string table_latex(const KLTable& T) {
  const CosetPoset& P = T.poset();
  const char* head = T.kind() == BasisKind::canonical ? "C" : "C^*";
  auto order = detail::by_decreasing_length(P);
  std::string out = "\\begin{aligned}\n";
  for (int s = 0; s < T.size(); ++s) {
    out += detail::latex_label(head, P.node(s).word) + " &= ";
    bool first = true;
    for (int w : order) {
      const LaurentQ& c = T.coefficient(s, w);
      if (c.is_zero()) continue;
      std::string coef;
      if (c.is_one()) {
        coef = first ? "" : "+";
      } else if (c == LaurentQ(-1)) {
        coef = "-";
      } else {
        std::string body = to_latex(c);
        if (c.size() > 1) body = "(" + body + ")";
        coef = (first || body[0] == '-') ? body : "+" + body;
      }
      out += coef + detail::latex_label("M", P.node(w).word);
      first = false;
    }
    out += s + 1 < T.size() ? ",\\\\\n" : ".\n";
  }
  return out + "\\end{aligned}\n";
}

inline Json table_json(const KLTable& T, const TableParams& tp) {
  const CosetPoset& P = T.poset();
  Json basis = Json::array();
  for (int s = 0; s < T.size(); ++s) {
    Json coeffs = Json::object();
    for (int w = 0; w < T.size(); ++w)
      if (!T.coefficient(s, w).is_zero()) coeffs[to_string(P.node(w).word)] = to_string(T.coefficient(s, w));
    basis.push_back(
        {{"rep", to_string(P.node(s).word)}, {"weight", to_string(P.node(s).weight)}, {"coeffs", coeffs}});
  }
  return {{"params", {{"r", tp.r}, {"m", tp.m}, {"d", tp.d}, {"e", tp.e}}},
          {"block", to_string(P.block_weight())},
          {"kind", to_string(T.kind())},
          {"basis", basis}};
}

/// Rebuilds a table from table_json output; the poset is recomputed from
/// the block weight and nodes are matched by their printed words.
inline KLTable table_from_json(const Json& j) {
  const auto& pj = j.at("params");
  Shape shape(pj.at("r").get<int>(), pj.at("m").get<int>());
  Weight f = parse_weight(shape, j.at("block").get<std::string>());
  auto P = std::make_shared<const CosetPoset>(coset_poset(f));
  const std::string kind = j.at("kind").get<std::string>();
  if (kind != "canonical" && kind != "dual") throw std::invalid_argument("qkl: unknown basis kind " + kind);
  auto index = [&](const std::string& word) {
    auto g = P->find(act_weight(f, evaluate(parse_word(word), f.d())));
    if (!g || to_string(P->node(*g).word) != word)
      throw std::invalid_argument("qkl: " + word + " is not a representative word of the block");
    return *g;
  };
  std::vector<std::vector<LaurentQ>> cols(P->size(), std::vector<LaurentQ>(P->size()));
  const auto& basis = j.at("basis");
  if (static_cast<int>(basis.size()) != P->size()) throw std::invalid_argument("qkl: basis size does not match block");
  for (const auto& el : basis) {
    int s = index(el.at("rep").get<std::string>());
    for (const auto& [word, c] : el.at("coeffs").items()) cols[s][index(word)] = parse_laurent<1>(c.get<std::string>());
  }
  return KLTable(P, kind == "canonical" ? BasisKind::canonical : BasisKind::dual, PSpec{pj.at("e").get<int>()},
                 std::move(cols));
}

// ---------------------------------------------------------------------------
// Reports

inline Json report_json(const CheckReport& r) {
  Json params = Json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  Json j = {{"check", r.check}, {"params", params}, {"status", r.passed ? "pass" : "fail"}};
  if (!r.witness.empty()) j["witness"] = r.witness;
  if (r.probabilistic) j["probabilistic"] = true;
  return j;
}

inline Json reports_json(const std::vector<CheckReport>& rs) {
  Json a = Json::array();
  for (const auto& r : rs) a.push_back(report_json(r));
  return a;
}

inline std::string report_text(const CheckReport& r) {
  std::string s = (r.passed ? "PASS " : "FAIL ") + r.check;
  for (const auto& [k, v] : r.params) s += " " + k + "=" + std::to_string(v);
  if (r.probabilistic) s += " (probabilistic)";
  if (!r.witness.empty()) s += ": " + r.witness;
  return s;
}

}  // namespace qkl
