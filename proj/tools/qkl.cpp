// qkl: quasi-parabolic KL bases of type-B Hecke modules and the
// coideal duality on V^{(x)d}.  Exit codes: 0 pass, 1 verification
// failure, 2 usage error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qkl/centralizer.hpp"
#include "qkl/checks.hpp"
#include "qkl/emit.hpp"
#include "qkl/iquantum.hpp"

namespace {

using namespace qkl;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int r = 1, m = 0, d = 1, e = 1;
  std::string block;
  std::string format = "text";
  std::string kind = "both";
  std::vector<std::string> sets;
  int words = 100;
  int samples = 3;
};

// Golden text of the r=1, m=3, d=3, e=1 block f = (0,-1,-2).
constexpr const char* kGoldenExample =
    R"(C[e] = M[e]
C[s2] = M[s2] + (q^-1) M[e]
C[s1] = M[s1] + (q^-1) M[e]
C[s12] = M[s12] + (q^-1) M[s2] + (q^-1) M[s1] + (q^-2) M[e]
C[s21] = M[s21] + (q^-1) M[s2] + (q^-1) M[s1] + (q^-2) M[e]
C[s210] = M[s210] + (q^-1) M[s21] + (q^-2) M[s2] + (q^-2) M[s1] + (q^-3 - q^-1) M[e]
C[s121] = M[s121] + (q^-1) M[s12] + (q^-1) M[s21] + (q^-2) M[s2] + (q^-2) M[s1] + (q^-3) M[e]
C[s1210] = M[s1210] + (q^-1) M[s210] + (q^-1) M[s121] + (q^-2) M[s12] + (q^-2) M[s21] + (q^-3) M[s2] + (q^-3) M[s1] + (q^-4) M[e]
C[s2101] = M[s2101] + (q^-1) M[s210] + (q^-2) M[s21] + (q^-3) M[s2] + (q^-3 - q^-1) M[s1] + (q^-4 - q^-2) M[e]
C[s21012] = M[s21012] + (q^-1) M[s1210] + (q^-1) M[s2101] + (q^-2) M[s210] + (q^-2) M[s121] + (q^-3 - q^-1) M[s12] + (q^-3) M[s21] + (q^-4) M[s2] + (q^-4 - q^-2) M[s1] + (q^-5) M[e]
C[s12101] = M[s12101] + (q^-1) M[s1210] + (q^-1) M[s2101] + (q^-2) M[s210] + (q^-2) M[s121] + (q^-3) M[s12] + (q^-3) M[s21] + (q^-4) M[s2] + (q^-4) M[s1] + (q^-5) M[e]
C[s121012] = M[s121012] + (q^-1) M[s21012] + (q^-1) M[s12101] + (q^-2) M[s1210] + (q^-2) M[s2101] + (q^-3) M[s210] + (q^-3) M[s121] + (q^-4) M[s12] + (q^-4) M[s21] + (q^-5) M[s2] + (q^-5) M[s1] + (q^-6) M[e]
)";

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

/// Line diff via LCS, printed as a single unified hunk.
std::string unified_diff(const std::string& a, const std::string& b) {
  auto x = split_lines(a), y = split_lines(b);
  std::vector<std::vector<int>> L(x.size() + 1, std::vector<int>(y.size() + 1, 0));
  for (int i = static_cast<int>(x.size()) - 1; i >= 0; --i)
    for (int j = static_cast<int>(y.size()) - 1; j >= 0; --j)
      L[i][j] = x[i] == y[j] ? L[i + 1][j + 1] + 1 : std::max(L[i + 1][j], L[i][j + 1]);
  std::string out = "--- golden\n+++ computed\n@@ -1," + std::to_string(x.size()) + " +1," +
                    std::to_string(y.size()) + " @@\n";
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (i < x.size() && j < y.size() && x[i] == y[j]) {
      out += " " + x[i++] + "\n";
      ++j;
    } else if (j < y.size() && (i == x.size() || L[i][j + 1] >= L[i + 1][j])) {
      out += "+" + y[j++] + "\n";
    } else {
      out += "-" + x[i++] + "\n";
    }
  }
  return out;
}

std::uint64_t session_seed() {
  if (const char* s = std::getenv("QKL_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw UsageError("QKL_SEED must be a nonnegative integer");
    }
  }
  return std::random_device{}();
}

Shape shape_of(const RunConfig& c) {
  if (c.r < 0 || c.m < 0 || 2 * c.r + c.m < 1) throw UsageError("need r, m >= 0 and 2r+m >= 1");
  if (c.d < 1) throw UsageError("need d >= 1");
  return Shape(c.r, c.m);
}

std::vector<Weight> selected_blocks(const RunConfig& c, bool any_weight = false) {
  Shape sh = shape_of(c);
  if (c.block.empty()) return antidominant_weights(sh, c.d);
  Weight f = [&] {
    try {
      return parse_weight(sh, c.block);
    } catch (const std::exception& ex) {
      throw UsageError(ex.what());
    }
  }();
  if (f.d() != c.d) throw UsageError("block has " + std::to_string(f.d()) + " entries, expected d = " + std::to_string(c.d));
  if (!is_antidominant(f)) {
    if (!any_weight) throw UsageError("block " + c.block + " is not anti-dominant");
    f = antidominant_of(f);
  }
  return {f};
}

TableParams table_params(const RunConfig& c) { return {c.r, c.m, c.d, c.e}; }

int cmd_orbit(const RunConfig& c) {
  Json all = Json::array();
  for (const auto& f : selected_blocks(c, true)) {
    CosetPoset P = coset_poset(f);
    if (c.format == "json") {
      Json ws = Json::array();
      for (const auto& n : P.nodes()) ws.push_back(to_string(n.weight));
      all.push_back({{"block", to_string(f)}, {"size", P.size()}, {"weights", ws}});
    } else if (c.format == "latex") {
      std::cout << "\\{";
      for (int k = 0; k < P.size(); ++k) std::cout << (k ? ", " : "") << "(" << to_string(P.node(k).weight) << ")";
      std::cout << "\\}\n";
    } else {
      std::cout << "orbit of " << to_string(f) << ": " << P.size() << " weights\n";
      for (const auto& n : P.nodes()) std::cout << "  " << to_string(n.weight) << "\n";
    }
  }
  if (c.format == "json") std::cout << all.dump(2) << "\n";
  return 0;
}

int cmd_minreps(const RunConfig& c) {
  Json all = Json::array();
  for (const auto& f : selected_blocks(c)) {
    CosetPoset P = coset_poset(f);
    if (c.format == "json")
      all.push_back(poset_json(P, table_params(c)));
    else if (c.format == "latex")
      std::cout << poset_latex(P) << "\n";
    else
      std::cout << poset_text(P);
  }
  if (c.format == "json") std::cout << all.dump(2) << "\n";
  return 0;
}

int cmd_table(const RunConfig& c, std::vector<BasisKind> kinds) {
  Json all = Json::array();
  for (const auto& f : selected_blocks(c)) {
    auto P = std::make_shared<const CosetPoset>(coset_poset(f));
    for (BasisKind k : kinds) {
      KLTable T = kl_table(P, PSpec{c.e}, k);
      if (c.format == "json") {
        all.push_back(table_json(T, table_params(c)));
      } else if (c.format == "latex") {
        std::cout << "% " << to_string(k) << " basis, block " << to_string(f) << "\n" << table_latex(T);
      } else {
        std::cout << "# " << to_string(k) << " basis, block " << to_string(f) << "\n" << table_text(T);
      }
    }
  }
  if (c.format == "json") std::cout << all.dump(2) << "\n";
  return 0;
}

std::vector<BasisKind> kinds_of(const std::string& k) {
  if (k == "canonical") return {BasisKind::canonical};
  if (k == "dual") return {BasisKind::dual};
  return {BasisKind::canonical, BasisKind::dual};
}

int cmd_verify(const RunConfig& c) {
  Shape sh = shape_of(c);
  const std::uint64_t seed = session_seed();
  std::vector<std::string> sets = c.sets;
  if (sets.empty()) sets = {"hecke", "bar", "basis", "inversion", "duality", "kmatrix", "commute", "forms"};
  const PSpec spec{c.e};
  const auto sctx = specialized_context(spec);
  const IParams ip = IParams::make(c.r, c.m, spec);
  std::optional<TensorModule<LaurentQ>> module;
  auto M = [&]() -> const TensorModule<LaurentQ>& {
    if (!module) module.emplace(TensorSpace(sh, c.d), sctx);
    return *module;
  };
  std::vector<CheckReport> reports;
  for (const auto& set : sets) {
    if (set == "hecke") {
      reports.push_back(check_presentation(c.d, generic_context()));
      reports.push_back(check_module_relations(sh, c.d, generic_context()));
    } else if (set == "bar") {
      for (const auto& f : M().block_weights()) reports.push_back(check_bar_block(M().block(f), c.words, seed));
      reports.push_back(verify_ibar_compat(ip, c.d, M()));
    } else if (set == "basis") {
      for (const auto& f : M().block_weights())
        for (BasisKind k : {BasisKind::canonical, BasisKind::dual})
          reports.push_back(check_basis_block(M().block(f).poset_ptr(), spec, k, seed));
    } else if (set == "inversion") {
      for (const auto& f : M().block_weights()) reports.push_back(check_inversion_block(M(), f));
    } else if (set == "duality") {
      reports.push_back(double_centralizer_dims(ip, c.d, seed, c.samples));
    } else if (set == "kmatrix") {
      reports.push_back(c.m == 0 ? verify_k_realizes_H0(ip, c.d, sctx) : verify_k_realizes_H0(ip, c.d, generic_context()));
      reports.push_back(verify_t_matrices<LaurentQP>(ip));
    } else if (set == "commute") {
      reports.push_back(verify_commutation(ip, c.d, sctx));
      reports.push_back(verify_v_decomposition(ip, sctx));
      reports.push_back(verify_q_serre<LaurentQ>(ip, std::min(c.d, 2)));
    } else if (set == "forms") {
      reports.push_back(check_form_symmetry(M()));
      reports.push_back(verify_form_symmetries<LaurentQ>(ip, c.d));
    } else {
      throw UsageError("unknown verify set " + set);
    }
  }
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.passed;
  if (c.format == "json") {
    std::cout << Json{{"seed", seed}, {"reports", reports_json(reports)}}.dump(2) << "\n";
  } else {
    std::cout << "seed " << seed << "\n";
    for (const auto& r : reports) std::cout << report_text(r) << "\n";
    std::cout << (ok ? "all checks passed" : "verification FAILED") << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_example(const RunConfig& c) {
  Shape sh(1, 3);
  Weight f = parse_weight(sh, "0,-1,-2");
  auto P = std::make_shared<const CosetPoset>(coset_poset(f));
  KLTable T = canonical_basis(P, PSpec{1});
  const std::string text = table_text(T);
  if (text != kGoldenExample) {
    std::cerr << "example-paper: computed basis differs from the golden file\n" << unified_diff(kGoldenExample, text);
    return 1;
  }
  if (c.format == "json")
    std::cout << table_json(T, {1, 3, 3, 1}).dump(2) << "\n";
  else if (c.format == "latex")
    std::cout << poset_latex(*P) << "\n" << table_latex(T);
  else
    std::cout << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-parabolic KL bases of type-B Hecke modules and coideal duality"};
  app.require_subcommand(1);
  RunConfig c;
  auto common = [&](CLI::App* s, bool with_block = true) {
    s->add_option("--r", c.r, "number of outer indices on each side")->capture_default_str();
    s->add_option("--m", c.m, "number of middle indices")->capture_default_str();
    s->add_option("--d", c.d, "tensor power")->capture_default_str();
    s->add_option("--e", c.e, "p = q^e")->capture_default_str();
    if (with_block) s->add_option("--block", c.block, "weight such as \"0,-1,-2\" or \"-1/2,-1/2\"");
    s->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"text", "json", "latex"}))
        ->capture_default_str();
  };
  auto* orbit = app.add_subcommand("orbit", "weights in the W_d-orbit of a weight");
  common(orbit);
  auto* minreps = app.add_subcommand("minreps", "minimal coset representatives with edge tags");
  common(minreps);
  auto* canonical = app.add_subcommand("canonical", "canonical basis of a block");
  common(canonical);
  auto* dual = app.add_subcommand("dual", "dual canonical basis of a block");
  common(dual);
  auto* table = app.add_subcommand("kl-table", "canonical and/or dual bases for every block");
  common(table);
  table->add_option("--kind", c.kind, "basis kind")
      ->check(CLI::IsMember({"canonical", "dual", "both"}))
      ->capture_default_str();
  auto* verify = app.add_subcommand("verify", "run verification suites");
  common(verify, false);
  verify->add_option("--set", c.sets, "suites to run (default: all)")
      ->check(CLI::IsMember({"hecke", "bar", "basis", "inversion", "duality", "kmatrix", "commute", "forms"}))
      ->delimiter(',');
  verify->add_option("--words", c.words, "random Hecke words per block for the bar suite")->capture_default_str();
  verify->add_option("--samples", c.samples, "rational points for the duality suite")->capture_default_str();
  auto* example = app.add_subcommand("example-paper", "the r=1, m=3, d=3 worked block against its golden file");
  example->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"text", "json", "latex"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    int code = app.exit(ex);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*orbit) return cmd_orbit(c);
    if (*minreps) return cmd_minreps(c);
    if (*canonical) return cmd_table(c, {BasisKind::canonical});
    if (*dual) return cmd_table(c, {BasisKind::dual});
    if (*table) return cmd_table(c, kinds_of(c.kind));
    if (*verify) return cmd_verify(c);
    if (*example) return cmd_example(c);
  } catch (const UsageError& ex) {
    std::cerr << "qkl: " << ex.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& ex) {
    std::cerr << ex.what() << "\n";
    return 2;
  } catch (const std::out_of_range& ex) {
    std::cerr << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "qkl: verification aborted: " << ex.what() << "\n";
    return 1;
  }
  return 2;
}
