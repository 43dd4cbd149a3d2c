#include <gtest/gtest.h>

#include "qkl/emit.hpp"

using namespace qkl;

namespace {

std::shared_ptr<const CosetPoset> worked_block() {
  return std::make_shared<const CosetPoset>(coset_poset(parse_weight(Shape(1, 3), "0,-1,-2")));
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(Emit, TableTextLine) {
  auto T = canonical_basis(worked_block(), PSpec{1});
  auto ls = lines(table_text(T));
  ASSERT_EQ(ls.size(), 12u);
  EXPECT_EQ(ls[0], "C[e] = M[e]");
  EXPECT_NE(std::find(ls.begin(), ls.end(),
                      "C[s210] = M[s210] + (q^-1) M[s21] + (q^-2) M[s2] + (q^-2) M[s1] + (q^-3 - q^-1) M[e]"),
            ls.end());
  auto D = dual_canonical_basis(worked_block(), PSpec{1});
  auto ds = lines(table_text(D));
  EXPECT_NE(std::find(ds.begin(), ds.end(), "C*[s1] = M[s1] + (-q) M[e]"), ds.end());
}

TEST(Emit, TableLatex) {
  auto T = canonical_basis(worked_block(), PSpec{1});
  std::string s = table_latex(T);
  EXPECT_EQ(s.rfind("\\begin{aligned}\n", 0), 0u);
  EXPECT_NE(s.find("C_{f\\cdot s_1} &= M_{f\\cdot s_1}+q^{-1}M_f,\\\\"), std::string::npos);
  EXPECT_NE(s.find("C_{f\\cdot s_{210}} &= M_{f\\cdot s_{210}}+q^{-1}M_{f\\cdot s_{21}}"), std::string::npos);
  EXPECT_NE(s.find("+(q^{-3}-q^{-1})M_f"), std::string::npos);
  EXPECT_NE(s.find("\\end{aligned}"), std::string::npos);
  auto D = dual_canonical_basis(worked_block(), PSpec{1});
  EXPECT_NE(table_latex(D).find("C^*_{f\\cdot s_1} &= M_{f\\cdot s_1}-qM_f"), std::string::npos);
}

TEST(Emit, PosetForms) {
  auto P = worked_block();
  std::string l = poset_latex(*P);
  EXPECT_EQ(l.rfind("{}^fW =\\{e, ", 0), 0u);
  EXPECT_NE(l.find("s_{121012}"), std::string::npos);
  auto t = lines(poset_text(*P));
  EXPECT_EQ(t.front(), "block 0,-1,-2: 12 elements");
  EXPECT_EQ(t.size(), 13u);
  Json j = poset_json(*P, {1, 3, 3, 1});
  EXPECT_EQ(j["nodes"].size(), 12u);
  EXPECT_EQ(j["nodes"][0]["rep"], "e");
  EXPECT_EQ(j["nodes"][0]["edges"][0]["tag"], to_string(EdgeTag::fixed_b));
}

TEST(Emit, JsonRoundTrip) {
  for (int e : {-1, 0, 1, 2})
    for (BasisKind k : {BasisKind::canonical, BasisKind::dual})
      for (const auto& f : antidominant_weights(Shape(1, 2), 3)) {
        auto P = std::make_shared<const CosetPoset>(coset_poset(f));
        KLTable T = kl_table(P, PSpec{e}, k);
        Json j = table_json(T, {1, 2, 3, e});
        KLTable U = table_from_json(Json::parse(j.dump()));
        EXPECT_EQ(U, T);
        EXPECT_EQ(table_json(U, {1, 2, 3, e}), j);
      }
}

TEST(Emit, JsonRejectsBadInput) {
  Json j = table_json(canonical_basis(worked_block(), PSpec{1}), {1, 3, 3, 1});
  Json bad_kind = j;
  bad_kind["kind"] = "other";
  EXPECT_THROW(table_from_json(bad_kind), std::invalid_argument);
  Json bad_word = j;
  bad_word["basis"][0]["rep"] = "s0";  // s0 fixes f, so it is not a coset word
  EXPECT_THROW(table_from_json(bad_word), std::invalid_argument);
  Json short_basis = j;
  short_basis["basis"].erase(0);
  EXPECT_THROW(table_from_json(short_basis), std::invalid_argument);
}

TEST(Emit, Reports) {
  EXPECT_EQ(reports_json({}).dump(), "[]");
  CheckReport ok = CheckReport::pass("basis", {{"r", 1}, {"m", 3}, {"d", 3}});
  EXPECT_EQ(report_text(ok), "PASS basis r=1 m=3 d=3");
  Json jo = report_json(ok);
  EXPECT_EQ(jo["status"], "pass");
  EXPECT_FALSE(jo.contains("witness"));
  CheckReport bad = CheckReport::pass("centralizer", {{"r", 1}});
  bad.probabilistic = true;
  bad.fail("first");
  bad.fail("second");
  EXPECT_EQ(report_text(bad), "FAIL centralizer r=1 (probabilistic): first");
  Json jb = report_json(bad);
  EXPECT_EQ(jb["status"], "fail");
  EXPECT_EQ(jb["witness"], "first");
  EXPECT_EQ(jb["probabilistic"], true);
  EXPECT_EQ(reports_json({ok, bad}).size(), 2u);
}
