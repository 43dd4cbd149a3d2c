#include <gtest/gtest.h>

#include <random>

#include "qkl/laurent.hpp"

using namespace qkl;

namespace {

LaurentQP random_qp(std::mt19937& rng) {
  std::uniform_int_distribution<int> n(0, 4), ex(-4, 4), c(-5, 5);
  LaurentQP x;
  for (int k = n(rng); k > 0; --k) x += LaurentQP::monomial({ex(rng), ex(rng)}, c(rng));
  return x;
}

// Long division of a one-variable Laurent polynomial by q - q^{-1}, done
// on dense coefficient arrays after clearing denominators.
LaurentQ divide_by_q_minus_qinv(const LaurentQ& num) {
  if (num.is_zero()) return {};
  const int lo = num.min_q_degree(), hi = num.max_q_degree();
  // num = q^{lo} * A(q) with A a polynomial; divisor q - q^{-1} = q^{-1}(q^2 - 1).
  std::vector<long> a(hi - lo + 1);
  for (int k = lo; k <= hi; ++k) a[k - lo] = num.coeff_q(k);
  std::vector<long> quot(a.size(), 0);
  for (int k = static_cast<int>(a.size()) - 1; k >= 2; --k) {  // divide A by q^2 - 1
    long c = a[k];
    quot[k - 2] = c;
    a[k] -= c;
    a[k - 2] += c;
  }
  EXPECT_EQ(a[0], 0);
  EXPECT_EQ(a.size() > 1 ? a[1] : 0, 0);
  LaurentQ out;
  for (std::size_t k = 0; k < quot.size(); ++k) out += LaurentQ::q_power(static_cast<int>(k) + lo + 1, quot[k]);
  return out;
}

}  // namespace

TEST(Laurent, BarExamples) {
  EXPECT_EQ(bar(LaurentQP::q_power(1)), LaurentQP::q_power(-1));
  EXPECT_EQ(bar(LaurentQP(1)), LaurentQP(1));
  LaurentQ x = LaurentQ::q_power(-3) - LaurentQ::q_power(-1);
  EXPECT_EQ(bar(x), LaurentQ::q_power(3) - LaurentQ::q_power(1));
  EXPECT_EQ(bar(LaurentQP::p_power(2, 3)), LaurentQP::p_power(-2, 3));
}

TEST(Laurent, SpecializeExamples) {
  EXPECT_EQ(specialize_p(LaurentQP::p_power(1), PSpec{1}), LaurentQ::q_power(1));
  EXPECT_EQ(specialize_p(LaurentQP::p_power(1) + LaurentQP::p_power(-1), PSpec{2}),
            LaurentQ::q_power(2) + LaurentQ::q_power(-2));
  LaurentQP y = LaurentQP::monomial({-1, 1}) - LaurentQP::monomial({1, -1});
  EXPECT_EQ(specialize_p(y, PSpec{0}), LaurentQ::q_power(-1) - LaurentQ::q_power(1));
}

TEST(Laurent, QuantumIntegerExamples) {
  EXPECT_TRUE(quantum_integer(0).is_zero());
  EXPECT_EQ(quantum_integer(2), LaurentQ::q_power(1) + LaurentQ::q_power(-1));
  EXPECT_EQ(quantum_integer(-3), -(LaurentQ::q_power(2) + LaurentQ(1) + LaurentQ::q_power(-2)));
}

TEST(Laurent, QuantumIntegerMatchesDivision) {
  for (int e = -20; e <= 20; ++e) {
    LaurentQ num = LaurentQ::q_power(e) - LaurentQ::q_power(-e);
    EXPECT_EQ(divide_by_q_minus_qinv(num), quantum_integer(e)) << "e=" << e;
  }
}

TEST(Laurent, RingAxiomsAndBarHomomorphism) {
  std::mt19937 rng(11);
  for (int t = 0; t < 300; ++t) {
    LaurentQP x = random_qp(rng), y = random_qp(rng), z = random_qp(rng);
    EXPECT_EQ(x * y, y * x);
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x * (y + z), x * y + x * z);
    EXPECT_EQ(x + y - y, x);
    EXPECT_EQ(x * LaurentQP(1), x);
    EXPECT_EQ(bar(x * y), bar(x) * bar(y));
    EXPECT_EQ(bar(bar(x)), x);
    for (const auto& t2 : x.terms()) EXPECT_NE(t2.coeff, 0);
  }
}

TEST(Laurent, SpecializationIsRingMapCommutingWithBar) {
  std::mt19937 rng(12);
  for (int t = 0; t < 200; ++t) {
    LaurentQP x = random_qp(rng), y = random_qp(rng);
    for (int e = -2; e <= 2; ++e) {
      PSpec s{e};
      EXPECT_EQ(specialize_p(x * y, s), specialize_p(x, s) * specialize_p(y, s));
      EXPECT_EQ(specialize_p(x + y, s), specialize_p(x, s) + specialize_p(y, s));
      EXPECT_EQ(specialize_p(bar(x), s), bar(specialize_p(x, s)));
    }
  }
}

TEST(Laurent, TextFormat) {
  EXPECT_EQ(to_string(LaurentQ::q_power(-3) - LaurentQ::q_power(-1)), "q^-3 - q^-1");
  EXPECT_EQ(to_string(LaurentQP::monomial({2, 1}) + LaurentQP(1)), "p*q^2 + 1");
  EXPECT_EQ(to_string(LaurentQ()), "0");
  EXPECT_EQ(to_string(LaurentQ(-1)), "-1");
  EXPECT_EQ(to_string(LaurentQ::q_power(1, -2) + LaurentQ(3)), "-2*q + 3");
  EXPECT_EQ(to_latex(LaurentQ::q_power(-4) - LaurentQ::q_power(-2)), "q^{-4}-q^{-2}");
}

TEST(Laurent, ParseRoundTrip) {
  std::mt19937 rng(13);
  for (int t = 0; t < 200; ++t) {
    LaurentQP x = random_qp(rng);
    EXPECT_EQ(parse_laurent<2>(to_string(x)), x) << to_string(x);
    LaurentQ y = specialize_p(x, PSpec{1});
    EXPECT_EQ(parse_laurent<1>(to_string(y)), y);
  }
  EXPECT_THROW(parse_laurent<1>("q^"), std::invalid_argument);
  EXPECT_THROW(parse_laurent<1>("p"), std::invalid_argument);
  EXPECT_THROW(parse_laurent<1>(""), std::invalid_argument);
}

TEST(Laurent, OverflowIsDetected) {
  LaurentQ big(std::numeric_limits<std::int64_t>::max());
  EXPECT_THROW(big + LaurentQ(1), std::overflow_error);
  EXPECT_THROW(big * LaurentQ(2), std::overflow_error);
}
