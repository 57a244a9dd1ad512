#include <gtest/gtest.h>

#include <lfm/picard.hpp>

#include <chrono>
#include <random>

using namespace lfm;

namespace {

OrbitSignature sig(int N, std::vector<int> d = {}, std::vector<int> u = {}, std::optional<int> ms = {}) {
  OrbitSignature s;
  s.N = N;
  s.d_list = std::move(d);
  s.u_list = std::move(u);
  s.m_s = ms;
  return s;
}

IntPoly P(std::initializer_list<long> ascending) { return IntPoly(ascending); }

}  // namespace

TEST(PicY, CharPoly) {
  auto y = picY_matrix();
  EXPECT_EQ(char_poly_det(y), P({1, 0, 1}) * P({-1, -1, 0, 1}));
  EXPECT_EQ(y.M[0][0], 2);
  auto d = dynamical_degree(char_poly_det(y));
  EXPECT_NEAR(d.value, 1.32472, 1e-5);
}

TEST(PicZ, Dimensions) {
  auto p = picZ_matrix(sig(11));
  EXPECT_EQ(p.size(), 16);
  EXPECT_EQ(p.labels.size(), 16u);
  EXPECT_EQ(p.labels[5], "F11");
  EXPECT_EQ(p.labels.back(), "F1");
}

TEST(PicZ, TopBlockMatchesDisplay) {
  auto p = picZ_matrix(sig(11));
  std::vector<std::vector<long>> top{{2, 0, 1, 0, 1, 0},     {-1, 0, -1, 0, 0, 0}, {0, 1, -1, 0, 0, 0},
                                     {-1, 0, -1, 0, -1, 0}, {-1, 0, -1, 1, -1, 0}, {-1, 0, 0, 0, -1, 0}};
  std::vector<long> last{1, -1, 0, 0, 0, -1};
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) EXPECT_EQ(p.M[i][j], top[i][j]) << i << "," << j;
    EXPECT_EQ(p.M[i][15], last[i]);
  }
}

TEST(PicZ, MatrixOrders) {
  EXPECT_EQ(growth_class(picZ_matrix(sig(3))).order, 8);
  EXPECT_EQ(growth_class(picZ_matrix(sig(4))).order, 12);
  EXPECT_EQ(growth_class(picZ_matrix(sig(5, {2}, {3}))).order, 8);
  EXPECT_EQ(growth_class(picZ_matrix(sig(6, {2}, {4}))).order, 12);
  auto M = picZ_matrix(sig(3)).M;
  EXPECT_EQ(matrix_power(M, 8), identity_matrix(8));
  EXPECT_NE(matrix_power(M, 4), identity_matrix(8));
}

TEST(PicZ, InconsistentRejected) {
  EXPECT_THROW(picZ_matrix(sig(1)), InconsistentSignature);
  EXPECT_THROW(picZ_matrix(sig(5, {3, 2})), InconsistentSignature);
  EXPECT_THROW(picZ_matrix(sig(5, {2}, {2})), InconsistentSignature);
  EXPECT_THROW(picZ_matrix(sig(6, {}, {}, 4)), InconsistentSignature);
  EXPECT_THROW(picZ_matrix(sig(12, {4}, {8}, 3)), InconsistentSignature);
}

TEST(Bracket, Sec7) {
  // t^11 (t^3 - t - 1) + t^3 + t^2 - 1
  IntPoly want = IntPoly::monomial(11) * P({-1, -1, 0, 1}) + P({-1, 0, 1, 1});
  EXPECT_EQ(char_poly_bracket(sig(11)), want);
}

TEST(Bracket, PeriodEight) { EXPECT_EQ(char_poly_bracket(sig(3)), P({-1, 0, 1, 0, -1, 0, 1})); }

TEST(Bracket, Lyness) {
  // t^10 (t^3 - t - 1) + t^5 (t - 1)(t^2 + t + 1) + t^3 + t^2 - 1
  IntPoly want = IntPoly::monomial(10) * P({-1, -1, 0, 1}) + IntPoly::monomial(5) * P({-1, 1}) * P({1, 1, 1}) +
                 P({-1, 0, 1, 1});
  EXPECT_EQ(char_poly_bracket(sig(10, {}, {}, 3)), want);
}

TEST(Bracket, GeneralFormWithoutSpecialFiber) {
  // t^N (t^3 - t - 1) + t^3 + t^2 - 1 whenever m = 0 and m_s is infinite
  for (int N = 2; N <= 20; ++N)
    EXPECT_EQ(char_poly_bracket(sig(N)), IntPoly::monomial(N) * P({-1, -1, 0, 1}) + P({-1, 0, 1, 1}));
}

TEST(Identity, Fixtures) {
  EXPECT_NE(identity_check(sig(11)), 0);
  EXPECT_NE(identity_check(sig(10, {}, {}, 3)), 0);
  auto s = sig(5, {2}, {3});
  EXPECT_NE(identity_check(s), 0);
  // (t^2+1)(t^{d1}+1)(t^{u1}(t^3-t-1)+t^3+t^2-1)
  IntPoly full = P({1, 0, 1}) * P({1, 0, 1}) * (IntPoly::monomial(3) * P({-1, -1, 0, 1}) + P({-1, 0, 1, 1}));
  IntPoly det = char_poly_det(picZ_matrix(s));
  EXPECT_TRUE(det == full || det == -full);
}

TEST(Identity, RandomSignatures) {
  std::mt19937_64 rng(2024);
  auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 60; ++i) {
    auto s = random_signature(rng);
    EXPECT_NE(identity_check(s), 0) << "N=" << s.N;
    EXPECT_EQ(char_poly_bracket(s).eval(mpz_class(1)), 0) << "N=" << s.N;
  }
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 60.0);
}

TEST(DynamicalDegree, Sec7) {
  auto d = dynamical_degree(char_poly_bracket(sig(11)));
  EXPECT_NEAR(d.value, 1.28064, 1e-5);
  EXPECT_EQ(d.factor, P({1, 0, 0, -1, -1, -1, 0, 0, 1}));
  ASSERT_TRUE(d.root);
  EXPECT_LT(d.root->width(), 1e-10);
}

TEST(DynamicalDegree, FifthRoot) {
  EXPECT_NEAR(dynamical_degree(char_poly_bracket(sig(19))).value, 1.3211018, 1e-6);
}

TEST(DynamicalDegree, AllCyclotomic) {
  auto d = dynamical_degree(char_poly_bracket(sig(3)));
  EXPECT_FALSE(d.root);
  EXPECT_EQ(d.value, 1);
  EXPECT_EQ(d.factor.degree(), 0);
}

TEST(Growth, Lyness) {
  auto g = growth_class(picZ_matrix(sig(10, {}, {}, 3)));
  EXPECT_EQ(g.tag, GrowthTag::Quadratic);
  EXPECT_EQ(g.jordan_at_one, 3);
}

TEST(Growth, Sec7) {
  auto g = growth_class(picZ_matrix(sig(11)));
  EXPECT_EQ(g.tag, GrowthTag::Exponential);
  EXPECT_NEAR(g.delta, 1.28064, 1e-5);
}

TEST(Growth, PeriodicDiagonalizable) {
  for (auto s : {sig(3), sig(4), sig(5, {2}, {3}), sig(6, {2}, {4})}) {
    auto p = picZ_matrix(s);
    auto g = growth_class(p);
    EXPECT_EQ(g.tag, GrowthTag::Periodic);
    EXPECT_EQ(g.jordan_max, 1);
    EXPECT_EQ(split_cyclotomic(char_poly_det(p)).rest.degree(), 0);
  }
}

TEST(Growth, UnipotentBlocks) {
  PicAction p;
  p.labels = {"H", "A"};
  p.M = {{1, 1}, {0, 1}};
  EXPECT_EQ(growth_class(p).tag, GrowthTag::Linear);
}

TEST(PredictedDegrees, FirstIsTwo) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(predicted_degrees(picZ_matrix(random_signature(rng)), 1)[0], 2);
  EXPECT_EQ(predicted_degrees(picY_matrix(), 1)[0], 2);
}

TEST(PredictedDegrees, LynessSequence) {
  auto d = predicted_degrees(picZ_matrix(sig(10, {}, {}, 3)), 10);
  std::vector<long> want{2, 3, 3, 4, 6, 8, 10, 12, 15, 19};
  for (int i = 0; i < 10; ++i) EXPECT_EQ(d[i], want[i]);
}

TEST(PredictedDegrees, Sec7Recurrence) {
  int n = 40;
  auto d = predicted_degrees(picZ_matrix(sig(11)), n);
  // the ±i eigenvalues of the (t^2+1) factor show up in the H coordinate, so the
  // bracket alone is not enough
  IntPoly chi = P({1, 0, 1}) * char_poly_bracket(sig(11));
  int k = chi.degree();
  // sum_i c_i deg(f^{m+i}) = 0
  for (int m = 0; m + k < n; ++m) {
    mpz_class s = 0;
    for (int i = 0; i <= k; ++i) s += chi.coeffs()[i] * d[m + i];
    EXPECT_EQ(s, 0) << m;
  }
}

TEST(PredictedDegrees, Submultiplicative) {
  for (auto s : {sig(11), sig(10, {}, {}, 3), sig(19)}) {
    auto d = predicted_degrees(picZ_matrix(s), 24);
    for (int a = 1; a <= 12; ++a)
      for (int b = 1; a + b <= 24; ++b) EXPECT_LE(d[a + b - 1], d[a - 1] * d[b - 1]);
  }
}

TEST(Salem, Verdicts) {
  EXPECT_FALSE(salem_verdict(P({1, -2, 1, 0, 3, -4, 1})).salem);
  EXPECT_FALSE(salem_verdict(P({1, -3, 1})).salem);
  auto v = salem_verdict(P({1, 0, 0, -1, -1, -1, 0, 0, 1}));
  EXPECT_TRUE(v.salem);
  EXPECT_NEAR(v.lambda, 1.28064, 1e-5);
  // Lehmer's polynomial
  EXPECT_TRUE(salem_verdict(P({1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1})).salem);
  // Pisot: x^3 - x - 1 has no conjugate on the circle
  EXPECT_FALSE(salem_verdict(P({-1, -1, 0, 1})).salem);
}
