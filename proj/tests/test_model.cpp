#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fplap/errors.hpp"
#include "fplap/model.hpp"

using namespace fplap;

namespace {

double rel(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

}  // namespace

TEST(Params, AcceptsValidRanges) {
  const Params p(3, 0.25, 4.0, 2.5);
  EXPECT_EQ(p.n(), 3);
  EXPECT_DOUBLE_EQ(p.s(), 0.25);
  EXPECT_DOUBLE_EQ(p.p(), 4.0);
  EXPECT_DOUBLE_EQ(p.c_norm(), 2.5);
  EXPECT_DOUBLE_EQ(p.sp(), 1.0);
  EXPECT_EQ(p.with_n(1).n(), 1);
  EXPECT_DOUBLE_EQ(p.with_c_norm(1.0).c_norm(), 1.0);
}

TEST(Params, RejectsInvalid) {
  EXPECT_THROW(Params(0, 0.5, 2.0), DomainError);
  EXPECT_THROW(Params(1, 0.0, 2.0), DomainError);
  EXPECT_THROW(Params(1, 1.0, 2.0), DomainError);
  EXPECT_THROW(Params(1, 0.5, 1.9), DomainError);
  EXPECT_THROW(Params(1, 0.5, NAN), DomainError);
  EXPECT_THROW(Params(1, 0.5, 2.0, 0.0), DomainError);
  EXPECT_THROW(Params(1, 0.5, 2.0, -1.0), DomainError);
}

TEST(GPower, Examples) {
  EXPECT_EQ(g_power(0.0, 3.0), 0.0);
  EXPECT_DOUBLE_EQ(g_power(-2.0, 3.0), -4.0);
  EXPECT_DOUBLE_EQ(g_power(3.0, 2.0), 3.0);
  EXPECT_DOUBLE_EQ(g_power(2.0, 4.5), std::pow(2.0, 3.5));
  EXPECT_EQ(make_gvalue(-2.0, 3.0).value, -4.0);
}

TEST(GPower, PropertyOddMonotoneHomogeneous) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> t_dist(-50.0, 50.0);
  std::uniform_real_distribution<double> p_dist(2.0, 6.0);
  std::uniform_real_distribution<double> l_dist(0.01, 10.0);
  for (int i = 0; i < 100000; ++i) {
    const double t = t_dist(rng);
    const double u = t_dist(rng);
    const double p = p_dist(rng);
    const double lambda = l_dist(rng);
    ASSERT_EQ(g_power(-t, p), -g_power(t, p));
    if (t < u) ASSERT_LT(g_power(t, p), g_power(u, p));
    const double lhs = g_power(lambda * t, p);
    const double rhs = std::pow(lambda, p - 1.0) * g_power(t, p);
    ASSERT_LE(std::fabs(lhs - rhs), 1e-12 * std::fabs(rhs) + 1e-300);
  }
}

TEST(GRatio, LowerBoundOverRandomPairs) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  for (double p : {2.0, 2.5, 3.0, 5.0}) {
    const double bound = std::pow(2.0, 2.0 - p);
    for (int i = 0; i < 100000; ++i) {
      double t = dist(rng);
      double b = dist(rng);
      if (t == b) continue;
      if (t > b) std::swap(t, b);
      ASSERT_GE(g_ratio(t, b, p), bound - 1e-12) << "t=" << t << " b=" << b << " p=" << p;
    }
  }
}

TEST(GRatio, EqualityAtAntipodalPair) {
  for (double p : {2.0, 3.0, 5.0}) EXPECT_EQ(g_ratio(-1.0, 1.0, p), std::pow(2.0, 2.0 - p));
  EXPECT_EQ(g_ratio(0.3, 0.9, 2.0), 1.0);
  EXPECT_EQ(g_ratio(0.0, 1.0, 3.5), 1.0);
  // (0.9^3 - 0.3^3) / 0.6^3
  EXPECT_NEAR(g_ratio(0.3, 0.9, 4.0), 3.25, 1e-14);
}

TEST(GRatio, RejectsBadArguments) {
  EXPECT_THROW(g_ratio(1.0, 1.0, 3.0), DomainError);
  EXPECT_THROW(g_ratio(2.0, 1.0, 3.0), DomainError);
  EXPECT_THROW(g_ratio(0.0, 1.0, 1.5), DomainError);
}

TEST(BinomialExcess, MatchesHighPrecisionValues) {
  // 50-digit reference values of (1+m)^s + (1-m)^s - 2.
  EXPECT_LT(rel(binomial_even_excess(0.5, 1e-3), -2.5000007812504102606e-7), 1e-14);
  EXPECT_LT(rel(binomial_even_excess(0.3, 0.1), -0.0021080793816415864382), 1e-13);
  EXPECT_LT(rel(binomial_even_excess(0.75, 0.5), -0.049993437083872218698), 1e-13);
  EXPECT_LT(rel(binomial_even_excess(0.5, 1e-8), -2.5000000000000001827e-17), 1e-14);
}

TEST(BinomialExcess, EvenInM) {
  for (double m : {1e-6, 0.05, 0.2, 0.9}) EXPECT_EQ(binomial_even_excess(0.4, m), binomial_even_excess(0.4, -m));
}

TEST(GPair, MatchesDirectSumWithoutCancellation) {
  for (double p : {2.0, 3.0, 4.5}) {
    EXPECT_NEAR(g_pair(0.7, -0.2, 0.5, p), g_power(0.7, p) + g_power(-0.2, p), 1e-15);
    EXPECT_NEAR(g_pair(0.7, 0.2, 0.9, p), g_power(0.7, p) + g_power(0.2, p), 1e-15);
    EXPECT_NEAR(g_pair(-0.7, 0.2, -0.5, p), g_power(-0.7, p) + g_power(0.2, p), 1e-15);
  }
}

TEST(Profile, BumpValues) {
  const Profile b = Profile::bump(0.5);
  const double x0[1] = {0.0};
  const double x1[2] = {0.6, 0.0};
  const double out[1] = {1.2};
  EXPECT_DOUBLE_EQ(b.value(x0), 1.0);
  EXPECT_DOUBLE_EQ(b.value(x1), 0.8);
  EXPECT_EQ(b.value(out), 0.0);
  EXPECT_EQ(b.kind(), ProfileKind::Bump);
  EXPECT_TRUE(b.radial());
  EXPECT_TRUE(b.has_compact_support());
}

TEST(Profile, ScaledBumpMatchesRescaledBump) {
  const Profile b = Profile::bump(0.3);
  const Profile sb = Profile::scaled_bump(0.3, 2.0);
  EXPECT_EQ(sb.kind(), ProfileKind::ScaledBump);
  for (double r : {0.0, 0.5, 1.0, 1.9}) {
    const double y[1] = {r};
    const double ys[1] = {r / 2.0};
    EXPECT_NEAR(sb.value(y), b.value(ys), 1e-15);
  }
  EXPECT_DOUBLE_EQ(sb.support_radius(), 2.0);
}

TEST(Profile, PowerCuspLivesOnUpperHalfBall) {
  const Profile c = Profile::power_cusp(0.5);
  const double up[2] = {0.0, 0.25};
  const double down[2] = {0.0, -0.25};
  const double far[2] = {0.0, 2.0};
  EXPECT_DOUBLE_EQ(c.value(up), 2.0);
  EXPECT_EQ(c.value(down), 0.0);
  EXPECT_EQ(c.value(far), 0.0);
  EXPECT_THROW(c.drop_1d(0.5, 0.1, 1), DomainError);
}

TEST(Profile, ScaledMultipliesValues) {
  const Profile b = Profile::bump(0.5).scaled(0.5);
  const double x[1] = {0.6};
  EXPECT_DOUBLE_EQ(b.value(x), 0.4);
}

TEST(Profile, CustomRadialProfile) {
  const Profile c = Profile::custom_radial([](double r) { return 1.0 - r * r; }, 1.0);
  EXPECT_DOUBLE_EQ(c.radial_value(0.5), 0.75);
  EXPECT_NEAR(c.drop(0.25, 0.25), -0.25, 1e-15);
  EXPECT_THROW(Profile::custom(nullptr, 1.0), DomainError);
}

TEST(Profile, RejectsBadParameters) {
  EXPECT_THROW(Profile::bump(0.0), DomainError);
  EXPECT_THROW(Profile::bump(1.0), DomainError);
  EXPECT_THROW(Profile::scaled_bump(0.5, 0.0), DomainError);
  EXPECT_THROW(Profile::power_cusp(0.0), DomainError);
}

TEST(Profile, DropIsAccurateUnderCancellation) {
  // 50-digit references for u(x) - u(x + z) with u = (1 - x^2)^s_+.
  EXPECT_LT(rel(Profile::bump(0.5).drop_1d(0.3, 1e-7, 1), 3.144855086146453123e-8), 1e-13);
  EXPECT_LT(rel(Profile::bump(0.3).drop_1d(0.9, 1e-6, -1), -1.7268895357288649716e-6), 1e-13);
  EXPECT_LT(rel(Profile::bump(0.75).drop_1d(0.999, 0.499, -1), -0.79647357953036281854), 1e-13);
}

TEST(Profile, PairedSumIsAccurateUnderCancellation) {
  // 50-digit references for G(u(x)-u(x+z)) + G(u(x)-u(x-z)).
  struct Case {
    double x, z, s, p, want;
  };
  const Case cases[] = {{0.3, 1e-4, 0.5, 3.0, 7.245501824492471938e-13},
                        {0.5, 1e-6, 0.5, 2.0, 1.5396007178403704333e-12},
                        {0.7, 1e-3, 0.3, 4.5, 9.2674903572044526592e-14},
                        {0.0, 0.2, 0.5, 3.0, 0.00081641154691504306749}};
  for (const Case& c : cases) {
    const double got = Profile::bump(c.s).paired_g(c.x * c.x, 2.0 * c.x * c.z, c.z * c.z, c.p);
    EXPECT_LT(rel(got, c.want), 1e-10) << "x=" << c.x << " z=" << c.z;
  }
}

TEST(Profile, PairedSumEqualsTwoSidedSumAwayFromCancellation) {
  const Profile b = Profile::bump(0.5);
  const double x = 0.3;
  const double z = 0.1;
  const double direct = g_power(b.drop_1d(x, z, 1), 3.0) + g_power(b.drop_1d(x, z, -1), 3.0);
  EXPECT_NEAR(b.paired_g(x * x, 2.0 * x * z, z * z, 3.0), direct, 1e-15);
}

TEST(SymmetryReduce, Examples) {
  EXPECT_EQ(symmetry_reduce(-0.7), 0.7);
  EXPECT_EQ(symmetry_reduce(0.0), 0.0);
  EXPECT_EQ(symmetry_reduce(0.3), 0.3);
  EXPECT_THROW(symmetry_reduce(1.0), DomainError);
}
