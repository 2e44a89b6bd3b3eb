#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fplap/errors.hpp"
#include "fplap/oplapnd.hpp"

using namespace fplap;

namespace {

const quad::QuadConfig kCfg;

struct GammaCase {
  int n;
  double s;
  double want;
};

// Gamma(1+s) pi^{n/2} |Gamma(-s)| / Gamma(n/2), 30-digit references.
const GammaCase kGamma[] = {
    {2, 0.3, 12.1995019507775470},  {3, 0.3, 24.3990039015550940},  {2, 0.5, 9.86960440108935862},
    {3, 0.5, 19.7392088021787172},  {2, 0.75, 13.9577283992777591}, {3, 0.75, 27.9154567985555181},
};

}  // namespace

TEST(Radial, P2MatchesGammaFormula) {
  for (const GammaCase& c : kGamma) {
    const Params params(c.n, c.s, 2.0);
    for (double r0 : {0.0, 0.3, 0.7}) {
      const EvalResult r = eval_radial_nd(Profile::bump(c.s), r0, params, kCfg);
      EXPECT_NEAR(r.value, c.want, 1e-6 * c.want) << "n=" << c.n << " s=" << c.s << " r0=" << r0;
    }
  }
}

TEST(Radial, TermsSumToValue) {
  const EvalResult r = eval_radial_nd(Profile::bump(0.5), 0.4, Params(2, 0.5, 3.0), kCfg);
  double total = 0.0;
  for (const auto& [name, v] : r.terms) total += v;
  EXPECT_NEAR(total, r.value, r.err_est + 1e-13);
  EXPECT_NO_THROW(r.term("support"));
  EXPECT_NO_THROW(r.term("tail"));
}

TEST(Radial, RejectsBadInput) {
  EXPECT_THROW(eval_radial_nd(Profile::bump(0.5), 0.3, Params(1, 0.5, 2.0), kCfg), DomainError);
  EXPECT_THROW(eval_radial_nd(Profile::bump(0.5), 1.0, Params(2, 0.5, 2.0), kCfg), DomainError);
  EXPECT_THROW(eval_radial_nd(Profile::power_cusp(0.5), 0.3, Params(2, 0.5, 2.0), kCfg), DomainError);
}

TEST(Radial, ReductionGeometry) {
  const RadialReduction r2 = make_radial_reduction(2, 0.4);
  EXPECT_DOUBLE_EQ(r2.omega, 2.0);
  EXPECT_DOUBLE_EQ(r2.singular_y1, 0.4);
  EXPECT_DOUBLE_EQ(r2.singular_rho, 0.0);
  EXPECT_NEAR(make_radial_reduction(3, 0.0).omega, 2.0 * std::numbers::pi, 1e-15);
}

TEST(Cartesian, AgreesWithRadial) {
  quad::QuadConfig loose;
  loose.abs_tol = 1e-8;
  loose.rel_tol = 1e-6;
  const Params params(2, 0.5, 3.0);
  const Profile u = Profile::bump(0.5);
  for (double r : {0.2, 0.8}) {
    const EvalResult rad = eval_radial_nd(u, r, params, kCfg);
    const EvalResult car = eval_cartesian_2d(u, Point{r, 0.0}, params, loose);
    EXPECT_NEAR(car.value, rad.value, 1e-4 * std::fabs(rad.value) + 1e-8) << "r=" << r;
  }
}

TEST(Cartesian, RotationInvariance) {
  quad::QuadConfig loose;
  loose.abs_tol = 1e-8;
  loose.rel_tol = 1e-6;
  const Params params(2, 0.5, 3.0);
  const Profile u = Profile::bump(0.5);
  const double r = 0.5;
  const EvalResult a = eval_cartesian_2d(u, Point{r, 0.0}, params, loose);
  const double th = std::numbers::pi / 3.0;
  const EvalResult b = eval_cartesian_2d(u, Point{r * std::cos(th), r * std::sin(th)}, params, loose);
  EXPECT_LE(std::fabs(a.value - b.value), 2.0 * std::max(a.err_est, b.err_est) + 1e-12);
}

TEST(Cartesian, RejectsWrongDimension) {
  EXPECT_THROW(eval_cartesian_2d(Profile::bump(0.5), Point{0.1, 0.1, 0.1}, Params(3, 0.5, 2.0), kCfg), DomainError);
}

TEST(KernelMoment, AnalyticCases) {
  // n = 2: \int_0^inf (1+y^2)^{-(2+sp)/2} dy = sqrt(pi)/2 Gamma((1+sp)/2)/Gamma(1+sp/2).
  for (double s : {0.25, 0.5, 0.75}) {
    for (double p : {2.0, 4.0}) {
      const double sp = s * p;
      const double want = 0.5 * std::sqrt(std::numbers::pi) * std::tgamma(0.5 * (1.0 + sp)) / std::tgamma(1.0 + 0.5 * sp);
      EXPECT_NEAR(kernel_moment(2, s, p, kCfg), want, 1e-10 * want) << "s=" << s << " p=" << p;
    }
  }
  // n = 3, sp = 1: \int y (1+y^2)^{-2} dy = 1/2.
  EXPECT_NEAR(kernel_moment(3, 0.5, 2.0, kCfg), 0.5, 1e-11);
}

TEST(KernelMoment, BetaFunctionForm) {
  // B((n-1)/2, (1+sp)/2) / 2.
  for (int n : {2, 3, 4}) {
    const double sp = 1.5;
    const double a = 0.5 * (n - 1);
    const double b = 0.5 * (1.0 + sp);
    const double want = 0.5 * std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b);
    EXPECT_NEAR(kernel_moment(n, 0.75, 2.0, kCfg), want, 1e-10 * want) << "n=" << n;
  }
}
