#pragma once

// Verification payloads built on the evaluators: the boundary identity, the
// closed forms for s = 1/2, boundary-coefficient fits, boundedness sweeps,
// barrier scaling, and the empirical comparison / tail / Hölder probes.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fplap/model.hpp"
#include "fplap/oplap1d.hpp"
#include "fplap/oplapnd.hpp"
#include "fplap/quad.hpp"

namespace fplap {

enum class Method { Auto, Direct, Decomposed, Radial, Cartesian };

Method parse_method(const std::string& name);
std::string method_name(Method m);

/// Operator value of u at x. Auto picks the direct method for n = 1 (the
/// decomposed one for bumps beyond |x| = 0.99) and the radial reduction for
/// n >= 2.
EvalResult evaluate(const Profile& u, const Point& x, const Params& params, const quad::QuadConfig& cfg,
                    Method method = Method::Auto);

/// Runs fn(0) .. fn(count-1) on up to `jobs` threads.
void parallel_for_index(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

struct IdentityReport {
  double s = 0.0;
  double p = 0.0;
  double residual = 0.0;
  double err_est = 0.0;
  std::vector<double> eps_sequence;
  std::vector<double> h1;
  std::vector<double> h2;
  std::vector<double> h3;
  /// 1/(sp) + h1 + h2 + h3 per epsilon; each should reproduce `residual`.
  std::vector<double> split_totals;
  bool h3_monotone = false;
};

/// 1/(sp) + \int_0^1 ([1-(1-k)^s]^{p-1} - [(1+k)^s-1]^{p-1}) k^{-1-sp} dk
///        - \int_1^inf [(1+k)^s-1]^{p-1} k^{-1-sp} dk,
/// which vanishes for every admissible (s, p), plus its epsilon split.
IdentityReport identity_residual(double s, double p, const quad::QuadConfig& cfg);

/// Exact operator value of (1 - x^2)^{1/2}_+ in one dimension for p in {2,4,6,8}.
double closed_form_half(int p, double x, double c_norm = 1.0);

struct SingularFit {
  double a = 0.0;
  double b = 0.0;
  /// Coefficient of (1-x)^{1-s}; zero unless the three-term basis was used.
  double c = 0.0;
  double residual = 0.0;
  double max_abs_value = 0.0;
  std::vector<double> xs;
  std::vector<double> values;
  std::vector<int> dropped_j;
  bool three_term = false;
};

/// Evaluates the bump at x_j = 1 - 2^{-j}, j = 4..j_max and least-squares fits
/// a + b (1-x)^{-s} (optionally + c (1-x)^{1-s}).
SingularFit singular_fit(const Params& params, const quad::QuadConfig& cfg, int j_max = 14,
                         bool three_term = false, int jobs = 1);

struct SweepRow {
  double x = 0.0;
  double value = 0.0;
  double err_est = 0.0;
  long n_evals = 0;
  std::string status = "ok";
  std::string method;
};

struct SweepResult {
  double max_abs = 0.0;
  std::vector<SweepRow> trace;

  bool all_ok() const;
  bool strictly_increasing() const;
};

/// Operator values of the bump (1 - |x|^2)^s_+ over radii in [0, 1). Rows that
/// fail to converge keep their partial value and status "nonconvergence";
/// max_abs covers the converged rows only.
SweepResult bounded_sweep(const Params& params, const quad::QuadConfig& cfg, const std::vector<double>& grid,
                          int jobs = 1, Method method = Method::Auto);

/// |L psi_rho(x) rho^{sp} / L psi(x/rho) - 1| for psi the unit bump.
double scaling_check(double rho, const Point& x, const Params& params, const quad::QuadConfig& cfg);

/// (delta, u(x_delta) / delta^s) with x_delta at distance delta before the
/// point where the ray leaves the support. Sorted by decreasing delta.
std::vector<std::pair<double, double>> hopf_ratio(const Profile& u, const Point& ray_origin, const Point& ray_dir,
                                                  std::vector<double> deltas, double s);

struct HopfReport {
  double rho = 0.0;
  /// max over the grid of the operator of the unit bump.
  double c0 = 0.0;
  std::vector<double> c0_grid;
  std::vector<double> scaling_errs;
  std::vector<std::pair<double, double>> ratio_trace;
  /// inf of u over D.
  double c_d = 0.0;
  /// min over the barrier ball of \int_D |x-y|^{-n-sp} dy.
  double c_rho = 0.0;
  double eps_max = 0.0;
  double eps_used = 0.0;
  /// Upper bound C0 eps^{p-1}/rho^{sp} - 2^{2-p} C_D^{p-1} C(rho) at eps_used.
  double subsolution_bound = 0.0;
  /// u >= eps psi_rho sampled along the ray.
  bool lower_bound_holds = false;
};

/// Barrier construction for Omega = B_{10 rho}, u = (1 - |x|^2/(10 rho)^2)^s_+,
/// barrier ball B_rho(y) with |y| = 9 rho touching the boundary, and
/// D = {dist(x, boundary) >= 3 rho} = B_{7 rho}.
HopfReport hopf_report(const Params& params, double rho, const quad::QuadConfig& cfg, int jobs = 1);

/// \int_{B_R} |x - y|^{-n-sp} dy for |x| > R.
double ball_kernel_integral(int n, double sp, double dist_to_center, double ball_radius, const quad::QuadConfig& cfg);

struct ComparisonSample {
  Point x;
  double lhs = 0.0;
  double rhs = 0.0;
  double tol = 0.0;
  double u = 0.0;
  double v = 0.0;
  std::string status;
};

struct ComparisonReport {
  std::string verdict;
  bool exterior_ok = false;
  int hypothesis_failures = 0;
  int conclusion_violations = 0;
  int inconclusive = 0;
  std::vector<ComparisonSample> samples;
};

/// Samples L u + c u >= L v + c v and u >= v on the grid. Verdict is
/// "consistent", "violation", "hypothesis not met" or "inconclusive".
ComparisonReport comparison_probe(const Profile& u, const Profile& v, const std::function<double(const Point&)>& c_vals,
                                  double domain_radius, const std::vector<Point>& grid, const Params& params,
                                  const quad::QuadConfig& cfg, int jobs = 1);

struct LspResult {
  bool finite = false;
  double value = 0.0;
  double err_est = 0.0;
  /// n - t (p-1); the integral converges iff positive.
  double exponent = 0.0;
  /// t in (n/p, n/(p-1)).
  bool in_window = false;
};

/// \int_{R^n} |1 + u|^{p-1} / (1 + |x|^{n+sp}) dx for u = PowerCusp(t).
LspResult lsp_tail(double t_exp, const Params& params, const quad::QuadConfig& cfg);

/// max over pairs of |u(x) - u(y)| / |x - y|^nu.
double holder_seminorm(const std::vector<std::pair<Point, double>>& samples, double nu);

}  // namespace fplap
