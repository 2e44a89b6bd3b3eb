#include "fplap/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include <boost/math/special_functions/beta.hpp>

#include "fplap/analysis.hpp"
#include "fplap/errors.hpp"

namespace fplap {

namespace {

using Clock = std::chrono::steady_clock;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Outcome {
  bool ok = false;
  std::string expected;
  std::string got;
  std::string tol;
  std::string detail;
};

Point line_point(double x) { return Point{x}; }

Outcome closed_forms() {
  const quad::QuadConfig cfg;
  const Profile bump = Profile::bump(0.5);
  double worst = 0.0;
  for (int p : {2, 4, 6, 8}) {
    const Params params(1, 0.5, p);
    for (double x : {0.0, 0.25, 0.5, 0.75, 0.9}) {
      const double cf = closed_form_half(p, x);
      const double v = eval_direct_1d(bump, x, params, cfg).value;
      worst = std::max(worst, std::fabs(v - cf) / std::fabs(cf));
    }
  }
  return {worst <= 1e-4, "direct = closed form", "max rel err " + num(worst), "1e-4", ""};
}

Outcome p2_constancy() {
  const quad::QuadConfig cfg;
  const Params params(1, 0.5, 2.0);
  const Profile bump = Profile::bump(0.5);
  double worst = 0.0;
  for (int i = 0; i <= 9; ++i) {
    const double v = eval_direct_1d(bump, 0.1 * i, params, cfg).value;
    worst = std::max(worst, std::fabs(v - std::numbers::pi) / std::numbers::pi);
  }
  return {worst <= 1e-5, "pi on x in {0..0.9}", "max rel spread " + num(worst), "1e-5", ""};
}

Outcome identity() {
  const quad::QuadConfig cfg = quad::QuadConfig{}.scaled_tolerances(0.01);
  double worst = 0.0;
  bool monotone = true;
  for (double s : {0.25, 0.5, 0.75}) {
    for (double p : {2.0, 2.5, 3.0, 4.0}) {
      const IdentityReport r = identity_residual(s, p, cfg);
      worst = std::max(worst, std::fabs(r.residual));
      monotone = monotone && r.h3_monotone;
    }
  }
  return {worst <= 1e-6 && monotone, "residual 0, H3 -> -1/(sp) monotonically",
          "max |residual| " + num(worst) + (monotone ? ", H3 monotone" : ", H3 not monotone"), "1e-6", ""};
}

Outcome boundedness_1d(int jobs) {
  const quad::QuadConfig cfg;
  double worst = 0.0;
  double worst3 = 0.0;
  bool agree = true;
  std::string detail;
  for (double s : {0.3, 0.5, 0.7}) {
    for (double p : {2.5, 3.0, 4.0}) {
      const Params params(1, s, p);
      const SingularFit fit = singular_fit(params, cfg, 14, false, jobs);
      const SingularFit fit3 = singular_fit(params, cfg, 14, true, jobs);
      const double rel = std::fabs(fit.b) / fit.max_abs_value;
      const double rel3 = std::fabs(fit3.b) / fit3.max_abs_value;
      worst = std::max(worst, rel);
      worst3 = std::max(worst3, rel3);
      const EvalResult d = eval_direct_1d(Profile::bump(s), 0.99, params, cfg);
      const EvalResult e = eval_decomposed_1d(s, 0.99, params, cfg);
      const bool ok = std::fabs(d.value - e.value) <= d.err_est + e.err_est;
      agree = agree && ok;
      detail += "(s=" + num(s) + ",p=" + num(p) + ") |b|/max|v|=" + num(rel) + " three-term " + num(rel3) +
                (ok ? "" : " methods disagree at 0.99") + "; ";
    }
  }
  return {worst <= 1e-3 && agree, "|b| <= 1e-3 max|v|; methods agree at 0.99",
          "max |b|/max|v| " + num(worst) + " (three-term basis " + num(worst3) + ")" +
              (agree ? ", methods agree" : ", methods disagree"),
          "1e-3", detail};
}

Outcome boundary_sweep(int jobs) {
  const quad::QuadConfig cfg;
  const double pi = std::numbers::pi;
  const double ln2 = std::numbers::ln2;
  const std::vector<double> grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99, 0.999, 0.9999};
  struct Case {
    int p;
    double start;
    double limit;
  };
  const Case cases[] = {{4, 6.0 * ln2 - 3.0, 3.0 * pi},
                        {6, 40.0 - 12.5 * pi, 7.5 * pi},
                        {8, 469.0 / 6.0 - 112.0 * ln2, 17.5 * pi}};
  bool increasing = true;
  double start_gap = 0.0;
  double limit_gap = 0.0;
  double cf_gap = 0.0;
  std::string detail;
  for (const Case& c : cases) {
    const SweepResult sw = bounded_sweep(Params(1, 0.5, c.p), cfg, grid, jobs);
    increasing = increasing && sw.all_ok() && sw.strictly_increasing();
    const double v0 = sw.trace.front().value;
    const double vend = sw.trace.back().value;
    start_gap = std::max(start_gap, std::fabs(v0 - c.start));
    limit_gap = std::max(limit_gap, std::fabs(vend - c.limit));
    cf_gap = std::max(cf_gap, std::fabs(vend - closed_form_half(c.p, 0.9999)));
    detail += "p=" + std::to_string(c.p) + " v(0.9999)=" + num(vend) + " limit " + num(c.limit) + "; ";
  }
  detail += "closed form at 0.9999 matched within " + num(cf_gap);
  return {increasing && start_gap <= 1e-4 && limit_gap <= 1e-2,
          "increasing; start values; limits {3pi, 15pi/2, 35pi/2} at 0.9999",
          std::string(increasing ? "increasing" : "not increasing") + ", start gap " + num(start_gap) +
              ", limit gap " + num(limit_gap),
          "start 1e-4, limit 1e-2", detail};
}

Outcome nd_reduction() {
  const quad::QuadConfig cfg;
  quad::QuadConfig oracle_cfg;
  oracle_cfg.rel_tol = 1e-4;
  oracle_cfg.abs_tol = 1e-8;
  const Params params(2, 0.5, 3.0);
  const Profile bump = Profile::bump(0.5);
  bool agree = true;
  bool invariant = true;
  double worst = 0.0;
  double worst_rot = 0.0;
  for (double r : {0.2, 0.5, 0.8}) {
    const EvalResult radial = eval_radial_nd(bump, r, params, cfg);
    const EvalResult cart = eval_cartesian_2d(bump, Point{r, 0.0}, params, oracle_cfg);
    const double diff = std::fabs(radial.value - cart.value);
    worst = std::max(worst, diff / (radial.err_est + cart.err_est));
    agree = agree && diff <= radial.err_est + cart.err_est;
    for (double theta : {std::numbers::pi / 3.0, 0.75 * std::numbers::pi}) {
      const EvalResult rot =
          eval_cartesian_2d(bump, Point{r * std::cos(theta), r * std::sin(theta)}, params, oracle_cfg);
      const double d = std::fabs(rot.value - cart.value);
      const double lim = 2.0 * std::max(rot.err_est, cart.err_est);
      worst_rot = std::max(worst_rot, d / lim);
      invariant = invariant && d <= lim;
    }
  }
  return {agree && invariant, "radial = cartesian; cartesian rotation invariant",
          "max diff/(summed err) " + num(worst) + ", rotation diff/(2 err) " + num(worst_rot), "1 (normalized)", ""};
}

Outcome kernel_moments() {
  const quad::QuadConfig cfg;
  double worst = 0.0;
  int count = 0;
  for (int n : {2, 3, 4}) {
    for (double s : {0.25, 0.5, 0.75}) {
      for (double p : {2.0, 4.0}) {
        const double sp = s * p;
        const double exact = 0.5 * boost::math::beta(0.5 * (n - 1), 0.5 * (sp + 1.0));
        const double v = kernel_moment(n, s, p, cfg);
        worst = std::max(worst, std::fabs(v - exact) / exact);
        ++count;
      }
    }
  }
  const double a2 = kernel_moment(2, 0.5, 2.0, cfg);
  const double a3 = kernel_moment(3, 0.5, 2.0, cfg);
  const double analytic = std::max(std::fabs(a2 - 1.0), std::fabs(a3 - 0.5) / 0.5);
  worst = std::max(worst, analytic);
  return {worst <= 10.0 * cfg.rel_tol && count == 18, "1/2 B((n-1)/2, (sp+1)/2)",
          "max rel err " + num(worst) + " over " + std::to_string(count) + " triples", num(10.0 * cfg.rel_tol), ""};
}

Outcome barrier(int jobs) {
  const quad::QuadConfig cfg;
  double worst1 = 0.0;
  double worst2 = 0.0;
  const Params p1(1, 0.5, 4.0);
  const Params p2(2, 0.5, 2.0);
  const std::vector<double> rhos = {0.5, 2.0, 5.0};
  std::vector<double> err1(rhos.size()), err2(rhos.size());
  parallel_for_index(2 * rhos.size(), jobs, [&](std::size_t i) {
    const double rho = rhos[i % rhos.size()];
    if (i < rhos.size())
      err1[i] = scaling_check(rho, Point{0.3 * rho}, p1, cfg);
    else
      err2[i - rhos.size()] = scaling_check(rho, Point{0.4 * rho, 0.0}, p2, cfg);
  });
  for (double e : err1) worst1 = std::max(worst1, e);
  for (double e : err2) worst2 = std::max(worst2, e);

  double worst_h = 0.0;
  const Profile bump = Profile::bump(0.5);
  for (double x : {0.3, 0.7}) {
    const double base = eval_direct_1d(bump, x, p1, cfg).value;
    for (double lambda : {0.5, 2.0}) {
      const double v = eval_direct_1d(bump.scaled(lambda), x, p1, cfg).value;
      const double want = std::pow(lambda, p1.p() - 1.0) * base;
      worst_h = std::max(worst_h, std::fabs(v - want) / std::fabs(want));
    }
  }

  double worst_r = 0.0;
  for (double s : {0.3, 0.5, 0.7}) {
    const auto trace = hopf_ratio(Profile::bump(s), Point{0.0}, Point{1.0}, {std::ldexp(1.0, -12)}, s);
    worst_r = std::max(worst_r, std::fabs(trace.back().second - std::pow(2.0, s)));
  }
  const bool ok = worst1 <= 1e-4 && worst2 <= 1e-3 && worst_h <= 1e-6 && worst_r <= 1e-3;
  return {ok, "scaling 1e-4 (n=1), 1e-3 (n=2); homogeneity 1e-6; Hopf ratio 2^s within 1e-3",
          "scaling " + num(worst1) + " / " + num(worst2) + ", homogeneity " + num(worst_h) + ", ratio " + num(worst_r),
          "1e-4, 1e-3, 1e-6, 1e-3", ""};
}

Outcome g_ratio_bound() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  double worst = std::numeric_limits<double>::infinity();
  bool ok = true;
  bool equality = true;
  for (double p : {2.0, 3.0, 5.0}) {
    const double bound = std::pow(2.0, 2.0 - p);
    for (int i = 0; i < 100000; ++i) {
      double t = dist(rng);
      double b = dist(rng);
      if (t == b) continue;
      if (t > b) std::swap(t, b);
      const double r = g_ratio(t, b, p);
      worst = std::min(worst, r - bound);
      if (!(r >= bound - 1e-12)) ok = false;
    }
    for (double b : {1.0, 0.25, 3.0})
      if (g_ratio(-b, b, p) != bound) equality = false;
  }
  return {ok && equality, "g_ratio >= 2^{2-p}; equality at t = -b",
          "min margin " + num(worst) + (equality ? ", equality exact" : ", equality missed"), "1e-12", ""};
}

Outcome lsp_window() {
  const quad::QuadConfig cfg;
  bool ok = true;
  double worst = 0.0;
  std::string detail;
  for (auto [n, p] : {std::pair{1, 2.0}, std::pair{2, 3.0}, std::pair{3, 4.0}}) {
    const Params params(n, 0.5, p);
    const double t = n / (p - 1.0);
    const LspResult below = lsp_tail(t - 0.05, params, cfg);
    const LspResult above = lsp_tail(t + 0.05, params, cfg);
    const LspResult halved = lsp_tail(t - 0.05, params, cfg.scaled_tolerances(0.5));
    const double drift = std::fabs(below.value - halved.value) / std::fabs(below.value);
    worst = std::max(worst, drift);
    ok = ok && below.finite && !above.finite && drift <= 1e-6;
    detail += "(n=" + std::to_string(n) + ",p=" + num(p) + ") value " + num(below.value) + "; ";
  }
  return {ok, "t below threshold finite, above divergent", std::string(ok ? "classified" : "misclassified") +
                                                              ", max drift " + num(worst),
          "1e-6", detail};
}

Outcome comparison(int jobs) {
  const quad::QuadConfig cfg;
  const Params params(1, 0.5, 3.0);
  const Profile bump = Profile::bump(0.5);
  auto grid_for = [](double radius) {
    std::vector<Point> g;
    for (int i = 0; i < 50; ++i) g.push_back(line_point(radius * (2.0 * i + 1.0 - 50.0) / 50.0));
    return g;
  };
  auto c = [](const Point&) { return 1.0; };
  const double eps = 0.1;
  const ComparisonReport r1 = comparison_probe(bump, bump.scaled(0.5), c, 1.0, grid_for(1.0), params, cfg, jobs);
  const ComparisonReport r2 = comparison_probe(bump, bump, c, 1.0, grid_for(1.0), params, cfg, jobs);
  const ComparisonReport r3 = comparison_probe(bump, Profile::scaled_bump(0.5, 0.5).scaled(eps), c, 0.5,
                                               grid_for(0.5), params, cfg, jobs);
  int bad = 0;
  for (const auto* r : {&r1, &r2, &r3}) bad += r->conclusion_violations + r->hypothesis_failures + r->inconclusive;
  const bool ok = r1.verdict == "consistent" && r2.verdict == "consistent" && r3.verdict == "consistent";
  return {ok && bad == 0, "three pairs consistent, 0 violating samples",
          r1.verdict + " / " + r2.verdict + " / " + r3.verdict + ", " + std::to_string(bad) + " flagged samples", "0",
          ""};
}

struct Entry {
  int id;
  const char* name;
  double budget;
  std::function<Outcome(int)> run;
};

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
  const std::vector<Entry> entries = {
      {1, "closed-form reproduction", 10.0, [](int) { return closed_forms(); }},
      {2, "p=2 constancy", 2.0, [](int) { return p2_constancy(); }},
      {3, "identity", 5.0, [](int) { return identity(); }},
      {4, "boundedness n=1", 60.0, boundedness_1d},
      {5, "boundary sweep monotonicity and ranges", 60.0, boundary_sweep},
      {6, "nD reduction vs cartesian oracle", 300.0, [](int) { return nd_reduction(); }},
      {7, "kernel moment", 2.0, [](int) { return kernel_moments(); }},
      {8, "barrier machinery", 30.0, barrier},
      {9, "G ratio bound", 1.0, [](int) { return g_ratio_bound(); }},
      {10, "tail-space window", 5.0, [](int) { return lsp_window(); }},
      {11, "comparison probe", 60.0, comparison},
  };
  std::vector<CriterionResult> out;
  for (const Entry& e : entries) {
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), e.id) == opts.only.end()) continue;
    CriterionResult r;
    r.id = e.id;
    r.name = e.name;
    r.budget_seconds = e.budget;
    const auto t0 = Clock::now();
    try {
      const Outcome o = e.run(opts.jobs);
      r.expected = o.expected;
      r.got = o.got;
      r.tol = o.tol;
      r.detail = o.detail;
      r.pass = o.ok;
    } catch (const std::exception& ex) {
      r.got = std::string("error: ") + ex.what();
      r.pass = false;
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (r.seconds > r.budget_seconds) {
      r.pass = false;
      r.detail += " over time budget";
    }
    out.push_back(r);
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  char head[64];
  std::snprintf(head, sizeof head, "[%s] %2d ", r.pass ? "PASS" : "FAIL", r.id);
  char tail[64];
  std::snprintf(tail, sizeof tail, " (%.2f s / %.0f s)", r.seconds, r.budget_seconds);
  return std::string(head) + r.name + ": got " + r.got + "; expected " + r.expected + "; tol " + r.tol + tail;
}

}  // namespace fplap
