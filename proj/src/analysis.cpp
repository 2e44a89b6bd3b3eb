#include "fplap/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include <Eigen/Dense>
#include <boost/math/special_functions/beta.hpp>

#include "fplap/errors.hpp"

namespace fplap {

namespace {

double sphere_measure(int dim) {
  const double h = 0.5 * (dim + 1);
  return 2.0 * std::pow(std::numbers::pi, h) / std::tgamma(h);
}

Point axis_point(int n, double r) {
  Point x(static_cast<std::size_t>(n), 0.0);
  x[0] = r;
  return x;
}

bool decomposable(const Profile& u, const Params& params) {
  return u.kind() == ProfileKind::Bump && u.amplitude() == 1.0 && u.exponent() == params.s();
}

}  // namespace

Method parse_method(const std::string& name) {
  if (name == "auto") return Method::Auto;
  if (name == "direct") return Method::Direct;
  if (name == "decomposed") return Method::Decomposed;
  if (name == "radial") return Method::Radial;
  if (name == "cartesian") return Method::Cartesian;
  throw DomainError("unknown method '" + name + "'");
}

std::string method_name(Method m) {
  switch (m) {
    case Method::Auto: return "auto";
    case Method::Direct: return "direct";
    case Method::Decomposed: return "decomposed";
    case Method::Radial: return "radial";
    case Method::Cartesian: return "cartesian";
  }
  return "auto";
}

EvalResult evaluate(const Profile& u, const Point& x, const Params& params, const quad::QuadConfig& cfg,
                    Method method) {
  if (static_cast<int>(x.size()) != params.n()) throw DomainError("point dimension does not match n");
  if (params.n() == 1) {
    const double ax = std::fabs(x[0]);
    if (method == Method::Auto) method = decomposable(u, params) && ax > 0.99 ? Method::Decomposed : Method::Direct;
    switch (method) {
      case Method::Direct:
        return eval_direct_1d(u, x[0], params, cfg);
      case Method::Decomposed:
        if (!decomposable(u, params)) throw DomainError("decomposed method needs the bump with exponent s");
        return eval_decomposed_1d(params.s(), ax, params, cfg);
      default:
        throw DomainError("method " + method_name(method) + " needs n >= 2");
    }
  }
  switch (method) {
    case Method::Auto:
    case Method::Radial:
      if (!u.radial()) throw DomainError("radial reduction needs a radial profile");
      return eval_radial_nd(u, norm(x), params, cfg);
    case Method::Cartesian:
      if (params.n() != 2) throw DomainError("cartesian oracle needs n = 2");
      return eval_cartesian_2d(u, x, params, cfg);
    default:
      throw DomainError("method " + method_name(method) + " needs n = 1");
  }
}

void parallel_for_index(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

// ---------------------------------------------------------------------------

IdentityReport identity_residual(double s, double p, const quad::QuadConfig& cfg) {
  const Params params(1, s, p);
  const double sp = s * p;
  // [1-(1-k)^s]^{p-1} - [(1+k)^s-1]^{p-1}, with the bracket difference formed
  // from the even binomial excess.
  auto near = [s, p, sp](double k) {
    const double a = -std::expm1(s * std::log1p(-k));
    const double b = std::expm1(s * std::log1p(k));
    const double diff = -binomial_even_excess(s, k);
    return g_pair(a, -b, diff, p) * std::pow(k, -1.0 - sp);
  };
  auto far = [s, p, sp](double k) { return std::pow(std::expm1(s * std::log1p(k)), p - 1.0) * std::pow(k, -1.0 - sp); };

  quad::Endpoints at_zero;
  at_zero.left_alpha = paired_endpoint_alpha(params);
  quad::Endpoints tail;
  tail.tail_decay = 1.0 + s;

  const quad::QuadResult r1 = quad::require(quad::integrate(near, 0.0, 1.0, cfg, at_zero), "identity (0,1)");
  const quad::QuadResult r2 = quad::require(quad::integrate(far, 1.0, INFINITY, cfg, tail), "identity (1,inf)");

  IdentityReport rep;
  rep.s = s;
  rep.p = p;
  rep.residual = 1.0 / sp + r1.value - r2.value;
  rep.err_est = r1.err_est + r2.err_est;
  rep.eps_sequence = {1e-1, 1e-2, 1e-3, 1e-4};
  for (double eps : rep.eps_sequence) {
    const double h1 = quad::require(quad::integrate(near, 0.0, eps, cfg, at_zero), "identity H1").value;
    const double h2 = -quad::require(quad::integrate(far, eps, eps / (1.0 - eps), cfg), "identity H2").value;
    const double h3 = -1.0 / sp + std::pow(-std::expm1(s * std::log1p(-eps)), p) / (sp * std::pow(eps, sp));
    rep.h1.push_back(h1);
    rep.h2.push_back(h2);
    rep.h3.push_back(h3);
    rep.split_totals.push_back(1.0 / sp + h1 + h2 + h3);
  }
  rep.h3_monotone = true;
  for (std::size_t i = 1; i < rep.h3.size(); ++i) {
    if (!(std::fabs(rep.h3[i] + 1.0 / sp) < std::fabs(rep.h3[i - 1] + 1.0 / sp))) rep.h3_monotone = false;
  }
  return rep;
}

double closed_form_half(int p, double x, double c_norm) {
  if (!(std::fabs(x) < 1.0)) throw DomainError("closed form needs |x| < 1");
  const double pi = std::numbers::pi;
  const double root = std::sqrt((1.0 - x) * (1.0 + x));
  const double x2 = x * x;
  double v = 0.0;
  switch (p) {
    case 2:
      v = pi;
      break;
    case 4:
      v = 3.0 * root * (std::log(4.0 * (1.0 - x) * (1.0 + x)) - 1.0) + 6.0 * x * std::asin(x);
      break;
    case 6:
      v = 20.0 * root * (x * std::log((1.0 - x) / (1.0 + x)) + 2.0) + 2.5 * pi * (8.0 * x2 - 5.0);
      break;
    case 8:
      v = 7.0 * root * (4.0 * (5.0 * x2 - 2.0) * std::log(4.0 * (1.0 - x) * (1.0 + x)) + (67.0 - x2) / 6.0) +
          35.0 * x * (8.0 * x2 - 7.0) * std::asin(x);
      break;
    default:
      throw DomainError("closed form available only for p in {2,4,6,8}");
  }
  return c_norm * v;
}

SingularFit singular_fit(const Params& params, const quad::QuadConfig& cfg, int j_max, bool three_term, int jobs) {
  if (j_max < 6) throw DomainError("singular_fit needs j_max >= 6");
  const double s = params.s();
  const int count = j_max - 3;
  std::vector<double> values(count);
  std::vector<std::exception_ptr> errors(count);
  const Profile bump = Profile::bump(s);
  parallel_for_index(static_cast<std::size_t>(count), jobs, [&](std::size_t i) {
    const double x = 1.0 - std::ldexp(1.0, -(4 + static_cast<int>(i)));
    try {
      values[i] = params.n() == 1 ? eval_decomposed_1d(s, x, params, cfg).value
                                  : eval_radial_nd(bump, x, params, cfg).value;
    } catch (const NonConvergence&) {
      errors[i] = std::current_exception();
    } catch (const EvaluationError&) {
      errors[i] = std::current_exception();
    }
  });

  SingularFit fit;
  fit.three_term = three_term;
  std::vector<double> deltas;
  for (int i = 0; i < count; ++i) {
    const int j = 4 + i;
    if (errors[i]) {
      fit.dropped_j.push_back(j);
      continue;
    }
    deltas.push_back(std::ldexp(1.0, -j));
    fit.xs.push_back(1.0 - deltas.back());
    fit.values.push_back(values[i]);
  }
  const std::size_t cols = three_term ? 3 : 2;
  if (fit.xs.size() < cols + 1) {
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  const auto m = static_cast<Eigen::Index>(fit.xs.size());
  Eigen::MatrixXd design(m, static_cast<Eigen::Index>(cols));
  Eigen::VectorXd rhs(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double d = deltas[static_cast<std::size_t>(i)];
    design(i, 0) = 1.0;
    design(i, 1) = std::pow(d, -s);
    if (three_term) design(i, 2) = std::pow(d, 1.0 - s);
    rhs(i) = fit.values[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(rhs);
  fit.a = coef(0);
  fit.b = coef(1);
  if (three_term) fit.c = coef(2);
  fit.residual = (design * coef - rhs).cwiseAbs().maxCoeff();
  fit.max_abs_value = rhs.cwiseAbs().maxCoeff();
  return fit;
}

bool SweepResult::all_ok() const {
  return std::all_of(trace.begin(), trace.end(), [](const SweepRow& r) { return r.status == "ok"; });
}

bool SweepResult::strictly_increasing() const {
  for (std::size_t i = 1; i < trace.size(); ++i)
    if (!(trace[i].value > trace[i - 1].value)) return false;
  return true;
}

SweepResult bounded_sweep(const Params& params, const quad::QuadConfig& cfg, const std::vector<double>& grid, int jobs,
                          Method method) {
  for (double x : grid)
    if (!(x >= 0.0 && x < 1.0)) throw DomainError("sweep grid must lie in [0, 1)");
  const Profile bump = Profile::bump(params.s());
  SweepResult out;
  out.trace.resize(grid.size());
  parallel_for_index(grid.size(), jobs, [&](std::size_t i) {
    SweepRow& row = out.trace[i];
    row.x = grid[i];
    Method m = method;
    if (m == Method::Auto)
      m = params.n() == 1 ? (grid[i] > 0.99 ? Method::Decomposed : Method::Direct) : Method::Radial;
    row.method = method_name(m);
    try {
      const EvalResult r = evaluate(bump, axis_point(params.n(), grid[i]), params, cfg, m);
      row.value = r.value;
      row.err_est = r.err_est;
      row.n_evals = r.n_evals;
    } catch (const NonConvergence& e) {
      row.value = e.partial_value();
      row.err_est = e.err_est();
      row.status = "nonconvergence";
    }
  });
  for (const auto& row : out.trace)
    if (row.status == "ok") out.max_abs = std::max(out.max_abs, std::fabs(row.value));
  return out;
}

double scaling_check(double rho, const Point& x, const Params& params, const quad::QuadConfig& cfg) {
  if (!(rho > 0.0)) throw DomainError("rho must be positive");
  if (!(norm(x) < rho)) throw DomainError("x outside the barrier ball");
  const Profile unit = Profile::bump(params.s());
  Point xs = x;
  for (double& c : xs) c /= rho;
  const EvalResult den = evaluate(unit, xs, params, cfg);
  if (std::fabs(den.value) < 10.0 * den.err_est) throw DivisionByNearZero("scaling denominator below 10 err_est");
  const EvalResult num = rho == 1.0 ? den : evaluate(Profile::scaled_bump(params.s(), rho), x, params, cfg);
  return std::fabs(num.value * std::pow(rho, params.sp()) / den.value - 1.0);
}

std::vector<std::pair<double, double>> hopf_ratio(const Profile& u, const Point& ray_origin, const Point& ray_dir,
                                                  std::vector<double> deltas, double s) {
  if (ray_origin.size() != ray_dir.size()) throw DomainError("ray origin and direction dimensions differ");
  if (!u.radial() || !u.has_compact_support()) throw DomainError("ray must meet the support boundary");
  const double len = norm(ray_dir);
  if (!(len > 0.0)) throw DomainError("ray direction must be nonzero");
  Point d = ray_dir;
  for (double& c : d) c /= len;
  double od = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) od += ray_origin[i] * d[i];
  const double radius = u.support_radius();
  const double disc = od * od - norm2(ray_origin) + radius * radius;
  if (!(disc > 0.0)) throw DomainError("ray must meet the support boundary");
  const double exit = -od + std::sqrt(disc);

  std::sort(deltas.begin(), deltas.end(), std::greater<>());
  std::vector<std::pair<double, double>> out;
  for (double delta : deltas) {
    if (!(delta > 0.0 && delta <= exit)) throw DomainError("delta outside (0, exit distance]");
    Point xd = ray_origin;
    for (std::size_t i = 0; i < d.size(); ++i) xd[i] += (exit - delta) * d[i];
    out.emplace_back(delta, u.value(xd) / std::pow(delta, s));
  }
  return out;
}

double ball_kernel_integral(int n, double sp, double d, double radius, const quad::QuadConfig& cfg) {
  if (!(d > radius && radius > 0.0)) throw DomainError("point must lie outside the ball");
  if (n == 1) {
    auto f = [d, sp](double y) { return std::pow(d - y, -1.0 - sp); };
    return quad::require(quad::integrate(f, -radius, radius, cfg), "ball kernel").value;
  }
  // Shell of radius r about x meets the ball in a cap of half-angle theta.
  const double k = n - 2.0;
  const double omega = sphere_measure(n - 2);
  const double half_beta = 0.5 * boost::math::beta(0.5 * (k + 1.0), 0.5);
  auto f = [=](double r) {
    const double c = std::clamp((d * d + r * r - radius * radius) / (2.0 * d * r), -1.0, 1.0);
    const double sin2 = (1.0 - c) * (1.0 + c);
    const double cap = half_beta * boost::math::ibeta(0.5 * (k + 1.0), 0.5, sin2);
    return omega * cap * std::pow(r, -1.0 - sp);
  };
  return quad::require(quad::integrate(f, d - radius, d + radius, cfg), "ball kernel").value;
}

HopfReport hopf_report(const Params& params, double rho, const quad::QuadConfig& cfg, int jobs) {
  if (!(rho > 0.0)) throw DomainError("rho must be positive");
  const int n = params.n();
  const double s = params.s();
  const double p = params.p();
  const double sp = params.sp();
  HopfReport rep;
  rep.rho = rho;

  const std::vector<double> grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99, 0.999};
  const SweepResult sweep = bounded_sweep(params, cfg, grid, jobs);
  if (!sweep.all_ok()) throw NonConvergence("barrier sweep did not converge", sweep.max_abs, 0.0);
  rep.c0 = -std::numeric_limits<double>::infinity();
  for (const auto& row : sweep.trace) {
    rep.c0_grid.push_back(row.value);
    rep.c0 = std::max(rep.c0, row.value);
  }

  for (double f : {0.1, 0.5, 0.9}) rep.scaling_errs.push_back(scaling_check(rho, axis_point(n, f * rho), params, cfg));

  const Profile u = Profile::scaled_bump(s, 10.0 * rho);
  const Point center = axis_point(n, 9.0 * rho);
  const Point dir = axis_point(n, 1.0);
  std::vector<double> deltas;
  for (int j = 1; j <= 12; ++j) deltas.push_back(rho * std::ldexp(1.0, -j));
  rep.ratio_trace = hopf_ratio(u, center, dir, deltas, s);

  const double inner_radius = 7.0 * rho;
  rep.c_d = u.radial_value(inner_radius);
  rep.c_rho = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 8; ++k) {
    const double dist = 8.0 * rho + 2.0 * rho * k / 8.0;
    rep.c_rho = std::min(rep.c_rho, ball_kernel_integral(n, sp, dist, inner_radius, cfg));
  }

  const double push = params.c_norm() * std::pow(2.0, 2.0 - p) * std::pow(rep.c_d, p - 1.0) * rep.c_rho;
  rep.eps_max = rep.c_d;
  if (rep.c0 > 0.0) rep.eps_max = std::min(rep.c_d, std::pow(push * std::pow(rho, sp) / rep.c0, 1.0 / (p - 1.0)));
  rep.eps_used = 0.5 * rep.eps_max;
  rep.subsolution_bound = rep.c0 * std::pow(rep.eps_used, p - 1.0) / std::pow(rho, sp) - push;

  const Profile barrier = Profile::scaled_bump(s, rho);
  rep.lower_bound_holds = true;
  for (const auto& [delta, ratio] : rep.ratio_trace) {
    Point local = axis_point(n, rho - delta);
    Point global = axis_point(n, 10.0 * rho - delta);
    if (!(u.value(global) >= rep.eps_used * barrier.value(local))) rep.lower_bound_holds = false;
  }
  return rep;
}

ComparisonReport comparison_probe(const Profile& u, const Profile& v, const std::function<double(const Point&)>& c_vals,
                                  double domain_radius, const std::vector<Point>& grid, const Params& params,
                                  const quad::QuadConfig& cfg, int jobs) {
  if (!(domain_radius > 0.0)) throw DomainError("domain radius must be positive");
  const int n = params.n();
  ComparisonReport rep;

  // u >= v outside the domain, sampled along both axis directions.
  rep.exterior_ok = true;
  const double reach = 1.5 * std::max({domain_radius, std::isfinite(u.support_radius()) ? u.support_radius() : 0.0,
                                       std::isfinite(v.support_radius()) ? v.support_radius() : 0.0});
  for (int i = 0; i <= 64; ++i) {
    const double r = domain_radius + (reach - domain_radius) * i / 64.0;
    for (double sign : {1.0, -1.0}) {
      const Point y = axis_point(n, sign * r);
      if (!(u.value(y) >= v.value(y))) rep.exterior_ok = false;
    }
  }

  rep.samples.resize(grid.size());
  parallel_for_index(grid.size(), jobs, [&](std::size_t i) {
    ComparisonSample& smp = rep.samples[i];
    smp.x = grid[i];
    if (!(norm(grid[i]) < domain_radius)) throw DomainError("grid point outside the domain");
    smp.u = u.value(grid[i]);
    smp.v = v.value(grid[i]);
    const double c = c_vals(grid[i]);
    if (!(c >= 0.0)) throw DomainError("c must be nonnegative");
    try {
      const EvalResult lu = evaluate(u, grid[i], params, cfg);
      const EvalResult lv = evaluate(v, grid[i], params, cfg);
      smp.lhs = lu.value + c * smp.u;
      smp.rhs = lv.value + c * smp.v;
      smp.tol = lu.err_est + lv.err_est;
      if (!(smp.lhs >= smp.rhs - smp.tol))
        smp.status = "hypothesis_fail";
      else if (!(smp.u >= smp.v))
        smp.status = "violation";
      else
        smp.status = "ok";
    } catch (const NonConvergence&) {
      smp.status = "inconclusive";
    }
  });

  for (const auto& smp : rep.samples) {
    if (smp.status == "hypothesis_fail") ++rep.hypothesis_failures;
    if (smp.status == "violation") ++rep.conclusion_violations;
    if (smp.status == "inconclusive") ++rep.inconclusive;
  }
  if (!rep.exterior_ok || rep.hypothesis_failures > 0)
    rep.verdict = "hypothesis not met";
  else if (rep.conclusion_violations > 0)
    rep.verdict = "violation";
  else if (rep.inconclusive > 0)
    rep.verdict = "inconclusive";
  else
    rep.verdict = "consistent";
  return rep;
}

LspResult lsp_tail(double t_exp, const Params& params, const quad::QuadConfig& cfg) {
  if (!(t_exp > 0.0)) throw DomainError("t must be positive");
  const int n = params.n();
  const double p = params.p();
  const double sp = params.sp();
  LspResult out;
  out.exponent = n - t_exp * (p - 1.0);
  out.in_window = t_exp > n / p && t_exp < n / (p - 1.0);
  out.finite = out.exponent > 0.0;
  if (!out.finite) {
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }
  const double omega = sphere_measure(n - 1);
  const double lead = n - 1.0 - t_exp * (p - 1.0);
  // Half-ball with the cusp plus the lower half of the unit ball; |1+u| = 1 there.
  auto inside = [=](double r) {
    const double cusp = std::pow(r, lead) * std::pow(1.0 + std::pow(r, t_exp), p - 1.0);
    return 0.5 * omega * (cusp + std::pow(r, n - 1.0)) / (1.0 + std::pow(r, n + sp));
  };
  auto outside = [=](double r) { return omega * std::pow(r, n - 1.0) / (1.0 + std::pow(r, n + sp)); };
  quad::Endpoints at_zero;
  at_zero.left_alpha = std::max(0.0, -lead);
  quad::Endpoints tail;
  tail.tail_decay = 1.0 + sp;
  const quad::QuadResult a = quad::require(quad::integrate(inside, 0.0, 1.0, cfg, at_zero), "tail space (ball)");
  const quad::QuadResult b = quad::require(quad::integrate(outside, 1.0, INFINITY, cfg, tail), "tail space (exterior)");
  out.value = a.value + b.value;
  out.err_est = a.err_est + b.err_est;
  return out;
}

double holder_seminorm(const std::vector<std::pair<Point, double>>& samples, double nu) {
  if (samples.size() < 2) throw DomainError("holder_seminorm needs at least two samples");
  if (!(nu > 0.0 && nu < 1.0)) throw DomainError("nu must lie in (0, 1)");
  double best = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      const Point& x = samples[i].first;
      const Point& y = samples[j].first;
      if (x.size() != y.size()) throw DomainError("sample dimensions differ");
      double d2 = 0.0;
      for (std::size_t k = 0; k < x.size(); ++k) d2 += (x[k] - y[k]) * (x[k] - y[k]);
      if (d2 == 0.0) continue;
      best = std::max(best, std::fabs(samples[i].second - samples[j].second) / std::pow(d2, 0.5 * nu));
    }
  }
  return best;
}

}  // namespace fplap
