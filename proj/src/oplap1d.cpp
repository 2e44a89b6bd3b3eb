#include "fplap/oplap1d.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fplap/errors.hpp"

namespace fplap {

namespace {

constexpr double kMaxPairingRadius = 0.1;

void check_evaluable(const Profile& u) {
  if (u.kind() == ProfileKind::PowerCusp)
    throw DomainError("PowerCusp profiles cannot be passed to operator evaluators");
  if (!u.has_compact_support()) throw DomainError("profile must have compact support");
}

// Integral of z^{-1-sp} over [a, b] with b possibly infinite.
double kernel_tail(double a, double b, double sp) {
  const double upper = std::isfinite(b) ? std::pow(b, -sp) : 0.0;
  return (std::pow(a, -sp) - upper) / sp;
}

// One-sided integral of G(u(x) - u(x + sign*z)) z^{-1-sp} over [lo, hi],
// split at the listed interior breakpoints.
quad::QuadResult one_sided(const Profile& u, double x, int sign, double lo, double hi,
                           std::vector<double> breaks, const Params& params, const quad::QuadConfig& cfg) {
  const double p = params.p();
  const double sp = params.sp();
  auto f = [&u, x, sign, p, sp](double z) { return g_power(u.drop_1d(x, z, sign), p) * std::pow(z, -1.0 - sp); };
  breaks.erase(std::remove_if(breaks.begin(), breaks.end(), [&](double b) { return !(b > lo && b < hi); }),
               breaks.end());
  std::sort(breaks.begin(), breaks.end());
  quad::QuadResult total;
  double a = lo;
  for (double b : breaks) {
    total += quad::integrate(f, a, b, cfg);
    a = b;
  }
  total += quad::integrate(f, a, hi, cfg);
  return total;
}

}  // namespace

double paired_endpoint_alpha(const Params& params) {
  // h(z)/z^{1+sp} ~ z^g with g = p - 1 - sp. Declaring (1 - g)/2 makes the
  // substituted integrand vanish linearly at the origin.
  const double g = params.p() - 1.0 - params.sp();
  return std::max(0.0, 0.5 * (1.0 - g));
}

double EvalResult::term(const std::string& name) const {
  for (const auto& [label, v] : terms)
    if (label == name) return v;
  throw DomainError("no term named " + name);
}

quad::Integrand pv_paired_integrand(const Profile& u, const Point& x, const Point& direction,
                                    const Params& params) {
  if (x.size() != direction.size()) throw DomainError("point and direction dimensions differ");
  check_evaluable(u);
  const double p = params.p();
  if (u.radial()) {
    const double rx2 = norm2(x);
    double xe = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) xe += x[i] * direction[i];
    return [u, rx2, xe, p](double z) { return u.paired_g(rx2, 2.0 * xe * z, z * z, p); };
  }
  return [u, x, direction, p](double z) {
    Point fwd = x;
    Point bwd = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
      fwd[i] += z * direction[i];
      bwd[i] -= z * direction[i];
    }
    const double ux = u.value(x);
    return g_power(ux - u.value(fwd), p) + g_power(ux - u.value(bwd), p);
  };
}

EvalResult eval_direct_1d(const Profile& u, double x, const Params& params, const quad::QuadConfig& cfg) {
  if (params.n() != 1) throw DomainError("eval_direct_1d requires n = 1");
  check_evaluable(u);
  cfg.validate();
  const double radius = u.support_radius();
  if (!(std::fabs(x) < radius)) throw DomainError("x outside open support");

  const double sp = params.sp();
  const double p = params.p();
  const double dist = radius - std::fabs(x);
  const double eta = std::min(cfg.pv_radius_frac * dist, kMaxPairingRadius);

  const quad::Integrand paired = pv_paired_integrand(u, Point{x}, Point{1.0}, params);
  quad::Endpoints near_zero;
  near_zero.left_alpha = paired_endpoint_alpha(params);
  const quad::QuadResult inner = quad::integrate(
      [&paired, sp](double z) { return paired(z) * std::pow(z, -1.0 - sp); }, 0.0, eta, cfg, near_zero);
  quad::require(inner, "direct 1d, paired inner integral");

  // G(u(x) - u(y)) changes sign at the mirror point y = -x for even profiles.
  std::vector<double> right_breaks, left_breaks;
  if (u.radial()) {
    if (x < 0.0) right_breaks.push_back(-2.0 * x);
    if (x > 0.0) left_breaks.push_back(2.0 * x);
  }
  quad::QuadResult outer = one_sided(u, x, +1, eta, radius - x, right_breaks, params, cfg);
  outer += one_sided(u, x, -1, eta, radius + x, left_breaks, params, cfg);
  quad::require(outer, "direct 1d, one-sided outer integrals");

  const double px[1] = {x};
  const double gux = g_power(u.value(px), p);
  const double tail = gux * (kernel_tail(radius - x, INFINITY, sp) + kernel_tail(radius + x, INFINITY, sp));

  const double c = params.c_norm();
  EvalResult r;
  r.value = c * (inner.value + outer.value + tail);
  r.err_est = c * (inner.err_est + outer.err_est);
  r.n_evals = inner.n_evals + outer.n_evals;
  r.terms = {{"inner", c * inner.value}, {"outer", c * outer.value}, {"tail", c * tail}};
  return r;
}

EvalResult eval_decomposed_1d(double s_exp, double x, const Params& params, const quad::QuadConfig& cfg) {
  if (params.n() != 1) throw DomainError("eval_decomposed_1d requires n = 1");
  if (s_exp != params.s()) throw DomainError("bump exponent must equal the operator order s");
  if (!(x > 0.0 && x < 1.0)) throw DomainError("decomposed evaluator requires 0 < x < 1");
  cfg.validate();

  const double s = params.s();
  const double p = params.p();
  const double sp = params.sp();
  const Profile u = Profile::bump(s);
  const double a = (1.0 - x) * (1.0 + x);  // 1 - x^2
  const double a_pow = std::pow(a, s * (p - 1.0));
  const double c = a / (4.0 * x * x);  // coefficient of k^2 after k = 2xz/(1-x^2)
  const double prefactor = std::pow(2.0 * x, sp) / std::pow(a, s);

  const double i1 = a_pow / (sp * std::pow(1.0 + x, sp));
  const double i6 = a_pow / sp;

  auto left_term = [&u, x, p, sp](double z) { return g_power(u.drop_1d(x, z, -1), p) * std::pow(z, -1.0 - sp); };

  const quad::QuadResult i2 = quad::require(quad::integrate(left_term, 2.0 * x, 1.0 + x, cfg), "decomposed I2");
  const quad::QuadResult i5 = quad::require(quad::integrate(left_term, 1.0, 2.0 * x, cfg), "decomposed I5");

  // I3 = prefactor * \int_0^{2x/(1+x)} {G[1-(1-k-ck^2)^s] - G[(1+k-ck^2)^s - 1]} k^{-1-sp} dk
  quad::Endpoints near_zero;
  near_zero.left_alpha = paired_endpoint_alpha(params);
  const quad::QuadResult i3p = quad::require(
      quad::integrate(
          [=](double k) {
            const double q = std::max(-1.0, -k - c * k * k);
            const double right = -std::expm1(s * std::log1p(q));
            const double left = std::expm1(s * std::log1p(k - c * k * k));
            const double base = 1.0 - c * k * k;
            const double m = k / base;
            if (!(m < 1.0)) return (g_power(right, p) - g_power(left, p)) * std::pow(k, -1.0 - sp);
            // right - left = 2 - (base+k)^s - (base-k)^s without cancellation
            const double diff =
                -(std::pow(base, s) * binomial_even_excess(s, m) + 2.0 * std::expm1(s * std::log1p(-c * k * k)));
            return g_pair(right, -left, diff, p) * std::pow(k, -1.0 - sp);
          },
          0.0, 2.0 * x / (1.0 + x), cfg, near_zero),
      "decomposed I3");

  // I4 = a^{s(p-1)} [1/(sp (1-x)^{sp}) - 1/sp] - prefactor * \int G[(1+k-ck^2)^s - 1] k^{-1-sp} dk
  const double i4_closed = a_pow * (1.0 / (sp * std::pow(1.0 - x, sp)) - 1.0 / sp);
  const quad::QuadResult i4p = quad::require(
      quad::integrate(
          [=](double k) {
            const double bracket = std::expm1(s * std::log1p(k - c * k * k));
            return g_power(bracket, p) * std::pow(k, -1.0 - sp);
          },
          2.0 * x / (1.0 + x), 2.0 * x / a, cfg),
      "decomposed I4");

  const double cn = params.c_norm();
  const double i3 = prefactor * i3p.value;
  const double i4 = i4_closed - prefactor * i4p.value;
  EvalResult r;
  r.value = cn * (i1 + i2.value + i3 + i4 + i5.value + i6);
  r.err_est = cn * (i2.err_est + i5.err_est + prefactor * (i3p.err_est + i4p.err_est));
  r.n_evals = i2.n_evals + i3p.n_evals + i4p.n_evals + i5.n_evals;
  r.terms = {{"I1", cn * i1}, {"I2", cn * i2.value}, {"I3", cn * i3},
             {"I4", cn * i4}, {"I5", cn * i5.value}, {"I6", cn * i6}};
  return r;
}

}  // namespace fplap
