#include "fplap/oplapnd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "fplap/errors.hpp"

namespace fplap {

namespace {

constexpr double kInnerTolFactor = 0.1;

double sphere_measure(int dim) {
  // |S^dim| = 2 pi^{(dim+1)/2} / Gamma((dim+1)/2); |S^0| = 2.
  const double h = 0.5 * (dim + 1);
  return 2.0 * std::pow(std::numbers::pi, h) / std::tgamma(h);
}

// \int_a^inf (w^2 + rho^2)^{-m} dw divided by rho^{1-2m}.
double transverse_tail(double a, double rho, double m) {
  const double v = rho * rho / (a * a + rho * rho);
  return 0.5 * boost::math::beta(m - 0.5, 0.5, v);
}

quad::QuadResult integrate_pieces(const quad::Integrand& f, std::vector<double> cuts, const quad::QuadConfig& cfg,
                                  const quad::Endpoints& first_ends) {
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  quad::QuadResult total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i + 1] > cuts[i])) continue;
    total += quad::integrate(f, cuts[i], cuts[i + 1], cfg, i == 0 ? first_ends : quad::Endpoints{});
  }
  return total;
}

}  // namespace

RadialReduction make_radial_reduction(int n, double r0) {
  if (n < 2) throw DomainError("radial reduction needs n >= 2");
  if (!(r0 >= 0.0)) throw DomainError("r0 must be non-negative");
  return RadialReduction{r0, sphere_measure(n - 2), r0, 0.0};
}

EvalResult eval_radial_nd(const Profile& u, double r0, const Params& params, const quad::QuadConfig& cfg) {
  if (params.n() < 2) throw DomainError("eval_radial_nd requires n >= 2");
  if (!u.radial()) throw DomainError("eval_radial_nd requires a radial profile");
  if (u.kind() == ProfileKind::PowerCusp)
    throw DomainError("PowerCusp profiles cannot be passed to operator evaluators");
  cfg.validate();
  const double radius = u.support_radius();
  if (!(r0 >= 0.0 && r0 < radius)) throw DomainError("r0 outside open support");

  const int n = params.n();
  const double p = params.p();
  const double sp = params.sp();
  const double m = 0.5 * (n + sp);
  const RadialReduction red = make_radial_reduction(n, r0);
  const double rx2 = r0 * r0;
  const double gux = g_power(u.radial_value(r0), p);
  const bool compact = u.has_compact_support();
  // Inner noise must sit well below the outer tolerance.
  const quad::QuadConfig inner_cfg = cfg.scaled_tolerances(kInnerTolFactor);
  const double full_line = boost::math::beta(m - 0.5, 0.5);  // \int_R (1+t^2)^{-m} dt

  auto inner = [&](double rho) -> quad::QuadResult {
    const double weight = std::pow(rho, n - 2.0);
    const double rho2 = rho * rho;
    auto f = [&u, rx2, r0, rho2, weight, m, p](double w) {
      return u.paired_g(rx2, 2.0 * r0 * w, w * w + rho2, p) * weight * std::pow(w * w + rho2, -m);
    };
    if (!compact) {
      quad::Endpoints ends;
      ends.tail_decay = 2.0 * m;
      return quad::integrate(f, 0.0, INFINITY, inner_cfg, ends);
    }
    // Offsets where y+ = (r0 + w, rho) or y- = (r0 - w, rho) crosses |y| = R.
    const double h = std::sqrt(std::max(0.0, (radius - rho) * (radius + rho)));
    const double last = r0 + h;
    std::vector<double> cuts = {0.0, last};
    for (double c : {h - r0, r0 - h, rho})
      if (c > 0.0 && c < last) cuts.push_back(c);
    quad::QuadResult r = integrate_pieces(f, cuts, inner_cfg, {});
    // Both y+ and y- outside the support beyond w = r0 + h.
    r.value += 2.0 * gux * std::pow(rho, -1.0 - sp) * transverse_tail(last, rho, m);
    return r;
  };

  quad::Endpoints near_axis;
  near_axis.left_alpha = paired_endpoint_alpha(params);
  quad::QuadResult support;
  double tail = 0.0;
  if (compact) {
    const double rho_c = std::sqrt((radius - r0) * (radius + r0));
    support = quad::integrate_nested(inner, 0.0, rho_c, cfg, near_axis);
    if (rho_c < radius) support += quad::integrate_nested(inner, rho_c, radius, cfg);
    // rho >= R: y outside the support for every w.
    tail = gux * full_line * std::pow(radius, -sp) / sp;
  } else {
    near_axis.tail_decay = 1.0 + sp;
    support = quad::integrate_nested(inner, 0.0, INFINITY, cfg, near_axis);
  }
  quad::require(support, "radial reduction");

  const double scale = params.c_norm() * red.omega;
  EvalResult out;
  out.value = scale * (support.value + tail);
  out.err_est = scale * support.err_est;
  out.n_evals = support.n_evals;
  out.terms = {{"support", scale * support.value}, {"tail", scale * tail}};
  return out;
}

EvalResult eval_cartesian_2d(const Profile& u, const Point& x, const Params& params, const quad::QuadConfig& cfg) {
  if (params.n() != 2) throw DomainError("eval_cartesian_2d requires n = 2");
  if (x.size() != 2) throw DomainError("eval_cartesian_2d requires a point in R^2");
  if (!u.radial() || !u.has_compact_support())
    throw DomainError("eval_cartesian_2d requires a compactly supported radial profile");
  if (u.kind() == ProfileKind::PowerCusp)
    throw DomainError("PowerCusp profiles cannot be passed to operator evaluators");
  cfg.validate();
  const double radius = u.support_radius();
  const double rx2 = norm2(x);
  if (!(rx2 < radius * radius)) throw DomainError("x outside open support");

  const double p = params.p();
  const double sp = params.sp();
  const double gux = g_power(u.value(x), p);
  const quad::QuadConfig inner_cfg = cfg.scaled_tolerances(kInnerTolFactor);
  const double gap = (radius - std::sqrt(rx2)) * (radius + std::sqrt(rx2));  // R^2 - |x|^2
  quad::Endpoints near_center;
  near_center.left_alpha = paired_endpoint_alpha(params);

  auto radial_integral = [&](double theta) -> quad::QuadResult {
    const double xe = x[0] * std::cos(theta) + x[1] * std::sin(theta);
    const double disc = std::sqrt(xe * xe + gap);
    // Exit distances along +e and -e.
    const double r_plus = -xe + disc;
    const double r_minus = xe + disc;
    const double r_lo = std::min(r_plus, r_minus);
    const double r_hi = std::max(r_plus, r_minus);
    auto fwd = [&u, rx2, xe, p](double r) { return g_power(u.drop(rx2, -r * (2.0 * xe + r)), p); };
    auto bwd = [&u, rx2, xe, p](double r) { return g_power(u.drop(rx2, r * (2.0 * xe - r)), p); };
    quad::QuadResult r = quad::integrate(
        [&](double t) { return u.paired_g(rx2, 2.0 * xe * t, t * t, p) * std::pow(t, -1.0 - sp); }, 0.0, r_lo,
        inner_cfg, near_center);
    const bool fwd_longer = r_plus > r_minus;
    r += quad::integrate(
        [&](double t) { return (fwd_longer ? fwd(t) : bwd(t)) * std::pow(t, -1.0 - sp); }, r_lo, r_hi, inner_cfg);
    // Ray segments outside the support, in closed form.
    r.value += gux * ((std::pow(r_lo, -sp) - std::pow(r_hi, -sp)) / sp + 2.0 * std::pow(r_hi, -sp) / sp);
    return r;
  };

  const quad::QuadResult total = quad::require(
      quad::integrate_nested(radial_integral, 0.0, std::numbers::pi, cfg), "cartesian 2d oracle");
  EvalResult out;
  out.value = params.c_norm() * total.value;
  out.err_est = params.c_norm() * total.err_est;
  out.n_evals = total.n_evals;
  out.terms = {{"polar", out.value}};
  return out;
}

double kernel_moment(int n, double s, double p, const quad::QuadConfig& cfg) {
  if (n < 2) throw DomainError("kernel_moment requires n >= 2");
  const Params params(n, s, p);
  const double m = 0.5 * (n + params.sp());
  quad::Endpoints ends;
  ends.tail_decay = 2.0 * m - (n - 2);
  const quad::QuadResult r = quad::integrate(
      [n, m](double y) { return std::pow(y, n - 2.0) * std::pow(1.0 + y * y, -m); }, 0.0, INFINITY, cfg, ends);
  return quad::require(r, "kernel moment").value;
}

}  // namespace fplap
