#include "fplap/model.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "fplap/errors.hpp"

namespace fplap {

double norm2(std::span<const double> x) {
  return std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
}

double norm(std::span<const double> x) { return std::sqrt(norm2(x)); }

Params::Params(int n, double s, double p, double c_norm) : n_(n), s_(s), p_(p), c_norm_(c_norm) {
  if (n < 1) throw DomainError("dimension n must be >= 1, got " + std::to_string(n));
  if (!(s > 0.0 && s < 1.0)) throw DomainError("order s must lie in (0,1), got " + std::to_string(s));
  if (!(p >= 2.0) || !std::isfinite(p)) throw DomainError("exponent p must be >= 2, got " + std::to_string(p));
  if (!(c_norm > 0.0) || !std::isfinite(c_norm)) throw DomainError("c_norm must be positive");
  if (!(s * p < p)) throw DomainError("sp < p violated");
}

double g_power(double t, double p) {
  if (p == 2.0) return t;
  if (t == 0.0) return 0.0;
  return std::copysign(std::pow(std::fabs(t), p - 1.0), t);
}

double g_ratio(double t, double b, double p) {
  if (!(p >= 2.0)) throw DomainError("g_ratio requires p >= 2");
  if (!(t < b)) throw DomainError("g_ratio requires t < s_arg");
  return (g_power(b, p) - g_power(t, p)) / g_power(b - t, p);
}

GValue make_gvalue(double t, double p) { return GValue{t, p, g_power(t, p)}; }

double g_pair(double a, double b, double sum, double p) {
  if (p == 2.0) return sum;
  if ((a >= 0.0) == (b >= 0.0) || a == 0.0 || b == 0.0) return g_power(a, p) + g_power(b, p);
  // |a|^{p-1} - |b|^{p-1} with |a| - |b| = sign(a) * sum
  const double sa = a > 0.0 ? 1.0 : -1.0;
  const double ab = std::fabs(b);
  return sa * std::pow(ab, p - 1.0) * std::expm1((p - 1.0) * std::log1p(sa * sum / ab));
}

double binomial_even_excess(double s, double m) {
  if (std::fabs(m) >= 0.125)
    return std::expm1(s * std::log1p(m)) + std::expm1(s * std::log1p(-m));
  double coef = 1.0;
  double mk = 1.0;
  double total = 0.0;
  for (int k = 1; k < 60; ++k) {
    coef *= (s - k + 1.0) / k;
    mk *= m;
    if (k % 2 != 0) continue;
    const double term = coef * mk;
    total += term;
    if (std::fabs(term) <= 1e-18 * std::fabs(total)) break;
  }
  return 2.0 * total;
}

Profile Profile::bump(double s_exp) { return scaled_bump(s_exp, 1.0); }

Profile Profile::scaled_bump(double s_exp, double rho) {
  if (!(s_exp > 0.0 && s_exp < 1.0)) throw DomainError("bump exponent must lie in (0,1)");
  if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("bump radius must be positive");
  Profile pr;
  pr.kind_ = rho == 1.0 ? ProfileKind::Bump : ProfileKind::ScaledBump;
  pr.exponent_ = s_exp;
  pr.rho_ = rho;
  pr.support_radius_ = rho;
  pr.radial_ = true;
  return pr;
}

Profile Profile::power_cusp(double t_exp) {
  if (!(t_exp > 0.0)) throw DomainError("cusp exponent must be positive");
  Profile pr;
  pr.kind_ = ProfileKind::PowerCusp;
  pr.exponent_ = t_exp;
  pr.support_radius_ = 1.0;
  pr.radial_ = false;
  return pr;
}

Profile Profile::custom(ValueFn value, double support_radius, bool radial) {
  if (!value) throw DomainError("custom profile needs a value callback");
  if (!(support_radius > 0.0)) throw DomainError("support radius must be positive");
  Profile pr;
  pr.kind_ = ProfileKind::Custom;
  pr.support_radius_ = support_radius;
  pr.radial_ = radial;
  pr.value_fn_ = std::move(value);
  return pr;
}

Profile Profile::custom_radial(RadialFn value_of_r, double support_radius) {
  if (!value_of_r) throw DomainError("custom profile needs a value callback");
  Profile pr = custom([f = value_of_r](std::span<const double> x) { return f(norm(x)); },
                      support_radius, true);
  pr.radial_fn_ = std::move(value_of_r);
  return pr;
}

Profile Profile::scaled(double amplitude) const {
  Profile pr = *this;
  pr.amplitude_ *= amplitude;
  return pr;
}

double Profile::value(std::span<const double> x) const {
  switch (kind_) {
    case ProfileKind::Bump:
    case ProfileKind::ScaledBump:
      return radial_value(norm(x));
    case ProfileKind::PowerCusp: {
      const double r = norm(x);
      if (x.empty() || r >= 1.0 || !(x.back() > 0.0)) return 0.0;
      return amplitude_ * std::pow(r, -exponent_);
    }
    case ProfileKind::Custom:
      return amplitude_ * value_fn_(x);
  }
  return 0.0;
}

double Profile::radial_value(double r) const {
  if (!radial_) throw DomainError("radial_value called on a non-radial profile");
  switch (kind_) {
    case ProfileKind::Bump:
    case ProfileKind::ScaledBump: {
      const double q = r / rho_;
      const double a = (1.0 - q) * (1.0 + q);
      return a > 0.0 ? amplitude_ * std::pow(a, exponent_) : 0.0;
    }
    case ProfileKind::Custom:
      if (radial_fn_) return amplitude_ * radial_fn_(r);
      {
        const double pt[1] = {r};
        return amplitude_ * value_fn_(pt);
      }
    case ProfileKind::PowerCusp:
      break;
  }
  throw DomainError("radial_value called on a non-radial profile");
}

double Profile::drop(double rx2, double d2) const {
  switch (kind_) {
    case ProfileKind::Bump:
    case ProfileKind::ScaledBump: {
      const double r2 = rho_ * rho_;
      const double a = 1.0 - rx2 / r2;
      const double b = a + d2 / r2;
      if (a <= 0.0) return b > 0.0 ? -amplitude_ * std::pow(b, exponent_) : 0.0;
      if (b <= 0.0) return amplitude_ * std::pow(a, exponent_);
      // a^s - b^s = -a^s * expm1(s * log1p((b - a) / a))
      return -amplitude_ * std::pow(a, exponent_) * std::expm1(exponent_ * std::log1p(d2 / (r2 * a)));
    }
    case ProfileKind::Custom: {
      if (!radial_) throw DomainError("drop() needs a radial profile");
      const double rx = std::sqrt(rx2);
      const double ry = std::sqrt(std::max(0.0, rx2 - d2));
      return radial_value(rx) - radial_value(ry);
    }
    case ProfileKind::PowerCusp:
      break;
  }
  throw DomainError("PowerCusp profiles cannot be passed to operator evaluators");
}

double Profile::paired_g(double rx2, double lin, double quad, double p) const {
  const double fwd = drop(rx2, -quad - lin);
  const double bwd = drop(rx2, lin - quad);
  if (kind_ != ProfileKind::Bump && kind_ != ProfileKind::ScaledBump) return g_power(fwd, p) + g_power(bwd, p);
  const double r2 = rho_ * rho_;
  const double a = 1.0 - rx2 / r2;
  if (a <= 0.0) return g_power(fwd, p) + g_power(bwd, p);
  const double q = quad / (r2 * a);
  const double l = std::fabs(lin) / (r2 * a);
  if (!(q + l < 1.0)) return g_power(fwd, p) + g_power(bwd, p);
  const double m = l / (1.0 - q);
  const double oq = std::pow(1.0 - q, exponent_);
  const double bracket = -2.0 * std::expm1(exponent_ * std::log1p(-q)) - oq * binomial_even_excess(exponent_, m);
  const double sum = amplitude_ * std::pow(a, exponent_) * bracket;
  return g_pair(fwd, bwd, sum, p);
}

double Profile::drop_1d(double x, double z, int sign) const {
  const double sz = sign >= 0 ? z : -z;
  if (radial_) return drop(x * x, -sz * (2.0 * x + sz));
  if (kind_ == ProfileKind::PowerCusp)
    throw DomainError("PowerCusp profiles cannot be passed to operator evaluators");
  const double px[1] = {x};
  const double py[1] = {x + sz};
  return value(px) - value(py);
}

double symmetry_reduce(double x) {
  if (!(std::fabs(x) < 1.0)) throw DomainError("symmetry_reduce requires |x| < 1");
  return std::fabs(x);
}

}  // namespace fplap
