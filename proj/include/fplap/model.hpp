#pragma once

// Parameters, candidate profiles and the odd power nonlinearity G(t) = |t|^{p-2} t.

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace fplap {

using Point = std::vector<double>;

double norm2(std::span<const double> x);
double norm(std::span<const double> x);

/// Dimension n, order s in (0,1), exponent p >= 2 and the normalization
/// constant C_{n,s,p}. The constant defaults to 1, which is the convention all
/// reference values in this library assume.
class Params {
 public:
  Params(int n, double s, double p, double c_norm = 1.0);

  int n() const noexcept { return n_; }
  double s() const noexcept { return s_; }
  double p() const noexcept { return p_; }
  double c_norm() const noexcept { return c_norm_; }
  double sp() const noexcept { return s_ * p_; }

  Params with_n(int n) const { return Params(n, s_, p_, c_norm_); }
  Params with_c_norm(double c) const { return Params(n_, s_, p_, c); }

 private:
  int n_;
  double s_;
  double p_;
  double c_norm_;
};

/// G(t) = |t|^{p-2} t. Odd, strictly increasing, homogeneous of degree p-1.
double g_power(double t, double p);

/// (G(b) - G(t)) / G(b - t) for t < b; bounded below by 2^{2-p}.
double g_ratio(double t, double b, double p);

struct GValue {
  double t;
  double p;
  double value;
};

GValue make_gvalue(double t, double p);

/// (1+m)^s + (1-m)^s - 2 without cancellation for small m.
double binomial_even_excess(double s, double m);

/// G(a) + G(b) given an accurately formed a + b.
double g_pair(double a, double b, double sum, double p);

enum class ProfileKind { Bump, ScaledBump, PowerCusp, Custom };

/// A candidate function u on R^n. Bump and ScaledBump are the radial barriers
/// (1 - |x|^2)^s_+ and (rho^2 - |x|^2)^s_+ / rho^{2s}; PowerCusp is |x|^{-t} on
/// the upper half of the unit ball, used only for the tail-space integral.
///
/// Operator evaluators never subtract two profile values directly. They call
/// drop(), which receives |x|^2 and |x|^2 - |y|^2 (both formed by the caller
/// without cancellation) and returns u(x) - u(y) to full relative precision for
/// the built-in kinds.
class Profile {
 public:
  using ValueFn = std::function<double(std::span<const double>)>;
  using RadialFn = std::function<double(double)>;

  static Profile bump(double s_exp);
  static Profile scaled_bump(double s_exp, double rho);
  static Profile power_cusp(double t_exp);
  /// General profile; `value` receives the evaluation point.
  static Profile custom(ValueFn value, double support_radius, bool radial = false);
  /// Radial profile given as a function of |x|.
  static Profile custom_radial(RadialFn value_of_r, double support_radius);

  /// Same profile multiplied by a constant factor.
  Profile scaled(double amplitude) const;

  ProfileKind kind() const noexcept { return kind_; }
  double exponent() const noexcept { return exponent_; }
  double rho() const noexcept { return rho_; }
  double amplitude() const noexcept { return amplitude_; }
  double support_radius() const noexcept { return support_radius_; }
  bool radial() const noexcept { return radial_; }
  bool has_compact_support() const noexcept {
    return support_radius_ < std::numeric_limits<double>::infinity();
  }

  double value(std::span<const double> x) const;
  /// Value at radius r; only for radial profiles.
  double radial_value(double r) const;
  /// u(x) - u(y) for radial profiles given |x|^2 and |x|^2 - |y|^2.
  double drop(double rx2, double d2) const;
  /// G(u(x)-u(y+)) + G(u(x)-u(y-)) with |y+-|^2 = |x|^2 + quad +- lin.
  double paired_g(double rx2, double lin, double quad, double p) const;
  /// u(x) - u(x + z*sign) on the real line.
  double drop_1d(double x, double z, int sign) const;

 private:
  Profile() = default;

  ProfileKind kind_ = ProfileKind::Custom;
  double exponent_ = 0.0;
  double rho_ = 1.0;
  double amplitude_ = 1.0;
  double support_radius_ = std::numeric_limits<double>::infinity();
  bool radial_ = false;
  ValueFn value_fn_;
  RadialFn radial_fn_;
};

/// The bump operator is even, so evaluate at |x|.
double symmetry_reduce(double x);

}  // namespace fplap
