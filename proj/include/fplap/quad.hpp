#pragma once

// Deterministic adaptive Gauss-Kronrod quadrature with algebraic endpoint
// substitutions, mapped infinite tails and nested (iterated) integration.

#include <functional>

namespace fplap::quad {

struct QuadConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_depth = 60;
  /// Pairing radius for principal values, as a fraction of the distance from
  /// the evaluation point to the support boundary.
  double pv_radius_frac = 0.25;
  /// Map [c, inf) onto (0, 1] by x = c/w. When false, tails are summed over
  /// geometrically growing panels instead.
  bool far_field_map = true;
  /// Total number of subintervals one call may create.
  int max_intervals = 4000;

  void validate() const;
  /// Both tolerances multiplied by `factor`.
  QuadConfig scaled_tolerances(double factor) const;
  double tolerance_for(double value) const;
};

struct QuadResult {
  double value = 0.0;
  double err_est = 0.0;
  long n_evals = 0;
  bool converged = true;

  QuadResult& operator+=(const QuadResult& other);
  QuadResult scaled(double factor) const;
};

QuadResult operator+(QuadResult lhs, const QuadResult& rhs);

/// Declared endpoint behaviour. An exponent alpha in (0,1) means the integrand
/// behaves like dist^{-alpha} at that end; the engine substitutes
/// x = a + (b-a) t^k with k = 1/(1-alpha). Singular endpoints must be passed
/// in a coordinate where the singular point is exactly representable (ideally
/// 0). `tail_decay` is beta in f(x) ~ x^{-beta} as x -> inf and must exceed 1.
struct Endpoints {
  double left_alpha = 0.0;
  double right_alpha = 0.0;
  double tail_decay = 2.0;
};

using Integrand = std::function<double(double)>;

/// Integral of f over [a, b]; b may be +inf. b < a gives the oriented
/// (negated) integral. Never throws on non-convergence: check `converged`,
/// or pass the result through require().
QuadResult integrate(const Integrand& f, double a, double b, const QuadConfig& cfg,
                     const Endpoints& ends = {});

/// Throws NonConvergence when the result did not meet its tolerance.
const QuadResult& require(const QuadResult& r, const char* what);

/// Outer integral of a nested computation. `inner(w)` returns a full
/// QuadResult; its value is integrated and its err_est is integrated alongside
/// with the same rule, so the reported error is outer + integrated inner error.
QuadResult integrate_nested(const std::function<QuadResult(double)>& inner, double a, double b,
                            const QuadConfig& cfg, const Endpoints& ends = {});

/// Iterated integral of f(w, y) over w in [a, b], y in [lo(w), hi(w)].
/// Inner tolerances are tightened by the outer interval measure.
QuadResult integrate2d_iterated(const std::function<double(double, double)>& f, double a, double b,
                                const std::function<double(double)>& lo,
                                const std::function<double(double)>& hi, const QuadConfig& cfg,
                                const Endpoints& outer_ends = {}, const Endpoints& inner_ends = {});

}  // namespace fplap::quad
