#pragma once

// One-dimensional evaluation of the fractional p-Laplacian
//   c_norm * PV \int_R G(u(x) - u(y)) / |x - y|^{1+sp} dy.

#include <string>
#include <utility>
#include <vector>

#include "fplap/model.hpp"
#include "fplap/quad.hpp"

namespace fplap {

struct EvalResult {
  double value = 0.0;
  double err_est = 0.0;
  /// Labeled breakdown of `value`; the labels depend on the method.
  std::vector<std::pair<std::string, double>> terms;
  long n_evals = 0;

  double term(const std::string& name) const;
};

/// Principal-value quadrature: paired integral on (0, eta], one-sided
/// integrals over the rest of the support, exact exterior tails.
/// Terms: inner, outer, tail.
EvalResult eval_direct_1d(const Profile& u, double x, const Params& params, const quad::QuadConfig& cfg);

/// Six-term near-boundary splitting for the bump (1 - x^2)^{s}_+, 0 < x < 1.
/// Terms: I1 .. I6.
EvalResult eval_decomposed_1d(double s_exp, double x, const Params& params, const quad::QuadConfig& cfg);

/// Endpoint exponent declared to the quadrature engine for paired PV
/// integrands, which behave like z^{p-1-sp} at the origin.
double paired_endpoint_alpha(const Params& params);

/// Paired integrand h(z) = G(u(x) - u(x + z e)) + G(u(x) - u(x - z e)) along
/// a unit direction e.
quad::Integrand pv_paired_integrand(const Profile& u, const Point& x, const Point& direction,
                                    const Params& params);

}  // namespace fplap
