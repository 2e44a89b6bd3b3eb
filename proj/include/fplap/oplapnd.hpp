#pragma once

// Radial profiles in n >= 2 dimensions. With x = r0 e1 and y = (y1, ybar),
// integrating out the directions of ybar leaves a double integral over the
// axial offset w = y1 - r0 and the transverse radius rho = |ybar| with weight
// omega_{n-2} rho^{n-2}.

#include "fplap/model.hpp"
#include "fplap/oplap1d.hpp"
#include "fplap/quad.hpp"

namespace fplap {

struct RadialReduction {
  double r0;
  /// Surface measure of S^{n-2}; 2 for n = 2.
  double omega;
  /// The principal-value point in the (y1, rho) half-plane.
  double singular_y1;
  double singular_rho;
};

RadialReduction make_radial_reduction(int n, double r0);

/// Operator value at radius r0. Terms: support (quadrature over the region
/// that meets the support) and tail (closed forms where u vanishes).
EvalResult eval_radial_nd(const Profile& u, double r0, const Params& params, const quad::QuadConfig& cfg);

/// Brute-force 2D oracle in polar coordinates about x, pairing antipodal
/// rays. Slow; meant for cross-checks at modest tolerance.
EvalResult eval_cartesian_2d(const Profile& u, const Point& x, const Params& params, const quad::QuadConfig& cfg);

/// \int_0^inf y^{n-2} (1 + y^2)^{-(n+sp)/2} dy by quadrature.
double kernel_moment(int n, double s, double p, const quad::QuadConfig& cfg);

}  // namespace fplap
