#include "fplap/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "fplap/errors.hpp"

namespace fplap::quad {

namespace {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525478426, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

// Component 0 drives refinement; component 1 is integrated passively with the
// same nodes (used to carry inner error estimates of nested integrals).
using Pair = std::array<double, 2>;
using PairFn = std::function<Pair(double)>;

struct Segment {
  double a;
  double b;
  double value;
  double err;
  double passive;
  int depth;
};

struct LargerError {
  bool operator()(const Segment& l, const Segment& r) const {
    if (l.err != r.err) return l.err < r.err;
    return l.a > r.a;
  }
};

Pair checked(const PairFn& f, double x) {
  Pair v = f(x);
  if (!std::isfinite(v[0]) || !std::isfinite(v[1])) {
    std::ostringstream os;
    os.precision(17);
    os << "non-finite integrand value at x = " << x;
    throw EvaluationError(os.str());
  }
  return v;
}

Segment gauss_kronrod(const PairFn& f, double a, double b, int depth, long& evals) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const Pair fc = checked(f, center);
  double resk = fc[0] * kWgk[10];
  double resg = 0.0;
  double resabs = std::fabs(resk);
  double passive = fc[1] * kWgk[10];
  std::array<double, 10> f1{};
  std::array<double, 10> f2{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const Pair lo = checked(f, center - dx);
    const Pair hi = checked(f, center + dx);
    f1[j] = lo[0];
    f2[j] = hi[0];
    const double sum = lo[0] + hi[0];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::fabs(lo[0]) + std::fabs(hi[0]));
    passive += kWgk[j] * (lo[1] + hi[1]);
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }
  evals += 21;
  const double mean = 0.5 * resk;
  double resasc = kWgk[10] * std::fabs(fc[0] - mean);
  for (int j = 0; j < 10; ++j) resasc += kWgk[j] * (std::fabs(f1[j] - mean) + std::fabs(f2[j] - mean));
  const double h = std::fabs(half);
  resasc *= h;
  resabs *= h;
  double err = std::fabs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > kTiny / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
  return Segment{a, b, resk * half, err, passive * half, depth};
}

struct CoreResult {
  QuadResult result;
  double passive = 0.0;
};

CoreResult adapt(const PairFn& f, double lo, double hi, const QuadConfig& cfg) {
  CoreResult out;
  long evals = 0;
  std::priority_queue<Segment, std::vector<Segment>, LargerError> heap;
  std::vector<Segment> frozen;
  Segment first = gauss_kronrod(f, lo, hi, 0, evals);
  double total_value = first.value;
  double total_err = first.err;
  double frozen_err = 0.0;
  heap.push(first);
  int count = 1;
  bool converged = false;

  auto exact_sums = [&]() {
    std::vector<Segment> all = frozen;
    auto copy = heap;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    std::sort(all.begin(), all.end(), [](const Segment& l, const Segment& r) { return l.a < r.a; });
    double v = 0.0, e = 0.0, pv = 0.0;
    for (const auto& s : all) {
      v += s.value;
      e += s.err;
      pv += s.passive;
    }
    return std::array<double, 3>{v, e, pv};
  };

  while (true) {
    if (total_err <= cfg.tolerance_for(total_value)) {
      const auto sums = exact_sums();
      total_value = sums[0];
      total_err = sums[1];
      if (total_err <= cfg.tolerance_for(total_value)) {
        converged = true;
        break;
      }
    }
    if (heap.empty() || count >= cfg.max_intervals || frozen_err > cfg.tolerance_for(total_value)) break;
    Segment top = heap.top();
    heap.pop();
    const double mid = 0.5 * (top.a + top.b);
    if (top.depth >= cfg.max_depth || !(mid > top.a && mid < top.b)) {
      frozen_err += top.err;
      frozen.push_back(top);
      continue;
    }
    Segment left = gauss_kronrod(f, top.a, mid, top.depth + 1, evals);
    Segment right = gauss_kronrod(f, mid, top.b, top.depth + 1, evals);
    total_value += left.value + right.value - top.value;
    total_err += left.err + right.err - top.err;
    heap.push(left);
    heap.push(right);
    ++count;
  }

  const auto sums = exact_sums();
  out.result.value = sums[0];
  out.result.err_est = sums[1];
  out.result.n_evals = evals;
  out.result.converged = converged;
  out.passive = sums[2];
  return out;
}

// Endpoint substitution x = a + (b-a) t^k or x = b - (b-a) t^k on t in [0,1].
double power_for(double alpha) {
  if (!(alpha < 1.0)) throw DomainError("endpoint singularity exponent must be < 1");
  return alpha > 0.0 ? 1.0 / (1.0 - alpha) : 1.0;
}

PairFn left_substitution(const PairFn& f, double a, double length, double k) {
  return [=](double t) -> Pair {
    const double tk1 = std::pow(t, k - 1.0);
    const double jac = length * k * tk1;
    if (jac == 0.0) return {0.0, 0.0};
    const Pair v = f(a + length * tk1 * t);
    return {v[0] * jac, v[1] * jac};
  };
}

PairFn right_substitution(const PairFn& f, double b, double length, double k) {
  return [=](double t) -> Pair {
    const double tk1 = std::pow(t, k - 1.0);
    const double jac = length * k * tk1;
    if (jac == 0.0) return {0.0, 0.0};
    const Pair v = f(b - length * tk1 * t);
    return {v[0] * jac, v[1] * jac};
  };
}

void accumulate(CoreResult& into, const CoreResult& part) {
  into.result += part.result;
  into.passive += part.passive;
}

CoreResult finite_part(const PairFn& f, double a, double b, const QuadConfig& cfg,
                       double left_alpha, double right_alpha) {
  const double kl = power_for(left_alpha);
  const double kr = power_for(right_alpha);
  if (kl == 1.0 && kr == 1.0) return adapt(f, a, b, cfg);
  if (kr == 1.0) return adapt(left_substitution(f, a, b - a, kl), 0.0, 1.0, cfg);
  if (kl == 1.0) return adapt(right_substitution(f, b, b - a, kr), 0.0, 1.0, cfg);
  const double mid = 0.5 * (a + b);
  const QuadConfig half = cfg.scaled_tolerances(0.5);
  CoreResult out = adapt(left_substitution(f, a, mid - a, kl), 0.0, 1.0, half);
  accumulate(out, adapt(right_substitution(f, b, b - mid, kr), 0.0, 1.0, half));
  return out;
}

CoreResult tail_part(const PairFn& f, double c, const QuadConfig& cfg, const Endpoints& ends,
                     double left_alpha_at_c) {
  if (!(ends.tail_decay > 1.0)) throw DomainError("tail_decay must exceed 1 for an improper integral");
  if (cfg.far_field_map) {
    // x = c / w, dx = c / w^2 dw; f ~ x^{-beta} gives w^{beta-2} at w = 0.
    PairFn mapped = [&f, c](double w) -> Pair {
      const Pair v = f(c / w);
      const double jac = c / (w * w);
      return {v[0] * jac, v[1] * jac};
    };
    return finite_part(mapped, 0.0, 1.0, cfg, std::max(0.0, 2.0 - ends.tail_decay), left_alpha_at_c);
  }
  CoreResult out = finite_part(f, c, 2.0 * c, cfg, left_alpha_at_c, 0.0);
  double lo = 2.0 * c;
  for (int panel = 1; panel < 400; ++panel) {
    const CoreResult part = adapt(f, lo, 2.0 * lo, cfg);
    accumulate(out, part);
    lo *= 2.0;
    if (panel >= 3 && std::fabs(part.result.value) + part.result.err_est <=
                          0.1 * cfg.tolerance_for(out.result.value))
      return out;
  }
  out.result.converged = false;
  return out;
}

CoreResult dispatch(const PairFn& f, double a, double b, const QuadConfig& cfg, const Endpoints& ends) {
  cfg.validate();
  if (std::isnan(a) || std::isnan(b)) throw DomainError("integration limits must not be NaN");
  if (a == b) return CoreResult{};
  if (b < a) {
    Endpoints swapped = ends;
    std::swap(swapped.left_alpha, swapped.right_alpha);
    if (std::isinf(a)) throw DomainError("only the upper limit may be infinite");
    CoreResult r = dispatch(f, b, a, cfg, swapped);
    r.result.value = -r.result.value;
    r.passive = -r.passive;
    return r;
  }
  if (std::isinf(a)) throw DomainError("lower limit must be finite");
  if (std::isfinite(b)) return finite_part(f, a, b, cfg, ends.left_alpha, ends.right_alpha);

  if (a > 0.0) return tail_part(f, a, cfg, ends, ends.left_alpha);
  const double c = std::max(a, 0.0) + 1.0;
  const QuadConfig half = cfg.scaled_tolerances(0.5);
  CoreResult out = finite_part(f, a, c, half, ends.left_alpha, 0.0);
  accumulate(out, tail_part(f, c, half, ends, 0.0));
  return out;
}

}  // namespace

void QuadConfig::validate() const {
  if (!(abs_tol > 0.0)) throw DomainError("abs_tol must be positive");
  if (!(rel_tol > 0.0)) throw DomainError("rel_tol must be positive");
  if (!(pv_radius_frac > 0.0 && pv_radius_frac <= 0.5)) throw DomainError("pv_radius_frac must lie in (0, 0.5]");
  if (max_depth < 1) throw DomainError("max_depth must be positive");
  if (max_intervals < 1) throw DomainError("max_intervals must be positive");
}

QuadConfig QuadConfig::scaled_tolerances(double factor) const {
  QuadConfig c = *this;
  c.abs_tol *= factor;
  c.rel_tol *= factor;
  return c;
}

double QuadConfig::tolerance_for(double value) const { return std::max(abs_tol, rel_tol * std::fabs(value)); }

QuadResult& QuadResult::operator+=(const QuadResult& other) {
  value += other.value;
  err_est += other.err_est;
  n_evals += other.n_evals;
  converged = converged && other.converged;
  return *this;
}

QuadResult QuadResult::scaled(double factor) const {
  QuadResult r = *this;
  r.value *= factor;
  r.err_est *= std::fabs(factor);
  return r;
}

QuadResult operator+(QuadResult lhs, const QuadResult& rhs) { return lhs += rhs; }

QuadResult integrate(const Integrand& f, double a, double b, const QuadConfig& cfg, const Endpoints& ends) {
  PairFn wrapped = [&f](double x) -> Pair { return {f(x), 0.0}; };
  return dispatch(wrapped, a, b, cfg, ends).result;
}

const QuadResult& require(const QuadResult& r, const char* what) {
  if (!r.converged) {
    std::ostringstream os;
    os.precision(6);
    os << "quadrature did not converge (" << what << "): value " << r.value << ", err_est " << r.err_est;
    throw NonConvergence(os.str(), r.value, r.err_est);
  }
  return r;
}

QuadResult integrate_nested(const std::function<QuadResult(double)>& inner, double a, double b,
                            const QuadConfig& cfg, const Endpoints& ends) {
  long inner_evals = 0;
  bool inner_ok = true;
  PairFn wrapped = [&](double w) -> Pair {
    const QuadResult r = inner(w);
    inner_evals += r.n_evals;
    inner_ok = inner_ok && r.converged;
    return {r.value, r.err_est};
  };
  CoreResult outer = dispatch(wrapped, a, b, cfg, ends);
  QuadResult r = outer.result;
  r.err_est += std::fabs(outer.passive);
  r.n_evals += inner_evals;
  r.converged = r.converged && inner_ok;
  return r;
}

QuadResult integrate2d_iterated(const std::function<double(double, double)>& f, double a, double b,
                                const std::function<double(double)>& lo,
                                const std::function<double(double)>& hi, const QuadConfig& cfg,
                                const Endpoints& outer_ends, const Endpoints& inner_ends) {
  const double measure = std::isfinite(b) ? std::max(1.0, std::fabs(b - a)) : 1.0;
  const QuadConfig inner_cfg = cfg.scaled_tolerances(1.0 / measure);
  const QuadConfig outer_cfg = cfg.scaled_tolerances(0.5);
  return integrate_nested(
      [&](double w) {
        return integrate([&f, w](double y) { return f(w, y); }, lo(w), hi(w), inner_cfg, inner_ends);
      },
      a, b, outer_cfg, outer_ends);
}

}  // namespace fplap::quad
