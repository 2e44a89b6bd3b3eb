#include "fplap/report.hpp"

#include <cmath>
#include <cstdio>

namespace fplap::report {

namespace {

void write(std::string& out, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        out += Json(it.key()).dump();
        out += ": ";
        write(out, it.value(), depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out += ",\n";
        out += pad;
        write(out, j[i], depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump(const Json& j) {
  std::string out;
  write(out, j, 0);
  out += "\n";
  return out;
}

Json to_json(const Params& p) {
  return Json{{"n", p.n()}, {"s", p.s()}, {"p", p.p()}, {"c_norm", p.c_norm()}};
}

Json to_json(const quad::QuadConfig& c) {
  return Json{{"abs_tol", c.abs_tol},
              {"rel_tol", c.rel_tol},
              {"max_depth", c.max_depth},
              {"pv_radius_frac", c.pv_radius_frac},
              {"far_field_map", c.far_field_map},
              {"max_intervals", c.max_intervals}};
}

Json to_json(const EvalResult& r) {
  Json terms = Json::object();
  for (const auto& [name, v] : r.terms) terms[name] = v;
  return Json{{"value", r.value}, {"err_est", r.err_est}, {"n_evals", r.n_evals}, {"terms", terms}};
}

Json to_json(const SweepRow& r) {
  return Json{{"x", r.x},
              {"value", r.value},
              {"err_est", r.err_est},
              {"n_evals", r.n_evals},
              {"status", r.status},
              {"method", r.method}};
}

Json to_json(const IdentityReport& r) {
  return Json{{"s", r.s},
              {"p", r.p},
              {"residual", r.residual},
              {"err_est", r.err_est},
              {"eps_sequence", r.eps_sequence},
              {"h1", r.h1},
              {"h2", r.h2},
              {"h3", r.h3},
              {"split_totals", r.split_totals},
              {"h3_monotone", r.h3_monotone}};
}

Json to_json(const SingularFit& f) {
  return Json{{"a", f.a},
              {"b", f.b},
              {"c", f.c},
              {"residual", f.residual},
              {"max_abs_value", f.max_abs_value},
              {"b_relative", f.max_abs_value > 0.0 ? std::fabs(f.b) / f.max_abs_value : 0.0},
              {"xs", f.xs},
              {"values", f.values},
              {"dropped_j", f.dropped_j},
              {"three_term", f.three_term}};
}

Json to_json(const HopfReport& r) {
  Json trace = Json::array();
  for (const auto& [d, q] : r.ratio_trace) trace.push_back(Json{{"delta", d}, {"ratio", q}});
  return Json{{"rho", r.rho},
              {"c0", r.c0},
              {"c0_grid", r.c0_grid},
              {"scaling_errs", r.scaling_errs},
              {"ratio_trace", trace},
              {"c_d", r.c_d},
              {"c_rho", r.c_rho},
              {"eps_max", r.eps_max},
              {"eps_used", r.eps_used},
              {"subsolution_bound", r.subsolution_bound},
              {"lower_bound_holds", r.lower_bound_holds}};
}

Json to_json(const LspResult& r) {
  return Json{{"finite", r.finite},
              {"value", r.value},
              {"err_est", r.err_est},
              {"exponent", r.exponent},
              {"in_window", r.in_window}};
}

Json to_json(const ComparisonReport& r) {
  Json samples = Json::array();
  for (const auto& smp : r.samples)
    samples.push_back(Json{{"x", smp.x},
                           {"lhs", smp.lhs},
                           {"rhs", smp.rhs},
                           {"tol", smp.tol},
                           {"u", smp.u},
                           {"v", smp.v},
                           {"status", smp.status}});
  return Json{{"verdict", r.verdict},
              {"exterior_ok", r.exterior_ok},
              {"hypothesis_failures", r.hypothesis_failures},
              {"conclusion_violations", r.conclusion_violations},
              {"inconclusive", r.inconclusive},
              {"samples", samples}};
}

Json document(const Params& params, const quad::QuadConfig& cfg, Json rows, Json summary) {
  return Json{{"params", to_json(params)}, {"config", to_json(cfg)}, {"rows", std::move(rows)},
              {"summary", std::move(summary)}};
}

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  auto field = [](const std::string& f) {
    if (f.find_first_of(",\"\n\r") == std::string::npos) return f;
    std::string q = "\"";
    for (char c : f) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out += ',';
      out += field(cells[i]);
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::vector<std::vector<std::string>> cells;
  cells.reserve(rows.size());
  for (const auto& r : rows)
    cells.push_back({format_double(r.x), format_double(r.value), format_double(r.err_est), std::to_string(r.n_evals),
                     r.status});
  return csv({"x", "value", "err_est", "n_evals", "status"}, cells);
}

}  // namespace fplap::report
