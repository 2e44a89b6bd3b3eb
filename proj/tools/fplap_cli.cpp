// fplap: command-line front end for the fractional p-Laplacian evaluators.

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fplap/acceptance.hpp"
#include "fplap/analysis.hpp"
#include "fplap/errors.hpp"
#include "fplap/report.hpp"

using fplap::report::Json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitIo = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_number(const std::string& text, const std::string& name) {
  auto plain = [&](const std::string& t) {
    if (t.empty()) throw UsageError("--" + name + ": empty value");
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v))
      throw UsageError("--" + name + ": cannot parse '" + text + "'");
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) return plain(text);
  const double den = plain(text.substr(slash + 1));
  if (den == 0.0) throw UsageError("--" + name + ": zero denominator");
  return plain(text.substr(0, slash)) / den;
}

int parse_int(const std::string& text, const std::string& name) {
  const double v = parse_number(text, name);
  if (v != std::floor(v) || std::fabs(v) > 1e9) throw UsageError("--" + name + ": expected an integer");
  return static_cast<int>(v);
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3) throw UsageError("--grid: expected start:stop:count");
    const double a = parse_number(parts[0], "grid");
    const double b = parse_number(parts[1], "grid");
    const int count = parse_int(parts[2], "grid");
    if (count < 0) throw UsageError("--grid: count must be nonnegative");
    for (int i = 0; i < count; ++i) out.push_back(count == 1 ? a : a + (b - a) * i / (count - 1));
    return out;
  }
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_number(item, "grid"));
  return out;
}

// Flag > config file > built-in default.
class Settings {
 public:
  void declare(CLI::App& app, const std::string& name, const std::string& help, std::string fallback) {
    defaults_[name] = std::move(fallback);
    options_[name] = app.add_option("--" + name, flags_[name], help);
  }
  void declare_flag(CLI::App& app, const std::string& name, const std::string& help) {
    defaults_[name] = "false";
    options_[name] = app.add_flag("--" + name, bool_flags_[name], help);
  }

  void load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    Json j;
    try {
      j = Json::parse(in);
    } catch (const std::exception& e) {
      throw UsageError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw UsageError("config file must hold a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
      std::string key = it.key();
      for (char& c : key)
        if (c == '_') c = '-';
      if (!defaults_.count(key)) throw UsageError("config file: unknown key '" + it.key() + "'");
      if (it->is_string())
        config_[key] = it->get<std::string>();
      else if (it->is_number_float())
        config_[key] = fplap::report::format_double(it->get<double>());
      else
        config_[key] = it->dump();
    }
  }

  bool given(const std::string& name) const { return options_.at(name)->count() > 0 || config_.count(name) > 0; }

  std::string str(const std::string& name) const {
    if (options_.at(name)->count() > 0) {
      auto b = bool_flags_.find(name);
      return b != bool_flags_.end() ? (b->second ? "true" : "false") : flags_.at(name);
    }
    if (auto it = config_.find(name); it != config_.end()) return it->second;
    return defaults_.at(name);
  }
  double num(const std::string& name) const { return parse_number(str(name), name); }
  int integer(const std::string& name) const { return parse_int(str(name), name); }
  bool flag(const std::string& name) const { return str(name) == "true"; }

 private:
  std::map<std::string, std::string> defaults_;
  std::map<std::string, std::string> flags_;
  std::map<std::string, bool> bool_flags_;
  std::map<std::string, std::string> config_;
  std::map<std::string, CLI::Option*> options_;
};

struct Output {
  Json rows = Json::array();
  Json summary = Json::object();
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> csv_rows;
  int exit_code = kExitOk;
};

std::string f17(double v) { return fplap::report::format_double(v); }

void add_eval_row(Output& out, double x, const fplap::EvalResult& r, const std::string& method) {
  Json row = fplap::report::to_json(r);
  row["x"] = x;
  row["status"] = "ok";
  row["method"] = method;
  out.rows.push_back(row);
  out.csv_rows.push_back({f17(x), f17(r.value), f17(r.err_est), std::to_string(r.n_evals), "ok"});
}

const std::vector<std::string> kEvalHeader = {"x", "value", "err_est", "n_evals", "status"};

fplap::Point point_for(int n, double x) {
  fplap::Point pt(static_cast<std::size_t>(n), 0.0);
  pt[0] = x;
  return pt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional p-Laplacian evaluator"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings st;
  st.declare(app, "n", "dimension", "1");
  st.declare(app, "s", "order s in (0,1); fractions like 1/3 accepted", "0.5");
  st.declare(app, "p", "exponent p >= 2", "2");
  st.declare(app, "x", "evaluation point (first coordinate)", "0");
  st.declare(app, "r0", "evaluation radius for n >= 2", "0");
  st.declare(app, "rho", "barrier radius / scaled bump radius", "1");
  st.declare(app, "t", "cusp exponent for the tail-space integral", "0.5");
  st.declare(app, "grid", "start:stop:count or a comma separated list", "0:0.9:10");
  st.declare(app, "abs-tol", "absolute tolerance", "1e-10");
  st.declare(app, "rel-tol", "relative tolerance", "1e-9");
  st.declare(app, "jobs", "worker threads for sweeps", "1");
  st.declare(app, "format", "json or csv", "json");
  st.declare(app, "out", "output file (default stdout)", "");
  st.declare(app, "c-norm", "normalization constant", "1");
  st.declare(app, "method", "auto, direct, decomposed, radial or cartesian", "auto");
  st.declare(app, "jmax", "largest j in x_j = 1 - 2^-j", "14");
  st.declare(app, "criteria", "comma separated criterion ids for verify", "");
  st.declare_flag(app, "three-term", "add the (1-x)^{1-s} column to the fit");
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (keys as flag names)");

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"eval", "operator value of the bump at one point"},
      {"sweep", "operator values over a grid of radii"},
      {"identity", "boundary identity residual and its epsilon split"},
      {"closedform", "closed-form values for s = 1/2"},
      {"singfit", "fit a + b (1-x)^{-s} near the boundary"},
      {"scaling", "barrier scaling law check"},
      {"hopf", "barrier constants and boundary ratio trace"},
      {"lsp", "tail-space integral of the half-ball cusp"},
      {"compare-methods", "cross-check two evaluators"},
      {"verify", "run the acceptance criteria"},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, help] : commands) subs[name] = app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::string command;
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) command = name;

  try {
    if (!config_path.empty()) st.load_config(config_path);

    const std::string format = st.str("format");
    if (format != "json" && format != "csv") throw UsageError("--format must be json or csv");
    const int jobs = st.integer("jobs");
    if (jobs < 1) throw UsageError("--jobs must be at least 1");
    fplap::quad::QuadConfig cfg;
    cfg.abs_tol = st.num("abs-tol");
    cfg.rel_tol = st.num("rel-tol");
    const fplap::Params params(st.integer("n"), st.num("s"), st.num("p"), st.num("c-norm"));
    cfg.validate();
    const fplap::Method method = fplap::parse_method(st.str("method"));
    const int n = params.n();

    Output out;
    out.header = kEvalHeader;

    if (command == "verify") {
      fplap::AcceptanceOptions opts;
      opts.jobs = jobs;
      if (st.given("criteria"))
        for (double id : parse_grid(st.str("criteria"))) opts.only.push_back(static_cast<int>(id));
      const auto results = fplap::run_acceptance(opts);
      bool all = true;
      Json crit = Json::array();
      for (const auto& r : results) {
        std::cout << fplap::format_line(r) << "\n";
        all = all && r.pass;
        crit.push_back(Json{{"id", r.id},
                            {"name", r.name},
                            {"expected", r.expected},
                            {"got", r.got},
                            {"tol", r.tol},
                            {"pass", r.pass},
                            {"detail", r.detail}});
        out.csv_rows.push_back({std::to_string(r.id), r.name, r.expected, r.got, r.tol, r.pass ? "pass" : "fail"});
      }
      std::cout << (all ? "all criteria passed" : "some criteria failed") << "\n";
      out.summary = Json{{"criteria", crit}, {"all_pass", all}};
      out.header = {"id", "name", "expected", "got", "tol", "pass"};
      out.exit_code = all ? kExitOk : 1;
      if (!st.given("out")) return out.exit_code;
    } else if (command == "eval") {
      const double x = n == 1 ? st.num("x") : (st.given("r0") ? st.num("r0") : st.num("x"));
      const fplap::Profile u =
          st.given("rho") ? fplap::Profile::scaled_bump(params.s(), st.num("rho")) : fplap::Profile::bump(params.s());
      if (!(std::fabs(x) < u.support_radius())) throw UsageError("x outside open support");
      const fplap::EvalResult r = fplap::evaluate(u, point_for(n, x), params, cfg, method);
      add_eval_row(out, x, r, fplap::method_name(method));
      out.summary = Json{{"method", fplap::method_name(method)}};
    } else if (command == "sweep") {
      const std::vector<double> grid = parse_grid(st.str("grid"));
      for (double x : grid)
        if (!(x >= 0.0 && x < 1.0)) throw UsageError("x outside open support");
      const fplap::SweepResult sw = fplap::bounded_sweep(params, cfg, grid, jobs, method);
      for (const auto& row : sw.trace) {
        out.rows.push_back(fplap::report::to_json(row));
        out.csv_rows.push_back({f17(row.x), f17(row.value), f17(row.err_est), std::to_string(row.n_evals), row.status});
      }
      out.summary = Json{{"max_abs", sw.max_abs}, {"all_ok", sw.all_ok()}, {"strictly_increasing", sw.strictly_increasing()}};
      if (!sw.all_ok()) out.exit_code = kExitNonConvergence;
    } else if (command == "identity") {
      const fplap::IdentityReport r = fplap::identity_residual(params.s(), params.p(), cfg);
      for (std::size_t i = 0; i < r.eps_sequence.size(); ++i) {
        out.rows.push_back(Json{{"eps", r.eps_sequence[i]},
                                {"h1", r.h1[i]},
                                {"h2", r.h2[i]},
                                {"h3", r.h3[i]},
                                {"split_total", r.split_totals[i]}});
        out.csv_rows.push_back(
            {f17(r.eps_sequence[i]), f17(r.h1[i]), f17(r.h2[i]), f17(r.h3[i]), f17(r.split_totals[i])});
      }
      out.header = {"eps", "h1", "h2", "h3", "split_total"};
      out.summary = fplap::report::to_json(r);
    } else if (command == "closedform") {
      const double pv = params.p();
      if (pv != std::floor(pv)) throw UsageError("closed forms need p in {2,4,6,8}");
      const std::vector<double> grid = st.given("grid") ? parse_grid(st.str("grid")) : std::vector<double>{st.num("x")};
      for (double x : grid) {
        const double v = fplap::closed_form_half(static_cast<int>(pv), x, params.c_norm());
        out.rows.push_back(Json{{"x", x}, {"value", v}});
        out.csv_rows.push_back({f17(x), f17(v)});
      }
      out.header = {"x", "value"};
    } else if (command == "singfit") {
      const fplap::SingularFit fit =
          fplap::singular_fit(params, cfg, st.integer("jmax"), st.flag("three-term"), jobs);
      for (std::size_t i = 0; i < fit.xs.size(); ++i) {
        out.rows.push_back(Json{{"x", fit.xs[i]}, {"value", fit.values[i]}});
        out.csv_rows.push_back({f17(fit.xs[i]), f17(fit.values[i])});
      }
      out.header = {"x", "value"};
      out.summary = fplap::report::to_json(fit);
      out.summary.erase("xs");
      out.summary.erase("values");
    } else if (command == "scaling") {
      const double rho = st.num("rho");
      const double x = n == 1 ? st.num("x") : (st.given("r0") ? st.num("r0") : st.num("x"));
      if (!(std::fabs(x) < rho)) throw UsageError("x outside open support");
      const double err = fplap::scaling_check(rho, point_for(n, x), params, cfg);
      out.rows.push_back(Json{{"rho", rho}, {"x", x}, {"relative_error", err}});
      out.csv_rows.push_back({f17(rho), f17(x), f17(err)});
      out.header = {"rho", "x", "relative_error"};
    } else if (command == "hopf") {
      const fplap::HopfReport r = fplap::hopf_report(params, st.num("rho"), cfg, jobs);
      for (const auto& [d, q] : r.ratio_trace) {
        out.rows.push_back(Json{{"delta", d}, {"ratio", q}});
        out.csv_rows.push_back({f17(d), f17(q)});
      }
      out.header = {"delta", "ratio"};
      out.summary = fplap::report::to_json(r);
      out.summary.erase("ratio_trace");
    } else if (command == "lsp") {
      const fplap::LspResult r = fplap::lsp_tail(st.num("t"), params, cfg);
      out.rows.push_back(fplap::report::to_json(r));
      out.csv_rows.push_back({f17(st.num("t")), r.finite ? "finite" : "divergent", f17(r.value), f17(r.err_est)});
      out.header = {"t", "classification", "value", "err_est"};
    } else if (command == "compare-methods") {
      const std::vector<double> grid = st.given("grid") ? parse_grid(st.str("grid")) : std::vector<double>{st.num("x")};
      const fplap::Profile u = fplap::Profile::bump(params.s());
      const fplap::Method ma = n == 1 ? fplap::Method::Direct : fplap::Method::Radial;
      const fplap::Method mb = n == 1 ? fplap::Method::Decomposed : fplap::Method::Cartesian;
      bool all_agree = true;
      for (double x : grid) {
        if (!(std::fabs(x) < 1.0)) throw UsageError("x outside open support");
        const fplap::EvalResult a = fplap::evaluate(u, point_for(n, x), params, cfg, ma);
        const fplap::EvalResult b = fplap::evaluate(u, point_for(n, x), params, cfg, mb);
        const bool agree = std::fabs(a.value - b.value) <= a.err_est + b.err_est;
        all_agree = all_agree && agree;
        out.rows.push_back(Json{{"x", x},
                                {"value_a", a.value},
                                {"err_a", a.err_est},
                                {"value_b", b.value},
                                {"err_b", b.err_est},
                                {"agree", agree}});
        out.csv_rows.push_back({f17(x), f17(a.value), f17(a.err_est), f17(b.value), f17(b.err_est),
                                agree ? "agree" : "disagree"});
      }
      out.header = {"x", "value_a", "err_a", "value_b", "err_b", "status"};
      out.summary = Json{{"method_a", fplap::method_name(ma)}, {"method_b", fplap::method_name(mb)},
                         {"all_agree", all_agree}};
    }

    const std::string text = format == "csv"
                                 ? fplap::report::csv(out.header, out.csv_rows)
                                 : fplap::report::dump(fplap::report::document(params, cfg, out.rows, out.summary));
    const std::string path = st.str("out");
    if (path.empty()) {
      std::cout << text;
      std::cout.flush();
      if (!std::cout) throw IoError("cannot write to stdout");
    } else {
      std::ofstream f(path, std::ios::binary);
      if (!f) throw IoError("cannot open output file '" + path + "'");
      f << text;
      f.close();
      if (!f) throw IoError("cannot write output file '" + path + "'");
    }
    return out.exit_code;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fplap::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fplap::NonConvergence& e) {
    std::cerr << "error: " << e.what() << " (partial value " << f17(e.partial_value()) << ", err_est "
              << f17(e.err_est()) << ")\n";
    return kExitNonConvergence;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  }
}
