#include "holocurve/cli/commands.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "holocurve/chifun.hpp"
#include "holocurve/cli/config.hpp"
#include "holocurve/cli/suites.hpp"
#include "holocurve/errors.hpp"
#include "holocurve/odesolve.hpp"

#ifndef HOLOCURVE_VERSION
#define HOLOCURVE_VERSION "0.0.0"
#endif

namespace holocurve::cli {

namespace {

using nlohmann::json;

/// A completed job whose verdict is a failed check (exit 5).
struct CheckFailed {
  std::string message;
};

json error_object(const char* kind, int status, const std::string& message) {
  return {{"error", {{"kind", kind}, {"exit_code", status}, {"message", message}}}};
}

template <class Body>
int guarded(std::ostream& err, Body&& body) {
  auto fail = [&](const char* kind, int status, const std::string& message, json extra = json::object()) {
    json obj = error_object(kind, status, message);
    obj["error"].update(extra);
    err << obj.dump() << '\n';
    return status;
  };
  try {
    return body();
  } catch (const ConfigError& e) {
    return fail("config", kExitConfig, e.what());
  } catch (const ParseError& e) {
    return fail("parse", kExitConfig, e.what(), {{"line", e.line()}, {"column", e.column()}});
  } catch (const ParameterError& e) {
    return fail("parameter", kExitConfig, e.what());
  } catch (const WitnessUnreachable& e) {
    return fail("config", kExitConfig, e.what(), {{"suggested_dimension", e.suggested_dimension()}});
  } catch (const DomainError& e) {
    return fail("domain", kExitDomain, e.what(), {{"t", e.t()}, {"distance", e.distance()}});
  } catch (const DegenerateDomainError& e) {
    return fail("degenerate-domain", kExitDomain, e.what());
  } catch (const EvaluationError& e) {
    return fail("evaluation", kExitDomain, e.what(), {{"node", e.node()}});
  } catch (const ConvergenceError& e) {
    return fail("convergence", kExitConvergence, e.what(),
                {{"iterations", e.iterations()}, {"last_ratio", e.last_ratio()}});
  } catch (const std::filesystem::filesystem_error& e) {
    return fail("io", kExitConfig, e.what());
  }
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json vector_json(const CVector& v) {
  json out = json::array();
  for (const auto& z : v) out.push_back(complex_to_json(z));
  return out;
}

json curve_json(const Curve& c, const char* values_key, const char* derivs_key = nullptr) {
  json t = json::array(), values = json::array();
  for (std::size_t k = 0; k < c.size(); ++k) {
    t.push_back(c.grid()[k]);
    values.push_back(vector_json(c[k]));
  }
  json out{{"t", t}, {values_key, values}};
  if (derivs_key && c.has_derivs()) {
    json d = json::array();
    for (const auto& v : c.derivs()) d.push_back(vector_json(v));
    out[derivs_key] = d;
  }
  return out;
}

json domain_json(const Box& box) {
  return {{"t0", box.interval().t0()},
          {"A", box.interval().half_width()},
          {"center", vector_json(box.center())},
          {"radius", box.radius()},
          {"p", box.norm_p()}};
}

json report_header(const char* command, const JobConfig& config) {
  return {{"artifact", {{"name", "holocurve"}, {"version", version()}}},
          {"command", command},
          {"seed", config.seed},
          {"config", to_json(config)}};
}

JobConfig require_config(const CommandOptions& opts) {
  if (!opts.config) throw ConfigError("--config is required");
  JobConfig c = load_config(*opts.config);
  if (opts.seed) c.seed = *opts.seed;
  if (opts.out) c.output = *opts.out;
  if (c.phi_path.empty()) throw ConfigError("configuration has no 'phi' field file");
  return c;
}

CVector initial_value(const JobConfig& c, const Field& phi) {
  if (c.xi.empty()) throw ConfigError("configuration has no initial value 'xi'");
  if (c.xi.size() != phi.dimension()) throw ConfigError("'xi' length differs from the field dimension");
  return CVector(c.xi);
}

void emit(const std::optional<std::filesystem::path>& path, const std::string& text, std::ostream& out) {
  if (path) {
    write_atomic(*path, text);
  } else {
    out << text;
  }
}

struct SolveStage {
  json report;
  std::optional<SolveReport> solved;
};

/// Shared front half of solve and sensitivity: the condition, then the
/// solve unless the condition fails without --force.
SolveStage run_solve(const char* command, const JobConfig& config, const Field& phi, const CVector& xi, bool force) {
  SolveStage stage{report_header(command, config), std::nullopt};
  stage.report["field"] = {{"phi", phi.expr().to_string()}, {"domain", domain_json(phi.domain())}};
  const SolveOptions opts = config.solve_options();
  const ConditionResult cond =
      opts.tube_radius ? condition_P_at(phi, xi, *opts.tube_radius, opts.sampling) : condition_P(phi, xi, opts.sampling);
  stage.report["condition"] = {{"ok", cond.ok},
                               {"b1", cond.b1},
                               {"b1_max", cond.b1_max},
                               {"sup", cond.sup},
                               {"contraction", number_or_null(cond.contraction)},
                               {"forced", force && !cond.ok}};
  if (!cond.ok && !force) {
    stage.report["status"] = "condition-failed";
    return stage;
  }
  stage.solved.emplace(picard_solve(phi, xi, opts));
  const SolveReport& rep = *stage.solved;
  stage.report["status"] = "solved";
  stage.report["result"] = {{"iterations", rep.iterations},
                            {"contraction", number_or_null(rep.contraction)},
                            {"residual", rep.residual},
                            {"observed_ratio", rep.observed_ratio},
                            {"increments", rep.increments}};
  stage.report["solution"] = curve_json(rep.solution, "y", "dy");
  return stage;
}

}  // namespace

const char* version() { return HOLOCURVE_VERSION; }

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot write " + tmp.string());
    f << content;
    f.flush();
    if (!f) throw ConfigError("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

int cmd_solve(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const JobConfig config = require_config(opts);
    const Field phi = load_field(config.phi_path, config);
    const CVector xi = initial_value(config, phi);
    SolveStage stage = run_solve("solve", config, phi, xi, opts.force);
    emit(config.output, stage.report.dump(2) + "\n", out);
    if (!stage.solved) {
      err << error_object("condition", kExitCheckFailed,
                          "tube condition fails on every ladder rung; rerun with --force to iterate anyway")
                 .dump()
          << '\n';
      return static_cast<int>(kExitCheckFailed);
    }
    return static_cast<int>(kExitOk);
  });
}

int cmd_sensitivity(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const JobConfig config = require_config(opts);
    const Field phi = load_field(config.phi_path, config);
    const CVector xi = initial_value(config, phi);
    const CVector dxi = config.dxi.empty() ? CVector(phi.dimension()) : CVector(config.dxi);
    if (dxi.size() != phi.dimension()) throw ConfigError("'dxi' length differs from the field dimension");
    std::optional<Field> dphi;
    if (config.dphi_path) {
      const Field raw = load_field(*config.dphi_path, config);
      if (raw.dimension() != phi.dimension()) throw ConfigError("'dphi' dimension differs from 'phi'");
      dphi.emplace(raw.expr(), phi.domain());
    }

    SolveStage stage = run_solve("sensitivity", config, phi, xi, opts.force);
    if (!stage.solved) {
      emit(config.output, stage.report.dump(2) + "\n", out);
      err << error_object("condition", kExitCheckFailed, "tube condition fails; rerun with --force").dump() << '\n';
      return static_cast<int>(kExitCheckFailed);
    }
    const Curve& y = stage.solved->solution;
    const Curve v = solution_map_derivative(phi, xi, y, dxi, dphi, config.contour());
    const Curve q = central_difference(phi, xi, dxi, dphi, config.fd_step, config.grid_nodes, config.tol,
                                       config.max_iter);
    const double fd_error = sup_norm(v.without_derivs() - q, phi.domain().norm_p());
    const bool ok = fd_error <= config.fd_threshold;
    stage.report["derivative"] = curve_json(v, "v", "dv");
    stage.report["derivative"]["dxi"] = vector_json(dxi);
    stage.report["derivative"]["dphi"] = dphi ? json(dphi->expr().to_string()) : json(nullptr);
    stage.report["finite_difference"] = {
        {"step", config.fd_step}, {"error", fd_error}, {"threshold", config.fd_threshold}, {"ok", ok}};
    emit(config.output, stage.report.dump(2) + "\n", out);
    if (!ok) {
      std::ostringstream os;
      os << "finite-difference cross-check error " << fd_error << " exceeds " << config.fd_threshold;
      err << error_object("check", kExitCheckFailed, os.str()).dump() << '\n';
      return static_cast<int>(kExitCheckFailed);
    }
    return static_cast<int>(kExitOk);
  });
}

int cmd_verify(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    JobConfig config;
    if (opts.config) config = load_config(*opts.config);
    if (opts.seed) config.seed = *opts.seed;
    if (opts.out) config.output = *opts.out;
    std::vector<std::string> suites;
    if (opts.suite) {
      suites.push_back(*opts.suite);
    } else if (!config.suites.empty()) {
      suites = config.suites;
    } else {
      suites.push_back("all");
    }
    for (const auto& s : suites) {
      if (!is_suite_name(s)) throw ConfigError("unknown suite '" + s + "' (expected contour, superpose, ode, chi or all)");
    }
    SuiteOptions so;
    so.seed = config.seed;
    so.contour = config.contour();
    std::vector<Row> rows;
    for (const auto& s : suites) {
      auto part = run_suite(s, so);
      rows.insert(rows.end(), part.begin(), part.end());
    }
    emit(config.output, to_csv(rows), out);
    std::size_t failed = 0;
    for (const auto& r : rows) failed += r.pass ? 0 : 1;
    if (failed > 0) {
      err << error_object("check", kExitCheckFailed, std::to_string(failed) + " verification rows failed").dump()
          << '\n';
      return static_cast<int>(kExitCheckFailed);
    }
    return static_cast<int>(kExitOk);
  });
}

int cmd_chi_witness(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!std::isfinite(opts.target)) throw ConfigError("--target must be finite");
    const ChiWitness w = unboundedness_witness(opts.target, opts.dimension);
    json report{{"artifact", {{"name", "holocurve"}, {"version", version()}}},
                {"command", "chi-witness"},
                {"target", opts.target},
                {"dimension", opts.dimension},
                {"index", w.index},
                {"coefficient", w.x[w.index].real()},
                {"chi", complex_to_json(w.value)},
                {"norm", {{"p1", norm(1, w.x)}, {"p2", norm(2, w.x)}}}};
    emit(opts.out, report.dump(2) + "\n", out);
    return static_cast<int>(kExitOk);
  });
}

}  // namespace holocurve::cli
