#include "holocurve/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "holocurve/errors.hpp"

namespace holocurve::cli {

namespace {

using nlohmann::json;

const char* const kKnownKeys[] = {"dimension", "norm_p",   "interval", "grid_nodes", "contour", "tol",
                                  "max_iter",  "tube_radius", "phi",   "dphi",       "xi",      "dxi",
                                  "fd_step",   "fd_threshold", "suites", "output",   "seed"};

template <class T>
T get_number(const json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  const json& v = doc.at(key);
  if (!v.is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      throw ConfigError(std::string("'") + key + "' must be a non-negative integer");
    }
  }
  return v.get<T>();
}

void require_positive(double value, const char* key) {
  if (!(value > 0.0) || !std::isfinite(value)) throw ConfigError(std::string("'") + key + "' must be finite and > 0");
}

std::vector<Complex> complex_list(const json& doc, const char* key) {
  if (!doc.contains(key)) return {};
  const json& v = doc.at(key);
  if (!v.is_array()) throw ConfigError(std::string("'") + key + "' must be an array of complex values");
  std::vector<Complex> out;
  for (const auto& entry : v) out.push_back(complex_from_json(entry));
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

Complex complex_from_json(const json& value) {
  if (value.is_number()) return {value.get<double>(), 0.0};
  if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number()) {
    return {value[0].get<double>(), value[1].get<double>()};
  }
  if (value.is_string()) {
    try {
      return parse_constant(value.get<std::string>());
    } catch (const ParseError& e) {
      throw ConfigError("bad complex constant \"" + value.get<std::string>() + "\": " + e.what());
    }
  }
  throw ConfigError("complex values are numbers, [re, im] pairs or strings like \"1-2i\"");
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

SolveOptions JobConfig::solve_options() const {
  SolveOptions opts;
  opts.grid_nodes = grid_nodes;
  opts.tol = tol;
  opts.max_iter = max_iter;
  opts.tube_radius = tube_radius;
  opts.contour = contour();
  return opts;
}

JobConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (std::find(std::begin(kKnownKeys), std::end(kKnownKeys), key) == std::end(kKnownKeys)) {
      throw ConfigError("unknown configuration key '" + key + "'");
    }
  }
  JobConfig c;
  c.dimension = get_number<std::size_t>(doc, "dimension", 0);
  if (doc.contains("norm_p")) {
    c.norm_p = get_number<double>(doc, "norm_p", 2.0);
    if (!(*c.norm_p >= 1.0) || !std::isfinite(*c.norm_p)) throw ConfigError("'norm_p' must satisfy 1 <= p < inf");
  }
  if (doc.contains("interval")) {
    const json& iv = doc.at("interval");
    if (!iv.is_object() || !iv.contains("t0") || !iv.contains("A")) {
      throw ConfigError("'interval' must be an object with t0 and A");
    }
    c.t0 = get_number<double>(iv, "t0", 0.0);
    c.half_width = get_number<double>(iv, "A", 1.0);
    require_positive(*c.half_width, "interval.A");
  }
  c.grid_nodes = get_number<std::size_t>(doc, "grid_nodes", c.grid_nodes);
  if (c.grid_nodes < 3 || c.grid_nodes % 2 == 0) throw ConfigError("'grid_nodes' must be odd and >= 3");
  if (doc.contains("contour")) {
    const json& ct = doc.at("contour");
    if (!ct.is_object()) throw ConfigError("'contour' must be an object");
    c.contour_nodes = get_number<std::size_t>(ct, "m_nodes", c.contour_nodes);
    c.contour_radius = get_number<double>(ct, "radius", c.contour_radius);
    if (c.contour_nodes < 8) throw ConfigError("'contour.m_nodes' must be >= 8");
    require_positive(c.contour_radius, "contour.radius");
    if (c.contour_radius > 1.0) throw ConfigError("'contour.radius' is a fraction of the certified radius, <= 1");
  }
  c.tol = get_number<double>(doc, "tol", c.tol);
  require_positive(c.tol, "tol");
  c.max_iter = get_number<std::size_t>(doc, "max_iter", c.max_iter);
  if (c.max_iter == 0) throw ConfigError("'max_iter' must be >= 1");
  if (doc.contains("tube_radius")) {
    c.tube_radius = get_number<double>(doc, "tube_radius", 0.0);
    require_positive(*c.tube_radius, "tube_radius");
  }
  if (doc.contains("phi")) {
    if (!doc.at("phi").is_string()) throw ConfigError("'phi' must be a file path");
    c.phi_path = resolve(base_dir, doc.at("phi").get<std::string>());
  }
  if (doc.contains("dphi") && !doc.at("dphi").is_null()) {
    if (!doc.at("dphi").is_string()) throw ConfigError("'dphi' must be a file path");
    c.dphi_path = resolve(base_dir, doc.at("dphi").get<std::string>());
  }
  c.xi = complex_list(doc, "xi");
  c.dxi = complex_list(doc, "dxi");
  c.fd_step = get_number<double>(doc, "fd_step", c.fd_step);
  require_positive(c.fd_step, "fd_step");
  c.fd_threshold = get_number<double>(doc, "fd_threshold", c.fd_threshold);
  require_positive(c.fd_threshold, "fd_threshold");
  if (doc.contains("suites")) {
    const json& s = doc.at("suites");
    if (!s.is_array()) throw ConfigError("'suites' must be an array of names");
    for (const auto& name : s) {
      if (!name.is_string()) throw ConfigError("'suites' must be an array of names");
      c.suites.push_back(name.get<std::string>());
    }
  }
  if (doc.contains("output")) {
    if (!doc.at("output").is_string()) throw ConfigError("'output' must be a path");
    c.output = resolve(base_dir, doc.at("output").get<std::string>());
  }
  c.seed = get_number<std::uint64_t>(doc, "seed", 0);

  if (c.dimension != 0) {
    if (!c.xi.empty() && c.xi.size() != c.dimension) throw ConfigError("'xi' length differs from 'dimension'");
    if (!c.dxi.empty() && c.dxi.size() != c.dimension) throw ConfigError("'dxi' length differs from 'dimension'");
  }
  if (!c.xi.empty() && !c.dxi.empty() && c.xi.size() != c.dxi.size()) {
    throw ConfigError("'xi' and 'dxi' lengths differ");
  }
  return c;
}

JobConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file " + path.string());
  json doc;
  try {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed JSON in " + path.string() + ": " + e.what());
  }
  return parse_config(doc, path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
}

json to_json(const JobConfig& c) {
  json out;
  out["dimension"] = c.dimension;
  out["norm_p"] = c.norm_p ? json(*c.norm_p) : json(nullptr);
  out["interval"] = c.t0 ? json{{"t0", *c.t0}, {"A", *c.half_width}} : json(nullptr);
  out["grid_nodes"] = c.grid_nodes;
  out["contour"] = {{"m_nodes", c.contour_nodes}, {"radius", c.contour_radius}};
  out["tol"] = c.tol;
  out["max_iter"] = c.max_iter;
  out["tube_radius"] = c.tube_radius ? json(*c.tube_radius) : json(nullptr);
  out["phi"] = c.phi_path.generic_string();
  out["dphi"] = c.dphi_path ? json(c.dphi_path->generic_string()) : json(nullptr);
  json xi = json::array(), dxi = json::array();
  for (const auto& z : c.xi) xi.push_back(complex_to_json(z));
  for (const auto& z : c.dxi) dxi.push_back(complex_to_json(z));
  out["xi"] = xi;
  out["dxi"] = dxi;
  out["fd_step"] = c.fd_step;
  out["fd_threshold"] = c.fd_threshold;
  out["suites"] = c.suites;
  out["output"] = c.output ? json(c.output->generic_string()) : json(nullptr);
  out["seed"] = c.seed;
  return out;
}

Field load_field(const std::filesystem::path& path, const JobConfig& config) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open field file " + path.string());
  std::stringstream text;
  text << in.rdbuf();
  Field f = [&] {
    try {
      return parse_field_file(text.str());
    } catch (const ParseError& e) {
      throw ParseError(path.string() + ": " + e.message(), e.line(), e.column());
    }
  }();
  if (config.dimension != 0 && f.dimension() != config.dimension) {
    throw ConfigError("field " + path.string() + " has dimension " + std::to_string(f.dimension()) +
                      ", configuration says " + std::to_string(config.dimension));
  }
  const Box& box = f.domain();
  const Interval interval = config.t0 ? Interval(*config.t0, *config.half_width) : box.interval();
  const double p = config.norm_p.value_or(box.norm_p());
  return Field(f.expr(), Box(interval, box.center(), box.radius(), p));
}

}  // namespace holocurve::cli
