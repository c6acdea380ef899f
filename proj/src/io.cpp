#include "junction/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "junction/errors.hpp"

namespace junction::io {

namespace {

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text) : text_(text) {}

  double parse() {
    const double v = sum();
    skip();
    if (pos_ != text_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream msg;
    msg << "expression \"" << text_ << "\": " << what << " at offset " << pos_;
    throw InputError(msg.str());
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  double sum() {
    double v = product();
    while (true) {
      if (accept('+'))
        v += product();
      else if (accept('-'))
        v -= product();
      else
        return v;
    }
  }

  double product() {
    double v = unary();
    while (true) {
      if (accept('*')) {
        v *= unary();
      } else if (accept('/')) {
        v /= unary();
      } else {
        return v;
      }
    }
  }

  double unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  double power() {
    const double base = atom();
    if (accept('^')) return std::pow(base, unary());
    return base;
  }

  double atom() {
    skip();
    if (accept('(')) {
      const double v = sum();
      if (!accept(')')) fail("missing ')'");
      return v;
    }
    if (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      if (name != "sqrt") fail("unknown function '" + std::string(name) + "'");
      if (!accept('(')) fail("expected '(' after sqrt");
      const double v = sum();
      if (!accept(')')) fail("missing ')'");
      if (v < 0.0) fail("sqrt of a negative number");
      return std::sqrt(v);
    }
    const std::string rest(text_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

const json& field(const json& obj, const char* key, const char* what) {
  if (!obj.is_object() || !obj.contains(key))
    throw InputError(std::string(what) + ": missing field \"" + key + "\"");
  return obj.at(key);
}

std::vector<double> numbers(const json& value, const char* what) {
  if (!value.is_array()) throw InputError(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& v : value) out.push_back(number_from_json(v));
  return out;
}

std::size_t count_from_json(const json& value, const char* what) {
  if (!value.is_number_integer() || value.get<long long>() < 0)
    throw InputError(std::string(what) + " must be a nonnegative integer");
  return value.get<std::size_t>();
}

json number_array(const std::vector<double>& values) {
  json out = json::array();
  for (double v : values) out.push_back(v);
  return out;
}

}  // namespace

double evaluate_expression(std::string_view text) { return ExpressionParser(text).parse(); }

double number_from_json(const json& value) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) return evaluate_expression(value.get<std::string>());
  if (value.is_object() && value.contains("expr") && value.at("expr").is_string())
    return evaluate_expression(value.at("expr").get<std::string>());
  throw InputError("expected a number or {\"expr\": \"...\"}, got " + value.dump());
}

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

FluxModel read_flux_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open flux table " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw InputError("flux table " + path.string() + " is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "rho,flux")
    throw InputError("flux table " + path.string() + ": header must be \"rho,flux\"");
  std::vector<double> rho;
  std::vector<double> flux;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument("no comma");
      std::size_t used = 0;
      rho.push_back(std::stod(line.substr(0, comma), &used));
      flux.push_back(std::stod(line.substr(comma + 1), &used));
    } catch (const std::exception&) {
      throw InputError("flux table " + path.string() + ": bad row " + std::to_string(row));
    }
  }
  return FluxModel::tabulated(std::move(rho), std::move(flux));
}

FluxModel flux_from_json(const json& value, const std::filesystem::path& base_dir) {
  const std::string kind = field(value, "kind", "flux").get<std::string>();
  const json params = value.contains("params") ? value.at("params") : json::object();
  if (kind == "quadratic")
    return FluxModel::quadratic(params.contains("scale") ? number_from_json(params.at("scale")) : 4.0);
  if (kind == "triangular")
    return FluxModel::triangular(number_from_json(field(params, "sigma", "triangular flux")),
                                 number_from_json(field(params, "f_max", "triangular flux")));
  if (kind == "tabulated") {
    if (params.contains("csv")) {
      std::filesystem::path p = params.at("csv").get<std::string>();
      if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
      return read_flux_csv(p);
    }
    return FluxModel::tabulated(numbers(field(params, "rho", "tabulated flux"), "rho"),
                                numbers(field(params, "flux", "tabulated flux"), "flux"));
  }
  throw InputError("unknown flux kind \"" + kind + "\"");
}

json to_json(const FluxModel& model) {
  json out{{"kind", std::string(to_string(model.kind()))}};
  switch (model.kind()) {
    case FluxKind::quadratic:
      out["params"] = {{"scale", model.scale()}};
      break;
    case FluxKind::triangular:
      out["params"] = {{"sigma", model.sigma()}, {"f_max", model.f_max()}};
      break;
    case FluxKind::tabulated:
      out["params"] = {{"rho", number_array(model.nodes_rho())},
                       {"flux", number_array(model.nodes_flux())}};
      break;
  }
  return out;
}

RiemannState state_from_json(const json& value) {
  const std::size_t n = count_from_json(field(value, "n", "node"), "n");
  const std::size_t m = count_from_json(field(value, "m", "node"), "m");
  return RiemannState({n, m}, numbers(field(value, "rho", "node"), "rho"));
}

json to_json(const RiemannState& state) {
  return {{"n", state.n()}, {"m", state.m()}, {"rho", number_array(state.rho())}};
}

json to_json(const TraceSolution& solution) {
  json out = to_json(solution.state);
  out["gamma"] = number_array(solution.gamma);
  out["balanced"] = solution.balanced;
  out["admissible"] = solution.admissible;
  return out;
}

json to_json(const EntropyReport& report) {
  json cands = json::array();
  for (const auto& [k, v] : report.candidates) cands.push_back({{"k", k}, {"F", v}});
  json out{{"value_at_sigma", report.value_at_sigma}, {"satisfied_E2", report.satisfied_e2}};
  if (report.e1_evaluated) {
    out["min_value"] = report.min_value;
    out["argmin_k"] = report.argmin_k;
    out["satisfied_E1"] = report.satisfied_e1;
  }
  out["candidates"] = cands;
  return out;
}

json to_json(const EquilibriumClassification& cls) {
  json perm = json::array();
  for (std::size_t p : cls.permutation) perm.push_back(p + 1);
  return {{"bad_count", cls.bad_count},
          {"permutation", perm},
          {"row", cls.row ? json(*cls.row) : json(nullptr)},
          {"admissible", cls.admissible}};
}

SolverConfig solver_config_from_json(const json& value) {
  SolverConfig config;
  if (value.is_string()) {
    config.solver = value.get<std::string>();
    return config;
  }
  config.solver = field(value, "solver", "solver").get<std::string>();
  if (value.contains("A")) {
    const json& rows = value.at("A");
    if (!rows.is_array()) throw InputError("\"A\" must be an array of rows");
    std::vector<std::vector<double>> A;
    for (const auto& row : rows) A.push_back(numbers(row, "row of A"));
    config.A = std::move(A);
  }
  if (value.contains("theta")) config.theta = numbers(value.at("theta"), "theta");
  if (value.contains("gamma_j")) config.gamma_j = number_from_json(value.at("gamma_j"));
  return config;
}

json to_json(const SolverConfig& config) {
  json out{{"solver", config.solver}};
  if (config.A) out["A"] = *config.A;
  if (config.theta) out["theta"] = *config.theta;
  if (config.gamma_j) out["gamma_j"] = *config.gamma_j;
  return out;
}

SimConfig sim_config_from_json(const json& value) {
  SimConfig config;
  if (!value.is_object()) throw InputError("simulation settings must be an object");
  if (value.contains("cfl")) config.cfl = number_from_json(value.at("cfl"));
  if (value.contains("t_end")) config.t_end = number_from_json(value.at("t_end"));
  if (value.contains("cells")) config.cells = count_from_json(value.at("cells"), "cells");
  if (value.contains("length")) config.length = number_from_json(value.at("length"));
  if (value.contains("snapshot_times"))
    config.snapshot_times = numbers(value.at("snapshot_times"), "snapshot_times");
  if (value.contains("max_steps"))
    config.max_steps = count_from_json(value.at("max_steps"), "max_steps");
  return config;
}

json parse(std::string_view text, std::string_view origin) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string(origin) + ": invalid JSON (" + e.what() + ")");
  }
}

json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

}  // namespace junction::io
