#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "junction/entropy.hpp"
#include "junction/flux.hpp"
#include "junction/junction.hpp"
#include "junction/netsim.hpp"
#include "junction/solvers.hpp"

namespace junction::io {

using json = nlohmann::json;

/// Evaluates an arithmetic expression with + - * / ^, parentheses, unary
/// minus and sqrt(). Throws InputError on a syntax error.
double evaluate_expression(std::string_view text);

/// A JSON number, an expression string, or {"expr": "..."}.
double number_from_json(const json& value);

/// 17 significant digits.
std::string format_number(double value);

/// Reads (rho, flux) samples from CSV with header "rho,flux".
FluxModel read_flux_csv(const std::filesystem::path& path);

/// {"kind": "quadratic"|"triangular"|"tabulated", "params": {...}}.
/// Tabulated params are either {"rho": [...], "flux": [...]} or
/// {"csv": path}; a relative path is taken from base_dir.
FluxModel flux_from_json(const json& value, const std::filesystem::path& base_dir = {});
json to_json(const FluxModel& model);

/// {"n": .., "m": .., "rho": [...]}.
RiemannState state_from_json(const json& value);
json to_json(const RiemannState& state);
json to_json(const TraceSolution& solution);
json to_json(const EntropyReport& report);
json to_json(const EquilibriumClassification& cls);

SolverConfig solver_config_from_json(const json& value);
json to_json(const SolverConfig& config);

SimConfig sim_config_from_json(const json& value);

/// Parses JSON text, mapping parse errors to InputError.
json parse(std::string_view text, std::string_view origin);
json read_file(const std::filesystem::path& path);

}  // namespace junction::io
