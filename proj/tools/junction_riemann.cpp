// Command-line front end for the junction Riemann solver library.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "junction/entropy.hpp"
#include "junction/errors.hpp"
#include "junction/io.hpp"
#include "junction/netsim.hpp"
#include "junction/reproduce.hpp"
#include "junction/solvers.hpp"

namespace {

using junction::io::json;
namespace io = junction::io;

struct Options {
  std::string input;
  std::string output;
  std::string format;
  std::string solver;
  std::optional<double> tolerance;
  std::string ledger;
  std::size_t sweep = 0;
};

class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw junction::InputError("cannot write " + path);
    }
  }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct Problem {
  junction::FluxModel model;
  json doc;
  std::filesystem::path dir;
};

Problem load(const Options& opt) {
  if (opt.input.empty()) throw junction::InputError("--input is required");
  Problem p{junction::FluxModel::quadratic(), io::read_file(opt.input),
            std::filesystem::path(opt.input).parent_path()};
  if (!p.doc.is_object()) throw junction::InputError(opt.input + ": expected a JSON object");
  if (p.doc.contains("flux")) p.model = io::flux_from_json(p.doc.at("flux"), p.dir);
  return p;
}

std::optional<junction::SolverConfig> solver_config(const Problem& p, const Options& opt) {
  std::optional<junction::SolverConfig> config;
  if (p.doc.contains("solver")) config = io::solver_config_from_json(p.doc.at("solver"));
  if (!opt.solver.empty()) {
    if (!config) config.emplace();
    config->solver = opt.solver;
  }
  return config;
}

junction::TraceSolution solve_problem(const Problem& p, const junction::SolverConfig& config) {
  const junction::RiemannState initial = io::state_from_json(p.doc);
  const auto solver = junction::make_solver(p.model, config, initial.topology());
  return solver->solve(initial);
}

// Traces to check: the solver output when a solver is given, else the
// densities as stored.
junction::RiemannState traces_for(const Problem& p, const Options& opt) {
  if (const auto config = solver_config(p, opt)) return solve_problem(p, *config).state;
  return io::state_from_json(p.doc);
}

void write_json(std::ostream& out, const json& value) { out << value.dump(2) << "\n"; }

int cmd_solve(const Options& opt) {
  const Problem p = load(opt);
  const auto config = solver_config(p, opt);
  if (!config) throw junction::InputError("no solver given (use \"solver\" or --solver)");
  const junction::TraceSolution sol = solve_problem(p, *config);
  Sink sink(opt.output);
  if (opt.format == "csv") {
    sink.out() << "arc,rho,gamma\n";
    for (std::size_t l = 0; l < sol.state.size(); ++l)
      sink.out() << l + 1 << "," << io::format_number(sol.state[l]) << ","
                 << io::format_number(sol.gamma[l]) << "\n";
  } else {
    json out = io::to_json(sol);
    out["solver"] = io::to_json(*config);
    if (p.doc.contains("flux")) out["flux"] = p.doc.at("flux");
    write_json(sink.out(), out);
  }
  return 0;
}

int cmd_entropy(const Options& opt) {
  const Problem p = load(opt);
  const junction::RiemannState traces = traces_for(p, opt);
  const double eps = opt.tolerance.value_or(junction::tol::kEntropy);
  const junction::EntropyReport report = junction::check_e1(p.model, traces, eps);
  Sink sink(opt.output);
  if (opt.format == "csv") {
    sink.out() << "k,F\n";
    for (const auto& [k, v] : report.candidates)
      sink.out() << io::format_number(k) << "," << io::format_number(v) << "\n";
  } else {
    json out = io::to_json(report);
    out["traces"] = io::to_json(traces);
    write_json(sink.out(), out);
  }
  return 0;
}

int cmd_classify(const Options& opt) {
  const Problem p = load(opt);
  const junction::RiemannState traces = traces_for(p, opt);
  const auto cls = junction::classify_2x2(p.model, traces);
  Sink sink(opt.output);
  if (opt.format == "csv") {
    sink.out() << "bad_count,row,admissible\n"
               << cls.bad_count << "," << cls.row.value_or("") << ","
               << (cls.admissible ? "true" : "false") << "\n";
  } else {
    write_json(sink.out(), io::to_json(cls));
  }
  return 0;
}

int cmd_simulate(const Options& opt) {
  const Problem p = load(opt);
  const auto config = solver_config(p, opt);
  if (!config) throw junction::InputError("no solver given (use \"solver\" or --solver)");
  const junction::RiemannState data = io::state_from_json(p.doc);
  const auto solver = junction::make_solver(p.model, *config, data.topology());
  junction::SimConfig sim;
  if (p.doc.contains("sim")) sim = io::sim_config_from_json(p.doc.at("sim"));
  const auto result =
      junction::run(sim, junction::Network::uniform(data, sim.cells, sim.length), *solver);

  if (!opt.ledger.empty()) {
    Sink ledger(opt.ledger);
    ledger.out() << "t,total_mass,boundary_in,boundary_out\n";
    for (const auto& r : result.ledger)
      ledger.out() << io::format_number(r.t) << "," << io::format_number(r.total_mass) << ","
                   << io::format_number(r.boundary_in) << "," << io::format_number(r.boundary_out)
                   << "\n";
  }
  Sink sink(opt.output);
  if (opt.format == "csv") {
    sink.out() << "t,arc,x,rho\n";
    for (const auto& snap : result.snapshots) {
      for (std::size_t l = 0; l < snap.rho.size(); ++l) {
        const auto& arc = result.final_state.arcs[l];
        const std::size_t cells = snap.rho[l].size();
        for (std::size_t k = 0; k < cells; ++k) {
          // Node at x = 0; incoming arcs on the negative axis.
          const double x = arc.orientation == junction::ArcOrientation::incoming
                               ? -(static_cast<double>(cells - k) - 0.5) * arc.dx
                               : (static_cast<double>(k) + 0.5) * arc.dx;
          sink.out() << io::format_number(snap.t) << "," << l + 1 << ","
                     << io::format_number(x) << "," << io::format_number(snap.rho[l][k]) << "\n";
        }
      }
    }
  } else {
    json out{{"t", result.t},
             {"steps", result.steps},
             {"solver", solver->name()},
             {"node_state", io::to_json(result.final_state.node_state())},
             {"max_mass_drift", result.max_mass_drift},
             {"max_node_imbalance", result.max_node_imbalance},
             {"snapshots", result.snapshots.size()}};
    write_json(sink.out(), out);
  }
  return 0;
}

std::uint64_t seed_from_env() {
  const char* env = std::getenv("JUNCTION_RIEMANN_SEED");
  if (env == nullptr || *env == '\0') return 20240611u;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    throw junction::InputError("JUNCTION_RIEMANN_SEED must be an unsigned integer");
  }
}

int cmd_reproduce(const Options& opt) {
  const auto rows = junction::reproduce_rows();
  bool ok = true;
  for (const auto& r : rows) ok = ok && r.pass;
  std::vector<junction::SweepSummary> sweeps;
  if (opt.sweep > 0) {
    sweeps = junction::property_sweep(opt.sweep, seed_from_env());
    for (const auto& s : sweeps) ok = ok && s.failures == 0;
  }
  Sink sink(opt.output);
  if (opt.format == "json") {
    json out = json::array();
    for (const auto& r : rows)
      out.push_back({{"id", r.id},
                     {"description", r.description},
                     {"expected", r.expected},
                     {"computed", r.computed},
                     {"error", r.error},
                     {"pass", r.pass}});
    json doc{{"rows", out}, {"pass", ok}};
    if (!sweeps.empty()) {
      json sw = json::array();
      for (const auto& s : sweeps)
        sw.push_back({{"property", s.property}, {"samples", s.samples}, {"failures", s.failures}});
      doc["sweep"] = sw;
    }
    write_json(sink.out(), doc);
  } else {
    sink.out() << "id,expected,computed,error,status\n";
    for (const auto& r : rows)
      sink.out() << r.id << ",\"" << r.expected << "\",\"" << r.computed << "\","
                 << io::format_number(r.error) << "," << (r.pass ? "PASS" : "FAIL") << "\n";
    for (const auto& s : sweeps)
      sink.out() << "sweep,\"" << s.property << "\"," << s.samples << "," << s.failures << ","
                 << (s.failures == 0 ? "PASS" : "FAIL") << "\n";
  }
  return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riemann solvers and entropy checks at network junctions"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("-i,--input", opt.input, "node description (JSON)");
    if (needs_input) in->required();
    sub->add_option("-o,--output", opt.output, "write here instead of stdout");
    sub->add_option("-f,--format", opt.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  auto* solve = app.add_subcommand("solve", "solve a Riemann problem at the node");
  add_common(solve, true);
  solve->add_option("-s,--solver", opt.solver, "override the solver name");

  auto* entropy = app.add_subcommand("entropy", "check the entropy conditions");
  add_common(entropy, true);
  entropy->add_option("-s,--solver", opt.solver, "solve first with this solver");
  entropy->add_option("-t,--tolerance", opt.tolerance, "nonnegativity tolerance");

  auto* classify = app.add_subcommand("classify", "classify a 2x2 equilibrium");
  add_common(classify, true);
  classify->add_option("-s,--solver", opt.solver, "solve first with this solver");

  auto* simulate = app.add_subcommand("simulate", "run the Godunov scheme on the node");
  add_common(simulate, true);
  simulate->add_option("-s,--solver", opt.solver, "override the solver name");
  simulate->add_option("--ledger", opt.ledger, "write the mass ledger CSV here");

  auto* reproduce = app.add_subcommand("reproduce", "check the pinned closed-form values");
  add_common(reproduce, false);
  reproduce->add_option("--sweep", opt.sweep, "also run randomized checks on N samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*solve) return cmd_solve(opt);
    if (*entropy) return cmd_entropy(opt);
    if (*classify) return cmd_classify(opt);
    if (*simulate) return cmd_simulate(opt);
    return cmd_reproduce(opt);
  } catch (const junction::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const junction::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return 1;
  }
}
