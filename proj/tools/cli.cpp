#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "qrom/baselines.hpp"
#include "qrom/circuit.hpp"
#include "qrom/cost.hpp"
#include "qrom/qrom.hpp"
#include "qrom/simulator.hpp"
#include "qrom/table.hpp"

namespace qrom::cli {

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("failed writing '" + path + "'");
}

LookupTable load_table(const std::string& path) {
  std::string text = read_file(path);
  try {
    return parse_table(text);
  } catch (const TableParseError& e) {
    throw IoError(path + ": " + e.what());
  }
}

void print_estimate(std::ostream& out, const Circuit& circuit) {
  ResourceEstimate est = count_resources(circuit);
  out << "toffoli=" << est.toffoli << '\n'
      << "temp_and=" << est.temp_and << '\n'
      << "cswap=" << est.cswap << '\n'
      << "cnot=" << est.cnot << '\n'
      << "x=" << est.x << '\n';
  for (Role role : {Role::address_q, Role::address_r, Role::output, Role::dirty,
                    Role::work, Role::temp}) {
    std::size_t n = 0;
    for (const auto& r : circuit.registers()) {
      if (r.role == role) n += r.size;
    }
    out << "qubits_" << role_name(role) << '=' << n << '\n';
  }
  out << "clean_qubits=" << est.clean_qubits << '\n'
      << "dirty_qubits=" << est.dirty_qubits << '\n'
      << "total_qubits=" << est.total_qubits << '\n';
}

struct BuildArgs {
  std::string table;
  std::uint64_t lambda = 0;
  std::optional<std::size_t> mu;
  std::string out;
};

int cmd_build(const BuildArgs& a, std::ostream& out) {
  LookupTable table = load_table(a.table);
  QromPlan plan =
      plan_qrom(table.size(), table.bit_width(), a.lambda, a.mu.value_or(table.bit_width()));
  Circuit circuit = build_qrom(table, plan);
  write_file(a.out, serialize_circuit(circuit));
  print_estimate(out, circuit);
  return kOk;
}

struct VerifyArgs {
  std::string table;
  std::uint64_t lambda = 0;
  std::optional<std::size_t> mu;
  std::size_t trials = 10;
  std::uint64_t seed = 0;
  std::string baseline;
  std::string circuit;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  LookupTable table = load_table(a.table);
  std::optional<Circuit> circuit;
  if (!a.circuit.empty()) {
    std::string text = read_file(a.circuit);
    try {
      circuit = parse_circuit(text);
    } catch (const CircuitError& e) {
      throw IoError(a.circuit + ": " + e.what());
    }
  } else if (a.baseline == "plain") {
    circuit = build_plain_qrom(table);
  } else if (a.baseline == "selectswap") {
    circuit = build_selectswap_dirty(table, a.lambda);
  } else {
    QromPlan plan = plan_qrom(table.size(), table.bit_width(), a.lambda,
                              a.mu.value_or(table.bit_width()));
    circuit = build_qrom(table, plan);
  }

  VerificationReport report;
  try {
    report = verify_lookup(*circuit, std::span<const LookupTable>(&table, 1),
                           a.trials, a.seed);
  } catch (const std::invalid_argument& e) {
    throw PlanError(std::string("circuit does not fit the table: ") + e.what());
  }
  out << "cases_run=" << report.cases_run << '\n'
      << "failures=" << report.failures.size() << '\n';
  if (!report.passed()) {
    out << "first_failure=" << describe(report.failures.front()) << '\n';
    return kVerificationFailed;
  }
  out << "status=verified\n";
  return kOk;
}

struct EstimateArgs {
  std::uint64_t n = 0;
  std::uint64_t b = 0;
  std::optional<std::uint64_t> lambda;
  std::optional<std::uint64_t> mu;
  std::optional<std::uint64_t> budget;
  bool all_methods = false;
};

void print_cost_table(std::ostream& out, const std::vector<CostBreakdown>& rows) {
  out << std::left << std::setw(24) << "method" << std::right << std::setw(14)
      << "toffoli" << std::setw(14) << "select" << std::setw(14) << "copy"
      << std::setw(10) << "dirty" << std::setw(12) << "clean_work" << '\n';
  for (const auto& c : rows) {
    out << std::left << std::setw(24) << c.formula_id << std::right
        << std::setw(14) << c.toffoli_total << std::setw(14) << c.select_toffoli
        << std::setw(14) << c.copy_toffoli << std::setw(10) << c.dirty_qubits
        << std::setw(12) << c.clean_work_qubits << '\n';
  }
}

int cmd_estimate(const EstimateArgs& a, std::ostream& out) {
  std::vector<CostBreakdown> rows;
  if (a.budget) {
    if (a.lambda || a.mu) {
      throw PlanError("--budget cannot be combined with --lambda/--mu");
    }
    if (a.n < 4) throw PlanError("N must be at least 4 for optimization");
    OptimizationResult opt = optimize_parameters(a.n, a.b, *a.budget);
    out << "feasible=" << (opt.feasible ? 1 : 0) << '\n';
    if (opt.feasible) {
      out << "lambda=" << opt.lambda << '\n' << "mu=" << opt.mu << '\n';
    } else {
      out << "fallback=plain\n";
    }
    out << "toffoli=" << opt.cost.toffoli_total << '\n';
    rows.push_back(opt.cost);
    CostBreakdown berry = best_berry(a.n, a.b, *a.budget);
    berry.formula_id = "berry_best";
    rows.push_back(berry);
    print_cost_table(out, rows);
    return kOk;
  }
  if (!a.lambda || !a.mu) {
    throw PlanError("give either --lambda and --mu, or --budget");
  }
  const std::uint64_t l = *a.lambda;
  rows.push_back(cost_bit_packet(a.n, a.b, l, *a.mu));
  if (a.all_methods) rows.push_back(cost_select_copy(a.n, a.b, l));
  rows.push_back(cost_prior_art(PriorArt::berry, a.n, a.b, l));
  if (a.all_methods) {
    rows.push_back(cost_prior_art(PriorArt::low_dirty, a.n, a.b, l));
    rows.push_back(cost_prior_art(PriorArt::low_clean, a.n, a.b, l));
    rows.push_back(cost_prior_art(PriorArt::plain, a.n, a.b, l));
    rows.push_back(cost_uncompute(UncomputeKind::select_copy, a.n, l));
    rows.push_back(cost_uncompute(UncomputeKind::prior, a.n, l));
  }
  print_cost_table(out, rows);
  return kOk;
}

struct SweepArgs {
  std::uint64_t b = 0;
  std::uint64_t budget = 0;
  std::uint64_t n_min = 0;
  std::uint64_t n_max = 0;
  std::size_t points = 0;
  std::string out;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  if (a.points == 0) throw PlanError("--points must be at least 1");
  if (a.n_min < 4 || a.n_max < a.n_min) {
    throw PlanError("need 4 <= n-min <= n-max");
  }
  if (a.b == 0 || a.b > 64) throw PlanError("b must be in [1, 64]");
  auto grid = geometric_grid(a.n_min, a.n_max, a.points);
  std::string csv = format_sweep_csv(improvement_sweep(a.b, a.budget, grid));
  if (a.out.empty()) {
    out << csv;
  } else {
    write_file(a.out, csv);
    out << "rows=" << grid.size() << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Synthesize, verify and cost table-lookup (QROM) circuits"};
  app.name("qromctl");
  app.require_subcommand(1);

  BuildArgs build;
  auto* build_cmd = app.add_subcommand("build", "Build a packet QROM circuit");
  build_cmd->add_option("--table", build.table, "Table file")->required();
  build_cmd->add_option("--lambda", build.lambda, "Copy depth (power of 2)")->required();
  build_cmd->add_option("--mu", build.mu, "Bits per packet (default b)");
  build_cmd->add_option("--out", build.out, "Circuit output path")->required();

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Verify a circuit by simulation");
  verify_cmd->add_option("--table", verify.table, "Table file")->required();
  verify_cmd->add_option("--lambda", verify.lambda, "Copy depth (power of 2)");
  verify_cmd->add_option("--mu", verify.mu, "Bits per packet (default b)");
  verify_cmd->add_option("--trials", verify.trials, "Dirty patterns per address");
  verify_cmd->add_option("--seed", verify.seed, "Seed for dirty patterns");
  verify_cmd->add_option("--baseline", verify.baseline, "Verify a baseline instead")
      ->check(CLI::IsMember({"selectswap", "plain"}));
  verify_cmd->add_option("--circuit", verify.circuit,
                         "Verify a serialized circuit file instead of building");

  EstimateArgs estimate;
  auto* estimate_cmd = app.add_subcommand("estimate", "Evaluate cost formulas");
  estimate_cmd->add_option("--n", estimate.n, "Number of entries")->required();
  estimate_cmd->add_option("--b", estimate.b, "Bits per entry")->required();
  estimate_cmd->add_option("--lambda", estimate.lambda, "Copy depth");
  estimate_cmd->add_option("--mu", estimate.mu, "Bits per packet");
  estimate_cmd->add_option("--budget", estimate.budget, "Dirty qubit budget");
  estimate_cmd->add_flag("--all-methods", estimate.all_methods,
                         "Print every construction");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Improvement-factor sweep as CSV");
  sweep_cmd->add_option("--b", sweep.b, "Bits per entry")->required();
  sweep_cmd->add_option("--budget", sweep.budget, "Dirty qubit budget")->required();
  sweep_cmd->add_option("--n-min", sweep.n_min, "Smallest N")->required();
  sweep_cmd->add_option("--n-max", sweep.n_max, "Largest N")->required();
  sweep_cmd->add_option("--points", sweep.points, "Grid points")->required();
  sweep_cmd->add_option("--out", sweep.out, "CSV path (stdout if omitted)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidParameters;
  }

  try {
    if (*build_cmd) return cmd_build(build, out);
    if (*verify_cmd) return cmd_verify(verify, out);
    if (*estimate_cmd) return cmd_estimate(estimate, out);
    if (*sweep_cmd) return cmd_sweep(sweep, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoOrParse;
  } catch (const PlanError& e) {
    err << "invalid parameters: " << e.what() << '\n';
    return kInvalidParameters;
  } catch (const std::invalid_argument& e) {
    err << "invalid parameters: " << e.what() << '\n';
    return kInvalidParameters;
  }
  return kInvalidParameters;
}

}  // namespace qrom::cli
