// Command-line interface for the dissipation models.
//
//   entroflow limits [--temperature K]
//   entroflow circuit analyze <netlist> [--input uniform|<dist.json>]
//                             [--residuals <json>] [--json]
//   entroflow processing --scenario <file> [--rate R] [--json] [--csv <path>]
//   entroflow transmission --scenario <file> [--per-cycle] [--json] [--csv <path>]
//   entroflow sweep --scenario <file> --out <csv> [--json-out <file>] [--kt-columns]
//   entroflow compare --scenario <file> [--json]
//   entroflow gnuplot --scenario <file> [--csv <path>]
//
// Exit codes: 0 success, 2 validation error, 3 I/O error.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "entroflow/circuit.hpp"
#include "entroflow/numeric.hpp"
#include "entroflow/report.hpp"
#include "entroflow/scenario.hpp"
#include "entroflow/sweep.hpp"
#include "entroflow/version.hpp"

namespace {

using namespace entroflow;

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open file: " + path);
  std::ostringstream oss;
  oss << in.rdbuf();
  if (in.bad()) throw io_error("error reading file: " + path);
  return oss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open file for writing: " + path);
  out << content;
  if (!out) throw io_error("error writing file: " + path);
}

void run_limits(double temperature) {
  PhysicalContext ctx(temperature);
  std::cout << "temperature: " << format_double(ctx.temperature_K) << " K\n";
  std::cout << "bit erasure floor (kT ln 2): " << format_double(landauer_limit(ctx)) << " J\n";
  std::cout << "per-FLO per-gate floor ((3/4) ln 3 kT): "
            << format_double(nand_network_energy_bound(1.0, 1.0, ctx)) << " J\n";
  std::cout << "per-FLO per-gate entropy: " << format_double(flo_gate_entropy_nats())
            << " nats = " << format_double(flo_gate_entropy_nats() / std::numbers::ln2)
            << " bits (identical energy under either unit, the bit value times kT ln 2)\n";
}

Distribution load_input_distribution(const CircuitNetlist& c, const std::string& source) {
  if (source == "uniform") return joint_uniform_input(c);
  const std::string text = read_file(source);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw validation_error(source + ": JSON parse error: " + e.what());
  }
  if (!j.is_object()) {
    throw validation_error(source + ": expected a JSON object mapping joint input labels to probabilities");
  }
  const auto labels = joint_input_labels(c);
  std::vector<double> probs(labels.size(), 0.0);
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == key) {
        probs[i] = value.get<double>();
        known = true;
        break;
      }
    }
    if (!known) throw validation_error(source + ": unknown joint input state '" + key + "'");
  }
  return Distribution(labels, std::move(probs));
}

std::map<std::string, double> load_residuals(const std::string& path) {
  std::map<std::string, double> residuals;
  if (path.empty()) return residuals;
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw validation_error(path + ": JSON parse error: " + e.what());
  }
  if (!j.is_object()) {
    throw validation_error(path + ": expected a JSON object mapping gate names to residual nats");
  }
  for (const auto& [key, value] : j.items()) residuals[key] = value.get<double>();
  return residuals;
}

void run_circuit_analyze(const std::string& netlist_path, const std::string& input_spec,
                         const std::string& residuals_path, double temperature, bool as_json) {
  const CircuitNetlist c = parse_netlist(read_file(netlist_path));
  const Distribution input = load_input_distribution(c, input_spec);
  const PhysicalContext ctx(temperature);
  const CircuitFlowReport report = circuit_entropy_flow(c, input, {}, load_residuals(residuals_path));

  if (as_json) {
    std::cout << circuit_report_json(report, ctx).dump(2) << "\n";
    return;
  }
  std::cout << "circuit: " << c.gates.size() << " gates, " << c.primary_inputs.size()
            << " primary inputs, T = " << format_double(temperature) << " K\n";
  for (const auto& g : report.gates) {
    std::cout << "  " << g.gate_name << " (" << g.gate_type << ")"
              << "  dS = " << format_double(g.account.entropy_change_nats)
              << "  mismatch = " << format_double(g.account.mismatch_nats)
              << "  residual = " << format_double(g.account.residual_nats)
              << "  flow = " << format_double(g.account.entropy_flow_nats) << " nats"
              << "  heat = " << format_double(heat_from_entropy_flow(g.account.entropy_flow_nats, ctx))
              << " J\n";
  }
  for (const auto& [name, acc] : report.group_totals) {
    std::cout << "  group " << name << ": flow = " << format_double(acc.entropy_flow_nats)
              << " nats\n";
  }
  std::cout << "total: flow = " << format_double(report.grand_total.entropy_flow_nats)
            << " nats, heat = "
            << format_double(heat_from_entropy_flow(report.grand_total.entropy_flow_nats, ctx))
            << " J\n";
}

void run_processing(const std::string& scenario_path, double rate_override, bool has_rate,
                    bool as_json, const std::string& csv_out) {
  const Scenario s = load_scenario(scenario_path);
  double rate = 0.0;
  if (has_rate) {
    rate = rate_override;
  } else if (s.rate_model) {
    rate = rate_bps(*s.rate_model, s.system);
  } else {
    throw validation_error("scenario has no rate_model; pass --rate");
  }
  const ProcessingReport rep =
      processing_dissipation(s.system, rate, s.processing_residuals, s.context());
  if (!csv_out.empty()) write_file(csv_out, processing_report_csv(rep));
  if (as_json) {
    std::cout << processing_report_json(rep).dump(2) << "\n";
    return;
  }
  std::cout << "rate: " << format_double(rep.rate_bps) << " bit/s, T = "
            << format_double(rep.temperature_K) << " K\n";
  std::cout << "  CE: " << format_double(rep.flos_ce) << " FLO/s -> " << format_double(rep.q_ce_W)
            << " W\n";
  std::cout << "  LP: " << format_double(rep.flos_lp) << " FLO/s -> " << format_double(rep.q_lp_W)
            << " W\n";
  std::cout << "  CD: " << format_double(rep.flos_cd) << " FLO/s -> " << format_double(rep.q_cd_W)
            << " W\n";
  std::cout << "total: " << format_double(rep.total_W) << " W\n";
}

void run_transmission(const std::string& scenario_path, bool per_cycle, bool as_json,
                      const std::string& csv_out) {
  const Scenario s = load_scenario(scenario_path);
  if (s.stages.empty()) throw validation_error("scenario has no transmission stages");
  const TransmissionReport rep =
      per_cycle ? per_cycle_report(s)
                : transmission_total(s.stages, s.system.bandwidth_Hz, s.context(),
                                     s.stage_residuals_W);
  if (!csv_out.empty()) write_file(csv_out, transmission_report_csv(rep));
  if (as_json) {
    std::cout << transmission_report_json(rep).dump(2) << "\n";
    return;
  }
  std::cout << "bandwidth: " << format_double(rep.bandwidth_Hz) << " Hz, T = "
            << format_double(rep.temperature_K) << " K, reference power = "
            << format_double(rep.reference_power_W) << " W\n";
  for (const auto& st : rep.stages) {
    std::cout << "  " << stage_name(st.stage) << " x" << st.device_count << ": "
              << format_double(st.info_nats_per_cycle) << " nats/cycle, "
              << format_double(st.heat_J_per_cycle) << " J/cycle, " << format_double(st.power_W)
              << " W";
    for (const auto& w : st.warnings) std::cout << "  [warning: " << w << "]";
    std::cout << "\n";
  }
  if (!per_cycle) std::cout << "total: " << format_double(rep.total_W) << " W\n";
}

void run_sweep_cmd(const std::string& scenario_path, const std::string& out_csv,
                   const std::string& out_json, bool kt_columns) {
  const Scenario s = load_scenario(scenario_path);
  const SweepResult result = run_sweep(s, kt_columns);
  write_file(out_csv, sweep_to_csv(result));
  if (!out_json.empty()) write_file(out_json, sweep_result_json(result).dump(2) + "\n");
  std::cout << "wrote " << result.rows.size() << " rows to " << out_csv << "\n";
}

void run_compare(const std::string& scenario_path, bool as_json) {
  const Scenario s = load_scenario(scenario_path);
  const GapReport rep = compare_baselines(s);
  if (as_json) {
    std::cout << gap_report_json(rep).dump(2) << "\n";
    return;
  }
  std::cout << "gap report at T = " << format_double(rep.temperature_K) << " K\n";
  for (const auto& g : rep.gaps) {
    std::cout << "  " << g.modulation << ": floor " << format_double(g.theoretical_W)
              << " W, practical " << format_double(g.practical_W) << " W, gap "
              << format_double(g.gap_orders) << " orders";
    if (!g.note.empty()) std::cout << "  (" << g.note << ")";
    std::cout << "\n";
  }
  for (const auto& m : rep.missing) std::cout << "  " << m << "\n";
  for (const auto& a : rep.annotations) std::cout << "  annotation: " << a << "\n";
}

void run_gnuplot(const std::string& scenario_path, const std::string& csv_path) {
  const Scenario s = load_scenario(scenario_path);
  if (!s.sweep) throw validation_error("scenario has no sweep section to plot");
  SweepResult r = run_sweep(s);
  const std::string data = csv_path.empty() ? s.name + ".csv" : csv_path;
  std::cout << "# gnuplot script for the '" << s.name << "' sweep\n";
  std::cout << "set datafile separator ','\n";
  std::cout << "set key left top\n";
  std::cout << "set logscale y\n";
  std::cout << "set xlabel '" << r.variable_name << "'\n";
  std::cout << "set ylabel 'dissipation [W]'\n";
  std::cout << "plot \\\n";
  for (std::size_t i = 0; i < r.column_names.size(); ++i) {
    if (r.column_names[i] == "rate_bps") continue;
    std::cout << "  '" << data << "' using 1:" << (i + 2) << " with linespoints title '"
              << r.column_names[i] << "'";
    std::cout << (i + 1 < r.column_names.size() ? ", \\\n" : "\n");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropy-flow dissipation models for communication systems"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // limits
  double temperature = 300.0;
  CLI::App* limits = app.add_subcommand("limits", "print the erasure and per-FLO energy floors");
  limits->add_option("--temperature", temperature, "temperature in kelvin")->capture_default_str();

  // circuit analyze
  CLI::App* circuit = app.add_subcommand("circuit", "stochastic logic circuit analysis");
  circuit->require_subcommand(1);
  CLI::App* analyze = circuit->add_subcommand("analyze", "entropy-flow report for a netlist");
  std::string netlist_path;
  std::string input_spec = "uniform";
  std::string residuals_path;
  bool circuit_json = false;
  double circuit_temperature = 300.0;
  analyze->add_option("netlist", netlist_path, "netlist file")->required();
  analyze->add_option("--input", input_spec, "'uniform' or a JSON file of joint input probabilities")
      ->capture_default_str();
  analyze->add_option("--residuals", residuals_path,
                      "JSON file mapping gate names to residual entropy [nats]");
  analyze->add_option("--temperature", circuit_temperature, "temperature in kelvin")
      ->capture_default_str();
  analyze->add_flag("--json", circuit_json, "emit the report as JSON");

  // processing
  CLI::App* processing = app.add_subcommand("processing", "digital-processing dissipation report");
  std::string processing_scenario;
  double rate_override = 0.0;
  bool processing_json = false;
  std::string processing_csv;
  processing->add_option("--scenario", processing_scenario, "scenario JSON file")->required();
  CLI::Option* rate_opt =
      processing->add_option("--rate", rate_override, "override the transmission rate [bit/s]");
  processing->add_flag("--json", processing_json, "emit the report as JSON");
  processing->add_option("--csv", processing_csv, "also write the report as a CSV row");

  // transmission
  CLI::App* transmission =
      app.add_subcommand("transmission", "analog-transmission dissipation report");
  std::string transmission_scenario;
  std::string transmission_csv;
  bool per_cycle = false;
  bool transmission_json = false;
  transmission->add_option("--scenario", transmission_scenario, "scenario JSON file")->required();
  transmission->add_flag("--per-cycle", per_cycle, "rank stages by per-cycle per-device heat");
  transmission->add_flag("--json", transmission_json, "emit the report as JSON");
  transmission->add_option("--csv", transmission_csv, "also write per-stage CSV rows");

  // sweep
  CLI::App* sweep = app.add_subcommand("sweep", "evaluate the models over the scenario's grid");
  std::string sweep_scenario, sweep_out, sweep_json_out;
  bool kt_columns = false;
  sweep->add_option("--scenario", sweep_scenario, "scenario JSON file")->required();
  sweep->add_option("--out", sweep_out, "output CSV path")->required();
  sweep->add_option("--json-out", sweep_json_out, "also write the result as JSON");
  sweep->add_flag("--kt-columns", kt_columns, "append scale-free columns in units of kT*B");

  // compare
  CLI::App* compare = app.add_subcommand("compare", "baseline gap report");
  std::string compare_scenario;
  bool compare_json = false;
  compare->add_option("--scenario", compare_scenario, "scenario JSON file")->required();
  compare->add_flag("--json", compare_json, "emit the report as JSON");

  // gnuplot
  CLI::App* gnuplot = app.add_subcommand("gnuplot", "emit a gnuplot script for a sweep CSV");
  std::string gnuplot_scenario, gnuplot_csv;
  gnuplot->add_option("--scenario", gnuplot_scenario, "scenario JSON file")->required();
  gnuplot->add_option("--csv", gnuplot_csv, "CSV path referenced by the script");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*limits) run_limits(temperature);
    if (*analyze) {
      run_circuit_analyze(netlist_path, input_spec, residuals_path, circuit_temperature,
                          circuit_json);
    }
    if (*processing) {
      run_processing(processing_scenario, rate_override, rate_opt->count() > 0, processing_json,
                     processing_csv);
    }
    if (*transmission) {
      run_transmission(transmission_scenario, per_cycle, transmission_json, transmission_csv);
    }
    if (*sweep) run_sweep_cmd(sweep_scenario, sweep_out, sweep_json_out, kt_columns);
    if (*compare) run_compare(compare_scenario, compare_json);
    if (*gnuplot) run_gnuplot(gnuplot_scenario, gnuplot_csv);
  } catch (const io_error& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
