#pragma once

// JSON views of the analysis reports, used by the CLI's --json output.

#include <string>

#include <json.hpp>

#include "entroflow/circuit.hpp"
#include "entroflow/csv.hpp"
#include "entroflow/processing.hpp"
#include "entroflow/sweep.hpp"
#include "entroflow/transmission.hpp"

namespace entroflow {

inline json entropy_account_to_json(const EntropyAccount& a) {
  return json{{"entropy_change_nats", a.entropy_change_nats},
              {"mismatch_nats", a.mismatch_nats},
              {"residual_nats", a.residual_nats},
              {"entropy_flow_nats", a.entropy_flow_nats}};
}

inline json distribution_to_json(const Distribution& d) {
  json j = json::object();
  for (std::size_t i = 0; i < d.size(); ++i) j[d.labels()[i]] = d[i];
  return j;
}

inline json circuit_report_json(const CircuitFlowReport& report, const PhysicalContext& ctx) {
  json gates = json::array();
  for (const auto& g : report.gates) {
    json islands = json::array();
    for (std::size_t i = 0; i < g.island_partition.islands.size(); ++i) {
      json members = json::array();
      for (std::size_t idx : g.island_partition.islands[i]) {
        members.push_back(g.trace.initial.labels()[idx]);
      }
      islands.push_back(json{{"states", members}, {"mass", g.island_masses[i]}});
    }
    gates.push_back(json{{"name", g.gate_name},
                         {"type", g.gate_type},
                         {"initial", distribution_to_json(g.trace.initial)},
                         {"end", distribution_to_json(g.trace.end)},
                         {"islands", islands},
                         {"account", entropy_account_to_json(g.account)},
                         {"heat_J", heat_from_entropy_flow(g.account.entropy_flow_nats, ctx)}});
  }
  json groups = json::array();
  for (const auto& [name, total] : report.group_totals) {
    groups.push_back(json{{"name", name},
                          {"account", entropy_account_to_json(total)},
                          {"heat_J", heat_from_entropy_flow(total.entropy_flow_nats, ctx)}});
  }
  return json{{"temperature_K", ctx.temperature_K},
              {"gates", gates},
              {"groups", groups},
              {"grand_total", entropy_account_to_json(report.grand_total)},
              {"grand_total_heat_J", heat_from_entropy_flow(report.grand_total.entropy_flow_nats, ctx)},
              {"uniform_nand_bound_nats", report.uniform_nand_bound_nats},
              {"joint_entropy_nats", report.joint_entropy_nats},
              {"sum_of_gate_end_entropies_nats", report.marginal_entropy_sum_nats}};
}

/// One CSV row per stage: stage, device_count, info_nats_per_cycle,
/// heat_J_per_cycle, power_W, warnings.
inline std::string transmission_report_csv(const TransmissionReport& r) {
  CsvTable table;
  table.comments.push_back("temperature_K: " + format_double(r.temperature_K));
  table.comments.push_back("bandwidth_Hz: " + format_double(r.bandwidth_Hz));
  table.comments.push_back("reference_power_W: " + format_double(r.reference_power_W));
  table.header = {"stage", "device_count", "info_nats_per_cycle", "heat_J_per_cycle", "power_W",
                  "warnings"};
  for (const auto& s : r.stages) {
    std::string warnings;
    for (const auto& w : s.warnings) warnings += (warnings.empty() ? "" : "; ") + w;
    table.rows.push_back({stage_name(s.stage), std::to_string(s.device_count),
                          format_double(s.info_nats_per_cycle), format_double(s.heat_J_per_cycle),
                          format_double(s.power_W), warnings});
  }
  return csv_to_string(table);
}

inline std::string processing_report_csv(const ProcessingReport& r) {
  CsvTable table;
  table.comments.push_back("temperature_K: " + format_double(r.temperature_K));
  table.header = {"rate_bps", "flos_ce", "flos_lp", "flos_cd", "q_ce_W", "q_lp_W", "q_cd_W",
                  "q_ip_W"};
  table.rows.push_back({format_double(r.rate_bps), format_double(r.flos_ce),
                        format_double(r.flos_lp), format_double(r.flos_cd), format_double(r.q_ce_W),
                        format_double(r.q_lp_W), format_double(r.q_cd_W), format_double(r.total_W)});
  return csv_to_string(table);
}

inline json processing_report_json(const ProcessingReport& r) {
  return json{{"temperature_K", r.temperature_K},
              {"rate_bps", r.rate_bps},
              {"flos_per_second", json{{"CE", r.flos_ce}, {"LP", r.flos_lp}, {"CD", r.flos_cd}}},
              {"information_W", json{{"CE", r.info_ce_W}, {"LP", r.info_lp_W}, {"CD", r.info_cd_W}}},
              {"residual_W",
               json{{"CE", r.residuals.ce_W}, {"LP", r.residuals.lp_W}, {"CD", r.residuals.cd_W}}},
              {"modulation_W", json{{"CE", r.q_ce_W}, {"LP", r.q_lp_W}, {"CD", r.q_cd_W}}},
              {"total_W", r.total_W}};
}

inline json transmission_report_json(const TransmissionReport& r) {
  json stages = json::array();
  for (const auto& s : r.stages) {
    json entry{{"stage", stage_name(s.stage)},
               {"device_count", s.device_count},
               {"info_nats_per_cycle", s.info_nats_per_cycle},
               {"heat_J_per_cycle", s.heat_J_per_cycle},
               {"power_W", s.power_W},
               {"residual_W", s.residual_W},
               {"warnings", s.warnings}};
    if (s.output_power) entry["output_power"] = *s.output_power;
    stages.push_back(entry);
  }
  return json{{"temperature_K", r.temperature_K},
              {"bandwidth_Hz", r.bandwidth_Hz},
              {"reference_power_W", r.reference_power_W},
              {"stages", stages},
              {"total_W", r.total_W}};
}

inline json gap_report_json(const GapReport& r) {
  json gaps = json::array();
  for (const auto& g : r.gaps) {
    gaps.push_back(json{{"modulation", g.modulation},
                        {"theoretical_W", g.theoretical_W},
                        {"practical_W", g.practical_W},
                        {"gap_orders_of_magnitude", g.gap_orders},
                        {"note", g.note}});
  }
  return json{{"temperature_K", r.temperature_K},
              {"gaps", gaps},
              {"missing", r.missing},
              {"annotations", r.annotations}};
}

inline json sweep_result_json(const SweepResult& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json cells = json::object();
    cells[r.variable_name] = row.value;
    for (std::size_t i = 0; i < r.column_names.size(); ++i) cells[r.column_names[i]] = row.columns[i];
    rows.push_back(cells);
  }
  return json{{"scenario", r.scenario_name},
              {"scenario_hash", r.scenario_hash_hex},
              {"tool_version", r.tool_version},
              {"variable", r.variable_name},
              {"columns", r.column_names},
              {"rows", rows}};
}

}  // namespace entroflow
