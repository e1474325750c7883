#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

#include "entroflow/report.hpp"
#include "entroflow/scenario.hpp"
#include "entroflow/sweep.hpp"

using namespace entroflow;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::string scenario_path(const std::string& name) {
  return std::string(ENTROFLOW_SCENARIO_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream oss;
  oss << in.rdbuf();
  return oss.str();
}

std::size_t column_of(const SweepResult& r, const std::string& name) {
  for (std::size_t i = 0; i < r.column_names.size(); ++i) {
    if (r.column_names[i] == name) return i;
  }
  FAIL("missing column " + name);
  return 0;
}

}  // namespace

TEST_CASE("shipped scenarios load and validate") {
  for (const char* name : {"table1.json", "fig5.json", "fig6.json", "fig7.json", "fig8.json",
                           "fig9.json"}) {
    Scenario s = load_scenario(scenario_path(name));
    CHECK_FALSE(s.name.empty());
    CHECK_FALSE(s.source_hash_hex.empty());
  }
}

TEST_CASE("scenario JSON -> model -> JSON keeps every value exactly") {
  for (const char* name : {"table1.json", "fig5.json", "fig6.json", "fig9.json"}) {
    const std::string text = slurp(scenario_path(name));
    Scenario first = parse_scenario(text, name);
    const json round1 = scenario_to_json(first);
    Scenario second = parse_scenario(round1.dump(), name);
    const json round2 = scenario_to_json(second);
    REQUIRE(round1 == round2);  // nlohmann compares doubles with ==
    CHECK(first.system.noise_density_W_per_Hz == second.system.noise_density_W_per_Hz);
    CHECK(first.temperature_K == second.temperature_K);
  }
}

TEST_CASE("scenario parsing rejects malformed input") {
  CHECK_THROWS_AS(parse_scenario("{ not json"), validation_error);
  CHECK_THROWS_AS(parse_scenario("{}"), validation_error);  // missing system
  const std::string zero_antennas = R"({
    "system": {"antennas": 0, "users": 1, "bandwidth_Hz": 1e6,
               "coherence_bandwidth_Hz": 1e6, "coherence_time_s": 1e-3,
               "rf_chains": 1, "transistors": 1e6, "quantization_bits": 8,
               "transmit_power_W": 1, "noise_density_W_per_Hz": 1e-20}
  })";
  CHECK_THROWS_WITH(parse_scenario(zero_antennas),
                    Catch::Matchers::ContainsSubstring("antennas"));
  // strictly increasing grid
  const std::string bad_grid = R"({
    "system": {"antennas": 2, "users": 1, "bandwidth_Hz": 1e6,
               "coherence_bandwidth_Hz": 1e6, "coherence_time_s": 1e-3,
               "rf_chains": 1, "transistors": 1e6, "quantization_bits": 8,
               "transmit_power_W": 1, "noise_density_W_per_Hz": 1e-20},
    "sweep": {"variable": "bandwidth", "grid": [2e6, 1e6]}
  })";
  CHECK_THROWS_WITH(parse_scenario(bad_grid),
                    Catch::Matchers::ContainsSubstring("strictly increasing"));
  CHECK_THROWS_AS(load_scenario(scenario_path("does_not_exist.json")), io_error);
}

TEST_CASE("fig5 sweep: strictly increasing curves with LP > CE > CD ordering") {
  Scenario s = load_scenario(scenario_path("fig5.json"));
  SweepResult r = run_sweep(s);
  REQUIRE(r.rows.size() == 8);
  const std::size_t ce = column_of(r, "q_ce_W");
  const std::size_t lp = column_of(r, "q_lp_W");
  const std::size_t cd = column_of(r, "q_cd_W");
  const std::size_t ip = column_of(r, "q_ip_W");
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i].columns;
    CHECK(row[lp] > row[ce]);
    CHECK(row[ce] > row[cd]);
    CHECK_THAT(row[ip], WithinRel(row[ce] + row[lp] + row[cd], 1e-12));
    if (i > 0) {
      CHECK(row[ce] > r.rows[i - 1].columns[ce]);
      CHECK(row[lp] > r.rows[i - 1].columns[lp]);
      CHECK(row[cd] > r.rows[i - 1].columns[cd]);
    }
  }
}

TEST_CASE("fig6 sweep: total has exactly one interior forward-difference sign change") {
  Scenario s = load_scenario(scenario_path("fig6.json"));
  SweepResult r = run_sweep(s);
  REQUIRE(r.rows.size() == 39);
  const std::size_t ip = column_of(r, "q_ip_W");
  int sign_changes = 0;
  int prev_sign = 0;
  std::size_t argmin = 0;
  for (std::size_t i = 0; i + 1 < r.rows.size(); ++i) {
    const double diff = r.rows[i + 1].columns[ip] - r.rows[i].columns[ip];
    REQUIRE(diff != 0.0);
    const int sign = diff > 0.0 ? 1 : -1;
    if (prev_sign != 0 && sign != prev_sign) ++sign_changes;
    prev_sign = sign;
    if (r.rows[i + 1].columns[ip] < r.rows[argmin].columns[ip]) argmin = i + 1;
  }
  CHECK(sign_changes == 1);
  // calibrated to bottom out at K = 19
  CHECK(r.rows[argmin].value == 19.0);
}

TEST_CASE("fig8 sweep: phase shifting largest, mixing least, at every grid point") {
  Scenario s = load_scenario(scenario_path("fig8.json"));
  SweepResult r = run_sweep(s);
  const std::size_t fil = column_of(r, "q_filter_W");
  const std::size_t amp = column_of(r, "q_amplifier_W");
  const std::size_t adc = column_of(r, "q_adc_W");
  const std::size_t mix = column_of(r, "q_mixer_W");
  const std::size_t shf = column_of(r, "q_phase_shifter_W");
  const std::size_t it = column_of(r, "q_it_W");
  for (const auto& row : r.rows) {
    const auto& c = row.columns;
    CHECK(c[shf] > c[fil]);
    CHECK(c[shf] > c[amp]);
    CHECK(c[shf] > c[adc]);
    CHECK(c[mix] < c[fil]);
    CHECK(c[mix] < c[amp]);
    CHECK(c[mix] < c[adc]);
    CHECK_THAT(c[it], WithinRel(c[fil] + c[amp] + c[adc] + c[mix] + c[shf], 1e-12));
  }
}

TEST_CASE("fig7 per-cycle report: filtering strictly largest, amplification minimal") {
  Scenario s = load_scenario(scenario_path("fig7.json"));
  TransmissionReport rep = per_cycle_report(s);
  REQUIRE(rep.stages.size() == 5);
  // sorted descending by per-cycle heat
  for (std::size_t i = 1; i < rep.stages.size(); ++i) {
    CHECK(rep.stages[i - 1].heat_J_per_cycle >= rep.stages[i].heat_J_per_cycle);
  }
  CHECK(rep.stages.front().stage == StageKind::Filter);
  double amp_heat = 0.0;
  for (const auto& st : rep.stages) {
    if (st.stage == StageKind::Amplifier) amp_heat = st.heat_J_per_cycle;
  }
  for (const auto& st : rep.stages) {
    if (st.stage != StageKind::Filter) CHECK(rep.stages.front().heat_J_per_cycle > st.heat_J_per_cycle);
    CHECK(amp_heat <= st.heat_J_per_cycle);
  }
  // ADC entry at 8 bits and unit power: kT * 6.787630769373562 at 300 K
  for (const auto& st : rep.stages) {
    if (st.stage == StageKind::Adc) CHECK_THAT(st.heat_J_per_cycle, WithinRel(2.8114006902314517e-20, 1e-9));
    if (st.stage == StageKind::Amplifier || st.stage == StageKind::Mixer ||
        st.stage == StageKind::PhaseShifter) {
      CHECK_THAT(st.info_nats_per_cycle, WithinAbs(1.4189385332046727, 1e-12));
    }
  }
  // per-cycle report requires all five stages
  Scenario missing = s;
  missing.stages.pop_back();
  CHECK_THROWS_WITH(per_cycle_report(missing), Catch::Matchers::ContainsSubstring("missing"));
}

TEST_CASE("sweep CSV round-trips bit for bit") {
  Scenario s = load_scenario(scenario_path("fig5.json"));
  SweepResult r = run_sweep(s);
  const std::string csv = sweep_to_csv(r);
  SweepResult back = sweep_from_csv(csv);
  REQUIRE(back.rows.size() == r.rows.size());
  REQUIRE(back.column_names == r.column_names);
  CHECK(back.scenario_hash_hex == r.scenario_hash_hex);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    CHECK(back.rows[i].value == r.rows[i].value);
    for (std::size_t j = 0; j < r.rows[i].columns.size(); ++j) {
      CHECK(back.rows[i].columns[j] == r.rows[i].columns[j]);
    }
  }
  // identical scenario bytes -> identical CSV bytes
  SweepResult r2 = run_sweep(load_scenario(scenario_path("fig5.json")));
  CHECK(sweep_to_csv(r2) == csv);
}

TEST_CASE("CSV quoting survives commas, quotes and newlines") {
  CsvTable t;
  t.comments = {"scenario: quoted \"name\", with commas"};
  t.header = {"plain", "with,comma", "with\"quote"};
  t.rows = {{"a", "b,b", "c\"c\nnext"}};
  std::string text = csv_to_string(t);
  std::istringstream is(text);
  CsvTable back = read_csv(is);
  REQUIRE(back.header == t.header);
  REQUIRE(back.rows == t.rows);
  REQUIRE(back.comments == t.comments);
}

TEST_CASE("sweep errors are annotated with the grid point") {
  Scenario s = load_scenario(scenario_path("fig6.json"));
  s.sweep->grid = {2, 3, 4.5};
  CHECK_THROWS_WITH(run_sweep(s), Catch::Matchers::ContainsSubstring("users = 4.5"));

  Scenario no_sweep = load_scenario(scenario_path("table1.json"));
  CHECK_THROWS_WITH(run_sweep(no_sweep), Catch::Matchers::ContainsSubstring("no sweep"));
}

TEST_CASE("quantization-bit sweeps retune the ADC step") {
  Scenario s = load_scenario(scenario_path("fig8.json"));
  s.sweep->variable = SweepVariable::QuantizationBits;
  s.sweep->grid = {4, 8, 12};
  SweepResult r = run_sweep(s);
  const std::size_t adc = column_of(r, "q_adc_W");
  // more bits -> finer step -> more information -> more dissipation
  CHECK(r.rows[0].columns[adc] < r.rows[1].columns[adc]);
  CHECK(r.rows[1].columns[adc] < r.rows[2].columns[adc]);
  // other stages unaffected
  const std::size_t mix = column_of(r, "q_mixer_W");
  CHECK(r.rows[0].columns[mix] == r.rows[2].columns[mix]);
}

TEST_CASE("baseline comparison computes gaps and flags missing entries") {
  Scenario s = load_scenario(scenario_path("fig9.json"));
  GapReport rep = compare_baselines(s);
  REQUIRE_FALSE(rep.gaps.empty());

  // synthetic 1000x baseline gives exactly three orders of magnitude
  Scenario synth = s;
  synth.baselines.clear();
  const PhysicalContext ctx = synth.context();
  const double rate = rate_bps(*synth.rate_model, synth.system);
  const ProcessingReport pr = processing_dissipation(synth.system, rate, {}, ctx);
  synth.baselines["CE"] = Baseline{1000.0 * pr.info_ce_W, "W", "synthetic"};
  GapReport synth_rep = compare_baselines(synth);
  bool found_ce = false;
  for (const auto& g : synth_rep.gaps) {
    if (g.modulation == "CE") {
      found_ce = true;
      CHECK_THAT(g.gap_orders, WithinAbs(3.0, 1e-9));
    }
  }
  REQUIRE(found_ce);
  // everything else has no baseline and is listed as missing
  bool lp_missing = false;
  for (const auto& m : synth_rep.missing) {
    if (m.find("LP") != std::string::npos) lp_missing = true;
  }
  CHECK(lp_missing);

  // equal baseline -> gap 0
  synth.baselines["CE"] = Baseline{pr.info_ce_W, "W", "synthetic"};
  for (const auto& g : compare_baselines(synth).gaps) {
    if (g.modulation == "CE") CHECK_THAT(g.gap_orders, WithinAbs(0.0, 1e-12));
  }

  // the claims appear only as annotations
  REQUIRE_FALSE(rep.annotations.empty());
  for (const auto& a : rep.annotations) {
    CHECK(a.find("not computed") != std::string::npos);
  }
}

TEST_CASE("J_per_FLO baselines convert through the FLO rate") {
  Scenario s = load_scenario(scenario_path("fig9.json"));
  const PhysicalContext ctx = s.context();
  const double rate = rate_bps(*s.rate_model, s.system);
  const ProcessingReport pr = processing_dissipation(s.system, rate, {}, ctx);
  GapReport rep = compare_baselines(s);
  for (const auto& g : rep.gaps) {
    if (g.modulation == "CE") {
      CHECK_THAT(g.practical_W, WithinRel(4e-10 * pr.flos_ce, 1e-12));
    }
  }
  // J_per_FLO is meaningless for transmission stages
  Scenario bad = s;
  bad.baselines.clear();
  bad.baselines["filter"] = Baseline{1e-10, "J_per_FLO", "wrong unit"};
  CHECK_THROWS_WITH(compare_baselines(bad), Catch::Matchers::ContainsSubstring("J_per_FLO"));
}

TEST_CASE("sweep JSON view carries provenance") {
  Scenario s = load_scenario(scenario_path("fig5.json"));
  SweepResult r = run_sweep(s);
  json j = sweep_result_json(r);
  CHECK(j.at("scenario") == "fig5");
  CHECK(j.at("scenario_hash").get<std::string>() == s.source_hash_hex);
  CHECK(j.at("rows").size() == 8);
}

TEST_CASE("single-point grid equals a direct model call") {
  Scenario s = load_scenario(scenario_path("fig5.json"));
  s.sweep->grid = {1e8};
  SweepResult r = run_sweep(s);
  REQUIRE(r.rows.size() == 1);
  const double rate = rate_bps(*s.rate_model, s.system);
  const ProcessingReport direct = processing_dissipation(s.system, rate, {}, s.context());
  CHECK(r.rows[0].columns[column_of(r, "rate_bps")] == rate);
  CHECK(r.rows[0].columns[column_of(r, "q_ce_W")] == direct.q_ce_W);
  CHECK(r.rows[0].columns[column_of(r, "q_ip_W")] == direct.total_W);
}

TEST_CASE("kT*B columns are scale-free companions of the power columns") {
  Scenario s = load_scenario(scenario_path("fig5.json"));
  SweepResult r = run_sweep(s, /*kt_columns=*/true);
  const std::size_t w = column_of(r, "q_ce_W");
  const std::size_t n = column_of(r, "q_ce_kTB");
  const PhysicalContext ctx = s.context();
  for (const auto& row : r.rows) {
    const double ktb = ctx.kT() * row.value;  // bandwidth sweep: B is the row value
    CHECK_THAT(row.columns[n], WithinRel(row.columns[w] / ktb, 1e-12));
  }
  // plain run has no normalized columns
  SweepResult plain = run_sweep(s);
  for (const auto& name : plain.column_names) CHECK(name.find("_kTB") == std::string::npos);
}

TEST_CASE("report emission shapes: circuit JSON, transmission CSV, processing CSV") {
  const PhysicalContext ctx(300.0);
  CircuitNetlist c = parse_netlist("inputs a b\ngate G NAND a b -> y\ngroup ALL = G\n");
  CircuitFlowReport rep = circuit_entropy_flow(c, joint_uniform_input(c));
  json j = circuit_report_json(rep, ctx);
  REQUIRE(j.at("gates").size() == 1);
  CHECK(j.at("gates")[0].at("islands").size() == 2);
  CHECK(j.at("gates")[0].at("account").contains("entropy_flow_nats"));
  CHECK(j.at("grand_total_heat_J").get<double>() > 0.0);
  CHECK_THAT(j.at("uniform_nand_bound_nats").get<double>(),
             WithinRel(0.75 * std::log(3.0), 1e-12));

  Scenario s = load_scenario(scenario_path("fig7.json"));
  TransmissionReport tr = transmission_total(s.stages, s.system.bandwidth_Hz, ctx, {});
  const std::string csv = transmission_report_csv(tr);
  std::istringstream is(csv);
  CsvTable table = read_csv(is);
  REQUIRE(table.header == std::vector<std::string>{"stage", "device_count", "info_nats_per_cycle",
                                                   "heat_J_per_cycle", "power_W", "warnings"});
  REQUIRE(table.rows.size() == 5);

  Scenario t1 = load_scenario(scenario_path("table1.json"));
  const double rate = rate_bps(*t1.rate_model, t1.system);
  ProcessingReport pr = processing_dissipation(t1.system, rate, {}, ctx);
  std::istringstream pis(processing_report_csv(pr));
  CsvTable ptable = read_csv(pis);
  REQUIRE(ptable.rows.size() == 1);
  CHECK(parse_double(ptable.rows[0][7]) == pr.total_W);
}
