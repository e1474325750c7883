#pragma once

// JSON scenario files: system parameters, rate model, analog stage chain,
// residuals, sweep definition and optional practical baselines. Loading
// validates everything up front; serializing a loaded scenario reproduces
// every numeric value exactly.

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "entroflow/errors.hpp"
#include "entroflow/link.hpp"
#include "entroflow/numeric.hpp"
#include "entroflow/processing.hpp"
#include "entroflow/transmission.hpp"

namespace entroflow {

using json = nlohmann::json;

enum class SweepVariable { Bandwidth, Users, QuantizationBits };

inline const char* sweep_variable_name(SweepVariable v) {
  switch (v) {
    case SweepVariable::Bandwidth: return "bandwidth";
    case SweepVariable::Users: return "users";
    case SweepVariable::QuantizationBits: return "quantization_bits";
  }
  return "?";
}

inline SweepVariable sweep_variable_from_name(std::string_view name) {
  if (name == "bandwidth") return SweepVariable::Bandwidth;
  if (name == "users") return SweepVariable::Users;
  if (name == "quantization_bits") return SweepVariable::QuantizationBits;
  throw validation_error("unknown sweep variable '" + std::string(name) +
                         "' (expected bandwidth, users or quantization_bits)");
}

struct SweepDef {
  SweepVariable variable = SweepVariable::Bandwidth;
  std::vector<double> grid;

  void validate() const {
    if (grid.empty()) throw validation_error("sweep grid is empty");
    for (std::size_t i = 1; i < grid.size(); ++i) {
      if (!(grid[i] > grid[i - 1])) {
        throw validation_error("sweep grid must be strictly increasing");
      }
    }
  }
};

struct Baseline {
  double value = 0.0;
  std::string unit;  // "W" or "J_per_FLO"
  std::string note;
};

struct Scenario {
  std::string name;
  std::string description;
  double temperature_K = 300.0;
  SystemParams system;
  std::optional<RateModel> rate_model;
  std::vector<StageParams> stages;
  double reference_power_W = 1.0;
  ProcessingResiduals processing_residuals;
  std::map<StageKind, double> stage_residuals_W;
  std::optional<SweepDef> sweep;
  std::map<std::string, Baseline> baselines;
  std::vector<std::string> models;  // subset of {"processing","transmission"}; empty = infer
  json provenance;                  // retained verbatim, not interpreted
  std::string source_hash_hex;      // FNV-1a of the loaded file bytes

  PhysicalContext context() const { return PhysicalContext(temperature_K); }

  bool runs_processing() const {
    if (!models.empty()) {
      for (const auto& m : models) {
        if (m == "processing") return true;
      }
      return false;
    }
    return true;
  }
  bool runs_transmission() const {
    if (!models.empty()) {
      for (const auto& m : models) {
        if (m == "transmission") return true;
      }
      return false;
    }
    return !stages.empty();
  }

  void validate() const {
    PhysicalContext check_ctx(temperature_K);
    (void)check_ctx;
    system.validate();
    if (rate_model) rate_model->validate();
    for (const auto& s : stages) s.validate();
    processing_residuals.validate();
    for (const auto& [kind, r] : stage_residuals_W) {
      if (r < 0.0) {
        throw validation_error(std::string(stage_name(kind)) + ": residual dissipation must be >= 0");
      }
    }
    if (sweep) sweep->validate();
    for (const auto& [mod, b] : baselines) {
      if (!(b.value > 0.0)) {
        throw validation_error("baseline for '" + mod + "' must be > 0");
      }
      if (b.unit != "W" && b.unit != "J_per_FLO") {
        throw validation_error("baseline for '" + mod + "' has unknown unit '" + b.unit +
                               "' (expected W or J_per_FLO)");
      }
    }
    for (const auto& m : models) {
      if (m != "processing" && m != "transmission") {
        throw validation_error("unknown model '" + m + "' in models list");
      }
    }
  }
};

namespace detail {

inline double require_number(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw validation_error(where + ": missing field '" + key + "'");
  if (!j.at(key).is_number()) throw validation_error(where + ": field '" + key + "' must be a number");
  return j.at(key).get<double>();
}

inline double number_or(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw validation_error("field '" + key + "' must be a number");
  return j.at(key).get<double>();
}

inline std::int64_t require_count(const json& j, const std::string& key, const std::string& where) {
  const double v = require_number(j, key, where);
  const auto n = static_cast<std::int64_t>(v);
  if (static_cast<double>(n) != v) {
    throw validation_error(where + ": field '" + key + "' must be an integer");
  }
  return n;
}

}  // namespace detail

inline SystemParams system_params_from_json(const json& j) {
  using detail::require_count;
  using detail::require_number;
  SystemParams p;
  p.antennas = require_count(j, "antennas", "system");
  p.users = require_count(j, "users", "system");
  p.bandwidth_Hz = require_number(j, "bandwidth_Hz", "system");
  p.coherence_bandwidth_Hz = require_number(j, "coherence_bandwidth_Hz", "system");
  p.coherence_time_s = require_number(j, "coherence_time_s", "system");
  p.rf_chains = require_count(j, "rf_chains", "system");
  p.transistor_count = require_number(j, "transistors", "system");
  if (j.contains("ldpc")) {
    const json& l = j.at("ldpc");
    p.ldpc.block_length = require_count(l, "block_length", "system.ldpc");
    p.ldpc.info_bits = require_count(l, "info_bits", "system.ldpc");
    p.ldpc.iterations = require_count(l, "iterations", "system.ldpc");
  }
  p.quantization_bits = require_count(j, "quantization_bits", "system");
  p.transmit_power_W = require_number(j, "transmit_power_W", "system");
  p.noise_density_W_per_Hz = require_number(j, "noise_density_W_per_Hz", "system");
  return p;
}

inline json system_params_to_json(const SystemParams& p) {
  return json{{"antennas", p.antennas},
              {"users", p.users},
              {"bandwidth_Hz", p.bandwidth_Hz},
              {"coherence_bandwidth_Hz", p.coherence_bandwidth_Hz},
              {"coherence_time_s", p.coherence_time_s},
              {"rf_chains", p.rf_chains},
              {"transistors", p.transistor_count},
              {"ldpc",
               {{"block_length", p.ldpc.block_length},
                {"info_bits", p.ldpc.info_bits},
                {"iterations", p.ldpc.iterations}}},
              {"quantization_bits", p.quantization_bits},
              {"transmit_power_W", p.transmit_power_W},
              {"noise_density_W_per_Hz", p.noise_density_W_per_Hz}};
}

inline RateModel rate_model_from_json(const json& j) {
  RateModel rm;
  if (!j.contains("mode") || !j.at("mode").is_string()) {
    throw validation_error("rate_model: missing string field 'mode'");
  }
  const std::string mode = j.at("mode").get<std::string>();
  if (mode == "explicit") {
    rm.mode = RateMode::Explicit;
    rm.explicit_rate_bps = detail::require_number(j, "rate_bps", "rate_model");
  } else if (mode == "link_budget") {
    rm.mode = RateMode::LinkBudget;
    rm.distance_m = detail::require_number(j, "distance_m", "rate_model");
    rm.path_loss_exponent = detail::require_number(j, "path_loss_exponent", "rate_model");
    rm.reference_gain = detail::require_number(j, "reference_gain", "rate_model");
  } else if (mode == "table") {
    rm.mode = RateMode::Table;
    if (!j.contains("table") || !j.at("table").is_array()) {
      throw validation_error("rate_model: table mode needs an array field 'table'");
    }
    for (const auto& entry : j.at("table")) {
      if (!entry.is_array() || entry.size() != 2) {
        throw validation_error("rate_model: table entries must be [users, rate_bps] pairs");
      }
      rm.table.emplace_back(entry[0].get<std::int64_t>(), entry[1].get<double>());
    }
  } else {
    throw validation_error("rate_model: unknown mode '" + mode + "'");
  }
  rm.validate();
  return rm;
}

inline json rate_model_to_json(const RateModel& rm) {
  json j{{"mode", rate_mode_name(rm.mode)}};
  switch (rm.mode) {
    case RateMode::Explicit:
      j["rate_bps"] = rm.explicit_rate_bps;
      break;
    case RateMode::LinkBudget:
      j["distance_m"] = rm.distance_m;
      j["path_loss_exponent"] = rm.path_loss_exponent;
      j["reference_gain"] = rm.reference_gain;
      break;
    case RateMode::Table: {
      json table = json::array();
      for (const auto& [k, r] : rm.table) table.push_back(json::array({k, r}));
      j["table"] = table;
      break;
    }
  }
  return j;
}

inline StageParams stage_params_from_json(const json& j, double reference_power_W) {
  StageParams s;
  if (!j.contains("stage") || !j.at("stage").is_string()) {
    throw validation_error("stage entry: missing string field 'stage'");
  }
  s.stage = stage_from_name(j.at("stage").get<std::string>());
  const std::string where = stage_name(s.stage);
  s.input_power = detail::require_number(j, "input_power", where);
  s.device_count = detail::require_count(j, "device_count", where);
  s.reference_power_W = reference_power_W;
  if (s.stage == StageKind::Filter) {
    s.noise_density_W_per_Hz = detail::require_number(j, "noise_density_W_per_Hz", where);
  }
  if (s.stage == StageKind::Adc) {
    s.quantization_step = detail::require_number(j, "quantization_step", where);
  }
  if (s.stage == StageKind::Amplifier) {
    s.entropy_power = detail::require_number(j, "entropy_power", where);
  }
  s.validate();
  return s;
}

inline json stage_params_to_json(const StageParams& s) {
  json j{{"stage", stage_name(s.stage)},
         {"input_power", s.input_power},
         {"device_count", s.device_count}};
  if (s.stage == StageKind::Filter) j["noise_density_W_per_Hz"] = s.noise_density_W_per_Hz;
  if (s.stage == StageKind::Adc) j["quantization_step"] = s.quantization_step;
  if (s.stage == StageKind::Amplifier) j["entropy_power"] = s.entropy_power;
  return j;
}

inline Scenario parse_scenario(const std::string& text, const std::string& source_name = "scenario") {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw validation_error(source_name + ": JSON parse error: " + e.what());
  }
  if (!root.is_object()) throw validation_error(source_name + ": top level must be a JSON object");

  Scenario s;
  s.source_hash_hex = to_hex(fnv1a64(text));
  if (root.contains("name")) s.name = root.at("name").get<std::string>();
  if (root.contains("description")) s.description = root.at("description").get<std::string>();
  s.temperature_K = detail::number_or(root, "temperature_K", 300.0);
  if (!root.contains("system")) throw validation_error(source_name + ": missing 'system' section");
  s.system = system_params_from_json(root.at("system"));
  if (root.contains("rate_model")) s.rate_model = rate_model_from_json(root.at("rate_model"));
  s.reference_power_W = detail::number_or(root, "reference_power_W", 1.0);
  if (root.contains("stages")) {
    if (!root.at("stages").is_array()) throw validation_error("'stages' must be an array");
    for (const auto& e : root.at("stages")) {
      s.stages.push_back(stage_params_from_json(e, s.reference_power_W));
    }
  }
  if (root.contains("residuals")) {
    const json& r = root.at("residuals");
    if (r.contains("processing")) {
      const json& pr = r.at("processing");
      s.processing_residuals.ce_W = detail::number_or(pr, "CE", 0.0);
      s.processing_residuals.lp_W = detail::number_or(pr, "LP", 0.0);
      s.processing_residuals.cd_W = detail::number_or(pr, "CD", 0.0);
    }
    if (r.contains("transmission")) {
      for (const auto& [key, value] : r.at("transmission").items()) {
        s.stage_residuals_W[stage_from_name(key)] = value.get<double>();
      }
    }
  }
  if (root.contains("sweep")) {
    const json& sw = root.at("sweep");
    SweepDef def;
    if (!sw.contains("variable") || !sw.at("variable").is_string()) {
      throw validation_error("sweep: missing string field 'variable'");
    }
    def.variable = sweep_variable_from_name(sw.at("variable").get<std::string>());
    if (!sw.contains("grid") || !sw.at("grid").is_array()) {
      throw validation_error("sweep: missing array field 'grid'");
    }
    for (const auto& v : sw.at("grid")) def.grid.push_back(v.get<double>());
    s.sweep = def;
  }
  if (root.contains("baselines")) {
    for (const auto& [key, value] : root.at("baselines").items()) {
      Baseline b;
      b.value = detail::require_number(value, "value", "baselines." + key);
      if (!value.contains("unit") || !value.at("unit").is_string()) {
        throw validation_error("baselines." + key + ": missing string field 'unit'");
      }
      b.unit = value.at("unit").get<std::string>();
      if (value.contains("note")) b.note = value.at("note").get<std::string>();
      s.baselines[key] = b;
    }
  }
  if (root.contains("models")) {
    for (const auto& m : root.at("models")) s.models.push_back(m.get<std::string>());
  }
  if (root.contains("provenance")) s.provenance = root.at("provenance");

  s.validate();
  return s;
}

inline Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open scenario file: " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw io_error("error reading scenario file: " + path.string());
  return parse_scenario(text, path.filename().string());
}

inline json scenario_to_json(const Scenario& s) {
  json root;
  root["name"] = s.name;
  root["description"] = s.description;
  root["temperature_K"] = s.temperature_K;
  root["system"] = system_params_to_json(s.system);
  if (s.rate_model) root["rate_model"] = rate_model_to_json(*s.rate_model);
  root["reference_power_W"] = s.reference_power_W;
  if (!s.stages.empty()) {
    json stages = json::array();
    for (const auto& st : s.stages) stages.push_back(stage_params_to_json(st));
    root["stages"] = stages;
  }
  {
    json residuals;
    residuals["processing"] = json{{"CE", s.processing_residuals.ce_W},
                                   {"LP", s.processing_residuals.lp_W},
                                   {"CD", s.processing_residuals.cd_W}};
    json tr = json::object();
    for (const auto& [kind, r] : s.stage_residuals_W) tr[stage_name(kind)] = r;
    residuals["transmission"] = tr;
    root["residuals"] = residuals;
  }
  if (s.sweep) {
    root["sweep"] = json{{"variable", sweep_variable_name(s.sweep->variable)},
                         {"grid", s.sweep->grid}};
  }
  if (!s.baselines.empty()) {
    json b = json::object();
    for (const auto& [key, base] : s.baselines) {
      b[key] = json{{"value", base.value}, {"unit", base.unit}, {"note", base.note}};
    }
    root["baselines"] = b;
  }
  if (!s.models.empty()) root["models"] = s.models;
  if (!s.provenance.is_null()) root["provenance"] = s.provenance;
  return root;
}

}  // namespace entroflow
