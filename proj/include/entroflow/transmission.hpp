#pragma once

// Measurement-erasure dissipation models for the analog transmission stages:
// filtering, amplification, analog-to-digital conversion, frequency mixing
// and phase shifting. Each stage acquires mutual information I about its
// input per cycle and must dissipate at least kT*I; the cycle runs B times
// per second per device.
//
// Log arguments are powers expressed as ratios to a configurable reference
// power (default 1 W), recorded in every report. Stages whose formula yields
// nonpositive information are computed as written and flagged with a
// warning, never clamped.

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "entroflow/errors.hpp"
#include "entroflow/thermo.hpp"

namespace entroflow {

enum class StageKind { Filter, Amplifier, Adc, Mixer, PhaseShifter };

inline const char* stage_name(StageKind s) {
  switch (s) {
    case StageKind::Filter: return "filter";
    case StageKind::Amplifier: return "amplifier";
    case StageKind::Adc: return "adc";
    case StageKind::Mixer: return "mixer";
    case StageKind::PhaseShifter: return "phase_shifter";
  }
  return "?";
}

inline StageKind stage_from_name(std::string_view name) {
  if (name == "filter") return StageKind::Filter;
  if (name == "amplifier") return StageKind::Amplifier;
  if (name == "adc") return StageKind::Adc;
  if (name == "mixer") return StageKind::Mixer;
  if (name == "phase_shifter") return StageKind::PhaseShifter;
  throw validation_error("unknown transmission stage '" + std::string(name) + "'");
}

struct StageParams {
  StageKind stage = StageKind::Filter;
  double input_power = 1.0;          // ratio to reference_power_W
  std::int64_t device_count = 1;
  double reference_power_W = 1.0;
  // Stage-specific extras.
  double noise_density_W_per_Hz = 3.981071705534986e-21;  // Filter
  double quantization_step = 1.0 / 256.0;                 // ADC, 2^-bits
  double entropy_power = 5.0;                             // Amplifier gain term

  void validate() const {
    if (!(input_power > 0.0)) {
      throw validation_error(std::string(stage_name(stage)) + ": input power must be > 0");
    }
    if (device_count < 0) {
      throw validation_error(std::string(stage_name(stage)) + ": device count must be >= 0");
    }
    if (!(reference_power_W > 0.0)) {
      throw validation_error(std::string(stage_name(stage)) + ": reference power must be > 0");
    }
    if (stage == StageKind::Filter && !(noise_density_W_per_Hz > 0.0)) {
      throw validation_error("filter: noise density must be > 0");
    }
    if (stage == StageKind::Adc && !(quantization_step > 0.0)) {
      throw validation_error("adc: quantization step must be > 0");
    }
    if (stage == StageKind::Amplifier && !(entropy_power > 0.0)) {
      throw validation_error("amplifier: entropy power must be > 0");
    }
  }
};

struct StageInformation {
  double nats = 0.0;
  std::optional<std::string> warning;
  std::optional<double> output_power;  // amplifier only: input_power * entropy_power
};

inline constexpr double kTwoPiE = 2.0 * std::numbers::pi * std::numbers::e;

/// Mutual information acquired by one device in one measurement-erasure
/// cycle, in nats:
///   filter          (1/2) ln(1 + P / (N0 B))
///   amplifier       (1/2) ln(2 pi e P)    -- independent of the gain
///   adc             (1/2) ln(12 P / step^2)
///   mixer, shifter  (1/2) ln(2 pi e P)
inline StageInformation stage_information(const StageParams& s, double bandwidth_Hz) {
  s.validate();
  StageInformation info;
  switch (s.stage) {
    case StageKind::Filter: {
      if (!(bandwidth_Hz > 0.0)) throw validation_error("filter: bandwidth must be > 0");
      const double power_W = s.input_power * s.reference_power_W;
      info.nats = 0.5 * std::log(1.0 + power_W / (s.noise_density_W_per_Hz * bandwidth_Hz));
      break;
    }
    case StageKind::Amplifier:
      info.nats = 0.5 * std::log(kTwoPiE * s.input_power);
      info.output_power = s.input_power * s.entropy_power;
      break;
    case StageKind::Adc:
      info.nats = 0.5 * std::log(12.0 * s.input_power / (s.quantization_step * s.quantization_step));
      break;
    case StageKind::Mixer:
    case StageKind::PhaseShifter:
      info.nats = 0.5 * std::log(kTwoPiE * s.input_power);
      break;
  }
  if (!(info.nats > 0.0)) {
    info.warning = std::string(stage_name(s.stage)) +
                   ": nonpositive per-cycle information (input power below the formula's validity "
                   "range); value reported as computed";
  }
  return info;
}

/// Minimum work (equivalently heat) of one measurement-erasure cycle that
/// acquires the given mutual information: kT * I.
inline double measurement_erasure_bound_J(double mutual_information_nats, const PhysicalContext& ctx) {
  if (mutual_information_nats < 0.0) {
    throw validation_error("mutual information must be >= 0 nats");
  }
  return ctx.kT() * mutual_information_nats;
}

struct StageReport {
  StageKind stage = StageKind::Filter;
  std::int64_t device_count = 0;
  double info_nats_per_cycle = 0.0;
  double heat_J_per_cycle = 0.0;   // per device, kT * I
  double power_W = 0.0;            // device_count * kT * I * B + residual
  double residual_W = 0.0;
  std::vector<std::string> warnings;
  std::optional<double> output_power;
};

inline StageReport stage_dissipation(const StageParams& s, double bandwidth_Hz,
                                     const PhysicalContext& ctx, double residual_W = 0.0) {
  if (residual_W < 0.0) {
    throw validation_error(std::string(stage_name(s.stage)) + ": residual dissipation must be >= 0");
  }
  if (!(bandwidth_Hz >= 0.0)) {
    throw validation_error("bandwidth must be >= 0");
  }
  const StageInformation info = stage_information(s, bandwidth_Hz);
  StageReport r;
  r.stage = s.stage;
  r.device_count = s.device_count;
  r.info_nats_per_cycle = info.nats;
  r.heat_J_per_cycle = ctx.kT() * info.nats;
  r.power_W = static_cast<double>(s.device_count) * r.heat_J_per_cycle * bandwidth_Hz + residual_W;
  r.residual_W = residual_W;
  if (info.warning) r.warnings.push_back(*info.warning);
  r.output_power = info.output_power;
  return r;
}

struct TransmissionReport {
  std::vector<StageReport> stages;
  double total_W = 0.0;  // sum of stage powers (each already includes its residual)
  double reference_power_W = 1.0;
  double temperature_K = 0.0;
  double bandwidth_Hz = 0.0;
};

/// Total dissipation of an analog chain. Each of the five stage kinds may
/// appear at most once.
inline TransmissionReport transmission_total(const std::vector<StageParams>& stages,
                                             double bandwidth_Hz, const PhysicalContext& ctx,
                                             const std::map<StageKind, double>& residuals_W = {}) {
  TransmissionReport report;
  report.temperature_K = ctx.temperature_K;
  report.bandwidth_Hz = bandwidth_Hz;
  std::vector<bool> seen(5, false);
  for (const StageParams& s : stages) {
    const auto idx = static_cast<std::size_t>(s.stage);
    if (seen[idx]) {
      throw validation_error(std::string("duplicate transmission stage '") + stage_name(s.stage) + "'");
    }
    seen[idx] = true;
    auto r_it = residuals_W.find(s.stage);
    const double residual = r_it == residuals_W.end() ? 0.0 : r_it->second;
    report.stages.push_back(stage_dissipation(s, bandwidth_Hz, ctx, residual));
    report.reference_power_W = s.reference_power_W;
    report.total_W += report.stages.back().power_W;
  }
  return report;
}

}  // namespace entroflow
