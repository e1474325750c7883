#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "entroflow/transmission.hpp"

using namespace entroflow;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

StageParams filter_table1() {
  StageParams s;
  s.stage = StageKind::Filter;
  s.input_power = 5.0;  // transmit power, reference 1 W
  s.device_count = 256;
  s.noise_density_W_per_Hz = 3.981071705534986e-21;  // -174 dBm/Hz
  return s;
}

StageParams unit_stage(StageKind kind, std::int64_t devices = 1) {
  StageParams s;
  s.stage = kind;
  s.input_power = 1.0;
  s.device_count = devices;
  return s;
}

}  // namespace

TEST_CASE("filter information") {
  // SNR = 1 -> (1/2) ln 2
  StageParams s = unit_stage(StageKind::Filter);
  s.noise_density_W_per_Hz = 1e-8;
  CHECK_THAT(stage_information(s, 1e8).nats, WithinAbs(0.5 * std::numbers::ln2, 1e-12));

  // Base parameters: P = 5 W, N0 = -174 dBm/Hz, B = 100 MHz -> 15.0807 nats
  CHECK_THAT(stage_information(filter_table1(), 100e6).nats, WithinRel(15.080746532780172, 1e-9));
}

TEST_CASE("amplifier information ignores the gain") {
  StageParams s = unit_stage(StageKind::Amplifier);
  s.entropy_power = 5.0;
  StageInformation a5 = stage_information(s, 1e8);
  s.entropy_power = 50.0;
  StageInformation a50 = stage_information(s, 1e8);
  CHECK(a5.nats == a50.nats);
  CHECK_THAT(a5.nats, WithinAbs(1.4189385332046727, 1e-12));  // (1/2) ln(2 pi e)
  REQUIRE(a5.output_power.has_value());
  CHECK_THAT(*a5.output_power, WithinAbs(5.0, 1e-15));
  CHECK_THAT(*a50.output_power, WithinAbs(50.0, 1e-15));

  // unit log argument: P = 1/(2 pi e) -> zero information, flagged
  s.entropy_power = 5.0;
  s.input_power = 1.0 / kTwoPiE;
  StageInformation zero = stage_information(s, 1e8);
  CHECK_THAT(zero.nats, WithinAbs(0.0, 1e-12));
  CHECK(zero.warning.has_value());
}

TEST_CASE("adc information from the quantization step") {
  StageParams s = unit_stage(StageKind::Adc);
  s.quantization_step = std::pow(2.0, -8);
  // (1/2) ln(12 * 2^16)
  CHECK_THAT(stage_information(s, 1e8).nats, WithinAbs(6.787630769373562, 1e-12));

  // power equal to the quantization-noise power gives zero
  s.input_power = s.quantization_step * s.quantization_step / 12.0;
  StageInformation zero = stage_information(s, 1e8);
  CHECK_THAT(zero.nats, WithinAbs(0.0, 1e-12));
  CHECK(zero.warning.has_value());
}

TEST_CASE("mixer and shifter share the amplifier formula") {
  StageInformation amp = stage_information(unit_stage(StageKind::Amplifier), 1e8);
  StageInformation mix = stage_information(unit_stage(StageKind::Mixer), 1e8);
  StageInformation shf = stage_information(unit_stage(StageKind::PhaseShifter), 1e8);
  CHECK(amp.nats == mix.nats);
  CHECK(mix.nats == shf.nats);

  // ADC beats them at equal power once the step is <= 1/2 (12/step^2 > 2 pi e).
  StageParams adc = unit_stage(StageKind::Adc);
  adc.quantization_step = 0.5;
  CHECK(stage_information(adc, 1e8).nats > mix.nats);
}

TEST_CASE("nonpositive information is computed as written, with a warning") {
  StageParams s = unit_stage(StageKind::Mixer);
  s.input_power = 1e-3;  // well below 1/(2 pi e)
  StageInformation info = stage_information(s, 1e8);
  CHECK(info.nats < 0.0);
  CHECK(info.warning.has_value());

  PhysicalContext t300(300.0);
  StageReport rep = stage_dissipation(s, 1e8, t300);
  CHECK(rep.power_W < 0.0);
  REQUIRE_FALSE(rep.warnings.empty());
}

TEST_CASE("stage parameter validation") {
  StageParams s = unit_stage(StageKind::Filter);
  s.input_power = 0.0;
  CHECK_THROWS_AS(s.validate(), validation_error);
  s = unit_stage(StageKind::Filter);
  s.noise_density_W_per_Hz = 0.0;
  CHECK_THROWS_AS(stage_information(s, 1e8), validation_error);
  s = unit_stage(StageKind::Adc);
  s.quantization_step = -0.1;
  CHECK_THROWS_AS(stage_information(s, 1e8), validation_error);
  s = unit_stage(StageKind::Filter);
  CHECK_THROWS_AS(stage_information(s, 0.0), validation_error);
}

TEST_CASE("measurement-erasure bound") {
  PhysicalContext t300(300.0);
  CHECK_THAT(measurement_erasure_bound_J(std::numbers::ln2, t300),
             WithinRel(2.870978885078724e-21, 1e-12));
  CHECK(measurement_erasure_bound_J(0.0, t300) == 0.0);
  CHECK_THAT(measurement_erasure_bound_J(15.080746532780172, t300),
             WithinRel(6.246365285920924e-20, 1e-9));
  CHECK_THROWS_AS(measurement_erasure_bound_J(-0.5, t300), validation_error);
}

TEST_CASE("stage dissipation chains count, temperature and bandwidth") {
  PhysicalContext t300(300.0);
  StageParams f = filter_table1();
  StageReport rep = stage_dissipation(f, 100e6, t300);
  CHECK_THAT(rep.heat_J_per_cycle, WithinRel(6.246365285920924e-20, 1e-9));
  CHECK_THAT(rep.power_W, WithinRel(1.5990695131957565e-9, 1e-9));

  // zero devices, zero power
  StageParams none = filter_table1();
  none.device_count = 0;
  CHECK(stage_dissipation(none, 100e6, t300).power_W == 0.0);

  // mixer at B = 0 has finite info and zero per-second dissipation
  StageReport idle = stage_dissipation(unit_stage(StageKind::Mixer), 0.0, t300);
  CHECK_THAT(idle.heat_J_per_cycle, WithinRel(5.877168200791494e-21, 1e-9));
  CHECK(idle.power_W == 0.0);

  // linearity in device count, temperature, bandwidth
  StageParams one = unit_stage(StageKind::Mixer, 1);
  StageParams ten = unit_stage(StageKind::Mixer, 10);
  CHECK_THAT(stage_dissipation(ten, 1e8, t300).power_W,
             WithinRel(10.0 * stage_dissipation(one, 1e8, t300).power_W, 1e-12));
  PhysicalContext t600(600.0);
  CHECK_THAT(stage_dissipation(one, 1e8, t600).power_W,
             WithinRel(2.0 * stage_dissipation(one, 1e8, t300).power_W, 1e-12));
  CHECK_THAT(stage_dissipation(one, 2e8, t300).power_W,
             WithinRel(2.0 * stage_dissipation(one, 1e8, t300).power_W, 1e-12));

  CHECK_THROWS_AS(stage_dissipation(one, 1e8, t300, -1.0), validation_error);
}

TEST_CASE("filter per-second dissipation grows with bandwidth") {
  PhysicalContext t300(300.0);
  StageParams f = filter_table1();
  double prev = 0.0;
  for (double b = 1e6; b <= 1e12; b *= 2.0) {
    const double p = stage_dissipation(f, b, t300).power_W;
    CHECK(p > prev);
    prev = p;
  }
}

TEST_CASE("transmission total sums the stages") {
  PhysicalContext t300(300.0);
  std::vector<StageParams> chain{filter_table1(), unit_stage(StageKind::Amplifier, 256),
                                 unit_stage(StageKind::Adc, 32), unit_stage(StageKind::Mixer, 32),
                                 unit_stage(StageKind::PhaseShifter, 8192)};
  TransmissionReport rep = transmission_total(chain, 100e6, t300);
  REQUIRE(rep.stages.size() == 5);
  double sum = 0.0;
  for (const auto& s : rep.stages) sum += s.power_W;
  CHECK_THAT(rep.total_W, WithinRel(sum, 1e-12));

  // independently computed stages agree with the report entries
  for (const auto& s : chain) {
    StageReport solo = stage_dissipation(s, 100e6, t300);
    bool found = false;
    for (const auto& entry : rep.stages) {
      if (entry.stage == s.stage) {
        CHECK_THAT(entry.power_W, WithinRel(solo.power_W, 1e-12));
        found = true;
      }
    }
    CHECK(found);
  }

  // degenerate single-stage total
  TransmissionReport single = transmission_total({filter_table1()}, 100e6, t300);
  CHECK_THAT(single.total_W, WithinRel(stage_dissipation(filter_table1(), 100e6, t300).power_W, 1e-12));

  // duplicate stages rejected
  CHECK_THROWS_WITH(transmission_total({filter_table1(), filter_table1()}, 100e6, t300),
                    Catch::Matchers::ContainsSubstring("duplicate"));
}

TEST_CASE("equal unit powers reproduce the five-term bracket") {
  PhysicalContext t300(300.0);
  const double B = 42e6;
  const double delta = std::pow(2.0, -8);
  StageParams filter = unit_stage(StageKind::Filter);
  filter.noise_density_W_per_Hz = 3.981071705534986e-21;
  StageParams adc = unit_stage(StageKind::Adc);
  adc.quantization_step = delta;
  std::vector<StageParams> chain{filter, unit_stage(StageKind::Amplifier), adc,
                                 unit_stage(StageKind::Mixer), unit_stage(StageKind::PhaseShifter)};
  TransmissionReport rep = transmission_total(chain, B, t300);

  const double snr = 1.0 / (3.981071705534986e-21 * B);
  const double bracket = std::log(1.0 + snr) + 3.0 * std::log(kTwoPiE) + std::log(12.0 / (delta * delta));
  const double expected = 0.5 * B * t300.kT() * bracket;
  CHECK_THAT(rep.total_W, WithinRel(expected, 1e-12));
}
