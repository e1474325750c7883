#pragma once

// Floating-point-operation counts and dissipation floors for the digital
// baseband modulations: channel estimation, linear processing (hybrid
// precoding / detection with MRT/MRC normalization) and LDPC channel
// decoding. Each modulation dissipates at least
// (3/4) ln 3 * kT * N_transistors per FLO.

#include <cmath>
#include <cstdint>
#include <string>

#include "entroflow/circuit.hpp"
#include "entroflow/errors.hpp"
#include "entroflow/thermo.hpp"

namespace entroflow {

struct LdpcParams {
  std::int64_t block_length = 648;  // n
  std::int64_t info_bits = 324;     // m
  std::int64_t iterations = 10;     // l
};

struct SystemParams {
  std::int64_t antennas = 256;       // M
  std::int64_t users = 20;           // K
  double bandwidth_Hz = 100e6;       // B
  double coherence_bandwidth_Hz = 100e6;  // B_c
  double coherence_time_s = 35e-6;        // T_c
  std::int64_t rf_chains = 32;       // N_RF
  double transistor_count = 1e8;     // N
  LdpcParams ldpc;
  std::int64_t quantization_bits = 8;
  double transmit_power_W = 5.0;
  double noise_density_W_per_Hz = 3.981071705534986e-21;  // -174 dBm/Hz

  /// Symbols per coherence block: U = B_c * T_c.
  double coherence_block_symbols() const { return coherence_bandwidth_Hz * coherence_time_s; }
  double coherence_blocks_per_second() const { return bandwidth_Hz / coherence_block_symbols(); }

  void validate() const {
    auto positive = [](double v, const char* name) {
      if (!(v > 0.0)) {
        throw validation_error(std::string("system parameter ") + name + " must be > 0, got " +
                               format_double(v));
      }
    };
    auto count = [](std::int64_t v, const char* name) {
      if (v < 1) {
        throw validation_error(std::string("system parameter ") + name + " must be >= 1, got " +
                               std::to_string(v));
      }
    };
    count(antennas, "antennas");
    count(users, "users");
    count(rf_chains, "rf_chains");
    count(quantization_bits, "quantization_bits");
    count(ldpc.iterations, "ldpc.iterations");
    positive(bandwidth_Hz, "bandwidth_Hz");
    positive(coherence_bandwidth_Hz, "coherence_bandwidth_Hz");
    positive(coherence_time_s, "coherence_time_s");
    positive(transistor_count, "transistor_count");
    positive(transmit_power_W, "transmit_power_W");
    positive(noise_density_W_per_Hz, "noise_density_W_per_Hz");
    if (ldpc.block_length < 2) {
      throw validation_error("ldpc.block_length must be >= 2");
    }
    if (ldpc.info_bits < 1 || ldpc.info_bits >= ldpc.block_length) {
      throw validation_error("ldpc.info_bits must satisfy 1 <= m < n");
    }
    if (static_cast<double>(users) > coherence_block_symbols()) {
      throw validation_error("users (" + std::to_string(users) +
                             ") exceed the coherence block length U = " +
                             format_double(coherence_block_symbols()) + " symbols");
    }
  }
};

/// FLOs per second spent estimating the channel once per coherence block:
/// (B/U) * [6MK^2 + 2MK(K-1)].
inline double flos_channel_estimation(const SystemParams& p) {
  const double M = static_cast<double>(p.antennas);
  const double K = static_cast<double>(p.users);
  return p.coherence_blocks_per_second() * (6.0 * M * K * K + 2.0 * M * K * (K - 1.0));
}

/// FLOs per second of baseband precoding/detection at rate R plus the
/// per-block precoder normalization:
/// (R/K) * [6 N_RF K + 2 N_RF (K-1)] + (B/U) * [12MK + 2(M-1)K].
inline double flos_linear_processing(const SystemParams& p, double rate_bps) {
  if (rate_bps < 0.0) throw validation_error("rate must be >= 0");
  const double M = static_cast<double>(p.antennas);
  const double K = static_cast<double>(p.users);
  const double Nrf = static_cast<double>(p.rf_chains);
  return (rate_bps / K) * (6.0 * Nrf * K + 2.0 * Nrf * (K - 1.0)) +
         p.coherence_blocks_per_second() * (12.0 * M * K + 2.0 * (M - 1.0) * K);
}

/// FLOs per second of soft-decision iterative LDPC decoding at rate R:
/// n(n-2) l R / m.
inline double flos_channel_coding(const SystemParams& p, double rate_bps) {
  if (rate_bps < 0.0) throw validation_error("rate must be >= 0");
  const double n = static_cast<double>(p.ldpc.block_length);
  const double l = static_cast<double>(p.ldpc.iterations);
  const double m = static_cast<double>(p.ldpc.info_bits);
  return n * (n - 2.0) * l * rate_bps / m;
}

/// Dissipation floor of a FLO stream through the transistor population.
inline double flo_dissipation_W(double flos_per_second, const SystemParams& p,
                                const PhysicalContext& ctx) {
  return nand_network_energy_bound(flos_per_second, p.transistor_count, ctx);
}

struct ProcessingResiduals {
  double ce_W = 0.0;
  double lp_W = 0.0;
  double cd_W = 0.0;

  void validate() const {
    if (ce_W < 0.0 || lp_W < 0.0 || cd_W < 0.0) {
      throw validation_error("residual dissipation must be >= 0");
    }
  }
  double total() const { return ce_W + lp_W + cd_W; }
};

struct ProcessingReport {
  double rate_bps = 0.0;
  double temperature_K = 0.0;
  double flos_ce = 0.0, flos_lp = 0.0, flos_cd = 0.0;   // per second
  double info_ce_W = 0.0, info_lp_W = 0.0, info_cd_W = 0.0;  // information parts
  ProcessingResiduals residuals;
  double q_ce_W = 0.0, q_lp_W = 0.0, q_cd_W = 0.0;  // info + residual per modulation
  double total_W = 0.0;                              // q_ce + q_lp + q_cd
};

inline ProcessingReport processing_dissipation(const SystemParams& p, double rate_bps,
                                               const ProcessingResiduals& residuals,
                                               const PhysicalContext& ctx) {
  p.validate();
  residuals.validate();
  ProcessingReport r;
  r.rate_bps = rate_bps;
  r.temperature_K = ctx.temperature_K;
  r.flos_ce = flos_channel_estimation(p);
  r.flos_lp = flos_linear_processing(p, rate_bps);
  r.flos_cd = flos_channel_coding(p, rate_bps);
  r.info_ce_W = flo_dissipation_W(r.flos_ce, p, ctx);
  r.info_lp_W = flo_dissipation_W(r.flos_lp, p, ctx);
  r.info_cd_W = flo_dissipation_W(r.flos_cd, p, ctx);
  r.residuals = residuals;
  r.q_ce_W = r.info_ce_W + residuals.ce_W;
  r.q_lp_W = r.info_lp_W + residuals.lp_W;
  r.q_cd_W = r.info_cd_W + residuals.cd_W;
  r.total_W = r.q_ce_W + r.q_lp_W + r.q_cd_W;
  return r;
}

/// Information-only total evaluated through the combined bracket
///   (3/4) ln 3 kT N { (B/U)[8MK^2 + 2(6M-1)K] + (R/K)[6 N_RF K + 2 N_RF (K-1)]
///                     + n(n-2) l R / m }
/// instead of summing the three per-modulation terms. Used as an independent
/// route for cross-checking.
inline double processing_total_direct_W(const SystemParams& p, double rate_bps,
                                        const PhysicalContext& ctx) {
  p.validate();
  if (rate_bps < 0.0) throw validation_error("rate must be >= 0");
  const double M = static_cast<double>(p.antennas);
  const double K = static_cast<double>(p.users);
  const double Nrf = static_cast<double>(p.rf_chains);
  const double n = static_cast<double>(p.ldpc.block_length);
  const double l = static_cast<double>(p.ldpc.iterations);
  const double m = static_cast<double>(p.ldpc.info_bits);
  const double bracket = p.coherence_blocks_per_second() * (8.0 * M * K * K + 2.0 * (6.0 * M - 1.0) * K) +
                         (rate_bps / K) * (6.0 * Nrf * K + 2.0 * Nrf * (K - 1.0)) +
                         n * (n - 2.0) * l * rate_bps / m;
  return flo_gate_entropy_nats() * ctx.kT() * p.transistor_count * bracket;
}

}  // namespace entroflow
