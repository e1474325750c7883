#pragma once

// Transmission-rate models. The dissipation formulas need a rate R that a
// full link-level simulation would normally supply; here R comes from an
// explicit value, a lookup table, or a deliberately simple link budget
// (equal power split across users, pilot overhead of K symbols per
// coherence block, equal-SNR users).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "entroflow/errors.hpp"
#include "entroflow/processing.hpp"

namespace entroflow {

enum class RateMode { Explicit, LinkBudget, Table };

inline const char* rate_mode_name(RateMode m) {
  switch (m) {
    case RateMode::Explicit: return "explicit";
    case RateMode::LinkBudget: return "link_budget";
    case RateMode::Table: return "table";
  }
  return "?";
}

struct RateModel {
  RateMode mode = RateMode::Explicit;
  // Explicit
  double explicit_rate_bps = 0.0;
  // LinkBudget
  double distance_m = 0.0;
  double path_loss_exponent = 0.0;
  double reference_gain = 0.0;
  // Table: (K, R) pairs, K unique and sorted ascending
  std::vector<std::pair<std::int64_t, double>> table;

  void validate() const {
    switch (mode) {
      case RateMode::Explicit:
        if (explicit_rate_bps < 0.0) throw validation_error("explicit rate must be >= 0");
        break;
      case RateMode::LinkBudget:
        if (!(distance_m > 0.0)) throw validation_error("link budget distance must be > 0");
        if (!(path_loss_exponent > 0.0)) throw validation_error("path loss exponent must be > 0");
        if (!(reference_gain > 0.0)) throw validation_error("reference gain must be > 0");
        break;
      case RateMode::Table: {
        if (table.empty()) throw validation_error("rate table is empty");
        for (std::size_t i = 0; i < table.size(); ++i) {
          if (table[i].second < 0.0) throw validation_error("rate table values must be >= 0");
          if (i > 0 && table[i].first <= table[i - 1].first) {
            throw validation_error("rate table user counts must be unique and sorted ascending");
          }
        }
        break;
      }
    }
  }
};

/// Transmission rate in bits/s for the given system parameters.
///
/// LinkBudget mode: R = B (1 - K/U) K log2(1 + (P_T/K) d^-alpha G / (N0 B)).
inline double rate_bps(const RateModel& rm, const SystemParams& p) {
  rm.validate();
  switch (rm.mode) {
    case RateMode::Explicit:
      return rm.explicit_rate_bps;
    case RateMode::LinkBudget: {
      p.validate();
      const double K = static_cast<double>(p.users);
      const double U = p.coherence_block_symbols();
      const double snr = (p.transmit_power_W / K) * std::pow(rm.distance_m, -rm.path_loss_exponent) *
                         rm.reference_gain / (p.noise_density_W_per_Hz * p.bandwidth_Hz);
      const double overhead = 1.0 - K / U;
      return p.bandwidth_Hz * overhead * K * std::log2(1.0 + snr);
    }
    case RateMode::Table: {
      for (const auto& [k, r] : rm.table) {
        if (k == p.users) return r;
      }
      std::string available;
      for (const auto& [k, r] : rm.table) {
        available += (available.empty() ? "" : ", ") + std::to_string(k);
      }
      throw validation_error("rate table has no entry for K = " + std::to_string(p.users) +
                             " (available K: " + available + ")");
    }
  }
  throw validation_error("invalid rate model mode");
}

}  // namespace entroflow
