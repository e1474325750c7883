#pragma once

// Entropy primitives and the entropy-balance / heat conversion shared by the
// whole library. All entropies are dimensionless and in nats; the Boltzmann
// constant enters only when converting an entropy flow to heat.

#include <cmath>
#include <numbers>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "entroflow/errors.hpp"
#include "entroflow/numeric.hpp"

namespace entroflow {

inline constexpr double kDistributionSumTolerance = 1e-12;

/// Temperature plus the (fixed, CODATA) Boltzmann constant.
struct PhysicalContext {
  static constexpr double boltzmann_J_per_K = 1.380649e-23;

  double temperature_K;

  explicit PhysicalContext(double temperature_kelvin) : temperature_K(temperature_kelvin) {
    if (!(temperature_K > 0.0)) {
      throw validation_error("temperature must be > 0 K, got " + format_double(temperature_K));
    }
  }

  double kT() const { return boltzmann_J_per_K * temperature_K; }
};

/// Finite probability vector over a labeled state space. Immutable after
/// construction; construction validates nonnegativity, normalization within
/// 1e-12 and label uniqueness. Renormalization never happens silently; use
/// normalized() when weights are intentionally unnormalized.
class Distribution {
public:
  Distribution(std::vector<std::string> labels, std::vector<double> probabilities)
      : labels_(std::move(labels)), probs_(std::move(probabilities)) {
    validate();
  }

  static Distribution uniform(std::vector<std::string> labels) {
    const std::size_t n = labels.size();
    if (n == 0) throw validation_error("distribution needs at least one state");
    return Distribution(std::move(labels), std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }

  static Distribution point_mass(std::vector<std::string> labels, std::size_t index) {
    if (index >= labels.size()) throw validation_error("point mass index out of range");
    std::vector<double> probs(labels.size(), 0.0);
    probs[index] = 1.0;
    return Distribution(std::move(labels), std::move(probs));
  }

  /// Explicit renormalization of nonnegative weights.
  static Distribution normalized(std::vector<std::string> labels, std::vector<double> weights) {
    double total = 0.0;
    for (double w : weights) {
      if (w < 0.0) throw validation_error("negative weight in distribution");
      total += w;
    }
    if (!(total > 0.0)) throw validation_error("cannot normalize all-zero weights");
    for (double& w : weights) w /= total;
    return Distribution(std::move(labels), std::move(weights));
  }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<double>& probabilities() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

  bool same_labels(const Distribution& other) const { return labels_ == other.labels_; }

private:
  void validate() const {
    if (labels_.empty()) throw validation_error("distribution needs at least one state");
    if (labels_.size() != probs_.size()) {
      throw validation_error("distribution has " + std::to_string(labels_.size()) + " labels but " +
                             std::to_string(probs_.size()) + " probabilities");
    }
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_) {
      if (!seen.insert(l).second) throw validation_error("duplicate state label '" + l + "'");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
      if (probs_[i] < 0.0) {
        throw validation_error("negative probability " + format_double(probs_[i]) + " for state '" +
                               labels_[i] + "'");
      }
      sum += probs_[i];
    }
    if (std::abs(sum - 1.0) > kDistributionSumTolerance) {
      throw validation_error("probabilities sum to " + format_double(sum) + ", not 1 (state '" +
                             labels_.front() + "'...)");
    }
  }

  std::vector<std::string> labels_;
  std::vector<double> probs_;
};

/// -sum p ln p in nats; 0 ln 0 = 0.
inline double shannon_entropy(const Distribution& d) {
  double acc = 0.0;
  for (double p : d.probabilities()) acc -= xlnx(p);
  return acc < 0.0 ? 0.0 : acc;  // normalize -0 from rounding
}

/// sum p ln(p/q) in nats. Requires identical labeled state spaces and
/// support(p) within support(q); a violation names the offending state.
inline double relative_entropy(const Distribution& p, const Distribution& q) {
  if (!p.same_labels(q)) {
    throw validation_error("relative entropy requires identical state spaces");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) {
      if (q[i] <= 0.0) {
        throw validation_error("infinite relative entropy: state '" + p.labels()[i] +
                               "' has zero reference probability");
      }
      acc += p[i] * std::log(p[i] / q[i]);
    }
  }
  if (acc < 0.0 && acc > -1e-12) acc = 0.0;  // rounding residue of p == q
  return acc;
}

/// The (entropy change, mismatch, residual, entropy flow) quadruple for one
/// process. Construction enforces the balance flow = change + mismatch +
/// residual exactly.
struct EntropyAccount {
  double entropy_change_nats = 0.0;
  double mismatch_nats = 0.0;
  double residual_nats = 0.0;
  double entropy_flow_nats = 0.0;

  static EntropyAccount from_parts(double change, double mismatch, double residual) {
    EntropyAccount a;
    a.entropy_change_nats = change;
    a.mismatch_nats = mismatch;
    a.residual_nats = residual;
    a.entropy_flow_nats = change + mismatch + residual;
    return a;
  }
};

/// Heat released for a given entropy flow: k*T*s_f. Negative flows pass
/// through (they denote heat absorbed).
inline double heat_from_entropy_flow(double entropy_flow_nats, const PhysicalContext& ctx) {
  return ctx.kT() * entropy_flow_nats;
}

/// Minimum heat to erase one bit: kT ln 2.
inline double landauer_limit(const PhysicalContext& ctx) {
  return ctx.kT() * std::numbers::ln2;
}

}  // namespace entroflow
