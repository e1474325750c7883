#pragma once

// Exact propagation of state distributions through a feedforward circuit and
// the per-gate entropy-flow accounting built on top of it.
//
// Propagation tracks the exact joint distribution over all wires by
// exhaustive enumeration (no sampling), so results are deterministic. The
// accounting itself uses per-gate marginals: correlations between wires are
// deliberately ignored there, but the joint is retained so the discrepancy
// can be inspected.

#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entroflow/errors.hpp"
#include "entroflow/gate.hpp"
#include "entroflow/netlist.hpp"
#include "entroflow/thermo.hpp"

namespace entroflow {

/// Hard cap on the joint state count tracked by propagate(): 2^20, i.e. up
/// to 20 binary wires.
inline constexpr double kMaxJointStates = 1048576.0;

struct GateTrace {
  std::string gate_name;
  Distribution initial;  // over the gate's input states
  Distribution end;      // over the gate's output states
};

struct PropagationResult {
  std::vector<GateTrace> traces;         // one per gate, in circuit order
  std::vector<double> joint;             // joint distribution over all wires
  std::vector<std::size_t> wire_radix;   // per wire, in netlist wire order
  double joint_entropy_nats = 0.0;
};

/// Canonical labels for the joint primary-input space: digit tuples over the
/// primary inputs in declaration order, lexicographic.
inline std::vector<std::string> joint_input_labels(const CircuitNetlist& c) {
  std::size_t n = 1;
  std::vector<std::size_t> radices;
  for (std::size_t w : c.primary_inputs) {
    radices.push_back(c.wire_alphabet[w]);
    n *= c.wire_alphabet[w];
  }
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::string label(radices.size(), '0');
    std::size_t rem = v;
    for (std::size_t j = radices.size(); j-- > 0;) {
      label[j] = static_cast<char>('0' + rem % radices[j]);
      rem /= radices[j];
    }
    labels.push_back(std::move(label));
  }
  return labels;
}

inline Distribution joint_uniform_input(const CircuitNetlist& c) {
  return Distribution::uniform(joint_input_labels(c));
}

namespace detail {

/// Marginalize a joint distribution (mixed radix over wires 0..n-1, wire 0
/// slowest) onto an ordered subset of wires.
inline std::vector<double> marginalize(const std::vector<double>& joint,
                                       const std::vector<std::size_t>& radices,
                                       const std::vector<std::size_t>& wires) {
  std::vector<std::size_t> strides(radices.size(), 1);
  for (std::size_t i = radices.size() - 1; i-- > 0;) {
    strides[i] = strides[i + 1] * radices[i + 1];
  }
  std::size_t out_size = 1;
  for (std::size_t w : wires) out_size *= radices[w];
  std::vector<double> out(out_size, 0.0);
  for (std::size_t idx = 0; idx < joint.size(); ++idx) {
    if (joint[idx] == 0.0) continue;
    std::size_t key = 0;
    for (std::size_t w : wires) {
      key = key * radices[w] + (idx / strides[w]) % radices[w];
    }
    out[key] += joint[idx];
  }
  return out;
}

}  // namespace detail

/// Exact joint propagation. The input distribution must be over the full
/// joint primary-input alphabet in canonical label order.
inline PropagationResult propagate(const CircuitNetlist& c, const Distribution& input) {
  if (c.joint_state_count() > kMaxJointStates) {
    throw validation_error("circuit joint state space exceeds the exact-enumeration limit of 2^20 "
                           "states (~20 binary wires); reduce the circuit");
  }
  const auto expected_labels = joint_input_labels(c);
  if (input.labels() != expected_labels) {
    throw validation_error("input distribution must cover the joint primary-input space (" +
                           std::to_string(expected_labels.size()) +
                           " states, labels in lexicographic order)");
  }

  // Joint over wires processed so far; a gate's output wire is appended as
  // the fastest-varying digit.
  std::vector<double> joint(input.probabilities());
  std::vector<std::size_t> radices;
  for (std::size_t w : c.primary_inputs) radices.push_back(c.wire_alphabet[w]);

  for (const GateInstance& g : c.gates) {
    const std::size_t r = g.spec.n_outputs();
    // Strides in the current indexing (last wire fastest).
    std::vector<std::size_t> strides(radices.size(), 1);
    for (std::size_t i = radices.size() - 1; i-- > 0;) strides[i] = strides[i + 1] * radices[i + 1];

    std::vector<double> next(joint.size() * r, 0.0);
    for (std::size_t idx = 0; idx < joint.size(); ++idx) {
      const double p = joint[idx];
      if (p == 0.0) continue;
      std::size_t col = 0;
      for (std::size_t w : g.input_wires) {
        col = col * radices[w] + (idx / strides[w]) % radices[w];
      }
      for (std::size_t y = 0; y < r; ++y) {
        const double t = g.spec.prob(y, col);
        if (t > 0.0) next[idx * r + y] += p * t;
      }
    }
    joint = std::move(next);
    radices.push_back(r);
  }

  PropagationResult result;
  result.joint = std::move(joint);
  result.wire_radix = radices;
  for (double p : result.joint) result.joint_entropy_nats -= xlnx(p);
  if (result.joint_entropy_nats < 0.0) result.joint_entropy_nats = 0.0;

  for (const GateInstance& g : c.gates) {
    auto initial = detail::marginalize(result.joint, radices, g.input_wires);
    auto end = detail::marginalize(result.joint, radices, {g.output_wire});
    result.traces.push_back(GateTrace{g.name, Distribution(g.spec.input_states, std::move(initial)),
                                      Distribution(g.spec.output_states, std::move(end))});
  }
  return result;
}

// ---------------------------------------------------------------------------
// Entropy-flow accounting
// ---------------------------------------------------------------------------

/// Entropy account of a single gate run:
///   entropy change  S(p_ini) - S(p_end)
///   mismatch        D(p_ini || q_ini) - D(p_end || q_end), q_end the
///                   pushforward of the reference input q_ini
///   residual        implementation-dependent constant, passed through
inline EntropyAccount gate_entropy_account(const GateSpec& g, const GateTrace& trace,
                                           const Distribution& q_ini, double residual_nats) {
  if (residual_nats < 0.0) {
    throw validation_error("gate '" + trace.gate_name + "': residual entropy must be >= 0");
  }
  if (q_ini.labels() != g.input_states) {
    throw validation_error("gate '" + trace.gate_name +
                           "': reference distribution is not over the gate's input states");
  }
  const Distribution q_end = g.apply(q_ini);
  const double change = shannon_entropy(trace.initial) - shannon_entropy(trace.end);
  double mismatch = 0.0;
  try {
    mismatch = relative_entropy(trace.initial, q_ini) - relative_entropy(trace.end, q_end);
  } catch (const validation_error& e) {
    throw validation_error("gate '" + trace.gate_name + "': " + e.what());
  }
  return EntropyAccount::from_parts(change, mismatch, residual_nats);
}

/// Closed form for a NAND gate run against a uniform reference with zero
/// residual: the flow depends only on the probability of output 1 and equals
/// p1 * ln 3 for any input distribution.
inline double nand_entropy_flow(double p_end_one) {
  if (!(p_end_one >= 0.0 && p_end_one <= 1.0)) {
    throw validation_error("output probability must be in [0, 1], got " + format_double(p_end_one));
  }
  return p_end_one * std::log(3.0);
}

/// Entropy flow per floating-point operation per gate at the uniform-input
/// operating point of a NAND gate: (3/4) ln 3 nats. The same quantity in
/// bits is (3/4) log2(3), which multiplied by kT ln 2 per bit gives the
/// identical energy.
inline double flo_gate_entropy_nats() { return 0.75 * std::log(3.0); }

/// Energy floor for a circuit of `gate_count` NAND-equivalent gates running
/// `flo_count` floating-point operations: (3/4) ln 3 * kT * O * N.
inline double nand_network_energy_bound(double flo_count, double gate_count, const PhysicalContext& ctx) {
  if (flo_count < 0.0 || gate_count < 0.0) {
    throw validation_error("operation and gate counts must be >= 0");
  }
  return flo_gate_entropy_nats() * ctx.kT() * flo_count * gate_count;
}

struct GateAccountEntry {
  std::string gate_name;
  std::string gate_type;
  GateTrace trace;
  EntropyAccount account;
  IslandPartition island_partition;
  std::vector<double> island_masses;  // under the propagated initial marginal
};

struct CircuitFlowReport {
  std::vector<GateAccountEntry> gates;  // circuit order
  std::vector<std::pair<std::string, EntropyAccount>> group_totals;
  EntropyAccount grand_total;  // summed in circuit order; independent of grouping
  double joint_entropy_nats = 0.0;
  double marginal_entropy_sum_nats = 0.0;  // sum of per-gate end-marginal entropies
  // (3/4) ln 3 per gate: the flow a NAND network would show if every gate saw
  // the uniform operating point. Internal wires are generally non-uniform, so
  // the accounted grand total can sit below this; both are reported so the
  // discrepancy is visible.
  double uniform_nand_bound_nats = 0.0;
};

/// Per-gate reference distributions; gates not listed use the uniform
/// distribution over their input states.
struct QPolicy {
  std::map<std::string, Distribution> overrides;
};

inline CircuitFlowReport circuit_entropy_flow(const CircuitNetlist& c, const Distribution& input,
                                              const QPolicy& q_policy = {},
                                              const std::map<std::string, double>& residuals_nats = {}) {
  for (const auto& [name, _] : q_policy.overrides) {
    bool known = false;
    for (const auto& g : c.gates) known = known || g.name == name;
    if (!known) throw validation_error("reference-distribution override for unknown gate '" + name + "'");
  }
  for (const auto& [name, r] : residuals_nats) {
    bool known = false;
    for (const auto& g : c.gates) known = known || g.name == name;
    if (!known) throw validation_error("residual given for unknown gate '" + name + "'");
    if (r < 0.0) throw validation_error("gate '" + name + "': residual entropy must be >= 0");
  }

  PropagationResult prop = propagate(c, input);

  CircuitFlowReport report;
  report.joint_entropy_nats = prop.joint_entropy_nats;
  report.uniform_nand_bound_nats = flo_gate_entropy_nats() * static_cast<double>(c.gates.size());
  double change = 0.0, mismatch = 0.0, residual = 0.0;
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const GateInstance& g = c.gates[i];
    const GateTrace& trace = prop.traces[i];

    auto q_it = q_policy.overrides.find(g.name);
    const Distribution q_ini = (q_it != q_policy.overrides.end()) ? q_it->second : g.spec.uniform_input();
    auto r_it = residuals_nats.find(g.name);
    const double r = (r_it != residuals_nats.end()) ? r_it->second : 0.0;

    GateAccountEntry entry{g.name, g.spec.name, trace, gate_entropy_account(g.spec, trace, q_ini, r),
                           islands(g.spec), {}};
    entry.island_masses = entry.island_partition.masses(trace.initial);
    report.marginal_entropy_sum_nats += shannon_entropy(trace.end);

    change += entry.account.entropy_change_nats;
    mismatch += entry.account.mismatch_nats;
    residual += entry.account.residual_nats;
    report.gates.push_back(std::move(entry));
  }
  report.grand_total = EntropyAccount::from_parts(change, mismatch, residual);

  for (const auto& [gname, members] : c.groups) {
    double gc = 0.0, gm = 0.0, gr = 0.0;
    for (std::size_t i : members) {
      gc += report.gates[i].account.entropy_change_nats;
      gm += report.gates[i].account.mismatch_nats;
      gr += report.gates[i].account.residual_nats;
    }
    report.group_totals.emplace_back(gname, EntropyAccount::from_parts(gc, gm, gr));
  }
  return report;
}

}  // namespace entroflow
