#pragma once

// One logic gate as a physical process: a labeled column-stochastic
// conditional-probability matrix from input states to output states, plus the
// partition of the input-state space into islands.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "entroflow/errors.hpp"
#include "entroflow/thermo.hpp"

namespace entroflow {

inline constexpr double kColumnSumTolerance = 1e-12;

/// Conditional-probability matrix of a gate. Rows are output (end) states,
/// columns are input (initial) states; every column sums to 1.
struct GateSpec {
  std::string name;
  std::vector<std::string> input_states;
  std::vector<std::string> output_states;
  std::vector<double> transition;  // row-major, transition[row * n_in + col]

  std::size_t n_inputs() const { return input_states.size(); }
  std::size_t n_outputs() const { return output_states.size(); }

  double prob(std::size_t out, std::size_t in) const { return transition[out * n_inputs() + in]; }

  void validate() const {
    if (input_states.empty() || output_states.empty()) {
      throw validation_error("gate '" + name + "': state spaces must be nonempty");
    }
    auto check_unique = [this](const std::vector<std::string>& v, const char* which) {
      std::vector<std::string> s(v);
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
        throw validation_error("gate '" + name + "': duplicate " + which + " state label");
      }
    };
    check_unique(input_states, "input");
    check_unique(output_states, "output");
    if (transition.size() != n_inputs() * n_outputs()) {
      throw validation_error("gate '" + name + "': matrix shape mismatch");
    }
    for (std::size_t col = 0; col < n_inputs(); ++col) {
      double sum = 0.0;
      for (std::size_t row = 0; row < n_outputs(); ++row) {
        const double v = prob(row, col);
        if (v < 0.0) {
          throw validation_error("gate '" + name + "': negative transition probability for input '" +
                                 input_states[col] + "'");
        }
        sum += v;
      }
      if (std::abs(sum - 1.0) > kColumnSumTolerance) {
        throw validation_error("gate '" + name + "': column for input '" + input_states[col] +
                               "' sums to " + format_double(sum) + ", not 1");
      }
    }
  }

  /// Pushforward of an input distribution through the gate.
  Distribution apply(const Distribution& input) const {
    if (input.labels() != input_states) {
      throw validation_error("gate '" + name + "': distribution is not over the gate's input states");
    }
    std::vector<double> out(n_outputs(), 0.0);
    for (std::size_t row = 0; row < n_outputs(); ++row) {
      for (std::size_t col = 0; col < n_inputs(); ++col) {
        out[row] += prob(row, col) * input[col];
      }
    }
    return Distribution(output_states, std::move(out));
  }

  Distribution uniform_input() const { return Distribution::uniform(input_states); }
};

// ---------------------------------------------------------------------------
// Built-in gates
// ---------------------------------------------------------------------------

enum class BuiltinGate { And, Or, Nand, Nor, Xor, Not, Erase, Id };

inline const char* builtin_gate_name(BuiltinGate g) {
  switch (g) {
    case BuiltinGate::And: return "AND";
    case BuiltinGate::Or: return "OR";
    case BuiltinGate::Nand: return "NAND";
    case BuiltinGate::Nor: return "NOR";
    case BuiltinGate::Xor: return "XOR";
    case BuiltinGate::Not: return "NOT";
    case BuiltinGate::Erase: return "ERASE";
    case BuiltinGate::Id: return "ID";
  }
  return "?";
}

/// Labels "00","01",... for all bit tuples of the given width, in
/// lexicographic order.
inline std::vector<std::string> bit_tuple_labels(std::size_t width) {
  std::vector<std::string> labels;
  labels.reserve(std::size_t{1} << width);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << width); ++v) {
    std::string l(width, '0');
    for (std::size_t b = 0; b < width; ++b) {
      if ((v >> (width - 1 - b)) & 1u) l[b] = '1';
    }
    labels.push_back(std::move(l));
  }
  return labels;
}

/// Deterministic truth-table gate over `arity` binary inputs.
inline GateSpec make_builtin_gate(BuiltinGate type, std::size_t arity) {
  const bool unary_only = (type == BuiltinGate::Not);
  if (unary_only && arity != 1) {
    throw validation_error(std::string(builtin_gate_name(type)) + " takes exactly one input");
  }
  if (arity == 0) throw validation_error("gate arity must be >= 1");
  if ((type == BuiltinGate::And || type == BuiltinGate::Or || type == BuiltinGate::Nand ||
       type == BuiltinGate::Nor || type == BuiltinGate::Xor) &&
      arity < 2) {
    throw validation_error(std::string(builtin_gate_name(type)) + " takes at least two inputs");
  }

  GateSpec g;
  g.name = builtin_gate_name(type);
  g.input_states = bit_tuple_labels(arity);

  if (type == BuiltinGate::Id) {
    g.output_states = g.input_states;
    const std::size_t n = g.input_states.size();
    g.transition.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) g.transition[i * n + i] = 1.0;
    g.validate();
    return g;
  }

  g.output_states = {"0", "1"};
  const std::size_t n_in = g.input_states.size();
  g.transition.assign(2 * n_in, 0.0);
  for (std::size_t col = 0; col < n_in; ++col) {
    const std::string& bits = g.input_states[col];
    const std::size_t ones = static_cast<std::size_t>(std::count(bits.begin(), bits.end(), '1'));
    bool out = false;
    switch (type) {
      case BuiltinGate::And: out = (ones == arity); break;
      case BuiltinGate::Nand: out = !(ones == arity); break;
      case BuiltinGate::Or: out = (ones > 0); break;
      case BuiltinGate::Nor: out = !(ones > 0); break;
      case BuiltinGate::Xor: out = (ones % 2 == 1); break;
      case BuiltinGate::Not: out = (ones == 0); break;
      case BuiltinGate::Erase: out = false; break;
      case BuiltinGate::Id: break;  // handled above
    }
    g.transition[(out ? 1u : 0u) * n_in + col] = 1.0;
  }
  g.validate();
  return g;
}

// ---------------------------------------------------------------------------
// Island partition
// ---------------------------------------------------------------------------

/// Partition of a gate's input states into islands: two inputs are in the
/// same island iff they are linked by the transitive closure of "some output
/// state is reachable from both with positive probability". Sub-processes on
/// distinct islands are thermodynamically independent; their output supports
/// are disjoint by construction.
struct IslandPartition {
  // Indices into the gate's input_states. Each island is sorted ascending and
  // islands are ordered by their smallest member, so the partition is
  // canonical regardless of discovery order.
  std::vector<std::vector<std::size_t>> islands;

  /// Probability mass of each island under a distribution over the gate's
  /// input states.
  std::vector<double> masses(const Distribution& input) const {
    std::vector<double> m;
    m.reserve(islands.size());
    for (const auto& isl : islands) {
      double acc = 0.0;
      for (std::size_t idx : isl) acc += input[idx];
      m.push_back(acc);
    }
    return m;
  }
};

inline IslandPartition islands(const GateSpec& g) {
  g.validate();
  const std::size_t n = g.n_inputs();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  auto unite = [&](std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };

  for (std::size_t row = 0; row < g.n_outputs(); ++row) {
    std::size_t first = n;
    for (std::size_t col = 0; col < n; ++col) {
      if (g.prob(row, col) > 0.0) {
        if (first == n) {
          first = col;
        } else {
          unite(first, col);
        }
      }
    }
  }

  std::vector<std::vector<std::size_t>> groups(n);
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);

  IslandPartition part;
  for (auto& grp : groups) {
    if (!grp.empty()) part.islands.push_back(std::move(grp));
  }
  return part;
}

}  // namespace entroflow
