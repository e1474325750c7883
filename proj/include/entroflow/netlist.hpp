#pragma once

// Line-oriented netlist format for feedforward stochastic logic circuits.
//
//   # comment
//   inputs a b c
//   gate AND1 AND a b -> w1
//   gate U1 TABLE a b -> t
//   table U1 0.5 0 0 1 ; 0.5 1 1 0
//   group G1 = AND1 U1
//
// Built-in types: AND OR NAND NOR XOR NOT ERASE ID. TABLE gates give the
// conditional-probability matrix explicitly: rows separated by ';', one
// column per input state in lexicographic label order. Gates may be declared
// in any order; the parsed netlist is topologically sorted, and cycles,
// undriven wires and multiply-driven wires are rejected.

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entroflow/errors.hpp"
#include "entroflow/gate.hpp"

namespace entroflow {

struct GateInstance {
  std::string name;
  GateSpec spec;
  std::vector<std::size_t> input_wires;
  std::size_t output_wire = 0;
};

struct CircuitNetlist {
  std::vector<std::string> wire_names;     // primaries first, then gate outputs in topological order
  std::vector<std::size_t> wire_alphabet;  // states per wire
  std::vector<std::size_t> primary_inputs; // indices into wire_names
  std::vector<GateInstance> gates;         // topological order
  // Partition of gate indices; gates not named in any `group` line become
  // singleton groups, so the union always covers the whole circuit.
  std::vector<std::pair<std::string, std::vector<std::size_t>>> groups;

  std::size_t wire_index(std::string_view name) const {
    for (std::size_t i = 0; i < wire_names.size(); ++i) {
      if (wire_names[i] == name) return i;
    }
    throw validation_error("unknown wire '" + std::string(name) + "'");
  }

  /// Product of all wire alphabet sizes == number of joint circuit states.
  double joint_state_count() const {
    double n = 1.0;
    for (std::size_t a : wire_alphabet) n *= static_cast<double>(a);
    return n;
  }
};

namespace detail {

struct RawGate {
  std::string name;
  std::string type;
  std::vector<std::string> inputs;
  std::string output;
  int line = 0;
};

inline bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

[[noreturn]] inline void syntax_error(int line, int column, const std::string& msg) {
  throw validation_error("netlist syntax error at line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + msg);
}

struct Token {
  std::string text;
  int column = 0;
};

inline std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    if (line[i] == '#') break;
    if (line[i] == ';') {  // row separator is always its own token
      out.push_back({";", static_cast<int>(i + 1)});
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#' &&
           line[i] != ';') {
      ++i;
    }
    out.push_back({line.substr(start, i - start), static_cast<int>(start + 1)});
  }
  return out;
}

}  // namespace detail

inline std::optional<BuiltinGate> builtin_gate_from_name(std::string_view type) {
  if (type == "AND") return BuiltinGate::And;
  if (type == "OR") return BuiltinGate::Or;
  if (type == "NAND") return BuiltinGate::Nand;
  if (type == "NOR") return BuiltinGate::Nor;
  if (type == "XOR") return BuiltinGate::Xor;
  if (type == "NOT") return BuiltinGate::Not;
  if (type == "ERASE") return BuiltinGate::Erase;
  if (type == "ID") return BuiltinGate::Id;
  return std::nullopt;
}

inline CircuitNetlist parse_netlist(std::string_view text) {
  using detail::RawGate;
  using detail::syntax_error;
  using detail::Token;

  std::vector<std::string> primaries;
  std::vector<RawGate> raw_gates;
  std::map<std::string, std::vector<std::vector<double>>> tables;  // gate name -> rows
  std::map<std::string, int> table_lines;
  std::vector<std::pair<std::string, std::vector<std::string>>> raw_groups;

  std::istringstream stream{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    auto tokens = detail::tokenize(line);
    if (tokens.empty()) continue;
    const std::string& kw = tokens[0].text;

    if (kw == "inputs") {
      if (tokens.size() < 2) syntax_error(line_no, tokens[0].column, "'inputs' needs wire names");
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (!detail::valid_identifier(tokens[i].text)) {
          syntax_error(line_no, tokens[i].column, "bad wire name '" + tokens[i].text + "'");
        }
        primaries.push_back(tokens[i].text);
      }
    } else if (kw == "gate") {
      // gate <name> <TYPE> <in...> -> <out>
      if (tokens.size() < 6) syntax_error(line_no, tokens[0].column, "'gate' needs name, type, inputs, '->', output");
      RawGate g;
      g.line = line_no;
      g.name = tokens[1].text;
      g.type = tokens[2].text;
      if (!detail::valid_identifier(g.name)) syntax_error(line_no, tokens[1].column, "bad gate name '" + g.name + "'");
      std::size_t arrow = 0;
      for (std::size_t i = 3; i < tokens.size(); ++i) {
        if (tokens[i].text == "->") {
          arrow = i;
          break;
        }
      }
      if (arrow == 0) syntax_error(line_no, tokens.back().column, "missing '->' in gate declaration");
      if (arrow == 3) syntax_error(line_no, tokens[3].column, "gate has no input wires");
      if (arrow + 2 != tokens.size()) syntax_error(line_no, tokens[arrow].column, "exactly one output wire expected after '->'");
      for (std::size_t i = 3; i < arrow; ++i) {
        if (!detail::valid_identifier(tokens[i].text)) syntax_error(line_no, tokens[i].column, "bad wire name '" + tokens[i].text + "'");
        g.inputs.push_back(tokens[i].text);
      }
      if (!detail::valid_identifier(tokens[arrow + 1].text)) {
        syntax_error(line_no, tokens[arrow + 1].column, "bad wire name '" + tokens[arrow + 1].text + "'");
      }
      g.output = tokens[arrow + 1].text;
      raw_gates.push_back(std::move(g));
    } else if (kw == "table") {
      if (tokens.size() < 3) syntax_error(line_no, tokens[0].column, "'table' needs a gate name and matrix rows");
      const std::string& gname = tokens[1].text;
      if (tables.count(gname)) syntax_error(line_no, tokens[1].column, "duplicate table for gate '" + gname + "'");
      std::vector<std::vector<double>> rows(1);
      for (std::size_t i = 2; i < tokens.size(); ++i) {
        if (tokens[i].text == ";") {
          rows.emplace_back();
          continue;
        }
        double v = 0.0;
        try {
          v = parse_double(tokens[i].text);
        } catch (const validation_error&) {
          syntax_error(line_no, tokens[i].column, "expected a probability, got '" + tokens[i].text + "'");
        }
        rows.back().push_back(v);
      }
      if (rows.back().empty()) rows.pop_back();
      if (rows.empty()) syntax_error(line_no, tokens[2].column, "table has no entries");
      tables[gname] = std::move(rows);
      table_lines[gname] = line_no;
    } else if (kw == "group") {
      // group <name> = <gates...>
      if (tokens.size() < 4 || tokens[2].text != "=") {
        syntax_error(line_no, tokens[0].column, "'group' syntax is: group <name> = <gate names...>");
      }
      std::vector<std::string> members;
      for (std::size_t i = 3; i < tokens.size(); ++i) members.push_back(tokens[i].text);
      raw_groups.emplace_back(tokens[1].text, std::move(members));
    } else {
      syntax_error(line_no, tokens[0].column, "unknown directive '" + kw + "'");
    }
  }

  if (primaries.empty()) throw validation_error("netlist declares no primary inputs");

  // Driver map: every wire has exactly one driver.
  std::map<std::string, std::string> driver;  // wire -> "input" or gate name
  for (const auto& p : primaries) {
    if (!driver.emplace(p, "input").second) {
      throw validation_error("wire '" + p + "' declared as primary input twice");
    }
  }
  std::map<std::string, std::size_t> gate_by_name;
  for (std::size_t i = 0; i < raw_gates.size(); ++i) {
    const auto& g = raw_gates[i];
    if (!gate_by_name.emplace(g.name, i).second) {
      throw validation_error("duplicate gate name '" + g.name + "' (line " + std::to_string(g.line) + ")");
    }
    auto [it, fresh] = driver.emplace(g.output, g.name);
    if (!fresh) {
      throw validation_error("wire '" + g.output + "' is multiply driven (by '" + it->second +
                             "' and '" + g.name + "')");
    }
  }
  for (const auto& g : raw_gates) {
    for (const auto& in : g.inputs) {
      if (!driver.count(in)) {
        throw validation_error("wire '" + in + "' used by gate '" + g.name +
                               "' is undriven (not a primary input or a gate output)");
      }
    }
  }
  for (const auto& [gname, rows] : tables) {
    if (!gate_by_name.count(gname)) {
      throw validation_error("table given for unknown gate '" + gname + "' (line " +
                             std::to_string(table_lines.at(gname)) + ")");
    }
  }

  // Kahn topological sort over the gate dependency graph.
  std::vector<std::size_t> order;
  {
    std::vector<std::size_t> pending(raw_gates.size(), 0);
    std::map<std::string, std::vector<std::size_t>> consumers;  // wire -> gate indices
    for (std::size_t i = 0; i < raw_gates.size(); ++i) {
      for (const auto& in : raw_gates[i].inputs) {
        if (driver.at(in) != "input") {
          ++pending[i];
          consumers[in].push_back(i);
        }
      }
    }
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < raw_gates.size(); ++i) {
      if (pending[i] == 0) ready.push_back(i);
    }
    while (!ready.empty()) {
      std::size_t i = ready.front();
      ready.erase(ready.begin());
      order.push_back(i);
      auto it = consumers.find(raw_gates[i].output);
      if (it != consumers.end()) {
        for (std::size_t j : it->second) {
          if (--pending[j] == 0) ready.push_back(j);
        }
      }
    }
    if (order.size() != raw_gates.size()) {
      std::string cyclic;
      for (std::size_t i = 0; i < raw_gates.size(); ++i) {
        if (pending[i] > 0) cyclic += (cyclic.empty() ? "" : ", ") + raw_gates[i].name;
      }
      throw validation_error("cycle detected among gates: " + cyclic);
    }
  }

  // Build wires and gate specs in topological order so every gate sees the
  // alphabets of its input wires.
  CircuitNetlist net;
  std::map<std::string, std::size_t> wire_index;
  for (const auto& p : primaries) {
    wire_index[p] = net.wire_names.size();
    net.primary_inputs.push_back(net.wire_names.size());
    net.wire_names.push_back(p);
    net.wire_alphabet.push_back(2);
  }

  std::map<std::string, std::size_t> final_gate_index;
  for (std::size_t raw_idx : order) {
    const RawGate& rg = raw_gates[raw_idx];
    GateInstance inst;
    inst.name = rg.name;
    for (const auto& in : rg.inputs) inst.input_wires.push_back(wire_index.at(in));

    if (auto builtin = builtin_gate_from_name(rg.type)) {
      for (std::size_t w : inst.input_wires) {
        if (net.wire_alphabet[w] != 2) {
          throw validation_error("gate '" + rg.name + "': built-in type " + rg.type +
                                 " requires binary input wires, but '" + net.wire_names[w] +
                                 "' has " + std::to_string(net.wire_alphabet[w]) + " states");
        }
      }
      inst.spec = make_builtin_gate(*builtin, rg.inputs.size());
      inst.spec.name = rg.type;
    } else if (rg.type == "TABLE") {
      auto it = tables.find(rg.name);
      if (it == tables.end()) {
        throw validation_error("gate '" + rg.name + "' has type TABLE but no table line");
      }
      const auto& rows = it->second;
      std::size_t n_in = 1;
      std::vector<std::size_t> radices;
      for (std::size_t w : inst.input_wires) {
        radices.push_back(net.wire_alphabet[w]);
        n_in *= net.wire_alphabet[w];
      }
      const std::size_t n_out = rows.size();
      if (n_out > 10) {
        throw validation_error("gate '" + rg.name + "': output alphabets above 10 states are not supported");
      }
      GateSpec spec;
      spec.name = rg.name;
      // Input labels: digit tuples over the input wires, lexicographic.
      for (std::size_t v = 0; v < n_in; ++v) {
        std::string label(radices.size(), '0');
        std::size_t rem = v;
        for (std::size_t j = radices.size(); j-- > 0;) {
          label[j] = static_cast<char>('0' + rem % radices[j]);
          rem /= radices[j];
        }
        spec.input_states.push_back(std::move(label));
      }
      for (std::size_t r = 0; r < n_out; ++r) spec.output_states.push_back(std::to_string(r));
      spec.transition.assign(n_out * n_in, 0.0);
      for (std::size_t r = 0; r < n_out; ++r) {
        if (rows[r].size() != n_in) {
          throw validation_error("gate '" + rg.name + "': table row " + std::to_string(r) + " has " +
                                 std::to_string(rows[r].size()) + " entries, expected " +
                                 std::to_string(n_in));
        }
        for (std::size_t c = 0; c < n_in; ++c) spec.transition[r * n_in + c] = rows[r][c];
      }
      try {
        spec.validate();
      } catch (const validation_error& e) {
        throw validation_error("non-stochastic user matrix: " + std::string(e.what()));
      }
      inst.spec = std::move(spec);
    } else {
      throw validation_error("gate '" + rg.name + "': unknown gate type '" + rg.type +
                             "' (line " + std::to_string(rg.line) + ")");
    }

    wire_index[rg.output] = net.wire_names.size();
    inst.output_wire = net.wire_names.size();
    net.wire_names.push_back(rg.output);
    net.wire_alphabet.push_back(inst.spec.n_outputs());
    final_gate_index[inst.name] = net.gates.size();
    net.gates.push_back(std::move(inst));
  }

  // Groups: declared groups must be disjoint and reference real gates;
  // uncovered gates become singleton groups.
  std::vector<bool> grouped(net.gates.size(), false);
  std::map<std::string, bool> group_names;
  for (const auto& [gname, members] : raw_groups) {
    if (!group_names.emplace(gname, true).second) {
      throw validation_error("duplicate group name '" + gname + "'");
    }
    std::vector<std::size_t> idx;
    for (const auto& m : members) {
      auto it = final_gate_index.find(m);
      if (it == final_gate_index.end()) {
        throw validation_error("group '" + gname + "' references unknown gate '" + m + "'");
      }
      if (grouped[it->second]) {
        throw validation_error("gate '" + m + "' appears in more than one group");
      }
      grouped[it->second] = true;
      idx.push_back(it->second);
    }
    net.groups.emplace_back(gname, std::move(idx));
  }
  for (std::size_t i = 0; i < net.gates.size(); ++i) {
    if (!grouped[i]) net.groups.emplace_back(net.gates[i].name, std::vector<std::size_t>{i});
  }

  return net;
}

}  // namespace entroflow
