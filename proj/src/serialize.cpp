// Copyright 2026 The qnc-butterfly Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sstream>

#include <json.hpp>

#include "qnc/circuit.hpp"

namespace qnc {

namespace {

std::string mask_to_regs(uint32_t mask) {
  std::string out;
  for (int r = 0; r < 32; ++r) {
    if ((mask >> r) & 1u) {
      if (!out.empty()) out += '+';
      out += std::to_string(r);
    }
  }
  return out;
}

uint32_t regs_to_mask(const std::string& s) {
  uint32_t mask = 0;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, '+')) {
    const int r = std::stoi(tok);
    if (r < 0 || r >= 32) throw std::invalid_argument("register index out of range: " + tok);
    mask |= 1u << r;
  }
  if (mask == 0) throw std::invalid_argument("empty register parity: " + s);
  return mask;
}

std::string step_to_text(const GateStep& step) {
  std::ostringstream os;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Hadamard>) {
          os << "H " << label_of(s.q);
        } else if constexpr (std::is_same_v<T, Cnot>) {
          os << "CX " << label_of(s.control) << ' ' << label_of(s.target);
        } else if constexpr (std::is_same_v<T, MeasureZ>) {
          os << "MZ " << label_of(s.q) << " -> " << int(s.reg);
        } else if constexpr (std::is_same_v<T, MeasureX>) {
          os << "MX " << label_of(s.q) << " -> " << int(s.reg);
        } else if constexpr (std::is_same_v<T, CondX>) {
          os << "X " << label_of(s.q) << " if " << mask_to_regs(s.reg_mask);
        } else if constexpr (std::is_same_v<T, CondZ>) {
          os << "Z " << label_of(s.q) << " if " << mask_to_regs(s.reg_mask);
        } else if constexpr (std::is_same_v<T, ErrorSlot>) {
          os << "ERR " << slot_kind_name(s.kind) << ' ' << label_of(s.a) << ' '
             << label_of(s.b);
        }
      },
      step);
  return os.str();
}

SlotKind slot_kind_from_name(const std::string& s) {
  if (s == "init") return SlotKind::InitPair;
  if (s == "cnot") return SlotKind::GateCnot;
  if (s == "gate") return SlotKind::GateSingle;
  if (s == "meas") return SlotKind::Measure;
  if (s == "mem") return SlotKind::Memory;
  throw std::invalid_argument("unknown error-slot kind: " + s);
}

GateStep step_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string op;
  is >> op;
  auto qubit = [&] {
    std::string t;
    is >> t;
    if (t.size() != 1) throw std::invalid_argument("bad qubit token: " + t);
    return qubit_from_label(t[0]);
  };
  auto expect = [&](const char* word) {
    std::string t;
    is >> t;
    if (t != word) throw std::invalid_argument("expected '" + std::string(word) + "' in: " + text);
  };
  auto reg = [&] {
    int r;
    is >> r;
    if (is.fail() || r < 0 || r >= 32) throw std::invalid_argument("bad register in: " + text);
    return static_cast<uint8_t>(r);
  };
  if (op == "H") return Hadamard{qubit()};
  if (op == "CX") {
    const Qubit c = qubit();
    return Cnot{c, qubit()};
  }
  if (op == "MZ" || op == "MX") {
    const Qubit q = qubit();
    expect("->");
    const uint8_t r = reg();
    if (op == "MZ") return MeasureZ{q, r};
    return MeasureX{q, r};
  }
  if (op == "X" || op == "Z") {
    const Qubit q = qubit();
    expect("if");
    std::string masks;
    is >> masks;
    const uint32_t mask = regs_to_mask(masks);
    if (op == "X") return CondX{q, mask};
    return CondZ{q, mask};
  }
  if (op == "ERR") {
    std::string kind;
    is >> kind;
    const SlotKind k = slot_kind_from_name(kind);
    const Qubit a = qubit();
    return ErrorSlot{k, a, qubit()};
  }
  throw std::invalid_argument("unknown op in: " + text);
}

std::string pair_to_text(std::pair<Qubit, Qubit> p) {
  return std::string{label_of(p.first), label_of(p.second)};
}

std::pair<Qubit, Qubit> pair_from_text(const std::string& s) {
  if (s.size() != 2) throw std::invalid_argument("bad qubit pair: " + s);
  return {qubit_from_label(s[0]), qubit_from_label(s[1])};
}

}  // namespace

std::string dump_text(const Circuit& circuit) {
  std::ostringstream os;
  os << "protocol " << protocol_name(circuit.protocol) << '\n';
  os << "repetitions " << circuit.repetitions << '\n';
  os << "registers";
  for (const auto& r : circuit.registers) os << ' ' << r;
  os << '\n';
  os << "initial_pairs";
  for (auto p : circuit.initial_pairs) os << ' ' << pair_to_text(p);
  os << '\n';
  os << "final_pairs";
  for (auto p : circuit.final_pairs) os << ' ' << pair_to_text(p);
  os << '\n';
  for (const auto& slice : circuit.slices) {
    os << "step " << slice.step_label << ':';
    for (size_t i = 0; i < slice.steps.size(); ++i) {
      os << (i == 0 ? " " : "; ") << step_to_text(slice.steps[i]);
    }
    os << '\n';
  }
  return os.str();
}

Circuit parse_text(const std::string& text) {
  Circuit c;
  std::istringstream is(text);
  std::string line;
  bool saw_protocol = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "protocol") {
      std::string name;
      ls >> name;
      c.protocol = protocol_from_name(name);
      saw_protocol = true;
    } else if (key == "repetitions") {
      ls >> c.repetitions;
      if (ls.fail()) throw std::invalid_argument("bad repetitions line: " + line);
    } else if (key == "registers") {
      std::string r;
      while (ls >> r) c.registers.push_back(r);
    } else if (key == "initial_pairs") {
      std::string p;
      while (ls >> p) c.initial_pairs.push_back(pair_from_text(p));
    } else if (key == "final_pairs") {
      std::string p;
      while (ls >> p) c.final_pairs.push_back(pair_from_text(p));
    } else if (key == "step") {
      Slice slice;
      ls >> slice.step_label;
      char colon;
      ls >> colon;
      if (ls.fail() || colon != ':') throw std::invalid_argument("bad step line: " + line);
      std::string rest;
      std::getline(ls, rest);
      std::stringstream body(rest);
      std::string tok;
      while (std::getline(body, tok, ';')) {
        const size_t b = tok.find_first_not_of(' ');
        if (b == std::string::npos) continue;
        slice.steps.push_back(step_from_text(tok.substr(b)));
      }
      c.slices.push_back(std::move(slice));
    } else {
      throw std::invalid_argument("unknown line: " + line);
    }
  }
  if (!saw_protocol) throw std::invalid_argument("missing protocol line");
  c.validate();
  return c;
}

std::string dump_json(const Circuit& circuit) {
  nlohmann::json j;
  j["protocol"] = protocol_name(circuit.protocol);
  j["repetitions"] = circuit.repetitions;
  j["registers"] = circuit.registers;
  auto pairs = [](const std::vector<std::pair<Qubit, Qubit>>& ps) {
    nlohmann::json a = nlohmann::json::array();
    for (auto p : ps) a.push_back(pair_to_text(p));
    return a;
  };
  j["initial_pairs"] = pairs(circuit.initial_pairs);
  j["final_pairs"] = pairs(circuit.final_pairs);
  j["slices"] = nlohmann::json::array();
  for (const auto& slice : circuit.slices) {
    nlohmann::json s;
    s["step"] = slice.step_label;
    s["ops"] = nlohmann::json::array();
    for (const auto& step : slice.steps) s["ops"].push_back(step_to_text(step));
    j["slices"].push_back(std::move(s));
  }
  return j.dump(2) + "\n";
}

Circuit parse_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  Circuit c;
  c.protocol = protocol_from_name(j.at("protocol").get<std::string>());
  c.repetitions = j.at("repetitions").get<int>();
  c.registers = j.at("registers").get<std::vector<std::string>>();
  for (const auto& p : j.at("initial_pairs")) {
    c.initial_pairs.push_back(pair_from_text(p.get<std::string>()));
  }
  for (const auto& p : j.at("final_pairs")) {
    c.final_pairs.push_back(pair_from_text(p.get<std::string>()));
  }
  for (const auto& s : j.at("slices")) {
    Slice slice;
    slice.step_label = s.at("step").get<int>();
    for (const auto& op : s.at("ops")) {
      slice.steps.push_back(step_from_text(op.get<std::string>()));
    }
    c.slices.push_back(std::move(slice));
  }
  c.validate();
  return c;
}

}  // namespace qnc
