#include "qrom/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

namespace qrom {

namespace {

constexpr std::array<std::string_view, 6> kRoleNames = {
    "address_q", "address_r", "output", "dirty", "work", "temp"};

constexpr std::array<std::string_view, 6> kGateNames = {
    "X", "CNOT", "TOFFOLI", "CSWAP", "TEMP_AND", "TEMP_AND_UNCOMPUTE"};

bool valid_identifier(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_';
  });
}

}  // namespace

std::string_view role_name(Role role) {
  return kRoleNames[static_cast<std::size_t>(role)];
}

Role parse_role(std::string_view text) {
  for (std::size_t i = 0; i < kRoleNames.size(); ++i) {
    if (kRoleNames[i] == text) return static_cast<Role>(i);
  }
  throw CircuitError("unknown register role '" + std::string(text) + "'");
}

std::string_view gate_name(GateKind kind) {
  return kGateNames[static_cast<std::size_t>(kind)];
}

std::size_t gate_arity(GateKind kind) {
  switch (kind) {
    case GateKind::X:
      return 1;
    case GateKind::CNOT:
      return 2;
    default:
      return 3;
  }
}

Circuit::Circuit(std::vector<RegisterSpec> registers)
    : registers_(std::move(registers)) {
  for (std::size_t i = 0; i < registers_.size(); ++i) {
    const auto& r = registers_[i];
    if (!valid_identifier(r.name)) {
      throw CircuitError("invalid register name '" + r.name + "'");
    }
    if (r.size == 0) {
      throw CircuitError("register '" + r.name + "' has zero size");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (registers_[j].name == r.name) {
        throw CircuitError("duplicate register name '" + r.name + "'");
      }
    }
    bases_.push_back(static_cast<Qubit>(num_qubits_));
    owner_.insert(owner_.end(), r.size, i);
    num_qubits_ += r.size;
  }
}

std::size_t Circuit::register_index(std::string_view name) const {
  for (std::size_t i = 0; i < registers_.size(); ++i) {
    if (registers_[i].name == name) return i;
  }
  throw CircuitError("unknown register '" + std::string(name) + "'");
}

bool Circuit::has_register(std::string_view name) const {
  return std::any_of(registers_.begin(), registers_.end(),
                     [&](const RegisterSpec& r) { return r.name == name; });
}

const RegisterSpec& Circuit::reg(std::string_view name) const {
  return registers_[register_index(name)];
}

Qubit Circuit::base(std::string_view name) const {
  return bases_[register_index(name)];
}

Qubit Circuit::qubit(std::string_view name, std::size_t offset) const {
  std::size_t i = register_index(name);
  if (offset >= registers_[i].size) {
    throw CircuitError("qubit " + std::string(name) + "[" +
                       std::to_string(offset) + "] out of range (size " +
                       std::to_string(registers_[i].size) + ")");
  }
  return bases_[i] + static_cast<Qubit>(offset);
}

QubitRef Circuit::ref(Qubit q) const {
  if (q >= num_qubits_) throw CircuitError("qubit index out of range");
  std::size_t i = owner_[q];
  return {registers_[i].name, q - bases_[i]};
}

Role Circuit::role_of(Qubit q) const {
  if (q >= num_qubits_) throw CircuitError("qubit index out of range");
  return registers_[owner_[q]].role;
}

void Circuit::append(const Gate& gate) {
  auto qs = gate.qubits();
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (qs[i] >= num_qubits_) {
      throw CircuitError(std::string(gate_name(gate.kind)) +
                         ": operand out of range");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (qs[i] == qs[j]) {
        throw CircuitError(std::string(gate_name(gate.kind)) +
                           ": duplicate operand " + ref(qs[i]).reg + "[" +
                           std::to_string(ref(qs[i]).offset) + "]");
      }
    }
  }
  Gate stored = gate;
  for (std::size_t i = qs.size(); i < stored.operands.size(); ++i) {
    stored.operands[i] = 0;
  }
  gates_.push_back(stored);
}

void Circuit::append(GateKind kind, std::span<const QubitRef> operands) {
  if (operands.size() != gate_arity(kind)) {
    throw CircuitError(std::string(gate_name(kind)) + " expects " +
                       std::to_string(gate_arity(kind)) + " operands, got " +
                       std::to_string(operands.size()));
  }
  Gate g{kind, {}};
  for (std::size_t i = 0; i < operands.size(); ++i) {
    g.operands[i] = qubit(operands[i]);
  }
  append(g);
}

void Circuit::check_temp_and_balance() const {
  // target -> open triple
  std::map<Qubit, Gate> open;
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    const Gate& g = gates_[i];
    if (g.kind == GateKind::TEMP_AND) {
      if (open.count(g.operands[2])) {
        throw CircuitError("gate " + std::to_string(i) +
                           ": TEMP_AND on a target that is already open");
      }
      open.emplace(g.operands[2], g);
    } else if (g.kind == GateKind::TEMP_AND_UNCOMPUTE) {
      auto it = open.find(g.operands[2]);
      if (it == open.end()) {
        throw CircuitError("gate " + std::to_string(i) +
                           ": TEMP_AND_UNCOMPUTE without a matching TEMP_AND");
      }
      const auto& c = it->second.operands;
      bool same_controls =
          (c[0] == g.operands[0] && c[1] == g.operands[1]) ||
          (c[0] == g.operands[1] && c[1] == g.operands[0]);
      if (!same_controls) {
        throw CircuitError("gate " + std::to_string(i) +
                           ": TEMP_AND_UNCOMPUTE controls differ from the "
                           "matching TEMP_AND");
      }
      open.erase(it);
    } else {
      for (Qubit q : g.qubits()) {
        // A CNOT may retarget an open temp-AND (sawtooth step), other writes
        // to an open target are builder bugs.
        bool is_target = q == g.operands[g.arity() - 1] ||
                         (g.kind == GateKind::CSWAP && q == g.operands[1]);
        if (is_target && open.count(q) && g.kind != GateKind::CNOT) {
          throw CircuitError("gate " + std::to_string(i) + ": " +
                             std::string(gate_name(g.kind)) +
                             " writes an open temp-AND target");
        }
      }
    }
  }
  if (!open.empty()) {
    QubitRef r = ref(open.begin()->first);
    throw CircuitError("TEMP_AND on " + r.reg + "[" + std::to_string(r.offset) +
                       "] is never uncomputed");
  }
}

ResourceEstimate count_resources(const Circuit& circuit) {
  ResourceEstimate est;
  for (const Gate& g : circuit.gates()) {
    switch (g.kind) {
      case GateKind::X:
        ++est.x;
        break;
      case GateKind::CNOT:
        ++est.cnot;
        break;
      case GateKind::TOFFOLI:
        ++est.toffoli;
        break;
      case GateKind::CSWAP:
        ++est.toffoli;
        ++est.cswap;
        est.cnot += 2;
        break;
      case GateKind::TEMP_AND:
        ++est.toffoli;
        ++est.temp_and;
        break;
      case GateKind::TEMP_AND_UNCOMPUTE:
        break;
    }
  }
  for (const auto& r : circuit.registers()) {
    if (is_clean(r.role)) est.clean_qubits += r.size;
    if (r.role == Role::dirty) est.dirty_qubits += r.size;
    est.total_qubits += r.size;
  }
  return est;
}

std::string serialize_circuit(const Circuit& circuit) {
  std::string out;
  for (const auto& r : circuit.registers()) {
    out += "REGISTER " + r.name + " " + std::to_string(r.size) + " " +
           std::string(role_name(r.role)) + "\n";
  }
  for (const Gate& g : circuit.gates()) {
    out += gate_name(g.kind);
    for (Qubit q : g.qubits()) {
      QubitRef r = circuit.ref(q);
      out += " " + r.reg + " " + std::to_string(r.offset);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

std::size_t parse_index(std::string_view token, std::size_t line_no) {
  std::size_t value = 0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw CircuitError("line " + std::to_string(line_no) +
                       ": expected a non-negative integer, got '" +
                       std::string(token) + "'");
  }
  return value;
}

GateKind parse_gate_kind(std::string_view token, std::size_t line_no) {
  for (std::size_t i = 0; i < kGateNames.size(); ++i) {
    if (kGateNames[i] == token) return static_cast<GateKind>(i);
  }
  throw CircuitError("line " + std::to_string(line_no) +
                     ": unknown gate kind '" + std::string(token) + "'");
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
  std::vector<RegisterSpec> registers;
  struct PendingGate {
    GateKind kind;
    std::vector<QubitRef> operands;
    std::size_t line_no;
  };
  std::vector<PendingGate> pending;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;

    if (tokens[0] == "REGISTER") {
      if (!pending.empty()) {
        throw CircuitError("line " + std::to_string(line_no) +
                           ": REGISTER after the first gate");
      }
      if (tokens.size() != 4) {
        throw CircuitError("line " + std::to_string(line_no) +
                           ": expected 'REGISTER <name> <size> <role>'");
      }
      try {
        registers.push_back({std::string(tokens[1]),
                             parse_index(tokens[2], line_no),
                             parse_role(tokens[3])});
      } catch (const CircuitError& e) {
        std::string msg = e.what();
        if (msg.rfind("line ", 0) == 0) throw;
        throw CircuitError("line " + std::to_string(line_no) + ": " + msg);
      }
      continue;
    }

    GateKind kind = parse_gate_kind(tokens[0], line_no);
    std::size_t arity = gate_arity(kind);
    if (tokens.size() != 1 + 2 * arity) {
      throw CircuitError("line " + std::to_string(line_no) + ": " +
                         std::string(tokens[0]) + " expects " +
                         std::to_string(arity) + " operands");
    }
    PendingGate g{kind, {}, line_no};
    for (std::size_t i = 0; i < arity; ++i) {
      g.operands.push_back({std::string(tokens[1 + 2 * i]),
                            parse_index(tokens[2 + 2 * i], line_no)});
    }
    pending.push_back(std::move(g));
  }

  Circuit circuit(std::move(registers));
  for (const auto& g : pending) {
    try {
      circuit.append(g.kind, g.operands);
    } catch (const CircuitError& e) {
      throw CircuitError("line " + std::to_string(g.line_no) + ": " + e.what());
    }
  }
  return circuit;
}

Circuit inverse(const Circuit& circuit) {
  Circuit out(circuit.registers());
  const auto& gates = circuit.gates();
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    Gate g = *it;
    if (g.kind == GateKind::TEMP_AND) {
      g.kind = GateKind::TEMP_AND_UNCOMPUTE;
    } else if (g.kind == GateKind::TEMP_AND_UNCOMPUTE) {
      g.kind = GateKind::TEMP_AND;
    }
    out.append(g);
  }
  return out;
}

}  // namespace qrom
