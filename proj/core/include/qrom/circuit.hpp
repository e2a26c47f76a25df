#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qrom {

/// Thrown for any malformed circuit, register, or gate.
class CircuitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Role { address_q, address_r, output, dirty, work, temp };

std::string_view role_name(Role role);
Role parse_role(std::string_view text);

/// Output, work and temp registers start (and must end) in zero.
inline bool is_clean(Role role) {
  return role == Role::output || role == Role::work || role == Role::temp;
}

struct RegisterSpec {
  std::string name;
  std::size_t size = 0;
  Role role = Role::work;

  bool operator==(const RegisterSpec&) const = default;
};

struct QubitRef {
  std::string reg;
  std::size_t offset = 0;

  bool operator==(const QubitRef&) const = default;
};

/// Flat index of a qubit inside one circuit.
using Qubit = std::uint32_t;

enum class GateKind { X, CNOT, TOFFOLI, CSWAP, TEMP_AND, TEMP_AND_UNCOMPUTE };

std::string_view gate_name(GateKind kind);
std::size_t gate_arity(GateKind kind);

/// Operands are stored controls first, targets last. For CSWAP the control is
/// operand 0 and the two swapped qubits are operands 1 and 2.
struct Gate {
  GateKind kind = GateKind::X;
  std::array<Qubit, 3> operands{};

  std::size_t arity() const { return gate_arity(kind); }
  std::span<const Qubit> qubits() const { return {operands.data(), arity()}; }

  bool operator==(const Gate&) const = default;

  static Gate x(Qubit target) { return {GateKind::X, {target, 0, 0}}; }
  static Gate cnot(Qubit control, Qubit target) {
    return {GateKind::CNOT, {control, target, 0}};
  }
  static Gate toffoli(Qubit c1, Qubit c2, Qubit target) {
    return {GateKind::TOFFOLI, {c1, c2, target}};
  }
  static Gate cswap(Qubit control, Qubit a, Qubit b) {
    return {GateKind::CSWAP, {control, a, b}};
  }
  static Gate temp_and(Qubit c1, Qubit c2, Qubit target) {
    return {GateKind::TEMP_AND, {c1, c2, target}};
  }
  static Gate temp_and_uncompute(Qubit c1, Qubit c2, Qubit target) {
    return {GateKind::TEMP_AND_UNCOMPUTE, {c1, c2, target}};
  }
};

struct ResourceEstimate {
  std::size_t toffoli = 0;
  std::size_t temp_and = 0;
  std::size_t cnot = 0;
  std::size_t x = 0;
  std::size_t cswap = 0;
  std::size_t clean_qubits = 0;
  std::size_t dirty_qubits = 0;
  std::size_t total_qubits = 0;

  bool operator==(const ResourceEstimate&) const = default;
};

/// Flat gate list over named registers. Qubits are numbered register by
/// register in declaration order.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::vector<RegisterSpec> registers);

  const std::vector<RegisterSpec>& registers() const { return registers_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t num_qubits() const { return num_qubits_; }

  bool has_register(std::string_view name) const;
  const RegisterSpec& reg(std::string_view name) const;
  /// First flat index of the named register.
  Qubit base(std::string_view name) const;
  Qubit qubit(std::string_view name, std::size_t offset) const;
  Qubit qubit(const QubitRef& ref) const { return qubit(ref.reg, ref.offset); }
  QubitRef ref(Qubit q) const;
  Role role_of(Qubit q) const;

  /// Validates arity, bounds and operand distinctness.
  void append(const Gate& gate);
  void append(GateKind kind, std::span<const QubitRef> operands);

  /// Checks that every TEMP_AND is closed by a matching uncompute on the
  /// same triple before the end and that no temp-AND target is reused while
  /// open. Throws CircuitError otherwise.
  void check_temp_and_balance() const;

 private:
  std::vector<RegisterSpec> registers_;
  std::vector<Qubit> bases_;
  std::vector<std::size_t> owner_;  // register index per flat qubit
  std::vector<Gate> gates_;
  std::size_t num_qubits_ = 0;

  std::size_t register_index(std::string_view name) const;
};

inline Circuit new_circuit(std::vector<RegisterSpec> registers) {
  return Circuit(std::move(registers));
}

/// Toffoli = TOFFOLI + CSWAP + TEMP_AND. Uncomputing a temp-AND is free
/// (measurement-based uncomputation).
ResourceEstimate count_resources(const Circuit& circuit);

std::string serialize_circuit(const Circuit& circuit);
Circuit parse_circuit(std::string_view text);

/// Reverses the gate order and swaps TEMP_AND with its uncompute. All other
/// gate kinds are self-inverse.
Circuit inverse(const Circuit& circuit);

}  // namespace qrom
