#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrom/circuit.hpp"
#include "qrom/qrom.hpp"
#include "qrom/table.hpp"

namespace qrom {

/// Raised when a temp-AND is computed onto a nonzero target or uncomputed
/// without returning its target to zero. Either one is a builder bug.
class SimulationError : public std::runtime_error {
 public:
  SimulationError(std::size_t gate_index, const std::string& what)
      : std::runtime_error("gate " + std::to_string(gate_index) + ": " + what),
        gate_index_(gate_index) {}
  std::size_t gate_index() const { return gate_index_; }

 private:
  std::size_t gate_index_;
};

/// Computational-basis assignment of every qubit of a circuit, indexed by
/// flat qubit number.
class BitState {
 public:
  explicit BitState(const Circuit& circuit) : bits_(circuit.num_qubits(), 0) {}

  std::size_t size() const { return bits_.size(); }
  bool get(Qubit q) const { return bits_.at(q) != 0; }
  void set(Qubit q, bool v) { bits_.at(q) = v ? 1 : 0; }

  /// Register value, bit 0 = offset 0. Registers wider than 64 qubits are
  /// read through get().
  std::uint64_t read(const Circuit& circuit, std::string_view reg) const;
  void write(const Circuit& circuit, std::string_view reg, std::uint64_t value);

  bool operator==(const BitState&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Applies the gates in order. X flips; CNOT: t ^= c; TOFFOLI and TEMP_AND:
/// t ^= c1 & c2; CSWAP swaps its two targets when the control is set.
BitState simulate(const Circuit& circuit, BitState state);

/// Bit-sliced simulation: `lanes[q]` holds qubit q for 64 independent basis
/// states (one per bit). `active` marks the lanes whose temp-AND checks are
/// enforced. Throws SimulationError naming the first offending gate.
void simulate_lanes(const Circuit& circuit, std::span<std::uint64_t> lanes,
                    std::uint64_t active = ~std::uint64_t{0});

struct VerificationFailure {
  std::uint64_t x = 0;
  std::string dirty_in;   // initial dirty bits, offset 0 first
  std::string dirty_out;  // final dirty bits
  std::vector<std::uint64_t> expected;  // one value per output register
  std::vector<std::uint64_t> observed;
  std::string diagnostics;
};

struct VerificationReport {
  std::size_t cases_run = 0;
  std::vector<VerificationFailure> failures;

  bool passed() const { return failures.empty(); }
};

/// Runs every address x in [0, N) against `trials` seeded pseudorandom dirty
/// patterns (at least one). Output register i (in declaration order) must
/// hold tables[i](x); dirty qubits must be restored, address registers
/// unchanged and clean registers back to zero. Address bits are taken from
/// the address_r registers (low bits) then the address_q registers.
VerificationReport verify_lookup(const Circuit& circuit,
                                 std::span<const LookupTable> tables,
                                 std::size_t trials, std::uint64_t seed);

VerificationReport verify_qrom(const Circuit& circuit, const LookupTable& table,
                               const QromPlan& plan, std::size_t trials,
                               std::uint64_t seed);

VerificationReport verify_sequential(const Circuit& circuit,
                                     const SequentialSpec& spec,
                                     std::size_t trials, std::uint64_t seed);

/// One-line description of a failure for CLI output.
std::string describe(const VerificationFailure& failure);

}  // namespace qrom
