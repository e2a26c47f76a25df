#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>

#include "qrom/circuit.hpp"

namespace qrom {

/// Iterates the index register (qubit 0 least significant) over [lo, hi).
///
/// With a control wire, every window is (control AND index == v). Without
/// one, the top split of the AND tree uses the index qubit itself and costs
/// nothing.
///
/// Index values below `lo` never open a window. Values at or above `hi` are
/// don't-care: they may open one of the windows, so callers must guarantee
/// the index stays below `hi` (QROM addresses are < N by contract).
struct IterationSpec {
  std::span<const Qubit> index;
  std::uint64_t lo = 0;
  std::uint64_t hi = 1;
  std::optional<Qubit> control;
};

/// `select` is empty only for an uncontrolled iteration whose window is
/// always open (range of one value, nothing to decode).
struct IterationWindow {
  std::uint64_t index_value = 0;
  std::optional<Qubit> select;
};

using WindowEmitter = std::function<void(Circuit&, const IterationWindow&)>;

/// Number of work qubits the AND tree needs for `spec`.
std::size_t unary_iteration_work(const IterationSpec& spec);

/// Exact Toffoli count of the scaffolding for `spec` (emitter gates excluded).
///   controlled, lo = 0:     hi - 1
///   uncontrolled, lo = 1:   hi - 2
/// Other shapes pay one extra Toffoli per lower-boundary node whose left
/// subtree lies entirely below `lo`.
std::size_t unary_iteration_toffoli(const IterationSpec& spec);

/// Emits the sawtooth unary iteration into `circuit`, calling `emit` once per
/// index value in ascending order. All work qubits end in zero. Throws
/// CircuitError for an empty range, a range that does not fit the index
/// register, or too few work qubits.
void emit_unary_iteration(Circuit& circuit, const IterationSpec& spec,
                          std::span<const Qubit> work,
                          const WindowEmitter& emit);

}  // namespace qrom
