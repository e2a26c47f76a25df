#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qrom/circuit.hpp"
#include "qrom/table.hpp"

namespace qrom {

/// Unary-iteration QROM: one controlled iteration over all N addresses,
/// N - 1 Toffolis. Registers: q (the whole address), out, work, enable.
/// N = 1 degenerates to X gates on the set bits of f(0).
Circuit build_plain_qrom(const LookupTable& table);

/// Multiplexed swap over lambda slots of `width` qubits that moves slot r
/// into slot 0: one layer per bit of r, width * (lambda - 1) CSWAPs.
struct SwapNetworkPlan {
  std::uint64_t lambda = 0;
  std::size_t width = 0;

  std::size_t cswap_count() const { return width * (lambda - 1); }
};

/// `slots` holds lambda consecutive blocks of `plan.width` qubits.
/// `inverse` emits the layers in reverse order (moves slot 0 back to r).
void emit_multiplexed_swap(Circuit& circuit, const SwapNetworkPlan& plan,
                           std::span<const Qubit> r, std::span<const Qubit> slots,
                           bool inverse);

/// Dirty-ancilla SelectSwap QROM:
///   Sel . Swap . CopyViaCNOT . Swap^-1 . Sel . Swap . CopyViaCNOT . Swap^-1
/// Toffoli count 2(ceil(N/lambda) - 1) + 4b(lambda - 1).
Circuit build_selectswap_dirty(const LookupTable& table, std::uint64_t lambda);

}  // namespace qrom
