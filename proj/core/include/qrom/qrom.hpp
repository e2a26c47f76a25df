#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qrom/circuit.hpp"
#include "qrom/table.hpp"

namespace qrom {

/// Parameters rejected by plan_qrom and the builders.
class PlanError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool is_power_of_two(std::uint64_t v);
/// ceil(log2(v)) for v >= 1.
std::size_t ceil_log2(std::uint64_t v);
inline std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) {
  return (a + b - 1) / b;
}

/// Validated parameters of the packet QROM: N entries of b bits, copy depth
/// lambda (address x = q * lambda + r), packets of mu bits.
struct QromPlan {
  std::uint64_t n = 0;
  std::size_t b = 0;
  std::uint64_t lambda = 0;
  std::size_t mu = 0;

  std::size_t num_packets = 0;        // ceil(b / mu)
  std::vector<std::size_t> packets;   // mu, ..., mu, b mod mu (if nonzero)
  std::uint64_t q_range = 0;          // ceil(N / lambda)
  std::size_t address_bits = 0;       // ceil(log2 N)
  std::size_t q_bits = 0;
  std::size_t r_bits = 0;             // log2 lambda
  std::size_t dirty = 0;              // mu * (lambda - 1)
  std::size_t work = 0;               // max(ceil(log2 q_range), log2 lambda)

  std::size_t packet_offset(std::size_t p) const { return p * mu; }
};

/// Throws PlanError naming the violated bound: lambda a power of two with
/// 1 < lambda < N, and 1 <= mu <= b.
QromPlan plan_qrom(std::uint64_t n, std::size_t b, std::uint64_t lambda,
                   std::size_t mu);

/// Register names used by every builder in this library.
namespace reg {
inline constexpr const char* q = "q";
inline constexpr const char* r = "r";
inline constexpr const char* out = "out";
inline constexpr const char* dirty = "dirty";
inline constexpr const char* work = "work";
inline constexpr const char* enable = "enable";
inline constexpr const char* temp = "tmp";
}  // namespace reg

/// Registers of build_qrom: q, r, out, dirty, work and the one-qubit enable
/// wire that drives the controlled q-iteration.
std::vector<RegisterSpec> qrom_registers(const QromPlan& plan);

/// Per-branch data loaded into the dirty registers. Stage p covers one bit
/// packet (or one table of a sequential lookup). For dirty register
/// l in [1, lambda):
///   c(q, p, l)       = stage-p bits of f(q*lambda + l) XOR f(q*lambda)
///   delta(q, 0, l)   = c(q, 0, l)
///   delta(q, p, l)   = c(q, p - 1, l) XOR c(q, p, l) on the bits stage p
///                      uses, 0 elsewhere
///   unload(q, l)     = per dirty bit, c of the last stage that used it
/// so XOR over all deltas and the unload is zero on every dirty bit.
class XorSchedule {
 public:
  XorSchedule(std::uint64_t q_range, std::uint64_t lambda, std::size_t width,
              std::vector<std::size_t> stage_widths);

  std::uint64_t q_range() const { return q_range_; }
  std::uint64_t lambda() const { return lambda_; }
  /// Dirty register width (mu).
  std::size_t width() const { return width_; }
  std::size_t num_stages() const { return stage_widths_.size(); }
  std::size_t stage_width(std::size_t p) const { return stage_widths_.at(p); }

  std::uint64_t direct_bits(std::uint64_t q, std::size_t p) const;
  std::uint64_t delta_bits(std::uint64_t q, std::size_t p,
                           std::uint64_t l) const;
  std::uint64_t unload_bits(std::uint64_t q, std::uint64_t l) const;

  void set_direct(std::uint64_t q, std::size_t p, std::uint64_t v);
  void set_delta(std::uint64_t q, std::size_t p, std::uint64_t l,
                 std::uint64_t v);
  void set_unload(std::uint64_t q, std::uint64_t l, std::uint64_t v);

 private:
  std::uint64_t q_range_;
  std::uint64_t lambda_;
  std::size_t width_;
  std::vector<std::size_t> stage_widths_;
  std::vector<std::uint64_t> direct_;  // [p][q]
  std::vector<std::uint64_t> delta_;   // [p][q][l-1]
  std::vector<std::uint64_t> unload_;  // [q][l-1]

  void check(std::uint64_t q, std::size_t p, std::uint64_t l) const;
};

/// Throws PlanError on a table/plan dimension mismatch.
XorSchedule compute_xor_schedule(const LookupTable& table,
                                 const QromPlan& plan);

/// Flat qubit indices of one QROM circuit. `outputs[p]` are the output
/// qubits loaded by stage p; dirty register l occupies
/// dirty[(l-1)*width, l*width).
struct QromLayout {
  std::vector<Qubit> q;
  std::vector<Qubit> r;
  std::vector<Qubit> dirty;
  std::vector<Qubit> work;
  Qubit enable = 0;
  std::optional<Qubit> temp;
  std::vector<std::vector<Qubit>> outputs;
  std::uint64_t q_range = 0;
  std::uint64_t lambda = 0;
  std::size_t width = 0;

  Qubit dirty_bit(std::uint64_t l, std::size_t j) const {
    return dirty[(l - 1) * width + j];
  }
};

/// Layout of a circuit created from qrom_registers(plan).
QromLayout qrom_layout(const Circuit& circuit, const QromPlan& plan);

/// One unary iteration over q in [0, q_range), controlled on the enable
/// wire. In window q: CNOTs load direct_bits(q, p) into the stage-p outputs
/// and delta_bits(q, p, l) into dirty register l. No Toffolis beyond the
/// q_range - 1 of the iteration.
void emit_select(Circuit& circuit, const QromLayout& layout,
                 const XorSchedule& schedule, std::size_t p);

/// Multiplexed copy of dirty register r into the stage-p outputs, iterating
/// r over [1, lambda): lambda - 2 scaffolding Toffolis plus
/// (lambda - 1) * stage_width(p) copy Toffolis.
void emit_copy(Circuit& circuit, const QromLayout& layout,
               const XorSchedule& schedule, std::size_t p);

/// Sel-dagger (unload_bits into the dirty registers) followed by the final
/// copy: one temp-AND per dirty bit j, CNOTed into every output qubit whose
/// copy read bit j.
void emit_restore(Circuit& circuit, const QromLayout& layout,
                  const XorSchedule& schedule);

void emit_select(Circuit& circuit, const QromPlan& plan,
                 const XorSchedule& schedule, std::size_t p);
void emit_copy(Circuit& circuit, const QromPlan& plan,
               const XorSchedule& schedule, std::size_t p);
void emit_restore(Circuit& circuit, const QromPlan& plan,
                  const XorSchedule& schedule);

/// Full packet QROM: Sel_1, Copy_1, ..., Sel_a, Copy_a, Sel-dagger, final
/// copy. Toffoli count equals
///   (ceil(b/mu) + 1)(ceil(N/lambda) + lambda - 3)
///     + (lambda - 1)(mu (floor(b/mu) + 1) + b mod mu).
Circuit build_qrom(const LookupTable& table, const QromPlan& plan);

/// m tables sharing N and b, each written to a fresh output register
/// (out0, out1, ...). Toffoli count (m + 1)(ceil(N/lambda) + b(lambda - 1)
/// + lambda - 3).
struct SequentialSpec {
  std::vector<LookupTable> tables;
  std::uint64_t lambda = 0;
};

std::string sequential_output_name(std::size_t t);
XorSchedule compute_sequential_schedule(const SequentialSpec& spec);
Circuit build_sequential_qroms(const SequentialSpec& spec);

}  // namespace qrom
