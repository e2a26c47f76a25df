#include "qrom/unary_iteration.hpp"

#include <algorithm>
#include <string>

namespace qrom {

namespace {

struct TreeCost {
  std::size_t toffoli = 0;
  std::size_t depth = 0;  // work qubits used along the deepest path
};

// Node covers index values [base, base + 2^k).
TreeCost tree_cost(const IterationSpec& spec, bool wired, std::size_t k,
                   std::uint64_t base) {
  if (k == 0) return {};
  std::uint64_t mid = base + (std::uint64_t{1} << (k - 1));
  if (mid >= spec.hi) return tree_cost(spec, wired, k - 1, base);
  if (mid <= spec.lo) {
    TreeCost child = tree_cost(spec, true, k - 1, mid);
    if (!wired) return child;
    return {child.toffoli + 1, child.depth + 1};
  }
  TreeCost left = tree_cost(spec, true, k - 1, base);
  TreeCost right = tree_cost(spec, true, k - 1, mid);
  if (!wired) {
    return {left.toffoli + right.toffoli, std::max(left.depth, right.depth)};
  }
  return {left.toffoli + right.toffoli + 1,
          std::max(left.depth, right.depth) + 1};
}

void check_spec(const IterationSpec& spec) {
  if (spec.lo >= spec.hi) {
    throw CircuitError("unary iteration: empty range [" +
                       std::to_string(spec.lo) + ", " +
                       std::to_string(spec.hi) + ")");
  }
  if (spec.index.size() >= 64 ||
      spec.hi > (std::uint64_t{1} << spec.index.size())) {
    throw CircuitError("unary iteration: range end " + std::to_string(spec.hi) +
                       " does not fit a " + std::to_string(spec.index.size()) +
                       "-qubit index register");
  }
}

class TreeEmitter {
 public:
  TreeEmitter(Circuit& circuit, const IterationSpec& spec,
              std::span<const Qubit> work, const WindowEmitter& emit)
      : circuit_(circuit), spec_(spec), work_(work), emit_(emit) {}

  void walk(std::optional<Qubit> wire, std::size_t k, std::uint64_t base,
            std::size_t level) {
    if (k == 0) {
      emit_(circuit_, IterationWindow{base, wire});
      return;
    }
    Qubit bit = spec_.index[k - 1];
    std::uint64_t mid = base + (std::uint64_t{1} << (k - 1));

    if (mid >= spec_.hi) {
      // Upper half is out of range: ignore this bit.
      walk(wire, k - 1, base, level);
      return;
    }

    if (mid <= spec_.lo) {
      // Lower half is below the range: narrow on bit = 1.
      if (!wire) {
        walk(bit, k - 1, mid, level);
        return;
      }
      Qubit anc = work_[level];
      circuit_.append(Gate::temp_and(*wire, bit, anc));
      walk(anc, k - 1, mid, level + 1);
      circuit_.append(Gate::temp_and_uncompute(*wire, bit, anc));
      return;
    }

    if (!wire) {
      circuit_.append(Gate::x(bit));
      walk(bit, k - 1, base, level);
      circuit_.append(Gate::x(bit));
      walk(bit, k - 1, mid, level);
      return;
    }

    // anc = wire & !bit, then wire & bit after one CNOT.
    Qubit anc = work_[level];
    circuit_.append(Gate::x(bit));
    circuit_.append(Gate::temp_and(*wire, bit, anc));
    circuit_.append(Gate::x(bit));
    walk(anc, k - 1, base, level + 1);
    circuit_.append(Gate::cnot(*wire, anc));
    walk(anc, k - 1, mid, level + 1);
    circuit_.append(Gate::temp_and_uncompute(*wire, bit, anc));
  }

 private:
  Circuit& circuit_;
  const IterationSpec& spec_;
  std::span<const Qubit> work_;
  const WindowEmitter& emit_;
};

}  // namespace

std::size_t unary_iteration_work(const IterationSpec& spec) {
  check_spec(spec);
  return tree_cost(spec, spec.control.has_value(), spec.index.size(), 0).depth;
}

std::size_t unary_iteration_toffoli(const IterationSpec& spec) {
  check_spec(spec);
  return tree_cost(spec, spec.control.has_value(), spec.index.size(), 0)
      .toffoli;
}

void emit_unary_iteration(Circuit& circuit, const IterationSpec& spec,
                          std::span<const Qubit> work,
                          const WindowEmitter& emit) {
  std::size_t needed = unary_iteration_work(spec);
  if (work.size() < needed) {
    throw CircuitError("unary iteration over [" + std::to_string(spec.lo) +
                       ", " + std::to_string(spec.hi) + ") needs " +
                       std::to_string(needed) + " work qubits, got " +
                       std::to_string(work.size()));
  }
  TreeEmitter(circuit, spec, work, emit)
      .walk(spec.control, spec.index.size(), 0, 0);
}

}  // namespace qrom
