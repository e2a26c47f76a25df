#include "qrom/baselines.hpp"

#include <numeric>

#include "qrom/qrom.hpp"
#include "qrom/unary_iteration.hpp"

namespace qrom {

namespace {

std::vector<Qubit> qubits_of(const Circuit& c, std::string_view name) {
  std::vector<Qubit> qs(c.reg(name).size);
  std::iota(qs.begin(), qs.end(), c.base(name));
  return qs;
}

}  // namespace

Circuit build_plain_qrom(const LookupTable& table) {
  const std::uint64_t n = table.size();
  const std::size_t b = table.bit_width();
  if (n == 1) {
    Circuit c({{reg::q, 1, Role::address_q}, {reg::out, b, Role::output}});
    for (std::size_t j = 0; j < b; ++j) {
      if (table.bit(0, j)) c.append(Gate::x(c.qubit(reg::out, j)));
    }
    return c;
  }
  const std::size_t bits = ceil_log2(n);
  Circuit c({{reg::q, bits, Role::address_q},
             {reg::out, b, Role::output},
             {reg::work, bits, Role::work},
             {reg::enable, 1, Role::temp}});
  auto address = qubits_of(c, reg::q);
  auto out = qubits_of(c, reg::out);
  auto work = qubits_of(c, reg::work);
  Qubit enable = c.qubit(reg::enable, 0);

  c.append(Gate::x(enable));
  emit_unary_iteration(c, {address, 0, n, enable}, work,
                       [&](Circuit& circ, const IterationWindow& w) {
                         for (std::size_t j = 0; j < b; ++j) {
                           if (table.bit(w.index_value, j)) {
                             circ.append(Gate::cnot(*w.select, out[j]));
                           }
                         }
                       });
  c.append(Gate::x(enable));
  return c;
}

void emit_multiplexed_swap(Circuit& circuit, const SwapNetworkPlan& plan,
                           std::span<const Qubit> r,
                           std::span<const Qubit> slots, bool inverse) {
  if (!is_power_of_two(plan.lambda) || plan.lambda < 2) {
    throw PlanError("swap network needs lambda a power of 2, >= 2");
  }
  if ((std::uint64_t{1} << r.size()) != plan.lambda ||
      slots.size() != plan.lambda * plan.width) {
    throw PlanError("swap network register sizes do not match the plan");
  }
  auto layer = [&](std::size_t k) {
    const std::uint64_t stride = std::uint64_t{1} << k;
    for (std::uint64_t i = 0; i < stride; ++i) {
      for (std::size_t j = 0; j < plan.width; ++j) {
        circuit.append(Gate::cswap(r[k], slots[i * plan.width + j],
                                   slots[(i + stride) * plan.width + j]));
      }
    }
  };
  // Highest bit first moves slot r to slot r mod 2^k, ending at slot 0.
  if (!inverse) {
    for (std::size_t k = r.size(); k-- > 0;) layer(k);
  } else {
    for (std::size_t k = 0; k < r.size(); ++k) layer(k);
  }
}

Circuit build_selectswap_dirty(const LookupTable& table, std::uint64_t lambda) {
  const std::uint64_t n = table.size();
  const std::size_t b = table.bit_width();
  QromPlan plan = plan_qrom(n, b, lambda, b);

  Circuit c({{reg::q, plan.q_bits, Role::address_q},
             {reg::r, plan.r_bits, Role::address_r},
             {reg::out, b, Role::output},
             {reg::dirty, b * lambda, Role::dirty},
             {reg::work, ceil_log2(plan.q_range), Role::work},
             {reg::enable, 1, Role::temp}});
  auto q = qubits_of(c, reg::q);
  auto r = qubits_of(c, reg::r);
  auto out = qubits_of(c, reg::out);
  auto slots = qubits_of(c, reg::dirty);
  auto work = qubits_of(c, reg::work);
  Qubit enable = c.qubit(reg::enable, 0);
  SwapNetworkPlan swap{lambda, b};

  auto select = [&] {
    emit_unary_iteration(
        c, {q, 0, plan.q_range, enable}, work,
        [&](Circuit& circ, const IterationWindow& w) {
          for (std::uint64_t i = 0; i < lambda; ++i) {
            std::uint64_t f = table.at(w.index_value * lambda + i);
            for (std::size_t j = 0; j < b; ++j) {
              if ((f >> j) & 1) circ.append(Gate::cnot(*w.select, slots[i * b + j]));
            }
          }
        });
  };
  auto swap_copy_swap = [&] {
    emit_multiplexed_swap(c, swap, r, slots, false);
    for (std::size_t j = 0; j < b; ++j) c.append(Gate::cnot(slots[j], out[j]));
    emit_multiplexed_swap(c, swap, r, slots, true);
  };

  c.append(Gate::x(enable));
  select();          // slot i holds phi_i ^ f(q, i)
  swap_copy_swap();  // out = phi_r ^ f(q, r)
  select();          // slots back to phi
  swap_copy_swap();  // out = f(q, r)
  c.append(Gate::x(enable));
  return c;
}

}  // namespace qrom
