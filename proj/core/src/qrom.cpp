#include "qrom/qrom.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "qrom/unary_iteration.hpp"

namespace qrom {

bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

std::size_t ceil_log2(std::uint64_t v) {
  std::size_t bits = 0;
  while ((std::uint64_t{1} << bits) < v) ++bits;
  return bits;
}

namespace {

void check_lambda(std::uint64_t n, std::uint64_t lambda) {
  if (!is_power_of_two(lambda)) {
    throw PlanError("lambda = " + std::to_string(lambda) +
                    " must be a power of 2");
  }
  if (lambda <= 1 || lambda >= n) {
    throw PlanError("lambda = " + std::to_string(lambda) +
                    " must satisfy 1 < lambda < N = " + std::to_string(n));
  }
}

// Work qubits the uncontrolled r-iteration over [1, lambda) occupies.
std::size_t copy_iteration_work(std::size_t r_bits, std::uint64_t lambda) {
  std::vector<Qubit> dummy(r_bits);
  std::iota(dummy.begin(), dummy.end(), Qubit{0});
  return unary_iteration_work({dummy, 1, lambda, std::nullopt});
}

std::vector<RegisterSpec> layout_registers(std::size_t q_bits,
                                           std::size_t r_bits,
                                           std::vector<RegisterSpec> outputs,
                                           std::size_t dirty, std::size_t work,
                                           std::uint64_t lambda) {
  std::vector<RegisterSpec> regs;
  regs.push_back({reg::q, q_bits, Role::address_q});
  regs.push_back({reg::r, r_bits, Role::address_r});
  for (auto& o : outputs) regs.push_back(std::move(o));
  regs.push_back({reg::dirty, dirty, Role::dirty});
  regs.push_back({reg::work, work, Role::work});
  regs.push_back({reg::enable, 1, Role::temp});
  // The restore temp-AND target reuses an idle work qubit when one exists.
  if (work <= copy_iteration_work(r_bits, lambda)) {
    regs.push_back({reg::temp, 1, Role::temp});
  }
  return regs;
}

std::vector<Qubit> register_qubits(const Circuit& circuit,
                                   std::string_view name) {
  const auto& spec = circuit.reg(name);
  std::vector<Qubit> qs(spec.size);
  std::iota(qs.begin(), qs.end(), circuit.base(name));
  return qs;
}

QromLayout base_layout(const Circuit& circuit, std::uint64_t q_range,
                       std::uint64_t lambda, std::size_t width) {
  QromLayout layout;
  layout.q = register_qubits(circuit, reg::q);
  layout.r = register_qubits(circuit, reg::r);
  layout.dirty = register_qubits(circuit, reg::dirty);
  layout.work = register_qubits(circuit, reg::work);
  layout.enable = circuit.qubit(reg::enable, 0);
  if (circuit.has_register(reg::temp)) {
    layout.temp = circuit.qubit(reg::temp, 0);
  }
  layout.q_range = q_range;
  layout.lambda = lambda;
  layout.width = width;
  if (layout.dirty.size() != width * (lambda - 1)) {
    throw PlanError("dirty register has " + std::to_string(layout.dirty.size()) +
                    " qubits, expected " + std::to_string(width * (lambda - 1)));
  }
  return layout;
}

void check_layout(const QromLayout& layout, const XorSchedule& schedule) {
  if (schedule.q_range() != layout.q_range ||
      schedule.lambda() != layout.lambda || schedule.width() != layout.width ||
      schedule.num_stages() != layout.outputs.size()) {
    throw PlanError("schedule does not match the circuit layout");
  }
}

void check_stage(const XorSchedule& schedule, std::size_t p) {
  if (p >= schedule.num_stages()) {
    throw PlanError("packet index " + std::to_string(p) + " out of range [0, " +
                    std::to_string(schedule.num_stages()) + ")");
  }
}

IterationSpec q_iteration(const QromLayout& layout) {
  return {layout.q, 0, layout.q_range, layout.enable};
}

IterationSpec r_iteration(const QromLayout& layout) {
  return {layout.r, 1, layout.lambda, std::nullopt};
}

template <typename LoadFn>
void emit_q_sweep(Circuit& circuit, const QromLayout& layout, LoadFn load) {
  emit_unary_iteration(
      circuit, q_iteration(layout), layout.work,
      [&](Circuit& c, const IterationWindow& w) {
        load(c, w.index_value, *w.select);
      });
}

void emit_direct_and_deltas(Circuit& c, const QromLayout& layout,
                            const XorSchedule& schedule, std::size_t p,
                            std::uint64_t q, Qubit select) {
  std::uint64_t direct = schedule.direct_bits(q, p);
  const auto& out = layout.outputs[p];
  for (std::size_t j = 0; j < out.size(); ++j) {
    if ((direct >> j) & 1) c.append(Gate::cnot(select, out[j]));
  }
  for (std::uint64_t l = 1; l < layout.lambda; ++l) {
    std::uint64_t delta = schedule.delta_bits(q, p, l);
    for (std::size_t j = 0; j < layout.width; ++j) {
      if ((delta >> j) & 1) c.append(Gate::cnot(select, layout.dirty_bit(l, j)));
    }
  }
}

Circuit assemble(Circuit circuit, const QromLayout& layout,
                 const XorSchedule& schedule) {
  circuit.append(Gate::x(layout.enable));
  for (std::size_t p = 0; p < schedule.num_stages(); ++p) {
    emit_select(circuit, layout, schedule, p);
    emit_copy(circuit, layout, schedule, p);
  }
  emit_restore(circuit, layout, schedule);
  circuit.append(Gate::x(layout.enable));
  return circuit;
}

}  // namespace

QromPlan plan_qrom(std::uint64_t n, std::size_t b, std::uint64_t lambda,
                   std::size_t mu) {
  if (b == 0 || b > 64) throw PlanError("b must be in [1, 64]");
  check_lambda(n, lambda);
  if (mu < 1 || mu > b) {
    throw PlanError("mu = " + std::to_string(mu) +
                    " must satisfy 1 <= mu <= b = " + std::to_string(b));
  }
  QromPlan plan;
  plan.n = n;
  plan.b = b;
  plan.lambda = lambda;
  plan.mu = mu;
  plan.num_packets = ceil_div(b, mu);
  plan.packets.assign(b / mu, mu);
  if (b % mu) plan.packets.push_back(b % mu);
  plan.q_range = ceil_div(n, lambda);
  plan.address_bits = ceil_log2(n);
  plan.r_bits = ceil_log2(lambda);
  plan.q_bits = plan.address_bits - plan.r_bits;
  plan.dirty = mu * (lambda - 1);
  plan.work = std::max(ceil_log2(plan.q_range), plan.r_bits);
  return plan;
}

std::vector<RegisterSpec> qrom_registers(const QromPlan& plan) {
  return layout_registers(plan.q_bits, plan.r_bits,
                          {{reg::out, plan.b, Role::output}}, plan.dirty,
                          plan.work, plan.lambda);
}

// XorSchedule ---------------------------------------------------------------

XorSchedule::XorSchedule(std::uint64_t q_range, std::uint64_t lambda,
                         std::size_t width,
                         std::vector<std::size_t> stage_widths)
    : q_range_(q_range),
      lambda_(lambda),
      width_(width),
      stage_widths_(std::move(stage_widths)),
      direct_(stage_widths_.size() * q_range, 0),
      delta_(stage_widths_.size() * q_range * (lambda - 1), 0),
      unload_(q_range * (lambda - 1), 0) {}

void XorSchedule::check(std::uint64_t q, std::size_t p, std::uint64_t l) const {
  if (q >= q_range_ || p >= stage_widths_.size() || l < 1 || l >= lambda_) {
    throw PlanError("XOR schedule index out of range");
  }
}

std::uint64_t XorSchedule::direct_bits(std::uint64_t q, std::size_t p) const {
  check(q, p, 1);
  return direct_[p * q_range_ + q];
}

std::uint64_t XorSchedule::delta_bits(std::uint64_t q, std::size_t p,
                                      std::uint64_t l) const {
  check(q, p, l);
  return delta_[(p * q_range_ + q) * (lambda_ - 1) + (l - 1)];
}

std::uint64_t XorSchedule::unload_bits(std::uint64_t q, std::uint64_t l) const {
  check(q, 0, l);
  return unload_[q * (lambda_ - 1) + (l - 1)];
}

void XorSchedule::set_direct(std::uint64_t q, std::size_t p, std::uint64_t v) {
  check(q, p, 1);
  direct_[p * q_range_ + q] = v;
}

void XorSchedule::set_delta(std::uint64_t q, std::size_t p, std::uint64_t l,
                            std::uint64_t v) {
  check(q, p, l);
  delta_[(p * q_range_ + q) * (lambda_ - 1) + (l - 1)] = v;
}

void XorSchedule::set_unload(std::uint64_t q, std::uint64_t l, std::uint64_t v) {
  check(q, 0, l);
  unload_[q * (lambda_ - 1) + (l - 1)] = v;
}

namespace {

// Fills deltas and unloads from per-stage c values:
// c(q, p, l) = stage_value(p, q*lambda + l) ^ stage_value(p, q*lambda).
template <typename StageValue>
void fill_schedule(XorSchedule& s, StageValue stage_value) {
  const std::uint64_t lambda = s.lambda();
  for (std::uint64_t q = 0; q < s.q_range(); ++q) {
    const std::uint64_t x0 = q * lambda;
    for (std::size_t p = 0; p < s.num_stages(); ++p) {
      s.set_direct(q, p, stage_value(p, x0));
    }
    for (std::uint64_t l = 1; l < lambda; ++l) {
      std::uint64_t held = 0;  // c currently XORed into dirty register l
      for (std::size_t p = 0; p < s.num_stages(); ++p) {
        std::uint64_t mask = s.stage_width(p) >= 64
                                 ? ~std::uint64_t{0}
                                 : (std::uint64_t{1} << s.stage_width(p)) - 1;
        std::uint64_t c = stage_value(p, x0 + l) ^ stage_value(p, x0);
        std::uint64_t next = (held & ~mask) | c;
        s.set_delta(q, p, l, held ^ next);
        held = next;
      }
      s.set_unload(q, l, held);
    }
  }
}

}  // namespace

XorSchedule compute_xor_schedule(const LookupTable& table,
                                 const QromPlan& plan) {
  if (table.size() != plan.n || table.bit_width() != plan.b) {
    throw PlanError("table is " + std::to_string(table.size()) + " x " +
                    std::to_string(table.bit_width()) + " bits but plan is " +
                    std::to_string(plan.n) + " x " + std::to_string(plan.b));
  }
  XorSchedule s(plan.q_range, plan.lambda, plan.mu, plan.packets);
  fill_schedule(s, [&](std::size_t p, std::uint64_t x) {
    return table.slice(x, plan.packet_offset(p), plan.packets[p]);
  });
  return s;
}

// Emitters ------------------------------------------------------------------

void emit_select(Circuit& circuit, const QromLayout& layout,
                 const XorSchedule& schedule, std::size_t p) {
  check_layout(layout, schedule);
  check_stage(schedule, p);
  emit_q_sweep(circuit, layout,
               [&](Circuit& c, std::uint64_t q, Qubit select) {
                 emit_direct_and_deltas(c, layout, schedule, p, q, select);
               });
}

void emit_copy(Circuit& circuit, const QromLayout& layout,
               const XorSchedule& schedule, std::size_t p) {
  check_layout(layout, schedule);
  check_stage(schedule, p);
  const auto& out = layout.outputs[p];
  emit_unary_iteration(
      circuit, r_iteration(layout), layout.work,
      [&](Circuit& c, const IterationWindow& w) {
        for (std::size_t j = 0; j < out.size(); ++j) {
          c.append(Gate::toffoli(*w.select, layout.dirty_bit(w.index_value, j),
                                 out[j]));
        }
      });
}

void emit_restore(Circuit& circuit, const QromLayout& layout,
                  const XorSchedule& schedule) {
  check_layout(layout, schedule);
  emit_q_sweep(circuit, layout,
               [&](Circuit& c, std::uint64_t q, Qubit select) {
                 for (std::uint64_t l = 1; l < layout.lambda; ++l) {
                   std::uint64_t bits = schedule.unload_bits(q, l);
                   for (std::size_t j = 0; j < layout.width; ++j) {
                     if ((bits >> j) & 1) {
                       c.append(Gate::cnot(select, layout.dirty_bit(l, j)));
                     }
                   }
                 }
               });

  IterationSpec spec = r_iteration(layout);
  std::size_t busy = unary_iteration_work(spec);
  Qubit temp;
  if (layout.work.size() > busy) {
    temp = layout.work[busy];
  } else if (layout.temp) {
    temp = *layout.temp;
  } else {
    throw PlanError("restore needs a free work qubit or a temp register");
  }
  // Output qubits that picked up dirty bit j during the copies.
  std::vector<std::vector<Qubit>> fixups(layout.width);
  for (const auto& out : layout.outputs) {
    for (std::size_t j = 0; j < out.size(); ++j) fixups[j].push_back(out[j]);
  }
  emit_unary_iteration(
      circuit, spec, layout.work, [&](Circuit& c, const IterationWindow& w) {
        for (std::size_t j = 0; j < layout.width; ++j) {
          if (fixups[j].empty()) continue;
          Qubit d = layout.dirty_bit(w.index_value, j);
          c.append(Gate::temp_and(*w.select, d, temp));
          for (Qubit o : fixups[j]) c.append(Gate::cnot(temp, o));
          c.append(Gate::temp_and_uncompute(*w.select, d, temp));
        }
      });
}

QromLayout qrom_layout(const Circuit& circuit, const QromPlan& plan) {
  QromLayout layout = base_layout(circuit, plan.q_range, plan.lambda, plan.mu);
  std::vector<Qubit> out = register_qubits(circuit, reg::out);
  if (out.size() != plan.b) {
    throw PlanError("output register does not have b qubits");
  }
  for (std::size_t p = 0; p < plan.packets.size(); ++p) {
    auto first = out.begin() + static_cast<std::ptrdiff_t>(plan.packet_offset(p));
    layout.outputs.emplace_back(
        first, first + static_cast<std::ptrdiff_t>(plan.packets[p]));
  }
  return layout;
}

void emit_select(Circuit& circuit, const QromPlan& plan,
                 const XorSchedule& schedule, std::size_t p) {
  emit_select(circuit, qrom_layout(circuit, plan), schedule, p);
}

void emit_copy(Circuit& circuit, const QromPlan& plan,
               const XorSchedule& schedule, std::size_t p) {
  emit_copy(circuit, qrom_layout(circuit, plan), schedule, p);
}

void emit_restore(Circuit& circuit, const QromPlan& plan,
                  const XorSchedule& schedule) {
  emit_restore(circuit, qrom_layout(circuit, plan), schedule);
}

Circuit build_qrom(const LookupTable& table, const QromPlan& plan) {
  XorSchedule schedule = compute_xor_schedule(table, plan);
  Circuit circuit(qrom_registers(plan));
  QromLayout layout = qrom_layout(circuit, plan);
  return assemble(std::move(circuit), layout, schedule);
}

// Sequential lookups ---------------------------------------------------------

std::string sequential_output_name(std::size_t t) {
  return std::string(reg::out) + std::to_string(t);
}

namespace {

QromPlan sequential_plan(const SequentialSpec& spec) {
  if (spec.tables.empty()) throw PlanError("need at least one table");
  const auto& first = spec.tables.front();
  for (const auto& t : spec.tables) {
    if (t.size() != first.size() || t.bit_width() != first.bit_width()) {
      throw PlanError("sequential tables must share N and b");
    }
  }
  return plan_qrom(first.size(), first.bit_width(), spec.lambda,
                   first.bit_width());
}

}  // namespace

XorSchedule compute_sequential_schedule(const SequentialSpec& spec) {
  QromPlan plan = sequential_plan(spec);
  XorSchedule s(plan.q_range, plan.lambda, plan.b,
                std::vector<std::size_t>(spec.tables.size(), plan.b));
  fill_schedule(s, [&](std::size_t t, std::uint64_t x) {
    return spec.tables[t].at(x);
  });
  return s;
}

Circuit build_sequential_qroms(const SequentialSpec& spec) {
  QromPlan plan = sequential_plan(spec);
  XorSchedule schedule = compute_sequential_schedule(spec);
  std::vector<RegisterSpec> outputs;
  for (std::size_t t = 0; t < spec.tables.size(); ++t) {
    outputs.push_back({sequential_output_name(t), plan.b, Role::output});
  }
  Circuit circuit(layout_registers(plan.q_bits, plan.r_bits, std::move(outputs),
                                   plan.dirty, plan.work, plan.lambda));
  QromLayout layout = base_layout(circuit, plan.q_range, plan.lambda, plan.b);
  for (std::size_t t = 0; t < spec.tables.size(); ++t) {
    layout.outputs.push_back(
        register_qubits(circuit, sequential_output_name(t)));
  }
  return assemble(std::move(circuit), layout, schedule);
}

}  // namespace qrom
