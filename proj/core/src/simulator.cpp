#include "qrom/simulator.hpp"

#include <bit>
#include <random>

namespace qrom {

std::uint64_t BitState::read(const Circuit& circuit, std::string_view reg) const {
  const auto& spec = circuit.reg(reg);
  Qubit base = circuit.base(reg);
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < spec.size && i < 64; ++i) {
    v |= std::uint64_t{get(base + static_cast<Qubit>(i))} << i;
  }
  return v;
}

void BitState::write(const Circuit& circuit, std::string_view reg,
                     std::uint64_t value) {
  const auto& spec = circuit.reg(reg);
  Qubit base = circuit.base(reg);
  for (std::size_t i = 0; i < spec.size; ++i) {
    set(base + static_cast<Qubit>(i), i < 64 && ((value >> i) & 1));
  }
}

void simulate_lanes(const Circuit& circuit, std::span<std::uint64_t> lanes,
                    std::uint64_t active) {
  if (lanes.size() != circuit.num_qubits()) {
    throw std::invalid_argument("lane state size does not match the circuit");
  }
  const auto& gates = circuit.gates();
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    const auto& o = g.operands;
    switch (g.kind) {
      case GateKind::X:
        lanes[o[0]] = ~lanes[o[0]];
        break;
      case GateKind::CNOT:
        lanes[o[1]] ^= lanes[o[0]];
        break;
      case GateKind::TOFFOLI:
        lanes[o[2]] ^= lanes[o[0]] & lanes[o[1]];
        break;
      case GateKind::CSWAP: {
        std::uint64_t diff = lanes[o[0]] & (lanes[o[1]] ^ lanes[o[2]]);
        lanes[o[1]] ^= diff;
        lanes[o[2]] ^= diff;
        break;
      }
      case GateKind::TEMP_AND:
        if (lanes[o[2]] & active) {
          throw SimulationError(i, "TEMP_AND target is not zero");
        }
        lanes[o[2]] ^= lanes[o[0]] & lanes[o[1]];
        break;
      case GateKind::TEMP_AND_UNCOMPUTE:
        lanes[o[2]] ^= lanes[o[0]] & lanes[o[1]];
        if (lanes[o[2]] & active) {
          throw SimulationError(i, "TEMP_AND_UNCOMPUTE leaves its target at 1");
        }
        break;
    }
  }
}

BitState simulate(const Circuit& circuit, BitState state) {
  std::vector<std::uint64_t> lanes(state.size());
  for (std::size_t q = 0; q < lanes.size(); ++q) {
    lanes[q] = state.get(static_cast<Qubit>(q)) ? 1 : 0;
  }
  simulate_lanes(circuit, lanes, 1);
  for (std::size_t q = 0; q < lanes.size(); ++q) {
    state.set(static_cast<Qubit>(q), lanes[q] & 1);
  }
  return state;
}

namespace {

struct Case {
  std::uint64_t x;
  std::vector<std::uint8_t> dirty;
};

std::string bit_string(const std::vector<std::uint8_t>& bits) {
  std::string s;
  for (auto b : bits) s += b ? '1' : '0';
  return s;
}

}  // namespace

VerificationReport verify_lookup(const Circuit& circuit,
                                 std::span<const LookupTable> tables,
                                 std::size_t trials, std::uint64_t seed) {
  if (tables.empty()) throw std::invalid_argument("no tables to verify");
  const std::uint64_t n = tables.front().size();

  std::vector<Qubit> address;  // low bit first
  std::vector<Qubit> dirty;
  std::vector<Qubit> clean_scratch;
  std::vector<std::vector<Qubit>> outputs;
  for (Role role : {Role::address_r, Role::address_q}) {
    for (const auto& r : circuit.registers()) {
      if (r.role != role) continue;
      for (std::size_t i = 0; i < r.size; ++i) address.push_back(circuit.qubit(r.name, i));
    }
  }
  for (const auto& r : circuit.registers()) {
    std::vector<Qubit> qs;
    for (std::size_t i = 0; i < r.size; ++i) qs.push_back(circuit.qubit(r.name, i));
    if (r.role == Role::dirty) dirty.insert(dirty.end(), qs.begin(), qs.end());
    if (r.role == Role::work || r.role == Role::temp) {
      clean_scratch.insert(clean_scratch.end(), qs.begin(), qs.end());
    }
    if (r.role == Role::output) outputs.push_back(std::move(qs));
  }
  if (outputs.size() != tables.size()) {
    throw std::invalid_argument("circuit has " + std::to_string(outputs.size()) +
                                " output registers for " +
                                std::to_string(tables.size()) + " tables");
  }
  for (std::size_t t = 0; t < tables.size(); ++t) {
    if (tables[t].size() != n || outputs[t].size() != tables[t].bit_width()) {
      throw std::invalid_argument("output register " + std::to_string(t) +
                                  " does not match its table");
    }
  }
  if (address.size() < 64 && (n - 1) >> address.size()) {
    throw std::invalid_argument("address registers are too narrow for N");
  }

  std::mt19937_64 rng(seed);
  std::vector<Case> cases;
  const std::size_t per_x = std::max<std::size_t>(trials, 1);
  for (std::uint64_t x = 0; x < n; ++x) {
    for (std::size_t t = 0; t < per_x; ++t) {
      Case c{x, std::vector<std::uint8_t>(dirty.size())};
      std::uint64_t word = 0;
      for (std::size_t i = 0; i < dirty.size(); ++i) {
        if (i % 64 == 0) word = rng();
        c.dirty[i] = (word >> (i % 64)) & 1;
      }
      cases.push_back(std::move(c));
    }
  }

  VerificationReport report;
  std::vector<std::uint64_t> lanes(circuit.num_qubits());
  for (std::size_t start = 0; start < cases.size(); start += 64) {
    const std::size_t count = std::min<std::size_t>(64, cases.size() - start);
    const std::uint64_t active =
        count == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1;
    std::fill(lanes.begin(), lanes.end(), 0);
    for (std::size_t k = 0; k < count; ++k) {
      const Case& c = cases[start + k];
      for (std::size_t i = 0; i < address.size(); ++i) {
        if (i < 64 && ((c.x >> i) & 1)) lanes[address[i]] |= std::uint64_t{1} << k;
      }
      for (std::size_t i = 0; i < dirty.size(); ++i) {
        if (c.dirty[i]) lanes[dirty[i]] |= std::uint64_t{1} << k;
      }
    }
    std::vector<std::uint64_t> initial = lanes;

    std::string sim_error;
    try {
      simulate_lanes(circuit, lanes, active);
    } catch (const SimulationError& e) {
      sim_error = e.what();
    }

    for (std::size_t k = 0; k < count; ++k) {
      const Case& c = cases[start + k];
      auto lane_bit = [&](Qubit q) { return (lanes[q] >> k) & 1; };
      VerificationFailure f;
      f.x = c.x;
      f.dirty_in = bit_string(c.dirty);
      for (Qubit q : dirty) f.dirty_out += lane_bit(q) ? '1' : '0';
      bool ok = sim_error.empty();
      if (!ok) f.diagnostics = sim_error;
      for (std::size_t t = 0; t < outputs.size(); ++t) {
        std::uint64_t v = 0;
        for (std::size_t j = 0; j < outputs[t].size(); ++j) {
          v |= lane_bit(outputs[t][j]) << j;
        }
        f.expected.push_back(tables[t].at(c.x));
        f.observed.push_back(v);
        if (v != f.expected.back()) {
          ok = false;
          f.diagnostics += "output " + std::to_string(t) + " mismatch; ";
        }
      }
      if (f.dirty_out != f.dirty_in) {
        ok = false;
        f.diagnostics += "dirty qubits not restored; ";
      }
      for (Qubit q : address) {
        if (lane_bit(q) != ((initial[q] >> k) & 1)) {
          ok = false;
          f.diagnostics += "address changed; ";
          break;
        }
      }
      for (Qubit q : clean_scratch) {
        if (lane_bit(q)) {
          QubitRef r = circuit.ref(q);
          ok = false;
          f.diagnostics +=
              r.reg + "[" + std::to_string(r.offset) + "] left at 1; ";
          break;
        }
      }
      ++report.cases_run;
      if (!ok) report.failures.push_back(std::move(f));
    }
  }
  return report;
}

VerificationReport verify_qrom(const Circuit& circuit, const LookupTable& table,
                               const QromPlan& plan, std::size_t trials,
                               std::uint64_t seed) {
  if (table.size() != plan.n || table.bit_width() != plan.b) {
    throw PlanError("table does not match the plan");
  }
  return verify_lookup(circuit, std::span<const LookupTable>(&table, 1), trials,
                       seed);
}

VerificationReport verify_sequential(const Circuit& circuit,
                                     const SequentialSpec& spec,
                                     std::size_t trials, std::uint64_t seed) {
  return verify_lookup(circuit, spec.tables, trials, seed);
}

std::string describe(const VerificationFailure& f) {
  std::string s = "x=" + std::to_string(f.x);
  for (std::size_t t = 0; t < f.expected.size(); ++t) {
    s += " expected[" + std::to_string(t) + "]=" + std::to_string(f.expected[t]) +
         " observed[" + std::to_string(t) + "]=" + std::to_string(f.observed[t]);
  }
  if (!f.dirty_in.empty()) s += " dirty_in=" + f.dirty_in + " dirty_out=" + f.dirty_out;
  if (!f.diagnostics.empty()) s += " : " + f.diagnostics;
  return s;
}

}  // namespace qrom
