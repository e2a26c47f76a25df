#include <doctest.h>

#include <random>

#include "qrom/circuit.hpp"
#include "qrom/qrom.hpp"

using namespace qrom;

TEST_CASE("new_circuit records registers") {
  Circuit c = new_circuit({{"q", 2, Role::address_q}});
  CHECK(c.num_qubits() == 2);
  CHECK(c.gates().empty());
  CHECK_THROWS_AS(new_circuit({{"q", 2, Role::address_q}, {"q", 1, Role::work}}),
                  CircuitError);
  CHECK_THROWS_AS(new_circuit({{"q", 0, Role::address_q}}), CircuitError);
}

TEST_CASE("plan registers for N=64, lambda=4, mu=2, b=8") {
  QromPlan plan = plan_qrom(64, 8, 4, 2);
  Circuit c = new_circuit(qrom_registers(plan));
  std::size_t lookup_qubits = 0;
  std::size_t temp_qubits = 0;
  for (const auto& r : c.registers()) {
    (r.role == Role::temp ? temp_qubits : lookup_qubits) += r.size;
  }
  // 6 address + 8 output + 6 dirty + 4 work, plus the enable wire.
  CHECK(lookup_qubits == 24);
  CHECK(temp_qubits == 1);
}

TEST_CASE("append_gate validates operands") {
  Circuit c({{"a", 1, Role::address_q}, {"b", 2, Role::work}, {"out", 3, Role::output}});
  QubitRef out0{"out", 0};
  c.append(GateKind::X, std::span<const QubitRef>(&out0, 1));
  CHECK(c.gates().size() == 1);

  std::vector<QubitRef> repeated{{"a", 0}, {"a", 0}, {"b", 1}};
  CHECK_THROWS_AS(c.append(GateKind::TOFFOLI, repeated), CircuitError);
  std::vector<QubitRef> short_ops{{"a", 0}, {"b", 1}};
  CHECK_THROWS_AS(c.append(GateKind::TOFFOLI, short_ops), CircuitError);
  std::vector<QubitRef> missing{{"zz", 0}, {"b", 1}};
  CHECK_THROWS_AS(c.append(GateKind::CNOT, missing), CircuitError);
  std::vector<QubitRef> oob{{"a", 1}, {"b", 1}};
  CHECK_THROWS_AS(c.append(GateKind::CNOT, oob), CircuitError);

  std::vector<QubitRef> triple{{"a", 0}, {"b", 0}, {"b", 1}};
  c.append(GateKind::TEMP_AND, triple);
  c.append(GateKind::TEMP_AND_UNCOMPUTE, triple);
  CHECK_NOTHROW(c.check_temp_and_balance());
}

TEST_CASE("temp-AND balance detects unmatched pairs") {
  Circuit c({{"w", 3, Role::work}});
  c.append(Gate::temp_and(0, 1, 2));
  CHECK_THROWS_AS(c.check_temp_and_balance(), CircuitError);
  Circuit d({{"w", 3, Role::work}});
  d.append(Gate::temp_and_uncompute(0, 1, 2));
  CHECK_THROWS_AS(d.check_temp_and_balance(), CircuitError);
}

TEST_CASE("count_resources costing convention") {
  Circuit empty({{"w", 3, Role::work}});
  ResourceEstimate e = count_resources(empty);
  CHECK(e.toffoli == 0);
  CHECK(e.cnot == 0);
  CHECK(e.x == 0);

  Circuit c({{"w", 3, Role::work}, {"d", 2, Role::dirty}});
  c.append(Gate::toffoli(0, 1, 2));
  c.append(Gate::temp_and(0, 1, 2));
  c.append(Gate::temp_and_uncompute(0, 1, 2));
  e = count_resources(c);
  CHECK(e.toffoli == 2);
  CHECK(e.temp_and == 1);
  CHECK(e.clean_qubits == 3);
  CHECK(e.dirty_qubits == 2);
  CHECK(e.total_qubits == 5);

  c.append(Gate::cswap(0, 3, 4));
  e = count_resources(c);
  CHECK(e.toffoli == 3);
  CHECK(e.cnot == 2);
}

TEST_CASE("serialize format") {
  Circuit one({{"a", 3, Role::work}});
  CHECK(serialize_circuit(one) == "REGISTER a 3 work\n");

  Circuit c({{"a", 1, Role::work}, {"b", 2, Role::work}, {"c", 3, Role::output}});
  c.append(Gate::toffoli(c.qubit("a", 0), c.qubit("b", 1), c.qubit("c", 2)));
  std::string text = serialize_circuit(c);
  CHECK(text.find("\nTOFFOLI a 0 b 1 c 2\n") != std::string::npos);
}

TEST_CASE("parse_circuit errors carry line numbers") {
  const std::string header = "REGISTER a 1 work\nREGISTER b 2 work\n";
  try {
    parse_circuit(header + "TOFFOLI a 0 a 0 b 1\n");
    FAIL("expected duplicate-operand error");
  } catch (const CircuitError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_circuit(header + "FREDKIN2 a 0 b 0 b 1\n"), CircuitError);
  CHECK_THROWS_AS(parse_circuit(header + "CNOT a 0\n"), CircuitError);
  CHECK_THROWS_AS(parse_circuit(header + "CNOT a 0 z 0\n"), CircuitError);
  CHECK_THROWS_AS(parse_circuit("REGISTER a 1 bogus\n"), CircuitError);
  // comments and blank lines are fine
  Circuit c = parse_circuit("# test\n" + header + "\nX b 1 # flip\n");
  CHECK(c.gates().size() == 1);
}

TEST_CASE("serialize/parse round trip preserves built circuits") {
  std::mt19937_64 rng(7);
  struct Params {
    std::uint64_t n, b, lambda, mu;
  };
  for (auto [n, b, lambda, mu] :
       std::vector<Params>{{64, 8, 4, 2}, {100, 5, 4, 2}, {12, 3, 2, 1}}) {
    std::vector<std::uint64_t> entries(n);
    for (auto& e : entries) e = rng() & ((std::uint64_t{1} << b) - 1);
    LookupTable table(b, entries);
    Circuit built = build_qrom(table, plan_qrom(n, b, lambda, mu));
    Circuit parsed = parse_circuit(serialize_circuit(built));
    CHECK(parsed.registers() == built.registers());
    CHECK(parsed.gates() == built.gates());
    CHECK(count_resources(parsed) == count_resources(built));
  }
}

TEST_CASE("inverse swaps temp-AND kinds and reverses order") {
  Circuit c({{"w", 3, Role::work}});
  c.append(Gate::x(0));
  c.append(Gate::temp_and(0, 1, 2));
  c.append(Gate::temp_and_uncompute(0, 1, 2));
  Circuit inv = inverse(c);
  REQUIRE(inv.gates().size() == 3);
  CHECK(inv.gates()[0].kind == GateKind::TEMP_AND);
  CHECK(inv.gates()[1].kind == GateKind::TEMP_AND_UNCOMPUTE);
  CHECK(inv.gates()[2].kind == GateKind::X);
}
