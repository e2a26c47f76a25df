#include <doctest.h>

#include <random>

#include "qrom/cost.hpp"
#include "qrom/qrom.hpp"

using namespace qrom;

namespace {

using i64 = std::int64_t;

i64 loads(i64 n, i64 lambda) { return (n + lambda - 1) / lambda; }

// Written out from the closed forms, independent of cost.cpp.
i64 packet_formula(i64 n, i64 b, i64 lambda, i64 mu) {
  return ((b + mu - 1) / mu + 1) * (loads(n, lambda) + lambda - 3) +
         (lambda - 1) * (mu * (b / mu + 1) + b % mu);
}

struct Brute {
  std::uint64_t lambda = 0;
  std::uint64_t mu = 0;
  i64 cost = 0;
  bool feasible = false;
};

// Test-only exhaustive search, first minimum in (lambda, mu) order.
Brute brute_force(std::uint64_t n, std::uint64_t b, std::uint64_t budget) {
  Brute best{0, 0, static_cast<i64>(n) - 1, false};
  for (std::uint64_t lambda = 2; lambda < n; lambda <<= 1) {
    for (std::uint64_t mu = 1; mu <= b; ++mu) {
      if (mu * (lambda - 1) > budget) continue;
      i64 c = packet_formula(n, b, lambda, mu);
      if (!best.feasible || c < best.cost) best = {lambda, mu, c, true};
    }
  }
  return best;
}

}  // namespace

TEST_CASE("bit packet examples") {
  CHECK(cost_bit_packet(64, 8, 4, 8).toffoli_total == 82);
  CHECK(cost_bit_packet(64, 8, 4, 2).toffoli_total == 115);
  CHECK(cost_bit_packet(100, 5, 4, 2).toffoli_total == 125);
  CHECK(cost_bit_packet(1 << 20, 8, 32, 1).toffoli_total == 295452);
  CostBreakdown c = cost_bit_packet(64, 8, 4, 2);
  CHECK(c.dirty_qubits == 6);
  CHECK(c.clean_work_qubits == 4);
  CHECK(c.output_qubits == 8);
  CHECK(c.select_toffoli + c.copy_toffoli == c.toffoli_total);
  CHECK_THROWS_AS(cost_bit_packet(64, 8, 3, 2), PlanError);
}

TEST_CASE("bit packet matches the closed form on a grid") {
  for (i64 n : {8, 12, 16, 33, 64, 100, 256, 1000, 4096}) {
    for (i64 b : {1, 2, 3, 5, 8, 16, 33, 64}) {
      for (i64 lambda = 2; lambda < n; lambda *= 2) {
        for (i64 mu = 1; mu <= b; ++mu) {
          REQUIRE(cost_bit_packet(n, b, lambda, mu).toffoli_total ==
                  packet_formula(n, b, lambda, mu));
        }
        // Single packet recovers the select-copy form.
        i64 select_copy = 2 * loads(n, lambda) + 2 * b * (lambda - 1) + 2 * lambda - 6;
        CHECK(cost_bit_packet(n, b, lambda, b).toffoli_total == select_copy);
        CHECK(cost_select_copy(n, b, lambda).toffoli_total == select_copy);
      }
    }
  }
}

TEST_CASE("select copy examples") {
  CHECK(cost_select_copy(64, 8, 4).toffoli_total == 82);
  CHECK(cost_select_copy(1 << 20, 8, 4).toffoli_total == 524338);
}

TEST_CASE("power-of-2 packet form is the rescaled bit packet form") {
  CHECK(cost_power2_packet(4096, 8, 4, 2).toffoli_total ==
        cost_bit_packet(4096, 8, 8, 4).toffoli_total);
  std::size_t checked = 0;
  for (std::uint64_t n = 4; n <= (1u << 14); n *= 2) {
    for (std::uint64_t b = 1; b <= 64; b *= 2) {
      for (std::uint64_t lambda = 2; lambda < n; lambda *= 2) {
        for (std::uint64_t alpha = 1; alpha <= b && alpha * lambda < n; alpha *= 2) {
          CAPTURE(n);
          CAPTURE(b);
          CAPTURE(lambda);
          CAPTURE(alpha);
          REQUIRE(cost_power2_packet(n, b, lambda, alpha).toffoli_total ==
                  cost_bit_packet(n, b, alpha * lambda, b / alpha).toffoli_total);
          ++checked;
        }
      }
      // alpha = 1 is the select-copy form.
      CHECK(cost_power2_packet(n, b, 2, 1).toffoli_total ==
            cost_select_copy(n, b, 2).toffoli_total);
    }
  }
  CHECK(checked > 1000);
  CHECK_THROWS_AS(cost_power2_packet(100, 8, 4, 2), PlanError);
  CHECK_THROWS_AS(cost_power2_packet(64, 8, 4, 16), PlanError);
  CHECK_THROWS_AS(cost_power2_packet(64, 8, 16, 4), PlanError);
}

TEST_CASE("sequential forms") {
  CHECK(cost_sequential_fresh(64, 4, 4, 2).toffoli_total == 87);
  for (i64 m = 1; m <= 4; ++m) {
    for (i64 lambda : {2, 4, 8}) {
      i64 expect = (m + 1) * (loads(64, lambda) + 4 * (lambda - 1) + lambda - 3);
      CHECK(cost_sequential_fresh(64, 4, lambda, m).toffoli_total == expect);
      i64 inplace = (m + 1) * loads(64, lambda) + (m + 2) * (4 * (lambda - 1) + lambda - 3);
      CHECK(cost_sequential_inplace(64, 4, lambda, m).toffoli_total == inplace);
    }
  }
  // m = 1 equals the single lookup.
  CHECK(cost_sequential_fresh(256, 8, 8, 1).toffoli_total ==
        cost_select_copy(256, 8, 8).toffoli_total);
}

TEST_CASE("prior art formulas") {
  CHECK(cost_prior_art(PriorArt::berry, 64, 8, 4).toffoli_total == 128);
  CHECK(cost_prior_art(PriorArt::low_dirty, 64, 8, 4).toffoli_total == 32 + 128);
  CHECK(cost_prior_art(PriorArt::low_clean, 64, 8, 4).toffoli_total == 16 + 32);
  CHECK(cost_prior_art(PriorArt::plain, 64, 8, 4).toffoli_total == 64);
  CHECK(cost_prior_art(PriorArt::berry, 64, 8, 4).dirty_qubits == 24);
  CHECK(prior_art_name(PriorArt::low_clean) == "low_clean");
}

TEST_CASE("uncompute forms") {
  CHECK(cost_uncompute(UncomputeKind::select_copy, 64, 8).toffoli_total == 26);
  CHECK(cost_uncompute(UncomputeKind::prior, 64, 8).toffoli_total == 48);
  for (std::uint64_t n : {64, 1000, 1 << 16}) {
    for (std::uint64_t lp = 2; lp <= 256; ++lp) {
      CHECK(cost_uncompute(UncomputeKind::select_copy, n, lp).toffoli_total <=
            cost_uncompute(UncomputeKind::prior, n, lp).toffoli_total);
    }
  }
  CHECK_THROWS_AS(cost_uncompute(UncomputeKind::prior, 64, 1), PlanError);
}

TEST_CASE("optimizer examples") {
  OptimizationResult a = optimize_parameters(1 << 20, 8, 31);
  CHECK(a.feasible);
  CHECK(a.lambda == 32);
  CHECK(a.mu == 1);
  CHECK(a.cost.toffoli_total == 295452);

  OptimizationResult b = optimize_parameters(1 << 20, 8, 24);
  CHECK(b.lambda == 4);
  CHECK(b.mu == 8);
  CHECK(b.cost.toffoli_total == 524338);
  CHECK(cost_bit_packet(1 << 20, 8, 16, 1).toffoli_total == 590076);

  OptimizationResult none = optimize_parameters(64, 8, 0);
  CHECK_FALSE(none.feasible);
  CHECK(none.cost.toffoli_total == 63);
}

TEST_CASE("optimizer equals brute force and is deterministic") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    std::uint64_t n = 4 + rng() % 100000;
    std::uint64_t b = 1 + rng() % 64;
    std::uint64_t budget = rng() % 600;
    CAPTURE(n);
    CAPTURE(b);
    CAPTURE(budget);
    OptimizationResult r = optimize_parameters(n, b, budget);
    Brute x = brute_force(n, b, budget);
    REQUIRE(r.feasible == x.feasible);
    CHECK(r.cost.toffoli_total == x.cost);
    if (x.feasible) {
      CHECK(r.lambda == x.lambda);
      CHECK(r.mu == x.mu);
    }
    OptimizationResult again = optimize_parameters(n, b, budget);
    CHECK(again.lambda == r.lambda);
    CHECK(again.mu == r.mu);
  }
}

TEST_CASE("improvement factors") {
  std::uint64_t n20 = std::uint64_t{1} << 20;
  auto rows = improvement_sweep(8, 31, std::vector<std::uint64_t>{n20});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].berry == 524384);
  CHECK(rows[0].best == 295452);
  CHECK(rows[0].improvement == doctest::Approx(524384.0 / 295452.0));
  CHECK(rows[0].improvement == doctest::Approx(1.775).epsilon(0.005 / 1.775));

  std::uint64_t n30 = std::uint64_t{1} << 30;
  rows = improvement_sweep(64, 255, std::vector<std::uint64_t>{n30});
  CHECK(rows[0].berry == 536871680);
  CHECK(rows[0].improvement >= 1.9);
  CHECK(rows[0].improvement <= 2.0);
  CHECK(rows[0].improvement == doctest::Approx(1.969).epsilon(0.005 / 1.969));
}

TEST_CASE("new optimum never loses to the prior optimum") {
  for (std::uint64_t b : {1, 4, 8, 16, 64}) {
    for (std::uint64_t budget : {0, 1, 7, 31, 100, 255, 1000}) {
      auto grid = geometric_grid(4, std::uint64_t{1} << 30, 40);
      for (const SweepRow& row : improvement_sweep(b, budget, grid)) {
        CHECK(row.best <= row.berry);
        CHECK(row.best <= row.alpha1);
        CHECK(row.best <= row.alphab);
        CHECK(row.best <= static_cast<i64>(row.n) - 1);
        if (row.lambda != 0) {
          CHECK(row.best == cost_bit_packet(row.n, b, row.lambda, row.mu).toffoli_total);
        }
      }
    }
  }
}

TEST_CASE("improvement curve is jagged at small N") {
  std::vector<std::uint64_t> grid;
  for (std::uint64_t n = 8; n <= 4096; ++n) grid.push_back(n);
  auto rows = improvement_sweep(8, 31, grid);
  bool drops = false;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    drops = drops || rows[i].improvement < rows[i - 1].improvement;
  }
  CHECK(drops);
}

TEST_CASE("sweep csv and grid") {
  CHECK(geometric_grid(16, 1024, 7) ==
        std::vector<std::uint64_t>{16, 32, 64, 128, 256, 512, 1024});
  CHECK(geometric_grid(5, 5, 3) == std::vector<std::uint64_t>{5});
  CHECK(geometric_grid(5, 100, 0).empty());

  auto rows = improvement_sweep(8, 31, std::vector<std::uint64_t>{1 << 20});
  std::string csv = format_sweep_csv(rows);
  CHECK(csv == std::string(kSweepCsvHeader) +
                   "\n1048576,524384,524338,295452,295452,32,1,1.774853\n");
}
