#include "qrom/cost.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "qrom/qrom.hpp"

namespace qrom {

namespace {

using i64 = std::int64_t;

i64 s(std::uint64_t v) { return static_cast<i64>(v); }

CostBreakdown make(std::string id, i64 select, i64 copy, i64 dirty, i64 work,
                   i64 out) {
  return {std::move(id), select + copy, select, copy, dirty, work, out};
}

void check_select_copy_lambda(std::uint64_t n, std::uint64_t lambda) {
  if (!is_power_of_two(lambda) || lambda <= 1 || lambda >= n) {
    throw PlanError("lambda = " + std::to_string(lambda) +
                    " must be a power of 2 with 1 < lambda < N = " +
                    std::to_string(n));
  }
}

i64 q_work(std::uint64_t n, std::uint64_t lambda) {
  return s(std::max(ceil_log2(ceil_div(n, lambda)), ceil_log2(lambda)));
}

}  // namespace

CostBreakdown cost_bit_packet(std::uint64_t n, std::uint64_t b,
                              std::uint64_t lambda, std::uint64_t mu) {
  QromPlan plan = plan_qrom(n, b, lambda, mu);
  const i64 stages = s(plan.num_packets) + 1;
  const i64 select = stages * (s(plan.q_range) - 1);
  const i64 copy = stages * (s(lambda) - 2) +
                   (s(lambda) - 1) * (s(mu) * (s(b / mu) + 1) + s(b % mu));
  return make("bit_packet", select, copy, s(plan.dirty), s(plan.work), s(b));
}

CostBreakdown cost_select_copy(std::uint64_t n, std::uint64_t b,
                               std::uint64_t lambda) {
  check_select_copy_lambda(n, lambda);
  const i64 l = s(lambda);
  const i64 select = 2 * s(ceil_div(n, lambda)) - 2;
  const i64 copy = 2 * s(b) * (l - 1) + 2 * l - 4;
  return make("select_copy", select, copy, s(b) * (l - 1), q_work(n, lambda),
              s(b));
}

CostBreakdown cost_power2_packet(std::uint64_t n, std::uint64_t b,
                                 std::uint64_t lambda, std::uint64_t alpha) {
  if (!is_power_of_two(n) || !is_power_of_two(b) || !is_power_of_two(lambda) ||
      !is_power_of_two(alpha)) {
    throw PlanError("N, b, lambda and alpha must all be powers of 2");
  }
  if (alpha > b) throw PlanError("alpha must not exceed b");
  if (lambda < 2 || alpha * lambda >= n) {
    throw PlanError("need 2 <= lambda and alpha * lambda < N");
  }
  const i64 a = s(alpha);
  const i64 al = s(alpha * lambda);
  // (1 + 1/a) N/lambda = N/lambda + N/(a lambda), exact for powers of 2.
  const i64 loads = s(n / lambda) + s(n / (alpha * lambda));
  const i64 total = loads + (s(b) + s(b / alpha)) * (al - 1) + (a + 1) * (al - 3);
  const i64 select = (a + 1) * (s(n / (alpha * lambda)) - 1);
  return make("power2_packet", select, total - select,
              s(b) * s(lambda) - s(b / alpha), q_work(n, alpha * lambda), s(b));
}

CostBreakdown cost_sequential_fresh(std::uint64_t n, std::uint64_t b,
                                    std::uint64_t lambda, std::uint64_t m) {
  check_select_copy_lambda(n, lambda);
  const i64 l = s(lambda);
  const i64 rounds = s(m) + 1;
  const i64 select = rounds * (s(ceil_div(n, lambda)) - 1);
  const i64 copy = rounds * (s(b) * (l - 1) + l - 2);
  return make("sequential_fresh", select, copy, s(b) * (l - 1),
              q_work(n, lambda), s(b) * s(m));
}

CostBreakdown cost_sequential_inplace(std::uint64_t n, std::uint64_t b,
                                      std::uint64_t lambda, std::uint64_t m) {
  check_select_copy_lambda(n, lambda);
  const i64 l = s(lambda);
  const i64 select = (s(m) + 1) * s(ceil_div(n, lambda));
  const i64 copy = (s(m) + 2) * (s(b) * (l - 1) + l - 3);
  // Second output-width register caches phi.
  return make("sequential_inplace", select, copy, s(b) * (l - 1),
              q_work(n, lambda) + s(b), s(b));
}

std::string_view prior_art_name(PriorArt kind) {
  switch (kind) {
    case PriorArt::plain:
      return "plain";
    case PriorArt::low_clean:
      return "low_clean";
    case PriorArt::low_dirty:
      return "low_dirty";
    case PriorArt::berry:
      return "berry";
  }
  return "";
}

CostBreakdown cost_prior_art(PriorArt kind, std::uint64_t n, std::uint64_t b,
                             std::uint64_t lambda) {
  std::string id(prior_art_name(kind));
  if (kind == PriorArt::plain) {
    return make(id, s(n), 0, 0, s(ceil_log2(n)), s(b));
  }
  check_select_copy_lambda(n, lambda);
  const i64 loads = s(ceil_div(n, lambda));
  const i64 l = s(lambda);
  const i64 bb = s(b);
  switch (kind) {
    case PriorArt::low_clean:
      return make(id, loads, bb * l, 0, q_work(n, lambda) + bb * (l - 1), bb);
    case PriorArt::low_dirty:
      return make(id, 2 * loads, 4 * bb * l, bb * l, q_work(n, lambda), bb);
    default:
      return make(id, 2 * loads, 4 * bb * (l - 1), bb * (l - 1),
                  q_work(n, lambda), bb);
  }
}

CostBreakdown cost_uncompute(UncomputeKind kind, std::uint64_t n,
                             std::uint64_t lambda_prime) {
  if (lambda_prime < 2) throw PlanError("lambda' must be at least 2");
  const i64 loads = 2 * s(ceil_div(n, lambda_prime));
  const i64 l = s(lambda_prime);
  const i64 work = s(ceil_log2(ceil_div(n, lambda_prime)));
  if (kind == UncomputeKind::prior) {
    return make("uncompute_prior", loads, 4 * l, l - 1, work, 0);
  }
  return make("uncompute_select_copy", loads, 2 * l - 6, l - 1, work, 0);
}

OptimizationResult optimize_parameters(std::uint64_t n, std::uint64_t b,
                                       std::uint64_t dirty_budget) {
  OptimizationResult best;
  for (std::uint64_t lambda = 2; lambda < n; lambda *= 2) {
    for (std::uint64_t mu = 1; mu <= b; ++mu) {
      if (mu * (lambda - 1) > dirty_budget) break;
      CostBreakdown cost = cost_bit_packet(n, b, lambda, mu);
      if (!best.feasible || cost.toffoli_total < best.cost.toffoli_total) {
        best = {lambda, mu, std::move(cost), true};
      }
    }
  }
  if (!best.feasible) {
    best.cost = make("plain", s(n) - 1, 0, 0, s(ceil_log2(n)), s(b));
  }
  return best;
}

CostBreakdown best_berry(std::uint64_t n, std::uint64_t b,
                         std::uint64_t dirty_budget) {
  CostBreakdown best = cost_prior_art(PriorArt::plain, n, b, 0);
  for (std::uint64_t lambda = 2; lambda < n; lambda *= 2) {
    if (b * (lambda - 1) > dirty_budget) break;
    CostBreakdown c = cost_prior_art(PriorArt::berry, n, b, lambda);
    if (c.toffoli_total < best.toffoli_total) best = std::move(c);
  }
  return best;
}

namespace {

// Best cost_bit_packet at a fixed mu, or plain N - 1 when that is cheaper.
std::int64_t best_fixed_mu(std::uint64_t n, std::uint64_t b, std::uint64_t mu,
                           std::uint64_t dirty_budget) {
  std::int64_t best = s(n) - 1;
  for (std::uint64_t lambda = 2; lambda < n; lambda *= 2) {
    if (mu * (lambda - 1) > dirty_budget) break;
    best = std::min(best, cost_bit_packet(n, b, lambda, mu).toffoli_total);
  }
  return best;
}

}  // namespace

std::vector<SweepRow> improvement_sweep(std::uint64_t b,
                                        std::uint64_t dirty_budget,
                                        std::span<const std::uint64_t> n_values) {
  std::vector<SweepRow> rows;
  rows.reserve(n_values.size());
  for (std::uint64_t n : n_values) {
    SweepRow row;
    row.n = n;
    row.berry = best_berry(n, b, dirty_budget).toffoli_total;
    row.alpha1 = best_fixed_mu(n, b, b, dirty_budget);
    row.alphab = best_fixed_mu(n, b, 1, dirty_budget);
    OptimizationResult opt = optimize_parameters(n, b, dirty_budget);
    if (opt.feasible && opt.cost.toffoli_total < s(n) - 1) {
      row.best = opt.cost.toffoli_total;
      row.lambda = opt.lambda;
      row.mu = opt.mu;
    } else {
      row.best = s(n) - 1;
    }
    row.improvement =
        static_cast<double>(row.berry) / static_cast<double>(row.best);
    rows.push_back(row);
  }
  return rows;
}

std::string format_sweep_csv(std::span<const SweepRow> rows) {
  std::string out(kSweepCsvHeader);
  out += '\n';
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%llu,%lld,%lld,%lld,%lld,%llu,%llu,%.6f\n",
                  static_cast<unsigned long long>(r.n),
                  static_cast<long long>(r.berry),
                  static_cast<long long>(r.alpha1),
                  static_cast<long long>(r.alphab),
                  static_cast<long long>(r.best),
                  static_cast<unsigned long long>(r.lambda),
                  static_cast<unsigned long long>(r.mu), r.improvement);
    out += buf;
  }
  return out;
}

std::vector<std::uint64_t> geometric_grid(std::uint64_t n_min,
                                          std::uint64_t n_max,
                                          std::size_t points) {
  std::vector<std::uint64_t> grid;
  if (points == 0 || n_min == 0 || n_max < n_min) return grid;
  const double ratio = static_cast<double>(n_max) / static_cast<double>(n_min);
  for (std::size_t i = 0; i < points; ++i) {
    double t = points == 1 ? 0.0
                           : static_cast<double>(i) / static_cast<double>(points - 1);
    auto v = static_cast<std::uint64_t>(
        std::llround(static_cast<double>(n_min) * std::pow(ratio, t)));
    v = std::clamp(v, n_min, n_max);
    if (grid.empty() || grid.back() != v) grid.push_back(v);
  }
  return grid;
}

}  // namespace qrom
