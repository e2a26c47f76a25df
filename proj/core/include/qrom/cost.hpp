#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qrom {

/// Closed-form Toffoli and qubit cost of one construction. Counts are signed
/// because a few formulas (e.g. the m = 0 sequential bound) go through
/// negative intermediate terms.
struct CostBreakdown {
  std::string formula_id;
  std::int64_t toffoli_total = 0;
  std::int64_t select_toffoli = 0;
  std::int64_t copy_toffoli = 0;
  std::int64_t dirty_qubits = 0;
  std::int64_t clean_work_qubits = 0;
  std::int64_t output_qubits = 0;
};

/// (ceil(b/mu) + 1)(ceil(N/lambda) + lambda - 3)
///   + (lambda - 1)(mu (floor(b/mu) + 1) + b mod mu)
/// Throws PlanError outside 1 < lambda < N (power of 2), 1 <= mu <= b.
CostBreakdown cost_bit_packet(std::uint64_t n, std::uint64_t b,
                              std::uint64_t lambda, std::uint64_t mu);

/// 2 ceil(N/lambda) + 2b(lambda - 1) + 2 lambda - 6.
CostBreakdown cost_select_copy(std::uint64_t n, std::uint64_t b,
                               std::uint64_t lambda);

/// alpha sequential b/alpha-bit lookups at copy depth alpha * lambda:
/// (1 + 1/alpha) N/lambda + (b + b/alpha)(alpha lambda - 1)
///   + (alpha + 1)(alpha lambda - 3).
/// N, b, lambda, alpha must be powers of 2 with alpha <= b and
/// alpha * lambda < N.
CostBreakdown cost_power2_packet(std::uint64_t n, std::uint64_t b,
                                 std::uint64_t lambda, std::uint64_t alpha);

/// m back-to-back lookups into fresh output registers:
/// (m + 1)(ceil(N/lambda) + b(lambda - 1) + lambda - 3). m = 0 evaluates the
/// formula as-is (a single unload with no lookup, not a real circuit).
CostBreakdown cost_sequential_fresh(std::uint64_t n, std::uint64_t b,
                                    std::uint64_t lambda, std::uint64_t m);

/// m back-to-back lookups rewriting one output register with a cached phi:
/// (m + 1) ceil(N/lambda) + (m + 2)(b(lambda - 1) + lambda - 3).
CostBreakdown cost_sequential_inplace(std::uint64_t n, std::uint64_t b,
                                      std::uint64_t lambda, std::uint64_t m);

enum class PriorArt { plain, low_clean, low_dirty, berry };
std::string_view prior_art_name(PriorArt kind);

/// Headline formulas of earlier constructions, ceil(N/lambda) for N/lambda:
///   plain      N
///   low_clean  ceil(N/lambda) + b lambda,         b(lambda - 1) clean
///   low_dirty  2 ceil(N/lambda) + 4 b lambda,     b lambda dirty
///   berry      2 ceil(N/lambda) + 4 b(lambda - 1), b(lambda - 1) dirty
CostBreakdown cost_prior_art(PriorArt kind, std::uint64_t n, std::uint64_t b,
                             std::uint64_t lambda);

enum class UncomputeKind { prior, select_copy };

/// Measurement-based uncomputation with lambda' - 1 dirty qubits:
///   prior        2 ceil(N/lambda') + 4 lambda'
///   select_copy  2 ceil(N/lambda') + 2 lambda' - 6
CostBreakdown cost_uncompute(UncomputeKind kind, std::uint64_t n,
                             std::uint64_t lambda_prime);

struct OptimizationResult {
  std::uint64_t lambda = 0;
  std::uint64_t mu = 0;
  CostBreakdown cost;
  bool feasible = false;
};

/// Exhaustive minimum of cost_bit_packet over lambda = 2^k (1 < lambda < N)
/// and 1 <= mu <= b with mu(lambda - 1) <= dirty_budget. Ties go to the
/// smaller lambda, then the smaller mu. With nothing feasible, returns
/// feasible = false and the plain unary-iteration cost N - 1.
OptimizationResult optimize_parameters(std::uint64_t n, std::uint64_t b,
                                       std::uint64_t dirty_budget);

/// Best berry cost over lambda with b(lambda - 1) <= budget, or the plain
/// formula N when that is cheaper or no lambda fits.
CostBreakdown best_berry(std::uint64_t n, std::uint64_t b,
                         std::uint64_t dirty_budget);

struct SweepRow {
  std::uint64_t n = 0;
  std::int64_t berry = 0;
  // Each column below is floored at the plain lookup, N - 1.
  std::int64_t alpha1 = 0;  // best cost_bit_packet with mu = b
  std::int64_t alphab = 0;  // best cost_bit_packet with mu = 1
  std::int64_t best = 0;    // optimize_parameters
  std::uint64_t lambda = 0; // 0 when the plain lookup wins
  std::uint64_t mu = 0;
  double improvement = 0;   // berry / best
};

/// One row per N (ascending) comparing the prior dirty-qubit optimum with
/// this library's constructions at the same dirty budget.
std::vector<SweepRow> improvement_sweep(std::uint64_t b,
                                        std::uint64_t dirty_budget,
                                        std::span<const std::uint64_t> n_values);

inline constexpr std::string_view kSweepCsvHeader =
    "N,berry,alpha1,alphab,best,lambda,mu,improvement";

std::string format_sweep_csv(std::span<const SweepRow> rows);

/// Geometric grid of `points` integers from n_min to n_max inclusive,
/// rounded and deduplicated.
std::vector<std::uint64_t> geometric_grid(std::uint64_t n_min,
                                          std::uint64_t n_max,
                                          std::size_t points);

}  // namespace qrom
