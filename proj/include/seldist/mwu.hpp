#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "seldist/geometry.hpp"
#include "seldist/rng.hpp"

namespace seldist {

/// MWU step size and round count for additive slack delta:
///   eta = delta / 32,  T = ceil(512 * delta^-2 * ln(2n+1)).
struct MwuConstants {
  double eta = 0.0;
  long long rounds = 0;
};
MwuConstants mwu_constants(double delta, std::size_t n);

/// Probability-vector layout, 0-based storage w[0..2n]:
///   w[0]      aggregate error row,
///   w[2i+1]   row  u_i - sum_{p in R_i} v  >= -s_i   (the "minus" half),
///   w[2i+2]   row  u_i + sum_{p in R_i} v  >=  s_i   (the "plus" half).
/// phi_i = w[2i+2] + w[2i+1] - w[0]/n.
std::vector<double> phi(std::span<const double> w, std::size_t n);

/// Per-round u maximizer:
///   L1:   u_i = 1 if phi_i > 0 else 0
///   L2:   u_i = min(n (w[2i+2]+w[2i+1]) / (2 w[0]), 1), u_i = 1 when w[0] = 0
///   LInf: u_i = alpha
std::vector<double> choose_u(std::span<const double> w, ErrorNorm mode, double alpha,
                             std::size_t n);

/// Right-hand side: b[0] = -alpha, b[2i+1] = -s_i, b[2i+2] = s_i.
std::vector<double> build_rhs(const Workload& z, double alpha);

/// Multiplicative update with normalization: w_q <- w_q (1 - eta slack_q),
/// then scale so the entries sum to 1. Throws if any |slack_q| exceeds the
/// width bound 2 (that indicates a bug upstream, not a data error).
void update_weights(std::vector<double>& w, std::span<const double> slack, double eta);

struct RoundOutcome {
  std::vector<double> u;
  std::optional<Point> deep_point;  // present iff the point's exact depth > 0
  double deep_value = 0.0;          // exact workload depth of the candidate point
  double lhs = 0.0;                 // w^T A x
  std::vector<double> slack;        // A_q x - b_q, rows 0..2n
};

struct SolveOptions {
  bool exact_depth = true;
  double c3 = 64.0;
  double mu_scale = 8.0;
  /// kAuto picks the sweepline for d == 2; kGrid forces the candidate scan
  /// (the explicit/implicit equivalence tests need its tie-breaking).
  enum class Backend { kAuto, kGrid } backend = Backend::kAuto;
  /// Record w after every round (tiny instances only).
  bool trace = false;
};

/// Sampled-depth parameters derived from (delta, n, options):
///   r  = round(c3 / delta^2),
///   mu = smallest odd integer >= mu_scale * log2(n + 2).
std::size_t sample_size_r(double c3, double delta);
std::size_t repetitions_mu(double mu_scale, std::size_t n);

RoundOutcome run_round(const Workload& z, std::span<const double> w, std::span<const double> b,
                       ErrorNorm mode, double delta, const SolveOptions& opts, RngStream rng,
                       bool exact);

struct FeasibleOutput {
  std::vector<Point> points;          // the multiset F, in insertion order
  long long rounds = 0;               // T
  DiscreteDistribution distribution;  // distinct points, weight multiplicity/T
};

struct IsFeasibleResult {
  std::optional<FeasibleOutput> output;  // empty = expected constraint failed
  long long aborted_round = 0;           // round of the failure, 1-based
  double max_w_norm_error = 0.0;         // max |  ||w||_1 - 1 | seen after updates
  double max_abs_slack = 0.0;            // max |A_q x - b_q| seen across rounds
  std::vector<std::vector<double>> trace;

  bool feasible() const { return output.has_value(); }
};

/// The IsFeasible decision procedure: T rounds of MWU over the implicit LP.
/// Aborts with infeasible as soon as the expected constraint fails
/// (lhs < w^T b - 1e-12); otherwise returns the multiset F as a
/// distribution with per-point weight multiplicity/T.
IsFeasibleResult is_feasible(const Workload& z, double alpha, double delta, ErrorNorm mode,
                             const SolveOptions& opts, RngStream rng);

}  // namespace seldist
