#include "seldist/mwu.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "seldist/depth.hpp"
#include "seldist/sampling.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace seldist {

namespace {

constexpr double kAbortSlack = 1e-12;

void check_alpha_delta(double alpha, double delta) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in [0, 1]");
  }
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1]");
  }
}

int pool_threads(bool exact) {
#ifdef _OPENMP
  return exact ? 1 : omp_get_max_threads();
#else
  (void)exact;
  return 1;
#endif
}

/// Per-call state for the round loop: the workload view, the depth solver
/// pool over the fixed rectangle set, and reusable scratch.
struct RoundContext {
  const Workload& z;
  std::vector<Rect> rects;
  ErrorNorm mode;
  double delta;
  SolveOptions opts;
  std::size_t r = 0;
  std::size_t mu = 0;
  detail::DepthOraclePool pool;

  std::vector<double> omega;
  std::vector<double> u;
  std::vector<double> row_value;  // A_q x per row

  RoundContext(const Workload& workload, ErrorNorm mode_in, double delta_in,
               const SolveOptions& opts_in, bool exact)
      : z(workload),
        rects(workload.rects()),
        mode(mode_in),
        delta(delta_in),
        opts(opts_in),
        pool(rects, workload.d, pool_threads(exact),
             opts_in.backend == SolveOptions::Backend::kGrid),
        omega(workload.size(), 0.0),
        u(workload.size(), 0.0),
        row_value(2 * workload.size() + 1, 0.0) {
    r = sample_size_r(opts.c3, delta);
    mu = repetitions_mu(opts.mu_scale, workload.size());
  }
};

struct RoundScratch {
  std::optional<Point> deep_point;
  double deep_value = 0.0;
  double lhs = 0.0;
};

/// One MWU round against the context's scratch buffers. ctx.u and
/// ctx.row_value are left describing the chosen x^(t).
RoundScratch run_round_core(RoundContext& ctx, std::span<const double> w,
                            std::span<const double> b, bool exact, RngStream rng) {
  const std::size_t n = ctx.z.size();
  const double alpha = -b[0];

  ctx.u = choose_u(w, ctx.mode, alpha, n);
  for (std::size_t i = 0; i < n; ++i) ctx.omega[i] = w[2 * i + 2] - w[2 * i + 1];

  DeepestResult candidate;
  if (exact) {
    candidate = ctx.pool.solve(ctx.omega, 0);
  } else {
    WeightSplit split = WeightSplit::from_probability_vector(w);
    candidate = detail::approx_deepest_full(ctx.rects, ctx.z.d, split, ctx.r, ctx.mu, rng,
                                            ctx.pool)
                    .result;
  }

  // The row rules condition on the point's depth in the full workload, so
  // re-verify it exactly (O(n)) regardless of how the point was found.
  double true_depth = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (detail::contains_unchecked(ctx.rects[i], candidate.point.data())) {
      true_depth += ctx.omega[i];
    }
  }
  const bool use_point = true_depth > 0.0;

  double u_row0 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    u_row0 += ctx.mode == ErrorNorm::kL2 ? ctx.u[i] * ctx.u[i] : ctx.u[i];
  }
  ctx.row_value[0] = -u_row0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool in_pt =
        use_point && detail::contains_unchecked(ctx.rects[i], candidate.point.data());
    ctx.row_value[2 * i + 1] = ctx.u[i] - (in_pt ? 1.0 : 0.0);
    ctx.row_value[2 * i + 2] = ctx.u[i] + (in_pt ? 1.0 : 0.0);
  }

  double lhs = 0.0;
  for (std::size_t q = 0; q < ctx.row_value.size(); ++q) lhs += w[q] * ctx.row_value[q];

  RoundScratch out;
  out.deep_value = true_depth;
  out.lhs = lhs;
  if (use_point) out.deep_point = std::move(candidate.point);
  return out;
}

}  // namespace

MwuConstants mwu_constants(double delta, std::size_t n) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("mwu_constants: delta must lie in (0, 1]");
  }
  MwuConstants c;
  c.eta = delta / 32.0;
  c.rounds = static_cast<long long>(
      std::ceil(512.0 / (delta * delta) * std::log(2.0 * static_cast<double>(n) + 1.0)));
  return c;
}

std::vector<double> phi(std::span<const double> w, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = w[2 * i + 2] + w[2 * i + 1] - w[0] / static_cast<double>(n);
  }
  return out;
}

std::vector<double> choose_u(std::span<const double> w, ErrorNorm mode, double alpha,
                             std::size_t n) {
  std::vector<double> u(n);
  switch (mode) {
    case ErrorNorm::kL1: {
      const std::vector<double> coeff = phi(w, n);
      for (std::size_t i = 0; i < n; ++i) u[i] = coeff[i] > 0.0 ? 1.0 : 0.0;
      break;
    }
    case ErrorNorm::kL2: {
      const double w0 = w[0];
      for (std::size_t i = 0; i < n; ++i) {
        if (w0 == 0.0) {
          u[i] = 1.0;
        } else {
          u[i] = std::min(static_cast<double>(n) * (w[2 * i + 2] + w[2 * i + 1]) / (2.0 * w0),
                          1.0);
        }
      }
      break;
    }
    case ErrorNorm::kLInf: {
      if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("choose_u: alpha must lie in [0, 1] for the max norm");
      }
      std::fill(u.begin(), u.end(), alpha);
      break;
    }
  }
  return u;
}

std::vector<double> build_rhs(const Workload& z, double alpha) {
  std::vector<double> b(2 * z.size() + 1);
  b[0] = -alpha;
  for (std::size_t i = 0; i < z.size(); ++i) {
    b[2 * i + 1] = -z.samples[i].s;
    b[2 * i + 2] = z.samples[i].s;
  }
  return b;
}

void update_weights(std::vector<double>& w, std::span<const double> slack, double eta) {
  if (w.size() != slack.size()) {
    throw std::invalid_argument("update_weights: weight/slack size mismatch");
  }
  double sum = 0.0;
  for (std::size_t q = 0; q < w.size(); ++q) {
    if (std::abs(slack[q]) > 2.0 + 1e-9) {
      throw std::logic_error("update_weights: row slack exceeds the width bound 2");
    }
    w[q] *= 1.0 - eta * slack[q];
    sum += w[q];
  }
  for (double& wq : w) wq /= sum;
}

std::size_t sample_size_r(double c3, double delta) {
  const auto r = static_cast<long long>(std::llround(c3 / (delta * delta)));
  return static_cast<std::size_t>(std::max<long long>(1, r));
}

std::size_t repetitions_mu(double mu_scale, std::size_t n) {
  const double x = mu_scale * std::log2(static_cast<double>(n) + 2.0);
  auto m = static_cast<long long>(std::ceil(x));
  if (m < 1) m = 1;
  if (m % 2 == 0) ++m;
  return static_cast<std::size_t>(m);
}

RoundOutcome run_round(const Workload& z, std::span<const double> w, std::span<const double> b,
                       ErrorNorm mode, double delta, const SolveOptions& opts, RngStream rng,
                       bool exact) {
  if (w.size() != 2 * z.size() + 1 || b.size() != w.size()) {
    throw std::invalid_argument("run_round: vector sizes must be 2n+1");
  }
  RoundContext ctx(z, mode, delta, opts, exact);
  RoundScratch scratch = run_round_core(ctx, w, b, exact, rng);

  RoundOutcome out;
  out.u = ctx.u;
  out.deep_point = std::move(scratch.deep_point);
  out.deep_value = scratch.deep_value;
  out.lhs = scratch.lhs;
  out.slack.resize(ctx.row_value.size());
  for (std::size_t q = 0; q < ctx.row_value.size(); ++q) {
    out.slack[q] = ctx.row_value[q] - b[q];
  }
  return out;
}

IsFeasibleResult is_feasible(const Workload& z, double alpha, double delta, ErrorNorm mode,
                             const SolveOptions& opts, RngStream rng) {
  check_alpha_delta(alpha, delta);
  if (z.size() == 0) throw std::invalid_argument("is_feasible: empty workload");

  const std::size_t n = z.size();
  const auto [eta, rounds] = mwu_constants(delta, n);
  const std::vector<double> b = build_rhs(z, alpha);

  std::vector<double> w(2 * n + 1, 1.0 / static_cast<double>(2 * n + 1));
  std::vector<double> slack(2 * n + 1);
  RoundContext ctx(z, mode, delta, opts, opts.exact_depth);

  IsFeasibleResult result;
  std::vector<Point> points;

  for (long long t = 1; t <= rounds; ++t) {
    RoundScratch round =
        run_round_core(ctx, w, b, opts.exact_depth, rng.substream(static_cast<std::uint64_t>(t)));

    double rhs = 0.0;
    for (std::size_t q = 0; q < b.size(); ++q) rhs += w[q] * b[q];
    if (round.lhs < rhs - kAbortSlack) {
      result.aborted_round = t;
      return result;
    }

    for (std::size_t q = 0; q < b.size(); ++q) {
      slack[q] = ctx.row_value[q] - b[q];
      result.max_abs_slack = std::max(result.max_abs_slack, std::abs(slack[q]));
    }
    update_weights(w, slack, eta);

    double norm = 0.0;
    for (double wq : w) norm += wq;
    result.max_w_norm_error = std::max(result.max_w_norm_error, std::abs(norm - 1.0));

    if (round.deep_point) points.push_back(std::move(*round.deep_point));
    if (opts.trace) result.trace.push_back(w);
  }

  FeasibleOutput out;
  out.rounds = rounds;
  const double unit = 1.0 / static_cast<double>(rounds);
  std::vector<Atom> atoms;
  atoms.reserve(points.size());
  for (const Point& p : points) atoms.push_back(Atom{p, unit});
  out.distribution = make_distribution(z.d, std::move(atoms));
  out.points = std::move(points);
  result.output = std::move(out);
  return result;
}

}  // namespace seldist
