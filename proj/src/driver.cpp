#include "seldist/driver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "seldist/sampling.hpp"

namespace seldist {

std::vector<double> guess_list(double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("guess_list: delta must lie in (0, 1]");
  }
  std::vector<double> guesses;
  const double ratio = 1.0 + delta / 2.0;
  for (double v = delta / 2.0; v < 1.0; v *= ratio) guesses.push_back(v);
  guesses.push_back(1.0);
  return guesses;
}

DiscreteDistribution reduce_size(const DiscreteDistribution& dist, double delta,
                                 const Workload& z, ErrorNorm mode, long long reps,
                                 RngStream rng) {
  if (dist.atoms.empty()) throw std::invalid_argument("reduce_size: empty distribution");
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("reduce_size: delta must lie in (0, 1]");
  }
  if (reps <= 0) {
    reps = static_cast<long long>(
        std::ceil(4.0 * std::log2(static_cast<double>(z.size()) + 2.0)));
  }
  const auto sample_size =
      static_cast<std::size_t>(std::ceil(16.0 / (delta * delta) - 1e-9));
  const double mass = dist.total_weight();

  std::vector<double> weights;
  weights.reserve(dist.atoms.size());
  for (const Atom& a : dist.atoms) weights.push_back(a.w);
  const SampleTable table(weights);

  DiscreteDistribution best;
  double best_err = 0.0;
  for (long long h = 1; h <= reps; ++h) {
    RngStream sub = rng.substream(static_cast<std::uint64_t>(h));
    std::vector<Atom> atoms;
    atoms.reserve(sample_size);
    const double unit = mass / static_cast<double>(sample_size);
    for (std::size_t k = 0; k < sample_size; ++k) {
      atoms.push_back(Atom{dist.atoms[table.draw(sub)].x, unit});
    }
    DiscreteDistribution candidate = make_distribution(dist.d, std::move(atoms));
    const double err = empirical_error(candidate, z, mode);
    if (h == 1 || err < best_err) {
      best = std::move(candidate);
      best_err = err;
    }
  }
  return best;
}

DiscreteDistribution add_sink(const DiscreteDistribution& dist, const Workload& z) {
  detail::require_dim(dist.d, z.d, "add_sink");
  const double mass = dist.total_weight();
  if (mass >= 1.0) return dist;

  Point sink(static_cast<std::size_t>(z.d));
  for (int j = 0; j < z.d; ++j) {
    double far = 0.0;
    for (const auto& sample : z.samples) {
      far = std::max(far, sample.rect.hi[static_cast<std::size_t>(j)]);
    }
    sink[static_cast<std::size_t>(j)] = far + 1.0;
  }
  DiscreteDistribution out = dist;
  out.atoms.push_back(Atom{std::move(sink), 1.0 - mass});
  return out;
}

LearnReport learn(const Workload& z, const LearnConfig& cfg) {
  if (z.size() == 0) throw std::invalid_argument("learn: empty workload");
  if (!(cfg.delta > 0.0 && cfg.delta <= 1.0)) {
    throw std::invalid_argument("learn: delta must lie in (0, 1]");
  }

  const double run_delta = cfg.reduce ? cfg.delta / 2.0 : cfg.delta;
  const std::vector<double> guesses = guess_list(run_delta);
  const RngStream master(cfg.seed);

  SolveOptions opts;
  opts.exact_depth = cfg.exact_depth;
  opts.c3 = cfg.c3;
  opts.mu_scale = cfg.mu_scale;

  std::optional<FeasibleOutput> best;
  double alpha_final = 0.0;
  long long lo = 0;
  long long hi = static_cast<long long>(guesses.size()) - 1;
  while (lo <= hi) {
    const long long mid = lo + (hi - lo) / 2;
    const double alpha = guesses[static_cast<std::size_t>(mid)];
    std::optional<FeasibleOutput> found;
    for (int attempt = 0; attempt <= cfg.retries; ++attempt) {
      IsFeasibleResult res =
          is_feasible(z, alpha, run_delta, cfg.mode, opts,
                      master.substream(static_cast<std::uint64_t>(mid),
                                       static_cast<std::uint64_t>(attempt)));
      if (res.feasible()) {
        found = std::move(res.output);
        break;
      }
      if (cfg.exact_depth) break;  // deterministic, retrying cannot help
    }
    if (found) {
      best = std::move(found);
      alpha_final = alpha;
      hi = mid - 1;
    } else {
      lo = mid + 1;
    }
  }
  if (!best) {
    // alpha = 1 always satisfies the expected constraint, so reaching this
    // point means a bug rather than an unlucky workload.
    throw std::logic_error("learn: no feasible guess, including alpha = 1");
  }

  LearnReport report;
  report.alpha_final = alpha_final;
  report.rounds_used = best->rounds;
  report.support_size_pre_reduce = best->distribution.size();
  report.distribution = std::move(best->distribution);
  if (cfg.reduce && !report.distribution.atoms.empty()) {
    report.distribution = reduce_size(report.distribution, cfg.delta, z, cfg.mode,
                                      cfg.reduce_reps, master.substream(~0ULL));
  }
  report.support_size = report.distribution.size();
  report.achieved_error = empirical_error(report.distribution, z, cfg.mode);
  return report;
}

}  // namespace seldist
