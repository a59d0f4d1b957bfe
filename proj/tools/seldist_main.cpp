#include <chrono>
#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "seldist/baseline.hpp"
#include "seldist/depth.hpp"
#include "seldist/driver.hpp"
#include "seldist/io.hpp"

namespace {

using seldist::ErrorNorm;
using seldist::Workload;

ErrorNorm parse_norm(const std::string& name) {
  if (name == "l1") return ErrorNorm::kL1;
  if (name == "l2") return ErrorNorm::kL2;
  if (name == "linf") return ErrorNorm::kLInf;
  throw seldist::ValidationError("unknown error norm: " + name + " (expected l1|l2|linf)");
}

std::string check_delta(const std::string& value) {
  try {
    const double d = std::stod(value);
    if (d > 0.0 && d <= 1.0) return {};
  } catch (...) {
  }
  return "delta must lie in (0, 1]";
}

int run(int argc, char** argv) {
  CLI::App app{"Learns a discrete distribution matching observed range-query selectivities."};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a workload file");
  std::size_t gen_n = 50;
  int gen_d = 2;
  std::size_t gen_support = 3;
  std::uint64_t gen_seed = 0;
  std::size_t gen_gadget = 0;
  std::string gen_out;
  gen->add_option("--n", gen_n, "Sample count");
  gen->add_option("--d", gen_d, "Dimension");
  gen->add_option("--support", gen_support, "Hidden distribution size");
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--gadget", gen_gadget, "Emit the m-slab cover gadget instead");
  gen->add_option("--out", gen_out, "Output workload path")->required();

  // learn
  auto* learn_cmd = app.add_subcommand("learn", "Fit a distribution to a workload");
  std::string learn_workload;
  std::string learn_error = "l1";
  std::string learn_out;
  std::string learn_report;
  seldist::LearnConfig cfg;
  bool no_reduce = false;
  learn_cmd->add_option("--workload", learn_workload, "Workload path")->required();
  learn_cmd->add_option("--delta", cfg.delta, "Additive error budget")
      ->required()
      ->check(CLI::Validator(check_delta, "DELTA"));
  learn_cmd->add_option("--error", learn_error, "Error norm: l1|l2|linf");
  learn_cmd->add_option("--seed", cfg.seed, "RNG seed");
  learn_cmd->add_flag("--exact-depth", cfg.exact_depth, "Exact deepest-point computation");
  learn_cmd->add_flag("--no-reduce", no_reduce, "Skip the support-size reduction");
  learn_cmd->add_option("--c3", cfg.c3, "Sample-size constant for the sampled depth oracle");
  learn_cmd->add_option("--mu-scale", cfg.mu_scale, "Scale of the median-trick repetition count");
  learn_cmd->add_option("--retries", cfg.retries, "Retries per guess after a sampled-mode abort");
  learn_cmd->add_option("--out", learn_out, "Output distribution path")->required();
  learn_cmd->add_option("--report", learn_report, "Optional report path");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a distribution against a workload");
  std::string eval_workload, eval_dist, eval_error = "l1";
  eval_cmd->add_option("--workload", eval_workload, "Workload path")->required();
  eval_cmd->add_option("--dist", eval_dist, "Distribution path")->required();
  eval_cmd->add_option("--error", eval_error, "Error norm: l1|l2|linf");

  // oracle-depth
  auto* depth_cmd = app.add_subcommand("oracle-depth", "Deepest point for explicit weights");
  std::string depth_workload, depth_weights;
  depth_cmd->add_option("--workload", depth_workload, "Workload path")->required();
  depth_cmd->add_option("--weights", depth_weights, "JSON array of per-rect weights")->required();

  // oracle-opt
  auto* opt_cmd = app.add_subcommand("oracle-opt", "Discretized optimum on a tiny instance");
  std::string opt_workload, opt_error = "l1";
  long long opt_grid = 200;
  opt_cmd->add_option("--workload", opt_workload, "Workload path")->required();
  opt_cmd->add_option("--error", opt_error, "Error norm: l1|l2|linf");
  opt_cmd->add_option("--grid-weights", opt_grid, "Weight grid resolution");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "%s\n%s", e.what(), app.help().c_str());
    return 2;
  }

  if (*gen) {
    Workload z = gen_gadget >= 2 ? seldist::gen_cover_gadget(gen_d, gen_gadget)
                                 : seldist::gen_consistent(gen_n, gen_d, gen_support,
                                                           seldist::RngStream(gen_seed))
                                       .first;
    seldist::save_workload(z, gen_out);
    return 0;
  }

  if (*learn_cmd) {
    cfg.mode = parse_norm(learn_error);
    cfg.reduce = !no_reduce;
    const Workload z = seldist::load_workload(learn_workload);

    const auto t0 = std::chrono::steady_clock::now();
    const seldist::LearnReport report = seldist::learn(z, cfg);
    const double wall_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    seldist::save_distribution(report.distribution, learn_out);
    // Re-verify through the same path eval takes before reporting.
    const seldist::DiscreteDistribution reloaded = seldist::load_distribution(learn_out);
    const double verified_error = seldist::empirical_error(reloaded, z, cfg.mode);

    if (!learn_report.empty()) {
      nlohmann::ordered_json rep;
      rep["version"] = 1;
      rep["error"] = learn_error;
      rep["delta"] = cfg.delta;
      rep["seed"] = cfg.seed;
      rep["exact_depth"] = cfg.exact_depth;
      rep["reduce"] = cfg.reduce;
      rep["achieved_error"] = verified_error;
      rep["alpha_final"] = report.alpha_final;
      rep["support_size"] = report.support_size;
      rep["support_size_pre_reduce"] = report.support_size_pre_reduce;
      rep["rounds"] = report.rounds_used;
      rep["wall_time_sec"] = wall_sec;
      seldist::write_text_file(learn_report, rep.dump(2) + "\n");
    }
    std::printf("achieved_error=%.17g alpha_final=%.17g support=%zu rounds=%lld\n",
                verified_error, report.alpha_final, report.support_size, report.rounds_used);
    return 0;
  }

  if (*eval_cmd) {
    const Workload z = seldist::load_workload(eval_workload);
    const seldist::DiscreteDistribution dist = seldist::load_distribution(eval_dist);
    if (dist.d != z.d) {
      throw seldist::ValidationError("dimension mismatch between workload and distribution");
    }
    std::printf("%.17g\n", seldist::empirical_error(dist, z, parse_norm(eval_error)));
    return 0;
  }

  if (*depth_cmd) {
    const Workload z = seldist::load_workload(depth_workload);
    seldist::SignedWeightedRanges wr;
    wr.d = z.d;
    wr.rects = z.rects();
    wr.omega = seldist::load_weights(depth_weights, z.size());
    const seldist::DeepestResult result = seldist::deepest_point(wr);
    nlohmann::ordered_json out;
    out["value"] = result.value;
    out["point"] = result.point;
    std::printf("%s\n", out.dump().c_str());
    return 0;
  }

  if (*opt_cmd) {
    const Workload z = seldist::load_workload(opt_workload);
    std::printf("%.17g\n", seldist::exhaustive_opt(z, parse_norm(opt_error), opt_grid));
    return 0;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const seldist::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
}
