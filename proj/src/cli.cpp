#include "dualfgm/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dualfgm/dual.hpp"
#include "dualfgm/error.hpp"
#include "dualfgm/io.hpp"
#include "dualfgm/problems.hpp"
#include "dualfgm/restart.hpp"

namespace dualfgm {

namespace {

using nlohmann::ordered_json;

constexpr int kConverged = 0;
constexpr int kFailed = 1;
constexpr int kNotConverged = 2;

ordered_json certificate_json(const Vector& x, const Vector& y, const Certificate& c) {
  ordered_json j;
  j["x"] = x;
  j["y"] = y;
  j["gap"] = c.gap;
  j["residual"] = c.residual;
  j["iterations"] = c.iterations;
  j["converged"] = c.converged;
  return j;
}

class Output {
 public:
  Output(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(&out) {
    if (!cfg.trace_path.empty()) {
      trace_file_ = std::make_unique<std::ofstream>(cfg.trace_path);
      if (!*trace_file_) throw Error("cannot write " + cfg.trace_path.string());
    }
  }

  TraceSink sink() {
    std::ostream* dst = trace_file_ ? trace_file_.get() : out_;
    const bool timing = cfg_.timing;
    return [dst, timing](const TraceRecord& r) { *dst << trace_json(r, timing) << '\n'; };
  }

  void result(const ordered_json& j) {
    if (cfg_.out_path.empty()) {
      *out_ << j.dump() << '\n';
      return;
    }
    std::ofstream f(cfg_.out_path);
    if (!f) throw Error("cannot write " + cfg_.out_path.string());
    f << j.dump(2) << '\n';
  }

 private:
  const RunConfig& cfg_;
  std::ostream* out_;
  std::unique_ptr<std::ofstream> trace_file_;
};

int solve(const ConstrainedProblem& problem, const RunConfig& cfg, Output& output) {
  if (cfg.restart && cfg.regularize) {
    RegularizedOptions opts;
    opts.eps = cfg.eps;
    opts.eps_feas = cfg.eps_feas;
    opts.initial_radius = cfg.r0;
    opts.check_every = cfg.check_every;
    opts.trace = output.sink();
    const RegularizedResult r = regularized_solve(problem, opts);
    ordered_json j = certificate_json(r.x, r.y, r.cert);
    j["rounds"] = r.stats.rounds;
    j["final_mu"] = r.stats.final_mu;
    output.result(j);
    return r.cert.converged ? kConverged : kNotConverged;
  }
  if (cfg.restart) {
    RestartConfig rc;
    rc.mu = *cfg.mu;
    rc.eps = cfg.eps;
    rc.eps_feas = cfg.eps_feas;
    rc.check_every = cfg.check_every;
    rc.trace = output.sink();
    const std::int64_t inner = rc.inner_iterations(problem.lipschitz());
    const std::int64_t budget =
        cfg.max_iter > 0 ? cfg.max_iter
                         : 10 * restart_iteration_bound(problem.lipschitz(), rc.mu, 1.0, cfg.eps,
                                                        cfg.eps_feas);
    const RestartResult r = restart_solve(problem, rc, (budget + inner - 1) / inner);
    ordered_json j = certificate_json(r.x, r.y, r.cert);
    j["restarts"] = r.blocks;
    output.result(j);
    return r.cert.converged ? kConverged : kNotConverged;
  }
  PrimalDualOptions opts;
  opts.eps = cfg.eps;
  opts.eps_feas = cfg.eps_feas;
  opts.max_iter = cfg.max_iter;
  opts.check_every = cfg.check_every;
  opts.schedule = cfg.schedule;
  opts.trace = output.sink();
  const PrimalDualResult r = solve_primal_dual(problem, opts);
  output.result(certificate_json(r.x, r.y, r.cert));
  return r.cert.converged ? kConverged : kNotConverged;
}

int bench(const ElpProblem& problem, const RunConfig& cfg, Output& output) {
  PrimalDualOptions direct_opts;
  direct_opts.eps = cfg.eps;
  direct_opts.eps_feas = cfg.eps_feas;
  direct_opts.max_iter = cfg.max_iter;
  direct_opts.check_every = cfg.check_every;
  direct_opts.schedule = cfg.schedule;
  const PrimalDualResult direct = solve_primal_dual(problem, direct_opts);

  RegularizedOptions reg_opts;
  reg_opts.eps = cfg.eps;
  reg_opts.eps_feas = cfg.eps_feas;
  reg_opts.initial_radius = cfg.r0;
  reg_opts.check_every = cfg.check_every;
  const RegularizedResult reg = regularized_solve(problem, reg_opts);

  ordered_json j;
  j["direct"] = {{"iterations", direct.cert.iterations},
                 {"converged", direct.cert.converged},
                 {"gap", direct.cert.gap},
                 {"residual", direct.cert.residual}};
  j["regularized"] = {{"iterations", reg.stats.total_iterations},
                      {"converged", reg.cert.converged},
                      {"rounds", reg.stats.rounds},
                      {"final_mu", reg.stats.final_mu},
                      {"primal_bound", reg.cert.gap},
                      {"residual", reg.cert.residual}};
  output.result(j);
  return direct.cert.converged && reg.cert.converged ? kConverged : kNotConverged;
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (!(cfg.eps > 0.0) || !(cfg.eps_feas > 0.0)) {
    throw UsageError("--eps and --eps-feas must be positive");
  }
  if (cfg.check_every < 1) throw UsageError("--check-every must be at least 1");
  if (cfg.max_iter < 0) throw UsageError("--max-iter must be non-negative");
  if (!(cfg.r0 > 0.0)) throw UsageError("--r0 must be positive");
  if (cfg.regularize && !cfg.restart) throw UsageError("--regularize requires --restart");
  if (cfg.restart && !cfg.regularize && !cfg.mu) {
    throw UsageError("--restart needs --mu (or --regularize)");
  }
  if (cfg.mu && (!cfg.restart || cfg.regularize)) {
    throw UsageError("--mu is only used by --restart without --regularize");
  }
  if (cfg.mu && !(*cfg.mu > 0.0)) throw UsageError("--mu must be positive");
  if (cfg.command == Command::Bench && cfg.restart) {
    throw UsageError("bench always runs both solvers; drop --restart");
  }
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
    Output output(cfg, out);
    PowerIterationOptions power;
    power.seed = cfg.seed;
    switch (cfg.command) {
      case Command::SolveElp: {
        ElpProblem p(read_matrix_market(cfg.matrix_path), read_vector(cfg.rhs_path));
        return solve(p, cfg, output);
      }
      case Command::SolveQuadratic: {
        QuadraticProblem p(read_matrix_market(cfg.matrix_path), read_vector(cfg.rhs_path), power);
        if (!p.lipschitz_converged()) err << "warning: power iteration for L did not converge\n";
        return solve(p, cfg, output);
      }
      case Command::PageRank: {
        PageRankInstance inst = build_pagerank(read_matrix_market(cfg.matrix_path), power);
        if (!inst.problem.lipschitz_converged()) {
          err << "warning: power iteration for L did not converge\n";
        }
        return solve(inst.problem, cfg, output);
      }
      case Command::Bench: {
        ElpProblem p(read_matrix_market(cfg.matrix_path), read_vector(cfg.rhs_path));
        return bench(p, cfg, output);
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kFailed;
}

int cli_main(int argc, char** argv) {
  CLI::App app{"Primal-dual fast gradient solver for min g(x) s.t. Ax = b"};
  app.require_subcommand(1);
  RunConfig cfg;
  double mu = 0.0;
  std::string schedule = "simplified";

  auto add_common = [&](CLI::App* sub, bool needs_rhs) {
    sub->add_option("matrix,--matrix", cfg.matrix_path, "Matrix Market file")
        ->required()
        ->check(CLI::ExistingFile);
    if (needs_rhs) {
      sub->add_option("rhs,--rhs", cfg.rhs_path, "Right-hand side (Matrix Market or text)")
          ->required()
          ->check(CLI::ExistingFile);
    }
    sub->add_option("--eps", cfg.eps, "Duality-gap tolerance")->capture_default_str();
    sub->add_option("--eps-feas", cfg.eps_feas, "Feasibility tolerance ||Ax - b||")
        ->capture_default_str();
    sub->add_option("--schedule", schedule, "Step schedule")
        ->check(CLI::IsMember({"exact", "simplified"}))
        ->capture_default_str();
    sub->add_flag("--restart", cfg.restart, "Restarted method (strongly convex dual)");
    sub->add_flag("--regularize", cfg.regularize, "With --restart: regularize and search mu");
    sub->add_option("--mu", mu, "Strong convexity of the dual, required by --restart");
    sub->add_option("--r0", cfg.r0, "Initial dual radius guess for --regularize")
        ->capture_default_str();
    sub->add_option("--max-iter", cfg.max_iter, "Iteration budget (0 = automatic)")
        ->capture_default_str();
    sub->add_option("--check-every", cfg.check_every, "Iterations between certificate checks")
        ->capture_default_str();
    sub->add_option("--seed", cfg.seed, "Seed for the power iteration")->capture_default_str();
    sub->add_option("--trace", cfg.trace_path, "JSON-lines trace file (default stdout)");
    sub->add_option("--out", cfg.out_path, "Result JSON file (default stdout)");
    sub->add_flag("--timing", cfg.timing, "Include wall_ms in trace records");
  };

  struct Entry {
    const char* name;
    Command command;
    bool needs_rhs;
    const char* help;
  };
  const Entry commands[] = {
      {"solve-elp", Command::SolveElp, true, "Entropy-linear program"},
      {"solve-quadratic", Command::SolveQuadratic, true, "Least-norm solution of Ax = b"},
      {"pagerank", Command::PageRank, false, "Stationary vector of P"},
      {"bench", Command::Bench, true, "Direct vs regularized on ELP"},
  };
  std::map<CLI::App*, Command> by_app;
  for (const Entry& e : commands) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    add_common(sub, e.needs_rhs);
    by_app[sub] = e.command;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kFailed;
  }
  for (const auto& [sub, command] : by_app) {
    if (sub->parsed()) {
      cfg.command = command;
      if (sub->count("--mu") > 0) cfg.mu = mu;
    }
  }
  cfg.schedule = schedule == "exact" ? ScheduleKind::Exact : ScheduleKind::Simplified;
  return run_command(cfg, std::cout, std::cerr);
}

}  // namespace dualfgm
