#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lab_commands.hpp"

// sumrule-lab: batch experiments around the Jacobi-matrix sum rule
//   verify       both functionals and their residual, case by case
//   asymptotics  normalized orthonormal-polynomial convergence table
//   appendix     whole-line band/positivity/linearization checks
//
// Exit codes: 0 pass, 1 numerical fail, 2 usage/config error.

namespace {

using nlohmann::json;

int default_jobs() {
  if (const char* env = std::getenv("SUMRULE_JOBS")) {
    int j = std::atoi(env);
    if (j >= 1) return j;
  }
  return 1;
}

// Values from --config fill any option the user did not pass on the line.
json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  json j;
  in >> j;
  return j;
}

template <typename T>
void merge(const CLI::App& app, const std::string& flag, const json& cfg,
           const std::string& key, T& value) {
  if (app.count(flag) == 0 && cfg.contains(key)) value = cfg.at(key).get<T>();
}

void add_operator_flags(CLI::App* cmd, sumrule::lab::OperatorSpec& spec, double& q0_holder) {
  cmd->add_option("--preset", spec.preset, "operator preset: free | rank3");
  cmd->add_option("--q0", q0_holder, "rank-one operator with q_0 = c");
  cmd->add_option("--op", spec.json_file, "operator JSON file");
  cmd->add_option("--op-json", spec.json_inline, "inline operator JSON");
  cmd->add_option("--random", spec.random_count, "random ensemble size");
  cmd->add_option("--rank", spec.max_rank, "max rank of random operators");
  cmd->add_option("--pdev", spec.p_dev, "|p-1| bound for random operators");
  cmd->add_option("--qdev", spec.q_dev, "|q| bound for random operators");
  cmd->add_option("--seed", spec.seed, "ensemble seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sumrule-lab: Jacobi sum-rule experiments"};
  app.require_subcommand(1);

  sumrule::lab::VerifyConfig vc;
  double v_q0 = 0.0;
  std::string v_config;
  CLI::App* verify = app.add_subcommand("verify", "check H_A(J) = Lambda_A(J) case by case");
  add_operator_flags(verify, vc.op, v_q0);
  verify->add_option("--A", vc.a_spec, "weight polynomial (one|U2sq|U3sq|UmUn:m,n|sq:...|coeffs:...)");
  verify->add_option("--nodes", vc.nodes, "Gauss nodes for the log integral");
  verify->add_option("--jobs", vc.jobs, "parallel cases (env SUMRULE_JOBS)");
  verify->add_option("--out", vc.out_prefix, "write <prefix>.csv and <prefix>.json");
  verify->add_option("--config", v_config, "JSON config file (flags override)");
  verify->add_flag("--quiet", vc.quiet, "suppress stdout table");

  sumrule::lab::AsymptoticsConfig ac;
  double a_q0 = 0.0;
  std::string a_config;
  CLI::App* asym = app.add_subcommand("asymptotics", "normalized P_n convergence experiment");
  add_operator_flags(asym, ac.op, a_q0);
  asym->add_option("--A", ac.a_spec, "weight polynomial");
  asym->add_option("--nmin", ac.n_min, "first polynomial index");
  asym->add_option("--nmax", ac.n_max, "last polynomial index");
  asym->add_option("--stride", ac.stride, "index stride");
  asym->add_option("--burn-in", ac.burn_in, "trend check starts here");
  asym->add_option("--grid-dist", ac.grid_dist, "min distance of the grid from [-2,2] (>= 0.1)");
  asym->add_option("--grid-rmax", ac.grid_rmax, "grid radius");
  asym->add_option("--grid-step", ac.grid_step, "grid spacing");
  asym->add_option("--nodes", ac.nodes, "Gauss nodes for D(z)");
  asym->add_option("--jobs", ac.jobs, "parallel rows (env SUMRULE_JOBS)");
  asym->add_option("--out", ac.out_prefix, "write <prefix>.csv and <prefix>.json");
  asym->add_option("--config", a_config, "JSON config file (flags override)");
  asym->add_flag("--quiet", ac.quiet, "suppress stdout table");

  sumrule::lab::AppendixConfig xc;
  std::string x_config;
  CLI::App* appx = app.add_subcommand("appendix", "whole-line ensemble checks");
  appx->add_option("--check", xc.check, "bands|psd|positivity|hs|quadform|l2|all");
  appx->add_option("--l", xc.l, "top Chebyshev degree");
  appx->add_option("--K", xc.K, "Hankel-Toeplitz matrix size");
  appx->add_option("--n", xc.n, "positivity/l2 window");
  appx->add_option("--random", xc.random_count, "ensemble size");
  appx->add_option("--eps", xc.eps, "step for the quadratic-form check");
  appx->add_option("--seed", xc.seed, "ensemble seed");
  appx->add_option("--jobs", xc.jobs, "parallel cases (env SUMRULE_JOBS)");
  appx->add_option("--out", xc.out_prefix, "write <prefix>.csv and <prefix>.json");
  appx->add_option("--config", x_config, "JSON config file (flags override)");
  appx->add_flag("--quiet", xc.quiet, "suppress stdout table");

  vc.jobs = ac.jobs = xc.jobs = default_jobs();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) {
      json cfg = load_config(v_config);
      merge(*verify, "--A", cfg, "A", vc.a_spec);
      merge(*verify, "--nodes", cfg, "nodes", vc.nodes);
      merge(*verify, "--jobs", cfg, "jobs", vc.jobs);
      merge(*verify, "--out", cfg, "out", vc.out_prefix);
      merge(*verify, "--seed", cfg, "seed", vc.op.seed);
      merge(*verify, "--random", cfg, "random", vc.op.random_count);
      merge(*verify, "--rank", cfg, "rank", vc.op.max_rank);
      merge(*verify, "--preset", cfg, "preset", vc.op.preset);
      if (verify->count("--q0")) vc.op.q0 = v_q0;
      else if (cfg.contains("q0")) vc.op.q0 = cfg.at("q0").get<double>();
      return sumrule::lab::run_verify(vc);
    }
    if (asym->parsed()) {
      json cfg = load_config(a_config);
      merge(*asym, "--A", cfg, "A", ac.a_spec);
      merge(*asym, "--nmin", cfg, "nmin", ac.n_min);
      merge(*asym, "--nmax", cfg, "nmax", ac.n_max);
      merge(*asym, "--stride", cfg, "stride", ac.stride);
      merge(*asym, "--grid-dist", cfg, "grid_dist", ac.grid_dist);
      merge(*asym, "--grid-rmax", cfg, "grid_rmax", ac.grid_rmax);
      merge(*asym, "--grid-step", cfg, "grid_step", ac.grid_step);
      merge(*asym, "--nodes", cfg, "nodes", ac.nodes);
      merge(*asym, "--preset", cfg, "preset", ac.op.preset);
      merge(*asym, "--out", cfg, "out", ac.out_prefix);
      if (asym->count("--q0")) ac.op.q0 = a_q0;
      else if (cfg.contains("q0")) ac.op.q0 = cfg.at("q0").get<double>();
      return sumrule::lab::run_asymptotics(ac);
    }
    json cfg = load_config(x_config);
    merge(*appx, "--check", cfg, "check", xc.check);
    merge(*appx, "--l", cfg, "l", xc.l);
    merge(*appx, "--K", cfg, "K", xc.K);
    merge(*appx, "--n", cfg, "n", xc.n);
    merge(*appx, "--random", cfg, "random", xc.random_count);
    merge(*appx, "--eps", cfg, "eps", xc.eps);
    merge(*appx, "--seed", cfg, "seed", xc.seed);
    return sumrule::lab::run_appendix(xc);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
