#include "lab_commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "sumrule/asymptotics.hpp"
#include "sumrule/ensemble.hpp"
#include "sumrule/io.hpp"
#include "sumrule/lns.hpp"
#include "sumrule/parallel.hpp"
#include "sumrule/sumrules.hpp"

namespace sumrule::lab {

namespace {

using nlohmann::json;

// A fixed rank-3 operator with exactly one eigenvalue outside [-2,2].
JacobiOperator rank3_preset() {
  return JacobiOperator::make(Side::half_line, {{1, 1.1}, {2, 0.95}},
                              {{0, 1.4}, {1, 0.2}, {2, -0.1}});
}

std::vector<JacobiOperator> build_operators(const OperatorSpec& spec) {
  std::vector<JacobiOperator> ops;
  if (spec.q0) {
    ops.push_back(JacobiOperator::make(Side::half_line, {}, {{0, *spec.q0}}));
  } else if (!spec.json_inline.empty()) {
    ops.push_back(operator_from_json(spec.json_inline));
  } else if (!spec.json_file.empty()) {
    std::ifstream in(spec.json_file);
    if (!in) throw std::invalid_argument("cannot open operator file: " + spec.json_file);
    std::stringstream ss;
    ss << in.rdbuf();
    ops.push_back(operator_from_json(ss.str()));
  } else if (spec.preset == "free") {
    ops.push_back(JacobiOperator::free_operator(Side::half_line));
  } else if (spec.preset == "rank3") {
    ops.push_back(rank3_preset());
  } else if (spec.random_count > 0) {
    Rng rng(spec.seed);
    for (int i = 0; i < spec.random_count; ++i)
      ops.push_back(random_half_line(rng, spec.max_rank, spec.p_dev, spec.q_dev));
  } else if (!spec.preset.empty()) {
    throw std::invalid_argument("unknown operator preset: " + spec.preset);
  } else {
    throw std::invalid_argument("no operator specified (use --preset/--q0/--op/--random)");
  }
  return ops;
}

void write_outputs(const std::string& prefix, const std::string& csv, const std::string& js) {
  if (prefix.empty()) return;
  std::ofstream c(prefix + ".csv");
  c << csv;
  std::ofstream j(prefix + ".json");
  j << js;
}

int rank_of(const JacobiOperator& J) {
  auto w = J.rank_window();
  if (!w) return 0;
  return static_cast<int>(w->second - w->first + 1);
}

}  // namespace

int run_verify(const VerifyConfig& cfg, std::string* csv_out) {
  std::vector<JacobiOperator> ops;
  ChebUExpansion A;
  try {
    ops = build_operators(cfg.op);
    A = parse_A_spec(cfg.a_spec);
    if (cfg.nodes < 2) throw std::invalid_argument("--nodes must be >= 2");
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  std::vector<SumRuleReport> reports(ops.size());
  std::vector<std::string> errors(ops.size());
  parallel_for(static_cast<int>(ops.size()), cfg.jobs, [&](int i) {
    try {
      reports[static_cast<size_t>(i)] =
          verify_sum_rule(ops[static_cast<size_t>(i)], A, cfg.nodes);
    } catch (const std::exception& e) {
      errors[static_cast<size_t>(i)] = e.what();
    }
  });

  std::string csv = report_csv_header() + "\n";
  json all = json::array();
  bool ok = true;
  for (size_t i = 0; i < ops.size(); ++i) {
    std::string case_id = "case" + std::to_string(i);
    if (!errors[i].empty()) {
      ok = false;
      csv += case_id + ",," + std::to_string(rank_of(ops[i])) + ",,,," + "error\n";
      continue;
    }
    const SumRuleReport& r = reports[i];
    ok = ok && r.pass;
    csv += report_to_csv(r, case_id, cfg.a_spec, rank_of(ops[i])) + "\n";
    all.push_back(json::parse(report_to_json(r, case_id, cfg.a_spec, rank_of(ops[i]))));
  }
  write_outputs(cfg.out_prefix, csv, all.dump(2));
  if (csv_out) *csv_out = csv;
  if (!cfg.quiet) std::cout << csv;
  for (size_t i = 0; i < errors.size(); ++i)
    if (!errors[i].empty()) std::cerr << "case" << i << " failed: " << errors[i] << "\n";
  return ok ? 0 : 1;
}

int run_asymptotics(const AsymptoticsConfig& cfg, std::string* csv_out) {
  JacobiOperator J = JacobiOperator::free_operator(Side::half_line);
  ChebUExpansion A;
  std::vector<cdouble> grid;
  try {
    std::vector<JacobiOperator> ops = build_operators(cfg.op);
    if (ops.size() != 1)
      throw std::invalid_argument("asymptotics wants a single operator, not an ensemble");
    J = ops.front();
    A = parse_A_spec(cfg.a_spec);
    if (cfg.grid_dist < 0.1)
      throw std::invalid_argument("grid touches the cut: --grid-dist must be >= 0.1");
    grid = probe_grid(cfg.grid_dist, cfg.grid_rmax, cfg.grid_step);
    if (grid.empty()) throw std::invalid_argument("empty probe grid");
    if (cfg.n_min < 1 || cfg.n_max < cfg.n_min || cfg.stride < 1)
      throw std::invalid_argument("bad n range");
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  ConvergenceTable table;
  try {
    table = convergence_experiment(J, A, cfg.n_min, cfg.n_max, cfg.stride, grid, cfg.nodes,
                                   cfg.jobs);
  } catch (const std::exception& e) {
    std::cerr << "asymptotics failed: " << e.what() << "\n";
    return 1;
  }

  std::string csv = "n,z_re,z_im,err_abs\n";
  for (size_t r = 0; r < table.rows.size(); ++r)
    for (size_t g = 0; g < table.grid.size(); ++g)
      csv += std::to_string(table.rows[r].n) + "," + format_double(table.grid[g].real()) +
             "," + format_double(table.grid[g].imag()) + "," +
             format_double(table.errors[r][g]) + "\n";

  json summary;
  summary["sup_error"] = json::array();
  for (const auto& row : table.rows)
    summary["sup_error"].push_back({{"n", row.n}, {"sup_err", row.sup_err}});

  // Trend check: sup error non-increasing (5% jitter) past the burn-in.
  bool ok = true;
  double prev = -1.0;
  for (const auto& row : table.rows) {
    if (row.n < cfg.burn_in) continue;
    if (prev >= 0.0 && row.sup_err > 1.05 * prev) ok = false;
    prev = row.sup_err;
  }
  summary["monotone_after_burn_in"] = ok;
  write_outputs(cfg.out_prefix, csv, summary.dump(2));
  if (csv_out) *csv_out = csv;
  if (!cfg.quiet) {
    for (const auto& row : table.rows)
      std::cout << "n=" << row.n << " sup_err=" << format_double(row.sup_err) << "\n";
  }
  return ok ? 0 : 1;
}

namespace {

struct AppendixCase {
  std::string id, check;
  double value = 0.0, threshold = 0.0;
  bool pass = false;
};

void run_appendix_case(const AppendixConfig& cfg, const JacobiOperator& J, Rng& rng,
                       const std::string& case_id, std::vector<AppendixCase>& out) {
  auto push = [&](const std::string& check, double value, double threshold) {
    out.push_back({case_id, check, value, threshold, value <= threshold});
  };
  bool all = cfg.check == "all";
  if (all || cfg.check == "bands") {
    double dev = 0.0;
    for (int l = 2; l <= cfg.l; ++l) {
      BandDecomposition T = T_of_J(J, l);
      ClosedBands cb = band_closed_forms(J, l);
      auto scan = [&](const DiagSeq& got, const DiagSeq& want) {
        for (auto& [i, v] : want.overrides()) dev = std::max(dev, std::abs(got.at(i) - v));
        for (auto& [i, v] : got.overrides()) dev = std::max(dev, std::abs(want.at(i) - v));
      };
      scan(T.band(l), cb.top);
      scan(T.band(l - 1), cb.second);
      scan(T.band(l - 2), cb.third);
    }
    push("bands", dev, 1e-12);
  }
  if (all || cfg.check == "psd") {
    PsdResult psd = hankel_toeplitz_psd(J, cfg.K);
    push("psd", -psd.min_eigenvalue, 1e-10);
  }
  if (all || cfg.check == "positivity") {
    double worst = 0.0;
    for (int n = 1; n <= cfg.n; ++n) worst = std::min(worst, H_chebyshev(J, n, n));
    push("positivity", -worst, 1e-10);
  }
  if (all || cfg.check == "hs") {
    double worst = 0.0;
    for (int l = 1; l <= cfg.l; ++l) worst = std::max(worst, hs_identity_check(J, l).residual);
    push("hs", worst, 1e-9);
  }
  if (all || cfg.check == "quadform") {
    PerturbationDirection d = random_direction(rng, 2, 1.0);
    ChebUExpansion A = u_product(ChebUExpansion::basis(2), ChebUExpansion::basis(2));
    double qf = quadratic_form(A, d);
    double h = H_via_trace(d.applied(cfg.eps), A);
    push("quadform", std::abs(h / (cfg.eps * cfg.eps) - qf), 0.05 * std::abs(qf));
  }
  if (all || cfg.check == "l2") {
    // Windowed-sum norms of the operator's own deviation, checked against
    // twice the quadratic form with A = U_l^2.
    PerturbationDirection d;
    for (auto& [i, p] : J.p_overrides()) d.dp[i] = p - 1.0;
    for (auto& [i, q] : J.q_overrides()) d.dq[i] = q;
    R2Report r2 = r2_condition_report(d, cfg.l);
    ChebUExpansion A = u_product(ChebUExpansion::basis(cfg.l), ChebUExpansion::basis(cfg.l));
    double qf2 = 2.0 * quadratic_form(A, d);
    push("l2", std::abs(r2.dq_norm + r2.dp_norm - qf2), 1e-10 * (1.0 + std::abs(qf2)));
  }
}

}  // namespace

int run_appendix(const AppendixConfig& cfg, std::string* csv_out) {
  static const std::set<std::string> known{"all", "bands", "psd", "positivity",
                                           "hs",  "quadform", "l2"};
  if (!known.count(cfg.check)) {
    std::cerr << "config error: unknown check '" << cfg.check << "'\n";
    return 2;
  }
  if (cfg.K < 1 || cfg.K > 12 || cfg.l < 1 || cfg.random_count < 1) {
    std::cerr << "config error: bad --K/--l/--random\n";
    return 2;
  }
  std::vector<std::vector<AppendixCase>> results(static_cast<size_t>(cfg.random_count));
  std::vector<std::string> errors(static_cast<size_t>(cfg.random_count));
  // Seed per case so the report does not depend on scheduling.
  parallel_for(cfg.random_count, cfg.jobs, [&](int i) {
    try {
      Rng rng(cfg.seed * 1000003ULL + static_cast<std::uint64_t>(i));
      JacobiOperator J = random_whole_line(rng, 6, 0.3, 0.3);
      run_appendix_case(cfg, J, rng, "case" + std::to_string(i),
                        results[static_cast<size_t>(i)]);
    } catch (const std::exception& e) {
      errors[static_cast<size_t>(i)] = e.what();
    }
  });

  std::string csv = "case_id,check_name,value,threshold,pass\n";
  bool ok = true;
  for (size_t i = 0; i < results.size(); ++i) {
    if (!errors[i].empty()) {
      ok = false;
      csv += "case" + std::to_string(i) + ",error,,,0\n";
      continue;
    }
    for (const auto& c : results[i]) {
      ok = ok && c.pass;
      csv += c.id + "," + c.check + "," + format_double(c.value) + "," +
             format_double(c.threshold) + "," + (c.pass ? "1" : "0") + "\n";
    }
  }
  json summary;
  summary["all_pass"] = ok;
  summary["cases"] = cfg.random_count;
  write_outputs(cfg.out_prefix, csv, summary.dump(2));
  if (csv_out) *csv_out = csv;
  if (!cfg.quiet) std::cout << csv;
  for (size_t i = 0; i < errors.size(); ++i)
    if (!errors[i].empty()) std::cerr << "case" << i << " failed: " << errors[i] << "\n";
  return ok ? 0 : 1;
}

}  // namespace sumrule::lab
