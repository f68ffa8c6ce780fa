#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// Command implementations behind the sumrule-lab CLI.  Each run_* function
// returns the process exit code: 0 all checks pass, 1 numerical failure,
// 2 configuration error.

namespace sumrule::lab {

struct OperatorSpec {
  std::string preset;            // "free", "rank3", or empty
  std::optional<double> q0;      // rank-one shorthand
  std::string json_inline;       // inline operator JSON
  std::string json_file;         // path to operator JSON
  int random_count = 0;          // size of the random ensemble
  int max_rank = 6;
  double p_dev = 0.4;
  double q_dev = 0.4;
  std::uint64_t seed = 1;
};

struct VerifyConfig {
  OperatorSpec op;
  std::string a_spec = "one";
  int nodes = 2000;
  int jobs = 1;
  std::string out_prefix;  // writes <prefix>.csv and <prefix>.json when set
  bool quiet = false;
};
int run_verify(const VerifyConfig& cfg, std::string* csv_out = nullptr);

struct AsymptoticsConfig {
  OperatorSpec op;
  std::string a_spec = "U2sq";
  int n_min = 10;
  int n_max = 200;
  int stride = 10;
  int burn_in = 50;
  double grid_dist = 1.0;
  double grid_rmax = 6.0;
  double grid_step = 0.5;
  int nodes = 2000;
  int jobs = 1;
  std::string out_prefix;
  bool quiet = false;
};
int run_asymptotics(const AsymptoticsConfig& cfg, std::string* csv_out = nullptr);

struct AppendixConfig {
  std::string check = "all";  // bands|psd|positivity|hs|quadform|l2|all
  int l = 4;
  int K = 8;
  int n = 4;
  int random_count = 50;
  double eps = 1e-3;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string out_prefix;
  bool quiet = false;
};
int run_appendix(const AppendixConfig& cfg, std::string* csv_out = nullptr);

}  // namespace sumrule::lab
