#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace shs6v {

inline constexpr const char* kVersion = "0.1.0";

struct BoundaryConfig {
  std::string kind = "packed";  // packed | empty | bernoulli | profile
  double rho_v = 0.5;
  double rho_h = 0.5;
  double chi_slope = 0.0;  // profile kind: chi(x) = chi_slope * x, in [-I, 0]
  double psi_slope = 0.0;  // profile kind: psi(y) = psi_slope * y, in [0, J]
};

struct ExperimentConfig {
  std::string kind;  // identity-check | weights-dump | four-point-scan |
                     // riemann | sample | lln | clt
  std::vector<long> L = {64, 128, 256, 512};
  double beta1 = 2.0;
  double beta2 = 1.0;
  int I = 1;
  int J = 1;
  bool has_raw_params = false;  // when set, (q, alpha) bypass the scaling map
  double q = 0.0;
  double alpha = 0.0;
  BoundaryConfig boundary;
  int replicas = 100;
  std::uint64_t base_seed = 20240901;
  std::vector<std::pair<double, double>> eval_points = {{1.0, 1.0}, {0.5, 0.5}};
  double grid_step = 0.0625;  // lln sup-norm grid
  int max_I = 3;              // identity sweep bounds
  int max_J = 3;
  bool corrupt = false;  // identity-check self-test: perturb one fusion weight
  std::string out_dir = "out";
  int threads = 0;  // 0 = hardware concurrency
  bool svg = false;
};

ExperimentConfig default_config(const std::string& kind);
ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& cfg);

struct RunReport {
  bool ok = true;
  std::vector<std::string> lines;
  std::map<std::string, double> metrics;
};

/// Dispatches on cfg.kind; writes outputs and a manifest under cfg.out_dir.
RunReport run_experiment(const ExperimentConfig& cfg);

RunReport run_identity_check(const ExperimentConfig& cfg);
RunReport run_weights_dump(const ExperimentConfig& cfg);
RunReport run_four_point_scan(const ExperimentConfig& cfg);
RunReport run_riemann(const ExperimentConfig& cfg);
RunReport run_sample(const ExperimentConfig& cfg);
RunReport run_lln(const ExperimentConfig& cfg);
RunReport run_clt(const ExperimentConfig& cfg);

/// Least-squares slope of log(y) against log(x).
double fit_loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace shs6v
