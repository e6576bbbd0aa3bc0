#ifndef WALD_BENCH_HPP
#define WALD_BENCH_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "wald/statistics.hpp"

namespace wald::bench {

enum class Setting { A, B };
enum class Variant { full, minimal };
enum class Format { csv, markdown };

std::string_view to_string(Setting s);
std::string_view to_string(Variant v);

/// Generator behind every benchmark stream.
using Engine = std::mt19937_64;
inline constexpr std::string_view kEngineName = "std::mt19937_64";

struct BenchConfig {
  Setting setting = Setting::A;
  std::vector<int> dims;   // d for setting A, p for setting B
  int replications = 5000;
  std::uint64_t seed = 42;
  std::optional<double> gamma;  // setting B only; defaults to p
  bool precompute = false;      // factor (H Sigma H^T)^+ once instead of per evaluation
  int warmup = 100;

  void validate() const;
};

struct BenchRow {
  Setting setting;
  Eigen::Index dimension;  // length of the hypothesis' parameter block: d (A) or p(p+1)/2 (B)
  Variant variant;
  double total_seconds;
  double per_eval_microseconds;
  double checksum;  // sum of all timed statistic values
};

struct BenchReport {
  std::string generator{kEngineName};
  std::uint64_t seed = 0;
  int replications = 0;
  bool precompute = false;
  std::vector<BenchRow> rows;
  bool valid = true;
  std::vector<std::string> problems;
};

struct HypothesisPair {
  LinearHypothesis<double> full;
  LinearHypothesis<double> minimal;
};

/// Independent stream per (seed, setting, dimension).
Engine substream(std::uint64_t seed, Setting setting, int dim);

/// Compound symmetry V = I + 1 1^T.
MatrixXd compound_symmetry(Eigen::Index dim);

/// mean + Z + z 1, with Z ~ N(0, I) and z ~ N(0, 1) independent; covariance I + 1 1^T.
VectorXd sample_compound_symmetry_normal(Eigen::Index dim, const VectorXd& mean, Engine& gen);

/// (P_2 kron J_d, 0_{2d}) against ((1,...,1,-1,...,-1), 0).
HypothesisPair build_setting_a(int d);

/// (h_p h_p^T, gamma h_p) against (h_p^T, gamma).
HypothesisPair build_setting_b(int p, double gamma);

BenchReport run_benchmark(const BenchConfig& cfg);

/// Harness sanity check: full-variant per-evaluation time never decreases with d.
bool full_cost_monotone(const BenchReport& r, Setting setting);

std::string emit_report(const BenchReport& r, Format format);

}  // namespace wald::bench

#endif  // WALD_BENCH_HPP
