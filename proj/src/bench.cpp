#include "wald/bench.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

namespace wald::bench {

std::string_view to_string(Setting s) { return s == Setting::A ? "A" : "B"; }
std::string_view to_string(Variant v) { return v == Variant::full ? "full" : "minimal"; }

void BenchConfig::validate() const {
  if (dims.empty()) throw InvalidArgument("benchmark needs at least one dimension");
  for (int d : dims)
    if (d < 1) throw InvalidArgument("benchmark dimensions must be positive");
  if (replications < 1) throw InvalidArgument("replications must be at least 1");
  if (warmup < 0) throw InvalidArgument("warm-up count must be nonnegative");
  if (gamma && !std::isfinite(*gamma)) throw InvalidArgument("gamma must be finite");
}

Engine substream(std::uint64_t seed, Setting setting, int dim) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(setting), static_cast<std::uint32_t>(dim)};
  return Engine(seq);
}

MatrixXd compound_symmetry(Eigen::Index dim) {
  return MatrixXd::Identity(dim, dim) + MatrixXd::Ones(dim, dim);
}

VectorXd sample_compound_symmetry_normal(Eigen::Index dim, const VectorXd& mean, Engine& gen) {
  if (mean.size() != dim) throw InvalidArgument("mean length does not match dimension");
  std::normal_distribution<double> normal;
  VectorXd x(dim);
  for (Eigen::Index i = 0; i < dim; ++i) x(i) = normal(gen);
  const double shared = normal(gen);
  return mean + x + VectorXd::Constant(dim, shared);
}

HypothesisPair build_setting_a(int d) {
  if (d < 1) throw InvalidArgument("setting A needs d >= 1");
  const MatrixXd p2 = MatrixXd::Identity(2, 2) - MatrixXd::Ones(2, 2) / 2.0;
  MatrixXd minimal(1, 2 * d);
  minimal << MatrixXd::Ones(1, d), -MatrixXd::Ones(1, d);
  return {LinearHypothesis<double>(kron(p2, MatrixXd::Ones(d, d)), VectorXd::Zero(2 * d)),
          LinearHypothesis<double>(minimal, VectorXd::Zero(1))};
}

HypothesisPair build_setting_b(int p, double gamma) {
  if (p < 1) throw InvalidArgument("setting B needs p >= 1");
  const VectorXd h = diag_selector<double>(p);
  return {LinearHypothesis<double>(h * h.transpose(), gamma * h),
          LinearHypothesis<double>(h.transpose(), VectorXd::Constant(1, gamma))};
}

namespace {

using Clock = std::chrono::steady_clock;

struct Timed {
  double seconds;
  double checksum;
};

Timed time_variant(const LinearHypothesis<double>& h, const StatisticInput<double>& in, const BenchConfig& cfg) {
  double checksum = 0;
  if (cfg.precompute) {
    // Kernel construction counts toward the timed total.
    for (int i = 0; i < cfg.warmup; ++i) (void)WtsKernel<double>(h, in.Sigma())(in.T(), in.N());
    const auto start = Clock::now();
    const WtsKernel<double> kernel(h, in.Sigma());
    for (int i = 0; i < cfg.replications; ++i) checksum += kernel(in.T(), in.N()).value;
    const auto stop = Clock::now();
    return {std::chrono::duration<double>(stop - start).count(), checksum};
  }
  for (int i = 0; i < cfg.warmup; ++i) (void)wts(h, in);
  const auto start = Clock::now();
  for (int i = 0; i < cfg.replications; ++i) checksum += wts(h, in).value;
  const auto stop = Clock::now();
  return {std::chrono::duration<double>(stop - start).count(), checksum};
}

}  // namespace

BenchReport run_benchmark(const BenchConfig& cfg) {
  cfg.validate();
  BenchReport report;
  report.seed = cfg.seed;
  report.replications = cfg.replications;
  report.precompute = cfg.precompute;

  for (int dim : cfg.dims) {
    Engine gen = substream(cfg.seed, cfg.setting, dim);
    HypothesisPair pair = [&] {
      if (cfg.setting == Setting::A) return build_setting_a(dim);
      return build_setting_b(dim, cfg.gamma.value_or(static_cast<double>(dim)));
    }();
    const Eigen::Index n = pair.full.dim();
    const VectorXd mean = cfg.setting == Setting::A ? VectorXd::Zero(n) : VectorXd::Ones(n);
    const StatisticInput<double> in(sample_compound_symmetry_normal(n, mean, gen), compound_symmetry(n), 1.0);
    const Eigen::Index table_dim = cfg.setting == Setting::A ? dim : n;

    const Timed full = time_variant(pair.full, in, cfg);
    const Timed minimal = time_variant(pair.minimal, in, cfg);
    const double reps = cfg.replications;
    report.rows.push_back({cfg.setting, table_dim, Variant::full, full.seconds, 1e6 * full.seconds / reps,
                           full.checksum});
    report.rows.push_back({cfg.setting, table_dim, Variant::minimal, minimal.seconds,
                           1e6 * minimal.seconds / reps, minimal.checksum});

    const double diff = std::abs(full.checksum - minimal.checksum);
    if (!(diff <= 1e-6 * std::max(std::abs(full.checksum), std::abs(minimal.checksum)))) {
      report.valid = false;
      std::ostringstream msg;
      msg << std::setprecision(17) << "setting " << to_string(cfg.setting) << " d=" << table_dim
          << ": checksum mismatch (full " << full.checksum << ", minimal " << minimal.checksum << ")";
      report.problems.push_back(msg.str());
    }
  }
  return report;
}

bool full_cost_monotone(const BenchReport& r, Setting setting) {
  std::map<Eigen::Index, double> cost;
  for (const auto& row : r.rows)
    if (row.setting == setting && row.variant == Variant::full) cost[row.dimension] = row.per_eval_microseconds;
  double prev = 0;
  for (const auto& [dim, us] : cost) {
    if (us < prev) return false;
    prev = us;
  }
  return true;
}

namespace {

std::string statistic_label(Setting s, Variant v) {
  if (s == Setting::A) return v == Variant::full ? "WTS(H1A, 0_2d)" : "WTS(H2A, 0)";
  return v == Variant::full ? "WTS(H1B, gamma*h_p)" : "WTS(H2B, gamma)";
}

}  // namespace

std::string emit_report(const BenchReport& r, Format format) {
  if (r.rows.empty()) throw InvalidArgument("cannot emit an empty benchmark report");
  std::ostringstream out;
  if (format == Format::csv) {
    out << std::setprecision(17);
    for (const auto& row : r.rows)
      out << to_string(row.setting) << ',' << row.dimension << ',' << to_string(row.variant) << ','
          << row.total_seconds << ',' << row.per_eval_microseconds << ',' << row.checksum << '\n';
    return out.str();
  }

  out << "generator: " << r.generator << ", seed: " << r.seed << ", replications: " << r.replications
      << ", mode: " << (r.precompute ? "precompute" : "recompute") << "\n";
  for (Setting s : {Setting::A, Setting::B}) {
    std::vector<Eigen::Index> dims;
    std::map<std::pair<Eigen::Index, Variant>, double> seconds;
    for (const auto& row : r.rows) {
      if (row.setting != s) continue;
      if (dims.empty() || dims.back() != row.dimension) dims.push_back(row.dimension);
      seconds[{row.dimension, row.variant}] = row.total_seconds;
    }
    if (dims.empty()) continue;
    out << "\ncalculation time in seconds (setting " << to_string(s) << ")\n\n| d |";
    for (auto d : dims) out << ' ' << d << " |";
    out << "\n|---|";
    for (std::size_t i = 0; i < dims.size(); ++i) out << "---:|";
    out << '\n' << std::fixed << std::setprecision(3);
    for (Variant v : {Variant::full, Variant::minimal}) {
      out << "| " << statistic_label(s, v) << " |";
      for (auto d : dims) out << ' ' << seconds[{d, v}] << " |";
      out << '\n';
    }
    out.unsetf(std::ios::fixed);
  }
  if (!r.valid) {
    out << "\nINVALID RUN:\n";
    for (const auto& p : r.problems) out << "- " << p << '\n';
  }
  return out.str();
}

}  // namespace wald::bench
