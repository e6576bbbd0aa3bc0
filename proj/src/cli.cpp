#include "wald/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "wald/bench.hpp"
#include "wald/csv.hpp"
#include "wald/statistics.hpp"

namespace wald::cli {
namespace {

struct HypothesisFiles {
  std::string h, y;
};

void add_hypothesis_options(CLI::App* cmd, HypothesisFiles& f) {
  cmd->add_option("--hypothesis", f.h, "hypothesis matrix H (CSV)")->required();
  cmd->add_option("--rhs", f.y, "right-hand side y (single-column CSV)")->required();
}

LinearHypothesis<double> load(const std::string& h, const std::string& y) {
  return {read_matrix_csv(h), read_vector_csv(y)};
}

void emit_hypothesis(const LinearHypothesis<double>& h, const std::string& out_h, const std::string& out_y,
                     std::ostream& out) {
  if (out_h.empty() && out_y.empty()) {
    write_matrix_csv(out, h.augmented());
    return;
  }
  if (!out_h.empty()) write_matrix_csv(h.H(), out_h);
  if (!out_y.empty()) write_matrix_csv(MatrixXd(h.y()), out_y);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quadratic-form test statistics for linear hypotheses H theta = y", "wald"};
  app.require_subcommand(1);

  // stat
  HypothesisFiles stat_h;
  std::string kind_name, t_path, sigma_path;
  double n = 1.0;
  auto* stat = app.add_subcommand("stat", "evaluate WTS, MATS, ATS or standardized ATS");
  stat->add_option("--kind", kind_name, "wts|mats|ats|ats-s")
      ->required()
      ->check(CLI::IsMember({"wts", "mats", "ats", "ats-s"}));
  add_hypothesis_options(stat, stat_h);
  stat->add_option("--t", t_path, "statistic vector T (single-column CSV)")->required();
  stat->add_option("--sigma", sigma_path, "covariance of T (CSV); not needed for ats");
  stat->add_option("--n", n, "total sample size")->required();

  // canon / reduce
  HypothesisFiles canon_h, reduce_h;
  std::string canon_out_h, canon_out_y, reduce_out_h, reduce_out_y;
  auto* canon = app.add_subcommand("canon", "reduced row echelon form of [H|y] without zero rows");
  add_hypothesis_options(canon, canon_h);
  canon->add_option("--out-hypothesis", canon_out_h, "write H to this file");
  canon->add_option("--out-rhs", canon_out_y, "write y to this file");
  auto* reduce = app.add_subcommand("reduce", "drop zero rows and collapse dependent rows (ATS preserving)");
  add_hypothesis_options(reduce, reduce_h);
  reduce->add_option("--out-hypothesis", reduce_out_h, "write H to this file");
  reduce->add_option("--out-rhs", reduce_out_y, "write y to this file");

  // equiv
  std::string h1, y1, h2, y2;
  auto* equiv = app.add_subcommand("equiv", "check whether two systems have the same solution set");
  equiv->add_option("--h1", h1)->required();
  equiv->add_option("--y1", y1)->required();
  equiv->add_option("--h2", h2)->required();
  equiv->add_option("--y2", y2)->required();

  // project
  HypothesisFiles project_h;
  std::string project_out_y;
  auto* project = app.add_subcommand("project", "projection matrix H^T (H H^T)^+ H");
  add_hypothesis_options(project, project_h);
  project->add_option("--out-rhs", project_out_y, "write H^T (H H^T)^+ y to this file");

  // bench
  std::string setting_name = "A", format_name = "markdown", out_path;
  std::vector<int> dims;
  bench::BenchConfig cfg;
  double gamma = 0;
  auto* bench_cmd = app.add_subcommand("bench", "time repeated WTS evaluation for full and minimal matrices");
  bench_cmd->add_option("--setting", setting_name, "A|B")->check(CLI::IsMember({"A", "B"}));
  bench_cmd->add_option("--dims", dims, "comma-separated d (setting A) or p (setting B)")
      ->delimiter(',')
      ->required();
  bench_cmd->add_option("--reps", cfg.replications, "evaluations per configuration")->capture_default_str();
  bench_cmd->add_option("--seed", cfg.seed, "PRNG seed")->capture_default_str();
  bench_cmd->add_option("--format", format_name, "markdown|csv")->check(CLI::IsMember({"markdown", "csv"}));
  auto* gamma_opt = bench_cmd->add_option("--gamma", gamma, "trace target for setting B (default p)");
  bench_cmd->add_flag("--precompute", cfg.precompute, "factor the kernel once per configuration");
  bench_cmd->add_option("--out", out_path, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "wald: " << e.what() << '\n';
    return kUserError;
  }

  try {
    if (stat->parsed()) {
      const auto h = load(stat_h.h, stat_h.y);
      const VectorXd t = read_vector_csv(t_path);
      StatisticKind kind = StatisticKind::wts;
      if (kind_name == "mats") kind = StatisticKind::mats;
      if (kind_name == "ats") kind = StatisticKind::ats;
      if (kind_name == "ats-s") kind = StatisticKind::ats_s;
      double value = 0;
      if (kind == StatisticKind::ats) {
        value = ats(h, t, n).value;
      } else {
        if (sigma_path.empty()) throw InvalidArgument("--sigma is required for --kind " + kind_name);
        value = evaluate(kind, h, StatisticInput<double>(t, read_matrix_csv(sigma_path), n)).value;
      }
      out << std::setprecision(12) << value << '\n';
    } else if (canon->parsed()) {
      emit_hypothesis(canonical_form(load(canon_h.h, canon_h.y)), canon_out_h, canon_out_y, out);
    } else if (reduce->parsed()) {
      emit_hypothesis(reduce_for_ats(load(reduce_h.h, reduce_h.y)), reduce_out_h, reduce_out_y, out);
    } else if (equiv->parsed()) {
      out << to_string(equivalent(load(h1, y1), load(h2, y2))) << '\n';
    } else if (project->parsed()) {
      const auto form = projection_form(load(project_h.h, project_h.y));
      write_matrix_csv(out, form.P);
      if (!project_out_y.empty()) write_matrix_csv(MatrixXd(form.y), project_out_y);
      err << "projection form equivalent: " << (form.equivalent ? "yes" : "no") << '\n';
    } else if (bench_cmd->parsed()) {
      cfg.setting = setting_name == "A" ? bench::Setting::A : bench::Setting::B;
      cfg.dims = dims;
      if (gamma_opt->count()) cfg.gamma = gamma;
      const auto report = bench::run_benchmark(cfg);
      const auto format = format_name == "csv" ? bench::Format::csv : bench::Format::markdown;
      const std::string text = bench::emit_report(report, format);
      if (format == bench::Format::csv)
        err << "# generator: " << report.generator << ", seed: " << report.seed << '\n';
      if (out_path.empty()) {
        out << text;
      } else {
        std::ofstream f(out_path);
        if (!(f << text)) throw InvalidArgument("cannot write " + out_path);
      }
      if (!report.valid) {
        for (const auto& p : report.problems) err << "wald: " << p << '\n';
        return kNumericFailure;
      }
    }
  } catch (const NumericError& e) {
    err << "wald: numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const Error& e) {
    err << "wald: " << e.what() << '\n';
    return kUserError;
  } catch (const std::exception& e) {
    err << "wald: internal error: " << e.what() << '\n';
    return kNumericFailure;
  }
  return kOk;
}

}  // namespace wald::cli
