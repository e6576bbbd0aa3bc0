#include <gtest/gtest.h>

#include <unistd.h>

#include <filesystem>
#include <iomanip>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "wald/bench.hpp"
#include "wald/cli.hpp"
#include "wald/csv.hpp"

namespace wald {
namespace {

namespace fs = std::filesystem;

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("wald_test_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto p = (dir_ / name).string();
    std::ofstream(p) << text;
    return p;
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "wald");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

using CsvTest = TempDir;
using CliTest = TempDir;

TEST_F(CsvTest, IdentityRoundTrip) {
  write_matrix_csv(MatrixXd::Identity(2, 2), path("i.csv"));
  EXPECT_EQ(read_matrix_csv(path("i.csv")), MatrixXd::Identity(2, 2));
}

TEST_F(CsvTest, RandomRoundTripIsExact) {
  testing::Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    MatrixXd a = testing::gaussian(rng, testing::uniform_int(rng, 1, 6), testing::uniform_int(rng, 1, 6));
    a *= std::pow(10.0, testing::uniform_int(rng, -30, 30));
    write_matrix_csv(a, path("r.csv"));
    EXPECT_EQ(read_matrix_csv(path("r.csv")), a);
  }
}

TEST_F(CsvTest, ScientificNotationAndWhitespace) {
  const auto p = write("s.csv", "1e-3, -2.5E2\n+3 ,4\n\n");
  const MatrixXd a = read_matrix_csv(p);
  EXPECT_EQ(a(0, 0), 1e-3);
  EXPECT_EQ(a(0, 1), -250.0);
  EXPECT_EQ(a(1, 0), 3.0);
  EXPECT_EQ(a(1, 1), 4.0);
}

TEST_F(CsvTest, RaggedRowNamesLine) {
  const auto p = write("bad.csv", "1,2\n3,4\n5\n");
  try {
    read_matrix_csv(p);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos) << e.what();
  }
}

TEST_F(CsvTest, RejectsGarbage) {
  EXPECT_THROW(read_matrix_csv(write("a.csv", "1,x\n")), ParseError);
  EXPECT_THROW(read_matrix_csv(write("b.csv", "1,,2\n")), ParseError);
  EXPECT_THROW(read_matrix_csv(write("c.csv", "nan,1\n")), ParseError);
  EXPECT_THROW(read_matrix_csv(write("d.csv", "\n\n")), ParseError);
  EXPECT_THROW(read_matrix_csv(path("missing.csv")), InvalidArgument);
  EXPECT_THROW(read_vector_csv(write("e.csv", "1,2\n")), ParseError);
}

TEST_F(CliTest, EquivCovariancePair) {
  const auto r = cli({"equiv", "--h1", write("h1.csv", "1,0,0\n0,1,0\n0,0,1\n"), "--y1", write("y1.csv", "1\n0\n1\n"),
                      "--h2", write("h2.csv", "1,0,0\n0,1,0\n1,0,-1\n"), "--y2", write("y2.csv", "1\n0\n0\n")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "equivalent\n");
}

TEST_F(CliTest, ProjectAnova) {
  const auto h = write("h.csv", "1,-1,0\n0,1,-1\n1,0,-1\n");
  const auto r = cli({"project", "--hypothesis", h, "--rhs", write("z.csv", "0\n0\n0\n")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  const MatrixXd p = parse_matrix_csv(in);
  EXPECT_LE((p - testing::centering3()).norm(), 1e-12);
  EXPECT_EQ(p, projection(read_matrix_csv(h)));
}

TEST_F(CliTest, StatMatchesLibrary) {
  const auto h = write("h.csv", "1,-1,0\n0,1,-1\n");
  const auto y = write("y.csv", "0\n0\n");
  const auto t = write("t.csv", "0.3\n-1.2\n2\n");
  const auto s = write("s.csv", "2,0.5,0\n0.5,1,0.1\n0,0.1,3\n");
  const LinearHypothesis<double> hyp(read_matrix_csv(h), read_vector_csv(y));
  const StatisticInput<double> in(read_vector_csv(t), read_matrix_csv(s), 12);
  const std::vector<std::pair<std::string, double>> cases{{"wts", wts(hyp, in).value},
                                                          {"mats", mats(hyp, in).value},
                                                          {"ats", ats(hyp, in.T(), 12.0).value},
                                                          {"ats-s", ats_standardized(hyp, in).value}};
  for (const auto& [kind, want] : cases) {
    const auto r = cli({"stat", "--kind", kind, "--hypothesis", h, "--rhs", y, "--t", t, "--sigma", s, "--n", "12"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::ostringstream expect;
    expect << std::setprecision(12) << want << '\n';
    EXPECT_EQ(r.out, expect.str());
  }
}

TEST_F(CliTest, StatDimensionMismatchIsUserError) {
  const auto r = cli({"stat", "--kind", "wts", "--hypothesis", write("h.csv", "1,-1,0\n"), "--rhs",
                      write("y.csv", "0\n"), "--t", write("t.csv", "1\n2\n"), "--sigma",
                      write("s.csv", "1,0\n0,1\n"), "--n", "3"});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.err.empty());
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(cli({}).code, 1);
  EXPECT_EQ(cli({"stat", "--kind", "nope"}).code, 1);
  EXPECT_EQ(cli({"canon", "--hypothesis", path("missing.csv"), "--rhs", path("missing.csv")}).code, 1);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST_F(CliTest, CanonAndReduceMatchLibrary) {
  const auto h = write("h.csv", "0.5,0,-0.5\n0,1,0\n-0.5,0,0.5\n");
  const auto y = write("y.csv", "0\n0\n0\n");
  const LinearHypothesis<double> hyp(read_matrix_csv(h), read_vector_csv(y));

  auto r = cli({"canon", "--hypothesis", h, "--rhs", y});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream c(r.out);
  EXPECT_EQ(parse_matrix_csv(c), canonical_form(hyp).augmented());

  r = cli({"reduce", "--hypothesis", h, "--rhs", y, "--out-hypothesis", path("rh.csv"), "--out-rhs", path("ry.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto red = reduce_for_ats(hyp);
  EXPECT_EQ(read_matrix_csv(path("rh.csv")), red.H());
  EXPECT_EQ(read_vector_csv(path("ry.csv")), red.y());
}

TEST_F(CliTest, CanonInconsistentIsUserError) {
  const auto r = cli({"canon", "--hypothesis", write("h.csv", "1,1\n1,1\n"), "--rhs", write("y.csv", "0\n1\n")});
  EXPECT_EQ(r.code, 1);
}

TEST_F(CliTest, InputsNotModified) {
  const std::string text = "1,-1,0\n0,1,-1\n1,0,-1\n";
  const auto h = write("h.csv", text);
  const auto y = write("y.csv", "0\n0\n0\n");
  cli({"project", "--hypothesis", h, "--rhs", y});
  cli({"canon", "--hypothesis", h, "--rhs", y});
  cli({"reduce", "--hypothesis", h, "--rhs", y});
  std::ifstream in(h);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), text);
}

TEST_F(CliTest, BenchCsvDeterministic) {
  const std::vector<std::string> args{"bench", "--setting", "A", "--dims", "2,4", "--reps", "30", "--seed", "7",
                                      "--format", "csv"};
  const auto a = cli(args), b = cli(args);
  ASSERT_EQ(a.code, 0) << a.err;
  auto checksums = [](const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) out.push_back(line.substr(line.rfind(',') + 1));
    return out;
  };
  EXPECT_EQ(checksums(a.out).size(), 4u);
  EXPECT_EQ(checksums(a.out), checksums(b.out));
  EXPECT_NE(a.err.find("seed: 7"), std::string::npos);
}

TEST_F(CliTest, BenchWritesFile) {
  const auto r = cli({"bench", "--setting", "B", "--dims", "2", "--reps", "5", "--out", path("report.md")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path("report.md"));
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_NE(buf.str().find("| d | 3 |"), std::string::npos) << buf.str();
}

}  // namespace
}  // namespace wald
