#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("rbridge_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Outcome run(const std::string& args) const {
    const fs::path out = dir_ / "stdout.txt";
    const fs::path err = dir_ / "stderr.txt";
    const std::string cmd = std::string("\"") + RBRIDGE_CLI + "\" " + args + " > \"" +
                            out.string() + "\" 2> \"" + err.string() + "\"";
    const int status = std::system(cmd.c_str());
    Outcome r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  // y = 2 x1 - x3 + noise with five predictors.
  fs::path write_data(int n = 60) const {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> z;
    std::ostringstream csv;
    csv << "x1,x2,x3,x4,x5,y\n";
    csv.precision(17);
    for (int i = 0; i < n; ++i) {
      double x[5];
      for (double& v : x) v = z(rng);
      const double y = 2.0 * x[0] - x[2] + 0.5 * z(rng);
      for (double v : x) csv << v << ",";
      csv << y << "\n";
    }
    const fs::path p = dir_ / "data.csv";
    spit(p, csv.str());
    return p;
  }

  fs::path write(const std::string& name, const std::string& text) const {
    const fs::path p = dir_ / name;
    spit(p, text);
    return p;
  }

  fs::path out(const std::string& name) const { return dir_ / name; }

  fs::path dir_;
};

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_F(Cli, FitWritesJsonAndIsDeterministic) {
  const fs::path data = write_data();
  const std::string args = "--seed 5 --output-dir " + q(out("a")) + " fit --data " + q(data) +
                           " --response y --estimator bridge --lambda 2 --q 1";
  const Outcome first = run(args);
  ASSERT_EQ(first.code, 0) << first.err;
  const std::string bytes = slurp(out("a") / "fit.json");
  const json j = json::parse(bytes);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["seed"], 5);
  EXPECT_EQ(j["converged"], true);
  EXPECT_EQ(j["beta"].size(), 5u);
  ASSERT_EQ(run(args).code, 0);
  EXPECT_EQ(slurp(out("a") / "fit.json"), bytes);
}

TEST_F(Cli, UnpenalizedBridgeMatchesOls) {
  const fs::path data = write_data();
  const std::string common = "--seed 1 fit --data " + q(data) + " --response y";
  ASSERT_EQ(run("--output-dir " + q(out("b")) + " " + common + " --estimator bridge --lambda 0").code, 0);
  ASSERT_EQ(run("--output-dir " + q(out("o")) + " " + common + " --estimator ols").code, 0);
  const json b = json::parse(slurp(out("b") / "fit.json"));
  const json o = json::parse(slurp(out("o") / "fit.json"));
  for (std::size_t j = 0; j < 5; ++j)
    EXPECT_NEAR(b["beta"][j].get<double>(), o["beta"][j].get<double>(), 1e-8);
}

TEST_F(Cli, MalformedRestrictionReportsLine) {
  const fs::path data = write_data();
  const fs::path bad = write("bad.json", "{\n  \"rows\": [[1, 0, 0, 0, 0]],\n  \"values\": [1,,]\n}\n");
  const Outcome r = run("--seed 1 --output-dir " + q(out("x")) + " fit --data " + q(data) +
                    " --response y --estimator rbridge --restriction " + q(bad));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST_F(Cli, InfeasibleAfterPruningExitsThree) {
  const fs::path data = write_data();
  // Pins x2 below the pruning threshold, so its row empties with a nonzero value.
  const fs::path rest = write("tiny.json", R"({"rows": [[0, 1, 0, 0, 0]], "values": [1e-9]})");
  const Outcome r = run("--seed 1 --output-dir " + q(out("x")) + " fit --data " + q(data) +
                    " --response y --estimator rbridge --lambda 1 --q 1 --restriction " + q(rest));
  EXPECT_EQ(r.code, 3) << r.err;
  EXPECT_NE(r.err.find("row 1"), std::string::npos) << r.err;
}

TEST_F(Cli, NonConvergenceExitsTwo) {
  const fs::path data = write_data();
  const fs::path cfg = write("cfg.json", json{{"schema_version", 1},
                                              {"seed", 3},
                                              {"fit",
                                               {{"data", data.string()},
                                                {"response", "y"},
                                                {"estimator", "bridge"},
                                                {"lambda", 5.0},
                                                {"q", 0.5},
                                                {"solver", {{"max_iter", 1}}}}}}
                                             .dump());
  const Outcome r = run("--config " + q(cfg) + " --output-dir " + q(out("x")) + " fit");
  EXPECT_EQ(r.code, 2) << r.err;
  EXPECT_EQ(json::parse(slurp(out("x") / "fit.json"))["converged"], false);
}

TEST_F(Cli, ConfigErrorsAreUsageErrors) {
  const fs::path data = write_data();
  const fs::path typo = write("typo.json", json{{"schema_version", 1},
                                                {"seed", 3},
                                                {"fit", {{"data", data.string()}, {"respnse", "y"}}}}
                                               .dump());
  const Outcome r1 = run("--config " + q(typo) + " fit");
  EXPECT_EQ(r1.code, 1);
  EXPECT_NE(r1.err.find("respnse"), std::string::npos) << r1.err;

  const fs::path version = write("v.json", R"({"schema_version": 2, "seed": 1})");
  EXPECT_EQ(run("--config " + q(version) + " check --check oracle_equivalence").code, 1);

  EXPECT_EQ(run("fit --data " + q(data) + " --response y").code, 1);  // no seed
  EXPECT_EQ(run("--seed 1 simulate --scenario ex7").code, 1);
  EXPECT_EQ(run("--seed 1 frobnicate").code, 1);
  EXPECT_EQ(run("--seed 1 check --check nonsense").code, 1);
  EXPECT_EQ(run("--seed 1 fit --data " + q(dir_ / "missing.csv") + " --response y").code, 1);
}

TEST_F(Cli, CvSurfaceIsCompleteAndDeterministic) {
  const fs::path data = write_data();
  const std::string args =
      "--seed 11 --output-dir " + q(out("cv")) + " cv --data " + q(data) + " --response y --K 5 --n-lambda 6";
  const Outcome r = run(args);
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string surface = slurp(out("cv") / "cve_surface.csv");
  std::istringstream in(surface);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "# rbridge schema_version=1 seed=11");
  std::getline(in, line);
  EXPECT_EQ(line, "q,log_lambda,cve");
  int rows = 0;
  double min_cve = INFINITY;
  while (std::getline(in, line)) {
    ++rows;
    const double cve = std::stod(line.substr(line.rfind(',') + 1));
    min_cve = std::min(min_cve, cve);
  }
  EXPECT_EQ(rows, 6 * 8);
  const json cv = json::parse(slurp(out("cv") / "cv_result.json"));
  EXPECT_EQ(cv["best"]["cve"].get<double>(), min_cve);
  EXPECT_EQ(cv["fold_assignments"].size(), 60u);

  ASSERT_EQ(run(args).code, 0);
  EXPECT_EQ(slurp(out("cv") / "cve_surface.csv"), surface);
}

TEST_F(Cli, SimulateWritesTableRowsIndependentOfThreads) {
  const fs::path cfg = write(
      "sim.json",
      json{{"schema_version", 1},
           {"seed", 8},
           {"simulate",
            {{"scenario", "ex1"},
             {"n", 40},
             {"nreps", 3},
             {"tuning", {{"K", 5}, {"n_lambda", 5}, {"qs", {0.5, 1.0, 2.0}}}}}}}
          .dump());
  const Outcome a = run("--config " + q(cfg) + " --output-dir " + q(out("s1")) + " simulate --threads 1");
  ASSERT_EQ(a.code, 0) << a.err;
  const Outcome b = run("--config " + q(cfg) + " --output-dir " + q(out("s2")) + " simulate --threads 3");
  ASSERT_EQ(b.code, 0) << b.err;
  const std::string summary = slurp(out("s1") / "summary.csv");
  EXPECT_EQ(summary, slurp(out("s2") / "summary.csv"));
  EXPECT_EQ(slurp(out("s1") / "raw_me.csv"), slurp(out("s2") / "raw_me.csv"));
  std::istringstream in(summary);
  std::vector<std::string> labels;
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  while (std::getline(in, line)) labels.push_back(line.substr(0, line.find(',')));
  EXPECT_EQ(labels, (std::vector<std::string>{"LASSO", "RIDGE", "E-NET", "SCAD", "ORACLE",
                                              "BRIDGE", "RBRIDGE1", "RBRIDGE2", "RBRIDGE3",
                                              "RBRIDGE4"}));
}

TEST_F(Cli, AnalyzeNormalizesAndChecksPriorDimension) {
  const fs::path data = write_data(40);
  const fs::path prior = write(
      "p1.json", R"({"label": "fwd", "zero_indices": [2, 4, 5], "p": 5, "beta_prior": [1, 0, -0.5, 0, 0]})");
  const fs::path cfg = write(
      "an.json", json{{"schema_version", 1},
                      {"seed", 4},
                      {"analyze",
                       {{"data", data.string()},
                        {"response", "y"},
                        {"nreps", 4},
                        {"arms", {"LASSO", "RIDGE", "RBRIDGE1"}},
                        {"tuning", {{"K", 5}, {"n_lambda", 5}, {"qs", {1.0, 2.0}}}}}}}
                     .dump());
  const Outcome r = run("--config " + q(cfg) + " --output-dir " + q(out("an")) + " analyze --prior " + q(prior));
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = slurp(out("an") / "split_eval.csv");
  EXPECT_NE(csv.find("label,MSE_y,RMSE_y,MSE_fwd,RMSE_fwd,n_vars"), std::string::npos) << csv;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  int ones = 0;
  while (std::getline(in, line)) {
    std::istringstream cells(line);
    std::string label, mse, rmse;
    std::getline(cells, label, ',');
    std::getline(cells, mse, ',');
    std::getline(cells, rmse, ',');
    EXPECT_GE(std::stod(rmse), 1.0);
    ones += std::stod(rmse) == 1.0;
  }
  EXPECT_GE(ones, 1);

  const fs::path wrong = write("p2.json", R"({"zero_indices": [2], "p": 6})");
  const Outcome bad = run("--config " + q(cfg) + " --output-dir " + q(out("an2")) + " analyze --prior " + q(wrong));
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("p = 6"), std::string::npos) << bad.err;
}

TEST_F(Cli, CheckCommands) {
  const Outcome eq = run("--seed 2 --output-dir " + q(out("c")) + " check --check oracle_equivalence --q 2 --instances 20");
  EXPECT_EQ(eq.code, 0) << eq.err;
  EXPECT_EQ(eq.out.rfind("PASS", 0), 0u) << eq.out;
  const json report = json::parse(slurp(out("c") / "check_report.json"));
  EXPECT_EQ(report["status"], "PASS");
  EXPECT_LE(report["details"]["gap"].get<double>(), 1e-8);

  const Outcome mse = run("--seed 2 --output-dir " + q(out("m")) + " check --check mse_formula");
  EXPECT_EQ(mse.code, 0) << mse.out << mse.err;

  const Outcome cons = run("--seed 2 --output-dir " + q(out("k")) +
                       " check --check consistency --nreps 5 --lambda-exponent 1");
  const json k = json::parse(slurp(out("k") / "check_report.json"));
  EXPECT_EQ(k["details"]["hypothesis_holds"], false);
  EXPECT_NE(k["details"]["annotation"].get<std::string>().find("violated"), std::string::npos);
  EXPECT_TRUE(cons.code == 0 || cons.code == 2);
}
