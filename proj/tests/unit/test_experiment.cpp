#include "zndsolve/experiment.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace znd::experiment;
using znd::solver::Outcome;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

SolverConfig cfg(Model model, ComplexGain gain, double eps, double duration) {
  SolverConfig c;
  c.model = model;
  c.gain = gain;
  c.epsilon = eps;
  c.duration = duration;
  return c;
}

}  // namespace

TEST(Gain, Parses) {
  const auto expect = [](const char* text, double re, double im) {
    const auto g = parse_gain(text);
    ASSERT_TRUE(g) << text;
    EXPECT_EQ(g->re, re) << text;
    EXPECT_EQ(g->im, im) << text;
  };
  expect("10", 10, 0);
  expect("10+20i", 10, 20);
  expect("10-20i", 10, -20);
  expect(" 10 - 20 i ", 10, -20);
  expect("2.5e1+1e-1i", 25, 0.1);
  expect("3+i", 3, 1);
  expect("3-i", 3, -1);
  expect(".5", 0.5, 0);
}

TEST(Gain, RejectsGarbage) {
  for (const char* text : {"", "i", "abc", "10+", "10+20", "10+20j", "1e", "10++2i"}) {
    EXPECT_FALSE(parse_gain(text)) << text;
  }
}

TEST(Gain, FormatRoundTrips) {
  EXPECT_EQ(format_gain({10, 0}), "10");
  EXPECT_EQ(format_gain({10, 20}), "10+20i");
  EXPECT_EQ(format_gain({10, -20}), "10-20i");
  for (const ComplexGain g : {ComplexGain{0.1, -0.3}, ComplexGain{1e-7, 3.25}}) {
    EXPECT_EQ(parse_gain(format_gain(g)), g);
  }
}

TEST(FormatDouble, RoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456.789, -2.5e-17}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(0.001), "0.001");
}

TEST(TrajectoryCsv, SchemaAndRowCount) {
  const auto p = znd::problem::example2();
  const auto run = run_named(p, cfg(Model::Dznd1_2i, {10, 0}, 0.01, 1.0));
  std::ostringstream out;
  write_trajectory_csv(out, run);
  const auto rows = lines(out.str());
  ASSERT_EQ(rows.size(), 1u + 101u);
  EXPECT_EQ(rows[0],
            "step,tau,equation_residual,solution_error,x_re_1_1,x_re_2_1,x_re_1_2,x_re_2_2,"
            "x_im_1_1,x_im_2_1,x_im_1_2,x_im_2_2");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto cells = split(rows[i]);
    ASSERT_EQ(cells.size(), 12u);
    EXPECT_EQ(std::stoll(cells[0]), static_cast<long long>(i - 1));
    const auto& rec = run.trajectory.steps[i - 1];
    EXPECT_EQ(std::stod(cells[2]), rec.equation_residual);
    for (int j = 0; j < 8; ++j) EXPECT_EQ(std::stod(cells[4 + j]), rec.state.values()(j));
  }
}

TEST(TrajectoryCsv, Example1HasSixByTwoColumns) {
  const auto run = run_named(znd::problem::example1(), cfg(Model::Dznd2_2i, {10, 0}, 0.5, 1.0));
  std::ostringstream out;
  write_trajectory_csv(out, run);
  const auto header = split(lines(out.str())[0]);
  ASSERT_EQ(header.size(), 4u + 12u);
  EXPECT_EQ(header[4], "x_re_1_1");
  EXPECT_EQ(header[6], "x_re_3_1");
  EXPECT_EQ(header[7], "x_re_1_2");
  EXPECT_EQ(header[15], "x_im_3_2");
}

TEST(TrajectoryCsv, EmptySolutionCellWithoutTheoreticalSolution) {
  std::mt19937_64 rng(2);
  const auto p = znd::testing::random_problem(rng, 1, 1);
  const auto run = run_named(p, cfg(Model::Dznd1_2i, {10, 0}, 0.1, 0.2));
  std::ostringstream out;
  write_trajectory_csv(out, run);
  const auto cells = split(lines(out.str())[1]);
  ASSERT_EQ(cells.size(), 6u);
  EXPECT_EQ(cells[3], "");
}

TEST(Summary, StatesRequiredFields) {
  const auto p = znd::problem::example2();
  const auto run = run_named(p, cfg(Model::Dznd1_2i, {10, 20}, 0.1, 10.0));
  ASSERT_EQ(run.trajectory.outcome, Outcome::Diverged);
  std::ostringstream out;
  write_summary(out, run);
  const auto text = out.str();
  for (const char* needle :
       {"problem: example2", "model: dznd1-2i", "gamma: 10+20i", "epsilon: 0.1", "k: 100",
        "seed: 42", "outcome: DIVERGED at step", "final equation residual: ",
        "scalar error modulus |1 - eps*gamma|: 2", "predicted: DIVERGED", "observed: DIVERGED",
        "prediction matches: yes"}) {
    EXPECT_NE(text.find(needle), std::string::npos) << needle;
  }
}

TEST(Summary, CompletedRunShowsTail) {
  const auto run = run_named(znd::problem::example1(), cfg(Model::Dznd1_2i, {10, 0}, 0.1, 10.0));
  std::ostringstream out;
  write_summary(out, run);
  const auto text = out.str();
  EXPECT_NE(text.find("outcome: COMPLETED"), std::string::npos);
  EXPECT_NE(text.find("tail-max equation residual (tau in [5, 10]): "), std::string::npos);
  EXPECT_NE(text.find("records: 101"), std::string::npos);
}

TEST(Svg, WellFormedChart) {
  const auto run = run_named(znd::problem::example2(), cfg(Model::Dznd1_2i, {10, 0}, 0.001, 10.0));
  std::ostringstream out;
  write_residual_svg(out, run);
  const auto text = out.str();
  EXPECT_EQ(text.rfind("<svg", 0), 0u);
  EXPECT_NE(text.find("</svg>"), std::string::npos);
  EXPECT_NE(text.find("<polyline"), std::string::npos);
  EXPECT_EQ(text.find("nan"), std::string::npos);
  EXPECT_EQ(text.find("inf"), std::string::npos);
  EXPECT_LT(text.size(), 400000u);
}

TEST(RunOutputs, WritesThreeFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "zndsolve_test_run_outputs";
  std::filesystem::remove_all(dir);
  write_run_outputs(dir / "nested", run_named(znd::problem::example1(),
                                              cfg(Model::Dznd1_2i, {10, 0}, 0.5, 1.0)));
  for (const char* f : {"trajectory.csv", "summary.txt", "residual.svg"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / "nested" / f)) << f;
  }
  std::filesystem::remove_all(dir);
}

TEST(RunOutputs, UnwritableDirectoryThrows) {
  const auto file = std::filesystem::temp_directory_path() / "zndsolve_test_plain_file";
  std::ofstream(file) << "x";
  EXPECT_ANY_THROW(write_run_outputs(file / "sub", run_named(znd::problem::example1(),
                                                             cfg(Model::Dznd1_2i, {10, 0}, 0.5, 1.0))));
  std::filesystem::remove(file);
}

TEST(Sweep, SortedRowsAndDivergedComplexGain) {
  const auto p = znd::problem::example2();
  std::vector<SweepPoint> grid;
  for (double eps : {0.01, 0.1}) {
    grid.push_back({Model::Dznd1_2i, {10, 20}, eps});
    grid.push_back({Model::Dznd1_2i, {10, -20}, eps});
    grid.push_back({Model::Dznd1_2i, {10, 0}, eps});
  }
  SweepOptions opt;
  opt.workers = 3;
  const auto report = run_sweep(p, grid, opt);
  ASSERT_EQ(report.rows.size(), 6u);
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    const auto& a = report.rows[i - 1];
    const auto& b = report.rows[i];
    EXPECT_TRUE(std::tie(a.gain.re, a.gain.im, a.epsilon) <= std::tie(b.gain.re, b.gain.im, b.epsilon));
  }
  for (const auto& r : report.rows) {
    if (r.gain.im != 0 && r.epsilon == 0.1) {
      EXPECT_EQ(r.outcome, "DIVERGED");
    } else {
      EXPECT_EQ(r.outcome, "COMPLETED");
    }
  }
  for (const auto& fit : report.fits) EXPECT_FALSE(fit.slope.has_value());
}

TEST(Sweep, ErrorRowDoesNotAbort) {
  const auto p = znd::problem::example2();
  const std::vector<SweepPoint> grid{{Model::Dznd2_2i, {10, 20}, 0.1},
                                     {Model::Dznd1_2i, {10, 0}, 0.3},
                                     {Model::Dznd1_2i, {10, 0}, 0.1}};
  const auto report = run_sweep(p, grid, {});
  ASSERT_EQ(report.rows.size(), 3u);
  int errors = 0;
  for (const auto& r : report.rows) {
    if (r.outcome == "ERROR") {
      ++errors;
      EXPECT_FALSE(r.message.empty());
    }
  }
  EXPECT_EQ(errors, 2);
}

TEST(Sweep, SinglePointHasNoSlope) {
  const auto report = run_sweep(znd::problem::example2(), {{Model::Dznd1_2i, {10, 0}, 0.1}}, {});
  ASSERT_EQ(report.rows.size(), 1u);
  ASSERT_EQ(report.fits.size(), 1u);
  EXPECT_FALSE(report.fits[0].slope);
  std::ostringstream out;
  write_order_report(out, report);
  EXPECT_NE(out.str().find("slope=n/a"), std::string::npos);
}

TEST(Sweep, SlopeMatchesIndependentFit) {
  const auto p = znd::problem::example2();
  std::vector<SweepPoint> grid;
  for (double eps : {0.1, 0.05, 0.02}) {
    grid.push_back({Model::Dznd1_2i, {10, 0}, eps});
    grid.push_back({Model::Dznd2_2i, {10, 0}, eps});
  }
  SweepOptions opt;
  opt.duration = 2.0;
  const auto report = run_sweep(p, grid, opt);
  ASSERT_EQ(report.fits.size(), 2u);
  for (const auto& fit : report.fits) {
    ASSERT_TRUE(fit.slope);
    std::vector<double> x, y;
    for (const auto& r : report.rows) {
      if (r.model == fit.model) {
        x.push_back(r.epsilon);
        y.push_back(r.tail_max_equation_residual);
      }
    }
    EXPECT_NEAR(*fit.slope, znd::testing::fitted_log_slope(x, y), 1e-10);
  }
}

TEST(Sweep, ResultsIndependentOfWorkerCount) {
  const auto p = znd::problem::example1();
  std::vector<SweepPoint> grid;
  for (double eps : {0.5, 0.25, 0.1, 0.05}) grid.push_back({Model::Dznd1_2i, {10, 0}, eps});
  SweepOptions one, many;
  one.workers = 1;
  many.workers = 4;
  std::ostringstream a, b;
  write_sweep_csv(a, run_sweep(p, grid, one));
  write_sweep_csv(b, run_sweep(p, grid, many));
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(lines(a.str())[0],
            "model,gamma,epsilon,outcome,tail_max_equation_residual,tail_max_solution_error,steps");
}

TEST(LogLogSlope, KnownPowerLaws) {
  EXPECT_NEAR(log_log_slope({1, 10, 100}, {3, 300, 30000}), 2.0, 1e-12);
  EXPECT_NEAR(log_log_slope({0.1, 0.01, 0.001}, {1e-1, 1e-2, 1e-3}), 1.0, 1e-12);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(0.1, 10);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> x, y;
    for (int i = 0; i < 5; ++i) {
      x.push_back(d(rng));
      y.push_back(d(rng));
    }
    EXPECT_NEAR(log_log_slope(x, y), znd::testing::fitted_log_slope(x, y), 1e-10);
  }
}

TEST(Verification, AllGroupsPass) {
  std::vector<std::string> out;
  EXPECT_TRUE(run_verification([&](const std::string& line) { out.push_back(line); }));
  EXPECT_GE(out.size(), 7u);
  for (const auto& line : out) EXPECT_EQ(line.rfind("PASS", 0), 0u) << line;
}
