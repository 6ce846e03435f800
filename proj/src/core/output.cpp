#include "zndsolve/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <regex>

namespace znd::experiment {

namespace fs = std::filesystem;

std::optional<ComplexGain> parse_gain(std::string_view text) {
  std::string compact;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) compact.push_back(ch);
  }
  static const std::regex pattern(
      R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)(?:([+-])((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?i)?$)");
  std::smatch match;
  if (!std::regex_match(compact, match, pattern)) return std::nullopt;

  ComplexGain gain;
  gain.re = std::stod(match[1].str());
  gain.im = 0.0;
  if (match[2].matched) {
    const double magnitude = match[3].matched ? std::stod(match[3].str()) : 1.0;
    gain.im = match[2].str() == "-" ? -magnitude : magnitude;
  }
  return gain;
}

std::string format_double(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

std::string format_gain(const ComplexGain& gain) {
  std::string out = format_double(gain.re);
  if (gain.im != 0.0) {
    out += gain.im < 0 ? "-" : "+";
    out += format_double(std::abs(gain.im));
    out += "i";
  }
  return out;
}

RunResult run_named(const problem::Problem& problem, const SolverConfig& config) {
  const auto initial = problem::random_initial_state(problem, config.seed);
  return {problem.label(), problem.m(), problem.n(), config,
          solver::run(problem, config, initial)};
}

void write_trajectory_csv(std::ostream& out, const RunResult& run) {
  out << "step,tau,equation_residual,solution_error";
  for (const char* part : {"re", "im"}) {
    for (Eigen::Index t = 1; t <= run.n; ++t) {
      for (Eigen::Index s = 1; s <= run.m; ++s) out << ",x_" << part << '_' << s << '_' << t;
    }
  }
  out << '\n';
  for (const auto& rec : run.trajectory.steps) {
    out << rec.step << ',' << format_double(rec.tau) << ',' << format_double(rec.equation_residual)
        << ',';
    if (rec.solution_error) out << format_double(*rec.solution_error);
    const auto& v = rec.state.values();
    for (Eigen::Index i = 0; i < v.size(); ++i) out << ',' << format_double(v(i));
    out << '\n';
  }
}

void write_summary(std::ostream& out, const RunResult& run) {
  const auto& cfg = run.config;
  const auto& traj = run.trajectory;
  const double modulus = solver::scalar_error_modulus(cfg.gain, cfg.epsilon);
  const double tail_from = cfg.duration / 2;

  out << "problem: " << run.problem << '\n'
      << "model: " << solver::to_string(cfg.model) << '\n'
      << "gamma: " << format_gain(cfg.gain) << '\n'
      << "epsilon: " << format_double(cfg.epsilon) << '\n'
      << "duration: " << format_double(cfg.duration) << '\n'
      << "k: " << cfg.step_count() << '\n'
      << "seed: " << cfg.seed << '\n'
      << "outcome: " << solver::to_string(traj.outcome);
  if (traj.diverged_at) {
    out << " at step " << *traj.diverged_at << " (tau = "
        << format_double(static_cast<double>(*traj.diverged_at) * cfg.epsilon) << ")";
  }
  out << '\n' << "records: " << traj.steps.size() << '\n';

  if (!traj.steps.empty()) {
    const auto& last = traj.steps.back();
    out << "final equation residual: " << format_double(last.equation_residual) << '\n'
        << "final solution error: "
        << (last.solution_error ? format_double(*last.solution_error) : std::string("n/a"))
        << '\n';
  }
  if (traj.outcome == solver::Outcome::Completed) {
    out << "tail-max equation residual (tau in [" << format_double(tail_from) << ", "
        << format_double(cfg.duration)
        << "]): " << format_double(solver::tail_max_equation_residual(traj, tail_from, cfg.duration))
        << '\n'
        << "tail-max solution error: "
        << format_double(solver::tail_max_solution_error(traj, tail_from, cfg.duration)) << '\n';
  }

  const bool predicts_divergence = modulus > 1.0;
  const bool diverged = traj.outcome == solver::Outcome::Diverged;
  out << "scalar error modulus |1 - eps*gamma|: " << format_double(modulus) << '\n'
      << "predicted: " << (predicts_divergence ? "DIVERGED" : "COMPLETED") << '\n'
      << "observed: " << solver::to_string(traj.outcome) << '\n'
      << "prediction matches: " << (predicts_divergence == diverged ? "yes" : "no") << '\n';
}

namespace {

struct Series {
  std::string label;
  std::string color;
  std::vector<std::pair<double, double>> points;  // (tau, log10 value)
};

double safe_log10(double v) {
  return v > 0 ? std::log10(v) : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

void write_residual_svg(std::ostream& out, const RunResult& run) {
  constexpr double width = 800, height = 480;
  constexpr double left = 70, right = 20, top = 40, bottom = 50;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  std::vector<Series> series{{"equation residual", "#c0392b", {}},
                             {"solution error", "#27ae60", {}}};
  const auto& steps = run.trajectory.steps;
  const std::size_t stride = std::max<std::size_t>(1, steps.size() / 2000);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i % stride != 0 && i + 1 != steps.size()) continue;
    const auto& rec = steps[i];
    series[0].points.emplace_back(rec.tau, safe_log10(rec.equation_residual));
    if (rec.solution_error) series[1].points.emplace_back(rec.tau, safe_log10(*rec.solution_error));
  }

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& s : series) {
    for (const auto& [t, y] : s.points) {
      if (std::isfinite(y)) {
        lo = std::min(lo, y);
        hi = std::max(hi, y);
      }
    }
  }
  if (!std::isfinite(lo)) {
    lo = -1;
    hi = 1;
  }
  lo = std::floor(lo);
  hi = std::ceil(hi);
  if (hi <= lo) hi = lo + 1;

  const double t_max = run.config.duration > 0 ? run.config.duration : 1.0;
  const auto px = [&](double t) { return left + plot_w * t / t_max; };
  const auto py = [&](double y) { return top + plot_h * (hi - y) / (hi - lo); };

  out << R"(<svg xmlns="http://www.w3.org/2000/svg" width=")" << width << R"(" height=")"
      << height << R"(" font-family="sans-serif" font-size="12">)" << '\n';
  out << R"(<rect width="100%" height="100%" fill="white"/>)" << '\n';
  out << R"(<text x=")" << width / 2 << R"(" y="22" text-anchor="middle" font-size="14">)"
      << run.problem << ' ' << solver::to_string(run.config.model)
      << " gamma=" << format_gain(run.config.gain) << " eps=" << format_double(run.config.epsilon)
      << " (" << solver::to_string(run.trajectory.outcome) << ")</text>\n";
  out << R"(<rect x=")" << left << R"(" y=")" << top << R"(" width=")" << plot_w
      << R"(" height=")" << plot_h << R"(" fill="none" stroke="black"/>)" << '\n';

  const int decade_step = std::max(1, static_cast<int>((hi - lo) / 10));
  for (int d = static_cast<int>(lo); d <= static_cast<int>(hi); d += decade_step) {
    out << R"(<line x1=")" << left << R"(" x2=")" << left + plot_w << R"(" y1=")" << py(d)
        << R"(" y2=")" << py(d) << R"(" stroke="#ddd"/>)"
        << R"(<text x=")" << left - 6 << R"(" y=")" << py(d) + 4
        << R"(" text-anchor="end">1e)" << d << "</text>\n";
  }
  for (int i = 0; i <= 10; ++i) {
    const double t = t_max * i / 10.0;
    out << R"(<text x=")" << px(t) << R"(" y=")" << top + plot_h + 18
        << R"(" text-anchor="middle">)" << format_double(t) << "</text>\n";
  }
  out << R"(<text x=")" << left + plot_w / 2 << R"(" y=")" << height - 10
      << R"(" text-anchor="middle">tau (s)</text>)" << '\n';
  out << R"(<text transform="translate(16 )" << top + plot_h / 2
      << R"svg() rotate(-90)" text-anchor="middle">residual (log10)</text>)svg" << '\n';

  double legend_y = top + 16;
  for (const auto& s : series) {
    if (s.points.empty()) continue;
    out << R"(<polyline fill="none" stroke=")" << s.color << R"(" stroke-width="1.5" points=")";
    for (const auto& [t, y] : s.points) {
      if (!std::isfinite(y)) continue;
      out << px(t) << ',' << py(y) << ' ';
    }
    out << R"("/>)" << '\n';
    out << R"(<text x=")" << left + plot_w - 8 << R"(" y=")" << legend_y << R"(" fill=")"
        << s.color << R"(" text-anchor="end">)" << s.label << "</text>\n";
    legend_y += 16;
  }
  out << "</svg>\n";
}

namespace {

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::ios_base::failure("cannot open '" + path.string() + "' for writing");
  }
  body(out);
  out.flush();
  if (!out) {
    throw std::ios_base::failure("failed writing '" + path.string() + "'");
  }
}

}  // namespace

void write_run_outputs(const fs::path& dir, const RunResult& run) {
  fs::create_directories(dir);
  write_file(dir / "trajectory.csv", [&](std::ostream& o) { write_trajectory_csv(o, run); });
  write_file(dir / "summary.txt", [&](std::ostream& o) { write_summary(o, run); });
  write_file(dir / "residual.svg", [&](std::ostream& o) { write_residual_svg(o, run); });
}

void write_sweep_outputs(const fs::path& dir, const SweepReport& report) {
  fs::create_directories(dir);
  write_file(dir / "sweep.csv", [&](std::ostream& o) { write_sweep_csv(o, report); });
  write_file(dir / "order_report.txt", [&](std::ostream& o) { write_order_report(o, report); });
}

}  // namespace znd::experiment
