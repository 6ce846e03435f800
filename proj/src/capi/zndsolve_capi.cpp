#include "zndsolve/zndsolve.h"

#include "zndsolve/errors.hpp"
#include "zndsolve/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <limits>
#include <string>

struct zs_problem {
  znd::problem::Problem problem;
};

struct zs_trajectory {
  znd::experiment::RunResult run;
};

struct zs_sweep {
  znd::experiment::SweepReport report;
};

namespace {

using namespace znd;

thread_local std::string g_last_error;

zs_status fail(zs_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Maps the core's exception hierarchy onto status codes.
template <typename Fn>
zs_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const ShapeError& e) {
    return fail(ZS_ERR_SHAPE, e.what());
  } catch (const ValidationError& e) {
    return fail(ZS_ERR_VALIDATION, e.what());
  } catch (const CapabilityError& e) {
    return fail(ZS_ERR_CAPABILITY, e.what());
  } catch (const NumericError& e) {
    return fail(ZS_ERR_NUMERIC, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(ZS_ERR_IO, e.what());
  } catch (const std::ios_base::failure& e) {
    return fail(ZS_ERR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(ZS_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(ZS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ZS_ERR_INTERNAL, "unknown exception");
  }
}

solver::Model to_model(zs_model model) {
  switch (model) {
    case ZS_MODEL_DZND1_2I: return solver::Model::Dznd1_2i;
    case ZS_MODEL_DZND2_2I: return solver::Model::Dznd2_2i;
  }
  throw std::invalid_argument("unknown model enumerator " + std::to_string(static_cast<int>(model)));
}

zs_model from_model(solver::Model model) {
  return model == solver::Model::Dznd1_2i ? ZS_MODEL_DZND1_2I : ZS_MODEL_DZND2_2I;
}

solver::SolverConfig to_config(const zs_config& c) {
  solver::SolverConfig out;
  out.model = to_model(c.model);
  out.gain = {c.gamma_re, c.gamma_im};
  out.epsilon = c.epsilon;
  out.duration = c.duration;
  out.seed = c.seed;
  if (c.pinv_tolerance >= 0) out.pinv_tolerance = c.pinv_tolerance;
  out.divergence_threshold = c.divergence_threshold;
  return out;
}

linalg::SplitComplexMatrix read_matrix(const zs_problem* p, const double* re, const double* im) {
  const auto m = p->problem.m();
  const auto n = p->problem.n();
  return {Eigen::Map<const linalg::RealMatrix>(re, m, n),
          Eigen::Map<const linalg::RealMatrix>(im, m, n)};
}

void write_matrix(const linalg::SplitComplexMatrix& x, double* re, double* im) {
  Eigen::Map<linalg::RealMatrix>(re, x.rows(), x.cols()) = x.re();
  Eigen::Map<linalg::RealMatrix>(im, x.rows(), x.cols()) = x.im();
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

extern "C" {

const char* zs_version(void) { return "1.0.0"; }

const char* zs_last_error(void) { return g_last_error.c_str(); }

const char* zs_status_name(zs_status status) {
  switch (status) {
    case ZS_OK: return "ok";
    case ZS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case ZS_ERR_UNKNOWN_NAME: return "unknown name";
    case ZS_ERR_SHAPE: return "shape error";
    case ZS_ERR_CAPABILITY: return "capability error";
    case ZS_ERR_VALIDATION: return "validation error";
    case ZS_ERR_NUMERIC: return "numeric error";
    case ZS_ERR_IO: return "I/O error";
    case ZS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* zs_problem_names(void) {
  static const std::string names = [] {
    std::string joined;
    for (const auto& n : problem::problem_names()) joined += (joined.empty() ? "" : " ") + n;
    return joined;
  }();
  return names.c_str();
}

zs_status zs_problem_open(const char* name, zs_problem** out) {
  return guarded([&] {
    if (out) *out = nullptr;
    if (!name || !out) return fail(ZS_ERR_INVALID_ARGUMENT, "zs_problem_open: null argument");
    auto found = problem::find_problem(name);
    if (!found) {
      return fail(ZS_ERR_UNKNOWN_NAME, std::string("unknown problem '") + name +
                                           "' (known: " + zs_problem_names() + ")");
    }
    *out = new zs_problem{std::move(*found)};
    return ZS_OK;
  });
}

void zs_problem_close(zs_problem* problem) { delete problem; }

zs_status zs_problem_dims(const zs_problem* problem, size_t* m, size_t* n) {
  if (!problem || !m || !n) return fail(ZS_ERR_INVALID_ARGUMENT, "zs_problem_dims: null argument");
  *m = static_cast<size_t>(problem->problem.m());
  *n = static_cast<size_t>(problem->problem.n());
  return ZS_OK;
}

zs_status zs_problem_equation_residual(const zs_problem* problem, const double* x_re,
                                       const double* x_im, double tau, double* out) {
  return guarded([&] {
    if (!problem || !x_re || !x_im || !out) {
      return fail(ZS_ERR_INVALID_ARGUMENT, "zs_problem_equation_residual: null argument");
    }
    *out = problem::equation_residual(problem->problem, read_matrix(problem, x_re, x_im), tau);
    return ZS_OK;
  });
}

zs_status zs_problem_solution_error(const zs_problem* problem, const double* x_re,
                                    const double* x_im, double tau, double* out) {
  return guarded([&] {
    if (!problem || !x_re || !x_im || !out) {
      return fail(ZS_ERR_INVALID_ARGUMENT, "zs_problem_solution_error: null argument");
    }
    *out = problem::solution_error(problem->problem, read_matrix(problem, x_re, x_im), tau);
    return ZS_OK;
  });
}

zs_status zs_problem_solution(const zs_problem* problem, double tau, double* x_re, double* x_im) {
  return guarded([&] {
    if (!problem || !x_re || !x_im) {
      return fail(ZS_ERR_INVALID_ARGUMENT, "zs_problem_solution: null argument");
    }
    write_matrix(problem->problem.solution(tau), x_re, x_im);
    return ZS_OK;
  });
}

zs_status zs_problem_initial_state(const zs_problem* problem, uint64_t seed, double* x_re,
                                   double* x_im) {
  return guarded([&] {
    if (!problem || !x_re || !x_im) {
      return fail(ZS_ERR_INVALID_ARGUMENT, "zs_problem_initial_state: null argument");
    }
    write_matrix(problem::random_initial_state(problem->problem, seed).x0, x_re, x_im);
    return ZS_OK;
  });
}

void zs_config_default(zs_config* config) {
  if (!config) return;
  const solver::SolverConfig d;
  config->model = from_model(d.model);
  config->gamma_re = d.gain.re;
  config->gamma_im = d.gain.im;
  config->epsilon = d.epsilon;
  config->duration = d.duration;
  config->seed = d.seed;
  config->pinv_tolerance = -1.0;
  config->divergence_threshold = d.divergence_threshold;
}

zs_status zs_config_validate(const zs_config* config) {
  return guarded([&] {
    if (!config) return fail(ZS_ERR_INVALID_ARGUMENT, "zs_config_validate: null config");
    solver::validate(to_config(*config));
    return ZS_OK;
  });
}

zs_status zs_parse_gain(const char* text, double* re, double* im) {
  if (!text || !re || !im) return fail(ZS_ERR_INVALID_ARGUMENT, "zs_parse_gain: null argument");
  const auto gain = experiment::parse_gain(text);
  if (!gain) {
    return fail(ZS_ERR_INVALID_ARGUMENT,
                std::string("cannot parse gain '") + text + "' (expected a, a+bi or a-bi)");
  }
  *re = gain->re;
  *im = gain->im;
  return ZS_OK;
}

zs_status zs_parse_model(const char* text, zs_model* out) {
  if (!text || !out) return fail(ZS_ERR_INVALID_ARGUMENT, "zs_parse_model: null argument");
  const auto model = solver::parse_model(text);
  if (!model) {
    return fail(ZS_ERR_UNKNOWN_NAME,
                std::string("unknown model '") + text + "' (expected dznd1-2i or dznd2-2i)");
  }
  *out = from_model(*model);
  return ZS_OK;
}

const char* zs_model_name(zs_model model) {
  switch (model) {
    case ZS_MODEL_DZND1_2I: return "dznd1-2i";
    case ZS_MODEL_DZND2_2I: return "dznd2-2i";
  }
  return "unknown";
}

double zs_scalar_error_modulus(double gamma_re, double gamma_im, double epsilon) {
  return solver::scalar_error_modulus({gamma_re, gamma_im}, epsilon);
}

zs_status zs_zero_stability_roots(double* roots_re, double* roots_im, size_t capacity,
                                  size_t* count) {
  return guarded([&] {
    if (!count) return fail(ZS_ERR_INVALID_ARGUMENT, "zs_zero_stability_roots: null count");
    const auto roots = assembly::zero_stability_roots();
    *count = roots.size();
    if (capacity < roots.size() || !roots_re || !roots_im) {
      return fail(ZS_ERR_INVALID_ARGUMENT, "zs_zero_stability_roots: buffer holds " +
                                               std::to_string(capacity) + ", need " +
                                               std::to_string(roots.size()));
    }
    for (size_t i = 0; i < roots.size(); ++i) {
      roots_re[i] = roots[i].real();
      roots_im[i] = roots[i].imag();
    }
    return ZS_OK;
  });
}

zs_status zs_is_zero_stable(const double* coeffs, size_t count, int* out) {
  return guarded([&] {
    if (!coeffs || !out) return fail(ZS_ERR_INVALID_ARGUMENT, "zs_is_zero_stable: null argument");
    *out = assembly::is_zero_stable(assembly::CharacteristicPolynomial(coeffs, coeffs + count)) ? 1 : 0;
    return ZS_OK;
  });
}

zs_status zs_run(const zs_problem* problem, const zs_config* config, zs_trajectory** out) {
  return guarded([&] {
    if (!problem || !config || !out) return fail(ZS_ERR_INVALID_ARGUMENT, "zs_run: null argument");
    *out = new zs_trajectory{experiment::run_named(problem->problem, to_config(*config))};
    return ZS_OK;
  });
}

zs_status zs_run_from(const zs_problem* problem, const zs_config* config, const double* x0_re,
                      const double* x0_im, zs_trajectory** out) {
  return guarded([&] {
    if (!problem || !config || !x0_re || !x0_im || !out) {
      return fail(ZS_ERR_INVALID_ARGUMENT, "zs_run_from: null argument");
    }
    const auto cfg = to_config(*config);
    const problem::InitialState initial{read_matrix(problem, x0_re, x0_im), cfg.seed};
    const auto& p = problem->problem;
    *out = new zs_trajectory{{p.label(), p.m(), p.n(), cfg, solver::run(p, cfg, initial)}};
    return ZS_OK;
  });
}

void zs_trajectory_free(zs_trajectory* trajectory) { delete trajectory; }

size_t zs_trajectory_size(const zs_trajectory* trajectory) {
  return trajectory ? trajectory->run.trajectory.steps.size() : 0;
}

zs_outcome zs_trajectory_outcome(const zs_trajectory* trajectory) {
  return trajectory && trajectory->run.trajectory.outcome == solver::Outcome::Diverged
             ? ZS_OUTCOME_DIVERGED
             : ZS_OUTCOME_COMPLETED;
}

int64_t zs_trajectory_diverged_at(const zs_trajectory* trajectory) {
  if (!trajectory || !trajectory->run.trajectory.diverged_at) return -1;
  return *trajectory->run.trajectory.diverged_at;
}

zs_status zs_trajectory_record(const zs_trajectory* trajectory, size_t index, zs_record* out) {
  if (!trajectory || !out) return fail(ZS_ERR_INVALID_ARGUMENT, "zs_trajectory_record: null argument");
  const auto& steps = trajectory->run.trajectory.steps;
  if (index >= steps.size()) {
    return fail(ZS_ERR_INVALID_ARGUMENT, "zs_trajectory_record: index " + std::to_string(index) +
                                             " out of range " + std::to_string(steps.size()));
  }
  const auto& rec = steps[index];
  out->step = rec.step;
  out->tau = rec.tau;
  out->equation_residual = rec.equation_residual;
  out->solution_error = rec.solution_error.value_or(kNaN);
  out->finite = rec.finite ? 1 : 0;
  return ZS_OK;
}

zs_status zs_trajectory_state(const zs_trajectory* trajectory, size_t index, double* buffer,
                              size_t length) {
  if (!trajectory || !buffer) return fail(ZS_ERR_INVALID_ARGUMENT, "zs_trajectory_state: null argument");
  const auto& steps = trajectory->run.trajectory.steps;
  if (index >= steps.size()) return fail(ZS_ERR_INVALID_ARGUMENT, "zs_trajectory_state: index out of range");
  const auto& v = steps[index].state.values();
  if (length != static_cast<size_t>(v.size())) {
    return fail(ZS_ERR_SHAPE, "zs_trajectory_state: buffer length " + std::to_string(length) +
                                  ", state length " + std::to_string(v.size()));
  }
  std::copy(v.data(), v.data() + v.size(), buffer);
  return ZS_OK;
}

double zs_trajectory_tail_max_residual(const zs_trajectory* trajectory, double from_tau,
                                       double to_tau) {
  if (!trajectory) return kNaN;
  return solver::tail_max_equation_residual(trajectory->run.trajectory, from_tau, to_tau);
}

double zs_trajectory_tail_max_solution_error(const zs_trajectory* trajectory, double from_tau,
                                             double to_tau) {
  if (!trajectory) return kNaN;
  return solver::tail_max_solution_error(trajectory->run.trajectory, from_tau, to_tau);
}

zs_status zs_trajectory_write(const zs_trajectory* trajectory, const char* dir) {
  return guarded([&] {
    if (!trajectory || !dir) return fail(ZS_ERR_INVALID_ARGUMENT, "zs_trajectory_write: null argument");
    experiment::write_run_outputs(dir, trajectory->run);
    return ZS_OK;
  });
}

zs_status zs_sweep_run(const zs_problem* problem, const zs_sweep_point* points, size_t count,
                       const zs_config* base, unsigned workers, zs_sweep** out) {
  return guarded([&] {
    if (!problem || !points || !base || !out) {
      return fail(ZS_ERR_INVALID_ARGUMENT, "zs_sweep_run: null argument");
    }
    if (count == 0) return fail(ZS_ERR_INVALID_ARGUMENT, "zs_sweep_run: empty grid");
    std::vector<experiment::SweepPoint> grid;
    grid.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      grid.push_back({to_model(points[i].model), {points[i].gamma_re, points[i].gamma_im},
                      points[i].epsilon});
    }
    experiment::SweepOptions options;
    options.duration = base->duration;
    options.seed = base->seed;
    options.divergence_threshold = base->divergence_threshold;
    if (base->pinv_tolerance >= 0) options.pinv_tolerance = base->pinv_tolerance;
    options.workers = workers;
    *out = new zs_sweep{experiment::run_sweep(problem->problem, grid, options)};
    return ZS_OK;
  });
}

void zs_sweep_free(zs_sweep* sweep) { delete sweep; }

size_t zs_sweep_row_count(const zs_sweep* sweep) { return sweep ? sweep->report.rows.size() : 0; }

zs_status zs_sweep_get_row(const zs_sweep* sweep, size_t index, zs_sweep_row* out) {
  if (!sweep || !out) return fail(ZS_ERR_INVALID_ARGUMENT, "zs_sweep_row: null argument");
  if (index >= sweep->report.rows.size()) return fail(ZS_ERR_INVALID_ARGUMENT, "zs_sweep_row: index out of range");
  const auto& r = sweep->report.rows[index];
  out->model = from_model(r.model);
  out->gamma_re = r.gain.re;
  out->gamma_im = r.gain.im;
  out->epsilon = r.epsilon;
  out->outcome = r.outcome == "COMPLETED" ? ZS_OUTCOME_COMPLETED
                 : r.outcome == "DIVERGED" ? ZS_OUTCOME_DIVERGED
                                           : -1;
  out->tail_max_equation_residual = r.tail_max_equation_residual;
  out->tail_max_solution_error = r.tail_max_solution_error;
  out->steps = r.steps;
  out->wall_time_seconds = r.wall_time_seconds;
  return ZS_OK;
}

size_t zs_sweep_fit_count(const zs_sweep* sweep) { return sweep ? sweep->report.fits.size() : 0; }

zs_status zs_sweep_fit(const zs_sweep* sweep, size_t index, zs_model* model, double* gamma_re,
                       double* gamma_im, int* has_slope, double* slope) {
  if (!sweep || !model || !gamma_re || !gamma_im || !has_slope || !slope) {
    return fail(ZS_ERR_INVALID_ARGUMENT, "zs_sweep_fit: null argument");
  }
  if (index >= sweep->report.fits.size()) return fail(ZS_ERR_INVALID_ARGUMENT, "zs_sweep_fit: index out of range");
  const auto& f = sweep->report.fits[index];
  *model = from_model(f.model);
  *gamma_re = f.gain.re;
  *gamma_im = f.gain.im;
  *has_slope = f.slope ? 1 : 0;
  *slope = f.slope.value_or(kNaN);
  return ZS_OK;
}

zs_status zs_sweep_write(const zs_sweep* sweep, const char* dir) {
  return guarded([&] {
    if (!sweep || !dir) return fail(ZS_ERR_INVALID_ARGUMENT, "zs_sweep_write: null argument");
    experiment::write_sweep_outputs(dir, sweep->report);
    return ZS_OK;
  });
}

zs_status zs_verify(zs_line_callback callback, void* user, int* all_passed) {
  return guarded([&] {
    if (!all_passed) return fail(ZS_ERR_INVALID_ARGUMENT, "zs_verify: null all_passed");
    const bool ok = experiment::run_verification([&](const std::string& line) {
      if (callback) callback(line.c_str(), user);
    });
    *all_passed = ok ? 1 : 0;
    return ZS_OK;
  });
}

}  // extern "C"
