#include "hybridleg/sweep.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include <json.hpp>

namespace hybridleg {

namespace {

void sort_axes(SweepGrid& grid) {
  std::sort(grid.lambdas.begin(), grid.lambdas.end());
  std::sort(grid.delays.begin(), grid.delays.end());
  std::sort(grid.frequencies.begin(), grid.frequencies.end());
  std::sort(grid.duty_cycles.begin(), grid.duty_cycles.end());
}

void validate_grid(const SweepGrid& grid, const DropConfig& base) {
  if (grid.lambdas.empty() || grid.delays.empty() ||
      grid.frequencies.empty() || grid.duty_cycles.empty()) {
    throw std::invalid_argument("sweep grid has an empty axis");
  }
  for (double l : grid.lambdas) {
    if (!(l >= 0.0) || !(l <= 1.0)) {
      throw std::invalid_argument("passive fraction outside [0, 1] in grid");
    }
  }
  for (double d : grid.delays) {
    if (!(d >= 0.0)) throw std::invalid_argument("negative delay in grid");
  }
  for (double dc : grid.duty_cycles) {
    if (!(dc > 0.0 && dc <= 1.0)) {
      throw std::invalid_argument("duty cycle outside (0, 1] in grid");
    }
  }
  // Every control frequency must land on the physics step grid; fail the
  // whole sweep up front (a configuration error) rather than per cell.
  for (double f : grid.frequencies) {
    ControlSchedule probe = base.schedule;
    probe.frequency = f;
    align_schedule(probe, base.physics_dt);
  }
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

SweepGrid default_grid() {
  SweepGrid grid;
  for (int k = 0; k <= 20; ++k) {
    grid.lambdas.push_back(static_cast<double>(k) / 20.0);
  }
  for (int k = 0; k <= 12; ++k) {
    grid.delays.push_back(static_cast<double>(k) / 200.0);  // 5 ms steps
  }
  grid.frequencies = {20.0, 50.0, 100.0, 250.0, 1000.0};
  grid.duty_cycles = {0.25, 0.5, 1.0};
  return grid;
}

const SweepCell& SweepResult::at(std::size_t duty_i, std::size_t freq_i,
                                 std::size_t lambda_i,
                                 std::size_t delay_i) const {
  const std::size_t nd = grid.delays.size();
  const std::size_t nl = grid.lambdas.size();
  const std::size_t nf = grid.frequencies.size();
  return cells[((duty_i * nf + freq_i) * nl + lambda_i) * nd + delay_i];
}

SweepCell evaluate_cell(const DropConfig& base,
                        const VerdictThresholds& thresholds, double lambda,
                        double delay, double frequency, double duty_cycle) {
  SweepCell cell;
  cell.lambda_passive = lambda;
  cell.delay = delay;
  cell.frequency = frequency;
  cell.duty_cycle = duty_cycle;

  DropConfig config = base;
  config.split.lambda_passive = lambda;
  config.schedule.frequency = frequency;
  config.schedule.duty_cycle = duty_cycle;
  config.schedule.delay = delay;

  const LegTrajectory traj = run_drop(config);
  cell.verdict = judge_landing(traj, config.drop_height, thresholds);
  return cell;
}

namespace {

SweepResult run_sweep_impl(const SweepGrid& grid, const SweepOptions& options,
                           int threads) {
  SweepResult result;
  result.grid = grid;
  sort_axes(result.grid);
  validate_grid(result.grid, options.base);
  validate(options.base);

  const auto& g = result.grid;
  const std::size_t nd = g.delays.size();
  const std::size_t nl = g.lambdas.size();
  const std::size_t nf = g.frequencies.size();
  const std::size_t total = g.cell_count();
  result.cells.resize(total);

  // Cells vary widely in cost (early failures end in a fraction of the
  // simulated window), so dynamic scheduling keeps the workers busy.
  SweepCell* cells = result.cells.data();
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
  for (long long idx = 0; idx < static_cast<long long>(total); ++idx) {
    const auto u = static_cast<std::size_t>(idx);
    const std::size_t delay_i = u % nd;
    const std::size_t lambda_i = (u / nd) % nl;
    const std::size_t freq_i = (u / (nd * nl)) % nf;
    const std::size_t duty_i = u / (nd * nl * nf);
    cells[u] = evaluate_cell(options.base, options.thresholds,
                             g.lambdas[lambda_i], g.delays[delay_i],
                             g.frequencies[freq_i], g.duty_cycles[duty_i]);
  }
  return result;
}

}  // namespace

int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HYBRIDLEG_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  return omp_get_max_threads();
}

SweepResult run_sweep(const SweepGrid& grid, const SweepOptions& options) {
  return run_sweep_impl(grid, options, resolve_thread_count(options.threads));
}

SweepResult run_sweep_serial(const SweepGrid& grid,
                             const SweepOptions& options) {
  return run_sweep_impl(grid, options, 1);
}

std::string sweep_csv(const SweepResult& result) {
  std::string out =
      "lambda,delay_ms,freq_hz,duty,viable,settling_s,final_height_m,"
      "failure_reason\n";
  for (const SweepCell& c : result.cells) {
    out += format_number(c.lambda_passive);
    out += ',';
    out += format_number(c.delay * 1000.0);
    out += ',';
    out += format_number(c.frequency);
    out += ',';
    out += format_number(c.duty_cycle);
    out += ',';
    out += c.verdict.viable ? '1' : '0';
    out += ',';
    out += format_number(c.verdict.settle.settling_time);
    out += ',';
    out += format_number(c.verdict.settle.final_height);
    out += ',';
    out += to_string(c.verdict.reason);
    out += '\n';
  }
  return out;
}

std::size_t viable_count(const SweepResult& result, double frequency,
                         double duty_cycle) {
  std::size_t count = 0;
  for (const SweepCell& c : result.cells) {
    if (c.frequency == frequency && c.duty_cycle == duty_cycle &&
        c.verdict.viable) {
      ++count;
    }
  }
  return count;
}

std::string sweep_summary_json(const SweepResult& result,
                               const VerdictThresholds& thresholds) {
  using json = nlohmann::ordered_json;
  const SweepGrid& g = result.grid;

  json doc;
  doc["grid"] = {
      {"lambdas", g.lambdas},
      {"delays_ms", [&] {
         std::vector<double> ms;
         for (double d : g.delays) ms.push_back(d * 1000.0);
         return ms;
       }()},
      {"frequencies_hz", g.frequencies},
      {"duty_cycles", g.duty_cycles},
  };
  doc["thresholds"] = {
      {"max_settling_s", thresholds.max_settling_time},
      {"min_final_height_m", thresholds.min_final_height},
      {"band_fraction", thresholds.band_fraction},
      {"settle_tail_s", thresholds.settle_tail},
  };

  std::size_t total_viable = 0;
  for (const SweepCell& c : result.cells) {
    total_viable += c.verdict.viable ? 1 : 0;
  }
  doc["totals"] = {{"cells", result.cells.size()},
                   {"viable", total_viable}};

  // Per-(frequency, duty) panel counts, plus the reference-cell check: the
  // fully passive, zero-delay corner must be viable in every panel.
  json panels = json::array();
  bool reference_ok = true;
  const std::size_t ref_lambda =
      static_cast<std::size_t>(g.lambdas.size() - 1);  // largest lambda
  for (std::size_t di = 0; di < g.duty_cycles.size(); ++di) {
    for (std::size_t fi = 0; fi < g.frequencies.size(); ++fi) {
      const bool ref_viable =
          result.at(di, fi, ref_lambda, 0).verdict.viable;
      reference_ok = reference_ok && ref_viable;
      panels.push_back({
          {"freq_hz", g.frequencies[fi]},
          {"duty", g.duty_cycles[di]},
          {"viable", viable_count(result, g.frequencies[fi],
                                  g.duty_cycles[di])},
          {"reference_cell_viable", ref_viable},
      });
    }
  }
  doc["panels"] = panels;

  // Soft trend checks.  The headline trend is endpoint-anchored: at each
  // duty cycle the highest control frequency must bound the viable count of
  // every lower frequency.  The strict step-by-step chain is reported too,
  // but it can legitimately fail at low duty cycles because the torque-hold
  // window is quantized to whole physics steps, which nudges the effective
  // duty up or down per frequency.
  json checks;
  bool freq_chain = true;
  bool top_bounds_rest = true;
  for (std::size_t di = 0; di < g.duty_cycles.size(); ++di) {
    std::size_t prev = 0;
    std::size_t top = 0;
    for (std::size_t fi = 0; fi < g.frequencies.size(); ++fi) {
      const std::size_t count =
          viable_count(result, g.frequencies[fi], g.duty_cycles[di]);
      if (fi > 0 && count < prev) freq_chain = false;
      prev = count;
      top = count;  // frequencies are sorted ascending; last one wins
    }
    for (std::size_t fi = 0; fi + 1 < g.frequencies.size(); ++fi) {
      if (viable_count(result, g.frequencies[fi], g.duty_cycles[di]) > top)
        top_bounds_rest = false;
    }
  }
  checks["viable_count_max_at_top_frequency"] = top_bounds_rest;
  checks["viable_count_nondecreasing_in_frequency"] = freq_chain;
  checks["reference_cell_viable_in_every_panel"] = reference_ok;

  // Lambda monotonicity along each delay row: once a row turns viable at
  // some lambda, larger lambdas should stay viable.  Violations are listed,
  // not failed on (the physics does not strictly guarantee it).
  json violations = json::array();
  for (std::size_t di = 0; di < g.duty_cycles.size(); ++di) {
    for (std::size_t fi = 0; fi < g.frequencies.size(); ++fi) {
      for (std::size_t ki = 0; ki < g.delays.size(); ++ki) {
        bool seen_viable = false;
        for (std::size_t li = 0; li < g.lambdas.size(); ++li) {
          const bool viable = result.at(di, fi, li, ki).verdict.viable;
          if (viable) {
            seen_viable = true;
          } else if (seen_viable) {
            violations.push_back({
                {"duty", g.duty_cycles[di]},
                {"freq_hz", g.frequencies[fi]},
                {"delay_ms", g.delays[ki] * 1000.0},
                {"lambda", g.lambdas[li]},
            });
          }
        }
      }
    }
  }
  checks["lambda_monotonicity_violations"] = violations;
  doc["checks"] = checks;

  return doc.dump(2) + "\n";
}

}  // namespace hybridleg
