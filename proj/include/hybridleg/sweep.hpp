#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hybridleg/leg_sim.hpp"
#include "hybridleg/metrics.hpp"

namespace hybridleg {

/// Cartesian experiment grid.  Axes are sorted ascending before a run so the
/// output ordering is canonical regardless of how the grid was written.
struct SweepGrid {
  std::vector<double> lambdas;      // passive fraction, each in [0, 1]
  std::vector<double> delays;      // s, each >= 0
  std::vector<double> frequencies;  // Hz, each > 0
  std::vector<double> duty_cycles;  // fraction, each in (0, 1]

  std::size_t cell_count() const {
    return lambdas.size() * delays.size() * frequencies.size() *
           duty_cycles.size();
  }
};

/// 21 passive fractions (0..1 by 0.05) x 13 delays (0..60 ms by 5 ms)
/// x frequencies {20, 50, 100, 250, 1000} Hz x duty cycles {25, 50, 100} %:
/// 4095 cells.
SweepGrid default_grid();

struct SweepCell {
  double lambda_passive = 0.0;
  double delay = 0.0;      // s
  double frequency = 0.0;  // Hz
  double duty_cycle = 0.0;
  LandingVerdict verdict;
};

struct SweepResult {
  SweepGrid grid;  // canonicalized (sorted) axes
  // Canonical order: duty cycle, then frequency, then lambda, then delay,
  // each ascending; the innermost index (delay) varies fastest.
  std::vector<SweepCell> cells;

  const SweepCell& at(std::size_t duty_i, std::size_t freq_i,
                      std::size_t lambda_i, std::size_t delay_i) const;
};

struct SweepOptions {
  DropConfig base;          // per-cell runs override split + schedule fields
  VerdictThresholds thresholds{};
  int threads = 0;  // 0: library default (HYBRIDLEG_THREADS env, else all)
};

/// Runs one grid cell: the base drop configuration with the cell's passive
/// fraction and control schedule substituted in.
SweepCell evaluate_cell(const DropConfig& base,
                        const VerdictThresholds& thresholds, double lambda,
                        double delay, double frequency, double duty_cycle);

/// Parallel sweep (OpenMP over cells).  Cells are independent; results land
/// in canonical order no matter how the loop is scheduled.
SweepResult run_sweep(const SweepGrid& grid, const SweepOptions& options);

/// Single-threaded reference implementation with identical semantics; kept
/// for testing the parallel kernel against and for benchmarking.
SweepResult run_sweep_serial(const SweepGrid& grid,
                             const SweepOptions& options);

/// Worker count run_sweep will use for `requested` (0 resolves the
/// HYBRIDLEG_THREADS environment cap, then hardware parallelism).
int resolve_thread_count(int requested);

/// CSV with header lambda,delay_ms,freq_hz,duty,viable,settling_s,
/// final_height_m,failure_reason and one row per cell in canonical order.
std::string sweep_csv(const SweepResult& result);

/// Aggregate counts and soft trend checks (machine-readable) for a finished
/// sweep: per-panel viable counts, whether the fully-passive zero-delay
/// reference cell is viable in every panel, whether the viable count is
/// non-decreasing in frequency at each duty cycle, and any violations of
/// lambda-monotonicity along delay rows.
std::string sweep_summary_json(const SweepResult& result,
                               const VerdictThresholds& thresholds);

std::size_t viable_count(const SweepResult& result, double frequency,
                         double duty_cycle);

}  // namespace hybridleg
