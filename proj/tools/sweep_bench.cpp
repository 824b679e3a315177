// Benchmark of the parallel sweep kernel against the serial reference
// implementation.  Runs each kernel over the same grid, reports wall times
// and speedup, and verifies that both produce byte-identical CSV output.
//
//   sweep_bench [repeats] [--full]
//
// The default grid is trimmed to one duty cycle and two frequencies so a
// round stays in the seconds range; --full benchmarks all 4095 cells.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#include "hybridleg/sweep.hpp"

using namespace hybridleg;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  int repeats = 3;
  bool full = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--full") == 0)
      full = true;
    else
      repeats = std::atoi(argv[i]);
  }
  if (repeats < 1) repeats = 1;

  SweepGrid grid = default_grid();
  if (!full) {
    grid.duty_cycles = {1.0};
    grid.frequencies = {20.0, 1000.0};
  }
  SweepOptions options;
  std::printf("grid: %zu cells, %d repeat(s), %d worker(s)\n",
              grid.cell_count(), repeats, resolve_thread_count(0));

  double best_serial = 1e300;
  double best_parallel = 1e300;
  std::string csv_serial;
  std::string csv_parallel;
  for (int r = 0; r < repeats; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    SweepResult serial = run_sweep_serial(grid, options);
    double ts = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    SweepResult parallel = run_sweep(grid, options);
    double tp = seconds_since(t0);

    csv_serial = sweep_csv(serial);
    csv_parallel = sweep_csv(parallel);
    std::printf("round %d: serial %.3f s, parallel %.3f s\n", r + 1, ts, tp);
    if (ts < best_serial) best_serial = ts;
    if (tp < best_parallel) best_parallel = tp;
  }

  const bool identical = csv_serial == csv_parallel;
  std::printf("best: serial %.3f s, parallel %.3f s, speedup %.2fx\n",
              best_serial, best_parallel, best_serial / best_parallel);
  std::printf("outputs byte-identical: %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
