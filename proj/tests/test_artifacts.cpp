#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <string>

#include "hybridleg/manifest.hpp"
#include "hybridleg/svg.hpp"
#include "hybridleg/sweep.hpp"
#include "hybridleg/trajectory.hpp"

using namespace hybridleg;
namespace fs = std::filesystem;

namespace {

fs::path fresh_temp_dir(const std::string& tag) {
  const fs::path dir =
      fs::temp_directory_path() / ("hybridleg-test-" + tag);
  fs::remove_all(dir);
  return dir;
}

SweepResult small_sweep() {
  SweepGrid g;
  g.lambdas = {0.0, 0.5, 1.0};
  g.delays = {0.0, 0.030};
  g.frequencies = {100.0, 1000.0};
  g.duty_cycles = {1.0};
  SweepOptions opt;
  return run_sweep(g, opt);
}

std::size_t count_substr(const std::string& hay, const std::string& needle) {
  std::size_t count = 0;
  for (std::size_t pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + needle.size())) {
    ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("panel file names encode frequency and duty percentage") {
  CHECK(panel_file_name(1000.0, 1.0) == "panel_f1000_dc100.svg");
  CHECK(panel_file_name(20.0, 0.25) == "panel_f20_dc25.svg");
  CHECK(panel_file_name(250.0, 0.5) == "panel_f250_dc50.svg");
}

TEST_CASE("a viability panel renders one rectangle per grid cell") {
  const SweepResult r = small_sweep();
  const std::string svg = viability_panel_svg(r, 1000.0, 1.0);

  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("xmlns=\"http://www.w3.org/2000/svg\"") != std::string::npos);
  // One background rect plus lambdas x delays cells.
  CHECK(count_substr(svg, "<rect") == 1 + 3 * 2);
  CHECK(svg.find("delay [ms]") != std::string::npos);
  CHECK(svg.find("passive fraction") != std::string::npos);
  // The fully passive zero-delay cell is viable, so at least one cell is
  // color-graded rather than the grey used for failures.
  CHECK(svg.find("#9e9e9e") != std::string::npos);  // failures exist too
}

TEST_CASE("rendering is deterministic") {
  const SweepResult r = small_sweep();
  CHECK(viability_panel_svg(r, 100.0, 1.0) ==
        viability_panel_svg(r, 100.0, 1.0));
}

TEST_CASE("asking for a panel outside the grid throws") {
  const SweepResult r = small_sweep();
  CHECK_THROWS_AS(viability_panel_svg(r, 123.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(viability_panel_svg(r, 1000.0, 0.33),
                  std::invalid_argument);
}

TEST_CASE("manifest json round-trips every field") {
  nlohmann::ordered_json params;
  params["lambda"] = 0.7;
  params["delay_ms"] = 60.0;
  const RunManifest m =
      make_manifest("drop", params, {"trajectory.csv", "verdict.json"});

  CHECK(m.tool == std::string(kToolName));
  CHECK(m.version == std::string(kToolVersion));
  CHECK_FALSE(m.timestamp.empty());

  const RunManifest back = manifest_from_json(to_json(m));
  CHECK(back.command == m.command);
  CHECK(back.parameters == m.parameters);
  CHECK(back.tool == m.tool);
  CHECK(back.version == m.version);
  CHECK(back.timestamp == m.timestamp);
  CHECK(back.outputs == m.outputs);
}

TEST_CASE("manifests survive a write/read cycle on disk") {
  const fs::path dir = fresh_temp_dir("manifest");
  nlohmann::ordered_json params;
  params["mass_kg"] = 2.0;
  const RunManifest m = make_manifest("delay-law", params, {});
  write_manifest(dir.string(), m);

  const RunManifest back = read_manifest((dir / "manifest.json").string());
  CHECK(back.command == "delay-law");
  CHECK(back.parameters["mass_kg"].get<double>() == 2.0);
  CHECK(back.timestamp == m.timestamp);
  fs::remove_all(dir);
}

TEST_CASE("text file writer creates missing parent directories") {
  const fs::path dir = fresh_temp_dir("textfile");
  const fs::path nested = dir / "a" / "b" / "note.txt";
  write_text_file(nested.string(), "hello\n");
  CHECK(read_text_file(nested.string()) == "hello\n");
  fs::remove_all(dir);
}

TEST_CASE("reading a missing file reports the path") {
  CHECK_THROWS_AS(read_text_file("/nonexistent/nowhere.txt"),
                  std::runtime_error);
}

TEST_CASE("leg trajectory csv round-trips through the series reader") {
  DropConfig config;
  config.duration = 0.5;
  const LegTrajectory traj = run_drop(config);
  REQUIRE(traj.size() > 0);

  const fs::path dir = fresh_temp_dir("csv");
  fs::create_directories(dir);
  const fs::path file = dir / "trajectory.csv";
  write_csv(traj, file);

  const Trajectory back = read_series_csv(file);
  REQUIRE(back.time.size() == traj.size());
  for (std::size_t i = 0; i < back.time.size(); ++i) {
    // Values pass through %.6g text formatting, so compare loosely.
    CHECK(back.time[i] == doctest::Approx(traj.time[i]).epsilon(1e-5));
    CHECK(back.value[i] == doctest::Approx(traj.z[i]).epsilon(1e-5));
  }
  fs::remove_all(dir);
}

TEST_CASE("scalar series csv carries the requested column name") {
  Trajectory series;
  series.time = {0.0, 0.1, 0.2};
  series.value = {1.0, 0.5, 0.25};
  const std::string csv = to_csv(series, "theta");
  CHECK(csv.rfind("t,theta\n", 0) == 0);

  const fs::path dir = fresh_temp_dir("series");
  fs::create_directories(dir);
  const fs::path file = dir / "series.csv";
  write_csv(series, "theta", file);
  const Trajectory back = read_series_csv(file);
  REQUIRE(back.value.size() == 3);
  CHECK(back.value[1] == doctest::Approx(0.5));
  fs::remove_all(dir);
}
