// hybridleg command-line tool: every operation of the library behind one
// binary.  Each subcommand resolves its flags into a flat JSON parameter
// record, hands that record to a named runner, and stores it in the run
// manifest; `replay` feeds a stored record back through the same runner,
// which is what makes replays byte-identical by construction.
//
// Exit codes: 0 completed, 2 invalid configuration (bad flag or parameter),
// 1 runtime failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hybridleg/controller.hpp"
#include "hybridleg/leg_sim.hpp"
#include "hybridleg/manifest.hpp"
#include "hybridleg/metrics.hpp"
#include "hybridleg/model.hpp"
#include "hybridleg/pendulum.hpp"
#include "hybridleg/quadruped.hpp"
#include "hybridleg/svg.hpp"
#include "hybridleg/sweep.hpp"
#include "hybridleg/trajectory.hpp"

namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;
using namespace hybridleg;

// ---------------------------------------------------------------------------
// Shared plumbing

/// A runner executes one subcommand from its resolved parameter record.
/// `out_dir` may be empty for commands that only print.  Returns the list of
/// files written (paths relative to out_dir).
using Runner = std::function<std::vector<std::string>(const ordered_json&,
                                                      const std::string&)>;

std::map<std::string, Runner>& runners() {
  static std::map<std::string, Runner> table;
  return table;
}

/// Executes a runner and, if an output directory is involved, writes the
/// manifest recording the parameter set and produced files.
void dispatch(const std::string& command, const ordered_json& params,
              const std::string& out_dir) {
  auto it = runners().find(command);
  if (it == runners().end())
    throw std::invalid_argument("unknown command in manifest: " + command);
  std::vector<std::string> outputs = it->second(params, out_dir);
  if (!out_dir.empty())
    write_manifest(out_dir, make_manifest(command, params, outputs));
}

double get_num(const ordered_json& p, const std::string& key) {
  if (!p.contains(key) || !p[key].is_number())
    throw std::invalid_argument("parameter record is missing numeric field '" +
                                key + "'");
  return p[key].get<double>();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void put(const std::string& dir, const std::string& name,
         const std::string& content) {
  write_text_file((fs::path(dir) / name).string(), content);
}

// ---------------------------------------------------------------------------
// delay-law

std::vector<std::string> run_delay_law(const ordered_json& p,
                                       const std::string& out_dir) {
  const double mass = get_num(p, "mass_kg");
  const double delay = biological_delay(mass);
  std::cout << "mass_kg=" << fmt(mass) << "\n"
            << "delay_s=" << fmt(delay) << "\n"
            << "delay_ms=" << fmt(delay * 1000.0) << "\n";
  if (out_dir.empty()) return {};
  std::string csv = "mass_kg,delay_ms\n" + fmt(mass) + "," +
                    fmt(delay * 1000.0) + "\n";
  put(out_dir, "delay.csv", csv);
  return {"delay.csv"};
}

// ---------------------------------------------------------------------------
// poles / step (linearized strut)

PendulumParams pendulum_from(const ordered_json& p) {
  PendulumParams out;
  out.inertia = get_num(p, "inertia");
  out.mass = get_num(p, "mass_kg");
  out.com_distance = get_num(p, "com_m");
  out.damping = get_num(p, "damping");
  out.split = make_split(get_num(p, "k_total"), get_num(p, "lambda"));
  out.delay = get_num(p, "delay_ms") / 1000.0;
  validate(out);
  return out;
}

std::vector<std::string> run_poles(const ordered_json& p,
                                   const std::string& out_dir) {
  const PendulumParams params = pendulum_from(p);
  const PoleSet set = poles(params);
  std::string csv = "t_d,lambda,re,im\n";
  for (const auto& r : set.roots)
    csv += fmt(params.delay) + "," + fmt(params.split.lambda_passive) + "," +
           fmt(r.real()) + "," + fmt(r.imag()) + "\n";
  std::cout << csv;
  std::cout << "dominant_re=" << fmt(set.dominant.real()) << "\n"
            << "dominant_im=" << fmt(set.dominant.imag()) << "\n"
            << "max_residual=" << fmt(set.max_residual) << "\n";
  if (out_dir.empty()) return {};
  put(out_dir, "poles.csv", csv);
  return {"poles.csv"};
}

std::vector<std::string> run_step(const ordered_json& p,
                                  const std::string& out_dir) {
  const PendulumParams params = pendulum_from(p);
  const double step = get_num(p, "step_rad");
  const double duration = get_num(p, "duration_s");
  const double dt = get_num(p, "dt_s");
  const Trajectory traj = step_response(params, step, duration, dt);
  const bool unstable =
      step_unstable(traj, params.equilibrium + step, step);
  std::cout << "samples=" << traj.time.size() << "\n"
            << "unstable=" << (unstable ? 1 : 0) << "\n"
            << "final_theta=" << fmt(traj.value.back()) << "\n";
  if (out_dir.empty()) {
    std::cout << to_csv(traj, "theta");
    return {};
  }
  put(out_dir, "step.csv", to_csv(traj, "theta"));
  return {"step.csv"};
}

// ---------------------------------------------------------------------------
// drop (single leg or quadruped reduction, one configuration)

DropConfig drop_from(const ordered_json& p) {
  DropConfig c;
  c.drop_height = get_num(p, "height_m");
  c.duration = get_num(p, "duration_s");
  c.physics_dt = get_num(p, "dt_s");
  c.geometry.rest_knee_angle = get_num(p, "rest_angle_rad");
  c.body.mass = get_num(p, "mass_kg");
  c.split = make_split(get_num(p, "k_total"), get_num(p, "lambda"));
  c.schedule.frequency = get_num(p, "freq_hz");
  c.schedule.duty_cycle = get_num(p, "duty");
  c.schedule.delay = get_num(p, "delay_ms") / 1000.0;
  c.leg_count = static_cast<int>(get_num(p, "legs"));
  const std::string contact = p.value("contact", std::string("pinned"));
  if (contact == "pinned") {
    c.contact_mode = ContactMode::kPinned;
  } else if (contact == "penalty") {
    c.contact_mode = ContactMode::kPenalty;
    c.contact.normal_stiffness = get_num(p, "contact_stiffness");
    c.contact.normal_damping = get_num(p, "contact_damping");
  } else {
    throw std::invalid_argument("--contact must be 'pinned' or 'penalty'");
  }
  validate(c);
  return c;
}

ordered_json verdict_json(const LandingVerdict& v) {
  return ordered_json{{"viable", v.viable},
                      {"failure_reason", to_string(v.reason)},
                      {"settling_s", v.settle.settling_time},
                      {"final_height_m", v.settle.final_height},
                      {"touchdown_s", v.touchdown_time},
                      {"touchdown_speed_ms", v.touchdown_speed}};
}

std::vector<std::string> run_drop_cmd(const ordered_json& p,
                                      const std::string& out_dir) {
  const DropConfig config = drop_from(p);
  const LegTrajectory traj = run_drop(config);
  const LandingVerdict verdict = judge_landing(traj, config.drop_height);
  std::cout << "verdict=" << (verdict.viable ? "viable" : "not_viable")
            << "\n"
            << "failure_reason=" << to_string(verdict.reason) << "\n"
            << "settling_s=" << fmt(verdict.settle.settling_time) << "\n"
            << "final_height_m=" << fmt(verdict.settle.final_height) << "\n"
            << "touchdown_s=" << fmt(verdict.touchdown_time) << "\n";
  if (out_dir.empty()) return {};
  put(out_dir, "trajectory.csv", to_csv(traj));
  put(out_dir, "verdict.json", verdict_json(verdict).dump(2) + "\n");
  return {"trajectory.csv", "verdict.json"};
}

// ---------------------------------------------------------------------------
// quadruped

QuadrupedScenario scenario_from_json(const ordered_json& j) {
  QuadrupedScenario s;
  s.label = j.value("label", std::string("case"));
  s.expected_landed = j.value("expected_landed", true);
  DropConfig& c = s.config;
  c.body.mass = j.value("mass_kg", kQuadrupedMass);
  c.leg_count = j.value("legs", 4);
  c.drop_height = j.value("drop_height_m", kReferenceDropHeight);
  c.split = make_split(j.value("k_total", kReferenceKneeStiffness),
                       j.value("lambda", 1.0));
  c.schedule.frequency = j.value("frequency_hz", 1000.0);
  c.schedule.duty_cycle = j.value("duty", 1.0);
  c.schedule.delay = j.value("delay_ms", 0.0) / 1000.0;
  if (j.contains("contact")) {
    const auto& cj = j["contact"];
    const std::string mode = cj.value("mode", std::string("pinned"));
    if (mode == "penalty") {
      c.contact_mode = ContactMode::kPenalty;
      c.contact.normal_stiffness =
          cj.value("stiffness", kCalibratedContactStiffness);
      c.contact.normal_damping =
          cj.value("damping", kCalibratedContactDamping);
    } else if (mode != "pinned") {
      throw std::invalid_argument("contact.mode must be 'pinned' or "
                                  "'penalty' in scenario '" + s.label + "'");
    }
  }
  validate(c);
  return s;
}

std::vector<QuadrupedScenario> load_scenarios(const std::string& file) {
  const ordered_json doc = ordered_json::parse(read_text_file(file));
  if (!doc.contains("cases") || !doc["cases"].is_array() ||
      doc["cases"].empty())
    throw std::invalid_argument("scenario config needs a non-empty 'cases' "
                                "array: " + file);
  std::vector<QuadrupedScenario> out;
  for (const auto& j : doc["cases"]) out.push_back(scenario_from_json(j));
  return out;
}

std::vector<std::string> run_quadruped_cmd(const ordered_json& p,
                                           const std::string& out_dir) {
  const bool calibrated = p.value("calibrated", true);
  std::vector<QuadrupedScenario> scenarios =
      p.contains("cases_file")
          ? load_scenarios(p["cases_file"].get<std::string>())
          : builtin_quadruped_scenarios(calibrated);
  const int only = static_cast<int>(p.value("case", 0.0));
  if (only != 0) {
    if (only < 1 || only > static_cast<int>(scenarios.size()))
      throw std::invalid_argument("--case must be between 1 and " +
                                  std::to_string(scenarios.size()));
    scenarios = {scenarios[static_cast<std::size_t>(only - 1)]};
  }

  const std::vector<QuadrupedOutcome> outcomes =
      run_all_quadruped_scenarios(scenarios);
  std::vector<std::string> outputs;
  ordered_json cases = ordered_json::array();
  ordered_json discrepancies = ordered_json::array();
  int matches = 0;
  for (const auto& o : outcomes) {
    const bool match = o.matches_expected();
    matches += match;
    std::cout << o.scenario.label << ": "
              << (o.landed() ? "landed" : "failed") << " (expected "
              << (o.scenario.expected_landed ? "landed" : "failed") << ")"
              << (match ? "" : "  << MISMATCH") << "\n";
    std::string traj_file = o.scenario.label + ".csv";
    if (!out_dir.empty()) {
      put(out_dir, traj_file, to_csv(o.trajectory));
      outputs.push_back(traj_file);
    }
    ordered_json entry = verdict_json(o.verdict);
    entry["label"] = o.scenario.label;
    entry["expected_landed"] = o.scenario.expected_landed;
    entry["landed"] = o.landed();
    entry["matches_expected"] = match;
    entry["trajectory"] = traj_file;
    cases.push_back(entry);
    if (!match) discrepancies.push_back(entry);
  }
  std::cout << "matches=" << matches << "/" << outcomes.size() << "\n";
  if (out_dir.empty()) return {};
  ordered_json summary{{"calibrated_contact", calibrated},
                       {"matches", matches},
                       {"total", outcomes.size()},
                       {"cases", cases},
                       {"discrepancies", discrepancies}};
  put(out_dir, "summary.json", summary.dump(2) + "\n");
  outputs.push_back("summary.json");
  return outputs;
}

// ---------------------------------------------------------------------------
// sweep

SweepGrid grid_from_json(const ordered_json& g) {
  SweepGrid grid;
  grid.lambdas = g.at("lambdas").get<std::vector<double>>();
  for (double ms : g.at("delays_ms").get<std::vector<double>>())
    grid.delays.push_back(ms / 1000.0);
  grid.frequencies = g.at("frequencies_hz").get<std::vector<double>>();
  grid.duty_cycles = g.at("duty_cycles").get<std::vector<double>>();
  return grid;
}

ordered_json grid_to_json(const SweepGrid& grid) {
  std::vector<double> delays_ms;
  for (double d : grid.delays) delays_ms.push_back(d * 1000.0);
  return ordered_json{{"lambdas", grid.lambdas},
                      {"delays_ms", delays_ms},
                      {"frequencies_hz", grid.frequencies},
                      {"duty_cycles", grid.duty_cycles}};
}

std::vector<std::string> run_sweep_cmd(const ordered_json& p,
                                       const std::string& out_dir) {
  const SweepGrid grid = grid_from_json(p.at("grid"));
  SweepOptions options;
  options.threads = static_cast<int>(p.value("threads", 0.0));
  const bool serial = p.value("serial", false);
  const bool svg = p.value("svg", true);

  const SweepResult result = serial ? run_sweep_serial(grid, options)
                                    : run_sweep(grid, options);
  std::size_t viable = 0;
  for (const auto& c : result.cells) viable += c.verdict.viable;
  std::cout << "cells=" << result.cells.size() << "\n"
            << "viable=" << viable << "\n";
  if (out_dir.empty()) return {};

  std::vector<std::string> outputs;
  put(out_dir, "sweep.csv", sweep_csv(result));
  outputs.push_back("sweep.csv");
  put(out_dir, "summary.json",
      sweep_summary_json(result, options.thresholds));
  outputs.push_back("summary.json");
  if (svg) {
    for (double f : result.grid.frequencies)
      for (double dc : result.grid.duty_cycles) {
        const std::string name = panel_file_name(f, dc);
        put(out_dir, name, viability_panel_svg(result, f, dc));
        outputs.push_back(name);
      }
  }
  return outputs;
}

// ---------------------------------------------------------------------------
// compare

std::vector<std::string> run_compare(const ordered_json& p,
                                     const std::string& out_dir) {
  const std::string file_a = p.at("a").get<std::string>();
  const std::string file_b = p.at("b").get<std::string>();
  const Trajectory a = read_series_csv(file_a);
  const Trajectory b = read_series_csv(file_b);
  const double mse = trajectory_mse(a.time, a.value, b.time, b.value,
                                    get_num(p, "normalization_m"),
                                    get_num(p, "rate_hz"));
  std::cout << "mse=" << fmt(mse) << "\n";
  if (out_dir.empty()) return {};
  ordered_json doc{{"a", file_a}, {"b", file_b}, {"mse", mse}};
  put(out_dir, "compare.json", doc.dump(2) + "\n");
  return {"compare.json"};
}

// ---------------------------------------------------------------------------
// replay

void run_replay(const std::string& manifest_dir, std::string out_dir) {
  const fs::path src(manifest_dir);
  const fs::path manifest_path =
      fs::is_directory(src) ? src / "manifest.json" : src;
  const RunManifest manifest = read_manifest(manifest_path.string());
  if (out_dir.empty())
    out_dir = (fs::is_directory(src) ? src : src.parent_path()).string() +
              "-replay";
  std::cout << "replaying " << manifest.command << " -> " << out_dir << "\n";
  dispatch(manifest.command, manifest.parameters, out_dir);
}

// ---------------------------------------------------------------------------
// flag wiring

/// Reads flag values from a JSON document given via --config.  Top-level
/// keys name global options; nested objects name subcommands, e.g.
/// {"drop": {"lambda": 0.7, "delay-ms": 60}}.  Values given explicitly on
/// the command line take precedence over the file.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool,
                        std::string) const override {
    return "{}\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    ordered_json doc;
    try {
      doc = ordered_json::parse(input);
    } catch (const std::exception& e) {
      throw CLI::ConfigError(std::string("config file is not valid JSON: ") +
                             e.what());
    }
    if (!doc.is_object())
      throw CLI::ConfigError("config file must hold a JSON object");
    std::vector<CLI::ConfigItem> items;
    collect(doc, {}, items);
    return items;
  }

 private:
  static void collect(const ordered_json& node,
                      const std::vector<std::string>& parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (auto it = node.begin(); it != node.end(); ++it) {
      if (it->is_object()) {
        auto deeper = parents;
        deeper.push_back(it.key());
        collect(*it, deeper, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = it.key();
      if (it->is_array()) {
        for (const auto& v : *it)
          item.inputs.push_back(v.is_string() ? v.get<std::string>()
                                              : v.dump());
      } else if (it->is_string()) {
        item.inputs.push_back(it->get<std::string>());
      } else {
        item.inputs.push_back(it->dump());
      }
      items.push_back(item);
    }
  }
};

struct Cli {
  CLI::App app{"Compliant-leg landing laboratory: delayed joint-stiffness "
               "models, drop simulations, and viability sweeps"};
  std::string selected;
  ordered_json params;
  std::string out_dir;
  std::string replay_src;

  Cli() {
    app.require_subcommand(1);
    app.config_formatter(std::make_shared<JsonConfig>());
    app.allow_config_extras(CLI::config_extras_mode::ignore_all);
    app.set_config("--config", "",
                   "JSON file with flag values; explicit flags win")
        ->check(CLI::ExistingFile);
  }
};

void add_delay_law(Cli& cli) {
  auto* cmd = cli.app.add_subcommand(
      "delay-law", "Sensorimotor delay predicted for a body mass");
  auto mass = std::make_shared<double>(kQuadrupedMass);
  cmd->add_option("--mass", *mass, "body mass [kg]")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--out", cli.out_dir, "output directory (optional)");
  cmd->callback([&cli, mass] {
    cli.selected = "delay-law";
    cli.params = ordered_json{{"mass_kg", *mass}};
  });
}

struct PendulumFlags {
  double k_total = 1.15;
  double lambda = 0.0;
  double mass = 0.5;
  double com = kSegmentLength;
  double inertia = 0.5 * kSegmentLength * kSegmentLength;
  double damping = 0.14;
  double delay_ms = 0.0;
};

std::shared_ptr<PendulumFlags> add_pendulum_flags(CLI::App* cmd) {
  auto f = std::make_shared<PendulumFlags>();
  cmd->add_option("--k-total", f->k_total, "total joint stiffness [N*m/rad]")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--lambda", f->lambda, "passive fraction of the stiffness")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--mass", f->mass, "strut mass [kg]")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--com", f->com, "pivot-to-mass distance [m]")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--inertia", f->inertia, "strut inertia [kg*m^2]")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--damping", f->damping, "joint damping [N*m*s/rad]")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--delay-ms", f->delay_ms, "sensorimotor delay [ms]")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  return f;
}

ordered_json pendulum_params_json(const PendulumFlags& f) {
  return ordered_json{{"k_total", f.k_total},   {"lambda", f.lambda},
                      {"mass_kg", f.mass},      {"com_m", f.com},
                      {"inertia", f.inertia},   {"damping", f.damping},
                      {"delay_ms", f.delay_ms}};
}

void add_poles(Cli& cli) {
  auto* cmd = cli.app.add_subcommand(
      "poles", "Closed-loop poles of the linearized delayed strut");
  auto f = add_pendulum_flags(cmd);
  cmd->add_option("--out", cli.out_dir, "output directory (optional)");
  cmd->callback([&cli, f] {
    cli.selected = "poles";
    cli.params = pendulum_params_json(*f);
  });
}

void add_step(Cli& cli) {
  auto* cmd = cli.app.add_subcommand(
      "step", "Step response of the linearized delayed strut");
  auto f = add_pendulum_flags(cmd);
  auto step = std::make_shared<double>(0.1);
  auto duration = std::make_shared<double>(2.0);
  auto dt = std::make_shared<double>(1e-4);
  cmd->add_option("--step-rad", *step, "commanded angle step [rad]")
      ->capture_default_str();
  cmd->add_option("--duration", *duration, "simulated span [s]")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--dt", *dt, "integration step [s]")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--out", cli.out_dir, "output directory (optional)");
  cmd->callback([&cli, f, step, duration, dt] {
    cli.selected = "step";
    cli.params = pendulum_params_json(*f);
    cli.params["step_rad"] = *step;
    cli.params["duration_s"] = *duration;
    cli.params["dt_s"] = *dt;
  });
}

struct DropFlags {
  double lambda = 1.0;
  double delay_ms = 0.0;
  double freq = 1000.0;
  double duty = 1.0;
  double height = kReferenceDropHeight;
  double k_total = kReferenceKneeStiffness;
  double mass = kSingleLegMass;
  double rest_angle = kDefaultRestKneeAngle;
  double duration = 3.0;
  double dt = 1e-3;
  int legs = 1;
  std::string contact = "pinned";
  double contact_stiffness = 5e4;
  double contact_damping = 50.0;
};

void add_drop(Cli& cli) {
  auto* cmd = cli.app.add_subcommand(
      "drop", "Drop-landing simulation of the compliant leg");
  auto f = std::make_shared<DropFlags>();
  cmd->add_option("--lambda", f->lambda, "passive fraction of the stiffness")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--delay-ms", f->delay_ms, "sensorimotor delay [ms]")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--freq", f->freq, "control frequency [Hz]")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--duty", f->duty, "duty cycle of the torque command")
      ->check(CLI::Range(1e-9, 1.0))
      ->capture_default_str();
  cmd->add_option("--height", f->height, "drop height of the hip [m]")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--k-total", f->k_total, "total knee stiffness [N*m/rad]")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--mass", f->mass, "carried mass [kg]")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--rest-angle", f->rest_angle,
                  "knee flexion held in flight [rad]")
      ->check(CLI::Range(1e-6, 3.0))
      ->capture_default_str();
  cmd->add_option("--duration", f->duration, "simulated span [s]")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--dt", f->dt, "physics step [s]")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--legs", f->legs, "identical legs sharing the body")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--contact", f->contact, "'pinned' or 'penalty'")
      ->check(CLI::IsMember({"pinned", "penalty"}))
      ->capture_default_str();
  cmd->add_option("--contact-stiffness", f->contact_stiffness,
                  "penalty contact stiffness [N/m]")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--contact-damping", f->contact_damping,
                  "penalty contact damping [N*s/m]")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--out", cli.out_dir, "output directory (optional)");
  cmd->callback([&cli, f] {
    cli.selected = "drop";
    cli.params = ordered_json{{"lambda", f->lambda},
                              {"delay_ms", f->delay_ms},
                              {"freq_hz", f->freq},
                              {"duty", f->duty},
                              {"height_m", f->height},
                              {"k_total", f->k_total},
                              {"mass_kg", f->mass},
                              {"rest_angle_rad", f->rest_angle},
                              {"duration_s", f->duration},
                              {"dt_s", f->dt},
                              {"legs", static_cast<double>(f->legs)},
                              {"contact", f->contact},
                              {"contact_stiffness", f->contact_stiffness},
                              {"contact_damping", f->contact_damping}};
  });
}

void add_quadruped(Cli& cli) {
  auto* cmd = cli.app.add_subcommand(
      "quadruped", "Run the built-in quadruped drop scenarios");
  auto case_number = std::make_shared<int>(0);
  auto uncalibrated = std::make_shared<bool>(false);
  auto config = std::make_shared<std::string>();
  cmd->add_option("--case", *case_number, "run a single case (1-based)")
      ->check(CLI::Range(1, 99));
  cmd->add_flag("--uncalibrated", *uncalibrated,
                "use the rigid pinned contact for every case");
  cmd->add_option("--cases", *config,
                  "JSON scenario file overriding the built-in cases")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", cli.out_dir, "output directory (optional)");
  cmd->callback([&cli, case_number, uncalibrated, config] {
    cli.selected = "quadruped";
    cli.params = ordered_json{{"calibrated", !*uncalibrated}};
    if (*case_number != 0)
      cli.params["case"] = static_cast<double>(*case_number);
    if (!config->empty()) cli.params["cases_file"] = *config;
  });
}

void add_sweep(Cli& cli) {
  auto* cmd = cli.app.add_subcommand(
      "sweep", "Viability map over passive fraction, delay, rate and duty");
  auto grid_file = std::make_shared<std::string>();
  auto threads = std::make_shared<int>(0);
  auto serial = std::make_shared<bool>(false);
  auto no_svg = std::make_shared<bool>(false);
  cmd->add_option("--grid", *grid_file, "JSON grid file (axes); default grid "
                                        "when omitted")
      ->check(CLI::ExistingFile);
  cmd->add_option("--threads", *threads,
                  "worker cap (0 = HYBRIDLEG_THREADS env, then hardware)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_flag("--serial", *serial, "use the serial reference kernel");
  cmd->add_flag("--no-svg", *no_svg, "skip the SVG heatmap panels");
  cmd->add_option("--out", cli.out_dir, "output directory (optional)");
  cmd->callback([&cli, grid_file, threads, serial, no_svg] {
    cli.selected = "sweep";
    ordered_json grid =
        grid_file->empty()
            ? grid_to_json(default_grid())
            : ordered_json::parse(read_text_file(*grid_file))
                  .get<ordered_json>();
    cli.params = ordered_json{{"grid", grid},
                              {"threads", static_cast<double>(*threads)},
                              {"serial", *serial},
                              {"svg", !*no_svg}};
  });
}

void add_compare(Cli& cli) {
  auto* cmd = cli.app.add_subcommand(
      "compare", "Mean squared error between two trajectory CSV files");
  auto a = std::make_shared<std::string>();
  auto b = std::make_shared<std::string>();
  auto norm = std::make_shared<double>(2.0 * kSegmentLength);
  auto rate = std::make_shared<double>(1000.0);
  cmd->add_option("--a", *a, "first trajectory CSV")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--b", *b, "second trajectory CSV")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--normalization", *norm,
                  "length scale dividing the error [m]")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--rate", *rate, "resampling rate [Hz]")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--out", cli.out_dir, "output directory (optional)");
  cmd->callback([&cli, a, b, norm, rate] {
    cli.selected = "compare";
    cli.params = ordered_json{{"a", *a},
                              {"b", *b},
                              {"normalization_m", *norm},
                              {"rate_hz", *rate}};
  });
}

void add_replay(Cli& cli) {
  auto* cmd = cli.app.add_subcommand(
      "replay", "Re-run a recorded manifest; outputs are byte-identical");
  cmd->add_option("dir", cli.replay_src,
                  "output directory of a previous run (or manifest path)")
      ->required();
  cmd->add_option("--out", cli.out_dir,
                  "destination directory (default: <dir>-replay)");
  cmd->callback([&cli] { cli.selected = "replay"; });
}

}  // namespace

int main(int argc, char** argv) {
  Cli cli;
  runners()["delay-law"] = run_delay_law;
  runners()["poles"] = run_poles;
  runners()["step"] = run_step;
  runners()["drop"] = run_drop_cmd;
  runners()["quadruped"] = run_quadruped_cmd;
  runners()["sweep"] = run_sweep_cmd;
  runners()["compare"] = run_compare;

  add_delay_law(cli);
  add_poles(cli);
  add_step(cli);
  add_drop(cli);
  add_quadruped(cli);
  add_sweep(cli);
  add_compare(cli);
  add_replay(cli);

  try {
    cli.app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return cli.app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return cli.app.exit(e);
  } catch (const CLI::ParseError& e) {
    cli.app.exit(e);  // prints the diagnostic naming the offending flag
    return 2;
  }

  try {
    if (cli.selected == "replay") {
      run_replay(cli.replay_src, cli.out_dir);
    } else {
      dispatch(cli.selected, cli.params, cli.out_dir);
    }
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "runtime failure: " << e.what() << "\n";
    return 1;
  }
}
