#include "hybridleg/trajectory.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hybridleg {

namespace {

void append_num(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  out += buf;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

Trajectory LegTrajectory::hip_series() const {
  Trajectory out;
  out.time = time;
  out.value = z;
  out.diverged = diverged;
  return out;
}

std::string to_csv(const LegTrajectory& traj) {
  std::string out = "t,z,zdot,theta,thetadot,tau_motor,tau_spring,contact\n";
  out.reserve(out.size() + traj.size() * 64);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    append_num(out, traj.time[i]);
    out += ',';
    append_num(out, traj.z[i]);
    out += ',';
    append_num(out, traj.zdot[i]);
    out += ',';
    append_num(out, traj.theta[i]);
    out += ',';
    append_num(out, traj.thetadot[i]);
    out += ',';
    append_num(out, traj.tau_motor[i]);
    out += ',';
    append_num(out, traj.tau_spring[i]);
    out += ',';
    out += traj.contact[i] ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string to_csv(const Trajectory& traj, const std::string& value_name) {
  std::string out = "t," + value_name + "\n";
  out.reserve(out.size() + traj.time.size() * 28);
  for (std::size_t i = 0; i < traj.time.size(); ++i) {
    append_num(out, traj.time[i]);
    out += ',';
    append_num(out, traj.value[i]);
    out += '\n';
  }
  return out;
}

namespace {
void write_text(const std::string& text, const std::filesystem::path& file) {
  std::ofstream stream(file, std::ios::binary);
  if (!stream) {
    throw std::runtime_error("cannot open for writing: " + file.string());
  }
  stream << text;
  if (!stream) {
    throw std::runtime_error("write failed: " + file.string());
  }
}
}  // namespace

void write_csv(const LegTrajectory& traj, const std::filesystem::path& file) {
  write_text(to_csv(traj), file);
}

void write_csv(const Trajectory& traj, const std::string& value_name,
               const std::filesystem::path& file) {
  write_text(to_csv(traj, value_name), file);
}

Trajectory read_series_csv(const std::filesystem::path& file) {
  std::ifstream stream(file);
  if (!stream) {
    throw std::runtime_error("cannot open for reading: " + file.string());
  }
  std::string line;
  if (!std::getline(stream, line)) {
    throw std::runtime_error("empty CSV: " + file.string());
  }
  const auto header = split_line(line);
  if (header.size() < 2) {
    throw std::runtime_error("CSV needs at least two columns: " +
                             file.string());
  }
  std::size_t t_col = 0;
  std::size_t v_col = 1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "t" || header[i] == "time") t_col = i;
  }
  bool found = false;
  for (const char* name : {"z", "theta", "value"}) {
    for (std::size_t i = 0; i < header.size() && !found; ++i) {
      if (header[i] == name) {
        v_col = i;
        found = true;
      }
    }
    if (found) break;
  }

  Trajectory out;
  while (std::getline(stream, line)) {
    if (line.empty()) continue;
    const auto cells = split_line(line);
    if (cells.size() <= std::max(t_col, v_col)) {
      throw std::runtime_error("short CSV row in " + file.string());
    }
    out.time.push_back(std::stod(cells[t_col]));
    out.value.push_back(std::stod(cells[v_col]));
  }
  return out;
}

}  // namespace hybridleg
