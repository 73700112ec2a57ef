#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace daylit::cli {

// Exit codes.
inline constexpr int ok = 0;
inline constexpr int io_failure = 1;
inline constexpr int semantic_failure = 2;

struct Overrides {
  std::optional<int> patch_n;
  std::optional<double> k_diffuse;
  std::optional<double> k_beam;
  bool enable_overhang = false;
  std::optional<double> grid_height;
  std::optional<double> grid_spacing;
};

struct RunConfig {
  std::string command;
  std::string scene_path;
  std::string weather_path;
  std::string measured_path;
  std::string output_path;  // empty: stdout
  double edh = 0.0;
  bool emit_gnuplot = false;
  Overrides overrides;
};

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_grid(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Parses argv (without the program name) and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace daylit::cli
