#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ebpoisson/experiment.hpp"

namespace ebp::cli {

/// Raw flag values plus the option handles needed to tell "given" from "default".
struct Flags {
  std::string config;
  std::string case_name = "case2d";
  std::string scheme = "linear";
  bool fallback = true;
  std::string rhs = "exact";
  int level = 3;
  std::vector<int> nodes;
  std::string solver = "auto";
  double tol = 1e-13;
  std::size_t max_iterations = 0;
  std::string out = "out";
  std::string format = "csv";
  double left = -0.3156;
  double right = 0.3156;
  int resolution = 101;
  double theta_step = 0.001;
  bool dump_matrix = false;
  bool verbose = false;

  std::vector<CLI::Option*> given;
  bool was_given(const std::string& long_name) const;
};

/// Resolved settings for one subcommand invocation.
struct Settings {
  ExperimentConfig experiment;
  std::filesystem::path out;
  std::string format = "csv";
  int level = 3;
  bool level_given = false;
  int resolution = 101;
  double theta_step = 0.001;
  bool dump_matrix = false;
};

void register_common(CLI::App& sub, Flags& flags);

/// Defaults, then the JSON document from --config (a path, or inline JSON
/// starting with '{'), then explicit flags. Throws UsageError on bad input.
Settings resolve(const Flags& flags, const std::vector<int>& default_nodes);

}  // namespace ebp::cli
