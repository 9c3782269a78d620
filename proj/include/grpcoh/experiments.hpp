#pragma once

// Batch experiments behind the CLI subcommands. A run takes a RunConfig and
// produces a deterministic JSON report whose summary gates the exit code.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grpcoh/json_io.hpp"

namespace grpcoh {

struct RunConfig {
  std::string command;
  std::string group = "zn";
  std::optional<int> rank;
  double p = 2.0;
  std::string norm = "l2";  // l1 | l2 | lp | op
  int kmax = 100;
  int imax = 64;
  std::optional<int> radius;
  int window = 6;
  int pad = 2;
  std::optional<double> eps;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string input;  // path to a sum or cocycle JSON file
  std::optional<int> samples;
  int support = 3;  // half-width of random supports
  int truncation = 401;
  int stages = 16;
  int remove = 1;  // ends: radius of the removed ball
  int degree = 0;  // koszul: 0 runs every degree
  std::vector<std::string> monomials;
  bool timing = false;

  /// Keys mirror the CLI flags; unknown keys are rejected.
  static RunConfig from_json(const json& j);
};

struct Report {
  json body;
  bool pass = false;
  std::string csv;  // empty unless the command emits a certificate

  int exit_code() const { return pass ? 0 : 2; }
  std::string to_json() const;
  /// (k, displacement, bound) rows; only certificate commands have them.
  std::string to_csv() const;
};

const std::vector<std::string>& command_names();

/// Runs one experiment. Configuration and input errors throw Error.
Report run_experiment(const RunConfig& cfg);

}  // namespace grpcoh
