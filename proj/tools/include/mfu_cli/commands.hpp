#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mfu/control.hpp"

namespace mfu::cli {

enum class Command { DemoLogistic, DemoHetero, DemoHeteroBlocked, Sample };

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRuntime = 3;

struct RunConfig {
  Command command = Command::DemoLogistic;
  std::size_t n_samples = 100;
  std::optional<std::size_t> burnin;  // nullopt: drop the first half
  std::uint64_t seed = 0;
  Engine engine = Engine::Slice;
  std::optional<std::string> out_path;
  std::optional<std::string> data_path;
  std::string model;
  double prior_mean = 0.0;
  double prior_sd = 1e6;
};

int cmd_demo_logistic(const RunConfig& config, std::ostream& out);
int cmd_demo_hetero(const RunConfig& config, bool blocked, std::ostream& out);
int cmd_sample(const RunConfig& config, std::ostream& out);

/// Parses `args` (without the program name) and runs the chosen command.
/// Sampler and model failures are reported on `err` with exit code 3; flag
/// errors print usage with exit code 2.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mfu::cli
