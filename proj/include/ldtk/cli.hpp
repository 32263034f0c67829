#pragma once

#include <iosfwd>
#include <string>

#include "ldtk/io.hpp"

namespace ldtk {

// Exit codes: 0 success, 1 verification failure, 2 usage/config error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Individual subcommands, exposed for in-process testing. Each returns the
// process exit code and writes result files under config.out (or streams to
// `out` when config.out is empty).
int cmd_discretize(const ExperimentConfig& config, std::ostream& out);
int cmd_entropy(const ExperimentConfig& config, std::ostream& out);
int cmd_bl_dist(const ExperimentConfig& config, std::ostream& out);
int cmd_rate(const ExperimentConfig& config, std::ostream& out);
int cmd_verify(const ExperimentConfig& config, std::ostream& out);

}  // namespace ldtk
