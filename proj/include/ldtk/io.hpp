#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ldtk/entropy.hpp"
#include "ldtk/measure.hpp"
#include "ldtk/metric_space.hpp"
#include "ldtk/partition.hpp"
#include "ldtk/sanov.hpp"

namespace ldtk {

using nlohmann::json;

// JSON spec {"kind": "interval"|"finite"|"cloud", "bounds"|"matrix"|"points"}.
// Throws std::invalid_argument naming the offending field.
MetricSpace space_from_json(const json& j);

// JSON spec {"family": "...", "params": {...}} or
// {"family": "finite", "support": [...], "weights": [...]};
// empirical input as {"family": "empirical", "file": path}.
SourceMeasure measure_from_json(const json& j);

json partition_to_json(const TaggedPartition& part);
json measure_to_json(const FiniteMeasure& m);

// Deterministic number formatting shared by every CSV/JSON emitter: shortest
// representation that round-trips, so identical values give identical bytes.
std::string format_number(double v);

std::string ladder_csv(const EntropyLadder& ladder, const std::vector<double>* s_log_s);
std::string rate_csv(const RateReport& report);

struct ExperimentConfig {
    MetricSpace space;
    SourceMeasure mu;
    std::optional<SourceMeasure> nu;
    int depth = 4;
    int m0 = 1;
    std::vector<int> n_list;
    int samples = 50;       // per-replicate sample count for equivalence checks
    long long reps = 1000;
    double eps = 0.05;
    double radius = 0.1;
    std::uint64_t seed = 1;
    bool seed_explicit = false;  // Monte Carlo commands insist on a real seed
    std::string out;
    std::string format = "csv";

    ExperimentConfig(MetricSpace s, SourceMeasure m) : space(std::move(s)), mu(std::move(m)) {}
};

// Reads the config JSON; flag overrides are applied by the CLI before calling
// the command.
ExperimentConfig config_from_json(const json& j);
ExperimentConfig config_from_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace ldtk
