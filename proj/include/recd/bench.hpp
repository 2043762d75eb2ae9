#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "recd/adversarial.hpp"
#include "recd/detectors.hpp"
#include "recd/enhance_ga.hpp"
#include "recd/enhance_se.hpp"
#include "recd/graph.hpp"
#include "recd/metrics.hpp"
#include "recd/partition.hpp"

namespace recd {

enum class EnhanceMethod { None, Ga, Se };

std::string to_string(EnhanceMethod m);
std::optional<EnhanceMethod> method_from_string(std::string_view name);

struct ExperimentConfig {
    std::string dataset_name;
    DetectorSpec detector;
    EnhanceMethod method = EnhanceMethod::None;
    GaConfig ga;
    SeConfig se;
    std::optional<AttackConfig> attack; // optional pre-step
    int trials = 50;
    std::uint64_t base_seed = 1;
};

struct ExperimentResult {
    MetricsReport report;               // the configured method
    std::optional<MetricsReport> reference; // unenhanced run under the same seeds
    std::vector<std::string> trial_errors;
    double wall_seconds = 0.0;
};

// Repeat the trial protocol: derive the trial seed, optionally attack,
// optionally enhance, detect, and evaluate NMI/ARI against the ground truth
// on the original vertex set. Enhanced runs carry RIMP columns computed
// against a reference run that consumes identical per-trial seeds.
ExperimentResult run_experiment(const Graph& g, const Partition& truth,
                                const ExperimentConfig& cfg);

struct DatasetEntry {
    std::string graph_path;
    std::string labels_path;
    int vertex_count = 0;
    int edge_count = 0;
    int communities = 0;
};

class DatasetRegistry {
public:
    // Parses and validates both files; duplicate names are rejected.
    const DatasetEntry& register_dataset(const std::string& name, const std::string& graph_path,
                                         const std::string& labels_path);
    const DatasetEntry& at(const std::string& name) const;
    bool contains(const std::string& name) const { return entries_.contains(name); }
    const std::map<std::string, DatasetEntry>& entries() const { return entries_; }

private:
    std::map<std::string, DatasetEntry> entries_;
};

// Benchmark config document: a dataset registry plus a list of experiments.
struct BenchmarkConfig {
    DatasetRegistry registry;
    std::vector<ExperimentConfig> experiments;
    std::string csv_path;
    std::string json_path;
};

BenchmarkConfig load_benchmark_config(const std::string& path);

// Run every experiment and write the CSV/JSON reports. Timing goes to the
// returned summaries only; the report files stay byte-deterministic.
std::vector<ExperimentResult> run_benchmark(const BenchmarkConfig& cfg, std::ostream* log);

} // namespace recd
