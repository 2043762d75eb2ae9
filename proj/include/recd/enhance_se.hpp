#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "recd/detectors.hpp"
#include "recd/graph.hpp"
#include "recd/partition.hpp"
#include "recd/rng.hpp"
#include "recd/similarity.hpp"

namespace recd {

// Symmetric integer matrix counting same-community co-assignments across an
// ensemble of partitions. Diagonal is implicit (always the ensemble size).
struct CoOccurrence {
    int vertex_count = 0;
    int total_partitions = 0;
    std::unordered_map<std::uint64_t, int> counts;

    int count(int i, int j) const {
        auto it = counts.find(pair_key(i, j));
        return it == counts.end() ? 0 : it->second;
    }
};

CoOccurrence build_cooccurrence(std::span<const Partition> partitions);

// Outcome of thresholding the co-occurrence graph: its components, the
// large components kept as core communities, and the leftover vertices.
struct PruneResult {
    int threshold = 0;
    Partition components;
    std::vector<std::vector<int>> cores;
    std::vector<int> isolated;
};

PruneResult prune(const CoOccurrence& co, int threshold, int min_core_size);

// Mean pairwise co-occurrence inside a block (needs at least two members).
double cluster_consensus(const CoOccurrence& co, std::span<const int> block);

// Size-weighted sum of cluster consensus; singleton blocks contribute zero.
double partition_score(const CoOccurrence& co, const Partition& parts);

enum class ThresholdMode { Consensus, Approx };

struct SeConfig {
    double beta_add = 1.5;
    int samples_per_index = 10;
    std::vector<SimilarityKind> indices{kAllSimilarityKinds.begin(), kAllSimilarityKinds.end()};
    SimilarityParams sim_params;
    int min_core_size = 3;
    std::optional<int> ground_truth_k;
    ThresholdMode threshold_mode = ThresholdMode::Consensus;
};

// One similarity-weighted, addition-only rewiring batch:
// |indices| * samples_per_index graphs, each with ceil(m * beta_add) new edges.
std::vector<Graph> generate_rewired_graphs(const Graph& g, const SeConfig& cfg, Rng& rng,
                                           std::vector<std::string>* warnings = nullptr);

// Pick the pruning threshold: consensus mode maximizes the partition score
// over the distinct co-occurrence values, approx mode matches the core count
// to the ground truth. Ties resolve to the smallest workable threshold.
std::pair<int, PruneResult> select_threshold(const CoOccurrence& co, const SeConfig& cfg);

// Give every non-core vertex the core of maximum average similarity per
// index, then combine the per-index picks by relative majority vote.
Partition assign_isolated(const PruneResult& pr, std::span<const SimilarityMatrix> sims);

struct SeResult {
    Partition partition;
    int threshold = -1;
    bool fallback = false; // no cores formed; plain detection was returned
    std::vector<std::string> warnings;
};

SeResult run_se(const Graph& g, const DetectorSpec& detector, const SeConfig& cfg, Rng& rng);

} // namespace recd
