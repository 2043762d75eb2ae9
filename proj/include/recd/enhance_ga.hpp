#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "recd/detectors.hpp"
#include "recd/graph.hpp"
#include "recd/partition.hpp"
#include "recd/rng.hpp"

namespace recd {

// The four community edge-modification pools derived from a partition.
// intra_del and inter_del split the edge set; intra_add and inter_add split
// the non-edge set. Materialized explicitly, so intended for desk-scale
// graphs (the genetic search itself is quadratic in spirit anyway).
struct CandidateSets {
    std::vector<Edge> intra_add;
    std::vector<Edge> intra_del;
    std::vector<Edge> inter_add;
    std::vector<Edge> inter_del;
};

CandidateSets build_candidate_sets(const Graph& g, const Partition& p);

// Pools an individual may draw genes from, resolved by comparing the
// estimated community count against the ground truth:
//   phi_s > phi_real -> (whole non-edge set, inter_del)
//   phi_s < phi_real -> (intra_add, whole edge set)
//   equal or unknown -> (intra_add, inter_del)
struct AdmissiblePools {
    std::vector<Edge> add_pool;
    std::vector<Edge> del_pool;
};

AdmissiblePools admissible_pools(const CandidateSets& cs, int phi_s,
                                 std::optional<int> phi_real);

struct GaConfig {
    int population_size = 120;
    double crossover_rate = 0.8;
    double mutation_rate = 0.02;
    double elitism_fraction = 0.2;
    int generations = 1000;
    double beta_add = 0.1;
    double beta_del = 0.05;
    std::optional<int> ground_truth_k;
    int stagnation_limit = 100; // stop when the best fitness is flat this long
    // Instrumentation: called with each evaluated generation's population
    // (generation 0 is the initial one).
    std::function<void(int generation, const std::vector<ModificationScheme>&)> observer;
};

struct FitnessBreakdown {
    double q = 0.0;
    int communities = 0;
    double fitness = 0.0;
};

// Rewire, detect on the rewired graph, and score |Q| damped by
// exp(|phi_s - phi_real|); without ground truth the score is plain |Q|.
FitnessBreakdown evaluate_fitness(const Graph& g, const ModificationScheme& scheme,
                                  const DetectorSpec& detector,
                                  std::optional<int> phi_real, Rng& rng);

inline double fitness(const Graph& g, const ModificationScheme& scheme,
                      const DetectorSpec& detector, std::optional<int> phi_real, Rng& rng) {
    return evaluate_fitness(g, scheme, detector, phi_real, rng).fitness;
}

struct GaResult {
    Graph enhanced;
    Partition partition;
    ModificationScheme best;
    double best_fitness = 0.0;
    std::vector<double> best_so_far; // running max per generation
    int generations_run = 0;
    std::vector<std::string> warnings;
};

// Evolutionary search over modification schemes: roulette selection,
// two-point crossover per segment, per-gene mutation, elitist replacement of
// the worst offspring. All per-individual randomness flows through seeds
// derived from the passed generator.
GaResult run_ga(const Graph& g, const DetectorSpec& detector, const GaConfig& cfg, Rng& rng);

} // namespace recd
