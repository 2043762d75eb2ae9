#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recd/detectors.hpp"
#include "recd/enhance_ga.hpp"
#include "recd/graph.hpp"
#include "recd/partition.hpp"
#include "recd/rng.hpp"

namespace recd {

// The search for damaging swaps is cheaper than the enhancement search, so
// the attack GA defaults to a smaller population and fewer generations.
inline GaConfig default_attack_ga() {
    GaConfig ga;
    ga.population_size = 40;
    ga.mutation_rate = 0.1;
    ga.generations = 150;
    ga.stagnation_limit = 40;
    return ga;
}

struct AttackConfig {
    enum class Method { QAttack, DmDeception };
    Method method = Method::QAttack;
    int budget = 1;                      // q_attack: swap count; dm: greedy steps
    DetectorSpec detector;               // fitness detector for q_attack
    std::optional<int> target_community; // required for dm
    GaConfig ga = default_attack_ga();
};

// Degree-preserving evolutionary attack: double-edge swaps searched by a GA
// that minimizes the detector's modularity on the attacked graph. The degree
// sequence and edge count are preserved exactly.
Graph q_attack(const Graph& g, const Partition& truth, const AttackConfig& cfg, Rng& rng);

// Greedy community deception: each step applies the intra-target deletion or
// inter-target addition with the most negative modularity change against the
// truth partition, stopping early when no non-positive move remains.
Graph dm_deception(const Graph& g, const Partition& truth, const AttackConfig& cfg, Rng& rng,
                   std::vector<std::string>* warnings = nullptr);

struct ExtractionConfig {
    int seed_count = 1; // x
    int hops = 1;       // h
};

// Degree-weighted seed sampling, h-hop ego networks, induced union subgraph
// with the ground-truth labels restricted to it.
std::pair<Graph, Partition> extract_missing_data_subgraph(const Graph& g, const Partition& truth,
                                                          const ExtractionConfig& cfg, Rng& rng);

} // namespace recd
