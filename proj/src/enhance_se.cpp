#include "recd/enhance_se.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "recd/error.hpp"

namespace recd {

CoOccurrence build_cooccurrence(std::span<const Partition> partitions) {
    if (partitions.empty()) throw EnsembleError("empty partition ensemble");
    CoOccurrence co;
    co.vertex_count = partitions.front().size();
    co.total_partitions = static_cast<int>(partitions.size());
    for (const Partition& p : partitions) {
        if (p.size() != co.vertex_count)
            throw EnsembleError("ensemble partitions cover different vertex sets");
        for (const auto& block : p.blocks())
            for (std::size_t i = 0; i < block.size(); ++i)
                for (std::size_t j = i + 1; j < block.size(); ++j)
                    ++co.counts[pair_key(block[i], block[j])];
    }
    return co;
}

PruneResult prune(const CoOccurrence& co, int threshold, int min_core_size) {
    if (threshold < 0 || threshold > co.total_partitions)
        throw DomainError("threshold outside [0, ensemble size]");
    const int n = co.vertex_count;

    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (const auto& [key, cnt] : co.counts) {
        if (cnt < threshold) continue;
        int u = static_cast<int>(key >> 32);
        int v = static_cast<int>(key & 0xFFFFFFFFULL);
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }

    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    int next = 0;
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (comp[static_cast<std::size_t>(s)] != -1) continue;
        comp[static_cast<std::size_t>(s)] = next;
        stack.assign(1, s);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : adj[static_cast<std::size_t>(u)])
                if (comp[static_cast<std::size_t>(v)] == -1) {
                    comp[static_cast<std::size_t>(v)] = next;
                    stack.push_back(v);
                }
        }
        ++next;
    }

    PruneResult pr;
    pr.threshold = threshold;
    pr.components = Partition(std::move(comp));
    for (const auto& block : pr.components.blocks()) {
        if (static_cast<int>(block.size()) >= min_core_size)
            pr.cores.push_back(block);
        else
            pr.isolated.insert(pr.isolated.end(), block.begin(), block.end());
    }
    std::sort(pr.isolated.begin(), pr.isolated.end());
    return pr;
}

double cluster_consensus(const CoOccurrence& co, std::span<const int> block) {
    if (block.size() < 2) throw DomainError("cluster consensus undefined for singleton blocks");
    double sum = 0.0;
    for (std::size_t i = 0; i < block.size(); ++i)
        for (std::size_t j = i + 1; j < block.size(); ++j)
            sum += static_cast<double>(co.count(block[i], block[j]));
    double pairs = 0.5 * static_cast<double>(block.size()) * static_cast<double>(block.size() - 1);
    return sum / pairs;
}

double partition_score(const CoOccurrence& co, const Partition& parts) {
    if (parts.size() != co.vertex_count)
        throw DomainError("partition does not match the co-occurrence universe");
    const double n = static_cast<double>(parts.size());
    double score = 0.0;
    for (const auto& block : parts.blocks()) {
        if (block.size() < 2) continue; // singletons carry no co-assignment evidence
        score += (static_cast<double>(block.size()) / n) * cluster_consensus(co, block);
    }
    return score;
}

std::pair<int, PruneResult> select_threshold(const CoOccurrence& co, const SeConfig& cfg) {
    if (co.counts.empty())
        throw EnhancementError("co-occurrence graph has no edges; nothing to prune");
    if (cfg.threshold_mode == ThresholdMode::Approx && !cfg.ground_truth_k)
        throw ConfigError("approx threshold mode requires the ground-truth community count");

    std::vector<int> distinct;
    distinct.reserve(co.counts.size());
    for (const auto& [key, cnt] : co.counts) {
        (void)key;
        distinct.push_back(cnt);
    }
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    // Pruning at any t in (d_{i-1}, d_i] yields the same graph; scanning the
    // distinct values covers every equivalence class, and each class is
    // represented by its smallest workable threshold.
    std::optional<double> best_objective;
    std::optional<int> best_t;
    std::optional<PruneResult> best_pr;
    int prev = 0;
    for (int value : distinct) {
        int representative = prev + 1;
        PruneResult pr = prune(co, representative, cfg.min_core_size);
        double objective;
        if (cfg.threshold_mode == ThresholdMode::Consensus) {
            objective = partition_score(co, pr.components);
        } else {
            objective = -std::abs(static_cast<double>(pr.cores.size()) -
                                  static_cast<double>(*cfg.ground_truth_k));
        }
        if (!best_objective || objective > *best_objective) {
            best_objective = objective;
            best_t = representative;
            best_pr = std::move(pr);
        }
        prev = value;
    }
    return {*best_t, std::move(*best_pr)};
}

Partition assign_isolated(const PruneResult& pr, std::span<const SimilarityMatrix> sims) {
    if (pr.cores.empty()) throw EnhancementError("no core communities to assign into");
    if (sims.empty()) throw ConfigError("isolated-vertex assignment needs similarity matrices");

    const int n = pr.components.size();
    std::vector<int> labels(static_cast<std::size_t>(n), -1);
    for (std::size_t k = 0; k < pr.cores.size(); ++k)
        for (int v : pr.cores[k]) labels[static_cast<std::size_t>(v)] = static_cast<int>(k);

    std::size_t largest_core = 0;
    for (std::size_t k = 1; k < pr.cores.size(); ++k)
        if (pr.cores[k].size() > pr.cores[largest_core].size()) largest_core = k;

    for (int v : pr.isolated) {
        std::vector<int> votes(pr.cores.size(), 0);
        std::vector<double> mean_sum(pr.cores.size(), 0.0); // summed over indices, for ties
        bool any_vote = false;
        for (const SimilarityMatrix& sim : sims) {
            std::optional<std::size_t> pick;
            double best_mean = 0.0;
            for (std::size_t k = 0; k < pr.cores.size(); ++k) {
                double sum = 0.0;
                for (int j : pr.cores[k]) sum += sim.score(v, j);
                double mean = sum / static_cast<double>(pr.cores[k].size());
                mean_sum[k] += mean;
                if (mean > best_mean) {
                    best_mean = mean;
                    pick = k;
                }
            }
            if (pick) { // an all-zero index abstains
                ++votes[*pick];
                any_vote = true;
            }
        }
        std::size_t chosen;
        if (!any_vote) {
            chosen = largest_core;
        } else {
            chosen = 0;
            for (std::size_t k = 1; k < pr.cores.size(); ++k) {
                if (votes[k] > votes[chosen] ||
                    (votes[k] == votes[chosen] && mean_sum[k] > mean_sum[chosen]))
                    chosen = k;
            }
        }
        labels[static_cast<std::size_t>(v)] = static_cast<int>(chosen);
    }
    return Partition(std::move(labels));
}

namespace {

std::vector<Graph> rewire_with_matrices(const Graph& g, const SeConfig& cfg,
                                        std::span<const SimilarityMatrix> sims, Rng& rng,
                                        std::vector<std::string>* warnings) {
    const auto budget =
        static_cast<std::size_t>(std::ceil(static_cast<double>(g.edge_count()) * cfg.beta_add));
    if (static_cast<long long>(budget) > g.nonedge_count())
        throw CapacityError("addition budget exceeds the non-edge universe");

    std::vector<Graph> out;
    out.reserve(sims.size() * static_cast<std::size_t>(cfg.samples_per_index));
    for (const SimilarityMatrix& sim : sims) {
        std::vector<std::pair<Edge, double>> candidates;
        candidates.reserve(sim.entries().size());
        for (const auto& [e, s] : sim.entries())
            if (!g.has_edge(e.first, e.second)) candidates.push_back({e, s});
        if (warnings && candidates.size() < budget)
            warnings->push_back("index " + to_string(sim.kind()) + " offers " +
                                std::to_string(candidates.size()) + " weighted candidates for a budget of " +
                                std::to_string(budget) + "; remainder drawn uniformly");
        for (int s = 0; s < cfg.samples_per_index; ++s) {
            Rng child(rng());
            ModificationScheme scheme;
            scheme.add = sample_nonedges(g, budget, candidates, child);
            out.push_back(apply_modification(g, scheme));
        }
    }
    return out;
}

std::vector<SimilarityMatrix> compute_all(const Graph& g, const SeConfig& cfg) {
    std::vector<SimilarityMatrix> sims;
    sims.reserve(cfg.indices.size());
    for (SimilarityKind kind : cfg.indices)
        sims.push_back(compute_similarity(g, kind, cfg.sim_params));
    return sims;
}

void validate(const SeConfig& cfg) {
    if (cfg.beta_add <= 0.0) throw ConfigError("addition budget must be positive");
    if (cfg.samples_per_index < 1) throw ConfigError("samples per index must be at least 1");
    if (cfg.indices.empty()) throw ConfigError("at least one similarity index is required");
    if (cfg.min_core_size < 1) throw ConfigError("core size floor must be at least 1");
}

} // namespace

std::vector<Graph> generate_rewired_graphs(const Graph& g, const SeConfig& cfg, Rng& rng,
                                           std::vector<std::string>* warnings) {
    validate(cfg);
    auto sims = compute_all(g, cfg);
    return rewire_with_matrices(g, cfg, sims, rng, warnings);
}

SeResult run_se(const Graph& g, const DetectorSpec& detector, const SeConfig& cfg, Rng& rng) {
    validate(cfg);
    SeResult result;
    const std::uint64_t master = rng();

    auto sims = compute_all(g, cfg);
    Rng rewire_rng(derive_seed(master, seed_tag("se-rewire")));
    std::vector<Graph> rewired =
        rewire_with_matrices(g, cfg, sims, rewire_rng, &result.warnings);

    std::vector<Partition> partitions;
    partitions.reserve(rewired.size());
    for (std::size_t i = 0; i < rewired.size(); ++i) {
        Rng child(derive_seed(master, seed_tag("se-detect"), i));
        partitions.push_back(detect(detector, rewired[i], child));
    }

    CoOccurrence co = build_cooccurrence(partitions);
    try {
        auto [threshold, pr] = select_threshold(co, cfg);
        if (pr.cores.empty()) throw EnhancementError("pruning produced no core communities");
        result.partition = assign_isolated(pr, sims);
        result.threshold = threshold;
    } catch (const EnhancementError& e) {
        result.warnings.push_back(std::string("enhancement failed (") + e.what() +
                                  "); falling back to plain detection");
        Rng child(derive_seed(master, seed_tag("se-fallback")));
        result.partition = detect(detector, g, child);
        result.fallback = true;
    }
    return result;
}

} // namespace recd
