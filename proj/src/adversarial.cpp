#include "recd/adversarial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "recd/error.hpp"
#include "recd/metrics.hpp"

namespace recd {

namespace {

// One degree-preserving rewiring step: delete (u,v) and (x,y), add (u,x)
// and (v,y). Feasibility is stateful, so genes are re-checked at application.
struct SwapGene {
    int u, v, x, y;
};

struct EdgeSetView {
    std::unordered_set<std::uint64_t> present;

    explicit EdgeSetView(const Graph& g) {
        present.reserve(g.edges().size() * 2);
        for (const Edge& e : g.edges()) present.insert(pair_key(e.first, e.second));
    }
    bool has(int a, int b) const { return present.contains(pair_key(a, b)); }
    void del(int a, int b) { present.erase(pair_key(a, b)); }
    void add(int a, int b) { present.insert(pair_key(a, b)); }
};

bool swap_feasible(const EdgeSetView& es, const SwapGene& s) {
    int ids[4] = {s.u, s.v, s.x, s.y};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (ids[i] == ids[j]) return false;
    return es.has(s.u, s.v) && es.has(s.x, s.y) && !es.has(s.u, s.x) && !es.has(s.v, s.y);
}

void apply_swap(EdgeSetView& es, const SwapGene& s) {
    es.del(s.u, s.v);
    es.del(s.x, s.y);
    es.add(s.u, s.x);
    es.add(s.v, s.y);
}

Graph graph_from_view(const Graph& g, const EdgeSetView& es) {
    std::vector<Edge> edges;
    edges.reserve(es.present.size());
    for (std::uint64_t key : es.present)
        edges.push_back({static_cast<int>(key >> 32), static_cast<int>(key & 0xFFFFFFFFULL)});
    return Graph(g.vertex_count(), std::move(edges), g.ids());
}

// Skips infeasible genes; every applied swap preserves all degrees.
Graph apply_swaps(const Graph& g, const std::vector<SwapGene>& genes) {
    EdgeSetView es(g);
    for (const SwapGene& s : genes)
        if (swap_feasible(es, s)) apply_swap(es, s);
    return graph_from_view(g, es);
}

std::optional<SwapGene> random_swap(const Graph& g, const EdgeSetView& es, Rng& rng) {
    const auto& edges = g.edges();
    if (edges.size() < 2) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int attempt = 0; attempt < 200; ++attempt) {
        Edge e1 = edges[pick(rng)];
        Edge e2 = edges[pick(rng)];
        if (coin(rng)) std::swap(e2.first, e2.second); // both pairings reachable
        SwapGene s{e1.first, e1.second, e2.first, e2.second};
        if (swap_feasible(es, s)) return s;
    }
    return std::nullopt;
}

double detected_modularity(const Graph& attacked, const DetectorSpec& det, Rng& rng) {
    Partition part = detect(det, attacked, rng);
    return modularity(attacked, part);
}

} // namespace

Graph q_attack(const Graph& g, const Partition& truth, const AttackConfig& cfg, Rng& rng) {
    (void)truth; // the attack itself is label-free; callers evaluate against truth
    if (cfg.budget < 0) throw ConfigError("attack budget must be nonnegative");
    if (cfg.budget == 0) return g;
    if (g.edge_count() < 2) throw ConfigError("q_attack needs at least two edges");

    const std::uint64_t master = rng();
    const std::size_t pop_size = static_cast<std::size_t>(std::max(2, cfg.ga.population_size));
    const std::size_t genes = static_cast<std::size_t>(cfg.budget);

    Rng init_rng(derive_seed(master, seed_tag("qa-init")));
    std::vector<std::vector<SwapGene>> population(pop_size);
    for (auto& individual : population) {
        EdgeSetView scratch(g);
        for (std::size_t k = 0; k < genes; ++k) {
            auto gene = random_swap(g, scratch, init_rng);
            if (!gene) break; // best effort when the swap space runs dry
            apply_swap(scratch, *gene);
            individual.push_back(*gene);
        }
    }

    // fitness = -Q of the detected partition on the attacked graph; roulette
    // weights use 1 - Q, which is nonnegative and ranks identically
    auto evaluate = [&](const std::vector<SwapGene>& ind, std::uint64_t gen, std::uint64_t slot) {
        Rng child(derive_seed(master, seed_tag("qa-eval") ^ gen, slot));
        return -detected_modularity(apply_swaps(g, ind), cfg.detector, child);
    };

    std::vector<double> fitness(pop_size);
    for (std::size_t i = 0; i < pop_size; ++i) fitness[i] = evaluate(population[i], 0, i);

    const std::size_t elite_count = std::min(
        pop_size, static_cast<std::size_t>(
                      std::ceil(cfg.ga.elitism_fraction * static_cast<double>(pop_size))));
    double best_ever = *std::max_element(fitness.begin(), fitness.end());
    int stagnant = 0;

    for (int gen = 1; gen <= cfg.ga.generations; ++gen) {
        Rng gen_rng(derive_seed(master, seed_tag("qa-gen"), static_cast<std::uint64_t>(gen)));

        std::vector<std::size_t> order(pop_size);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fitness[a] > fitness[b]; });
        std::vector<std::vector<SwapGene>> elites;
        for (std::size_t e = 0; e < elite_count; ++e) elites.push_back(population[order[e]]);

        std::vector<double> weights(pop_size);
        double total = 0.0;
        for (std::size_t i = 0; i < pop_size; ++i) {
            weights[i] = std::max(0.0, 1.0 + fitness[i]); // 1 - Q
            total += weights[i];
        }
        auto roulette = [&]() {
            if (total <= 0.0) {
                std::uniform_int_distribution<std::size_t> dist(0, pop_size - 1);
                return dist(gen_rng);
            }
            std::uniform_real_distribution<double> dist(0.0, total);
            double mark = dist(gen_rng);
            double acc = 0.0;
            for (std::size_t i = 0; i < pop_size; ++i) {
                acc += weights[i];
                if (mark < acc) return i;
            }
            return pop_size - 1;
        };

        std::vector<std::vector<SwapGene>> offspring;
        offspring.reserve(pop_size);
        for (std::size_t i = 0; i < pop_size; ++i) offspring.push_back(population[roulette()]);

        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (std::size_t i = 0; i + 1 < pop_size; i += 2) {
            if (unit(gen_rng) >= cfg.ga.crossover_rate) continue;
            auto& a = offspring[i];
            auto& b = offspring[i + 1];
            std::size_t len = std::min(a.size(), b.size());
            if (len == 0) continue;
            std::uniform_int_distribution<std::size_t> cut_dist(0, len);
            std::size_t c1 = cut_dist(gen_rng), c2 = cut_dist(gen_rng);
            if (c1 > c2) std::swap(c1, c2);
            for (std::size_t k = c1; k < c2; ++k) std::swap(a[k], b[k]);
        }

        for (auto& individual : offspring) {
            EdgeSetView scratch(g);
            for (auto& gene : individual) {
                if (unit(gen_rng) < cfg.ga.mutation_rate) {
                    auto fresh = random_swap(g, scratch, gen_rng);
                    if (fresh) gene = *fresh;
                }
                if (swap_feasible(scratch, gene)) apply_swap(scratch, gene);
            }
        }

        std::vector<double> off_fitness(pop_size);
        for (std::size_t i = 0; i < pop_size; ++i)
            off_fitness[i] = evaluate(offspring[i], static_cast<std::uint64_t>(gen), i);

        std::vector<std::size_t> worst(pop_size);
        std::iota(worst.begin(), worst.end(), 0);
        std::stable_sort(worst.begin(), worst.end(), [&](std::size_t a, std::size_t b) {
            return off_fitness[a] < off_fitness[b];
        });
        for (std::size_t e = 0; e < elites.size(); ++e) {
            std::size_t slot = worst[e];
            offspring[slot] = elites[e];
            off_fitness[slot] =
                evaluate(offspring[slot], static_cast<std::uint64_t>(gen), pop_size + e);
        }

        population = std::move(offspring);
        fitness = std::move(off_fitness);

        double gen_best = *std::max_element(fitness.begin(), fitness.end());
        if (gen_best > best_ever + 1e-12) {
            best_ever = gen_best;
            stagnant = 0;
        } else if (++stagnant >= cfg.ga.stagnation_limit) {
            break;
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < pop_size; ++i)
        if (fitness[i] > fitness[best]) best = i;
    return apply_swaps(g, population[best]);
}

Graph dm_deception(const Graph& g, const Partition& truth, const AttackConfig& cfg, Rng& rng,
                   std::vector<std::string>* warnings) {
    (void)rng; // the greedy scan is deterministic
    if (cfg.budget < 0) throw ConfigError("attack budget must be nonnegative");
    if (!cfg.target_community || *cfg.target_community < 0 ||
        *cfg.target_community >= truth.community_count())
        throw ConfigError("dm deception requires a valid target community");
    if (truth.size() != g.vertex_count())
        throw DomainError("truth partition does not cover the graph");

    const int target = *cfg.target_community;
    const int k = truth.community_count();

    // community aggregates for O(k) modularity deltas
    std::vector<double> intra(static_cast<std::size_t>(k), 0.0);
    std::vector<double> degsum(static_cast<std::size_t>(k), 0.0);
    double m = static_cast<double>(g.edge_count());
    EdgeSetView es(g);
    for (const Edge& e : g.edges())
        if (truth.label_of(e.first) == truth.label_of(e.second))
            intra[static_cast<std::size_t>(truth.label_of(e.first))] += 1.0;
    for (int v = 0; v < g.vertex_count(); ++v)
        degsum[static_cast<std::size_t>(truth.label_of(v))] += static_cast<double>(g.degree(v));
    std::vector<double> degree(static_cast<std::size_t>(g.vertex_count()));
    for (int v = 0; v < g.vertex_count(); ++v) degree[static_cast<std::size_t>(v)] = g.degree(v);

    auto q_of = [&](double mm, const std::vector<double>& li, const std::vector<double>& ds) {
        double q = 0.0;
        for (int c = 0; c < k; ++c) {
            double frac = ds[static_cast<std::size_t>(c)] / (2.0 * mm);
            q += li[static_cast<std::size_t>(c)] / mm - frac * frac;
        }
        return q;
    };

    std::vector<int> target_members;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (truth.label_of(v) == target) target_members.push_back(v);

    int steps = 0;
    while (steps < cfg.budget) {
        double base_q = q_of(m, intra, degsum);
        double best_dq = 0.0;
        enum class Kind { None, Delete, Add };
        Kind best_kind = Kind::None;
        Edge best_edge{-1, -1};

        // intra-target deletions
        for (std::size_t i = 0; i < target_members.size(); ++i) {
            for (std::size_t j = i + 1; j < target_members.size(); ++j) {
                int u = target_members[i], v = target_members[j];
                if (!es.has(u, v)) continue;
                if (m <= 1.0) continue; // never empty the edge set
                std::vector<double> li = intra, ds = degsum;
                li[static_cast<std::size_t>(target)] -= 1.0;
                ds[static_cast<std::size_t>(target)] -= 2.0;
                double dq = q_of(m - 1.0, li, ds) - base_q;
                if (dq < best_dq) {
                    best_dq = dq;
                    best_kind = Kind::Delete;
                    best_edge = make_edge(u, v);
                }
            }
        }
        // inter-target additions
        for (int u : target_members) {
            for (int w = 0; w < g.vertex_count(); ++w) {
                if (truth.label_of(w) == target || u == w || es.has(u, w)) continue;
                std::vector<double> li = intra, ds = degsum;
                ds[static_cast<std::size_t>(target)] += 1.0;
                ds[static_cast<std::size_t>(truth.label_of(w))] += 1.0;
                double dq = q_of(m + 1.0, li, ds) - base_q;
                if (dq < best_dq) {
                    best_dq = dq;
                    best_kind = Kind::Add;
                    best_edge = make_edge(u, w);
                }
            }
        }

        if (best_kind == Kind::None) {
            if (warnings)
                warnings->push_back("dm deception stopped after " + std::to_string(steps) +
                                    " steps; no modularity-decreasing move left");
            break;
        }
        if (best_kind == Kind::Delete) {
            es.del(best_edge.first, best_edge.second);
            intra[static_cast<std::size_t>(target)] -= 1.0;
            degsum[static_cast<std::size_t>(target)] -= 2.0;
            m -= 1.0;
        } else {
            es.add(best_edge.first, best_edge.second);
            int cu = truth.label_of(best_edge.first), cw = truth.label_of(best_edge.second);
            degsum[static_cast<std::size_t>(cu)] += 1.0;
            degsum[static_cast<std::size_t>(cw)] += 1.0;
            m += 1.0;
        }
        ++steps;
    }
    return graph_from_view(g, es);
}

std::pair<Graph, Partition> extract_missing_data_subgraph(const Graph& g, const Partition& truth,
                                                          const ExtractionConfig& cfg, Rng& rng) {
    if (cfg.seed_count < 1 || cfg.hops < 1)
        throw ConfigError("extraction needs at least one seed and one hop");
    if (cfg.seed_count > g.vertex_count())
        throw ConfigError("seed count exceeds the vertex count");
    if (truth.size() != g.vertex_count())
        throw DomainError("truth partition does not cover the graph");

    // degree-weighted sampling without replacement via exponential keys
    std::vector<std::pair<double, int>> keyed;
    keyed.reserve(static_cast<std::size_t>(g.vertex_count()));
    std::uniform_real_distribution<double> unit(std::numeric_limits<double>::min(), 1.0);
    for (int v = 0; v < g.vertex_count(); ++v) {
        double w = static_cast<double>(g.degree(v));
        double u = unit(rng);
        if (w > 0.0) keyed.emplace_back(-std::log(u) / w, v);
    }
    std::size_t want = static_cast<std::size_t>(cfg.seed_count);
    std::size_t take = std::min(want, keyed.size());
    std::partial_sort(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(take), keyed.end());
    std::vector<int> seeds;
    seeds.reserve(want);
    for (std::size_t i = 0; i < take; ++i) seeds.push_back(keyed[i].second);
    if (seeds.size() < want) {
        // remaining seeds drawn uniformly among zero-degree vertices
        std::vector<int> rest;
        std::unordered_set<int> chosen(seeds.begin(), seeds.end());
        for (int v = 0; v < g.vertex_count(); ++v)
            if (g.degree(v) == 0 && !chosen.contains(v)) rest.push_back(v);
        std::shuffle(rest.begin(), rest.end(), rng);
        for (int v : rest) {
            if (seeds.size() == want) break;
            seeds.push_back(v);
        }
    }

    // union of h-hop ego networks
    std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), -1);
    std::vector<int> frontier, next;
    std::unordered_set<int> keep;
    for (int s : seeds) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[static_cast<std::size_t>(s)] = 0;
        keep.insert(s);
        frontier.assign(1, s);
        for (int hop = 1; hop <= cfg.hops && !frontier.empty(); ++hop) {
            next.clear();
            for (int u : frontier)
                for (int v : g.neighbors(u))
                    if (dist[static_cast<std::size_t>(v)] == -1) {
                        dist[static_cast<std::size_t>(v)] = hop;
                        keep.insert(v);
                        next.push_back(v);
                    }
            frontier.swap(next);
        }
    }

    std::vector<int> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    std::vector<int> fwd(static_cast<std::size_t>(g.vertex_count()), -1);
    auto ids = std::make_shared<IdMap>();
    for (std::size_t i = 0; i < kept.size(); ++i) {
        fwd[static_cast<std::size_t>(kept[i])] = static_cast<int>(i);
        ids->intern(g.vertex_label(kept[i]));
    }
    std::vector<Edge> edges;
    for (int v : kept)
        for (int u : g.neighbors(v))
            if (v < u && fwd[static_cast<std::size_t>(u)] != -1)
                edges.push_back({fwd[static_cast<std::size_t>(v)], fwd[static_cast<std::size_t>(u)]});
    Graph sub(static_cast<int>(kept.size()), std::move(edges), std::move(ids));

    std::vector<int> labels;
    labels.reserve(kept.size());
    for (int v : kept) labels.push_back(truth.label_of(v));
    return {std::move(sub), Partition(std::move(labels))};
}

} // namespace recd
