#include "recd/enhance_ga.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "recd/error.hpp"
#include "recd/metrics.hpp"

namespace recd {

CandidateSets build_candidate_sets(const Graph& g, const Partition& p) {
    if (p.size() != g.vertex_count())
        throw DomainError("partition does not cover the graph's vertex set");
    CandidateSets cs;
    for (const Edge& e : g.edges()) {
        if (p.label_of(e.first) == p.label_of(e.second))
            cs.intra_del.push_back(e);
        else
            cs.inter_del.push_back(e);
    }
    for (int u = 0; u < g.vertex_count(); ++u) {
        const auto& nbrs = g.neighbors(u);
        auto it = std::lower_bound(nbrs.begin(), nbrs.end(), u + 1);
        for (int v = u + 1; v < g.vertex_count(); ++v) {
            if (it != nbrs.end() && *it == v) {
                ++it;
                continue;
            }
            if (p.label_of(u) == p.label_of(v))
                cs.intra_add.push_back({u, v});
            else
                cs.inter_add.push_back({u, v});
        }
    }
    return cs;
}

AdmissiblePools admissible_pools(const CandidateSets& cs, int phi_s,
                                 std::optional<int> phi_real) {
    if (phi_s < 1) throw DomainError("estimated community count must be positive");
    AdmissiblePools pools;
    if (phi_real && phi_s > *phi_real) {
        pools.add_pool.reserve(cs.intra_add.size() + cs.inter_add.size());
        pools.add_pool.insert(pools.add_pool.end(), cs.intra_add.begin(), cs.intra_add.end());
        pools.add_pool.insert(pools.add_pool.end(), cs.inter_add.begin(), cs.inter_add.end());
        std::sort(pools.add_pool.begin(), pools.add_pool.end());
        pools.del_pool = cs.inter_del;
    } else if (phi_real && phi_s < *phi_real) {
        pools.add_pool = cs.intra_add;
        pools.del_pool.reserve(cs.intra_del.size() + cs.inter_del.size());
        pools.del_pool.insert(pools.del_pool.end(), cs.intra_del.begin(), cs.intra_del.end());
        pools.del_pool.insert(pools.del_pool.end(), cs.inter_del.begin(), cs.inter_del.end());
        std::sort(pools.del_pool.begin(), pools.del_pool.end());
    } else {
        // matching counts, or no ground truth: only the required part
        pools.add_pool = cs.intra_add;
        pools.del_pool = cs.inter_del;
    }
    return pools;
}

FitnessBreakdown evaluate_fitness(const Graph& g, const ModificationScheme& scheme,
                                  const DetectorSpec& detector,
                                  std::optional<int> phi_real, Rng& rng) {
    Graph rewired = apply_modification(g, scheme);
    Partition part = detect(detector, rewired, rng);
    FitnessBreakdown out;
    out.q = modularity(rewired, part);
    out.communities = part.community_count();
    if (phi_real)
        out.fitness = std::abs(out.q) / std::exp(std::abs(out.communities - *phi_real));
    else
        out.fitness = std::abs(out.q);
    return out;
}

namespace {

constexpr double kImprovementEpsilon = 1e-12;

// Draw `count` distinct elements of `pool` in random order.
std::vector<Edge> draw_distinct(const std::vector<Edge>& pool, std::size_t count, Rng& rng) {
    count = std::min(count, pool.size());
    std::vector<Edge> out;
    out.reserve(count);
    // sparse Fisher-Yates over pool indices
    std::unordered_map<std::size_t, std::size_t> swapped;
    for (std::size_t i = 0; i < count; ++i) {
        std::uniform_int_distribution<std::size_t> dist(i, pool.size() - 1);
        std::size_t j = dist(rng);
        std::size_t vi = swapped.contains(i) ? swapped[i] : i;
        std::size_t vj = swapped.contains(j) ? swapped[j] : j;
        swapped[j] = vi;
        swapped[i] = vj;
        out.push_back(pool[vj]);
    }
    return out;
}

// Two-point crossover of one variable-length segment.
std::pair<std::vector<Edge>, std::vector<Edge>> cross_segment(const std::vector<Edge>& a,
                                                              const std::vector<Edge>& b,
                                                              Rng& rng) {
    auto cuts = [&](std::size_t len) {
        std::uniform_int_distribution<std::size_t> dist(0, len);
        std::size_t c1 = dist(rng), c2 = dist(rng);
        if (c1 > c2) std::swap(c1, c2);
        return std::pair{c1, c2};
    };
    auto [a1, a2] = cuts(a.size());
    auto [b1, b2] = cuts(b.size());
    std::vector<Edge> ca, cb;
    ca.insert(ca.end(), a.begin(), a.begin() + static_cast<std::ptrdiff_t>(a1));
    ca.insert(ca.end(), b.begin() + static_cast<std::ptrdiff_t>(b1), b.begin() + static_cast<std::ptrdiff_t>(b2));
    ca.insert(ca.end(), a.begin() + static_cast<std::ptrdiff_t>(a2), a.end());
    cb.insert(cb.end(), b.begin(), b.begin() + static_cast<std::ptrdiff_t>(b1));
    cb.insert(cb.end(), a.begin() + static_cast<std::ptrdiff_t>(a1), a.begin() + static_cast<std::ptrdiff_t>(a2));
    cb.insert(cb.end(), b.begin() + static_cast<std::ptrdiff_t>(b2), b.end());
    return {std::move(ca), std::move(cb)};
}

// Keep first occurrences only and respect the budget cap.
void sanitize_segment(std::vector<Edge>& seg, std::size_t cap) {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(seg.size() * 2);
    std::vector<Edge> out;
    out.reserve(seg.size());
    for (const Edge& e : seg) {
        if (out.size() == cap) break;
        if (seen.insert(pair_key(e.first, e.second)).second) out.push_back(e);
    }
    seg = std::move(out);
}

void mutate_segment(std::vector<Edge>& seg, const std::vector<Edge>& pool, double rate,
                    Rng& rng) {
    if (pool.empty()) return;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::unordered_set<std::uint64_t> present;
    present.reserve(seg.size() * 2);
    for (const Edge& e : seg) present.insert(pair_key(e.first, e.second));

    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (std::size_t i = 0; i < seg.size();) {
        if (unit(rng) >= rate) {
            ++i;
            continue;
        }
        bool replaced = false;
        if (pool.size() > present.size()) {
            for (int attempt = 0; attempt < 64; ++attempt) {
                Edge cand = pool[pick(rng)];
                std::uint64_t key = pair_key(cand.first, cand.second);
                if (present.contains(key)) continue;
                present.erase(pair_key(seg[i].first, seg[i].second));
                present.insert(key);
                seg[i] = cand;
                replaced = true;
                break;
            }
        }
        if (replaced) {
            ++i;
        } else {
            // pool exhausted around this gene: drop it
            present.erase(pair_key(seg[i].first, seg[i].second));
            seg.erase(seg.begin() + static_cast<std::ptrdiff_t>(i));
        }
    }
}

std::size_t roulette_pick(const std::vector<double>& fitness, double total, Rng& rng) {
    if (total <= 0.0) {
        std::uniform_int_distribution<std::size_t> dist(0, fitness.size() - 1);
        return dist(rng);
    }
    std::uniform_real_distribution<double> dist(0.0, total);
    double mark = dist(rng);
    double acc = 0.0;
    for (std::size_t i = 0; i < fitness.size(); ++i) {
        acc += fitness[i];
        if (mark < acc) return i;
    }
    return fitness.size() - 1;
}

} // namespace

GaResult run_ga(const Graph& g, const DetectorSpec& detector, const GaConfig& cfg, Rng& rng) {
    if (cfg.population_size < 2) throw ConfigError("population size must be at least 2");
    if (cfg.generations < 1) throw ConfigError("generation count must be at least 1");
    if (cfg.beta_add <= 0.0 || cfg.beta_del <= 0.0) throw ConfigError("budgets must be positive");
    for (double rate : {cfg.crossover_rate, cfg.mutation_rate, cfg.elitism_fraction})
        if (rate < 0.0 || rate > 1.0) throw ConfigError("rates must lie in [0,1]");

    GaResult result;
    const std::uint64_t master = rng();

    Rng detect_rng(derive_seed(master, seed_tag("ga-initial-detect")));
    Partition m_s = detect(detector, g, detect_rng);
    CandidateSets cs = build_candidate_sets(g, m_s);
    AdmissiblePools pools = admissible_pools(cs, m_s.community_count(), cfg.ground_truth_k);

    const double m = static_cast<double>(g.edge_count());
    const std::size_t cap_add = static_cast<std::size_t>(std::ceil(m * cfg.beta_add));
    const std::size_t cap_del = static_cast<std::size_t>(std::ceil(m * cfg.beta_del));
    if (pools.add_pool.empty())
        result.warnings.push_back("admissible addition pool is empty; add segments stay empty");
    if (pools.del_pool.empty())
        result.warnings.push_back("admissible deletion pool is empty; del segments stay empty");

    const std::size_t pop_size = static_cast<std::size_t>(cfg.population_size);
    std::vector<ModificationScheme> population(pop_size);
    std::vector<double> fitnesses(pop_size, 0.0);

    Rng init_rng(derive_seed(master, seed_tag("ga-init")));
    for (std::size_t i = 0; i < pop_size; ++i) {
        std::uniform_int_distribution<std::size_t> na(0, std::min(cap_add, pools.add_pool.size()));
        std::uniform_int_distribution<std::size_t> nd(0, std::min(cap_del, pools.del_pool.size()));
        population[i].add = draw_distinct(pools.add_pool, na(init_rng), init_rng);
        population[i].del = draw_distinct(pools.del_pool, nd(init_rng), init_rng);
    }
    auto evaluate = [&](const ModificationScheme& s, std::uint64_t gen, std::uint64_t slot) {
        Rng child(derive_seed(master, seed_tag("ga-eval") ^ gen, slot));
        return evaluate_fitness(g, s, detector, cfg.ground_truth_k, child).fitness;
    };
    for (std::size_t i = 0; i < pop_size; ++i) fitnesses[i] = evaluate(population[i], 0, i);
    if (cfg.observer) cfg.observer(0, population);

    double best_ever = *std::max_element(fitnesses.begin(), fitnesses.end());
    result.best_so_far.push_back(best_ever);

    const std::size_t elite_count =
        std::min(pop_size, static_cast<std::size_t>(
                               std::ceil(cfg.elitism_fraction * static_cast<double>(pop_size))));

    int stagnant = 0;
    int gen = 0;
    for (gen = 1; gen <= cfg.generations; ++gen) {
        Rng gen_rng(derive_seed(master, seed_tag("ga-gen"), static_cast<std::uint64_t>(gen)));

        // indices sorted by fitness (desc, ties by index) drive elitism
        std::vector<std::size_t> by_fitness(pop_size);
        std::iota(by_fitness.begin(), by_fitness.end(), 0);
        std::stable_sort(by_fitness.begin(), by_fitness.end(),
                         [&](std::size_t a, std::size_t b) { return fitnesses[a] > fitnesses[b]; });
        std::vector<ModificationScheme> elites;
        elites.reserve(elite_count);
        for (std::size_t e = 0; e < elite_count; ++e)
            elites.push_back(population[by_fitness[e]]);

        // roulette selection
        double total = std::accumulate(fitnesses.begin(), fitnesses.end(), 0.0);
        std::vector<ModificationScheme> selected;
        selected.reserve(pop_size);
        for (std::size_t i = 0; i < pop_size; ++i)
            selected.push_back(population[roulette_pick(fitnesses, total, gen_rng)]);

        // pairwise two-point crossover per segment
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (std::size_t i = 0; i + 1 < pop_size; i += 2) {
            if (unit(gen_rng) >= cfg.crossover_rate) continue;
            auto [a_add, b_add] = cross_segment(selected[i].add, selected[i + 1].add, gen_rng);
            auto [a_del, b_del] = cross_segment(selected[i].del, selected[i + 1].del, gen_rng);
            selected[i] = {std::move(a_add), std::move(a_del)};
            selected[i + 1] = {std::move(b_add), std::move(b_del)};
        }

        for (ModificationScheme& s : selected) {
            sanitize_segment(s.add, cap_add);
            sanitize_segment(s.del, cap_del);
            mutate_segment(s.add, pools.add_pool, cfg.mutation_rate, gen_rng);
            mutate_segment(s.del, pools.del_pool, cfg.mutation_rate, gen_rng);
        }

        std::vector<double> offspring_fitness(pop_size);
        for (std::size_t i = 0; i < pop_size; ++i)
            offspring_fitness[i] = evaluate(selected[i], static_cast<std::uint64_t>(gen), i);

        // elites re-evaluated with this generation's seeds, then they replace
        // the worst offspring
        std::vector<std::size_t> worst(pop_size);
        std::iota(worst.begin(), worst.end(), 0);
        std::stable_sort(worst.begin(), worst.end(), [&](std::size_t a, std::size_t b) {
            return offspring_fitness[a] < offspring_fitness[b];
        });
        for (std::size_t e = 0; e < elites.size(); ++e) {
            std::size_t slot = worst[e];
            selected[slot] = elites[e];
            offspring_fitness[slot] =
                evaluate(selected[slot], static_cast<std::uint64_t>(gen), pop_size + e);
        }

        population = std::move(selected);
        fitnesses = std::move(offspring_fitness);
        if (cfg.observer) cfg.observer(gen, population);

        double gen_best = *std::max_element(fitnesses.begin(), fitnesses.end());
        if (gen_best > best_ever + kImprovementEpsilon) {
            best_ever = gen_best;
            stagnant = 0;
        } else {
            ++stagnant;
        }
        result.best_so_far.push_back(best_ever);
        if (stagnant >= cfg.stagnation_limit) break;
    }
    result.generations_run = std::min(gen, cfg.generations);

    std::size_t best_idx = 0;
    for (std::size_t i = 1; i < pop_size; ++i)
        if (fitnesses[i] > fitnesses[best_idx]) best_idx = i;
    result.best = population[best_idx];
    result.best_fitness = fitnesses[best_idx];
    result.enhanced = apply_modification(g, result.best);
    Rng final_rng(derive_seed(master, seed_tag("ga-final-detect")));
    result.partition = detect(detector, result.enhanced, final_rng);
    return result;
}

} // namespace recd
