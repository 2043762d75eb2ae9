// Test-only reference implementations, kept deliberately naive and
// independent of the library's computation paths: dense O(n^2)/O(n^3)
// evaluation, explicit set intersections, exhaustive enumeration.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "recd/enhance_ga.hpp"
#include "recd/enhance_se.hpp"
#include "recd/graph.hpp"
#include "recd/metrics.hpp"
#include "recd/partition.hpp"
#include "recd/rng.hpp"
#include "recd/similarity.hpp"

namespace oracle {

using recd::Edge;
using recd::Graph;
using recd::Partition;
using recd::Rng;

// ---- random instances -------------------------------------------------------

inline Graph random_graph(int n, double edge_prob, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (unit(rng) < edge_prob) edges.push_back({u, v});
    return Graph(n, std::move(edges));
}

inline Partition random_partition(int n, int max_k, Rng& rng) {
    std::uniform_int_distribution<int> pick(0, max_k - 1);
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int& l : labels) l = pick(rng);
    return Partition(std::move(labels));
}

// ---- metric oracles ---------------------------------------------------------

// Direct double-loop sum over all ordered pairs, diagonal included in the
// null-model term.
inline double modularity_direct(const Graph& g, const Partition& p) {
    const double m = g.edge_count();
    double q = 0.0;
    for (int i = 0; i < g.vertex_count(); ++i) {
        for (int j = 0; j < g.vertex_count(); ++j) {
            if (p.label_of(i) != p.label_of(j)) continue;
            double a = g.has_edge(i, j) ? 1.0 : 0.0;
            q += a - static_cast<double>(g.degree(i)) * g.degree(j) / (2.0 * m);
        }
    }
    return q / (2.0 * m);
}

// Contingency built from explicit member-set intersections.
inline double nmi_direct(const Partition& x, const Partition& y) {
    const double n = x.size();
    auto blocks_x = x.blocks();
    auto blocks_y = y.blocks();
    auto entropy = [&](const std::vector<std::vector<int>>& blocks) {
        double h = 0.0;
        for (const auto& b : blocks)
            if (!b.empty()) h -= (b.size() / n) * std::log(b.size() / n);
        return h;
    };
    double hx = entropy(blocks_x), hy = entropy(blocks_y);
    double mi = 0.0;
    for (const auto& bx : blocks_x) {
        std::set<int> sx(bx.begin(), bx.end());
        for (const auto& by : blocks_y) {
            int common = 0;
            for (int v : by) common += sx.count(v);
            if (common == 0) continue;
            mi += (common / n) * std::log(n * common / (static_cast<double>(bx.size()) * by.size()));
        }
    }
    if (hx + hy == 0.0) return 1.0;
    return 2.0 * mi / (hx + hy);
}

// Pair-level counting over all C(n,2) vertex pairs.
inline double ari_direct(const Partition& x, const Partition& y) {
    double a = 0, b = 0, c = 0, d = 0;
    for (int i = 0; i < x.size(); ++i) {
        for (int j = i + 1; j < x.size(); ++j) {
            bool same_x = x.label_of(i) == x.label_of(j);
            bool same_y = y.label_of(i) == y.label_of(j);
            if (same_x && same_y) ++a;
            else if (same_x) ++b;
            else if (same_y) ++c;
            else ++d;
        }
    }
    double denom = (a + b) * (b + d) + (a + c) * (c + d);
    if (denom == 0.0) return x.same_clustering(y) ? 1.0 : 0.0;
    return 2.0 * (a * d - b * c) / denom;
}

// ---- dense similarity oracle --------------------------------------------------

struct Dense {
    int n = 0;
    std::vector<double> a; // row-major

    explicit Dense(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_, 0.0) {}
    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

    Dense mul(const Dense& o) const {
        Dense r(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                double v = at(i, k);
                if (v == 0.0) continue;
                for (int j = 0; j < n; ++j) r.at(i, j) += v * o.at(k, j);
            }
        return r;
    }
};

inline Dense adjacency_matrix(const Graph& g) {
    Dense a(g.vertex_count());
    for (const Edge& e : g.edges()) {
        a.at(e.first, e.second) = 1.0;
        a.at(e.second, e.first) = 1.0;
    }
    return a;
}

// Gaussian elimination with partial pivoting: solves M x = rhs.
inline std::vector<double> solve_dense(Dense m, std::vector<double> rhs) {
    const int n = m.n;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(m.at(r, col)) > std::abs(m.at(pivot, col))) pivot = r;
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(m.at(col, j), m.at(pivot, j));
            std::swap(rhs[static_cast<std::size_t>(col)], rhs[static_cast<std::size_t>(pivot)]);
        }
        double diag = m.at(col, col);
        for (int r = col + 1; r < n; ++r) {
            double f = m.at(r, col) / diag;
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j) m.at(r, j) -= f * m.at(col, j);
            rhs[static_cast<std::size_t>(r)] -= f * rhs[static_cast<std::size_t>(col)];
        }
    }
    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double acc = rhs[static_cast<std::size_t>(r)];
        for (int j = r + 1; j < n; ++j) acc -= m.at(r, j) * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(r)] = acc / m.at(r, r);
    }
    return x;
}

// Every pairwise score of one index on a dense representation.
inline Dense similarity_dense(const Graph& g, recd::SimilarityKind kind,
                              const recd::SimilarityParams& params) {
    using recd::SimilarityKind;
    const int n = g.vertex_count();
    Dense h(n);
    Dense a = adjacency_matrix(g);

    auto common = [&](int i, int j) {
        std::set<int> si(g.neighbors(i).begin(), g.neighbors(i).end());
        int c = 0;
        for (int z : g.neighbors(j)) c += si.count(z);
        return c;
    };

    switch (kind) {
        case SimilarityKind::CommonNeighbors:
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (i != j) h.at(i, j) = common(i, j);
            break;
        case SimilarityKind::Salton:
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (i != j && g.degree(i) > 0 && g.degree(j) > 0)
                        h.at(i, j) = common(i, j) /
                                     std::sqrt(static_cast<double>(g.degree(i)) * g.degree(j));
            break;
        case SimilarityKind::Jaccard:
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    if (i == j) continue;
                    int c = common(i, j);
                    int uni = g.degree(i) + g.degree(j) - c;
                    if (uni > 0) h.at(i, j) = static_cast<double>(c) / uni;
                }
            break;
        case SimilarityKind::HubPromoted:
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    if (i == j) continue;
                    int lo = std::min(g.degree(i), g.degree(j));
                    if (lo > 0) h.at(i, j) = static_cast<double>(common(i, j)) / lo;
                }
            break;
        case SimilarityKind::AdamicAdar:
        case SimilarityKind::ResourceAllocation:
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    if (i == j) continue;
                    std::set<int> si(g.neighbors(i).begin(), g.neighbors(i).end());
                    double v = 0.0;
                    for (int z : g.neighbors(j)) {
                        if (!si.count(z)) continue;
                        v += kind == SimilarityKind::AdamicAdar
                                 ? 1.0 / std::log(static_cast<double>(g.degree(z)))
                                 : 1.0 / static_cast<double>(g.degree(z));
                    }
                    h.at(i, j) = v;
                }
            break;
        case SimilarityKind::LocalPath: {
            Dense a2 = a.mul(a);
            Dense a3 = a2.mul(a);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (i != j) h.at(i, j) = a2.at(i, j) + params.lp_alpha * a3.at(i, j);
            break;
        }
        case SimilarityKind::RandomWalkRestart: {
            const double c = params.rwr_continue;
            // q_i = (1-c) (I - c P^T)^-1 e_i, columns of P scaled by source degree
            Dense system(n);
            for (int r = 0; r < n; ++r)
                for (int col = 0; col < n; ++col) {
                    double pt = 0.0; // (P^T)_{r,col} = P_{col,r}
                    if (g.has_edge(col, r)) pt = 1.0 / g.degree(col);
                    system.at(r, col) = (r == col ? 1.0 : 0.0) - c * pt;
                }
            std::vector<std::vector<double>> q;
            for (int i = 0; i < n; ++i) {
                std::vector<double> e(static_cast<std::size_t>(n), 0.0);
                e[static_cast<std::size_t>(i)] = 1.0 - c;
                if (g.degree(i) == 0) {
                    std::vector<double> iso(static_cast<std::size_t>(n), 0.0);
                    iso[static_cast<std::size_t>(i)] = 1.0;
                    q.push_back(std::move(iso));
                    continue;
                }
                q.push_back(solve_dense(system, std::move(e)));
            }
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (i != j)
                        h.at(i, j) = q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +
                                     q[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            break;
        }
    }
    return h;
}

// ---- candidate-set classification oracle --------------------------------------

struct PairClasses {
    std::set<Edge> intra_add, intra_del, inter_add, inter_del;
};

inline PairClasses classify_pairs(const Graph& g, const Partition& p) {
    PairClasses out;
    for (int u = 0; u < g.vertex_count(); ++u) {
        for (int v = u + 1; v < g.vertex_count(); ++v) {
            bool same = p.label_of(u) == p.label_of(v);
            bool edge = g.has_edge(u, v);
            if (edge && same) out.intra_del.insert({u, v});
            if (edge && !same) out.inter_del.insert({u, v});
            if (!edge && same) out.intra_add.insert({u, v});
            if (!edge && !same) out.inter_add.insert({u, v});
        }
    }
    return out;
}

// ---- ensemble oracles ----------------------------------------------------------

inline std::map<Edge, int> cooccurrence_direct(const std::vector<Partition>& parts) {
    std::map<Edge, int> counts;
    for (const Partition& p : parts)
        for (int i = 0; i < p.size(); ++i)
            for (int j = i + 1; j < p.size(); ++j)
                if (p.label_of(i) == p.label_of(j)) ++counts[{i, j}];
    return counts;
}

inline double consensus_direct(const recd::CoOccurrence& co, const std::vector<int>& block) {
    double sum = 0.0;
    int pairs = 0;
    for (std::size_t i = 0; i < block.size(); ++i)
        for (std::size_t j = i + 1; j < block.size(); ++j) {
            sum += co.count(block[i], block[j]);
            ++pairs;
        }
    return sum / pairs;
}

inline double partition_score_direct(const recd::CoOccurrence& co, const Partition& parts) {
    double total = 0.0;
    for (const auto& block : parts.blocks()) {
        if (block.size() < 2) continue;
        total += (static_cast<double>(block.size()) / parts.size()) * consensus_direct(co, block);
    }
    return total;
}

// Best partition score over every integer threshold in [0, P].
inline double best_score_full_scan(const recd::CoOccurrence& co, int min_core_size) {
    double best = -1.0;
    for (int t = 0; t <= co.total_partitions; ++t) {
        recd::PruneResult pr = recd::prune(co, t, min_core_size);
        best = std::max(best, partition_score_direct(co, pr.components));
    }
    return best;
}

// ---- sequential weighted sampling: exact inclusion probabilities ----------------

// Probability that `target` appears in a without-replacement draw of size
// `count`, by exhaustive enumeration of ordered draws.
inline double inclusion_probability(const std::vector<double>& weights, std::size_t target,
                                    std::size_t count) {
    double total = 0.0;
    for (double w : weights) total += w;

    double prob = 0.0;
    auto recurse = [&](auto&& self, std::vector<bool>& used, double remaining, double path_prob,
                       std::size_t depth) -> void {
        if (depth == count) return;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (used[i] || weights[i] == 0.0) continue;
            double p = path_prob * weights[i] / remaining;
            if (i == target) {
                prob += p;
                continue; // no need to extend: target already included
            }
            used[i] = true;
            self(self, used, remaining - weights[i], p, depth + 1);
            used[i] = false;
        }
    };
    std::vector<bool> used(weights.size(), false);
    recurse(recurse, used, total, 1.0, 0);
    return prob;
}

} // namespace oracle
