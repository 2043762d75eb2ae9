#include "recd/similarity.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <ostream>

#include "recd/error.hpp"

namespace recd {

std::string to_string(SimilarityKind kind) {
    switch (kind) {
        case SimilarityKind::CommonNeighbors: return "cn";
        case SimilarityKind::Salton: return "salton";
        case SimilarityKind::Jaccard: return "jaccard";
        case SimilarityKind::HubPromoted: return "hpi";
        case SimilarityKind::AdamicAdar: return "aa";
        case SimilarityKind::ResourceAllocation: return "ra";
        case SimilarityKind::LocalPath: return "lp";
        case SimilarityKind::RandomWalkRestart: return "rwr";
    }
    return "?";
}

std::optional<SimilarityKind> similarity_from_string(std::string_view name) {
    for (SimilarityKind k : kAllSimilarityKinds)
        if (to_string(k) == name) return k;
    return std::nullopt;
}

SimilarityMatrix::SimilarityMatrix(SimilarityKind kind, SimilarityParams params,
                                   std::vector<std::pair<Edge, double>> entries)
    : kind_(kind), params_(params), entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    lookup_.reserve(entries_.size() * 2);
    for (const auto& [e, s] : entries_) lookup_.emplace(pair_key(e.first, e.second), s);
}

double SimilarityMatrix::score(int i, int j) const {
    if (i == j) return 0.0;
    auto it = lookup_.find(pair_key(i, j));
    return it == lookup_.end() ? 0.0 : it->second;
}

namespace {

// Accumulate the per-common-neighbor contribution for every 2-hop pair (i,j),
// j > i. `term(z)` is the weight contributed by common neighbor z.
template <typename TermFn>
std::vector<std::pair<Edge, double>> two_hop_accumulate(const Graph& g, TermFn term) {
    std::vector<std::pair<Edge, double>> out;
    std::vector<double> acc(static_cast<std::size_t>(g.vertex_count()), 0.0);
    std::vector<int> touched;
    for (int i = 0; i < g.vertex_count(); ++i) {
        touched.clear();
        for (int z : g.neighbors(i)) {
            double t = term(z);
            for (int j : g.neighbors(z)) {
                if (j <= i) continue;
                if (acc[static_cast<std::size_t>(j)] == 0.0) touched.push_back(j);
                acc[static_cast<std::size_t>(j)] += t;
            }
        }
        std::sort(touched.begin(), touched.end());
        for (int j : touched) {
            out.push_back({{i, j}, acc[static_cast<std::size_t>(j)]});
            acc[static_cast<std::size_t>(j)] = 0.0;
        }
    }
    return out;
}

std::vector<std::pair<Edge, double>> local_index(const Graph& g, SimilarityKind kind) {
    auto counts = two_hop_accumulate(g, [](int) { return 1.0; });
    switch (kind) {
        case SimilarityKind::CommonNeighbors:
            return counts;
        case SimilarityKind::Salton:
            for (auto& [e, s] : counts)
                s /= std::sqrt(static_cast<double>(g.degree(e.first)) * g.degree(e.second));
            return counts;
        case SimilarityKind::Jaccard:
            for (auto& [e, s] : counts)
                s /= static_cast<double>(g.degree(e.first)) + g.degree(e.second) - s;
            return counts;
        case SimilarityKind::HubPromoted:
            for (auto& [e, s] : counts)
                s /= static_cast<double>(std::min(g.degree(e.first), g.degree(e.second)));
            return counts;
        default:
            break;
    }
    throw DomainError("not a first-order local index");
}

std::vector<std::pair<Edge, double>> weighted_neighbor_index(const Graph& g, SimilarityKind kind) {
    if (kind == SimilarityKind::AdamicAdar) {
        // a common neighbor in a simple graph always has degree >= 2
        return two_hop_accumulate(g, [&](int z) {
            assert(g.degree(z) >= 2);
            return 1.0 / std::log(static_cast<double>(g.degree(z)));
        });
    }
    return two_hop_accumulate(g, [&](int z) { return 1.0 / static_cast<double>(g.degree(z)); });
}

std::vector<std::pair<Edge, double>> local_path_index(const Graph& g, double alpha) {
    std::vector<std::pair<Edge, double>> out;
    const int n = g.vertex_count();
    std::vector<double> a2(static_cast<std::size_t>(n), 0.0);
    std::vector<double> a3(static_cast<std::size_t>(n), 0.0);
    std::vector<int> touched2, touched3;
    for (int i = 0; i < n; ++i) {
        touched2.clear();
        touched3.clear();
        // walks of length 2 (all targets, needed to expand into length 3)
        for (int z : g.neighbors(i)) {
            for (int j : g.neighbors(z)) {
                if (a2[static_cast<std::size_t>(j)] == 0.0) touched2.push_back(j);
                a2[static_cast<std::size_t>(j)] += 1.0;
            }
        }
        std::sort(touched2.begin(), touched2.end());
        for (int k : touched2) {
            double walks = a2[static_cast<std::size_t>(k)];
            for (int j : g.neighbors(k)) {
                if (a3[static_cast<std::size_t>(j)] == 0.0) touched3.push_back(j);
                a3[static_cast<std::size_t>(j)] += walks;
            }
        }
        for (int j : touched2)
            if (j > i) {
                double v = a2[static_cast<std::size_t>(j)] + alpha * a3[static_cast<std::size_t>(j)];
                if (v > 0.0) out.push_back({{i, j}, v});
            }
        std::sort(touched3.begin(), touched3.end());
        for (int j : touched3)
            if (j > i && a2[static_cast<std::size_t>(j)] == 0.0) {
                double v = alpha * a3[static_cast<std::size_t>(j)];
                if (v > 0.0) out.push_back({{i, j}, v});
            }
        for (int j : touched2) a2[static_cast<std::size_t>(j)] = 0.0;
        for (int j : touched3) a3[static_cast<std::size_t>(j)] = 0.0;
    }
    return out;
}

// Stopping residual well inside the documented 1e-10 bound: the fixed-point
// error is about residual/(1-c), and pair scores sum two of them.
constexpr double kRwrTolerance = 1e-13;
constexpr double kRwrStoreFloor = 1e-12;
constexpr int kRwrMaxIterations = 100000;

std::vector<std::pair<Edge, double>> rwr_index(const Graph& g, double c) {
    const int n = g.vertex_count();
    std::vector<std::vector<double>> rows;
    rows.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) rows.push_back(rwr_distribution(g, i, c).prob);

    std::vector<std::pair<Edge, double>> out;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double v = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +
                       rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            if (v > kRwrStoreFloor) out.push_back({{i, j}, v});
        }
    }
    return out;
}

} // namespace

RwrResult rwr_distribution(const Graph& g, int source, double continue_prob) {
    if (continue_prob <= 0.0 || continue_prob >= 1.0)
        throw ConfigError("rwr continue probability must lie in (0,1)");
    const int n = g.vertex_count();
    RwrResult result;
    result.prob.assign(static_cast<std::size_t>(n), 0.0);
    if (g.degree(source) == 0) {
        result.prob[static_cast<std::size_t>(source)] = 1.0;
        result.isolated_source = true;
        return result;
    }

    std::vector<double>& q = result.prob;
    q[static_cast<std::size_t>(source)] = 1.0;
    std::vector<double> next(static_cast<std::size_t>(n), 0.0);
    for (int iter = 1; iter <= kRwrMaxIterations; ++iter) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int u = 0; u < n; ++u) {
            double mass = q[static_cast<std::size_t>(u)];
            if (mass == 0.0) continue;
            double share = continue_prob * mass / static_cast<double>(g.degree(u));
            for (int v : g.neighbors(u)) next[static_cast<std::size_t>(v)] += share;
        }
        next[static_cast<std::size_t>(source)] += 1.0 - continue_prob;
        double residual = 0.0;
        for (int v = 0; v < n; ++v)
            residual += std::abs(next[static_cast<std::size_t>(v)] - q[static_cast<std::size_t>(v)]);
        q.swap(next);
        result.iterations = iter;
        result.residual = residual;
        if (residual < kRwrTolerance) return result;
    }
    throw ConvergenceError("rwr fixed point not reached; residual " +
                           std::to_string(result.residual));
}

SimilarityMatrix compute_similarity(const Graph& g, SimilarityKind kind, SimilarityParams params) {
    if (g.vertex_count() == 0) throw DomainError("similarity undefined on an empty graph");
    std::vector<std::pair<Edge, double>> entries;
    switch (kind) {
        case SimilarityKind::CommonNeighbors:
        case SimilarityKind::Salton:
        case SimilarityKind::Jaccard:
        case SimilarityKind::HubPromoted:
            entries = local_index(g, kind);
            break;
        case SimilarityKind::AdamicAdar:
        case SimilarityKind::ResourceAllocation:
            entries = weighted_neighbor_index(g, kind);
            break;
        case SimilarityKind::LocalPath:
            if (params.lp_alpha < 0.0) throw ConfigError("lp alpha must be nonnegative");
            entries = local_path_index(g, params.lp_alpha);
            break;
        case SimilarityKind::RandomWalkRestart:
            entries = rwr_index(g, params.rwr_continue);
            break;
    }
    return SimilarityMatrix(kind, params, std::move(entries));
}

void write_similarity_csv(const SimilarityMatrix& m, const Graph& g, std::ostream& out) {
    out << "i,j,score\n";
    for (const auto& [e, s] : m.entries())
        out << g.vertex_label(e.first) << ',' << g.vertex_label(e.second) << ',' << s << '\n';
}

} // namespace recd
