#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "recd/partition.hpp"
#include "recd/rng.hpp"

namespace recd {

// Unordered vertex pair, stored normalized with first < second.
using Edge = std::pair<int, int>;

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

inline std::uint64_t pair_key(int u, int v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
}

// Bijection between external vertex labels (arbitrary strings) and internal
// indices 0..n-1, assigned in first-appearance order.
class IdMap {
public:
    int intern(const std::string& label);
    std::optional<int> find(const std::string& label) const;
    const std::string& label(int index) const { return labels_[static_cast<std::size_t>(index)]; }
    int size() const { return static_cast<int>(labels_.size()); }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, int> index_;
};

// Immutable undirected simple graph. Construction collapses duplicate edges
// and rejects self-loops; rewiring always produces a new value, so graphs can
// be shared freely across threads.
class Graph {
public:
    Graph() = default;
    Graph(int n, std::vector<Edge> edges, std::shared_ptr<const IdMap> ids = nullptr);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    long long nonedge_count() const {
        return static_cast<long long>(n_) * (n_ - 1) / 2 - edge_count();
    }

    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
    bool has_edge(int u, int v) const;

    const std::shared_ptr<const IdMap>& ids() const { return ids_; }
    // External label when available, else the decimal index.
    std::string vertex_label(int v) const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;           // sorted lexicographically, u < v
    std::vector<std::vector<int>> adj_; // sorted neighbor lists
    std::shared_ptr<const IdMap> ids_;
};

// A rewiring plan: edges to add (from the non-edge set) and edges to delete.
struct ModificationScheme {
    std::vector<Edge> add;
    std::vector<Edge> del;

    bool empty() const { return add.empty() && del.empty(); }
};

// --- I/O ------------------------------------------------------------------

// One edge per line, two whitespace-separated vertex labels; '#' lines and
// blank lines are ignored. Self-loops are dropped, duplicates collapsed.
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);
void write_edge_list(const Graph& g, std::ostream& out);

// One "vertex community" pair per line, same comment rule. When a graph is
// bound, vertex tokens must resolve through its id map and cover it exactly.
Partition load_labels(std::istream& in, const Graph* bound = nullptr);
Partition load_labels_file(const std::string& path, const Graph* bound = nullptr);
void write_labels(const Partition& p, const Graph& g, std::ostream& out);

// --- Operations -----------------------------------------------------------

// New graph with edge set E u add \ del; the input is left untouched.
Graph apply_modification(const Graph& g, const ModificationScheme& mod);

// Draw `count` distinct non-edges without replacement. With weights given,
// sequential inclusion probability is proportional to weight (exponential-key
// ranking); candidates short of `count` are backfilled uniformly. An empty
// weight span means uniform sampling over the whole non-edge set.
std::vector<Edge> sample_nonedges(const Graph& g, std::size_t count,
                                  std::span<const std::pair<Edge, double>> weights, Rng& rng);

// Components as a partition, labeled in order of smallest contained vertex.
Partition connected_components(const Graph& g);

} // namespace recd
