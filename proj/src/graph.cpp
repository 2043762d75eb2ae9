#include "recd/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <unordered_set>

#include "recd/error.hpp"

namespace recd {

int IdMap::intern(const std::string& label) {
    auto [it, inserted] = index_.try_emplace(label, static_cast<int>(labels_.size()));
    if (inserted) labels_.push_back(label);
    return it->second;
}

std::optional<int> IdMap::find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Graph::Graph(int n, std::vector<Edge> edges, std::shared_ptr<const IdMap> ids)
    : n_(n), ids_(std::move(ids)) {
    if (n < 0) throw DomainError("negative vertex count");
    for (Edge& e : edges) {
        if (e.first == e.second) throw ValidityError("self-loop in edge set");
        if (e.first > e.second) std::swap(e.first, e.second);
        if (e.first < 0 || e.second >= n) throw ValidityError("edge endpoint out of range");
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);

    adj_.assign(static_cast<std::size_t>(n_), {});
    for (const Edge& e : edges_) {
        adj_[static_cast<std::size_t>(e.first)].push_back(e.second);
        adj_[static_cast<std::size_t>(e.second)].push_back(e.first);
    }
    for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
}

bool Graph::has_edge(int u, int v) const {
    if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_) return false;
    const auto& nu = adj_[static_cast<std::size_t>(u)];
    const auto& nv = adj_[static_cast<std::size_t>(v)];
    const auto& shorter = nu.size() <= nv.size() ? nu : nv;
    int target = nu.size() <= nv.size() ? v : u;
    return std::binary_search(shorter.begin(), shorter.end(), target);
}

std::string Graph::vertex_label(int v) const {
    if (ids_) return ids_->label(v);
    return std::to_string(v);
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
    return tokens;
}

bool is_comment_or_blank(const std::string& line) {
    for (char c : line) {
        if (c == ' ' || c == '\t' || c == '\r') continue;
        return c == '#';
    }
    return true;
}

} // namespace

Graph load_edge_list(std::istream& in) {
    auto ids = std::make_shared<IdMap>();
    std::vector<Edge> edges;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_comment_or_blank(line)) continue;
        auto tokens = tokenize(line);
        if (tokens.size() != 2)
            throw ParseError("edge list line " + std::to_string(line_no) +
                             ": expected two vertex labels, got " + std::to_string(tokens.size()));
        int u = ids->intern(tokens[0]);
        int v = ids->intern(tokens[1]);
        if (u == v) continue; // self-loops removed
        edges.push_back(make_edge(u, v));
    }
    if (ids->size() == 0) throw ParseError("empty edge list input");
    int n = ids->size();
    return Graph(n, std::move(edges), std::move(ids));
}

Graph load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open edge list file: " + path);
    return load_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
    for (const Edge& e : g.edges())
        out << g.vertex_label(e.first) << ' ' << g.vertex_label(e.second) << '\n';
}

Partition load_labels(std::istream& in, const Graph* bound) {
    IdMap vertex_ids;
    IdMap community_ids;
    std::vector<std::pair<int, int>> entries; // (vertex index, community)
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_comment_or_blank(line)) continue;
        auto tokens = tokenize(line);
        if (tokens.size() != 2)
            throw ParseError("label file line " + std::to_string(line_no) +
                             ": expected \"vertex community\", got " +
                             std::to_string(tokens.size()) + " tokens");
        int vertex;
        if (bound) {
            std::optional<int> idx;
            if (bound->ids()) {
                idx = bound->ids()->find(tokens[0]);
            } else {
                try {
                    std::size_t pos = 0;
                    int parsed = std::stoi(tokens[0], &pos);
                    if (pos == tokens[0].size() && parsed >= 0 && parsed < bound->vertex_count())
                        idx = parsed;
                } catch (const std::exception&) {
                }
            }
            if (!idx)
                throw CoverageError("label file line " + std::to_string(line_no) +
                                    ": unknown vertex '" + tokens[0] + "'");
            vertex = *idx;
        } else {
            vertex = vertex_ids.intern(tokens[0]);
        }
        entries.emplace_back(vertex, community_ids.intern(tokens[1]));
    }
    int n = bound ? bound->vertex_count() : vertex_ids.size();
    if (n == 0) throw ParseError("empty label input");

    std::vector<int> labels(static_cast<std::size_t>(n), -1);
    for (auto [v, c] : entries) {
        int& slot = labels[static_cast<std::size_t>(v)];
        if (slot != -1 && slot != c)
            throw ConflictError("vertex '" + (bound ? bound->vertex_label(v) : vertex_ids.label(v)) +
                                "' listed with two different community labels");
        slot = c;
    }
    for (int v = 0; v < n; ++v) {
        if (labels[static_cast<std::size_t>(v)] == -1)
            throw CoverageError("label file misses vertex '" +
                                (bound ? bound->vertex_label(v) : vertex_ids.label(v)) + "'");
    }
    return Partition(std::move(labels));
}

Partition load_labels_file(const std::string& path, const Graph* bound) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open label file: " + path);
    return load_labels(in, bound);
}

void write_labels(const Partition& p, const Graph& g, std::ostream& out) {
    for (int v = 0; v < g.vertex_count(); ++v)
        out << g.vertex_label(v) << ' ' << p.label_of(v) << '\n';
}

Graph apply_modification(const Graph& g, const ModificationScheme& mod) {
    std::unordered_set<std::uint64_t> to_delete;
    to_delete.reserve(mod.del.size() * 2);
    for (const Edge& e : mod.del) {
        if (!g.has_edge(e.first, e.second))
            throw ValidityError("deletion pair (" + g.vertex_label(e.first) + "," +
                                g.vertex_label(e.second) + ") is not an edge");
        if (!to_delete.insert(pair_key(e.first, e.second)).second)
            throw ValidityError("deletion pair (" + g.vertex_label(e.first) + "," +
                                g.vertex_label(e.second) + ") repeated in scheme");
    }
    std::unordered_set<std::uint64_t> to_add;
    to_add.reserve(mod.add.size() * 2);
    std::vector<Edge> edges;
    edges.reserve(g.edges().size() + mod.add.size());
    for (const Edge& e : mod.add) {
        if (e.first == e.second || e.first < 0 || std::max(e.first, e.second) >= g.vertex_count())
            throw ValidityError("addition pair out of range");
        if (g.has_edge(e.first, e.second))
            throw ValidityError("addition pair (" + g.vertex_label(e.first) + "," +
                                g.vertex_label(e.second) + ") is already an edge");
        if (!to_add.insert(pair_key(e.first, e.second)).second)
            throw ValidityError("addition pair (" + g.vertex_label(e.first) + "," +
                                g.vertex_label(e.second) + ") repeated in scheme");
        edges.push_back(make_edge(e.first, e.second));
    }
    for (const Edge& e : g.edges())
        if (!to_delete.contains(pair_key(e.first, e.second))) edges.push_back(e);
    return Graph(g.vertex_count(), std::move(edges), g.ids());
}

namespace {

// All non-edges of g, ascending. Only used when the non-edge set is small
// enough to enumerate.
std::vector<Edge> enumerate_nonedges(const Graph& g) {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(g.nonedge_count()));
    for (int u = 0; u < g.vertex_count(); ++u) {
        const auto& nbrs = g.neighbors(u);
        auto it = std::lower_bound(nbrs.begin(), nbrs.end(), u + 1);
        for (int v = u + 1; v < g.vertex_count(); ++v) {
            if (it != nbrs.end() && *it == v) {
                ++it;
                continue;
            }
            out.emplace_back(u, v);
        }
    }
    return out;
}

constexpr long long kEnumerationLimit = 200000;

std::vector<Edge> uniform_nonedges(const Graph& g, std::size_t count,
                                   const std::unordered_set<std::uint64_t>& exclude, Rng& rng) {
    long long universe = g.nonedge_count() - static_cast<long long>(exclude.size());
    if (static_cast<long long>(count) > universe)
        throw CapacityError("requested more non-edges than available");
    if (count == 0) return {};

    std::vector<Edge> picked;
    picked.reserve(count);
    if (g.nonedge_count() <= kEnumerationLimit) {
        std::vector<Edge> pool = enumerate_nonedges(g);
        if (!exclude.empty())
            std::erase_if(pool, [&](const Edge& e) { return exclude.contains(pair_key(e.first, e.second)); });
        // partial Fisher-Yates keeps the draw order random
        std::size_t limit = std::min(count, pool.size());
        for (std::size_t i = 0; i < limit; ++i) {
            std::uniform_int_distribution<std::size_t> dist(i, pool.size() - 1);
            std::swap(pool[i], pool[dist(rng)]);
            picked.push_back(pool[i]);
        }
        return picked;
    }

    std::unordered_set<std::uint64_t> seen;
    seen.reserve(count * 2);
    std::uniform_int_distribution<int> dist(0, g.vertex_count() - 1);
    std::size_t attempts = 0;
    const std::size_t max_attempts = 1000 * count + 1000;
    while (picked.size() < count && attempts < max_attempts) {
        ++attempts;
        int u = dist(rng), v = dist(rng);
        if (u == v || g.has_edge(u, v)) continue;
        std::uint64_t key = pair_key(u, v);
        if (exclude.contains(key) || !seen.insert(key).second) continue;
        picked.push_back(make_edge(u, v));
    }
    if (picked.size() < count) {
        // dense corner: fall back to explicit enumeration
        std::vector<Edge> pool = enumerate_nonedges(g);
        std::erase_if(pool, [&](const Edge& e) {
            std::uint64_t key = pair_key(e.first, e.second);
            return exclude.contains(key) || seen.contains(key);
        });
        std::size_t need = std::min(count - picked.size(), pool.size());
        for (std::size_t i = 0; i < need; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
            std::swap(pool[i], pool[pick(rng)]);
            picked.push_back(pool[i]);
        }
    }
    return picked;
}

} // namespace

std::vector<Edge> sample_nonedges(const Graph& g, std::size_t count,
                                  std::span<const std::pair<Edge, double>> weights, Rng& rng) {
    if (static_cast<long long>(count) > g.nonedge_count())
        throw CapacityError("count exceeds the non-edge universe (" +
                            std::to_string(g.nonedge_count()) + " available)");
    if (count == 0) return {};
    if (weights.empty()) return uniform_nonedges(g, count, {}, rng);

    // Exponential-key ranking: drawing the `count` smallest Exp(1)/w keys is
    // equivalent to sequential weighted sampling without replacement.
    std::vector<std::pair<double, Edge>> keyed;
    keyed.reserve(weights.size());
    std::uniform_real_distribution<double> unit(std::numeric_limits<double>::min(), 1.0);
    for (const auto& [edge, w] : weights) {
        if (w < 0) throw DomainError("negative sampling weight");
        double u = unit(rng); // consumed even for zero weights: keeps draws aligned
        if (w == 0.0) continue;
        if (g.has_edge(edge.first, edge.second)) continue;
        keyed.emplace_back(-std::log(u) / w, make_edge(edge.first, edge.second));
    }
    std::size_t take = std::min(count, keyed.size());
    std::partial_sort(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(take), keyed.end());
    std::vector<Edge> picked;
    picked.reserve(count);
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(count * 2);
    for (std::size_t i = 0; i < take; ++i) {
        picked.push_back(keyed[i].second);
        chosen.insert(pair_key(keyed[i].second.first, keyed[i].second.second));
    }
    if (picked.size() < count) {
        auto filler = uniform_nonedges(g, count - picked.size(), chosen, rng);
        picked.insert(picked.end(), filler.begin(), filler.end());
    }
    return picked;
}

Partition connected_components(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    int next = 0;
    std::vector<int> queue;
    for (int s = 0; s < n; ++s) {
        if (comp[static_cast<std::size_t>(s)] != -1) continue;
        comp[static_cast<std::size_t>(s)] = next;
        queue.assign(1, s);
        while (!queue.empty()) {
            int u = queue.back();
            queue.pop_back();
            for (int v : g.neighbors(u)) {
                if (comp[static_cast<std::size_t>(v)] == -1) {
                    comp[static_cast<std::size_t>(v)] = next;
                    queue.push_back(v);
                }
            }
        }
        ++next;
    }
    return Partition(std::move(comp));
}

} // namespace recd
