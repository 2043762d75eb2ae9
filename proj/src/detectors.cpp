#include "recd/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "recd/error.hpp"

namespace recd {

std::string to_string(DetectorKind kind) {
    switch (kind) {
        case DetectorKind::Louvain: return "louvain";
        case DetectorKind::LabelPropagation: return "label_propagation";
        case DetectorKind::GreedyModularity: return "greedy_modularity";
        case DetectorKind::Walktrap: return "walktrap";
        case DetectorKind::External: return "external";
    }
    return "?";
}

std::optional<DetectorKind> detector_from_string(std::string_view name) {
    if (name == "louvain" || name == "lou") return DetectorKind::Louvain;
    if (name == "label_propagation" || name == "lp") return DetectorKind::LabelPropagation;
    if (name == "greedy_modularity" || name == "fg") return DetectorKind::GreedyModularity;
    if (name == "walktrap" || name == "wt") return DetectorKind::Walktrap;
    if (name == "external") return DetectorKind::External;
    return std::nullopt;
}

namespace {

constexpr int kLabelPropagationSweepCap = 100;
constexpr int kLouvainPassCap = 1000;
constexpr int kLouvainLevelCap = 100;
constexpr double kGainEpsilon = 1e-12;

// ---- Louvain ---------------------------------------------------------------

// Aggregated level graph: weighted adjacency without self entries, self-loop
// weights kept separately. Weighted degree counts a self-loop twice.
struct LevelGraph {
    int n = 0;
    std::vector<std::vector<std::pair<int, double>>> adj;
    std::vector<double> self_loop;
    std::vector<double> wdeg;
    double total_weight = 0.0; // every edge once, self-loops once
};

LevelGraph level_from_graph(const Graph& g) {
    LevelGraph lg;
    lg.n = g.vertex_count();
    lg.adj.resize(static_cast<std::size_t>(lg.n));
    lg.self_loop.assign(static_cast<std::size_t>(lg.n), 0.0);
    lg.wdeg.assign(static_cast<std::size_t>(lg.n), 0.0);
    for (int v = 0; v < lg.n; ++v) {
        for (int u : g.neighbors(v)) lg.adj[static_cast<std::size_t>(v)].push_back({u, 1.0});
        lg.wdeg[static_cast<std::size_t>(v)] = static_cast<double>(g.degree(v));
    }
    lg.total_weight = static_cast<double>(g.edge_count());
    return lg;
}

// One round of asynchronous local moves; returns the community of each node
// and whether anything moved.
bool louvain_local_moves(const LevelGraph& lg, std::vector<int>& node_comm, Rng& rng) {
    const int n = lg.n;
    std::vector<double> comm_tot(static_cast<std::size_t>(n), 0.0);
    for (int v = 0; v < n; ++v)
        comm_tot[static_cast<std::size_t>(node_comm[static_cast<std::size_t>(v)])] +=
            lg.wdeg[static_cast<std::size_t>(v)];

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);

    std::vector<double> w_to(static_cast<std::size_t>(n), 0.0);
    std::vector<int> touched;
    const double two_w = 2.0 * lg.total_weight;

    bool moved_any = false;
    for (int pass = 0; pass < kLouvainPassCap; ++pass) {
        std::shuffle(order.begin(), order.end(), rng);
        bool moved_this_pass = false;
        for (int v : order) {
            touched.clear();
            for (auto [u, w] : lg.adj[static_cast<std::size_t>(v)]) {
                int c = node_comm[static_cast<std::size_t>(u)];
                if (w_to[static_cast<std::size_t>(c)] == 0.0) touched.push_back(c);
                w_to[static_cast<std::size_t>(c)] += w;
            }
            int old = node_comm[static_cast<std::size_t>(v)];
            comm_tot[static_cast<std::size_t>(old)] -= lg.wdeg[static_cast<std::size_t>(v)];
            double k_v = lg.wdeg[static_cast<std::size_t>(v)];
            auto gain = [&](int c) {
                return w_to[static_cast<std::size_t>(c)] -
                       comm_tot[static_cast<std::size_t>(c)] * k_v / two_w;
            };
            std::sort(touched.begin(), touched.end());
            int best = old;
            double best_gain = gain(old);
            for (int c : touched) {
                if (c == old) continue;
                double gc = gain(c);
                if (gc > best_gain + kGainEpsilon) {
                    best = c;
                    best_gain = gc;
                }
            }
            comm_tot[static_cast<std::size_t>(best)] += k_v;
            if (best != old) {
                node_comm[static_cast<std::size_t>(v)] = best;
                moved_this_pass = true;
                moved_any = true;
            }
            for (int c : touched) w_to[static_cast<std::size_t>(c)] = 0.0;
        }
        if (!moved_this_pass) return moved_any;
    }
    throw DetectorError("louvain local-move pass cap exceeded");
}

LevelGraph aggregate(const LevelGraph& lg, const std::vector<int>& node_comm,
                     std::vector<int>& renumber) {
    renumber.assign(static_cast<std::size_t>(lg.n), -1);
    int next = 0;
    for (int v = 0; v < lg.n; ++v) {
        int c = node_comm[static_cast<std::size_t>(v)];
        if (renumber[static_cast<std::size_t>(c)] == -1) renumber[static_cast<std::size_t>(c)] = next++;
    }

    LevelGraph out;
    out.n = next;
    out.adj.resize(static_cast<std::size_t>(next));
    out.self_loop.assign(static_cast<std::size_t>(next), 0.0);
    out.wdeg.assign(static_cast<std::size_t>(next), 0.0);
    out.total_weight = lg.total_weight;

    std::vector<std::unordered_map<int, double>> between(static_cast<std::size_t>(next));
    for (int v = 0; v < lg.n; ++v) {
        int cv = renumber[static_cast<std::size_t>(node_comm[static_cast<std::size_t>(v)])];
        out.self_loop[static_cast<std::size_t>(cv)] += lg.self_loop[static_cast<std::size_t>(v)];
        for (auto [u, w] : lg.adj[static_cast<std::size_t>(v)]) {
            if (u < v) continue; // each undirected pair once
            int cu = renumber[static_cast<std::size_t>(node_comm[static_cast<std::size_t>(u)])];
            if (cu == cv)
                out.self_loop[static_cast<std::size_t>(cv)] += w;
            else
                between[static_cast<std::size_t>(std::min(cu, cv))][std::max(cu, cv)] += w;
        }
    }
    for (int c = 0; c < next; ++c) {
        std::vector<std::pair<int, double>> nbrs(between[static_cast<std::size_t>(c)].begin(),
                                                 between[static_cast<std::size_t>(c)].end());
        std::sort(nbrs.begin(), nbrs.end());
        for (auto [d, w] : nbrs) {
            out.adj[static_cast<std::size_t>(c)].push_back({d, w});
            out.adj[static_cast<std::size_t>(d)].push_back({c, w});
        }
    }
    for (int c = 0; c < next; ++c) {
        auto& nbrs = out.adj[static_cast<std::size_t>(c)];
        std::sort(nbrs.begin(), nbrs.end());
        double k = 2.0 * out.self_loop[static_cast<std::size_t>(c)];
        for (auto [d, w] : nbrs) k += w;
        out.wdeg[static_cast<std::size_t>(c)] = k;
    }
    return out;
}

Partition louvain(const Graph& g, Rng& rng) {
    const int n0 = g.vertex_count();
    std::vector<int> flat(static_cast<std::size_t>(n0));
    std::iota(flat.begin(), flat.end(), 0);

    LevelGraph lg = level_from_graph(g);
    for (int level = 0; level < kLouvainLevelCap; ++level) {
        std::vector<int> node_comm(static_cast<std::size_t>(lg.n));
        std::iota(node_comm.begin(), node_comm.end(), 0);
        bool moved = louvain_local_moves(lg, node_comm, rng);
        if (!moved) break;

        std::vector<int> renumber;
        LevelGraph next = aggregate(lg, node_comm, renumber);
        for (int v = 0; v < n0; ++v) {
            int c = node_comm[static_cast<std::size_t>(flat[static_cast<std::size_t>(v)])];
            flat[static_cast<std::size_t>(v)] = renumber[static_cast<std::size_t>(c)];
        }
        if (next.n == lg.n) break;
        lg = std::move(next);
    }
    return Partition(std::move(flat));
}

// ---- Label propagation ------------------------------------------------------

Partition label_propagation(const Graph& g, Rng& rng) {
    const int n = g.vertex_count();
    std::vector<int> labels(static_cast<std::size_t>(n));
    std::iota(labels.begin(), labels.end(), 0);

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> count(static_cast<std::size_t>(n), 0);
    std::vector<int> touched, dominant;

    for (int sweep = 0; sweep < kLabelPropagationSweepCap; ++sweep) {
        std::shuffle(order.begin(), order.end(), rng);
        int changes = 0;
        for (int v : order) {
            if (g.degree(v) == 0) continue;
            touched.clear();
            int max_count = 0;
            for (int u : g.neighbors(v)) {
                int l = labels[static_cast<std::size_t>(u)];
                if (count[static_cast<std::size_t>(l)] == 0) touched.push_back(l);
                max_count = std::max(max_count, ++count[static_cast<std::size_t>(l)]);
            }
            int current = labels[static_cast<std::size_t>(v)];
            bool current_dominant = count[static_cast<std::size_t>(current)] == max_count;
            if (!current_dominant) {
                dominant.clear();
                for (int l : touched)
                    if (count[static_cast<std::size_t>(l)] == max_count) dominant.push_back(l);
                std::sort(dominant.begin(), dominant.end());
                std::uniform_int_distribution<std::size_t> pick(0, dominant.size() - 1);
                labels[static_cast<std::size_t>(v)] = dominant[pick(rng)];
                ++changes;
            }
            for (int l : touched) count[static_cast<std::size_t>(l)] = 0;
        }
        if (changes == 0) break;
    }
    return Partition(std::move(labels));
}

// ---- Greedy modularity agglomeration (CNM) ----------------------------------

struct HeapEntry {
    double dq;
    int a, b;       // community ids, a < b
    int va, vb;     // version stamps for lazy invalidation
};

struct HeapCompare {
    bool operator()(const HeapEntry& x, const HeapEntry& y) const {
        if (x.dq != y.dq) return x.dq < y.dq;                 // max dq first
        return std::tie(x.a, x.b) > std::tie(y.a, y.b);       // ties: smallest pair
    }
};

Partition greedy_modularity(const Graph& g) {
    const int n = g.vertex_count();
    const double m = static_cast<double>(g.edge_count());
    if (m == 0.0) {
        std::vector<int> each(static_cast<std::size_t>(n));
        std::iota(each.begin(), each.end(), 0);
        return Partition(std::move(each));
    }

    std::vector<long long> degsum(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) degsum[static_cast<std::size_t>(v)] = g.degree(v);
    std::vector<std::unordered_map<int, long long>> between(static_cast<std::size_t>(n));
    for (const Edge& e : g.edges()) {
        between[static_cast<std::size_t>(e.first)][e.second] = 1;
        between[static_cast<std::size_t>(e.second)][e.first] = 1;
    }
    std::vector<int> version(static_cast<std::size_t>(n), 0);
    std::vector<bool> alive(static_cast<std::size_t>(n), true);

    auto delta_q = [&](int a, int b, long long btw) {
        return static_cast<double>(btw) / m -
               static_cast<double>(degsum[static_cast<std::size_t>(a)]) *
                   static_cast<double>(degsum[static_cast<std::size_t>(b)]) / (2.0 * m * m);
    };

    std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapCompare> heap;
    for (const Edge& e : g.edges())
        heap.push({delta_q(e.first, e.second, 1), e.first, e.second, 0, 0});

    std::vector<std::pair<int, int>> merges; // (kept, absorbed)
    double q = 0.0;
    for (int v = 0; v < n; ++v) {
        double a = static_cast<double>(degsum[static_cast<std::size_t>(v)]) / (2.0 * m);
        q -= a * a;
    }
    double best_q = q;
    std::size_t best_prefix = 0;

    while (!heap.empty()) {
        HeapEntry top = heap.top();
        heap.pop();
        if (!alive[static_cast<std::size_t>(top.a)] || !alive[static_cast<std::size_t>(top.b)])
            continue;
        if (top.va != version[static_cast<std::size_t>(top.a)] ||
            top.vb != version[static_cast<std::size_t>(top.b)])
            continue;

        int lo = top.a, hi = top.b; // a < b by construction
        q += top.dq;
        merges.push_back({lo, hi});
        if (q > best_q + kGainEpsilon) {
            best_q = q;
            best_prefix = merges.size();
        }

        alive[static_cast<std::size_t>(hi)] = false;
        ++version[static_cast<std::size_t>(lo)];
        ++version[static_cast<std::size_t>(hi)];
        degsum[static_cast<std::size_t>(lo)] += degsum[static_cast<std::size_t>(hi)];

        auto& nbr_lo = between[static_cast<std::size_t>(lo)];
        auto& nbr_hi = between[static_cast<std::size_t>(hi)];
        nbr_lo.erase(hi);
        for (auto [x, b] : nbr_hi) {
            if (x == lo) continue;
            between[static_cast<std::size_t>(x)].erase(hi);
            nbr_lo[x] += b;
        }
        nbr_hi.clear();
        std::vector<std::pair<int, long long>> sorted_nbrs(nbr_lo.begin(), nbr_lo.end());
        std::sort(sorted_nbrs.begin(), sorted_nbrs.end());
        for (auto [x, b] : sorted_nbrs) {
            between[static_cast<std::size_t>(x)][lo] = b;
            int a = std::min(lo, x), bb = std::max(lo, x);
            heap.push({delta_q(a, bb, b), a, bb, version[static_cast<std::size_t>(a)],
                       version[static_cast<std::size_t>(bb)]});
        }
    }

    // replay the merge prefix that realized the modularity peak
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (std::size_t i = 0; i < best_prefix; ++i)
        parent[static_cast<std::size_t>(find(merges[i].second))] = find(merges[i].first);
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) labels[static_cast<std::size_t>(v)] = find(v);
    return Partition(std::move(labels));
}

// ---- Walktrap ----------------------------------------------------------------

struct WtEntry {
    double ds;
    int a, b;
    int va, vb;
};

struct WtCompare {
    bool operator()(const WtEntry& x, const WtEntry& y) const {
        if (x.ds != y.ds) return x.ds > y.ds;           // min distance first
        return std::tie(x.a, x.b) > std::tie(y.a, y.b); // ties: smallest pair
    }
};

Partition walktrap(const Graph& g, int steps) {
    if (steps < 1) throw ConfigError("walktrap walk length must be >= 1");
    const int n = g.vertex_count();
    const double m = static_cast<double>(g.edge_count());
    if (n == 1 || m == 0.0) {
        std::vector<int> each(static_cast<std::size_t>(n));
        std::iota(each.begin(), each.end(), 0);
        return Partition(std::move(each));
    }

    // rows of P^t
    std::vector<std::vector<double>> pvec(static_cast<std::size_t>(n));
    {
        std::vector<double> cur(static_cast<std::size_t>(n)), next(static_cast<std::size_t>(n));
        for (int s = 0; s < n; ++s) {
            std::fill(cur.begin(), cur.end(), 0.0);
            cur[static_cast<std::size_t>(s)] = 1.0;
            for (int step = 0; step < steps; ++step) {
                std::fill(next.begin(), next.end(), 0.0);
                for (int u = 0; u < n; ++u) {
                    double mass = cur[static_cast<std::size_t>(u)];
                    if (mass == 0.0) continue;
                    double share = mass / static_cast<double>(g.degree(u));
                    for (int v : g.neighbors(u)) next[static_cast<std::size_t>(v)] += share;
                }
                cur.swap(next);
            }
            pvec[static_cast<std::size_t>(s)] = cur;
        }
    }

    std::vector<bool> alive(static_cast<std::size_t>(n), true);
    std::vector<int> size(static_cast<std::size_t>(n), 1);
    std::vector<int> version(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<int>> members(static_cast<std::size_t>(n));
    std::vector<long long> degsum(static_cast<std::size_t>(n));
    std::vector<long long> intra(static_cast<std::size_t>(n), 0);
    std::vector<int> comm_of(static_cast<std::size_t>(n));
    std::vector<std::unordered_map<int, char>> adj_comm(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        members[static_cast<std::size_t>(v)] = {v};
        degsum[static_cast<std::size_t>(v)] = g.degree(v);
        comm_of[static_cast<std::size_t>(v)] = v;
        for (int u : g.neighbors(v)) adj_comm[static_cast<std::size_t>(v)][u] = 1;
    }

    auto distance = [&](int a, int b) {
        const auto& pa = pvec[static_cast<std::size_t>(a)];
        const auto& pb = pvec[static_cast<std::size_t>(b)];
        double r2 = 0.0;
        for (int k = 0; k < n; ++k) {
            double d = pa[static_cast<std::size_t>(k)] - pb[static_cast<std::size_t>(k)];
            r2 += d * d / static_cast<double>(g.degree(k));
        }
        double sa = size[static_cast<std::size_t>(a)], sb = size[static_cast<std::size_t>(b)];
        return sa * sb / (sa + sb) * r2 / static_cast<double>(n);
    };

    std::priority_queue<WtEntry, std::vector<WtEntry>, WtCompare> heap;
    for (const Edge& e : g.edges())
        heap.push({distance(e.first, e.second), e.first, e.second, 0, 0});

    double q = 0.0;
    for (int v = 0; v < n; ++v) {
        double a = static_cast<double>(g.degree(v)) / (2.0 * m);
        q -= a * a;
    }
    double best_q = q;
    std::vector<std::pair<int, int>> merges;
    std::size_t best_prefix = 0;

    while (!heap.empty()) {
        WtEntry top = heap.top();
        heap.pop();
        if (!alive[static_cast<std::size_t>(top.a)] || !alive[static_cast<std::size_t>(top.b)])
            continue;
        if (top.va != version[static_cast<std::size_t>(top.a)] ||
            top.vb != version[static_cast<std::size_t>(top.b)])
            continue;

        int lo = top.a, hi = top.b;
        // edges between the two communities, walking the smaller member list
        int small = members[static_cast<std::size_t>(lo)].size() <=
                            members[static_cast<std::size_t>(hi)].size()
                        ? lo
                        : hi;
        int other = small == lo ? hi : lo;
        long long btw = 0;
        for (int v : members[static_cast<std::size_t>(small)])
            for (int u : g.neighbors(v))
                if (comm_of[static_cast<std::size_t>(u)] == other) ++btw;

        double d_lo = static_cast<double>(degsum[static_cast<std::size_t>(lo)]);
        double d_hi = static_cast<double>(degsum[static_cast<std::size_t>(hi)]);
        q += static_cast<double>(btw) / m - d_lo * d_hi / (2.0 * m * m);
        merges.push_back({lo, hi});
        if (q > best_q + kGainEpsilon) {
            best_q = q;
            best_prefix = merges.size();
        }

        // fold hi into lo
        double s_lo = size[static_cast<std::size_t>(lo)], s_hi = size[static_cast<std::size_t>(hi)];
        auto& plo = pvec[static_cast<std::size_t>(lo)];
        const auto& phi = pvec[static_cast<std::size_t>(hi)];
        for (int k = 0; k < n; ++k)
            plo[static_cast<std::size_t>(k)] =
                (s_lo * plo[static_cast<std::size_t>(k)] + s_hi * phi[static_cast<std::size_t>(k)]) /
                (s_lo + s_hi);
        size[static_cast<std::size_t>(lo)] += size[static_cast<std::size_t>(hi)];
        degsum[static_cast<std::size_t>(lo)] += degsum[static_cast<std::size_t>(hi)];
        intra[static_cast<std::size_t>(lo)] += intra[static_cast<std::size_t>(hi)] + btw;
        for (int v : members[static_cast<std::size_t>(hi)]) comm_of[static_cast<std::size_t>(v)] = lo;
        auto& mem_lo = members[static_cast<std::size_t>(lo)];
        auto& mem_hi = members[static_cast<std::size_t>(hi)];
        mem_lo.insert(mem_lo.end(), mem_hi.begin(), mem_hi.end());
        mem_hi.clear();
        mem_hi.shrink_to_fit();
        alive[static_cast<std::size_t>(hi)] = false;
        ++version[static_cast<std::size_t>(lo)];
        ++version[static_cast<std::size_t>(hi)];

        auto& ac_lo = adj_comm[static_cast<std::size_t>(lo)];
        auto& ac_hi = adj_comm[static_cast<std::size_t>(hi)];
        ac_lo.erase(hi);
        for (auto [x, one] : ac_hi) {
            (void)one;
            if (x == lo) continue;
            adj_comm[static_cast<std::size_t>(x)].erase(hi);
            adj_comm[static_cast<std::size_t>(x)][lo] = 1;
            ac_lo[x] = 1;
        }
        ac_hi.clear();

        std::vector<int> nbrs;
        nbrs.reserve(ac_lo.size());
        for (auto [x, one] : ac_lo) {
            (void)one;
            if (alive[static_cast<std::size_t>(x)]) nbrs.push_back(x);
        }
        std::sort(nbrs.begin(), nbrs.end());
        for (int x : nbrs) {
            int a = std::min(lo, x), b = std::max(lo, x);
            heap.push({distance(a, b), a, b, version[static_cast<std::size_t>(a)],
                       version[static_cast<std::size_t>(b)]});
        }
    }

    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (std::size_t i = 0; i < best_prefix; ++i)
        parent[static_cast<std::size_t>(find(merges[i].second))] = find(merges[i].first);
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) labels[static_cast<std::size_t>(v)] = find(v);
    return Partition(std::move(labels));
}

// ---- per-component dispatch ---------------------------------------------------

Partition run_core(const DetectorSpec& spec, const Graph& g, Rng& rng) {
    switch (spec.kind) {
        case DetectorKind::Louvain: return louvain(g, rng);
        case DetectorKind::LabelPropagation: return label_propagation(g, rng);
        case DetectorKind::GreedyModularity: return greedy_modularity(g);
        case DetectorKind::Walktrap: return walktrap(g, spec.walktrap_steps);
        case DetectorKind::External: break;
    }
    throw DetectorError("unsupported detector for core dispatch");
}

} // namespace

Partition detect(const DetectorSpec& spec, const Graph& g, Rng& rng) {
    if (g.vertex_count() == 0) throw DomainError("detect requires a non-empty graph");
    if (spec.kind == DetectorKind::External) return load_external_partition(spec.external_path, g);

    Partition comps = connected_components(g);
    if (comps.community_count() == 1) return run_core(spec, g, rng);

    // run per component with derived seeds, offsetting labels globally
    std::vector<int> labels(static_cast<std::size_t>(g.vertex_count()), -1);
    int offset = 0;
    for (const auto& comp : comps.blocks()) {
        Rng child(rng());
        std::vector<int> back(comp.begin(), comp.end());
        std::vector<int> fwd(static_cast<std::size_t>(g.vertex_count()), -1);
        for (std::size_t i = 0; i < back.size(); ++i)
            fwd[static_cast<std::size_t>(back[i])] = static_cast<int>(i);
        std::vector<Edge> sub_edges;
        for (int v : comp)
            for (int u : g.neighbors(v))
                if (v < u) sub_edges.push_back({fwd[static_cast<std::size_t>(v)],
                                                fwd[static_cast<std::size_t>(u)]});
        Graph sub(static_cast<int>(back.size()), std::move(sub_edges));
        Partition local = run_core(spec, sub, child);
        for (std::size_t i = 0; i < back.size(); ++i)
            labels[static_cast<std::size_t>(back[i])] = offset + local.label_of(static_cast<int>(i));
        offset += local.community_count();
    }
    return Partition(std::move(labels));
}

Partition load_external_partition(const std::string& path, const Graph& g) {
    try {
        return load_labels_file(path, &g);
    } catch (const Error& e) {
        throw DetectorError(std::string("external partition plug: ") + e.what());
    }
}

} // namespace recd
