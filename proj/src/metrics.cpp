#include "recd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <nlohmann/json.hpp>

#include "recd/error.hpp"

namespace recd {

double modularity(const Graph& g, const Partition& p) {
    if (p.size() != g.vertex_count())
        throw MetricError("partition does not cover the graph's vertex set");
    const double m = static_cast<double>(g.edge_count());
    if (m == 0.0) throw MetricError("modularity undefined for a graph with no edges");

    std::vector<double> intra(static_cast<std::size_t>(p.community_count()), 0.0);
    std::vector<double> degsum(static_cast<std::size_t>(p.community_count()), 0.0);
    for (const Edge& e : g.edges())
        if (p.label_of(e.first) == p.label_of(e.second))
            intra[static_cast<std::size_t>(p.label_of(e.first))] += 1.0;
    for (int v = 0; v < g.vertex_count(); ++v)
        degsum[static_cast<std::size_t>(p.label_of(v))] += static_cast<double>(g.degree(v));

    double q = 0.0;
    for (int c = 0; c < p.community_count(); ++c) {
        double frac = degsum[static_cast<std::size_t>(c)] / (2.0 * m);
        q += intra[static_cast<std::size_t>(c)] / m - frac * frac;
    }
    return q;
}

namespace {

// Contingency counts n_ij plus marginals for two normalized partitions.
struct Contingency {
    std::vector<long long> cells; // kx * ky
    std::vector<long long> row;   // kx
    std::vector<long long> col;   // ky
    int kx, ky;
    long long n;
};

Contingency contingency(const Partition& x, const Partition& y) {
    if (x.size() != y.size()) throw MetricError("partitions over different vertex sets");
    Contingency c;
    c.kx = x.community_count();
    c.ky = y.community_count();
    c.n = x.size();
    c.cells.assign(static_cast<std::size_t>(c.kx) * static_cast<std::size_t>(c.ky), 0);
    c.row.assign(static_cast<std::size_t>(c.kx), 0);
    c.col.assign(static_cast<std::size_t>(c.ky), 0);
    for (int v = 0; v < x.size(); ++v) {
        int a = x.label_of(v), b = y.label_of(v);
        ++c.cells[static_cast<std::size_t>(a) * static_cast<std::size_t>(c.ky) + static_cast<std::size_t>(b)];
        ++c.row[static_cast<std::size_t>(a)];
        ++c.col[static_cast<std::size_t>(b)];
    }
    return c;
}

double comb2(long long v) { return 0.5 * static_cast<double>(v) * static_cast<double>(v - 1); }

} // namespace

double nmi(const Partition& x, const Partition& y) {
    Contingency c = contingency(x, y);
    if (c.n == 0) throw MetricError("nmi undefined on empty partitions");
    const double n = static_cast<double>(c.n);

    double hx = 0.0, hy = 0.0, mi = 0.0;
    for (long long a : c.row)
        if (a > 0) hx -= (a / n) * std::log(a / n);
    for (long long b : c.col)
        if (b > 0) hy -= (b / n) * std::log(b / n);
    for (int i = 0; i < c.kx; ++i) {
        for (int j = 0; j < c.ky; ++j) {
            long long nij = c.cells[static_cast<std::size_t>(i) * static_cast<std::size_t>(c.ky) + static_cast<std::size_t>(j)];
            if (nij == 0) continue;
            double pij = nij / n;
            mi += pij * std::log(n * static_cast<double>(nij) /
                                 (static_cast<double>(c.row[static_cast<std::size_t>(i)]) *
                                  static_cast<double>(c.col[static_cast<std::size_t>(j)])));
        }
    }
    if (hx + hy == 0.0) return 1.0; // both single-block: identical partitions
    return std::clamp(2.0 * mi / (hx + hy), 0.0, 1.0);
}

double ari(const Partition& x, const Partition& y) {
    Contingency c = contingency(x, y);
    if (c.n < 2) throw MetricError("ari undefined for fewer than two vertices");

    double sum_cells = 0.0, sum_row = 0.0, sum_col = 0.0;
    for (long long v : c.cells) sum_cells += comb2(v);
    for (long long v : c.row) sum_row += comb2(v);
    for (long long v : c.col) sum_col += comb2(v);
    const double pairs = comb2(c.n);
    const double expected = sum_row * sum_col / pairs;
    const double maximum = 0.5 * (sum_row + sum_col);
    if (maximum == expected) return x.same_clustering(y) ? 1.0 : 0.0;
    return (sum_cells - expected) / (maximum - expected);
}

double rimp(double met_ori, double met_en) {
    if (met_ori < 0.0) throw DomainError("rimp requires a nonnegative original metric");
    if (met_ori > 0.0) return (met_en - met_ori) / met_ori;
    return met_en - met_ori;
}

double Summary::mean() const {
    if (values.empty()) return 0.0;
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

double Summary::stddev() const {
    if (values.empty()) return 0.0;
    double mu = mean();
    double acc = 0.0;
    for (double v : values) acc += (v - mu) * (v - mu);
    return std::sqrt(acc / static_cast<double>(values.size()));
}

namespace {

std::string fixed3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

void csv_metric_row(std::ostream& out, const MetricsReport& r, const char* metric,
                    const Summary& s, const std::optional<double>& rim) {
    out << r.dataset << ',' << r.detector << ',' << r.method << ',' << metric << ','
        << fixed3(s.mean()) << ',' << fixed3(s.stddev()) << ','
        << (rim ? fixed3(*rim) : std::string("")) << '\n';
}

nlohmann::json metric_json(const Summary& s, const std::optional<double>& rim) {
    nlohmann::json j;
    j["mean"] = s.mean();
    j["std"] = s.stddev();
    j["values"] = s.values;
    if (rim) j["rimp"] = *rim;
    return j;
}

} // namespace

void write_report_csv(std::span<const MetricsReport> reports, std::ostream& out) {
    out << "dataset,detector,method,metric,mean,std,rimp\n";
    for (const MetricsReport& r : reports) {
        csv_metric_row(out, r, "q", r.q, r.rimp_q);
        csv_metric_row(out, r, "nmi", r.nmi, r.rimp_nmi);
        csv_metric_row(out, r, "ari", r.ari, r.rimp_ari);
    }
}

void write_report_json(std::span<const MetricsReport> reports, std::ostream& out) {
    nlohmann::json root = nlohmann::json::array();
    for (const MetricsReport& r : reports) {
        nlohmann::json j;
        j["dataset"] = r.dataset;
        j["detector"] = r.detector;
        j["method"] = r.method;
        j["base_seed"] = r.base_seed;
        j["trials"] = r.nmi.values.size();
        j["q"] = metric_json(r.q, r.rimp_q);
        j["nmi"] = metric_json(r.nmi, r.rimp_nmi);
        j["ari"] = metric_json(r.ari, r.rimp_ari);
        root.push_back(std::move(j));
    }
    out << root.dump(2) << '\n';
}

} // namespace recd
