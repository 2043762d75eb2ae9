#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "recd/graph.hpp"
#include "recd/partition.hpp"

namespace recd {

// Newman modularity of p on g. Throws MetricError on an empty edge set.
double modularity(const Graph& g, const Partition& p);

// Normalized mutual information, 2I/(H(X)+H(Y)) with natural-log entropies.
// Two single-block partitions are defined to agree perfectly (1.0).
double nmi(const Partition& x, const Partition& y);

// Adjusted Rand index via the contingency-table form.
double ari(const Partition& x, const Partition& y);

// Relative improvement rate of a metric after enhancement.
double rimp(double met_ori, double met_en);

// Per-trial value list with population mean/std.
struct Summary {
    std::vector<double> values;

    double mean() const;
    double stddev() const; // population form (divide by trial count)
};

struct MetricsReport {
    std::string dataset;
    std::string detector;
    std::string method;
    Summary q;
    Summary nmi;
    Summary ari;
    std::optional<double> rimp_q;
    std::optional<double> rimp_nmi;
    std::optional<double> rimp_ari;
    std::uint64_t base_seed = 0;
};

// CSV columns: dataset, detector, method, metric, mean, std, rimp (3 decimals).
void write_report_csv(std::span<const MetricsReport> reports, std::ostream& out);
// JSON mirror at full precision, including per-trial values.
void write_report_json(std::span<const MetricsReport> reports, std::ostream& out);

} // namespace recd
