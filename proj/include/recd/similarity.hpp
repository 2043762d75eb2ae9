#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "recd/graph.hpp"

namespace recd {

enum class SimilarityKind {
    CommonNeighbors,
    Salton,
    Jaccard,
    HubPromoted,
    AdamicAdar,
    ResourceAllocation,
    LocalPath,
    RandomWalkRestart,
};

inline constexpr std::array<SimilarityKind, 8> kAllSimilarityKinds = {
    SimilarityKind::CommonNeighbors,   SimilarityKind::Salton,
    SimilarityKind::Jaccard,           SimilarityKind::HubPromoted,
    SimilarityKind::AdamicAdar,        SimilarityKind::ResourceAllocation,
    SimilarityKind::LocalPath,         SimilarityKind::RandomWalkRestart,
};

std::string to_string(SimilarityKind kind);
std::optional<SimilarityKind> similarity_from_string(std::string_view name);

struct SimilarityParams {
    double lp_alpha = 0.01;     // third-order weight of the local-path index
    double rwr_continue = 0.85; // walk-continue probability, in (0,1)
};

// Sparse symmetric nonnegative vertex-pair scores for one index.
class SimilarityMatrix {
public:
    SimilarityMatrix() = default;
    SimilarityMatrix(SimilarityKind kind, SimilarityParams params,
                     std::vector<std::pair<Edge, double>> entries);

    SimilarityKind kind() const { return kind_; }
    const SimilarityParams& params() const { return params_; }
    double score(int i, int j) const;
    // Sorted by pair, first < second; every stored score is positive.
    const std::vector<std::pair<Edge, double>>& entries() const { return entries_; }

private:
    SimilarityKind kind_ = SimilarityKind::CommonNeighbors;
    SimilarityParams params_;
    std::vector<std::pair<Edge, double>> entries_;
    std::unordered_map<std::uint64_t, double> lookup_;
};

SimilarityMatrix compute_similarity(const Graph& g, SimilarityKind kind,
                                    SimilarityParams params = {});

// Stationary restart-walk distribution from `source`. An isolated source
// yields its own indicator vector with the flag set.
struct RwrResult {
    std::vector<double> prob;
    bool isolated_source = false;
    int iterations = 0;
    double residual = 0.0;
};

RwrResult rwr_distribution(const Graph& g, int source, double continue_prob);

// Optional inspection dump, CSV "i,j,score" with external vertex labels.
void write_similarity_csv(const SimilarityMatrix& m, const Graph& g, std::ostream& out);

} // namespace recd
