#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "recd/graph.hpp"
#include "recd/partition.hpp"
#include "recd/rng.hpp"

namespace recd {

enum class DetectorKind {
    Louvain,
    LabelPropagation,
    GreedyModularity,
    Walktrap,
    External,
};

std::string to_string(DetectorKind kind);
std::optional<DetectorKind> detector_from_string(std::string_view name);

struct DetectorSpec {
    DetectorKind kind = DetectorKind::Louvain;
    int walktrap_steps = 4;    // random-walk length t
    std::string external_path; // partition file for the external plug
};

// Run the selected detector. Stochastic detectors (louvain vertex order,
// label-propagation order and tie draws) consume only the supplied rng, so a
// fixed seed fixes the partition. Disconnected graphs are handled per
// component with globally distinct labels.
Partition detect(const DetectorSpec& spec, const Graph& g, Rng& rng);

// Admit a partition produced out of process, in the label-file format.
Partition load_external_partition(const std::string& path, const Graph& g);

} // namespace recd
