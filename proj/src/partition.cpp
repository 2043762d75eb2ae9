#include "recd/partition.hpp"

#include <unordered_map>

#include "recd/error.hpp"

namespace recd {

Partition::Partition(std::vector<int> raw_labels) : labels_(std::move(raw_labels)) {
    std::unordered_map<int, int> remap;
    remap.reserve(labels_.size());
    for (int& l : labels_) {
        auto [it, inserted] = remap.try_emplace(l, static_cast<int>(remap.size()));
        l = it->second;
    }
    k_ = static_cast<int>(remap.size());
}

Partition Partition::from_blocks(int n, std::span<const std::vector<int>> blocks) {
    std::vector<int> labels(static_cast<std::size_t>(n), -1);
    int next = 0;
    for (const auto& block : blocks) {
        for (int v : block) {
            if (v < 0 || v >= n) throw DomainError("block vertex out of range");
            if (labels[static_cast<std::size_t>(v)] != -1)
                throw DomainError("vertex assigned to two blocks");
            labels[static_cast<std::size_t>(v)] = next;
        }
        ++next;
    }
    for (int l : labels)
        if (l == -1) throw DomainError("blocks do not cover all vertices");
    return Partition(std::move(labels));
}

std::vector<std::vector<int>> Partition::blocks() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(k_));
    for (int v = 0; v < size(); ++v) out[static_cast<std::size_t>(labels_[static_cast<std::size_t>(v)])].push_back(v);
    return out;
}

} // namespace recd
