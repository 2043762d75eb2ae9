#pragma once

#include <span>
#include <vector>

namespace recd {

// Total disjoint assignment of vertices 0..n-1 to community labels 0..k-1.
// Labels are always normalized by first appearance, which makes the label
// vector a canonical form: two partitions describe the same clustering
// exactly when their label vectors compare equal.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> raw_labels);

    static Partition from_blocks(int n, std::span<const std::vector<int>> blocks);

    int size() const { return static_cast<int>(labels_.size()); }
    int community_count() const { return k_; }
    int label_of(int v) const { return labels_[static_cast<std::size_t>(v)]; }
    const std::vector<int>& labels() const { return labels_; }

    // Members of each community, ascending inside each block.
    std::vector<std::vector<int>> blocks() const;

    bool same_clustering(const Partition& other) const { return labels_ == other.labels_; }
    bool operator==(const Partition& other) const = default;

private:
    std::vector<int> labels_;
    int k_ = 0;
};

} // namespace recd
