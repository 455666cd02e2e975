#pragma once

#include <cstdint>
#include <vector>

#include "pbit/network.hpp"

namespace pbit {

// Partition of p-bits into independent classes; no stored edge joins two
// p-bits of the same color, so a whole class can update in parallel.
struct ColoringPlan {
    std::vector<uint32_t> colors;                    // per p-bit
    std::vector<std::vector<uint32_t>> class_lists;  // per color, ascending indices

    std::size_t color_count() const { return class_lists.size(); }
    bool proper(const PBitNetwork& net) const;
};

// Dsatur heuristic: color the vertex with the highest saturation degree first,
// ties by degree, then by lowest index. Not minimal, and doesn't need to be.
ColoringPlan color_graph(const PBitNetwork& net);

}  // namespace pbit
