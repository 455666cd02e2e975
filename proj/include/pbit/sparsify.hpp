#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pbit/network.hpp"

namespace pbit {

// How one network was split into degree-bounded copies. groups[v] lists the
// sparse-net indices holding original p-bit v, chained by copy_edges.
struct CopyPlan {
    std::vector<std::vector<uint32_t>> groups;
    struct CopyEdge {
        uint32_t a;
        uint32_t b;
        double j_copy;
    };
    std::vector<CopyEdge> copy_edges;
    std::size_t max_degree = 0;
    std::size_t original_size = 0;
    std::size_t sparse_size = 0;

    bool is_identity() const { return copy_edges.empty(); }

    std::string to_json() const;
    static CopyPlan from_json(const std::string& text);
    static CopyPlan load(const std::string& path);
    void save(const std::string& path) const;
};

struct SparsifyResult {
    PBitNetwork net;
    CopyPlan plan;
};

// Splits every p-bit whose degree exceeds max_degree into a chain of
// ceil(d / (max_degree - 2)) copies joined by ferromagnetic COPY couplings;
// payload edges are dealt round-robin along the chain and the bias is divided
// equally. The default per-link coupling, 1 + (sum|w| + |h|) / 2 over the
// group's payload, makes breaking a chain cost more than any payload
// reconfiguration can recover, so the collapsed ground-state set is exactly
// the original one. Pass j_copy to override (annealing runs often want a
// gentler chain strength at the price of that guarantee).
SparsifyResult sparsify(const PBitNetwork& net, std::size_t max_degree,
                        std::optional<double> j_copy = std::nullopt);

// rho = 2|E| / (|V|^2 - |V|)
double graph_density(const PBitNetwork& net);

struct CollapseResult {
    SpinState state;          // one value per original p-bit (majority vote)
    std::size_t broken_groups = 0;  // groups whose copies disagree
    bool consistent() const { return broken_groups == 0; }
};

// Majority vote per group; ties take the lowest-index copy's value.
CollapseResult collapse(const SpinState& sparse_state, const CopyPlan& plan);

}  // namespace pbit
