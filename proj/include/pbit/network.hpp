#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pbit {

struct Edge {
    uint32_t i;
    uint32_t j;
    double w;
};

// Sparse coupled p-bit network: weights [W], biases {h}, and a symmetry flag.
// Symmetric networks store each coupling once with i < j and expose it on both
// adjacency lists. Asymmetric (directed) networks read an edge (i, j, w) as
// "w * m_j feeds I_i", i.e. j is a parent of i; only i's adjacency sees it.
// Immutable after construction, safe to share across threads.
class PBitNetwork {
public:
    PBitNetwork(std::size_t n, std::vector<Edge> edges, std::vector<double> bias,
                bool symmetric);

    static PBitNetwork symmetric_net(std::size_t n, std::vector<Edge> edges,
                                     std::vector<double> bias = {});
    static PBitNetwork directed_net(std::size_t n, std::vector<Edge> edges,
                                    std::vector<double> bias = {});

    std::size_t size() const { return n_; }
    bool symmetric() const { return symmetric_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<double>& bias() const { return bias_; }
    double bias(std::size_t i) const { return bias_[i]; }
    std::size_t edge_count() const { return edges_.size(); }

    struct Neighbor {
        uint32_t index;
        double weight;
    };
    std::span<const Neighbor> neighbors(std::size_t i) const {
        return {adj_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }
    std::size_t degree(std::size_t i) const { return offsets_[i + 1] - offsets_[i]; }
    std::size_t max_degree() const;

    // Sum of |w| over edges incident to i plus |h_i|; used for clamp strengths.
    double local_scale(std::size_t i) const;

    std::string to_json() const;
    static PBitNetwork from_json(const std::string& text);
    static PBitNetwork load(const std::string& path);
    void save(const std::string& path) const;

private:
    std::size_t n_;
    bool symmetric_;
    std::vector<Edge> edges_;        // canonical: i < j when symmetric
    std::vector<double> bias_;
    std::vector<std::size_t> offsets_;  // CSR into adj_
    std::vector<Neighbor> adj_;
};

// Bipolar state vector, entries exactly -1 or +1.
struct SpinState {
    std::vector<int8_t> m;

    explicit SpinState(std::size_t n = 0, int8_t fill = -1) : m(n, fill) {}
    std::size_t size() const { return m.size(); }

    // Bitmask index (bit i set iff m_i == +1); valid for n <= 63.
    uint64_t pack() const;
    static SpinState unpack(uint64_t bits, std::size_t n);

    // Random uniform state, consuming one draw per p-bit from its substream.
    static SpinState random(std::size_t n, class PBitRng& rng);

    bool valid() const;
};

}  // namespace pbit
