#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pbit/coloring.hpp"
#include "pbit/dynamics.hpp"
#include "pbit/network.hpp"
#include "pbit/rng.hpp"
#include "pbit/threading.hpp"

namespace pbit {

// Event-driven (truly asynchronous) sampler configuration. Times are in
// arbitrary units; each p-bit attempts updates at exponential intervals with
// mean `mean_flip_interval`, reading the network state as it was
// `synapse_latency` time units earlier.
struct AsyncConfig {
    double mean_flip_interval = 1.0;
    double synapse_latency = 0.0;
    double horizon = 1000.0;
    double burn_in_fraction = 0.1;
    std::vector<double>* attempt_time_log = nullptr;  // diagnostics, small runs only
};

struct SampleRecord {
    uint64_t attempted_flips = 0;
    uint64_t accepted_flips = 0;
    double wall_seconds = 0.0;
    uint64_t samples = 0;
    std::vector<uint64_t> histogram;       // packed-state counts, n <= 24 only
    std::vector<double> mean_spin;         // per p-bit average over samples
    uint64_t overlap_events = 0;           // async: connected pair updated within latency
    std::vector<int8_t> final_state;

    // Empirical distribution over packed states (requires histogram).
    std::vector<double> distribution() const;
};

double throughput(const SampleRecord& record);  // flips per second

// --- single-sweep engines -------------------------------------------------

// Sequential Gibbs: each p-bit updated once, in `order`, seeing the latest
// values of its neighbors.
void serial_sweep(const PBitNetwork& net, SpinState& state, double beta,
                  std::span<const uint32_t> order, PBitRng& rng,
                  double* energy_acc = nullptr);

// Graph-colored Gibbs: classes in fixed order; within a class every p-bit
// reads the pre-class snapshot, so intra-class execution order is irrelevant.
// Throws std::invalid_argument on an improper coloring when validate is true.
void colored_sweep(const PBitNetwork& net, SpinState& state, double beta,
                   const ColoringPlan& plan, PBitRng& rng,
                   double* energy_acc = nullptr, ThreadPool* pool = nullptr,
                   bool validate = true);

// One parent-to-child pass over an acyclic directed network.
void directed_sweep(const PBitNetwork& net, SpinState& state, double beta,
                    std::span<const uint32_t> topo_order, PBitRng& rng);

// Topological order of an asymmetric network (edge (i,j): j is a parent of i).
// Throws std::invalid_argument if the graph has a cycle or is symmetric.
std::vector<uint32_t> topological_order(const PBitNetwork& net);

std::vector<uint32_t> ascending_order(std::size_t n);

// --- run drivers ------------------------------------------------------------

enum class SamplerKind { serial, serial_random_scan, colored, async, directed };

struct ChainConfig {
    SamplerKind kind = SamplerKind::serial;
    uint64_t sweeps = 1000;
    double burn_in_fraction = 0.1;
    uint64_t seed = 1;
    AsyncConfig async;
    bool collect_histogram = true;
};

// Runs one chain from a random initial state and collects statistics.
// Histogram entries are recorded once per sweep (per attempt for async).
SampleRecord run_chain(const PBitNetwork& net, double beta, const ChainConfig& cfg,
                       ThreadPool* pool = nullptr);

// Event-driven truly-asynchronous run (Poisson clocks, stale synapse reads).
SampleRecord async_run(const PBitNetwork& net, SpinState& state, double beta,
                       const AsyncConfig& cfg, PBitRng& rng);

}  // namespace pbit
