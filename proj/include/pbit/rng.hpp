#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace pbit {

// Counter-based generator (Philox4x32-10). A draw is a pure function of
// (seed, stream, index), so any p-bit's substream can be replayed or advanced
// out of order without shared state. This is what makes colored-parallel and
// serial runs reproducible: p-bit i always consumes draw k of stream i,
// regardless of which thread or sweep order got there.
std::array<uint32_t, 4> philox4x32(uint64_t seed, uint64_t stream, uint64_t index);

// Uniform double in [0, 1) from the (seed, stream, index) cell, 53-bit mantissa.
double uniform01_at(uint64_t seed, uint64_t stream, uint64_t index);

// Uniform double in [-1, 1).
inline double uniform_pm1_at(uint64_t seed, uint64_t stream, uint64_t index) {
    return 2.0 * uniform01_at(seed, stream, index) - 1.0;
}

// A single sequential substream view.
class RandomStream {
public:
    RandomStream(uint64_t seed, uint64_t stream_id, uint64_t start_index = 0)
        : seed_(seed), stream_(stream_id), index_(start_index) {}

    double next_unit() { return uniform01_at(seed_, stream_, index_++); }
    double next_pm1() { return uniform_pm1_at(seed_, stream_, index_++); }
    // Exponential with the given mean; consumes one draw.
    double next_exponential(double mean);
    uint64_t next_u64();

    uint64_t seed() const { return seed_; }
    uint64_t stream_id() const { return stream_; }
    uint64_t index() const { return index_; }

private:
    uint64_t seed_;
    uint64_t stream_;
    uint64_t index_;
};

// One substream per p-bit, with per-p-bit draw counters. The sweep engines
// share this so identical seeds give bit-identical trajectories.
class PBitRng {
public:
    PBitRng(uint64_t seed, std::size_t n) : seed_(seed), draw_index_(n, 0) {}

    double next_pm1(std::size_t pbit) {
        return uniform_pm1_at(seed_, pbit, draw_index_[pbit]++);
    }
    double next_unit(std::size_t pbit) {
        return uniform01_at(seed_, pbit, draw_index_[pbit]++);
    }
    double next_exponential(std::size_t pbit, double mean);

    uint64_t seed() const { return seed_; }
    uint64_t draws(std::size_t pbit) const { return draw_index_[pbit]; }
    std::size_t size() const { return draw_index_.size(); }

private:
    uint64_t seed_;
    std::vector<uint64_t> draw_index_;
};

// Stable seed derivation for independent chains (restarts, minibatch members).
uint64_t derive_seed(uint64_t base, uint64_t salt);

}  // namespace pbit
