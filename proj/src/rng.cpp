#include "pbit/rng.hpp"

#include <cmath>

namespace pbit {

namespace {

constexpr uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr uint32_t kWeyl0 = 0x9E3779B9u;  // golden ratio
constexpr uint32_t kWeyl1 = 0xBB67AE85u;  // sqrt(3) - 1

inline void mulhilo(uint32_t a, uint32_t b, uint32_t& hi, uint32_t& lo) {
    uint64_t p = static_cast<uint64_t>(a) * b;
    hi = static_cast<uint32_t>(p >> 32);
    lo = static_cast<uint32_t>(p);
}

}  // namespace

std::array<uint32_t, 4> philox4x32(uint64_t seed, uint64_t stream, uint64_t index) {
    uint32_t c0 = static_cast<uint32_t>(index);
    uint32_t c1 = static_cast<uint32_t>(index >> 32);
    uint32_t c2 = static_cast<uint32_t>(stream);
    uint32_t c3 = static_cast<uint32_t>(stream >> 32);
    uint32_t k0 = static_cast<uint32_t>(seed);
    uint32_t k1 = static_cast<uint32_t>(seed >> 32);

    for (int round = 0; round < 10; ++round) {
        uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, c0, hi0, lo0);
        mulhilo(kPhiloxM1, c2, hi1, lo1);
        uint32_t n0 = hi1 ^ c1 ^ k0;
        uint32_t n1 = lo1;
        uint32_t n2 = hi0 ^ c3 ^ k1;
        uint32_t n3 = lo0;
        c0 = n0;
        c1 = n1;
        c2 = n2;
        c3 = n3;
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    return {c0, c1, c2, c3};
}

double uniform01_at(uint64_t seed, uint64_t stream, uint64_t index) {
    auto block = philox4x32(seed, stream, index);
    uint64_t bits = (static_cast<uint64_t>(block[0]) << 32) | block[1];
    // top 53 bits -> [0,1)
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

double RandomStream::next_exponential(double mean) {
    // inverse CDF; 1-u avoids log(0)
    double u = next_unit();
    return -mean * std::log1p(-u);
}

uint64_t RandomStream::next_u64() {
    auto block = philox4x32(seed_, stream_, index_++);
    return (static_cast<uint64_t>(block[0]) << 32) | block[1];
}

double PBitRng::next_exponential(std::size_t pbit, double mean) {
    double u = next_unit(pbit);
    return -mean * std::log1p(-u);
}

uint64_t derive_seed(uint64_t base, uint64_t salt) {
    // splitmix64 finalizer over the pair; distinct salts give independent seeds
    uint64_t z = base + 0x9E3779B97F4A7C15ull * (salt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace pbit
