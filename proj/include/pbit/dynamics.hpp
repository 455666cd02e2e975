#pragma once

#include <cstdint>
#include <vector>

#include "pbit/network.hpp"
#include "pbit/rng.hpp"

namespace pbit {

// Synaptic input I_i = sum_j W_ij m_j + h_i over stored neighbors.
double pbit_input(const PBitNetwork& net, const SpinState& state, std::size_t i);

// One stochastic update: returns +1 with probability (1 + tanh(beta * I_i)) / 2.
// Consumes exactly one uniform draw from p-bit i's substream. sign(0) is +1.
int8_t pbit_update(const PBitNetwork& net, const SpinState& state, std::size_t i,
                   double beta, PBitRng& rng);

// Update from a precomputed input; shared by the sweep engines.
int8_t sampled_spin(double input, double beta, double r_pm1);

// E(m) = -(sum_{i<j} W_ij m_i m_j + sum_i h_i m_i). Symmetric networks only.
double energy(const PBitNetwork& net, const SpinState& state);

// Energy change if p-bit i were flipped from its current value.
double flip_delta(const PBitNetwork& net, const SpinState& state, std::size_t i);

constexpr std::size_t kEnumerationMaxBits = 24;

// Exact Boltzmann table p_s = exp(-beta * E_s) / Z over all 2^n states,
// indexed by SpinState::pack(). Guarded at n <= 24.
std::vector<double> exact_boltzmann(const PBitNetwork& net, double beta);

// Energies of all 2^n states (same indexing), via Gray-code traversal.
std::vector<double> enumerate_energies(const PBitNetwork& net);

// All minimum-energy state masks, with ties resolved within `tol`.
std::vector<uint64_t> ground_states(const PBitNetwork& net, double tol = 1e-9);

// Bipolar {-1,+1} <-> binary {0,1} conventions. The binary-side network is
// meant to be read with s in {0,1}: E_b(s) = -(sum W'_ij s_i s_j + sum h'_i s_i),
// and E_m(m) = E_b(s(m)) + offset, so both conventions give the same Boltzmann
// distribution over corresponding states.
struct BinaryNetwork {
    PBitNetwork net;
    double offset;
};
BinaryNetwork to_binary(const PBitNetwork& net);
PBitNetwork to_bipolar(const BinaryNetwork& bnet);

std::vector<uint8_t> to_binary_state(const SpinState& state);
SpinState to_bipolar_state(const std::vector<uint8_t>& bits);

// Boltzmann table of a binary-convention network over s-states (bit i of the
// index = s_i). Used to check conversion preserves the distribution.
std::vector<double> exact_boltzmann_binary(const BinaryNetwork& bnet, double beta);

}  // namespace pbit
