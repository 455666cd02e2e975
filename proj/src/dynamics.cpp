#include "pbit/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "pbit/errors.hpp"

namespace pbit {

double pbit_input(const PBitNetwork& net, const SpinState& state, std::size_t i) {
    if (i >= net.size()) throw std::out_of_range("p-bit index out of range");
    double acc = net.bias(i);
    for (const auto& nb : net.neighbors(i)) acc += nb.weight * state.m[nb.index];
    return acc;
}

int8_t sampled_spin(double input, double beta, double r_pm1) {
    double x = beta * input;
    double t;
    if (x > 20.0)
        t = 1.0;  // tanh(20) differs from 1 by < 1e-17
    else if (x < -20.0)
        t = -1.0;
    else
        t = std::tanh(x);
    return (t - r_pm1) >= 0.0 ? +1 : -1;
}

int8_t pbit_update(const PBitNetwork& net, const SpinState& state, std::size_t i,
                   double beta, PBitRng& rng) {
    if (beta < 0) throw std::invalid_argument("beta must be >= 0");
    double input = pbit_input(net, state, i);
    return sampled_spin(input, beta, rng.next_pm1(i));
}

double energy(const PBitNetwork& net, const SpinState& state) {
    if (!net.symmetric())
        throw std::invalid_argument("energy undefined for asymmetric networks");
    double acc = 0.0;
    for (const Edge& e : net.edges()) acc += e.w * state.m[e.i] * state.m[e.j];
    for (std::size_t i = 0; i < net.size(); ++i) acc += net.bias(i) * state.m[i];
    return -acc;
}

double flip_delta(const PBitNetwork& net, const SpinState& state, std::size_t i) {
    // E depends on m_i through -m_i * I_i, so flipping adds 2 m_i I_i.
    return 2.0 * state.m[i] * pbit_input(net, state, i);
}

std::vector<double> enumerate_energies(const PBitNetwork& net) {
    const std::size_t n = net.size();
    if (n > kEnumerationMaxBits) throw guard_error("enumeration limited to n <= 24");
    const std::size_t count = std::size_t(1) << n;
    std::vector<double> energies(count);

    // Gray-code walk: consecutive visits differ by one spin flip.
    SpinState s(n, -1);
    double e = energy(net, s);
    uint64_t prev_gray = 0;
    energies[0] = e;
    for (std::size_t k = 1; k < count; ++k) {
        uint64_t gray = k ^ (k >> 1);
        uint64_t changed = gray ^ prev_gray;
        std::size_t bit = std::countr_zero(changed);
        e += flip_delta(net, s, bit);
        s.m[bit] = -s.m[bit];
        energies[gray] = e;
        prev_gray = gray;
    }
    return energies;
}

std::vector<double> exact_boltzmann(const PBitNetwork& net, double beta) {
    if (!net.symmetric())
        throw std::invalid_argument("Boltzmann table requires a symmetric network");
    std::vector<double> table = enumerate_energies(net);
    double emin = *std::min_element(table.begin(), table.end());
    double z = 0.0;
    for (double& v : table) {
        v = std::exp(-beta * (v - emin));
        z += v;
    }
    for (double& v : table) v /= z;
    return table;
}

std::vector<uint64_t> ground_states(const PBitNetwork& net, double tol) {
    std::vector<double> e = enumerate_energies(net);
    double emin = *std::min_element(e.begin(), e.end());
    std::vector<uint64_t> out;
    for (std::size_t s = 0; s < e.size(); ++s)
        if (e[s] <= emin + tol) out.push_back(s);
    return out;
}

BinaryNetwork to_binary(const PBitNetwork& net) {
    // m = 2s - 1:  W'_ij = 4 W_ij,  h'_i = 2 h_i - 2 sum_j W_ij,
    // offset = sum_{i<j} W_ij - sum_i h_i  (so E_m = E_b + offset).
    const std::size_t n = net.size();
    std::vector<Edge> edges;
    edges.reserve(net.edge_count());
    std::vector<double> h(n);
    double edge_sum = 0.0, bias_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double wsum = 0.0;
        for (const auto& nb : net.neighbors(i)) wsum += nb.weight;
        h[i] = 2.0 * net.bias(i) - 2.0 * wsum;
        bias_sum += net.bias(i);
    }
    for (const Edge& e : net.edges()) {
        edges.push_back({e.i, e.j, 4.0 * e.w});
        edge_sum += e.w;
    }
    return {PBitNetwork(n, std::move(edges), std::move(h), net.symmetric()),
            -(edge_sum - bias_sum)};
}

PBitNetwork to_bipolar(const BinaryNetwork& bnet) {
    // exact inverse of to_binary
    const PBitNetwork& b = bnet.net;
    const std::size_t n = b.size();
    std::vector<Edge> edges;
    edges.reserve(b.edge_count());
    std::vector<double> h(n);
    for (const Edge& e : b.edges()) edges.push_back({e.i, e.j, e.w / 4.0});
    for (std::size_t i = 0; i < n; ++i) {
        double wsum = 0.0;
        for (const auto& nb : b.neighbors(i)) wsum += nb.weight / 4.0;
        h[i] = 0.5 * b.bias(i) + wsum;
    }
    return PBitNetwork(n, std::move(edges), std::move(h), b.symmetric());
}

std::vector<uint8_t> to_binary_state(const SpinState& state) {
    std::vector<uint8_t> bits(state.size());
    for (std::size_t i = 0; i < state.size(); ++i) bits[i] = state.m[i] > 0 ? 1 : 0;
    return bits;
}

SpinState to_bipolar_state(const std::vector<uint8_t>& bits) {
    SpinState s(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) s.m[i] = bits[i] ? +1 : -1;
    return s;
}

std::vector<double> exact_boltzmann_binary(const BinaryNetwork& bnet, double beta) {
    const PBitNetwork& net = bnet.net;
    const std::size_t n = net.size();
    if (n > kEnumerationMaxBits) throw guard_error("enumeration limited to n <= 24");
    const std::size_t count = std::size_t(1) << n;
    std::vector<double> table(count);
    for (std::size_t mask = 0; mask < count; ++mask) {
        double acc = 0.0;
        for (const Edge& e : net.edges())
            acc += e.w * ((mask >> e.i) & 1) * ((mask >> e.j) & 1);
        for (std::size_t i = 0; i < n; ++i) acc += net.bias(i) * ((mask >> i) & 1);
        table[mask] = -acc;
    }
    double emin = *std::min_element(table.begin(), table.end());
    double z = 0.0;
    for (double& v : table) {
        v = std::exp(-beta * (v - emin));
        z += v;
    }
    for (double& v : table) v /= z;
    return table;
}

}  // namespace pbit
