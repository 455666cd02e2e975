#include "pbit/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pbit/errors.hpp"
#include "pbit/rng.hpp"

namespace pbit {

PBitNetwork::PBitNetwork(std::size_t n, std::vector<Edge> edges, std::vector<double> bias,
                         bool symmetric)
    : n_(n), symmetric_(symmetric) {
    if (bias.empty()) bias.assign(n, 0.0);
    if (bias.size() != n) throw std::invalid_argument("bias length != n");
    for (double h : bias)
        if (!std::isfinite(h)) throw std::invalid_argument("non-finite bias");
    bias_ = std::move(bias);

    // Canonicalize and merge parallel edges by summing their weights. Summing
    // is what gate-Hamiltonian composition and Trotter replica closure need.
    std::map<std::pair<uint32_t, uint32_t>, double> merged;
    for (const Edge& e : edges) {
        if (e.i == e.j) throw std::invalid_argument("self-coupling not allowed");
        if (e.i >= n || e.j >= n) throw std::invalid_argument("edge index out of range");
        if (!std::isfinite(e.w)) throw std::invalid_argument("non-finite weight");
        uint32_t a = e.i, b = e.j;
        if (symmetric && a > b) std::swap(a, b);
        merged[{a, b}] += e.w;
    }
    edges_.reserve(merged.size());
    for (const auto& [key, w] : merged) edges_.push_back({key.first, key.second, w});

    // CSR adjacency
    std::vector<std::size_t> deg(n, 0);
    for (const Edge& e : edges_) {
        deg[e.i]++;
        if (symmetric_) deg[e.j]++;
    }
    offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + deg[i];
    adj_.resize(offsets_[n]);
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const Edge& e : edges_) {
        adj_[cursor[e.i]++] = {e.j, e.w};
        if (symmetric_) adj_[cursor[e.j]++] = {e.i, e.w};
    }
}

PBitNetwork PBitNetwork::symmetric_net(std::size_t n, std::vector<Edge> edges,
                                       std::vector<double> bias) {
    return PBitNetwork(n, std::move(edges), std::move(bias), true);
}

PBitNetwork PBitNetwork::directed_net(std::size_t n, std::vector<Edge> edges,
                                      std::vector<double> bias) {
    return PBitNetwork(n, std::move(edges), std::move(bias), false);
}

std::size_t PBitNetwork::max_degree() const {
    std::size_t d = 0;
    for (std::size_t i = 0; i < n_; ++i) d = std::max(d, degree(i));
    return d;
}

double PBitNetwork::local_scale(std::size_t i) const {
    double s = std::abs(bias_[i]);
    for (const Neighbor& nb : neighbors(i)) s += std::abs(nb.weight);
    return s;
}

std::string PBitNetwork::to_json() const {
    nlohmann::json j;
    j["n"] = n_;
    j["symmetric"] = symmetric_;
    auto edges = nlohmann::json::array();
    for (const Edge& e : edges_) edges.push_back({e.i, e.j, e.w});
    j["edges"] = std::move(edges);
    j["bias"] = bias_;
    return j.dump(2);
}

PBitNetwork PBitNetwork::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw format_error(std::string("bad network JSON: ") + e.what());
    }
    try {
        std::size_t n = j.at("n").get<std::size_t>();
        bool symmetric = j.at("symmetric").get<bool>();
        std::vector<Edge> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 3)
                throw format_error("edge entry must be [i, j, w]");
            edges.push_back({e[0].get<uint32_t>(), e[1].get<uint32_t>(), e[2].get<double>()});
        }
        std::vector<double> bias = j.at("bias").get<std::vector<double>>();
        return PBitNetwork(n, std::move(edges), std::move(bias), symmetric);
    } catch (const nlohmann::json::exception& e) {
        throw format_error(std::string("bad network JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw format_error(std::string("invalid network: ") + e.what());
    }
}

PBitNetwork PBitNetwork::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw format_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

void PBitNetwork::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << to_json() << '\n';
}

uint64_t SpinState::pack() const {
    uint64_t bits = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] > 0) bits |= uint64_t(1) << i;
    return bits;
}

SpinState SpinState::unpack(uint64_t bits, std::size_t n) {
    SpinState s(n);
    for (std::size_t i = 0; i < n; ++i) s.m[i] = (bits >> i) & 1 ? +1 : -1;
    return s;
}

SpinState SpinState::random(std::size_t n, PBitRng& rng) {
    SpinState s(n);
    for (std::size_t i = 0; i < n; ++i) s.m[i] = rng.next_pm1(i) < 0 ? -1 : +1;
    return s;
}

bool SpinState::valid() const {
    for (int8_t v : m)
        if (v != -1 && v != +1) return false;
    return true;
}

}  // namespace pbit
