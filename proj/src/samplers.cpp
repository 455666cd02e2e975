#include "pbit/samplers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace pbit {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

std::vector<double> SampleRecord::distribution() const {
    std::vector<double> p(histogram.size(), 0.0);
    if (samples == 0) return p;
    for (std::size_t s = 0; s < histogram.size(); ++s)
        p[s] = static_cast<double>(histogram[s]) / static_cast<double>(samples);
    return p;
}

double throughput(const SampleRecord& record) {
    if (record.wall_seconds <= 0.0)
        throw std::invalid_argument("throughput requires positive wall time");
    return static_cast<double>(record.attempted_flips) / record.wall_seconds;
}

std::vector<uint32_t> ascending_order(std::size_t n) {
    std::vector<uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    return order;
}

void serial_sweep(const PBitNetwork& net, SpinState& state, double beta,
                  std::span<const uint32_t> order, PBitRng& rng, double* energy_acc) {
    for (uint32_t i : order) {
        double input = net.bias(i);
        for (const auto& nb : net.neighbors(i)) input += nb.weight * state.m[nb.index];
        int8_t next = sampled_spin(input, beta, rng.next_pm1(i));
        if (next != state.m[i]) {
            if (energy_acc) *energy_acc += 2.0 * state.m[i] * input;
            state.m[i] = next;
        }
    }
}

void colored_sweep(const PBitNetwork& net, SpinState& state, double beta,
                   const ColoringPlan& plan, PBitRng& rng, double* energy_acc,
                   ThreadPool* pool, bool validate) {
    if (validate && !plan.proper(net))
        throw std::invalid_argument("coloring plan is not a proper coloring of this network");

    thread_local std::vector<double> inputs;
    for (const auto& members : plan.class_lists) {
        inputs.resize(members.size());
        auto compute = [&](std::size_t b, std::size_t e) {
            for (std::size_t k = b; k < e; ++k) {
                uint32_t i = members[k];
                double acc = net.bias(i);
                for (const auto& nb : net.neighbors(i)) acc += nb.weight * state.m[nb.index];
                inputs[k] = acc;
            }
        };
        // Snapshot contract: all inputs for the class are computed before any
        // member flips. Members are pairwise non-adjacent, so the live state
        // equals the pre-class snapshot for every read.
        if (pool)
            pool->for_range(members.size(), compute);
        else
            compute(0, members.size());

        for (std::size_t k = 0; k < members.size(); ++k) {
            uint32_t i = members[k];
            int8_t next = sampled_spin(inputs[k], beta, rng.next_pm1(i));
            if (next != state.m[i]) {
                if (energy_acc) *energy_acc += 2.0 * state.m[i] * inputs[k];
                state.m[i] = next;
            }
        }
    }
}

std::vector<uint32_t> topological_order(const PBitNetwork& net) {
    if (net.symmetric())
        throw std::invalid_argument("topological order requires a directed network");
    const std::size_t n = net.size();
    // edge (i, j): j -> i
    std::vector<uint32_t> indegree(n, 0);
    std::vector<std::vector<uint32_t>> children(n);
    for (const Edge& e : net.edges()) {
        indegree[e.i]++;
        children[e.j].push_back(e.i);
    }
    std::priority_queue<uint32_t, std::vector<uint32_t>, std::greater<>> ready;
    for (uint32_t v = 0; v < n; ++v)
        if (indegree[v] == 0) ready.push(v);
    std::vector<uint32_t> order;
    order.reserve(n);
    while (!ready.empty()) {
        uint32_t v = ready.top();
        ready.pop();
        order.push_back(v);
        for (uint32_t c : children[v])
            if (--indegree[c] == 0) ready.push(c);
    }
    if (order.size() != n)
        throw std::invalid_argument("directed network contains a cycle");
    return order;
}

void directed_sweep(const PBitNetwork& net, SpinState& state, double beta,
                    std::span<const uint32_t> topo_order, PBitRng& rng) {
    if (net.symmetric())
        throw std::invalid_argument("directed_sweep requires an asymmetric network");
    for (uint32_t i : topo_order) {
        double input = net.bias(i);
        for (const auto& nb : net.neighbors(i)) input += nb.weight * state.m[nb.index];
        state.m[i] = sampled_spin(input, beta, rng.next_pm1(i));
    }
}

SampleRecord async_run(const PBitNetwork& net, SpinState& state, double beta,
                       const AsyncConfig& cfg, PBitRng& rng) {
    if (cfg.mean_flip_interval <= 0.0)
        throw std::invalid_argument("mean_flip_interval must be > 0");
    if (cfg.synapse_latency < 0.0 || cfg.horizon <= 0.0)
        throw std::invalid_argument("invalid async configuration");

    const std::size_t n = net.size();
    const bool stale = cfg.synapse_latency > 0.0;
    const bool histogram = n <= kEnumerationMaxBits;
    const double burn_in_time = cfg.burn_in_fraction * cfg.horizon;

    SampleRecord record;
    if (histogram) record.histogram.assign(std::size_t(1) << n, 0);
    record.mean_spin.assign(n, 0.0);

    // Min-heap on (event time, p-bit); ties resolved by index for replay.
    using Event = std::pair<double, uint32_t>;
    std::priority_queue<Event, std::vector<Event>, std::greater<>> events;
    for (uint32_t i = 0; i < n; ++i)
        events.push({rng.next_exponential(i, cfg.mean_flip_interval), i});

    // Stale reads: flips commit to the delayed mirror `synapse_latency` later,
    // so the mirror always shows the state as of (now - latency).
    SpinState delayed = state;
    struct Commit {
        double time;
        uint32_t pbit;
        int8_t value;
    };
    std::deque<Commit> pending;
    std::vector<double> last_attempt(n, -std::numeric_limits<double>::infinity());

    auto t0 = Clock::now();
    while (!events.empty() && events.top().first <= cfg.horizon) {
        auto [t, i] = events.top();
        events.pop();

        if (stale) {
            while (!pending.empty() && pending.front().time <= t) {
                delayed.m[pending.front().pbit] = pending.front().value;
                pending.pop_front();
            }
        }
        const SpinState& read_state = stale ? delayed : state;

        double input = net.bias(i);
        for (const auto& nb : net.neighbors(i)) {
            input += nb.weight * read_state.m[nb.index];
            if (t - last_attempt[nb.index] < cfg.synapse_latency) record.overlap_events++;
        }
        last_attempt[i] = t;

        int8_t next = sampled_spin(input, beta, rng.next_pm1(i));
        record.attempted_flips++;
        if (cfg.attempt_time_log) cfg.attempt_time_log->push_back(t);
        if (next != state.m[i]) {
            state.m[i] = next;
            record.accepted_flips++;
            if (stale) pending.push_back({t + cfg.synapse_latency, i, next});
        }

        if (t >= burn_in_time) {
            record.samples++;
            if (histogram) record.histogram[state.pack()]++;
            for (std::size_t k = 0; k < n; ++k) record.mean_spin[k] += state.m[k];
        }

        events.push({t + rng.next_exponential(i, cfg.mean_flip_interval), i});
    }
    record.wall_seconds = seconds_since(t0);
    if (record.samples > 0)
        for (double& v : record.mean_spin) v /= static_cast<double>(record.samples);
    record.final_state = state.m;
    return record;
}

SampleRecord run_chain(const PBitNetwork& net, double beta, const ChainConfig& cfg,
                       ThreadPool* pool) {
    const std::size_t n = net.size();
    PBitRng rng(cfg.seed, n);
    SpinState state = SpinState::random(n, rng);

    if (cfg.kind == SamplerKind::async) {
        AsyncConfig async = cfg.async;
        async.burn_in_fraction = cfg.burn_in_fraction;
        return async_run(net, state, beta, async, rng);
    }

    SampleRecord record;
    const bool histogram = cfg.collect_histogram && n <= kEnumerationMaxBits;
    if (histogram) record.histogram.assign(std::size_t(1) << n, 0);
    record.mean_spin.assign(n, 0.0);

    std::vector<uint32_t> order;
    ColoringPlan plan;
    std::vector<uint32_t> scan_order;
    switch (cfg.kind) {
        case SamplerKind::serial:
        case SamplerKind::serial_random_scan:
            order = ascending_order(n);
            break;
        case SamplerKind::colored:
            plan = color_graph(net);
            break;
        case SamplerKind::directed:
            order = topological_order(net);
            break;
        default:
            break;
    }

    const uint64_t burn = static_cast<uint64_t>(cfg.burn_in_fraction * cfg.sweeps);
    RandomStream scan_rng(derive_seed(cfg.seed, 0x5ca9), 0);

    auto t0 = Clock::now();
    for (uint64_t sweep = 0; sweep < cfg.sweeps; ++sweep) {
        switch (cfg.kind) {
            case SamplerKind::serial:
                serial_sweep(net, state, beta, order, rng);
                break;
            case SamplerKind::serial_random_scan: {
                scan_order.resize(n);
                for (std::size_t k = 0; k < n; ++k)
                    scan_order[k] = static_cast<uint32_t>(scan_rng.next_u64() % n);
                serial_sweep(net, state, beta, scan_order, rng);
                break;
            }
            case SamplerKind::colored:
                colored_sweep(net, state, beta, plan, rng, nullptr, pool, sweep == 0);
                break;
            case SamplerKind::directed:
                directed_sweep(net, state, beta, order, rng);
                break;
            default:
                break;
        }
        record.attempted_flips += n;
        if (sweep >= burn) {
            record.samples++;
            if (histogram) record.histogram[state.pack()]++;
            for (std::size_t k = 0; k < n; ++k) record.mean_spin[k] += state.m[k];
        }
    }
    record.wall_seconds = seconds_since(t0);
    if (record.samples > 0)
        for (double& v : record.mean_spin) v /= static_cast<double>(record.samples);
    record.final_state = state.m;
    return record;
}

}  // namespace pbit
