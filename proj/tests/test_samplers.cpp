#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "pbit/dynamics.hpp"
#include "pbit/samplers.hpp"
#include "pbit/stats.hpp"

using namespace pbit;

namespace {

PBitNetwork random_net(std::size_t n, double density, uint64_t seed) {
    RandomStream rs(seed, 0);
    std::vector<Edge> edges;
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = i + 1; j < n; ++j)
            if (rs.next_unit() < density) edges.push_back({i, j, rs.next_pm1()});
    std::vector<double> bias(n);
    for (auto& h : bias) h = 0.3 * rs.next_pm1();
    return PBitNetwork::symmetric_net(n, std::move(edges), std::move(bias));
}

PBitNetwork bipartite_rbm(std::size_t nv, std::size_t nh, uint64_t seed) {
    RandomStream rs(seed, 0);
    std::vector<Edge> edges;
    for (uint32_t v = 0; v < nv; ++v)
        for (uint32_t h = 0; h < nh; ++h)
            edges.push_back({v, static_cast<uint32_t>(nv + h), 0.5 * rs.next_pm1()});
    return PBitNetwork::symmetric_net(nv + nh, std::move(edges));
}

double tv_vs_exact(const SampleRecord& rec, const PBitNetwork& net, double beta) {
    auto p = rec.distribution();
    auto q = exact_boltzmann(net, beta);
    return stats::tv_distance(p, q);
}

}  // namespace

TEST_CASE("serial: single free p-bit mean magnetization is zero") {
    auto net = PBitNetwork::symmetric_net(1, {}, {0.0});
    ChainConfig cfg;
    cfg.sweeps = 40000;
    cfg.seed = 5;
    auto rec = run_chain(net, 1.0, cfg);
    double sigma = 1.0 / std::sqrt(double(rec.samples));
    CHECK(std::abs(rec.mean_spin[0]) < 3 * sigma);
    CHECK(rec.attempted_flips == cfg.sweeps * net.size());
}

TEST_CASE("serial Gibbs converges to the exact Boltzmann table") {
    SUBCASE("2-spin ferromagnet at beta 2") {
        auto net = PBitNetwork::symmetric_net(2, {{0, 1, 1.0}});
        ChainConfig cfg;
        cfg.sweeps = 30000;
        cfg.seed = 7;
        auto rec = run_chain(net, 2.0, cfg);
        CHECK(tv_vs_exact(rec, net, 2.0) < 0.05);
    }
    SUBCASE("12-spin random net at beta 1") {
        auto net = random_net(12, 0.3, 97);
        ChainConfig cfg;
        cfg.sweeps = 150000;
        cfg.seed = 8;
        auto rec = run_chain(net, 1.0, cfg);
        CHECK(tv_vs_exact(rec, net, 1.0) < 0.05);
    }
}

TEST_CASE("update-order invariance: fixed permutations and random scan agree with the oracle") {
    auto net = random_net(9, 0.35, 123);
    const double beta = 1.0;
    auto q = exact_boltzmann(net, beta);

    auto run_order = [&](std::vector<uint32_t> order, uint64_t seed) {
        PBitRng rng(seed, net.size());
        SpinState s = SpinState::random(net.size(), rng);
        std::vector<uint64_t> hist(1 << 9, 0);
        const int sweeps = 40000, burn = 4000;
        for (int k = 0; k < sweeps; ++k) {
            serial_sweep(net, s, beta, order, rng);
            if (k >= burn) hist[s.pack()]++;
        }
        std::vector<double> p(hist.size());
        for (std::size_t i = 0; i < hist.size(); ++i) p[i] = double(hist[i]) / (sweeps - burn);
        return p;
    };

    std::vector<uint32_t> fwd = ascending_order(9);
    std::vector<uint32_t> rev(fwd.rbegin(), fwd.rend());
    std::vector<uint32_t> shuffled = {4, 7, 1, 0, 8, 2, 6, 3, 5};
    CHECK(stats::tv_distance(run_order(fwd, 11), q) < 0.05);
    CHECK(stats::tv_distance(run_order(rev, 12), q) < 0.05);
    CHECK(stats::tv_distance(run_order(shuffled, 13), q) < 0.05);
}

TEST_CASE("Dsatur coloring") {
    SUBCASE("edgeless graph uses one color") {
        auto net = PBitNetwork::symmetric_net(5, {});
        auto plan = color_graph(net);
        CHECK(plan.color_count() == 1);
        CHECK(plan.proper(net));
    }
    SUBCASE("K5 needs five colors") {
        std::vector<Edge> edges;
        for (uint32_t i = 0; i < 5; ++i)
            for (uint32_t j = i + 1; j < 5; ++j) edges.push_back({i, j, 1.0});
        auto net = PBitNetwork::symmetric_net(5, std::move(edges));
        auto plan = color_graph(net);
        CHECK(plan.color_count() == 5);
        CHECK(plan.proper(net));
    }
    SUBCASE("bipartite RBM graphs get two colors") {
        auto net = bipartite_rbm(5, 7, 3);
        auto plan = color_graph(net);
        CHECK(plan.color_count() == 2);
        CHECK(plan.proper(net));
        // explicit edge scan, independent of proper()
        for (const Edge& e : net.edges()) CHECK(plan.colors[e.i] != plan.colors[e.j]);
    }
}

TEST_CASE("colored sweep: rejection, equivalence, and marginal agreement") {
    SUBCASE("improper coloring is rejected") {
        auto net = PBitNetwork::symmetric_net(2, {{0, 1, 1.0}});
        ColoringPlan bad;
        bad.colors = {0, 0};
        bad.class_lists = {{0, 1}};
        PBitRng rng(1, 2);
        SpinState s(2, +1);
        CHECK_THROWS_AS(colored_sweep(net, s, 1.0, bad, rng), std::invalid_argument);
    }
    SUBCASE("edgeless net: one class of independent coins") {
        auto net = PBitNetwork::symmetric_net(6, {});
        ChainConfig cfg;
        cfg.kind = SamplerKind::colored;
        cfg.sweeps = 30000;
        cfg.seed = 3;
        auto rec = run_chain(net, 1.0, cfg);
        auto q = exact_boltzmann(net, 1.0);
        CHECK(stats::tv_distance(rec.distribution(), q) < 0.05);
    }
    SUBCASE("12-spin random net matches the oracle") {
        auto net = random_net(12, 0.3, 97);
        ChainConfig cfg;
        cfg.kind = SamplerKind::colored;
        cfg.sweeps = 150000;
        cfg.seed = 4;
        auto rec = run_chain(net, 1.0, cfg);
        CHECK(tv_vs_exact(rec, net, 1.0) < 0.05);
    }
    SUBCASE("bipartite 4x4 RBM: colored and serial marginals agree within 3 sigma") {
        auto net = bipartite_rbm(4, 4, 9);
        ChainConfig serial_cfg;
        serial_cfg.sweeps = 50000;
        serial_cfg.seed = 21;
        ChainConfig colored_cfg = serial_cfg;
        colored_cfg.kind = SamplerKind::colored;
        colored_cfg.seed = 22;
        auto a = run_chain(net, 1.0, serial_cfg);
        auto b = run_chain(net, 1.0, colored_cfg);
        for (std::size_t i = 0; i < net.size(); ++i) {
            // var of mean spin <= 1/samples (ignoring autocorrelation; generous pad below)
            double sigma = 3.0 / std::sqrt(double(a.samples)) * 3.0;
            CHECK(std::abs(a.mean_spin[i] - b.mean_spin[i]) < 3 * sigma);
        }
    }
}

TEST_CASE("async run") {
    SUBCASE("zero latency matches the exact distribution") {
        auto net = random_net(8, 0.35, 55);
        ChainConfig cfg;
        cfg.kind = SamplerKind::async;
        cfg.seed = 31;
        cfg.async.mean_flip_interval = 1.0;
        cfg.async.synapse_latency = 0.0;
        cfg.async.horizon = 40000.0;
        auto rec = run_chain(net, 1.0, cfg);
        CHECK(tv_vs_exact(rec, net, 1.0) < 0.05);
        CHECK(rec.overlap_events == 0);
    }
    SUBCASE("single p-bit inter-attempt intervals are exponential") {
        auto net = PBitNetwork::symmetric_net(1, {}, {0.0});
        std::vector<double> times;
        AsyncConfig cfg;
        cfg.mean_flip_interval = 2.0;
        cfg.horizon = 8000.0;
        cfg.attempt_time_log = &times;
        PBitRng rng(41, 1);
        SpinState s(1, -1);
        async_run(net, s, 1.0, cfg, rng);
        REQUIRE(times.size() > 1000);
        std::vector<double> gaps(times.size() - 1);
        for (std::size_t k = 0; k + 1 < times.size(); ++k) gaps[k] = times[k + 1] - times[k];
        CHECK(stats::ks_exponential_pvalue(gaps, 2.0) > 0.01);
    }
    SUBCASE("large synapse latency biases a ferromagnetic chain") {
        std::vector<Edge> edges;
        for (uint32_t i = 0; i + 1 < 6; ++i) edges.push_back({i, i + 1, 1.0});
        auto net = PBitNetwork::symmetric_net(6, std::move(edges));

        auto run_latency = [&](double latency, uint64_t seed) {
            ChainConfig cfg;
            cfg.kind = SamplerKind::async;
            cfg.seed = seed;
            cfg.async.synapse_latency = latency;
            cfg.async.horizon = 30000.0;
            auto rec = run_chain(net, 1.0, cfg);
            return tv_vs_exact(rec, net, 1.0);
        };
        double tv0 = run_latency(0.0, 61);
        double tv10 = run_latency(10.0, 61);
        CHECK(tv0 < 0.05);
        CHECK(tv10 > 2 * tv0);  // stale reads lose information
    }
}

TEST_CASE("directed networks") {
    SUBCASE("single root p-bit follows its bias") {
        auto net = PBitNetwork::directed_net(1, {}, {0.7});
        ChainConfig cfg;
        cfg.kind = SamplerKind::directed;
        cfg.sweeps = 200000;
        cfg.seed = 71;
        auto rec = run_chain(net, 1.0, cfg);
        double expected = std::tanh(0.7);  // mean = 2P(+1) - 1 = tanh(h)
        double sigma = 1.0 / std::sqrt(double(rec.samples));
        CHECK(std::abs(rec.mean_spin[0] - expected) < 3 * sigma);
    }
    SUBCASE("two-node chain matches P(A) P(B|A) from the update rule") {
        // edge (i=1, j=0, w): node 0 is the parent of node 1
        const double w = 0.8, ha = 0.3, hb = -0.2, beta = 1.0;
        auto net = PBitNetwork::directed_net(2, {{1, 0, w}}, {ha, hb});
        ChainConfig cfg;
        cfg.kind = SamplerKind::directed;
        cfg.sweeps = 400000;
        cfg.seed = 81;
        auto rec = run_chain(net, beta, cfg);
        auto p = rec.distribution();

        auto prob_plus = [&](double input) { return (1 + std::tanh(beta * input)) / 2; };
        for (int a : {-1, +1})
            for (int b : {-1, +1}) {
                double pa = a > 0 ? prob_plus(ha) : 1 - prob_plus(ha);
                double pb = b > 0 ? prob_plus(w * a + hb) : 1 - prob_plus(w * a + hb);
                uint64_t mask = (a > 0 ? 1 : 0) | (b > 0 ? 2 : 0);
                double sigma = stats::binomial_sigma(pa * pb, rec.samples);
                CHECK(std::abs(p[mask] - pa * pb) < 4 * sigma);
            }
    }
    SUBCASE("updating child before parent gives a different joint") {
        const double w = 1.2, beta = 1.0;
        auto net = PBitNetwork::directed_net(2, {{1, 0, w}}, {0.9, 0.0});
        auto run_order = [&](std::vector<uint32_t> order, uint64_t seed) {
            PBitRng rng(seed, 2);
            SpinState s = SpinState::random(2, rng);
            std::vector<double> p(4, 0.0);
            const int sweeps = 200000;
            for (int k = 0; k < sweeps; ++k) {
                directed_sweep(net, s, beta, order, rng);
                p[s.pack()] += 1.0 / sweeps;
            }
            return p;
        };
        auto forward = run_order({0, 1}, 5);
        auto reversed = run_order({1, 0}, 5);
        CHECK(stats::tv_distance(forward, reversed) > 0.02);
    }
    SUBCASE("cycles and symmetric nets are rejected") {
        auto cyclic = PBitNetwork::directed_net(2, {{0, 1, 1.0}, {1, 0, 1.0}});
        CHECK_THROWS_AS(topological_order(cyclic), std::invalid_argument);
        auto sym = PBitNetwork::symmetric_net(2, {{0, 1, 1.0}});
        CHECK_THROWS_AS(topological_order(sym), std::invalid_argument);
        PBitRng rng(1, 2);
        SpinState s(2, +1);
        std::vector<uint32_t> order = {0, 1};
        CHECK_THROWS_AS(directed_sweep(sym, s, 1.0, order, rng), std::invalid_argument);
    }
    SUBCASE("diamond DAG gets a valid topological order") {
        // 0 -> 1, 0 -> 2, 1 -> 3, 2 -> 3
        auto net = PBitNetwork::directed_net(
            4, {{1, 0, 1.0}, {2, 0, 1.0}, {3, 1, 1.0}, {3, 2, 1.0}});
        auto order = topological_order(net);
        std::vector<std::size_t> pos(4);
        for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = k;
        CHECK(pos[0] < pos[1]);
        CHECK(pos[0] < pos[2]);
        CHECK(pos[1] < pos[3]);
        CHECK(pos[2] < pos[3]);
    }
}

TEST_CASE("determinism: identical seeds give bit-identical trajectories") {
    auto net = random_net(10, 0.4, 201);
    for (SamplerKind kind : {SamplerKind::serial, SamplerKind::colored}) {
        ChainConfig cfg;
        cfg.kind = kind;
        cfg.sweeps = 2000;
        cfg.seed = 99;
        auto a = run_chain(net, 1.5, cfg);
        auto b = run_chain(net, 1.5, cfg);
        CHECK(a.final_state == b.final_state);
        CHECK(a.histogram == b.histogram);
    }
}

TEST_CASE("throughput") {
    SampleRecord rec;
    rec.attempted_flips = 1000;
    rec.wall_seconds = 1.0;
    CHECK(throughput(rec) == doctest::Approx(1000.0));
    rec.wall_seconds = 0.0;
    CHECK_THROWS_AS(throughput(rec), std::invalid_argument);
}

TEST_CASE("colored flips per sweep equal n (the O(1)-sweep metric)") {
    for (std::size_t n : {100, 1000}) {
        std::vector<Edge> edges;
        for (uint32_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 0.5});
        auto net = PBitNetwork::symmetric_net(n, std::move(edges));
        ChainConfig cfg;
        cfg.kind = SamplerKind::colored;
        cfg.sweeps = 10;
        cfg.collect_histogram = false;
        auto rec = run_chain(net, 1.0, cfg);
        CHECK(rec.attempted_flips == 10 * n);
    }
}
