#include "pbit/sparsify.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "pbit/errors.hpp"

namespace pbit {

SparsifyResult sparsify(const PBitNetwork& net, std::size_t max_degree,
                        std::optional<double> j_copy) {
    if (!net.symmetric())
        throw std::invalid_argument("sparsify requires a symmetric network");
    if (max_degree < 3)
        throw std::invalid_argument("max_degree must be >= 3 (2 chain links + 1 payload edge)");

    const std::size_t n = net.size();
    CopyPlan plan;
    plan.max_degree = max_degree;
    plan.original_size = n;
    plan.groups.resize(n);

    // copy counts and new index layout
    std::size_t next = 0;
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t d = net.degree(v);
        std::size_t copies = d > max_degree ? (d + max_degree - 3) / (max_degree - 2) : 1;
        for (std::size_t k = 0; k < copies; ++k)
            plan.groups[v].push_back(static_cast<uint32_t>(next++));
    }
    plan.sparse_size = next;

    if (next == n) {  // nothing split: identity plan, network unchanged
        return {net, std::move(plan)};
    }

    // Per-link chain coupling. Breaking exactly one link lets one side of the
    // chain flip, recovering at most the smaller side's payload, which is at
    // most half the group total; b broken links cost 2*J*b against at most the
    // full payload. Either way 1 + (sum|w| + |h|)/2 per link wins strictly.
    std::vector<double> group_j(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
        if (plan.groups[v].size() < 2) continue;
        group_j[v] = j_copy ? *j_copy : 1.0 + 0.5 * net.local_scale(v);
    }

    std::vector<Edge> edges;
    edges.reserve(net.edge_count() + next - n);
    std::vector<double> bias(next, 0.0);

    // payload edges: round-robin over each endpoint's chain
    std::vector<std::size_t> cursor(n, 0);
    for (const Edge& e : net.edges()) {
        const auto& gi = plan.groups[e.i];
        const auto& gj = plan.groups[e.j];
        uint32_t a = gi[cursor[e.i]++ % gi.size()];
        uint32_t b = gj[cursor[e.j]++ % gj.size()];
        edges.push_back({a, b, e.w});
    }

    for (std::size_t v = 0; v < n; ++v) {
        const auto& group = plan.groups[v];
        double share = net.bias(v) / static_cast<double>(group.size());
        for (uint32_t c : group) bias[c] = share;
        for (std::size_t k = 0; k + 1 < group.size(); ++k) {
            edges.push_back({group[k], group[k + 1], group_j[v]});
            plan.copy_edges.push_back({group[k], group[k + 1], group_j[v]});
        }
    }

    PBitNetwork sparse(next, std::move(edges), std::move(bias), true);
    return {std::move(sparse), std::move(plan)};
}

double graph_density(const PBitNetwork& net) {
    if (!net.symmetric()) throw std::invalid_argument("density defined for symmetric networks");
    if (net.size() < 2) throw std::invalid_argument("density needs at least 2 vertices");
    double v = static_cast<double>(net.size());
    return 2.0 * static_cast<double>(net.edge_count()) / (v * v - v);
}

CollapseResult collapse(const SpinState& sparse_state, const CopyPlan& plan) {
    if (sparse_state.size() != plan.sparse_size)
        throw std::invalid_argument("state size does not match plan");
    CollapseResult result;
    result.state = SpinState(plan.original_size);
    for (std::size_t v = 0; v < plan.original_size; ++v) {
        const auto& group = plan.groups[v];
        int sum = 0;
        bool uniform = true;
        for (uint32_t c : group) {
            sum += sparse_state.m[c];
            if (sparse_state.m[c] != sparse_state.m[group.front()]) uniform = false;
        }
        if (!uniform) result.broken_groups++;
        result.state.m[v] = sum > 0 ? +1 : sum < 0 ? -1 : sparse_state.m[group.front()];
    }
    return result;
}

std::string CopyPlan::to_json() const {
    nlohmann::json j;
    j["max_degree"] = max_degree;
    j["original_size"] = original_size;
    j["sparse_size"] = sparse_size;
    j["groups"] = groups;
    auto edges = nlohmann::json::array();
    for (const auto& e : copy_edges) edges.push_back({e.a, e.b, e.j_copy});
    j["copy_edges"] = std::move(edges);
    return j.dump(2);
}

CopyPlan CopyPlan::from_json(const std::string& text) {
    try {
        auto j = nlohmann::json::parse(text);
        CopyPlan plan;
        plan.max_degree = j.at("max_degree").get<std::size_t>();
        plan.original_size = j.at("original_size").get<std::size_t>();
        plan.sparse_size = j.at("sparse_size").get<std::size_t>();
        plan.groups = j.at("groups").get<std::vector<std::vector<uint32_t>>>();
        for (const auto& e : j.at("copy_edges"))
            plan.copy_edges.push_back(
                {e[0].get<uint32_t>(), e[1].get<uint32_t>(), e[2].get<double>()});
        return plan;
    } catch (const nlohmann::json::exception& e) {
        throw format_error(std::string("bad copy plan JSON: ") + e.what());
    }
}

CopyPlan CopyPlan::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw format_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

void CopyPlan::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << to_json() << '\n';
}

}  // namespace pbit
