#include "pbit/coloring.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace pbit {

bool ColoringPlan::proper(const PBitNetwork& net) const {
    if (colors.size() != net.size()) return false;
    for (const Edge& e : net.edges())
        if (colors[e.i] == colors[e.j]) return false;
    std::vector<char> seen(net.size(), 0);
    for (std::size_t c = 0; c < class_lists.size(); ++c)
        for (uint32_t v : class_lists[c]) {
            if (v >= net.size() || seen[v] || colors[v] != c) return false;
            seen[v] = 1;
        }
    return std::all_of(seen.begin(), seen.end(), [](char s) { return s == 1; });
}

ColoringPlan color_graph(const PBitNetwork& net) {
    const std::size_t n = net.size();
    constexpr uint32_t kUncolored = ~uint32_t(0);

    std::vector<uint32_t> colors(n, kUncolored);
    std::vector<std::set<uint32_t>> neighbor_colors(n);

    // Ordered by (-saturation, -degree, index): begin() is the Dsatur pick.
    using Entry = std::tuple<int64_t, int64_t, uint32_t>;
    std::set<Entry> queue;
    auto entry = [&](uint32_t v) {
        return Entry{-int64_t(neighbor_colors[v].size()), -int64_t(net.degree(v)), v};
    };
    for (uint32_t v = 0; v < n; ++v) queue.insert(entry(v));

    uint32_t used = 0;
    while (!queue.empty()) {
        uint32_t v = std::get<2>(*queue.begin());
        queue.erase(queue.begin());

        uint32_t c = 0;
        while (neighbor_colors[v].count(c)) ++c;
        colors[v] = c;
        used = std::max(used, c + 1);

        for (const auto& nb : net.neighbors(v)) {
            if (colors[nb.index] != kUncolored) continue;
            auto it = queue.find(entry(nb.index));
            if (neighbor_colors[nb.index].insert(c).second && it != queue.end()) {
                queue.erase(it);
                queue.insert(entry(nb.index));
            }
        }
    }

    ColoringPlan plan;
    plan.colors = std::move(colors);
    plan.class_lists.resize(used);
    for (uint32_t v = 0; v < n; ++v) plan.class_lists[plan.colors[v]].push_back(v);
    return plan;
}

}  // namespace pbit
