#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace twindragon::detail {

/// Iterative Tarjan. `successors(v)` yields the out-neighbours of v.
/// Components come back in topological order of the condensation
/// (a component precedes every component it has an edge to).
template <typename Successors>
std::vector<std::vector<std::size_t>> strongly_connected_components(std::size_t n, Successors&& successors) {
    constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> index(n, kUnvisited);
    std::vector<std::size_t> low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> components;
    std::size_t counter = 0;

    struct Frame {
        std::size_t vertex;
        std::vector<std::size_t> next;
        std::size_t pos;
    };

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != kUnvisited) continue;
        std::vector<Frame> call;
        auto enter = [&](std::size_t v) {
            index[v] = low[v] = counter++;
            stack.push_back(v);
            on_stack[v] = true;
            call.push_back({v, successors(v), 0});
        };
        enter(root);
        while (!call.empty()) {
            Frame& frame = call.back();
            if (frame.pos < frame.next.size()) {
                const std::size_t w = frame.next[frame.pos++];
                if (index[w] == kUnvisited) {
                    enter(w);
                } else if (on_stack[w]) {
                    low[frame.vertex] = std::min(low[frame.vertex], index[w]);
                }
                continue;
            }
            const std::size_t v = frame.vertex;
            if (low[v] == index[v]) {
                std::vector<std::size_t> component;
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    component.push_back(w);
                } while (w != v);
                std::sort(component.begin(), component.end());
                components.push_back(std::move(component));
            }
            call.pop_back();
            if (!call.empty()) {
                const std::size_t parent = call.back().vertex;
                low[parent] = std::min(low[parent], low[v]);
            }
        }
    }
    // Tarjan emits sinks first.
    std::reverse(components.begin(), components.end());
    return components;
}

}  // namespace twindragon::detail
