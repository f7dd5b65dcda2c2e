#include "lwr/graph.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace lwr {

namespace {

int parent_index(const Network& net, int i) {
    return *net.parent[static_cast<std::size_t>(i)];
}

bool has_parent(const Network& net, int i) {
    return net.parent[static_cast<std::size_t>(i)].has_value();
}

void check_node(const Network& net, int i) {
    if (i < 0 || i >= net.n)
        throw std::out_of_range("node index " + std::to_string(i) + " out of range");
}

// Plain union-find for the weakly-connected components.
struct UnionFind {
    std::vector<int> up;
    explicit UnionFind(int n) : up(static_cast<std::size_t>(n)) {
        std::iota(up.begin(), up.end(), 0);
    }
    int find(int x) {
        while (up[static_cast<std::size_t>(x)] != x) {
            up[static_cast<std::size_t>(x)] = up[static_cast<std::size_t>(up[static_cast<std::size_t>(x)])];
            x = up[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { up[static_cast<std::size_t>(find(a))] = find(b); }
};

}  // namespace

std::vector<std::string> validate_parents(const std::vector<std::optional<int>>& parents) {
    std::vector<std::string> violations;
    const int n = static_cast<int>(parents.size());
    for (int i = 0; i < n; ++i) {
        const auto& p = parents[static_cast<std::size_t>(i)];
        if (!p) continue;
        if (*p == i)
            violations.push_back("network: node " + std::to_string(i) + " observes itself (self-loop)");
        else if (*p < 0 || *p >= n)
            violations.push_back("network: node " + std::to_string(i) + " has parent " +
                                 std::to_string(*p) + " outside [0, " + std::to_string(n) + ")");
    }
    return violations;
}

Network Network::from_parents(std::vector<std::optional<int>> parents) {
    auto violations = validate_parents(parents);
    if (!violations.empty()) throw std::invalid_argument(violations.front());
    Network net;
    net.n = static_cast<int>(parents.size());
    net.parent = std::move(parents);
    return net;
}

const char* component_kind_name(ComponentKind k) {
    switch (k) {
        case ComponentKind::forest: return "forest";
        case ComponentKind::single_circle: return "single-circle";
    }
    return "?";
}

Shape classify(const Network& net) {
    const int n = net.n;
    Shape shape;
    shape.depth.assign(static_cast<std::size_t>(n), 0);
    shape.component_of.assign(static_cast<std::size_t>(n), -1);
    shape.circle_member.assign(static_cast<std::size_t>(n), 0);

    // 0 = unvisited, 1 = on the current walk, 2 = resolved (depth known).
    std::vector<int> state(static_cast<std::size_t>(n), 0);
    std::vector<int> circle_of(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<int>> circles;

    for (int start = 0; start < n; ++start) {
        if (state[static_cast<std::size_t>(start)] != 0) continue;
        std::vector<int> chain;
        int cur = start;
        while (true) {
            if (state[static_cast<std::size_t>(cur)] == 2) break;  // joins resolved territory
            if (state[static_cast<std::size_t>(cur)] == 1) {
                // Closed a new circle: everything from cur's first occurrence
                // on the chain to its end lies on it.
                auto it = std::find(chain.begin(), chain.end(), cur);
                assert(it != chain.end());
                // Walk order follows parent pointers (child, parent, ...);
                // reverse it so each member's parent precedes it.
                std::vector<int> circle(it, chain.end());
                std::reverse(circle.begin(), circle.end());
                auto smallest = std::min_element(circle.begin(), circle.end());
                std::rotate(circle.begin(), smallest, circle.end());
                const int circle_id = static_cast<int>(circles.size());
                for (int c : circle) {
                    state[static_cast<std::size_t>(c)] = 2;
                    shape.depth[static_cast<std::size_t>(c)] = 0;
                    shape.circle_member[static_cast<std::size_t>(c)] = 1;
                    circle_of[static_cast<std::size_t>(c)] = circle_id;
                }
                circles.push_back(std::move(circle));
                break;
            }
            state[static_cast<std::size_t>(cur)] = 1;
            chain.push_back(cur);
            if (!has_parent(net, cur)) {
                state[static_cast<std::size_t>(cur)] = 2;
                shape.depth[static_cast<std::size_t>(cur)] = 0;  // parentless root
                break;
            }
            cur = parent_index(net, cur);
        }
        // Unwind the remaining chain back-to-front; each node's parent is
        // already resolved by the time we reach it.
        for (auto rit = chain.rbegin(); rit != chain.rend(); ++rit) {
            const int v = *rit;
            if (state[static_cast<std::size_t>(v)] == 2) continue;
            const int p = parent_index(net, v);
            shape.depth[static_cast<std::size_t>(v)] = shape.depth[static_cast<std::size_t>(p)] + 1;
            state[static_cast<std::size_t>(v)] = 2;
        }
    }

    // Weak components over the undirected view of parent edges.
    UnionFind uf(n);
    for (int i = 0; i < n; ++i)
        if (has_parent(net, i)) uf.unite(i, parent_index(net, i));

    std::vector<int> rep_to_comp(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        const int rep = uf.find(i);
        int& comp = rep_to_comp[static_cast<std::size_t>(rep)];
        if (comp == -1) {
            comp = static_cast<int>(shape.components.size());
            shape.components.emplace_back();
        }
        shape.component_of[static_cast<std::size_t>(i)] = comp;
        shape.components[static_cast<std::size_t>(comp)].nodes.push_back(i);
    }

    for (auto& comp : shape.components) {
        int circle_id = -1;
        for (int v : comp.nodes) {
            if (circle_of[static_cast<std::size_t>(v)] != -1) {
                // in-degree <= 1 admits at most one circle per component
                assert(circle_id == -1 || circle_id == circle_of[static_cast<std::size_t>(v)]);
                circle_id = circle_of[static_cast<std::size_t>(v)];
            }
        }
        if (circle_id != -1) {
            comp.kind = ComponentKind::single_circle;
            comp.circle_nodes = circles[static_cast<std::size_t>(circle_id)];
        }
    }
    return shape;
}

std::vector<int> reachable_ancestors(const Network& net, int i) {
    check_node(net, i);
    std::vector<char> seen(static_cast<std::size_t>(net.n), 0);
    int cur = i;
    while (!seen[static_cast<std::size_t>(cur)]) {
        seen[static_cast<std::size_t>(cur)] = 1;
        if (!has_parent(net, cur)) break;
        cur = parent_index(net, cur);
    }
    std::vector<int> out;
    for (int v = 0; v < net.n; ++v)
        if (seen[static_cast<std::size_t>(v)]) out.push_back(v);
    return out;
}

std::vector<int> circle_order_from(const Network& net, const Shape& shape, int i) {
    check_node(net, i);
    if (!shape.on_circle(i))
        throw std::invalid_argument("node " + std::to_string(i) + " is not a circle member");
    const auto& circle = shape.component_of_node(i).circle_nodes;
    const auto it = std::find(circle.begin(), circle.end(), i);
    const int pos = static_cast<int>(it - circle.begin());
    const int len = static_cast<int>(circle.size());
    std::vector<int> out(static_cast<std::size_t>(len));
    for (int k = 0; k < len; ++k)
        out[static_cast<std::size_t>(k)] = circle[static_cast<std::size_t>((pos + 1 + k) % len)];
    return out;
}

}  // namespace lwr
