#pragma once

#include <optional>
#include <string>
#include <vector>

namespace lwr {

// Directed network where every node observes at most one neighbor:
// parent[i] is the tail of the unique edge into i, when present.
struct Network {
    int n = 0;
    std::vector<std::optional<int>> parent;

    // Throws std::invalid_argument on self-loops or out-of-range parents.
    static Network from_parents(std::vector<std::optional<int>> parents);
};

// Same checks as from_parents but reported as data instead of thrown.
std::vector<std::string> validate_parents(const std::vector<std::optional<int>>& parents);

enum class ComponentKind { forest, single_circle };
const char* component_kind_name(ComponentKind k);

struct Component {
    ComponentKind kind = ComponentKind::forest;
    std::vector<int> nodes;  // ascending
    // Circle members in propagation order (each node's parent precedes it,
    // cyclically), rotated to start at the smallest member. Empty for forests.
    std::vector<int> circle_nodes;
};

struct Shape {
    std::vector<Component> components;
    std::vector<int> depth;           // distance to the nearest parentless root or circle node
    std::vector<int> component_of;    // node -> index into components
    std::vector<char> circle_member;  // node -> 1 iff on a circle
    const Component& component_of_node(int i) const {
        return components[static_cast<std::size_t>(component_of[static_cast<std::size_t>(i)])];
    }
    bool on_circle(int i) const { return circle_member[static_cast<std::size_t>(i)] != 0; }
};

// Detects circles by parent-chain traversal and assigns per-component kind,
// circle membership/order, and per-node depth.
Shape classify(const Network& net);

// A(i): i plus every node whose signals reach i along parent edges.
// Sorted ascending. Terminates by visited marking on circles.
std::vector<int> reachable_ancestors(const Network& net, int i);

// Circle nodes in the order signals propagate to i, ending at i.
// Throws std::invalid_argument when i is not a circle member.
std::vector<int> circle_order_from(const Network& net, const Shape& shape, int i);

}  // namespace lwr
