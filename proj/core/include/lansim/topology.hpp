#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lansim {

using NodeId = std::string;

enum class NodeKind { Host, Switch, Router };
enum class ElementState { Up, Down };

// Canonical (sorted) undirected link key: a < b always.
struct LinkKey {
    NodeId a, b;

    LinkKey() = default;
    LinkKey(NodeId x, NodeId y) {
        if (y < x) std::swap(x, y);
        a = std::move(x);
        b = std::move(y);
    }

    bool operator<(const LinkKey& o) const {
        return a != o.a ? a < o.a : b < o.b;
    }
    bool operator==(const LinkKey& o) const { return a == o.a && b == o.b; }

    std::string str() const { return a + "-" + b; }
};

// Transient degradation window on a link: packets crossing while
// now < until_ms are dropped with p_drop, surviving ones delayed.
struct Congestion {
    double p_drop = 0.0;
    int64_t extra_delay_ms = 0;
    int64_t until_ms = 0;
};

struct Node {
    NodeId id;
    NodeKind kind = NodeKind::Switch;
    ElementState state = ElementState::Up;
};

struct Link {
    NodeId a, b; // normalized a < b
    double weight = 1.0;
    ElementState state = ElementState::Up;
    std::optional<Congestion> congestion;
};

struct NodeSpec {
    NodeId id;
    NodeKind kind = NodeKind::Switch;
};

struct LinkSpec {
    NodeId a, b;
    double weight = 1.0;
};

struct Path {
    std::vector<NodeId> nodes;
    double cost = 0.0;

    bool operator==(const Path& o) const { return nodes == o.nodes; }
    bool contains_node(const NodeId& n) const;
    bool uses_link(const LinkKey& k) const;
    std::vector<LinkKey> links() const;
    std::string str() const; // "S1-S2-R1"
};

// Undirected weighted graph with element up/down state. Value semantics:
// copies are independent, so a routing view can diverge from ground truth.
// Down nodes make all incident links unusable without touching their stored
// state; path queries operate on the residual graph of usable elements.
class Topology {
public:
    Topology() = default;
    static Topology build(const std::vector<NodeSpec>& nodes,
                          const std::vector<LinkSpec>& links);

    bool has_node(const NodeId& id) const;
    bool has_link(const NodeId& a, const NodeId& b) const;
    const Node& node(const NodeId& id) const;
    const Link& link(const NodeId& a, const NodeId& b) const;

    void set_node_state(const NodeId& id, ElementState s);
    void set_link_state(const NodeId& a, const NodeId& b, ElementState s);
    void set_congestion(const NodeId& a, const NodeId& b,
                        std::optional<Congestion> c);

    // Usable = link up and both endpoints up.
    bool link_usable(const NodeId& a, const NodeId& b) const;

    std::vector<NodeId> node_ids() const;   // sorted
    std::vector<LinkKey> link_keys() const; // sorted
    std::vector<NodeId> usable_neighbors(const NodeId& id) const; // sorted

    // Minimum-cost path on the residual graph. Ties broken toward the
    // lexicographically smaller node-id sequence. Throws UnknownElementError
    // for missing endpoints, NoPathError when disconnected.
    Path shortest_path(const NodeId& src, const NodeId& dst) const;

    // Every simple path whose cost equals the shortest cost, in canonical
    // order (lexicographic node sequence).
    std::vector<Path> equal_cost_paths(const NodeId& src, const NodeId& dst) const;

    // Alternative for the primary's endpoints sharing as few links with it as
    // possible (0 when the graph allows it; endpoint links of degree-1 nodes
    // are unavoidable). Preference among candidates: fewer shared links,
    // fewer shared intermediate nodes, lower cost, canonical order.
    // Throws NoBackupError when the primary is the only simple path.
    Path disjoint_backup(const Path& primary) const;

    bool is_reachable(const NodeId& src, const NodeId& dst) const;

    bool operator==(const Topology& o) const;

private:
    std::map<NodeId, Node> nodes_;
    std::map<LinkKey, Link> links_;
    std::map<NodeId, std::vector<NodeId>> adj_; // neighbor lists, sorted

    std::vector<Path> all_simple_paths(const NodeId& src, const NodeId& dst,
                                       double cost_cap) const;
};

} // namespace lansim
