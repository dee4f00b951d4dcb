#include "lansim/topology.hpp"
#include "lansim/errors.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <set>

namespace lansim {

bool Path::contains_node(const NodeId& n) const {
    return std::find(nodes.begin(), nodes.end(), n) != nodes.end();
}

bool Path::uses_link(const LinkKey& k) const {
    for (size_t i = 0; i + 1 < nodes.size(); ++i)
        if (LinkKey(nodes[i], nodes[i + 1]) == k) return true;
    return false;
}

std::vector<LinkKey> Path::links() const {
    std::vector<LinkKey> out;
    for (size_t i = 0; i + 1 < nodes.size(); ++i)
        out.emplace_back(nodes[i], nodes[i + 1]);
    return out;
}

std::string Path::str() const {
    std::string s;
    for (const auto& n : nodes) {
        if (!s.empty()) s += "-";
        s += n;
    }
    return s;
}

Topology Topology::build(const std::vector<NodeSpec>& nodes,
                         const std::vector<LinkSpec>& links) {
    Topology t;
    for (const auto& ns : nodes) {
        if (t.nodes_.count(ns.id)) throw DuplicateIdError(ns.id);
        t.nodes_[ns.id] = Node{ns.id, ns.kind, ElementState::Up};
    }
    for (const auto& ls : links) {
        if (!t.nodes_.count(ls.a)) throw UnknownElementError("node " + ls.a);
        if (!t.nodes_.count(ls.b)) throw UnknownElementError("node " + ls.b);
        if (ls.a == ls.b) throw UnknownElementError("self-link at " + ls.a);
        if (ls.weight <= 0.0) throw NonPositiveWeightError(ls.a, ls.b);
        LinkKey k(ls.a, ls.b);
        if (t.links_.count(k)) throw DuplicateIdError(k.str());
        t.links_[k] = Link{k.a, k.b, ls.weight, ElementState::Up, std::nullopt};
    }
    for (const auto& [k, l] : t.links_) {
        t.adj_[k.a].push_back(k.b);
        t.adj_[k.b].push_back(k.a);
    }
    for (auto& [id, nbrs] : t.adj_) std::sort(nbrs.begin(), nbrs.end());
    return t;
}

bool Topology::has_node(const NodeId& id) const { return nodes_.count(id) > 0; }

bool Topology::has_link(const NodeId& a, const NodeId& b) const {
    return links_.count(LinkKey(a, b)) > 0;
}

const Node& Topology::node(const NodeId& id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw UnknownElementError("node " + id);
    return it->second;
}

const Link& Topology::link(const NodeId& a, const NodeId& b) const {
    auto it = links_.find(LinkKey(a, b));
    if (it == links_.end())
        throw UnknownElementError("link " + LinkKey(a, b).str());
    return it->second;
}

void Topology::set_node_state(const NodeId& id, ElementState s) {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw UnknownElementError("node " + id);
    it->second.state = s;
}

void Topology::set_link_state(const NodeId& a, const NodeId& b, ElementState s) {
    auto it = links_.find(LinkKey(a, b));
    if (it == links_.end())
        throw UnknownElementError("link " + LinkKey(a, b).str());
    it->second.state = s;
}

void Topology::set_congestion(const NodeId& a, const NodeId& b,
                              std::optional<Congestion> c) {
    auto it = links_.find(LinkKey(a, b));
    if (it == links_.end())
        throw UnknownElementError("link " + LinkKey(a, b).str());
    it->second.congestion = std::move(c);
}

bool Topology::link_usable(const NodeId& a, const NodeId& b) const {
    const Link& l = link(a, b);
    if (l.state == ElementState::Down) return false;
    return node(l.a).state == ElementState::Up &&
           node(l.b).state == ElementState::Up;
}

std::vector<NodeId> Topology::node_ids() const {
    std::vector<NodeId> out;
    out.reserve(nodes_.size());
    for (const auto& [id, n] : nodes_) out.push_back(id);
    return out;
}

std::vector<LinkKey> Topology::link_keys() const {
    std::vector<LinkKey> out;
    out.reserve(links_.size());
    for (const auto& [k, l] : links_) out.push_back(k);
    return out;
}

std::vector<NodeId> Topology::usable_neighbors(const NodeId& id) const {
    std::vector<NodeId> out;
    auto it = adj_.find(id);
    if (it == adj_.end()) return out;
    for (const auto& nb : it->second)
        if (link_usable(id, nb)) out.push_back(nb);
    return out;
}

Path Topology::shortest_path(const NodeId& src, const NodeId& dst) const {
    if (!has_node(src)) throw UnknownElementError("node " + src);
    if (!has_node(dst)) throw UnknownElementError("node " + dst);
    if (node(src).state == ElementState::Down ||
        node(dst).state == ElementState::Down)
        throw NoPathError(src, dst);
    if (src == dst) return Path{{src}, 0.0};

    // Priority queue of (cost, node sequence): the cheapest entry with the
    // lexicographically smallest sequence settles each node first, which is
    // exactly the tie-break we promise. Positive weights keep this correct.
    using Entry = std::pair<double, std::vector<NodeId>>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
    std::set<NodeId> settled;
    pq.push({0.0, {src}});
    while (!pq.empty()) {
        auto [cost, seq] = pq.top();
        pq.pop();
        const NodeId& u = seq.back();
        if (settled.count(u)) continue;
        settled.insert(u);
        if (u == dst) return Path{std::move(seq), cost};
        for (const auto& v : usable_neighbors(u)) {
            if (settled.count(v)) continue;
            auto next = seq;
            next.push_back(v);
            pq.push({cost + link(u, v).weight, std::move(next)});
        }
    }
    throw NoPathError(src, dst);
}

std::vector<Path> Topology::all_simple_paths(const NodeId& src, const NodeId& dst,
                                             double cost_cap) const {
    std::vector<Path> out;
    std::vector<NodeId> stack{src};
    std::set<NodeId> visited{src};
    double cost = 0.0;

    // Iterative DFS with explicit neighbor cursors; neighbors come back
    // sorted, so paths pop out in canonical order already.
    struct Frame {
        std::vector<NodeId> nbrs;
        size_t next = 0;
    };
    std::vector<Frame> frames;
    frames.push_back({usable_neighbors(src), 0});

    while (!frames.empty()) {
        Frame& f = frames.back();
        if (f.next >= f.nbrs.size()) {
            frames.pop_back();
            visited.erase(stack.back());
            if (!stack.empty()) {
                NodeId dropped = stack.back();
                stack.pop_back();
                if (!stack.empty()) cost -= link(stack.back(), dropped).weight;
            }
            continue;
        }
        const NodeId v = f.nbrs[f.next++];
        if (visited.count(v)) continue;
        double ncost = cost + link(stack.back(), v).weight;
        if (ncost > cost_cap) continue;
        if (v == dst) {
            auto nodes = stack;
            nodes.push_back(v);
            out.push_back(Path{std::move(nodes), ncost});
            continue;
        }
        stack.push_back(v);
        visited.insert(v);
        cost = ncost;
        frames.push_back({usable_neighbors(v), 0});
    }
    return out;
}

std::vector<Path> Topology::equal_cost_paths(const NodeId& src,
                                             const NodeId& dst) const {
    Path best = shortest_path(src, dst); // throws when disconnected
    if (src == dst) return {best};
    auto all = all_simple_paths(src, dst, best.cost);
    std::vector<Path> out;
    for (auto& p : all)
        if (p.cost == best.cost) out.push_back(std::move(p));
    return out; // DFS order is already lexicographic
}

Path Topology::disjoint_backup(const Path& primary) const {
    if (primary.nodes.size() < 2)
        throw NoBackupError(primary.nodes.empty() ? "" : primary.nodes.front(),
                            primary.nodes.empty() ? "" : primary.nodes.back());
    const NodeId& src = primary.nodes.front();
    const NodeId& dst = primary.nodes.back();

    auto candidates = all_simple_paths(src, dst,
                                       std::numeric_limits<double>::infinity());
    auto primary_links = primary.links();
    std::set<LinkKey> plinks(primary_links.begin(), primary_links.end());
    std::set<NodeId> pmid(primary.nodes.begin() + 1, primary.nodes.end() - 1);

    const Path* best = nullptr;
    std::tuple<int, int, double> best_key;
    for (const auto& c : candidates) {
        if (c.nodes == primary.nodes) continue;
        int shared_links = 0;
        for (const auto& k : c.links())
            if (plinks.count(k)) ++shared_links;
        int shared_mid = 0;
        for (size_t i = 1; i + 1 < c.nodes.size(); ++i)
            if (pmid.count(c.nodes[i])) ++shared_mid;
        std::tuple<int, int, double> key{shared_links, shared_mid, c.cost};
        if (!best || key < best_key) { // canonical order breaks exact ties
            best = &c;
            best_key = key;
        }
    }
    if (!best) throw NoBackupError(src, dst);
    return *best;
}

bool Topology::is_reachable(const NodeId& src, const NodeId& dst) const {
    if (!has_node(src)) throw UnknownElementError("node " + src);
    if (!has_node(dst)) throw UnknownElementError("node " + dst);
    if (node(src).state == ElementState::Down ||
        node(dst).state == ElementState::Down)
        return false;
    if (src == dst) return true;
    std::set<NodeId> seen{src};
    std::queue<NodeId> q;
    q.push(src);
    while (!q.empty()) {
        NodeId u = q.front();
        q.pop();
        for (const auto& v : usable_neighbors(u)) {
            if (v == dst) return true;
            if (seen.insert(v).second) q.push(v);
        }
    }
    return false;
}

bool Topology::operator==(const Topology& o) const {
    if (nodes_.size() != o.nodes_.size() || links_.size() != o.links_.size())
        return false;
    for (const auto& [id, n] : nodes_) {
        auto it = o.nodes_.find(id);
        if (it == o.nodes_.end() || it->second.kind != n.kind ||
            it->second.state != n.state)
            return false;
    }
    for (const auto& [k, l] : links_) {
        auto it = o.links_.find(k);
        if (it == o.links_.end() || it->second.weight != l.weight ||
            it->second.state != l.state)
            return false;
    }
    return true;
}

} // namespace lansim
