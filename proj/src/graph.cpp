#include "stratifold/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>
#include <numeric>
#include <utility>

namespace stratifold {

StratifoldGraph& StratifoldGraph::add_white(std::string id, int genus) {
    if (whites_.count(id)) throw GraphError("duplicate white vertex id '" + id + "'");
    auto key = id;
    whites_.emplace(std::move(key), WhiteVertex{std::move(id), genus});
    return *this;
}

StratifoldGraph& StratifoldGraph::add_black(std::string id) {
    if (blacks_.count(id)) throw GraphError("duplicate black vertex id '" + id + "'");
    auto key = id;
    blacks_.emplace(std::move(key), BlackVertex{std::move(id)});
    return *this;
}

StratifoldGraph& StratifoldGraph::add_edge(std::string id, std::string white, std::string black,
                                           long label) {
    if (edges_.count(id)) throw GraphError("duplicate edge id '" + id + "'");
    auto key = id;
    edges_.emplace(std::move(key), Edge{std::move(id), std::move(white), std::move(black), label});
    return *this;
}

const WhiteVertex& StratifoldGraph::white(const std::string& id) const {
    auto it = whites_.find(id);
    if (it == whites_.end()) throw GraphError("unknown white vertex '" + id + "'");
    return it->second;
}

const BlackVertex& StratifoldGraph::black(const std::string& id) const {
    auto it = blacks_.find(id);
    if (it == blacks_.end()) throw GraphError("unknown black vertex '" + id + "'");
    return it->second;
}

const Edge& StratifoldGraph::edge(const std::string& id) const {
    auto it = edges_.find(id);
    if (it == edges_.end()) throw GraphError("unknown edge '" + id + "'");
    return it->second;
}

std::vector<std::string> StratifoldGraph::edges_at(const VertexRef& v) const {
    std::vector<std::string> out;
    for (const auto& [id, e] : edges_) {
        if ((v.color == Color::White && e.white == v.id) ||
            (v.color == Color::Black && e.black == v.id))
            out.push_back(id);
    }
    return out;
}

long StratifoldGraph::cycle_rank() const {
    return static_cast<long>(edges_.size()) - static_cast<long>(vertex_count()) + 1;
}

void StratifoldGraph::set_label(const std::string& edge_id, long label) {
    auto it = edges_.find(edge_id);
    if (it == edges_.end()) throw GraphError("unknown edge '" + edge_id + "'");
    it->second.label = label;
}

void StratifoldGraph::remove_edge(const std::string& edge_id) {
    if (!edges_.erase(edge_id)) throw GraphError("unknown edge '" + edge_id + "'");
}

void StratifoldGraph::remove_white(const std::string& id) {
    if (!whites_.erase(id)) throw GraphError("unknown white vertex '" + id + "'");
    std::erase_if(edges_, [&](const auto& kv) { return kv.second.white == id; });
}

void StratifoldGraph::remove_black(const std::string& id) {
    if (!blacks_.erase(id)) throw GraphError("unknown black vertex '" + id + "'");
    std::erase_if(edges_, [&](const auto& kv) { return kv.second.black == id; });
}

const char* rule_name(Rule r) {
    switch (r) {
        case Rule::EmptyGraph: return "EmptyGraph";
        case Rule::ZeroLabel: return "ZeroLabel";
        case Rule::MissingWhite: return "MissingWhite";
        case Rule::MissingBlack: return "MissingBlack";
        case Rule::BranchTooSmall: return "BranchTooSmall";
        case Rule::IsolatedBlack: return "IsolatedBlack";
        case Rule::IsolatedWhite: return "IsolatedWhite";
        case Rule::Disconnected: return "Disconnected";
    }
    return "?";
}

namespace {

// Connected components over vertices, ignoring edges with missing endpoints.
std::vector<std::vector<VertexRef>> components(const StratifoldGraph& g) {
    std::map<VertexRef, std::vector<VertexRef>> adj;
    for (const auto& [id, w] : g.whites()) adj[{Color::White, id}];
    for (const auto& [id, b] : g.blacks()) adj[{Color::Black, id}];
    for (const auto& [id, e] : g.edges()) {
        if (!g.has_white(e.white) || !g.has_black(e.black)) continue;
        VertexRef w{Color::White, e.white}, b{Color::Black, e.black};
        adj[w].push_back(b);
        adj[b].push_back(w);
    }
    std::set<VertexRef> seen;
    std::vector<std::vector<VertexRef>> out;
    for (const auto& [v, _] : adj) {
        if (seen.count(v)) continue;
        std::vector<VertexRef> comp;
        std::deque<VertexRef> queue{v};
        seen.insert(v);
        while (!queue.empty()) {
            auto u = queue.front();
            queue.pop_front();
            comp.push_back(u);
            for (const auto& n : adj[u])
                if (seen.insert(n).second) queue.push_back(n);
        }
        out.push_back(std::move(comp));
    }
    return out;
}

}  // namespace

std::vector<Violation> validate(const StratifoldGraph& graph) {
    std::vector<Violation> out;
    if (graph.vertex_count() == 0) {
        out.push_back({Rule::EmptyGraph, "", "graph has no vertices"});
        return out;
    }
    for (const auto& [id, e] : graph.edges()) {
        if (e.label == 0) out.push_back({Rule::ZeroLabel, id, "edge label must be nonzero"});
        if (!graph.has_white(e.white))
            out.push_back({Rule::MissingWhite, id, "white endpoint '" + e.white + "' does not exist"});
        if (!graph.has_black(e.black))
            out.push_back({Rule::MissingBlack, id, "black endpoint '" + e.black + "' does not exist"});
    }
    for (const auto& [id, b] : graph.blacks()) {
        auto incident = graph.edges_at_black(id);
        if (incident.empty()) {
            out.push_back({Rule::IsolatedBlack, id, "black vertex has no incident edge"});
            continue;
        }
        long d = 0;
        for (const auto& e : incident) d += std::labs(graph.edge(e).label);
        if (d < 3)
            out.push_back({Rule::BranchTooSmall, id, "branch degree d=" + std::to_string(d) + " < 3"});
    }
    if (graph.vertex_count() > 1) {
        for (const auto& [id, w] : graph.whites()) {
            if (graph.edges_at_white(id).empty())
                out.push_back({Rule::IsolatedWhite, id, "white vertex has no incident edge"});
        }
    }
    auto comps = components(graph);
    if (comps.size() > 1) {
        for (std::size_t i = 1; i < comps.size(); ++i)
            out.push_back({Rule::Disconnected, comps[i].front().id,
                           "vertex not connected to '" + comps[0].front().id + "'"});
    }
    return out;
}

bool is_valid(const StratifoldGraph& graph) { return validate(graph).empty(); }

void require_valid(const StratifoldGraph& graph) {
    auto v = validate(graph);
    if (!v.empty())
        throw GraphError(std::string("invalid graph: ") + rule_name(v.front().rule) + " at '" +
                         v.front().subject + "': " + v.front().detail);
}

std::vector<long> partition_at(const StratifoldGraph& graph, const std::string& black) {
    graph.black(black);
    std::vector<long> parts;
    for (const auto& e : graph.edges_at_black(black)) parts.push_back(std::labs(graph.edge(e).label));
    std::sort(parts.rbegin(), parts.rend());
    return parts;
}

long branch_degree(const StratifoldGraph& graph, const std::string& black) {
    auto parts = partition_at(graph, black);
    return std::accumulate(parts.begin(), parts.end(), 0L);
}

long euler_characteristic(const StratifoldGraph& graph) {
    require_valid(graph);
    long chi = 0;
    for (const auto& [id, w] : graph.whites()) {
        long p = static_cast<long>(graph.edges_at_white(id).size());
        chi += 2 - w.surface_rank() - p;
    }
    return chi;
}

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;

    std::size_t add() {
        parent.push_back(parent.size());
        return parent.size() - 1;
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::size_t classes() {
        std::size_t n = 0;
        for (std::size_t i = 0; i < parent.size(); ++i)
            if (find(i) == i) ++n;
        return n;
    }
};

}  // namespace

long cw_euler(const StratifoldGraph& graph) {
    require_valid(graph);
    // Cells of the disjoint union of the black circles and the surfaces W, then
    // the attaching map identifies boundary cells with black cells.
    UnionFind v0, v1;
    std::size_t faces = 0;
    std::map<std::string, std::pair<std::size_t, std::size_t>> circle;  // black -> (vertex, edge)
    for (const auto& [id, b] : graph.blacks()) circle[id] = {v0.add(), v1.add()};

    for (const auto& [id, w] : graph.whites()) {
        // One interior vertex, one loop per handle/crosscap generator, one
        // arc to each boundary circle, and a single 2-cell.
        v0.add();
        for (int j = 0; j < w.surface_rank(); ++j) v1.add();
        for (const auto& eid : graph.edges_at_white(id)) {
            const auto& e = graph.edge(eid);
            v1.add();  // arc from the interior vertex to the boundary circle
            const auto [cv, ce] = circle.at(e.black);
            // The boundary circle is subdivided into |m| vertices and |m|
            // edges so the covering map is cellular; each cell lands on the
            // single vertex / edge of the branch circle.
            for (long k = 0; k < std::labs(e.label); ++k) {
                v0.unite(v0.add(), cv);
                v1.unite(v1.add(), ce);
            }
        }
        ++faces;
    }
    return static_cast<long>(v0.classes()) - static_cast<long>(v1.classes()) +
           static_cast<long>(faces);
}

namespace {

struct TreeStep {
    std::string edge;
    VertexRef child;
};

VertexRef other_end(const Edge& e, const VertexRef& v) {
    if (v.color == Color::White) return {Color::Black, e.black};
    return {Color::White, e.white};
}

// BFS discovery order of tree edges.
std::vector<TreeStep> bfs_tree(const StratifoldGraph& graph) {
    if (graph.vertex_count() == 0) return {};
    std::set<VertexRef> all;
    for (const auto& [id, w] : graph.whites()) all.insert({Color::White, id});
    for (const auto& [id, b] : graph.blacks()) all.insert({Color::Black, id});
    VertexRef root = *all.begin();

    std::vector<TreeStep> steps;
    std::set<VertexRef> seen{root};
    std::deque<VertexRef> queue{root};
    while (!queue.empty()) {
        auto u = queue.front();
        queue.pop_front();
        for (const auto& eid : graph.edges_at(u)) {
            auto next = other_end(graph.edge(eid), u);
            if (!all.count(next)) continue;
            if (seen.insert(next).second) {
                steps.push_back({eid, next});
                queue.push_back(next);
            }
        }
    }
    if (seen.size() != all.size()) throw GraphError("graph is disconnected");
    return steps;
}

}  // namespace

std::set<std::string> spanning_tree(const StratifoldGraph& graph) {
    std::set<std::string> out;
    for (const auto& step : bfs_tree(graph)) out.insert(step.edge);
    return out;
}

StratifoldGraph flip_black(const StratifoldGraph& graph, const std::string& black) {
    StratifoldGraph out = graph;
    for (const auto& e : graph.edges_at_black(black)) out.set_label(e, -graph.edge(e).label);
    return out;
}

StratifoldGraph flip_white(const StratifoldGraph& graph, const std::string& white) {
    if (!graph.white(white).orientable())
        throw GraphError("white vertex '" + white + "' is nonorientable; use flip_edge");
    StratifoldGraph out = graph;
    for (const auto& e : graph.edges_at_white(white)) out.set_label(e, -graph.edge(e).label);
    return out;
}

StratifoldGraph flip_edge(const StratifoldGraph& graph, const std::string& edge) {
    const auto& e = graph.edge(edge);
    if (graph.white(e.white).orientable())
        throw GraphError("edge '" + edge + "' has an orientable white endpoint");
    StratifoldGraph out = graph;
    out.set_label(edge, -e.label);
    return out;
}

StratifoldGraph normalize(const StratifoldGraph& graph) {
    require_valid(graph);
    StratifoldGraph out = graph;
    for (const auto& step : bfs_tree(graph)) {
        if (out.edge(step.edge).label > 0) continue;
        if (step.child.color == Color::Black) {
            out = flip_black(out, step.child.id);
        } else if (out.white(step.child.id).orientable()) {
            out = flip_white(out, step.child.id);
        } else {
            out = flip_edge(out, step.edge);
        }
    }
    return out;
}

bool is_normalized(const StratifoldGraph& graph) {
    for (const auto& e : spanning_tree(graph))
        if (graph.edge(e).label <= 0) return false;
    return true;
}

namespace {

// Parity union-find over move variables: x_u xor x_v = parity.
class ParityDsu {
public:
    explicit ParityDsu(std::size_t n) : parent_(n), parity_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    bool relate(std::size_t a, std::size_t b, int parity) {
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb) return (pa ^ pb) == parity;
        parent_[ra] = rb;
        parity_[ra] = pa ^ pb ^ parity;
        return true;
    }

private:
    std::pair<std::size_t, int> find(std::size_t x) {
        int p = 0;
        while (parent_[x] != x) {
            p ^= parity_[x];
            x = parent_[x];
        }
        return {x, p};
    }

    std::vector<std::size_t> parent_;
    std::vector<int> parity_;
};

struct IsoContext {
    const StratifoldGraph& g1;
    const StratifoldGraph& g2;
    std::vector<VertexRef> order;                       // g1 vertices in assignment order
    std::map<VertexRef, std::vector<VertexRef>> candidates;
    std::map<VertexRef, VertexRef> map;
    std::set<VertexRef> used;
};

std::vector<long> label_multiset(const StratifoldGraph& g, const VertexRef& v) {
    std::vector<long> out;
    for (const auto& e : g.edges_at(v)) out.push_back(std::labs(g.edge(e).label));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<const Edge*> edges_between(const StratifoldGraph& g, const std::string& white,
                                       const std::string& black) {
    std::vector<const Edge*> out;
    for (const auto& eid : g.edges_at_white(white)) {
        const auto& e = g.edge(eid);
        if (e.black == black) out.push_back(&e);
    }
    return out;
}

std::vector<long> abs_labels(const std::vector<const Edge*>& es) {
    std::vector<long> out;
    for (auto* e : es) out.push_back(std::labs(e->label));
    std::sort(out.begin(), out.end());
    return out;
}

// With the vertex bijection fixed, decide whether the move set can align the
// signs. Parallel edges in a (white, black, |label|) group may be matched in
// any order; all constraints of a group share the same endpoints so only the
// count of positive labels matters.
bool signs_compatible(const IsoContext& ctx) {
    const auto& g1 = ctx.g1;
    const auto& g2 = ctx.g2;
    std::map<std::string, std::size_t> var;
    for (const auto& [id, b] : g1.blacks()) var["b:" + id] = var.size();
    for (const auto& [id, w] : g1.whites())
        if (w.orientable()) var["w:" + id] = var.size();
    ParityDsu dsu(var.size());

    for (const auto& [wid, w] : g1.whites()) {
        if (!w.orientable()) continue;  // M3 frees every edge sign here
        const auto& w2 = ctx.map.at({Color::White, wid}).id;
        std::set<std::string> nbrs;
        for (const auto& eid : g1.edges_at_white(wid)) nbrs.insert(g1.edge(eid).black);
        for (const auto& bid : nbrs) {
            const auto& b2 = ctx.map.at({Color::Black, bid}).id;
            auto e1 = edges_between(g1, wid, bid);
            auto e2 = edges_between(g2, w2, b2);
            std::map<long, std::pair<long, long>> pos1, pos2;  // |label| -> (count, positives)
            for (auto* e : e1) {
                auto& c = pos1[std::labs(e->label)];
                ++c.first;
                c.second += e->label > 0;
            }
            for (auto* e : e2) {
                auto& c = pos2[std::labs(e->label)];
                ++c.first;
                c.second += e->label > 0;
            }
            for (const auto& [mag, c1] : pos1) {
                const auto c2 = pos2.at(mag);
                bool same = c1.second == c2.second;
                bool opposite = c1.second == c2.first - c2.second;
                if (!same && !opposite) return false;
                if (same && opposite) continue;
                if (!dsu.relate(var.at("w:" + wid), var.at("b:" + bid), same ? 0 : 1))
                    return false;
            }
        }
    }
    return true;
}

bool consistent(const IsoContext& ctx, const VertexRef& v, const VertexRef& cand) {
    for (const auto& [u, u2] : ctx.map) {
        if (u.color == v.color) continue;
        const auto& w1 = v.color == Color::White ? v.id : u.id;
        const auto& b1 = v.color == Color::White ? u.id : v.id;
        const auto& w2 = v.color == Color::White ? cand.id : u2.id;
        const auto& b2 = v.color == Color::White ? u2.id : cand.id;
        if (abs_labels(edges_between(ctx.g1, w1, b1)) != abs_labels(edges_between(ctx.g2, w2, b2)))
            return false;
    }
    return true;
}

bool assign(IsoContext& ctx, std::size_t idx) {
    if (idx == ctx.order.size()) return signs_compatible(ctx);
    const auto& v = ctx.order[idx];
    for (const auto& cand : ctx.candidates[v]) {
        if (ctx.used.count(cand) || !consistent(ctx, v, cand)) continue;
        ctx.map.emplace(v, cand);
        ctx.used.insert(cand);
        if (assign(ctx, idx + 1)) return true;
        ctx.map.erase(v);
        ctx.used.erase(cand);
    }
    return false;
}

}  // namespace

bool are_isomorphic(const StratifoldGraph& g1, const StratifoldGraph& g2) {
    require_valid(g1);
    require_valid(g2);
    if (g1.whites().size() != g2.whites().size() || g1.blacks().size() != g2.blacks().size() ||
        g1.edges().size() != g2.edges().size())
        return false;

    IsoContext ctx{g1, g2, {}, {}, {}, {}};
    // BFS order keeps each new vertex adjacent to an assigned one, which makes
    // the adjacency check prune early.
    std::set<VertexRef> all;
    for (const auto& [id, w] : g1.whites()) all.insert({Color::White, id});
    for (const auto& [id, b] : g1.blacks()) all.insert({Color::Black, id});
    ctx.order.push_back(*all.begin());
    for (const auto& step : bfs_tree(g1)) ctx.order.push_back(step.child);

    for (const auto& v : ctx.order) {
        auto sig = label_multiset(g1, v);
        auto& cands = ctx.candidates[v];
        if (v.color == Color::White) {
            int genus = g1.white(v.id).genus;
            for (const auto& [id, w] : g2.whites())
                if (w.genus == genus && label_multiset(g2, {Color::White, id}) == sig)
                    cands.push_back({Color::White, id});
        } else {
            for (const auto& [id, b] : g2.blacks())
                if (label_multiset(g2, {Color::Black, id}) == sig) cands.push_back({Color::Black, id});
        }
        if (cands.empty()) return false;
    }
    return assign(ctx, 0);
}

std::vector<StratifoldGraph> split_components(const StratifoldGraph& graph) {
    std::vector<StratifoldGraph> out;
    for (const auto& comp : components(graph)) {
        StratifoldGraph g;
        std::set<std::string> ws, bs;
        for (const auto& v : comp) {
            if (v.color == Color::White) {
                g.add_white(v.id, graph.white(v.id).genus);
                ws.insert(v.id);
            } else {
                g.add_black(v.id);
                bs.insert(v.id);
            }
        }
        for (const auto& [id, e] : graph.edges())
            if (ws.count(e.white) && bs.count(e.black)) g.add_edge(id, e.white, e.black, e.label);
        out.push_back(std::move(g));
    }
    return out;
}

StratifoldGraph with_prefix(const StratifoldGraph& graph, const std::string& prefix) {
    StratifoldGraph out;
    for (const auto& [id, w] : graph.whites()) out.add_white(prefix + id, w.genus);
    for (const auto& [id, b] : graph.blacks()) out.add_black(prefix + id);
    for (const auto& [id, e] : graph.edges())
        out.add_edge(prefix + id, prefix + e.white, prefix + e.black, e.label);
    return out;
}

}  // namespace stratifold
