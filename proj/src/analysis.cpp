#include "stratifold/analysis.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <sstream>

namespace stratifold {

FClass classify_fgroup(const FSignature& sig) {
    sig.check();
    auto periods = sig.periods;
    std::sort(periods.begin(), periods.end());
    const std::size_t p = periods.size();

    if (sig.is_spherical()) {
        if (p <= 1) return FiniteCyclic{1};
        if (p == 2) return FiniteCyclic{static_cast<std::uint64_t>(std::gcd(periods[0], periods[1]))};
        if (p == 3 && periods[0] == 2 && periods[1] == 2)
            return FiniteNonCyclic{Polyhedral::Dihedral, periods[2],
                                   static_cast<std::uint64_t>(2 * periods[2])};
        if (p == 3 && periods[0] == 2 && periods[1] == 3) {
            switch (periods[2]) {
                case 3: return FiniteNonCyclic{Polyhedral::Tetrahedral, 0, 12};
                case 4: return FiniteNonCyclic{Polyhedral::Octahedral, 0, 24};
                case 5: return FiniteNonCyclic{Polyhedral::Dodecahedral, 0, 60};
                default: break;
            }
        }
        return InfiniteFGroup{false};
    }
    if (sig.genus == -1 && p <= 1)
        return FiniteCyclic{p == 0 ? 2u : static_cast<std::uint64_t>(2 * periods[0])};
    return InfiniteFGroup{p == 0};
}

std::string fclass_string(const FClass& c) {
    if (auto* f = std::get_if<FiniteCyclic>(&c)) return "FiniteCyclic(" + std::to_string(f->order) + ")";
    if (auto* f = std::get_if<FiniteNonCyclic>(&c)) {
        std::string name;
        switch (f->name) {
            case Polyhedral::Dihedral: name = "dihedral(" + std::to_string(f->m) + ")"; break;
            case Polyhedral::Tetrahedral: name = "tetrahedral"; break;
            case Polyhedral::Octahedral: name = "octahedral"; break;
            case Polyhedral::Dodecahedral: name = "dodecahedral"; break;
        }
        return "FiniteNonCyclic(" + name + ", " + std::to_string(f->order) + ")";
    }
    return std::get<InfiniteFGroup>(c).surface ? "Infinite(surface)" : "Infinite(non-surface)";
}

std::optional<std::uint64_t> fclass_order(const FClass& c) {
    if (auto* f = std::get_if<FiniteCyclic>(&c)) return f->order;
    if (auto* f = std::get_if<FiniteNonCyclic>(&c)) return f->order;
    return std::nullopt;
}

std::optional<FSignature> match_fgroup_graph(const StratifoldGraph& graph) {
    if (!is_valid(graph)) return std::nullopt;
    if (graph.edges().empty()) return FSignature{graph.whites().begin()->second.genus, {}};

    std::optional<std::string> center;
    std::vector<long> periods;
    std::set<std::string> disks;
    for (const auto& [bid, b] : graph.blacks()) {
        auto es = graph.edges_at_black(bid);
        if (es.size() != 2) return std::nullopt;
        const Edge* hub = nullptr;
        const Edge* cap = nullptr;
        for (const auto& eid : es) {
            const auto& e = graph.edge(eid);
            if (std::labs(e.label) == 1) hub = hub ? nullptr : &e;
            else cap = &e;
        }
        if (!hub || !cap) return std::nullopt;
        if (center && *center != hub->white) return std::nullopt;
        center = hub->white;
        const auto& disk = graph.white(cap->white);
        if (disk.genus != 0 || graph.edges_at_white(disk.id).size() != 1) return std::nullopt;
        disks.insert(disk.id);
        periods.push_back(std::labs(cap->label));
    }
    if (!center || disks.count(*center)) return std::nullopt;
    if (graph.whites().size() != disks.size() + 1) return std::nullopt;
    if (graph.edges_at_white(*center).size() != periods.size()) return std::nullopt;
    return FSignature{graph.white(*center).genus, periods};
}

OrderMap black_orders(const StratifoldGraph& graph, std::size_t budget) {
    const auto pres = natural_presentation(normalize(graph));
    OrderMap out;
    for (const auto& [id, b] : graph.blacks()) out[id] = element_order(pres, {{black_gen(id), 1}}, budget);
    return out;
}

namespace {

std::vector<std::string> unknown_blacks(const OrderMap& orders) {
    std::vector<std::string> out;
    for (const auto& [id, v] : orders)
        if (is_unknown(v)) out.push_back(id);
    return out;
}

}  // namespace

std::variant<std::set<std::string>, Indeterminate> white_holes(const StratifoldGraph& graph,
                                                               const OrderMap& orders) {
    std::set<std::string> holes;
    Indeterminate pending;
    for (const auto& [wid, w] : graph.whites()) {
        if (w.genus != -1) continue;
        std::set<std::string> nbrs;
        for (const auto& eid : graph.edges_at_white(wid)) nbrs.insert(graph.edge(eid).black);
        bool infinite = false;
        int big = 0;
        std::vector<std::string> unknown;
        for (const auto& b : nbrs) {
            auto it = orders.find(b);
            if (it == orders.end()) throw GraphError("no order verdict for black vertex '" + b + "'");
            if (std::holds_alternative<Infinite>(it->second)) infinite = true;
            else if (auto* f = std::get_if<Finite>(&it->second); f && f->order > 1) ++big;
            else if (is_unknown(it->second)) unknown.push_back(b);
        }
        if (infinite || big >= 2) continue;
        if (!unknown.empty()) {
            pending.unresolved.insert(pending.unresolved.end(), unknown.begin(), unknown.end());
            continue;
        }
        holes.insert(wid);
    }
    if (!pending.unresolved.empty()) return pending;
    return holes;
}

std::variant<GroupPresentation, Indeterminate> q_presentation(const StratifoldGraph& graph,
                                                              const OrderMap& orders,
                                                              const std::set<std::string>& holes) {
    for (const auto& [id, b] : graph.blacks())
        if (!orders.count(id)) throw GraphError("no order verdict for black vertex '" + id + "'");
    for (const auto& [id, v] : orders)
        if (!graph.has_black(id)) throw GraphError("order given for unknown black vertex '" + id + "'");
    for (const auto& h : holes)
        if (!graph.has_white(h)) throw GraphError("white hole '" + h + "' is not a white vertex");
    if (auto unknown = unknown_blacks(orders); !unknown.empty()) return Indeterminate{unknown};

    auto pres = natural_presentation(normalize(graph));
    for (const auto& [id, v] : orders)
        if (is_finite(v)) pres.relators.push_back({{black_gen(id), 1}});
    for (const auto& h : holes)
        for (int j = 1; j <= graph.white(h).surface_rank(); ++j)
            pres.relators.push_back({{surface_gen(h, j), 1}});
    return pres;
}

std::variant<QResult, Indeterminate> q_graph(const StratifoldGraph& graph, std::size_t budget) {
    require_valid(graph);
    QResult res;
    res.orders = black_orders(graph, budget);
    if (auto unknown = unknown_blacks(res.orders); !unknown.empty()) return Indeterminate{unknown};

    auto holes = white_holes(graph, res.orders);
    if (auto* ind = std::get_if<Indeterminate>(&holes)) return *ind;
    res.white_holes = std::get<std::set<std::string>>(holes);
    res.presentation = std::get<GroupPresentation>(q_presentation(graph, res.orders, res.white_holes));

    StratifoldGraph rest = graph;
    std::map<std::string, int> capped;
    for (const auto& [id, v] : res.orders) {
        if (!is_finite(v)) continue;
        res.deleted_blacks.insert(id);
        for (const auto& eid : graph.edges_at_black(id)) ++capped[graph.edge(eid).white];
        rest.remove_black(id);
    }
    for (const auto& h : res.white_holes) rest.remove_white(h);

    std::set<VertexRef> seen;
    std::vector<VertexRef> roots;
    for (const auto& [id, w] : rest.whites()) roots.push_back({Color::White, id});
    for (const auto& [id, b] : rest.blacks()) roots.push_back({Color::Black, id});
    for (const auto& root : roots) {
        if (seen.count(root)) continue;
        QComponent comp;
        std::deque<VertexRef> queue{root};
        seen.insert(root);
        std::set<std::string> edge_ids;
        while (!queue.empty()) {
            auto v = queue.front();
            queue.pop_front();
            if (v.color == Color::White) {
                comp.graph.add_white(v.id, rest.white(v.id).genus);
                if (capped.count(v.id)) comp.capped[v.id] = capped[v.id];
            } else {
                comp.graph.add_black(v.id);
            }
            for (const auto& eid : rest.edges_at(v)) {
                edge_ids.insert(eid);
                const auto& e = rest.edge(eid);
                VertexRef next = v.color == Color::White ? VertexRef{Color::Black, e.black}
                                                         : VertexRef{Color::White, e.white};
                if (seen.insert(next).second) queue.push_back(next);
            }
        }
        for (const auto& eid : edge_ids) {
            const auto& e = rest.edge(eid);
            comp.graph.add_edge(e.id, e.white, e.black, e.label);
        }
        if (comp.graph.vertex_count() == 1 && comp.graph.blacks().empty())
            comp.closed_genus = comp.graph.whites().begin()->second.genus;
        res.components.push_back(std::move(comp));
    }
    return res;
}

const char* obstruction_name(ObstructionKind k) {
    switch (k) {
        case ObstructionKind::QTorsion: return "QTorsion";
        case ObstructionKind::NonFreeSurfaceComponent: return "NonFreeSurfaceComponent";
        case ObstructionKind::InfiniteNonSurfaceFGroup: return "InfiniteNonSurfaceFGroup";
    }
    return "?";
}

ObstructionReport obstructions(const StratifoldGraph& graph, std::size_t budget) {
    require_valid(graph);
    ObstructionReport report;

    if (auto sig = match_fgroup_graph(graph); sig && !sig->periods.empty()) {
        auto cls = classify_fgroup(*sig);
        if (auto* inf = std::get_if<InfiniteFGroup>(&cls); inf && !inf->surface) {
            std::ostringstream ev;
            ev << "F-group genus " << sig->genus << " periods (";
            for (std::size_t i = 0; i < sig->periods.size(); ++i) ev << (i ? "," : "") << sig->periods[i];
            ev << ") is infinite and not a surface group";
            std::string center;
            for (const auto& eid : graph.edges_at_black(graph.blacks().begin()->first))
                if (std::labs(graph.edge(eid).label) == 1) center = graph.edge(eid).white;
            report.found.push_back({ObstructionKind::InfiniteNonSurfaceFGroup, center, ev.str()});
        }
    }

    auto q = q_graph(graph, budget);
    if (auto* ind = std::get_if<Indeterminate>(&q)) {
        report.indeterminate = *ind;
        return report;
    }
    const auto& res = std::get<QResult>(q);
    const auto ab = abelianization(res.presentation);
    if (!ab.torsion_free())
        report.found.push_back({ObstructionKind::QTorsion, "Q", "abelianized Q-quotient is " + ab.to_string()});
    for (const auto& comp : res.components) {
        if (!comp.closed_genus) continue;
        const int g = *comp.closed_genus;
        const auto& id = comp.graph.whites().begin()->first;
        if (g == -1)
            report.found.push_back({ObstructionKind::QTorsion, id, "closed projective plane component"});
        else if (g >= 1 || g <= -2)
            report.found.push_back({ObstructionKind::NonFreeSurfaceComponent, id,
                                    "closed surface component of genus " + std::to_string(g)});
    }
    return report;
}

}  // namespace stratifold
