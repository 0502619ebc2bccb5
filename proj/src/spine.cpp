#include "stratifold/spine.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <set>

namespace stratifold {

Summand Summand::lens(long q) {
    if (q < 2) throw DomainError("L(" + std::to_string(q) + "): lens spaces need q >= 2");
    return {PieceKind::Lens, q};
}

ManifoldExpr::ManifoldExpr(std::vector<Summand> summands) : summands_(std::move(summands)) {
    for (const auto& s : summands_)
        if (s.kind == PieceKind::Lens && s.q < 2)
            throw DomainError("L(" + std::to_string(s.q) + "): lens spaces need q >= 2");
    std::sort(summands_.begin(), summands_.end());
}

std::string summand_string(const Summand& s) {
    switch (s.kind) {
        case PieceKind::Lens: return "L(" + std::to_string(s.q) + ")";
        case PieceKind::S2xS1: return "S2xS1";
        case PieceKind::TwistedS2xS1: return "S2~xS1";
        case PieceKind::P2xS1: return "P2xS1";
        case PieceKind::S3: return "S3";
    }
    return "?";
}

std::string ManifoldExpr::to_string() const {
    std::string out;
    for (const auto& s : summands_) {
        if (!out.empty()) out += " # ";
        out += summand_string(s);
    }
    return out;
}

// For q = 2 the cone on two points is an arc, so the q-fold branch circle is
// not singular and the spine is the projective plane itself.
StratifoldGraph lens_spine(long q) {
    if (q < 2) throw DomainError("lens spine needs q >= 2, got " + std::to_string(q));
    StratifoldGraph g;
    if (q == 2) return g.add_white("w", -1);
    g.add_white("w", 0).add_black("b").add_edge("e", "w", "b", q);
    return g;
}

// The annulus a is the torus (or Klein bottle) cut along the attaching
// circle c. With boundary circles oriented as the boundary of a, the torus
// glues them back with degrees 1 and -1, the Klein bottle with 1 and 1.
StratifoldGraph s2xs1_spine() {
    StratifoldGraph g;
    g.add_white("a", 0).add_white("d", 0).add_black("c");
    g.add_edge("e1", "a", "c", 1).add_edge("e2", "a", "c", -1).add_edge("e3", "d", "c", 1);
    return g;
}

StratifoldGraph s2xs1_twisted_spine() {
    StratifoldGraph g;
    g.add_white("a", 0).add_white("d", 0).add_black("c");
    g.add_edge("e1", "a", "c", 1).add_edge("e2", "a", "c", 1).add_edge("e3", "d", "c", 1);
    return g;
}

// P^2 cut along the one-sided curve c is a disk p double covering c; the torus
// c x S^1 cut along c x {t0} is the annulus a.
StratifoldGraph p2xs1_spine() {
    StratifoldGraph g;
    g.add_white("a", 0).add_white("p", 0).add_black("c");
    g.add_edge("e1", "a", "c", 1).add_edge("e2", "a", "c", -1).add_edge("e3", "p", "c", 2);
    return g;
}

StratifoldGraph primitive_spine(const Summand& s) {
    switch (s.kind) {
        case PieceKind::Lens: return lens_spine(s.q);
        case PieceKind::S2xS1: return s2xs1_spine();
        case PieceKind::TwistedS2xS1: return s2xs1_twisted_spine();
        case PieceKind::P2xS1: return p2xs1_spine();
        case PieceKind::S3: throw NoSpine("S3 has no 2-stratifold spine: no 2-stratifold is contractible");
    }
    throw DomainError("unknown summand");
}

namespace {

std::set<std::string> all_ids(const StratifoldGraph& g) {
    std::set<std::string> ids;
    for (const auto& [id, w] : g.whites()) ids.insert(id);
    for (const auto& [id, b] : g.blacks()) ids.insert(id);
    for (const auto& [id, e] : g.edges()) ids.insert(id);
    return ids;
}

bool collides(const std::set<std::string>& a, const std::set<std::string>& b) {
    return std::any_of(b.begin(), b.end(), [&](const auto& id) { return a.count(id) != 0; });
}

}  // namespace

StratifoldGraph delta_sum(const StratifoldGraph& g1, const std::string& w1, const StratifoldGraph& g2,
                          const std::string& w2) {
    if (!g1.has_white(w1)) throw GraphError("'" + w1 + "' is not a white vertex of the first graph");
    if (!g2.has_white(w2)) throw GraphError("'" + w2 + "' is not a white vertex of the second graph");

    const auto ids1 = all_ids(g1);
    std::string prefix;
    StratifoldGraph right = g2;
    while (collides(ids1, all_ids(right))) {
        prefix += "r.";
        right = with_prefix(g2, prefix);
    }

    StratifoldGraph out = g1;
    for (const auto& [id, w] : right.whites()) out.add_white(id, w.genus);
    for (const auto& [id, b] : right.blacks()) out.add_black(id);
    for (const auto& [id, e] : right.edges()) out.add_edge(id, e.white, e.black, e.label);

    auto used = all_ids(out);
    std::string j;
    for (int n = 1;; ++n) {
        j = "dj" + std::to_string(n) + ".";
        if (!collides(used, {j + "c", j + "d", j + "e1", j + "e2", j + "e3"})) break;
    }
    out.add_black(j + "c");
    out.add_white(j + "d", 0);
    out.add_edge(j + "e1", w1, j + "c", 1);
    out.add_edge(j + "e2", prefix + w2, j + "c", 1);
    out.add_edge(j + "e3", j + "d", j + "c", 1);
    return out;
}

bool is_junction_disk(const StratifoldGraph& graph, const std::string& white) {
    const auto& w = graph.white(white);
    if (w.genus != 0) return false;
    auto es = graph.edges_at_white(white);
    return es.size() == 1 && std::labs(graph.edge(es.front()).label) == 1;
}

std::string attachment_white(const StratifoldGraph& graph) {
    for (const auto& [id, w] : graph.whites())
        if (!is_junction_disk(graph, id)) return id;
    throw GraphError("graph has no attachable white vertex");
}

StratifoldGraph synth(const ManifoldExpr& expr) {
    if (expr.empty()) throw DomainError("empty connected sum");
    StratifoldGraph acc;
    for (std::size_t i = 0; i < expr.summands().size(); ++i) {
        auto piece = with_prefix(primitive_spine(expr.summands()[i]), "m" + std::to_string(i + 1) + ".");
        if (i == 0) acc = std::move(piece);
        else acc = delta_sum(acc, attachment_white(acc), piece, attachment_white(piece));
    }
    return acc;
}

namespace {

struct Junction {
    std::string black;
    std::string disk;
    std::vector<std::string> edges;
};

bool reachable_without(const StratifoldGraph& g, const std::string& from_white, const std::string& to_white,
                       const Junction& cut) {
    std::set<VertexRef> seen{{Color::White, from_white}};
    std::deque<VertexRef> queue{{Color::White, from_white}};
    while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        if (v.color == Color::White && v.id == to_white) return true;
        for (const auto& eid : g.edges_at(v)) {
            if (std::find(cut.edges.begin(), cut.edges.end(), eid) != cut.edges.end()) continue;
            const auto& e = g.edge(eid);
            VertexRef n = v.color == Color::White ? VertexRef{Color::Black, e.black}
                                                  : VertexRef{Color::White, e.white};
            if (seen.insert(n).second) queue.push_back(n);
        }
    }
    return false;
}

std::optional<Junction> as_junction(const StratifoldGraph& g, const std::string& black) {
    auto es = g.edges_at_black(black);
    if (es.size() != 3) return std::nullopt;
    for (const auto& e : es)
        if (std::labs(g.edge(e).label) != 1) return std::nullopt;
    for (std::size_t k = 0; k < 3; ++k) {
        const auto& disk = g.edge(es[k]).white;
        if (!is_junction_disk(g, disk)) continue;
        const auto& a = g.edge(es[(k + 1) % 3]).white;
        const auto& b = g.edge(es[(k + 2) % 3]).white;
        if (a == b || a == disk || b == disk) continue;
        Junction j{black, disk, es};
        if (!reachable_without(g, a, b, j)) return j;
    }
    return std::nullopt;
}

std::optional<Summand> match_primitive(const StratifoldGraph& piece) {
    if (!is_valid(piece)) return std::nullopt;
    if (piece.vertex_count() == 1 && piece.whites().size() == 1 && piece.whites().begin()->second.genus == -1)
        return Summand::lens(2);
    if (piece.whites().size() == 1 && piece.blacks().size() == 1 && piece.edges().size() == 1) {
        const auto& e = piece.edges().begin()->second;
        if (piece.white(e.white).genus == 0 && std::labs(e.label) >= 2) return Summand::lens(std::labs(e.label));
    }
    for (auto kind : {PieceKind::S2xS1, PieceKind::TwistedS2xS1, PieceKind::P2xS1})
        if (are_isomorphic(piece, primitive_spine(Summand::of(kind)))) return Summand::of(kind);
    return std::nullopt;
}

}  // namespace

std::variant<ManifoldExpr, NotCanonical> recognize(const StratifoldGraph& graph) {
    require_valid(graph);
    std::vector<Junction> junctions;
    for (const auto& [id, b] : graph.blacks())
        if (auto j = as_junction(graph, id)) junctions.push_back(std::move(*j));

    StratifoldGraph rest = graph;
    for (const auto& j : junctions) {
        rest.remove_black(j.black);
        rest.remove_white(j.disk);
    }
    std::vector<Summand> summands;
    for (const auto& piece : split_components(rest)) {
        auto s = match_primitive(piece);
        if (!s) {
            return NotCanonical{"piece containing '" + piece.whites().begin()->first +
                                "' is not a primitive spine"};
        }
        summands.push_back(*s);
    }
    return ManifoldExpr(std::move(summands));
}

}  // namespace stratifold
