#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace stratifold {

/// Error raised when an operation receives a graph or id it cannot work with.
class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A surface piece W. Genus follows Neumann's convention: g >= 0 is an
/// orientable surface of genus g, g < 0 is nonorientable with |g| crosscaps.
struct WhiteVertex {
    std::string id;
    int genus = 0;

    bool orientable() const { return genus >= 0; }
    /// Number of surface generators y_j: 2g (orientable) or |g|.
    int surface_rank() const { return genus >= 0 ? 2 * genus : -genus; }

    friend bool operator==(const WhiteVertex&, const WhiteVertex&) = default;
};

/// A branch circle.
struct BlackVertex {
    std::string id;

    friend bool operator==(const BlackVertex&, const BlackVertex&) = default;
};

/// A boundary circle of some W, attached to a branch circle by a covering
/// map of signed degree `label`.
struct Edge {
    std::string id;
    std::string white;
    std::string black;
    long label = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

enum class Color { White, Black };

/// Vertex reference. Ordering is (id, color) with white before black; this is
/// the order used to pick the root of the spanning tree.
struct VertexRef {
    Color color;
    std::string id;

    friend bool operator==(const VertexRef&, const VertexRef&) = default;
    friend bool operator<(const VertexRef& a, const VertexRef& b) {
        if (a.id != b.id) return a.id < b.id;
        return a.color == Color::White && b.color == Color::Black;
    }
};

/// Bicolored labeled graph of a 2-stratifold.
///
/// Containers are keyed by id so iteration is always id-sorted. The graph is
/// a plain value: construction checks only id uniqueness, everything else
/// (connectivity, branch condition, dangling endpoints) is reported by
/// validate().
class StratifoldGraph {
public:
    StratifoldGraph() = default;

    StratifoldGraph& add_white(std::string id, int genus);
    StratifoldGraph& add_black(std::string id);
    StratifoldGraph& add_edge(std::string id, std::string white, std::string black, long label);

    const std::map<std::string, WhiteVertex>& whites() const { return whites_; }
    const std::map<std::string, BlackVertex>& blacks() const { return blacks_; }
    const std::map<std::string, Edge>& edges() const { return edges_; }

    const WhiteVertex& white(const std::string& id) const;
    const BlackVertex& black(const std::string& id) const;
    const Edge& edge(const std::string& id) const;
    bool has_white(const std::string& id) const { return whites_.count(id) != 0; }
    bool has_black(const std::string& id) const { return blacks_.count(id) != 0; }
    bool has_edge(const std::string& id) const { return edges_.count(id) != 0; }

    /// Edge ids incident to a vertex, sorted.
    std::vector<std::string> edges_at(const VertexRef& v) const;
    std::vector<std::string> edges_at_white(const std::string& id) const {
        return edges_at({Color::White, id});
    }
    std::vector<std::string> edges_at_black(const std::string& id) const {
        return edges_at({Color::Black, id});
    }

    std::size_t vertex_count() const { return whites_.size() + blacks_.size(); }
    /// |E| - |V| + 1 for a connected graph.
    long cycle_rank() const;

    void set_label(const std::string& edge_id, long label);
    void remove_edge(const std::string& edge_id);
    void remove_white(const std::string& id);
    void remove_black(const std::string& id);

    friend bool operator==(const StratifoldGraph&, const StratifoldGraph&) = default;

private:
    std::map<std::string, WhiteVertex> whites_;
    std::map<std::string, BlackVertex> blacks_;
    std::map<std::string, Edge> edges_;
};

enum class Rule {
    EmptyGraph,
    ZeroLabel,
    MissingWhite,
    MissingBlack,
    BranchTooSmall,
    IsolatedBlack,
    IsolatedWhite,
    Disconnected,
};

const char* rule_name(Rule r);

struct Violation {
    Rule rule;
    std::string subject;  // vertex or edge id
    std::string detail;

    friend bool operator==(const Violation&, const Violation&) = default;
};

std::vector<Violation> validate(const StratifoldGraph& graph);
bool is_valid(const StratifoldGraph& graph);
/// Throws GraphError listing the first violation.
void require_valid(const StratifoldGraph& graph);

/// Multiset {|label(e)|} at a black vertex, sorted descending.
std::vector<long> partition_at(const StratifoldGraph& graph, const std::string& black);
/// d = sum of the partition.
long branch_degree(const StratifoldGraph& graph, const std::string& black);

long euler_characteristic(const StratifoldGraph& graph);
/// Independent Euler characteristic: builds an explicit cell structure and
/// counts cells after the attaching identifications.
long cw_euler(const StratifoldGraph& graph);

/// Deterministic maximal tree: BFS from the smallest vertex, incident edges in
/// id order.
std::set<std::string> spanning_tree(const StratifoldGraph& graph);

/// Applies re-orientation moves so every spanning-tree edge has a positive label.
StratifoldGraph normalize(const StratifoldGraph& graph);
bool is_normalized(const StratifoldGraph& graph);

/// Re-orientation moves. Each returns a new graph.
StratifoldGraph flip_black(const StratifoldGraph& graph, const std::string& black);    // M1
StratifoldGraph flip_white(const StratifoldGraph& graph, const std::string& white);    // M2
StratifoldGraph flip_edge(const StratifoldGraph& graph, const std::string& edge);      // M3

/// Isomorphism modulo the re-orientation moves.
bool are_isomorphic(const StratifoldGraph& g1, const StratifoldGraph& g2);

/// Connected components as separate graphs, ordered by smallest vertex.
std::vector<StratifoldGraph> split_components(const StratifoldGraph& graph);

/// Copy with every id prefixed.
StratifoldGraph with_prefix(const StratifoldGraph& graph, const std::string& prefix);

}  // namespace stratifold
