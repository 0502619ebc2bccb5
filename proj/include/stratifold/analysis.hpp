#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "stratifold/algebra.hpp"
#include "stratifold/graph.hpp"
#include "stratifold/presentation.hpp"

namespace stratifold {

// ---------------------------------------------------------------------------
// F-group classification

struct FiniteCyclic {
    std::uint64_t order = 1;
    friend bool operator==(const FiniteCyclic&, const FiniteCyclic&) = default;
};

enum class Polyhedral { Dihedral, Tetrahedral, Octahedral, Dodecahedral };

struct FiniteNonCyclic {
    Polyhedral name = Polyhedral::Dihedral;
    long m = 0;  // dihedral parameter, 0 otherwise
    std::uint64_t order = 0;
    friend bool operator==(const FiniteNonCyclic&, const FiniteNonCyclic&) = default;
};

struct InfiniteFGroup {
    bool surface = false;
    friend bool operator==(const InfiniteFGroup&, const InfiniteFGroup&) = default;
};

using FClass = std::variant<FiniteCyclic, FiniteNonCyclic, InfiniteFGroup>;

FClass classify_fgroup(const FSignature& sig);
std::string fclass_string(const FClass& c);
/// Group order of a finite class; nullopt for infinite ones.
std::optional<std::uint64_t> fclass_order(const FClass& c);

/// Recovers the signature when the graph has the shape produced by
/// fgroup_graph (central white, blacks with one +-1 edge to it and one
/// +-m edge to a disk, m >= 2). Ids are not inspected.
std::optional<FSignature> match_fgroup_graph(const StratifoldGraph& graph);

// ---------------------------------------------------------------------------
// Orders, white holes, Q-quotient

/// Outcome of a predicate that needed an order verdict the oracle could not
/// certify.
struct Indeterminate {
    std::vector<std::string> unresolved;  // black ids with Unknown verdicts
};

using OrderMap = std::map<std::string, OrderVerdict>;

/// Order of each black generator in the natural presentation of the
/// normalized graph.
OrderMap black_orders(const StratifoldGraph& graph, std::size_t budget = kDefaultCosetBudget);

/// Genus -1 whites whose black neighbours all have finite order, at most one
/// of them > 1.
std::variant<std::set<std::string>, Indeterminate> white_holes(const StratifoldGraph& graph,
                                                               const OrderMap& orders);

/// Natural presentation plus the relators b (finite-order blacks) and y_j
/// (surface generators of white holes). Throws GraphError on inconsistent
/// inputs.
std::variant<GroupPresentation, Indeterminate> q_presentation(const StratifoldGraph& graph,
                                                              const OrderMap& orders,
                                                              const std::set<std::string>& holes);

struct QComponent {
    StratifoldGraph graph;
    /// Boundary circles lost to deleted blacks, per white id.
    std::map<std::string, int> capped;
    /// A lone white whose boundaries are all capped: a closed surface.
    std::optional<int> closed_genus;
};

struct QResult {
    OrderMap orders;
    std::set<std::string> deleted_blacks;
    std::set<std::string> white_holes;
    std::vector<QComponent> components;
    GroupPresentation presentation;
};

std::variant<QResult, Indeterminate> q_graph(const StratifoldGraph& graph,
                                             std::size_t budget = kDefaultCosetBudget);

// ---------------------------------------------------------------------------
// Obstructions

enum class ObstructionKind { QTorsion, NonFreeSurfaceComponent, InfiniteNonSurfaceFGroup };

const char* obstruction_name(ObstructionKind k);

struct Obstruction {
    ObstructionKind kind;
    std::string witness;
    std::string evidence;
};

struct ObstructionReport {
    std::vector<Obstruction> found;
    /// Set when the Q-quotient checks could not run because of Unknown
    /// verdicts. `found` still holds every obstruction that did not need them.
    std::optional<Indeterminate> indeterminate;
};

/// One-sided test: every reported obstruction is a reason why pi_1 of the
/// stratifold cannot be the fundamental group of a closed 3-manifold. An empty
/// list certifies nothing.
ObstructionReport obstructions(const StratifoldGraph& graph, std::size_t budget = kDefaultCosetBudget);

}  // namespace stratifold
