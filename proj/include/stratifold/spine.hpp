#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "stratifold/graph.hpp"

namespace stratifold {

/// No 2-stratifold spine exists for the requested manifold (S^3).
class NoSpine : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter outside its domain, e.g. L(q) with q < 2.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Prime pieces. Declaration order is the canonical summand order.
enum class PieceKind { Lens, S2xS1, TwistedS2xS1, P2xS1, S3 };

struct Summand {
    PieceKind kind = PieceKind::Lens;
    long q = 0;  // |pi_1| for lens spaces, 0 otherwise

    static Summand lens(long q);
    static Summand of(PieceKind k) { return {k, 0}; }

    friend auto operator<=>(const Summand&, const Summand&) = default;
};

/// Connected sum of prime pieces, kept sorted so equality is multiset
/// equality. L(q) is parametrized by the order q of its fundamental group.
class ManifoldExpr {
public:
    ManifoldExpr() = default;
    explicit ManifoldExpr(std::vector<Summand> summands);

    const std::vector<Summand>& summands() const { return summands_; }
    bool empty() const { return summands_.empty(); }
    std::string to_string() const;

    friend bool operator==(const ManifoldExpr&, const ManifoldExpr&) = default;

private:
    std::vector<Summand> summands_;
};

std::string summand_string(const Summand& s);

/// One genus-0 white joined to one black by an edge labeled q; for q = 2 the
/// closed projective plane (a single genus -1 white).
StratifoldGraph lens_spine(long q);
/// Torus with a disk attached along a meridian, cut along the meridian.
StratifoldGraph s2xs1_spine();
/// Klein bottle with a disk attached.
StratifoldGraph s2xs1_twisted_spine();
/// P^2 x {t0} union c x S^1 for a one-sided curve c.
StratifoldGraph p2xs1_spine();
StratifoldGraph primitive_spine(const Summand& s);

/// Spine of the connected sum: disjoint union plus a new branch circle where
/// the two attachment whites and a new disk meet, each with degree 1. Ids of
/// g2 that collide with g1 are prefixed with "r.".
StratifoldGraph delta_sum(const StratifoldGraph& g1, const std::string& w1, const StratifoldGraph& g2,
                          const std::string& w2);

/// Whites that look like a Delta-sum disk: genus 0, one edge, label +-1.
bool is_junction_disk(const StratifoldGraph& graph, const std::string& white);
/// Smallest-id white that is not a junction disk.
std::string attachment_white(const StratifoldGraph& graph);

StratifoldGraph synth(const ManifoldExpr& expr);

struct NotCanonical {
    std::string reason;
};

std::variant<ManifoldExpr, NotCanonical> recognize(const StratifoldGraph& graph);

}  // namespace stratifold
