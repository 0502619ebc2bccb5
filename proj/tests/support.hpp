#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "stratifold/algebra.hpp"
#include "stratifold/graph.hpp"
#include "stratifold/presentation.hpp"
#include "stratifold/spine.hpp"

namespace testing {

using namespace stratifold;

struct GraphShape {
    int max_whites = 4;
    int max_blacks = 3;
    int max_extra_edges = 3;
    int max_label = 3;
    int max_genus = 2;
};

inline long pick(std::mt19937& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline long nonzero(std::mt19937& rng, long bound) {
    long v = pick(rng, 1, bound);
    return pick(rng, 0, 1) ? v : -v;
}

/// Random valid graph: a random bipartite spanning tree, a few extra edges,
/// then labels raised or edges added until every black has d >= 3.
inline StratifoldGraph random_graph(std::mt19937& rng, const GraphShape& shape = {}) {
    StratifoldGraph g;
    const int nw = static_cast<int>(pick(rng, 1, shape.max_whites));
    const int nb = static_cast<int>(pick(rng, 0, shape.max_blacks));
    auto genus = [&] { return static_cast<int>(pick(rng, -shape.max_genus, shape.max_genus)); };
    if (nb == 0) return g.add_white("w0", genus());

    std::vector<std::string> whites, blacks;
    for (int i = 0; i < nw; ++i) {
        whites.push_back("w" + std::to_string(i));
        g.add_white(whites.back(), genus());
    }
    for (int i = 0; i < nb; ++i) {
        blacks.push_back("b" + std::to_string(i));
        g.add_black(blacks.back());
    }
    int edge_no = 0;
    auto edge = [&](const std::string& w, const std::string& b, long label) {
        char id[16];
        std::snprintf(id, sizeof id, "e%02d", edge_no++);
        g.add_edge(id, w, b, label);
    };

    // Order vertices so every vertex after the first has an earlier neighbour
    // of the other color available.
    std::vector<VertexRef> order{{Color::White, whites[0]}, {Color::Black, blacks[0]}};
    std::vector<VertexRef> rest;
    for (int i = 1; i < nw; ++i) rest.push_back({Color::White, whites[i]});
    for (int i = 1; i < nb; ++i) rest.push_back({Color::Black, blacks[i]});
    std::shuffle(rest.begin(), rest.end(), rng);
    order.insert(order.end(), rest.begin(), rest.end());
    for (std::size_t i = 1; i < order.size(); ++i) {
        std::vector<std::string> earlier;
        for (std::size_t j = 0; j < i; ++j)
            if (order[j].color != order[i].color) earlier.push_back(order[j].id);
        const auto& other = earlier[pick(rng, 0, static_cast<long>(earlier.size()) - 1)];
        if (order[i].color == Color::White) edge(order[i].id, other, nonzero(rng, shape.max_label));
        else edge(other, order[i].id, nonzero(rng, shape.max_label));
    }
    const long extra = pick(rng, 0, shape.max_extra_edges);
    for (long k = 0; k < extra; ++k)
        edge(whites[pick(rng, 0, nw - 1)], blacks[pick(rng, 0, nb - 1)], nonzero(rng, shape.max_label));
    for (const auto& b : blacks) {
        while (branch_degree(g, b) < 3) {
            if (pick(rng, 0, 1)) {
                edge(whites[pick(rng, 0, nw - 1)], b, nonzero(rng, shape.max_label));
            } else {
                auto es = g.edges_at_black(b);
                const auto& e = g.edge(es[pick(rng, 0, static_cast<long>(es.size()) - 1)]);
                g.set_label(e.id, e.label > 0 ? e.label + 1 : e.label - 1);
            }
        }
    }
    return g;
}

/// Random id renaming plus random re-orientation moves.
inline StratifoldGraph scramble(std::mt19937& rng, const StratifoldGraph& g) {
    auto relabel = [&](const auto& m, const std::string& stem) {
        std::vector<std::string> ids;
        for (const auto& [id, v] : m) ids.push_back(id);
        auto fresh = ids;
        std::shuffle(fresh.begin(), fresh.end(), rng);
        std::map<std::string, std::string> out;
        for (std::size_t i = 0; i < ids.size(); ++i) out[ids[i]] = stem + fresh[i];
        return out;
    };
    auto wmap = relabel(g.whites(), "x");
    auto bmap = relabel(g.blacks(), "y");
    auto emap = relabel(g.edges(), "z");
    StratifoldGraph out;
    for (const auto& [id, w] : g.whites()) out.add_white(wmap[id], w.genus);
    for (const auto& [id, b] : g.blacks()) out.add_black(bmap[id]);
    for (const auto& [id, e] : g.edges()) out.add_edge(emap[id], wmap[e.white], bmap[e.black], e.label);

    for (int k = 0; k < 6; ++k) {
        switch (pick(rng, 0, 2)) {
            case 0:
                if (!out.blacks().empty()) {
                    auto it = std::next(out.blacks().begin(), pick(rng, 0, static_cast<long>(out.blacks().size()) - 1));
                    out = flip_black(out, it->first);
                }
                break;
            case 1: {
                auto it = std::next(out.whites().begin(), pick(rng, 0, static_cast<long>(out.whites().size()) - 1));
                if (it->second.orientable()) out = flip_white(out, it->first);
                break;
            }
            default:
                for (const auto& [id, e] : out.edges())
                    if (!out.white(e.white).orientable() && pick(rng, 0, 1)) {
                        out = flip_edge(out, id);
                        break;
                    }
        }
    }
    return out;
}

/// Brute-force move-isomorphism: every color/genus preserving vertex bijection,
/// every combination of M1/M2 flips, and M3 freedom on nonorientable whites,
/// comparing the label multisets of each white/black pair.
inline bool brute_isomorphic(const StratifoldGraph& a, const StratifoldGraph& b) {
    if (a.whites().size() != b.whites().size() || a.blacks().size() != b.blacks().size() ||
        a.edges().size() != b.edges().size())
        return false;
    std::vector<std::string> aw, bw, ab, bb;
    for (const auto& [id, w] : a.whites()) aw.push_back(id);
    for (const auto& [id, w] : b.whites()) bw.push_back(id);
    for (const auto& [id, x] : a.blacks()) ab.push_back(id);
    for (const auto& [id, x] : b.blacks()) bb.push_back(id);

    auto labels = [](const StratifoldGraph& g, const std::string& w, const std::string& bl) {
        std::vector<long> out;
        for (const auto& [id, e] : g.edges())
            if (e.white == w && e.black == bl) out.push_back(e.label);
        return out;
    };

    std::vector<std::size_t> pw(bw.size()), pb(bb.size());
    std::iota(pw.begin(), pw.end(), 0);
    do {
        bool genus_ok = true;
        for (std::size_t i = 0; i < aw.size(); ++i)
            genus_ok &= a.white(aw[i]).genus == b.white(bw[pw[i]]).genus;
        if (!genus_ok) continue;
        std::iota(pb.begin(), pb.end(), 0);
        do {
            const std::size_t flips = aw.size() + ab.size();
            for (std::size_t mask = 0; mask < (std::size_t{1} << flips); ++mask) {
                bool ok = true;
                for (std::size_t i = 0; ok && i < aw.size(); ++i) {
                    const bool nonor = !a.white(aw[i]).orientable();
                    if (nonor && (mask >> i & 1)) { ok = false; break; }
                    const long ws = (mask >> i & 1) ? -1 : 1;
                    for (std::size_t j = 0; ok && j < ab.size(); ++j) {
                        const long bs = (mask >> (aw.size() + j) & 1) ? -1 : 1;
                        auto la = labels(a, aw[i], ab[j]);
                        auto lb = labels(b, bw[pw[i]], bb[pb[j]]);
                        for (auto& x : la) x = nonor ? std::labs(x) : x * ws * bs;
                        if (nonor)
                            for (auto& x : lb) x = std::labs(x);
                        std::sort(la.begin(), la.end());
                        std::sort(lb.begin(), lb.end());
                        ok = la == lb;
                    }
                }
                if (ok) return true;
            }
        } while (std::next_permutation(pb.begin(), pb.end()));
    } while (std::next_permutation(pw.begin(), pw.end()));
    return false;
}

/// Random unimodular matrix as a product of elementary operations.
inline IntMatrix random_unimodular(std::mt19937& rng, std::size_t n, int steps = 12) {
    auto m = IntMatrix::identity(n);
    if (n < 2) {
        if (n == 1 && pick(rng, 0, 1)) m(0, 0) = -1;
        return m;
    }
    for (int s = 0; s < steps; ++s) {
        std::size_t i = pick(rng, 0, static_cast<long>(n) - 1), j = pick(rng, 0, static_cast<long>(n) - 2);
        if (j >= i) ++j;
        switch (pick(rng, 0, 2)) {
            case 0: apply(m, {MatrixOp::Kind::AddRow, i, j, mpz_class(pick(rng, -3, 3))}); break;
            case 1: apply(m, {MatrixOp::Kind::SwapRows, i, j, 0}); break;
            default: apply(m, {MatrixOp::Kind::NegateRow, i, 0, 0}); break;
        }
    }
    return m;
}

inline IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, long bound) {
    IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = pick(rng, -bound, bound);
    return m;
}

inline ManifoldExpr random_expr(std::mt19937& rng, int max_summands = 5) {
    std::vector<Summand> s;
    const long n = pick(rng, 1, max_summands);
    for (long i = 0; i < n; ++i) {
        switch (pick(rng, 0, 3)) {
            case 0: s.push_back(Summand::lens(pick(rng, 2, 9))); break;
            case 1: s.push_back(Summand::of(PieceKind::S2xS1)); break;
            case 2: s.push_back(Summand::of(PieceKind::TwistedS2xS1)); break;
            default: s.push_back(Summand::of(PieceKind::P2xS1)); break;
        }
    }
    return ManifoldExpr(std::move(s));
}

inline Summand random_primitive(std::mt19937& rng) { return random_expr(rng, 1).summands().front(); }

inline std::string min_rotation(const Word& w) {
    std::string best;
    for (std::size_t k = 0; k < std::max<std::size_t>(w.size(), 1); ++k) {
        Word r(w.begin() + static_cast<long>(k), w.end());
        r.insert(r.end(), w.begin(), w.begin() + static_cast<long>(k));
        auto f = format_word(r);
        if (best.empty() || f < best) best = f;
    }
    return best;
}

/// Equal as multisets of relators (up to cyclic rotation) after some bijective
/// renaming of generators.
inline bool same_up_to_renaming(const GroupPresentation& p, const GroupPresentation& q) {
    if (p.generators.size() != q.generators.size() || p.relators.size() != q.relators.size()) return false;
    std::vector<std::string> target;
    for (const auto& r : q.relators) target.push_back(min_rotation(cyclic_reduce(r)));
    std::sort(target.begin(), target.end());
    std::vector<std::size_t> perm(q.generators.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::map<std::string, std::string> rename;
        for (std::size_t i = 0; i < perm.size(); ++i) rename[p.generators[i].name] = q.generators[perm[i]].name;
        std::vector<std::string> mine;
        for (const auto& r : p.relators) {
            Word w = r;
            for (auto& s : w) s.gen = rename.at(s.gen);
            mine.push_back(min_rotation(cyclic_reduce(w)));
        }
        std::sort(mine.begin(), mine.end());
        if (mine == target) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace testing
