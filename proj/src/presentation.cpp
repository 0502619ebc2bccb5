#include "stratifold/presentation.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>

namespace stratifold {

const char* role_name(Role r) {
    switch (r) {
        case Role::Black: return "black";
        case Role::Boundary: return "boundary";
        case Role::Surface: return "surface";
        case Role::StableLetter: return "stable-letter";
        case Role::Period: return "period";
        case Role::Other: return "other";
    }
    return "other";
}

std::optional<Role> parse_role(const std::string& s) {
    for (auto r : {Role::Black, Role::Boundary, Role::Surface, Role::StableLetter, Role::Period,
                   Role::Other})
        if (s == role_name(r)) return r;
    return std::nullopt;
}

Word free_reduce(Word w) {
    Word out;
    out.reserve(w.size());
    for (auto& s : w) {
        if (s.exp == 0) continue;
        if (!out.empty() && out.back().gen == s.gen) {
            out.back().exp += s.exp;
            if (out.back().exp == 0) out.pop_back();
        } else {
            out.push_back(std::move(s));
        }
    }
    return out;
}

Word cyclic_reduce(Word w) {
    w = free_reduce(std::move(w));
    while (w.size() >= 2 && w.front().gen == w.back().gen) {
        w.front().exp += w.back().exp;
        w.pop_back();
        if (w.front().exp == 0) w.erase(w.begin());
    }
    return w;
}

Word inverse(const Word& w) {
    Word out(w.rbegin(), w.rend());
    for (auto& s : out) s.exp = -s.exp;
    return out;
}

Word concat(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return free_reduce(std::move(out));
}

Word power(const Word& w, long k) {
    Word base = k < 0 ? inverse(w) : w;
    Word out;
    for (long i = 0; i < std::labs(k); ++i) out.insert(out.end(), base.begin(), base.end());
    return free_reduce(std::move(out));
}

long word_length(const Word& w) {
    long n = 0;
    for (const auto& s : w) n += std::labs(s.exp);
    return n;
}

long exponent_sum(const Word& w, const std::string& gen) {
    long n = 0;
    for (const auto& s : w)
        if (s.gen == gen) n += s.exp;
    return n;
}

std::vector<std::pair<std::string, int>> letters(const Word& w) {
    std::vector<std::pair<std::string, int>> out;
    for (const auto& s : w)
        for (long i = 0; i < std::labs(s.exp); ++i) out.emplace_back(s.gen, s.exp > 0 ? 1 : -1);
    return out;
}

std::string format_word(const Word& w) {
    if (w.empty()) return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) os << ' ';
        os << w[i].gen;
        if (w[i].exp != 1) os << '^' << w[i].exp;
    }
    return os.str();
}

std::optional<std::size_t> GroupPresentation::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
        if (generators[i].name == name) return i;
    return std::nullopt;
}

void GroupPresentation::check() const {
    std::set<std::string> names;
    for (const auto& g : generators)
        if (!names.insert(g.name).second)
            throw PresentationError("duplicate generator '" + g.name + "'");
    for (const auto& r : relators)
        for (const auto& s : r)
            if (!names.count(s.gen))
                throw PresentationError("relator mentions undeclared generator '" + s.gen + "'");
}

std::string black_gen(const std::string& black_id) { return "b." + black_id; }
std::string boundary_gen(const std::string& edge_id) { return "s." + edge_id; }
std::string surface_gen(const std::string& white_id, int j) {
    return "y." + white_id + "." + std::to_string(j);
}
std::string stable_gen(const std::string& edge_id) { return "t." + edge_id; }

Word surface_relator(const std::vector<std::string>& boundary, const std::vector<std::string>& surface,
                     bool orientable) {
    Word w;
    for (const auto& s : boundary) w.push_back({s, 1});
    if (orientable) {
        for (std::size_t j = 0; j + 1 < surface.size(); j += 2) {
            w.push_back({surface[j], 1});
            w.push_back({surface[j + 1], 1});
            w.push_back({surface[j], -1});
            w.push_back({surface[j + 1], -1});
        }
    } else {
        for (const auto& y : surface) w.push_back({y, 2});
    }
    return free_reduce(std::move(w));
}

GroupPresentation natural_presentation(const StratifoldGraph& graph) {
    require_valid(graph);
    const auto tree = spanning_tree(graph);
    for (const auto& e : tree)
        if (graph.edge(e).label <= 0)
            throw PresentationError("graph is not normalized: tree edge '" + e + "' has label " +
                                    std::to_string(graph.edge(e).label));

    GroupPresentation pres;
    for (const auto& [id, b] : graph.blacks()) pres.generators.push_back({black_gen(id), Role::Black});

    for (const auto& [id, w] : graph.whites()) {
        std::vector<std::string> boundary, surface;
        for (const auto& e : graph.edges_at_white(id)) {
            boundary.push_back(boundary_gen(e));
            pres.generators.push_back({boundary.back(), Role::Boundary});
        }
        for (int j = 1; j <= w.surface_rank(); ++j) {
            surface.push_back(surface_gen(id, j));
            pres.generators.push_back({surface.back(), Role::Surface});
        }
        auto rel = surface_relator(boundary, surface, w.orientable());
        if (!rel.empty()) pres.relators.push_back(std::move(rel));
    }

    for (const auto& [id, e] : graph.edges()) {
        const auto s = boundary_gen(id);
        const auto b = black_gen(e.black);
        if (tree.count(id)) {
            pres.relators.push_back({{s, -1}, {b, e.label}});
        } else {
            const auto t = stable_gen(id);
            pres.generators.push_back({t, Role::StableLetter});
            pres.relators.push_back({{t, -1}, {s, 1}, {t, 1}, {b, -e.label}});
        }
    }
    pres.check();
    return pres;
}

void FSignature::check() const {
    for (auto m : periods)
        if (m < 2) throw PresentationError("F-group period " + std::to_string(m) + " < 2");
}

GroupPresentation fgroup_presentation(const FSignature& sig) {
    sig.check();
    GroupPresentation pres;
    std::vector<std::string> cs, ys;
    for (std::size_t i = 1; i <= sig.periods.size(); ++i) {
        cs.push_back("c." + std::to_string(i));
        pres.generators.push_back({cs.back(), Role::Period});
    }
    for (int j = 1; j <= sig.surface_rank(); ++j) {
        ys.push_back("y." + std::to_string(j));
        pres.generators.push_back({ys.back(), Role::Surface});
    }
    for (std::size_t i = 0; i < cs.size(); ++i) pres.relators.push_back({{cs[i], sig.periods[i]}});
    auto rel = surface_relator(cs, ys, sig.orientable());
    if (!rel.empty()) pres.relators.push_back(std::move(rel));
    return pres;
}

StratifoldGraph fgroup_graph(const FSignature& sig) {
    sig.check();
    StratifoldGraph g;
    g.add_white("w", sig.genus);
    for (std::size_t i = 1; i <= sig.periods.size(); ++i) {
        const auto n = std::to_string(i);
        g.add_black("b" + n);
        g.add_white("d" + n, 0);
        g.add_edge("e" + n, "w", "b" + n, 1);
        g.add_edge("f" + n, "d" + n, "b" + n, sig.periods[i - 1]);
    }
    return g;
}

namespace {

Word substitute(const Word& w, const std::string& gen, const Word& value) {
    Word out;
    for (const auto& s : w) {
        if (s.gen == gen) {
            auto p = power(value, s.exp);
            out.insert(out.end(), p.begin(), p.end());
        } else {
            out.push_back(s);
        }
    }
    return free_reduce(std::move(out));
}

void tidy(std::vector<Word>& relators) {
    std::vector<Word> out;
    for (auto& r : relators) {
        r = cyclic_reduce(std::move(r));
        if (r.empty()) continue;
        if (std::find(out.begin(), out.end(), r) != out.end()) continue;
        out.push_back(std::move(r));
    }
    relators = std::move(out);
}

struct Candidate {
    std::size_t relator;
    std::size_t syllable;
};

std::optional<Candidate> find_candidate(const GroupPresentation& pres) {
    std::vector<std::size_t> order(pres.relators.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return word_length(pres.relators[a]) < word_length(pres.relators[b]);
    });
    for (auto ri : order) {
        const auto& r = pres.relators[ri];
        for (const auto& g : pres.generators) {
            std::size_t hits = 0, at = 0;
            for (std::size_t k = 0; k < r.size(); ++k)
                if (r[k].gen == g.name) {
                    ++hits;
                    at = k;
                }
            if (hits != 1 || std::labs(r[at].exp) != 1) continue;
            if (r.size() == 1 || g.role == Role::Boundary) return Candidate{ri, at};
        }
    }
    return std::nullopt;
}

}  // namespace

Word SimplifyResult::rewrite(const Word& w) const {
    Word out;
    for (const auto& s : w) {
        auto it = eliminated.find(s.gen);
        if (it == eliminated.end()) {
            out.push_back(s);
        } else {
            auto p = power(it->second, s.exp);
            out.insert(out.end(), p.begin(), p.end());
        }
    }
    return free_reduce(std::move(out));
}

SimplifyResult simplify(const GroupPresentation& pres, std::size_t budget) {
    pres.check();
    SimplifyResult res;
    res.presentation = pres;
    auto& cur = res.presentation;
    tidy(cur.relators);

    while (true) {
        auto cand = find_candidate(cur);
        if (!cand) break;
        if (res.steps >= budget) {
            res.exhausted = true;
            break;
        }
        const Word r = cur.relators[cand->relator];
        const auto x = r[cand->syllable];
        // Rotate so that r = x^e u, then x = u^-1 (e = 1) or x = u (e = -1).
        Word u(r.begin() + static_cast<long>(cand->syllable) + 1, r.end());
        u.insert(u.end(), r.begin(), r.begin() + static_cast<long>(cand->syllable));
        u = free_reduce(std::move(u));
        Word value = x.exp == 1 ? inverse(u) : u;

        cur.relators.erase(cur.relators.begin() + static_cast<long>(cand->relator));
        for (auto& other : cur.relators) other = substitute(other, x.gen, value);
        for (auto& [name, w] : res.eliminated) w = substitute(w, x.gen, value);
        res.eliminated[x.gen] = value;
        std::erase_if(cur.generators, [&](const Generator& g) { return g.name == x.gen; });
        tidy(cur.relators);
        ++res.steps;
    }
    return res;
}

}  // namespace stratifold
