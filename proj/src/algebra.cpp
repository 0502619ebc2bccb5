#include "stratifold/algebra.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace stratifold {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<mpz_class> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) throw std::invalid_argument("IntMatrix: entry count mismatch");
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("IntMatrix: shape mismatch");
    IntMatrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const auto& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
        }
    return out;
}

std::string AbelianInvariants::to_string() const {
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
        os << "Z";
        if (free_rank > 1) os << "^" << free_rank;
        first = false;
    }
    for (const auto& d : torsion) {
        if (!first) os << " + ";
        os << "Z/" << d.get_str();
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

AbelianInvariants direct_sum(const AbelianInvariants& a, const AbelianInvariants& b) {
    std::vector<mpz_class> diag = a.torsion;
    diag.insert(diag.end(), b.torsion.begin(), b.torsion.end());
    IntMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    auto res = smith_normal_form(m).invariants;
    res.free_rank += a.free_rank + b.free_rank;
    return res;
}

void apply(IntMatrix& m, const MatrixOp& op) {
    using K = MatrixOp::Kind;
    switch (op.kind) {
        case K::SwapRows:
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(op.target, j), m(op.source, j));
            break;
        case K::SwapCols:
            for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, op.target), m(i, op.source));
            break;
        case K::AddRow:
            for (std::size_t j = 0; j < m.cols(); ++j) m(op.target, j) += op.factor * m(op.source, j);
            break;
        case K::AddCol:
            for (std::size_t i = 0; i < m.rows(); ++i) m(i, op.target) += op.factor * m(i, op.source);
            break;
        case K::NegateRow:
            for (std::size_t j = 0; j < m.cols(); ++j) m(op.target, j) = -m(op.target, j);
            break;
        case K::NegateCol:
            for (std::size_t i = 0; i < m.rows(); ++i) m(i, op.target) = -m(i, op.target);
            break;
    }
}

IntMatrix SmithResult::replay(IntMatrix m) const {
    for (const auto& op : ops) apply(m, op);
    return m;
}

IntMatrix SmithResult::column_transform() const {
    IntMatrix v = IntMatrix::identity(diagonal.cols());
    for (const auto& op : ops) {
        using K = MatrixOp::Kind;
        if (op.kind == K::SwapCols || op.kind == K::AddCol || op.kind == K::NegateCol) apply(v, op);
    }
    return v;
}

SmithResult smith_normal_form(const IntMatrix& input) {
    using K = MatrixOp::Kind;
    SmithResult res;
    IntMatrix a = input;
    auto record = [&](MatrixOp op) {
        apply(a, op);
        res.ops.push_back(std::move(op));
    };
    const std::size_t rows = a.rows(), cols = a.cols();
    const std::size_t n = std::min(rows, cols);

    std::size_t k = 0;
    for (; k < n; ++k) {
        bool empty = false;
        while (true) {
            // Smallest nonzero |entry| in the active block; row-major scan keeps
            // the first hit on ties.
            std::size_t pr = rows, pc = cols;
            mpz_class best;
            for (std::size_t i = k; i < rows; ++i)
                for (std::size_t j = k; j < cols; ++j) {
                    if (a(i, j) == 0) continue;
                    mpz_class v = abs(a(i, j));
                    if (pr == rows || v < best) {
                        best = v;
                        pr = i;
                        pc = j;
                    }
                }
            if (pr == rows) {
                empty = true;
                break;
            }
            if (pr != k) record({K::SwapRows, k, pr, 0});
            if (pc != k) record({K::SwapCols, k, pc, 0});

            bool clean = true;
            for (std::size_t i = k + 1; i < rows; ++i) {
                if (a(i, k) == 0) continue;
                mpz_class q = a(i, k) / a(k, k);
                if (q != 0) record({K::AddRow, i, k, -q});
                if (a(i, k) != 0) clean = false;
            }
            for (std::size_t j = k + 1; j < cols; ++j) {
                if (a(k, j) == 0) continue;
                mpz_class q = a(k, j) / a(k, k);
                if (q != 0) record({K::AddCol, j, k, -q});
                if (a(k, j) != 0) clean = false;
            }
            if (!clean) continue;

            std::size_t bad = rows;
            for (std::size_t i = k + 1; i < rows && bad == rows; ++i)
                for (std::size_t j = k + 1; j < cols; ++j)
                    if (a(i, j) % a(k, k) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == rows) break;
            record({K::AddRow, k, bad, 1});
        }
        if (empty) break;
        if (a(k, k) < 0) record({K::NegateRow, k, 0, 0});
    }

    res.rank = k;
    res.invariants.free_rank = cols - k;
    for (std::size_t i = 0; i < k; ++i)
        if (a(i, i) > 1) res.invariants.torsion.push_back(a(i, i));
    res.diagonal = std::move(a);
    return res;
}

IntMatrix relation_matrix(const GroupPresentation& pres) {
    pres.check();
    IntMatrix m(pres.relators.size(), pres.generators.size());
    for (std::size_t r = 0; r < pres.relators.size(); ++r)
        for (const auto& s : pres.relators[r]) m(r, *pres.index_of(s.gen)) += s.exp;
    return m;
}

AbelianInvariants abelianization(const GroupPresentation& pres) {
    return smith_normal_form(relation_matrix(pres)).invariants;
}

std::optional<mpz_class> abelian_order(const GroupPresentation& pres, const Word& w) {
    const auto snf = smith_normal_form(relation_matrix(pres));
    const auto v = snf.column_transform();
    const std::size_t n = pres.generators.size();
    std::vector<mpz_class> coords(n);
    for (const auto& s : w) {
        auto idx = pres.index_of(s.gen);
        if (!idx) throw PresentationError("word mentions undeclared generator '" + s.gen + "'");
        for (std::size_t j = 0; j < n; ++j) coords[j] += s.exp * v(*idx, j);
    }
    mpz_class order = 1;
    for (std::size_t j = 0; j < n; ++j) {
        if (coords[j] == 0) continue;
        if (j >= snf.rank) return std::nullopt;
        const mpz_class& d = snf.diagonal(j, j);
        mpz_class g = gcd(d, coords[j]);
        mpz_class part = d / g;
        order = lcm(order, part);
    }
    return order;
}

std::size_t CosetTable::trace(std::size_t start, const std::vector<std::size_t>& letter_columns) const {
    std::size_t c = start;
    for (auto x : letter_columns) c = action[c][x];
    return c;
}

std::vector<std::size_t> word_columns(const GroupPresentation& pres, const Word& w) {
    std::vector<std::size_t> out;
    for (const auto& [gen, sign] : letters(w)) {
        auto idx = pres.index_of(gen);
        if (!idx) throw PresentationError("word mentions undeclared generator '" + gen + "'");
        out.push_back(2 * *idx + (sign > 0 ? 0 : 1));
    }
    return out;
}

namespace {

// HLT enumeration (no lookahead) with union-find coincidence processing.
// Entries are -1 when undefined.
class Enumerator {
public:
    struct Overflow {};

    Enumerator(std::size_t ncols, std::size_t budget) : ncols_(ncols), budget_(budget) {
        table_.emplace_back(ncols_, -1);
        parent_.push_back(0);
    }

    std::size_t size() const { return table_.size(); }
    bool live(std::size_t c) const { return parent_[c] == c; }

    void scan_and_fill(std::size_t c, const std::vector<std::size_t>& w) {
        if (w.empty()) return;
        std::size_t f = c, b = c;
        std::ptrdiff_t i = 0, j = static_cast<std::ptrdiff_t>(w.size()) - 1;
        while (true) {
            while (i <= j && table_[f][w[i]] >= 0) f = static_cast<std::size_t>(table_[f][w[i++]]);
            if (i > j) {
                if (f != b) coincidence(f, b);
                return;
            }
            while (j >= i && table_[b][w[j] ^ 1] >= 0) b = static_cast<std::size_t>(table_[b][w[j--] ^ 1]);
            if (j < i) {
                coincidence(f, b);
                return;
            }
            if (i == j) {
                table_[f][w[i]] = static_cast<std::int64_t>(b);
                table_[b][w[i] ^ 1] = static_cast<std::int64_t>(f);
                return;
            }
            define(f, w[i]);
        }
    }

    void fill_row(std::size_t c) {
        for (std::size_t x = 0; x < ncols_ && live(c); ++x)
            if (table_[c][x] < 0) define(c, x);
    }

    bool closes(std::size_t c, const std::vector<std::size_t>& w) const {
        std::size_t f = c;
        for (auto x : w) {
            if (table_[f][x] < 0) return false;
            f = static_cast<std::size_t>(table_[f][x]);
        }
        return f == c;
    }

    bool row_complete(std::size_t c) const {
        return std::all_of(table_[c].begin(), table_[c].end(), [](auto v) { return v >= 0; });
    }

    CosetTable compact(std::size_t gens) const {
        std::vector<std::size_t> id(table_.size(), 0);
        std::size_t n = 0;
        for (std::size_t c = 0; c < table_.size(); ++c)
            if (live(c)) id[c] = n++;
        CosetTable out;
        out.generator_count = gens;
        out.defined = table_.size();
        out.action.reserve(n);
        for (std::size_t c = 0; c < table_.size(); ++c) {
            if (!live(c)) continue;
            std::vector<std::size_t> row(ncols_);
            for (std::size_t x = 0; x < ncols_; ++x) row[x] = id[static_cast<std::size_t>(table_[c][x])];
            out.action.push_back(std::move(row));
        }
        return out;
    }

private:
    void define(std::size_t c, std::size_t x) {
        if (table_.size() >= budget_) throw Overflow{};
        const std::size_t n = table_.size();
        table_.emplace_back(ncols_, -1);
        parent_.push_back(n);
        table_[c][x] = static_cast<std::int64_t>(n);
        table_[n][x ^ 1] = static_cast<std::int64_t>(c);
    }

    std::size_t rep(std::size_t c) {
        std::size_t r = c;
        while (parent_[r] != r) r = parent_[r];
        while (parent_[c] != r) {
            auto next = parent_[c];
            parent_[c] = r;
            c = next;
        }
        return r;
    }

    void merge(std::size_t a, std::size_t b) {
        a = rep(a);
        b = rep(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        parent_[b] = a;
        queue_.push_back(b);
    }

    void coincidence(std::size_t a, std::size_t b) {
        queue_.clear();
        merge(a, b);
        for (std::size_t i = 0; i < queue_.size(); ++i) {
            const std::size_t g = queue_[i];
            for (std::size_t x = 0; x < ncols_; ++x) {
                if (table_[g][x] < 0) continue;
                const auto d = static_cast<std::size_t>(table_[g][x]);
                table_[d][x ^ 1] = -1;
                const std::size_t mu = rep(g), nu = rep(d);
                if (table_[mu][x] >= 0) {
                    merge(nu, static_cast<std::size_t>(table_[mu][x]));
                } else if (table_[nu][x ^ 1] >= 0) {
                    merge(mu, static_cast<std::size_t>(table_[nu][x ^ 1]));
                } else {
                    table_[mu][x] = static_cast<std::int64_t>(nu);
                    table_[nu][x ^ 1] = static_cast<std::int64_t>(mu);
                }
            }
        }
        queue_.clear();
    }

    std::size_t ncols_;
    std::size_t budget_;
    std::vector<std::vector<std::int64_t>> table_;
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> queue_;
};

}  // namespace

std::variant<CosetTable, Exhausted> todd_coxeter(const GroupPresentation& pres,
                                                 const std::vector<Word>& subgroup,
                                                 std::size_t budget) {
    pres.check();
    if (budget == 0) throw std::invalid_argument("todd_coxeter: budget must be >= 1");
    const std::size_t ncols = 2 * pres.generators.size();
    std::vector<std::vector<std::size_t>> rels, subs;
    for (const auto& r : pres.relators) rels.push_back(word_columns(pres, cyclic_reduce(r)));
    for (const auto& h : subgroup) subs.push_back(word_columns(pres, free_reduce(h)));

    Enumerator en(ncols, budget);
    try {
        for (const auto& h : subs) en.scan_and_fill(0, h);
        // A single HLT pass normally closes the table; further passes only run
        // if the final check finds an open relator trace.
        for (int pass = 0;; ++pass) {
            for (std::size_t c = 0; c < en.size(); ++c) {
                for (const auto& r : rels) {
                    if (!en.live(c)) break;
                    en.scan_and_fill(c, r);
                }
                if (en.live(c)) en.fill_row(c);
            }
            bool ok = true;
            for (const auto& h : subs) ok = ok && en.closes(0, h);
            for (std::size_t c = 0; c < en.size() && ok; ++c) {
                if (!en.live(c)) continue;
                ok = en.row_complete(c);
                for (const auto& r : rels) ok = ok && en.closes(c, r);
            }
            if (ok) break;
            for (const auto& h : subs) en.scan_and_fill(0, h);
        }
    } catch (const Enumerator::Overflow&) {
        return Exhausted{budget};
    }
    return en.compact(pres.generators.size());
}

const char* proof_name(FiniteProof p) {
    switch (p) {
        case FiniteProof::Trivial: return "trivial";
        case FiniteProof::Enumeration: return "enumeration";
        case FiniteProof::RelatorPower: return "relator-power";
    }
    return "?";
}

std::string verdict_string(const OrderVerdict& v) {
    if (auto* f = std::get_if<Finite>(&v)) return "Finite(" + std::to_string(f->order) + ")";
    if (std::holds_alternative<Infinite>(v)) return "Infinite";
    return "Unknown";
}

namespace {

// Generators linked through common relators; the presented group is the free
// product of the groups presented by each block.
std::vector<std::set<std::string>> free_factor_blocks(const GroupPresentation& pres) {
    std::map<std::string, std::string> parent;
    for (const auto& g : pres.generators) parent[g.name] = g.name;
    auto find = [&](std::string x) {
        while (parent[x] != x) x = parent[x];
        return x;
    };
    for (const auto& r : pres.relators)
        for (std::size_t i = 1; i < r.size(); ++i) {
            auto a = find(r[0].gen), b = find(r[i].gen);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    std::map<std::string, std::set<std::string>> blocks;
    for (const auto& g : pres.generators) blocks[find(g.name)].insert(g.name);
    std::vector<std::set<std::string>> out;
    for (auto& [_, b] : blocks) out.push_back(std::move(b));
    return out;
}

GroupPresentation restrict_to(const GroupPresentation& pres, const std::set<std::string>& gens) {
    GroupPresentation out;
    for (const auto& g : pres.generators)
        if (gens.count(g.name)) out.generators.push_back(g);
    for (const auto& r : pres.relators)
        if (!r.empty() && gens.count(r.front().gen)) out.relators.push_back(r);
    return out;
}

// Smallest k such that some relator is a cyclic rotation of w^k or w^-k.
std::optional<std::uint64_t> relator_power(const std::vector<Word>& relators, const Word& w) {
    const auto wl = letters(w);
    const auto wi = letters(inverse(w));
    if (wl.empty()) return std::nullopt;
    std::optional<std::uint64_t> best;
    for (const auto& r : relators) {
        const auto rl = letters(r);
        if (rl.empty() || rl.size() % wl.size() != 0) continue;
        const std::uint64_t k = rl.size() / wl.size();
        for (const auto* base : {&wl, &wi}) {
            std::vector<std::pair<std::string, int>> target;
            for (std::uint64_t i = 0; i < k; ++i) target.insert(target.end(), base->begin(), base->end());
            bool hit = false;
            for (std::size_t shift = 0; shift < base->size() && !hit; ++shift) {
                hit = true;
                for (std::size_t i = 0; i < rl.size(); ++i)
                    if (rl[i] != target[(i + shift) % target.size()]) {
                        hit = false;
                        break;
                    }
            }
            if (hit && (!best || k < *best)) best = k;
        }
    }
    return best;
}

}  // namespace

OrderVerdict element_order(const GroupPresentation& pres, const Word& w, std::size_t budget) {
    pres.check();
    for (const auto& s : w)
        if (!pres.has_generator(s.gen))
            throw PresentationError("word mentions undeclared generator '" + s.gen + "'");
    const Word reduced = cyclic_reduce(w);
    if (reduced.empty()) return Finite{1, FiniteProof::Trivial, 0};

    const auto ab = abelian_order(pres, reduced);
    if (!ab) return Infinite{};

    const auto simp = simplify(pres);
    const auto& sp = simp.presentation;
    const Word target = cyclic_reduce(simp.rewrite(reduced));
    if (target.empty()) return Finite{1, FiniteProof::Trivial, 0};

    std::set<std::string> support;
    for (const auto& s : target) support.insert(s.gen);
    for (const auto& block : free_factor_blocks(sp)) {
        if (!block.count(*support.begin())) continue;
        if (!std::includes(block.begin(), block.end(), support.begin(), support.end())) break;
        const auto factor = restrict_to(sp, block);
        auto tc = todd_coxeter(factor, {}, budget);
        if (auto* table = std::get_if<CosetTable>(&tc)) {
            const auto cols = word_columns(factor, target);
            std::uint64_t k = 0;
            std::size_t c = 0;
            do {
                c = table->trace(c, cols);
                ++k;
            } while (c != 0);
            return Finite{k, FiniteProof::Enumeration, table->cosets()};
        }
        break;
    }

    if (auto k = relator_power(sp.relators, target); k && ab->fits_ulong_p() && ab->get_ui() == *k)
        return Finite{*k, FiniteProof::RelatorPower, 0};
    return Unknown{budget};
}

}  // namespace stratifold
