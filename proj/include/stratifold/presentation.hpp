#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "stratifold/graph.hpp"

namespace stratifold {

class PresentationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Role { Black, Boundary, Surface, StableLetter, Period, Other };

const char* role_name(Role r);
std::optional<Role> parse_role(const std::string& s);

struct Generator {
    std::string name;
    Role role = Role::Other;

    friend bool operator==(const Generator&, const Generator&) = default;
};

struct Syllable {
    std::string gen;
    long exp = 1;

    friend bool operator==(const Syllable&, const Syllable&) = default;
};

/// A word in the free group, stored as syllables g^k.
using Word = std::vector<Syllable>;

/// Merges adjacent syllables on the same generator and drops zero exponents.
Word free_reduce(Word w);
/// Free reduction followed by conjugation to a cyclically reduced form.
Word cyclic_reduce(Word w);
Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);
Word power(const Word& w, long k);
/// Sum of |exponents|.
long word_length(const Word& w);
/// Exponent sum of a generator in a word.
long exponent_sum(const Word& w, const std::string& gen);

/// One letter per unit exponent: (gen, +1/-1).
std::vector<std::pair<std::string, int>> letters(const Word& w);

std::string format_word(const Word& w);

struct GroupPresentation {
    std::vector<Generator> generators;
    std::vector<Word> relators;

    std::optional<std::size_t> index_of(const std::string& name) const;
    bool has_generator(const std::string& name) const { return index_of(name).has_value(); }
    /// Throws if names repeat or a relator mentions an undeclared generator.
    void check() const;

    friend bool operator==(const GroupPresentation&, const GroupPresentation&) = default;
};

/// Generator names used by the natural presentation.
std::string black_gen(const std::string& black_id);
std::string boundary_gen(const std::string& edge_id);
std::string surface_gen(const std::string& white_id, int j);
std::string stable_gen(const std::string& edge_id);

/// s_1...s_p * q, with q the commutator product (orientable) or the product of
/// squares (nonorientable) over the given surface generators.
Word surface_relator(const std::vector<std::string>& boundary, const std::vector<std::string>& surface,
                     bool orientable);

/// Natural presentation of pi_1 of a valid graph whose spanning-tree labels
/// are positive. Generators: one per black (id order), then per white its
/// boundary and surface generators, then one stable letter per non-tree edge.
/// Relators: one surface relator per white (omitted when empty), then one per
/// edge in id order: s^-1 b^m (tree) or t^-1 s t b^-m (non-tree).
GroupPresentation natural_presentation(const StratifoldGraph& graph);

/// Data of an F-group: base genus in the signed convention plus cone-point
/// periods.
struct FSignature {
    int genus = 0;
    std::vector<long> periods;

    static FSignature spherical(std::vector<long> periods) { return {0, std::move(periods)}; }
    static FSignature orientable(int g, std::vector<long> periods) { return {g, std::move(periods)}; }
    static FSignature nonorientable(int k, std::vector<long> periods) { return {-k, std::move(periods)}; }

    bool is_spherical() const { return genus == 0; }
    bool orientable() const { return genus >= 0; }
    int surface_rank() const { return genus >= 0 ? 2 * genus : -genus; }
    /// Throws PresentationError if some period is < 2.
    void check() const;

    friend bool operator==(const FSignature&, const FSignature&) = default;
};

GroupPresentation fgroup_presentation(const FSignature& sig);

/// Graph whose natural presentation simplifies to the F-group presentation: a
/// central white of the signature's genus joined with label 1 to blacks b_i,
/// each b_i capped by a disk attached with degree m_i.
StratifoldGraph fgroup_graph(const FSignature& sig);

struct SimplifyResult {
    GroupPresentation presentation;
    /// Eliminated generators, expressed as words in the surviving generators.
    std::map<std::string, Word> eliminated;
    std::size_t steps = 0;
    bool exhausted = false;

    /// Rewrites a word over the original generators into the surviving ones.
    Word rewrite(const Word& w) const;
};

/// Bounded Tietze reduction. Relators are cyclically reduced and deduplicated;
/// a generator is eliminated when some relator contains it exactly once with
/// exponent +-1 and either that relator is the generator alone or the
/// generator is a boundary generator. At most `budget` eliminations.
SimplifyResult simplify(const GroupPresentation& pres, std::size_t budget = 10000);

}  // namespace stratifold
