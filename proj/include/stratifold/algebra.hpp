#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "stratifold/presentation.hpp"

namespace stratifold {

/// Dense integer matrix, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<mpz_class> entries);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    mpz_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const mpz_class& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntMatrix operator*(const IntMatrix& other) const;
    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<mpz_class> data_;
};

/// Z^free_rank + Z/d_1 + ... + Z/d_k with d_i | d_{i+1}, d_i >= 2.
struct AbelianInvariants {
    std::size_t free_rank = 0;
    std::vector<mpz_class> torsion;

    bool trivial() const { return free_rank == 0 && torsion.empty(); }
    bool torsion_free() const { return torsion.empty(); }
    std::string to_string() const;

    friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

/// Direct sum, brought back to invariant-factor form.
AbelianInvariants direct_sum(const AbelianInvariants& a, const AbelianInvariants& b);

/// Elementary operation recorded by the Smith reduction.
struct MatrixOp {
    enum class Kind { SwapRows, SwapCols, AddRow, AddCol, NegateRow, NegateCol };
    Kind kind;
    std::size_t target = 0;
    std::size_t source = 0;  // unused for Negate*
    mpz_class factor;        // AddRow: row[target] += factor * row[source]
};

void apply(IntMatrix& m, const MatrixOp& op);

struct SmithResult {
    AbelianInvariants invariants;
    IntMatrix diagonal;
    std::vector<MatrixOp> ops;
    std::size_t rank = 0;

    /// Replays the recorded operations on a matrix.
    IntMatrix replay(IntMatrix m) const;
    /// Product of the column operations, so that diagonal = U * input * V.
    IntMatrix column_transform() const;
};

/// Smith normal form of the relation matrix (rows = relations, columns =
/// generators). Pivot: smallest nonzero |entry| of the active block, ties by
/// (row, col).
SmithResult smith_normal_form(const IntMatrix& m);

/// Exponent-sum matrix of a presentation.
IntMatrix relation_matrix(const GroupPresentation& pres);

AbelianInvariants abelianization(const GroupPresentation& pres);

/// Order of the image of `w` in the abelianization; nullopt when infinite.
std::optional<mpz_class> abelian_order(const GroupPresentation& pres, const Word& w);

struct CosetTable {
    std::size_t generator_count = 0;
    /// action[c][2*g] is c*g, action[c][2*g+1] is c*g^-1.
    std::vector<std::vector<std::size_t>> action;
    /// Total cosets defined while enumerating (including ones later merged).
    std::size_t defined = 0;
    bool complete = true;

    std::size_t cosets() const { return action.size(); }
    /// Coset reached from `start` by reading `letters` (indices as in action).
    std::size_t trace(std::size_t start, const std::vector<std::size_t>& letter_columns) const;
};

struct Exhausted {
    std::size_t budget = 0;
};

inline constexpr std::size_t kDefaultCosetBudget = 100000;

/// HLT coset enumeration of the cosets of <subgroup> in the presented group.
/// `budget` caps the number of coset definitions.
std::variant<CosetTable, Exhausted> todd_coxeter(const GroupPresentation& pres,
                                                 const std::vector<Word>& subgroup,
                                                 std::size_t budget = kDefaultCosetBudget);

/// Column indices of a word for use with CosetTable::trace.
std::vector<std::size_t> word_columns(const GroupPresentation& pres, const Word& w);

enum class FiniteProof {
    Trivial,      // the word reduces to the identity by free or Tietze reduction
    Enumeration,  // completed coset table of the free factor containing the word
    RelatorPower, // w^k is a relator and the abelian image has order exactly k
};

const char* proof_name(FiniteProof p);

struct Finite {
    std::uint64_t order = 1;
    FiniteProof proof = FiniteProof::Enumeration;
    std::size_t cosets = 0;  // table size when proof == Enumeration

    friend bool operator==(const Finite&, const Finite&) = default;
};

struct Infinite {
    friend bool operator==(const Infinite&, const Infinite&) = default;
};

struct Unknown {
    std::size_t budget = 0;

    friend bool operator==(const Unknown&, const Unknown&) = default;
};

using OrderVerdict = std::variant<Finite, Infinite, Unknown>;

std::string verdict_string(const OrderVerdict& v);
inline bool is_finite(const OrderVerdict& v) { return std::holds_alternative<Finite>(v); }
inline bool is_unknown(const OrderVerdict& v) { return std::holds_alternative<Unknown>(v); }

/// Certified order of a group element.
///
/// Infinite when the abelian image has infinite order. Otherwise the
/// presentation is simplified and split into free factors (blocks of
/// generators linked by relators); if the word lives in one factor, that
/// factor is enumerated over the trivial subgroup. If the enumeration runs
/// out of budget, a relator equal to a power w^k still certifies order k
/// when the abelian image already has order k. Anything else is Unknown.
OrderVerdict element_order(const GroupPresentation& pres, const Word& w,
                           std::size_t budget = kDefaultCosetBudget);

}  // namespace stratifold
