#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "stratifold/algebra.hpp"
#include "stratifold/analysis.hpp"
#include "stratifold/graph.hpp"
#include "stratifold/presentation.hpp"
#include "stratifold/spine.hpp"

namespace stratifold {

enum class ParseErrorKind { Syntax, DuplicateId, DanglingEndpoint };

const char* parse_error_name(ParseErrorKind k);

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, std::size_t line, const std::string& message);

    ParseErrorKind kind() const { return kind_; }
    /// 1-based line number, 0 when the error is not tied to a line.
    std::size_t line() const { return line_; }

private:
    ParseErrorKind kind_;
    std::size_t line_;
};

/// Graph text format, one declaration per line, '#' starts a comment:
///   white <id> genus <int>
///   black <id>
///   edge <id> <white-id> <black-id> <nonzero-int>
/// Edges may precede the vertices they mention; endpoints are checked at the end.
StratifoldGraph parse_graph(std::string_view text);
/// Whites, then blacks, then edges, each sorted by id.
std::string serialize_graph(const StratifoldGraph& graph);

/// Word syntax: space-separated syllables `g`, `g^k`; "1" is the empty word.
Word parse_word(std::string_view text);

/// `gen <name> <role>` lines followed by `rel <word>` lines.
GroupPresentation parse_presentation(std::string_view text);
std::string serialize_presentation(const GroupPresentation& pres);

/// True when the first declaration is `gen` or `rel`.
bool looks_like_presentation(std::string_view text);

/// `term (# term)*` with terms L(q), S2xS1, S2~xS1, P2xS1, S3.
ManifoldExpr parse_expr(std::string_view text);

/// `<genus>:<m1>,<m2>,...`, e.g. "0:2,3,5" or "-1:" for the projective plane.
FSignature parse_signature(std::string_view text);
std::string format_signature(const FSignature& sig);

/// FNV-1a 64-bit digest of the raw input, as 16 hex digits.
std::string input_digest(std::string_view text);

struct ErrorInfo {
    std::string kind;
    std::string message;
    std::size_t line = 0;
};

/// Uniform result of a CLI command.
struct Report {
    std::string command;
    std::string digest;
    nlohmann::json payload = nlohmann::json::object();
    bool indeterminate = false;
    std::vector<Violation> violations;
    std::vector<Obstruction> obstructions;
    std::optional<ErrorInfo> error;
};

inline constexpr const char* kReportSchema = "stratifold-report/1";

nlohmann::json to_json(const Report& report);

/// 1 on error or violations, 3 when obstruct found obstructions, 2 when
/// indeterminate, 0 otherwise.
int exit_code(const Report& report);

nlohmann::json verdict_json(const OrderVerdict& v);
nlohmann::json invariants_json(const AbelianInvariants& inv);
nlohmann::json presentation_json(const GroupPresentation& pres);

}  // namespace stratifold
