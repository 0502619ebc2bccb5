#include "stratifold/io.hpp"

#include <charconv>
#include <cstdio>
#include <set>
#include <sstream>

namespace stratifold {

const char* parse_error_name(ParseErrorKind k) {
    switch (k) {
        case ParseErrorKind::Syntax: return "Syntax";
        case ParseErrorKind::DuplicateId: return "DuplicateId";
        case ParseErrorKind::DanglingEndpoint: return "DanglingEndpoint";
    }
    return "?";
}

namespace {

std::string where(std::size_t line, const std::string& message) {
    return line ? "line " + std::to_string(line) + ": " + message : message;
}

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream in{std::string(line)};
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

// Lines with comments stripped, paired with their 1-based numbers.
std::vector<std::pair<std::size_t, std::vector<std::string>>> declarations(std::string_view text) {
    std::vector<std::pair<std::size_t, std::vector<std::string>>> out;
    std::size_t n = 0;
    while (!text.empty()) {
        ++n;
        auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto toks = tokens(line);
        if (!toks.empty()) out.emplace_back(n, std::move(toks));
    }
    return out;
}

template <typename T>
std::optional<T> to_int(std::string_view s) {
    T v{};
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
    return v;
}

ParseError syntax(std::size_t line, const std::string& msg) {
    return ParseError(ParseErrorKind::Syntax, line, msg);
}

}  // namespace

ParseError::ParseError(ParseErrorKind kind, std::size_t line, const std::string& message)
    : std::runtime_error(where(line, message)), kind_(kind), line_(line) {}

StratifoldGraph parse_graph(std::string_view text) {
    StratifoldGraph g;
    std::vector<std::pair<std::size_t, Edge>> edges;
    std::set<std::string> edge_ids;
    for (const auto& [line, t] : declarations(text)) {
        const auto& kw = t[0];
        if (kw == "white") {
            if (t.size() != 4 || t[2] != "genus") throw syntax(line, "expected 'white <id> genus <int>'");
            auto genus = to_int<int>(t[3]);
            if (!genus) throw syntax(line, "genus '" + t[3] + "' is not an integer");
            if (g.has_white(t[1]))
                throw ParseError(ParseErrorKind::DuplicateId, line, "white vertex '" + t[1] + "' redeclared");
            g.add_white(t[1], *genus);
        } else if (kw == "black") {
            if (t.size() != 2) throw syntax(line, "expected 'black <id>'");
            if (g.has_black(t[1]))
                throw ParseError(ParseErrorKind::DuplicateId, line, "black vertex '" + t[1] + "' redeclared");
            g.add_black(t[1]);
        } else if (kw == "edge") {
            if (t.size() != 5) throw syntax(line, "expected 'edge <id> <white-id> <black-id> <label>'");
            auto label = to_int<long>(t[4]);
            if (!label) throw syntax(line, "label '" + t[4] + "' is not an integer");
            if (*label == 0) throw syntax(line, "edge label must be nonzero");
            if (!edge_ids.insert(t[1]).second)
                throw ParseError(ParseErrorKind::DuplicateId, line, "edge '" + t[1] + "' redeclared");
            edges.push_back({line, Edge{t[1], t[2], t[3], *label}});
        } else {
            throw syntax(line, "unknown declaration '" + kw + "'");
        }
    }
    for (auto& [line, e] : edges) {
        if (!g.has_white(e.white))
            throw ParseError(ParseErrorKind::DanglingEndpoint, line,
                             "edge '" + e.id + "' names undeclared white vertex '" + e.white + "'");
        if (!g.has_black(e.black))
            throw ParseError(ParseErrorKind::DanglingEndpoint, line,
                             "edge '" + e.id + "' names undeclared black vertex '" + e.black + "'");
        g.add_edge(e.id, e.white, e.black, e.label);
    }
    return g;
}

std::string serialize_graph(const StratifoldGraph& graph) {
    std::string out;
    for (const auto& [id, w] : graph.whites()) out += "white " + id + " genus " + std::to_string(w.genus) + "\n";
    for (const auto& [id, b] : graph.blacks()) out += "black " + id + "\n";
    for (const auto& [id, e] : graph.edges())
        out += "edge " + id + " " + e.white + " " + e.black + " " + std::to_string(e.label) + "\n";
    return out;
}

Word parse_word(std::string_view text) {
    auto toks = tokens(text);
    if (toks.size() == 1 && toks[0] == "1") return {};
    Word w;
    for (const auto& t : toks) {
        auto caret = t.find('^');
        std::string name = t.substr(0, caret);
        long exp = 1;
        if (caret != std::string::npos) {
            auto e = to_int<long>(std::string_view(t).substr(caret + 1));
            if (!e) throw syntax(0, "bad exponent in '" + t + "'");
            exp = *e;
        }
        if (name.empty() || name == "1") throw syntax(0, "bad syllable '" + t + "'");
        w.push_back({name, exp});
    }
    if (w.empty()) throw syntax(0, "empty word (write 1 for the identity)");
    return w;
}

GroupPresentation parse_presentation(std::string_view text) {
    GroupPresentation p;
    bool in_relators = false;
    for (const auto& [line, t] : declarations(text)) {
        if (t[0] == "gen") {
            if (in_relators) throw syntax(line, "'gen' after 'rel'");
            if (t.size() != 3) throw syntax(line, "expected 'gen <name> <role>'");
            auto role = parse_role(t[2]);
            if (!role) throw syntax(line, "unknown role '" + t[2] + "'");
            if (t[1].find('^') != std::string::npos || t[1] == "1")
                throw syntax(line, "bad generator name '" + t[1] + "'");
            if (p.has_generator(t[1]))
                throw ParseError(ParseErrorKind::DuplicateId, line, "generator '" + t[1] + "' redeclared");
            p.generators.push_back({t[1], *role});
        } else if (t[0] == "rel") {
            in_relators = true;
            std::string body;
            for (std::size_t i = 1; i < t.size(); ++i) body += t[i] + " ";
            Word w;
            try {
                w = parse_word(body);
            } catch (const ParseError& e) {
                throw syntax(line, e.what());
            }
            for (const auto& s : w)
                if (!p.has_generator(s.gen))
                    throw ParseError(ParseErrorKind::DanglingEndpoint, line,
                                     "relator uses undeclared generator '" + s.gen + "'");
            p.relators.push_back(std::move(w));
        } else {
            throw syntax(line, "unknown declaration '" + t[0] + "'");
        }
    }
    return p;
}

std::string serialize_presentation(const GroupPresentation& pres) {
    std::string out;
    for (const auto& g : pres.generators) out += "gen " + g.name + " " + role_name(g.role) + "\n";
    for (const auto& r : pres.relators) out += "rel " + format_word(r) + "\n";
    return out;
}

bool looks_like_presentation(std::string_view text) {
    auto decls = declarations(text);
    return !decls.empty() && (decls[0].second[0] == "gen" || decls[0].second[0] == "rel");
}

ManifoldExpr parse_expr(std::string_view text) {
    std::vector<Summand> out;
    while (true) {
        auto hash = text.find('#');
        auto term = trim(text.substr(0, hash));
        if (term.empty()) throw syntax(0, "empty summand in manifold expression");
        if (term == "S2xS1") out.push_back(Summand::of(PieceKind::S2xS1));
        else if (term == "S2~xS1") out.push_back(Summand::of(PieceKind::TwistedS2xS1));
        else if (term == "P2xS1") out.push_back(Summand::of(PieceKind::P2xS1));
        else if (term == "S3") out.push_back(Summand::of(PieceKind::S3));
        else if (term.size() > 3 && term.substr(0, 2) == "L(" && term.back() == ')') {
            auto q = to_int<long>(term.substr(2, term.size() - 3));
            if (!q) throw syntax(0, "bad lens parameter in '" + std::string(term) + "'");
            out.push_back(Summand::lens(*q));
        } else {
            throw syntax(0, "unknown summand '" + std::string(term) + "'");
        }
        if (hash == std::string_view::npos) break;
        text = text.substr(hash + 1);
    }
    return ManifoldExpr(std::move(out));
}

FSignature parse_signature(std::string_view text) {
    text = trim(text);
    auto colon = text.find(':');
    if (colon == std::string_view::npos) throw syntax(0, "expected '<genus>:<m1>,<m2>,...'");
    auto genus = to_int<int>(trim(text.substr(0, colon)));
    if (!genus) throw syntax(0, "bad genus in signature");
    FSignature sig{*genus, {}};
    auto rest = trim(text.substr(colon + 1));
    while (!rest.empty()) {
        auto comma = rest.find(',');
        auto m = to_int<long>(trim(rest.substr(0, comma)));
        if (!m) throw syntax(0, "bad period in signature");
        sig.periods.push_back(*m);
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    sig.check();
    return sig;
}

std::string format_signature(const FSignature& sig) {
    std::string out = std::to_string(sig.genus) + ":";
    for (std::size_t i = 0; i < sig.periods.size(); ++i) out += (i ? "," : "") + std::to_string(sig.periods[i]);
    return out;
}

std::string input_digest(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

nlohmann::json to_json(const Report& report) {
    nlohmann::json j;
    j["schema"] = kReportSchema;
    j["command"] = report.command;
    j["input_digest"] = report.digest;
    j["payload"] = report.payload;
    j["indeterminate"] = report.indeterminate;
    j["violations"] = nlohmann::json::array();
    for (const auto& v : report.violations)
        j["violations"].push_back({{"rule", rule_name(v.rule)}, {"subject", v.subject}, {"detail", v.detail}});
    j["obstructions"] = nlohmann::json::array();
    for (const auto& o : report.obstructions)
        j["obstructions"].push_back(
            {{"kind", obstruction_name(o.kind)}, {"witness", o.witness}, {"evidence", o.evidence}});
    if (report.error) {
        j["error"] = {{"kind", report.error->kind}, {"message", report.error->message}, {"line", nullptr}};
        if (report.error->line) j["error"]["line"] = report.error->line;
    } else {
        j["error"] = nullptr;
    }
    j["exit_code"] = exit_code(report);
    return j;
}

int exit_code(const Report& report) {
    if (report.error || !report.violations.empty()) return 1;
    if (report.command == "obstruct" && !report.obstructions.empty()) return 3;
    if (report.indeterminate) return 2;
    return 0;
}

nlohmann::json verdict_json(const OrderVerdict& v) {
    if (auto* f = std::get_if<Finite>(&v)) {
        nlohmann::json j{{"verdict", "finite"}, {"order", f->order}, {"proof", proof_name(f->proof)}};
        if (f->proof == FiniteProof::Enumeration) j["cosets"] = f->cosets;
        return j;
    }
    if (std::holds_alternative<Infinite>(v)) return {{"verdict", "infinite"}};
    return {{"verdict", "unknown"}, {"budget", std::get<Unknown>(v).budget}};
}

nlohmann::json invariants_json(const AbelianInvariants& inv) {
    nlohmann::json torsion = nlohmann::json::array();
    for (const auto& d : inv.torsion) torsion.push_back(d.get_str());
    return {{"free_rank", inv.free_rank}, {"torsion", torsion}, {"group", inv.to_string()}};
}

nlohmann::json presentation_json(const GroupPresentation& pres) {
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : pres.generators) gens.push_back({{"name", g.name}, {"role", role_name(g.role)}});
    nlohmann::json rels = nlohmann::json::array();
    for (const auto& r : pres.relators) rels.push_back(format_word(r));
    return {{"generators", gens}, {"relators", rels}};
}

}  // namespace stratifold
