#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "stratifold/io.hpp"

using namespace stratifold;
using nlohmann::json;

namespace {

struct Options {
    std::vector<std::string> in;
    std::string expr;
    std::size_t budget = kDefaultCosetBudget;
    bool json = false;
    bool simplify = false;
};

struct Outcome {
    Report report;
    std::string text;
};

std::string read_source(const std::string& path) {
    if (path.empty() || path == "-") {
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

class Command {
public:
    Command(std::string name, const Options& opt) : opt_(opt) { out_.report.command = std::move(name); }

    Outcome run() {
        try {
            dispatch();
        } catch (const ParseError& e) {
            fail(parse_error_name(e.kind()), e.what(), e.line());
        } catch (const NoSpine& e) {
            fail("NoSpine", e.what());
        } catch (const DomainError& e) {
            fail("DomainError", e.what());
        } catch (const GraphError& e) {
            fail("GraphError", e.what());
        } catch (const PresentationError& e) {
            fail("PresentationError", e.what());
        } catch (const std::runtime_error& e) {
            fail("InputError", e.what());
        }
        return std::move(out_);
    }

private:
    const Options& opt_;
    Outcome out_;
    std::vector<std::string> sources_;

    Report& rep() { return out_.report; }
    json& payload() { return out_.report.payload; }
    void say(const std::string& line) { out_.text += line + "\n"; }

    void fail(const std::string& kind, const std::string& message, std::size_t line = 0) {
        rep().error = ErrorInfo{kind, message, line};
        out_.text.clear();
    }

    void load() {
        std::string all;
        if (opt_.in.empty()) sources_.push_back(read_source(""));
        for (const auto& p : opt_.in) sources_.push_back(read_source(p));
        for (const auto& s : sources_) all += s + '\x1f';
        rep().digest = input_digest(all + opt_.expr);
    }

    void load_expr_only() {
        if (opt_.expr.empty()) throw std::runtime_error(rep().command + " needs --expr");
        rep().digest = input_digest(opt_.expr);
    }

    // Parses source i as a graph and stops with the violations when invalid.
    std::optional<StratifoldGraph> graph(std::size_t i = 0) {
        if (looks_like_presentation(sources_.at(i)))
            throw std::runtime_error(rep().command + " needs a graph, got a presentation");
        auto g = parse_graph(sources_.at(i));
        rep().violations = validate(g);
        if (!rep().violations.empty()) {
            for (const auto& v : rep().violations)
                say(std::string("violation ") + rule_name(v.rule) + " at '" + v.subject + "': " + v.detail);
            return std::nullopt;
        }
        return g;
    }

    // A presentation, either given directly or as the natural presentation of a graph.
    std::optional<GroupPresentation> presentation(bool* from_graph = nullptr) {
        if (looks_like_presentation(sources_.at(0))) {
            if (from_graph) *from_graph = false;
            auto p = parse_presentation(sources_.at(0));
            p.check();
            return p;
        }
        if (from_graph) *from_graph = true;
        auto g = graph();
        if (!g) return std::nullopt;
        return natural_presentation(normalize(*g));
    }

    std::vector<Word> expr_words(const GroupPresentation& pres) {
        std::vector<Word> out;
        for (const auto& part : split(opt_.expr, ',')) {
            auto w = parse_word(part);
            for (const auto& s : w)
                if (!pres.has_generator(s.gen)) throw std::runtime_error("unknown generator '" + s.gen + "'");
            out.push_back(std::move(w));
        }
        return out;
    }

    json orders_json(const OrderMap& orders) {
        json j = json::object();
        for (const auto& [id, v] : orders) j[id] = verdict_json(v);
        return j;
    }

    void dispatch() {
        const auto& c = rep().command;
        if (c == "synth") return synth_cmd();
        if (c == "fclass" && opt_.in.empty()) return fclass_sig();
        load();
        if (c == "validate") return validate_cmd();
        if (c == "pi1") return pi1();
        if (c == "h1") return h1();
        if (c == "euler") return euler();
        if (c == "order") return order();
        if (c == "fclass") return fclass_graph();
        if (c == "holes") return holes();
        if (c == "q") return q();
        if (c == "obstruct") return obstruct();
        if (c == "recognize") return recognize_cmd();
        if (c == "delta") return delta();
        if (c == "tc") return tc();
        throw std::runtime_error("unknown command '" + c + "'");
    }

    void validate_cmd() {
        auto g = parse_graph(sources_.at(0));
        rep().violations = validate(g);
        payload() = {{"valid", rep().violations.empty()},
                     {"whites", g.whites().size()},
                     {"blacks", g.blacks().size()},
                     {"edges", g.edges().size()}};
        if (rep().violations.empty()) say("valid");
        for (const auto& v : rep().violations)
            say(std::string("violation ") + rule_name(v.rule) + " at '" + v.subject + "': " + v.detail);
    }

    void pi1() {
        bool from_graph = false;
        auto pres = presentation(&from_graph);
        if (!pres) return;
        payload()["presentation"] = presentation_json(*pres);
        if (from_graph) payload()["input_normalized"] = is_normalized(parse_graph(sources_.at(0)));
        if (!opt_.simplify) {
            out_.text += serialize_presentation(*pres);
            return;
        }
        auto s = simplify(*pres);
        json elim = json::object();
        for (const auto& [g, w] : s.eliminated) elim[g] = format_word(w);
        payload()["simplified"] = presentation_json(s.presentation);
        payload()["eliminated"] = elim;
        out_.text += serialize_presentation(s.presentation);
    }

    void h1() {
        auto pres = presentation();
        if (!pres) return;
        auto inv = abelianization(*pres);
        payload() = invariants_json(inv);
        say("H1 = " + inv.to_string());
        say("free_rank " + std::to_string(inv.free_rank));
        std::string t;
        for (const auto& d : inv.torsion) t += (t.empty() ? "" : " ") + d.get_str();
        say("torsion (" + t + ")");
    }

    void euler() {
        auto g = graph();
        if (!g) return;
        payload() = {{"euler", euler_characteristic(*g)}, {"cw_euler", cw_euler(*g)}};
        say("chi = " + std::to_string(euler_characteristic(*g)));
    }

    void order() {
        bool from_graph = false;
        auto pres = presentation(&from_graph);
        if (!pres) return;
        std::vector<Word> words;
        if (!opt_.expr.empty()) {
            words = expr_words(*pres);
        } else {
            for (const auto& g : pres->generators)
                if (!from_graph || g.role == Role::Black) words.push_back({{g.name, 1}});
        }
        json list = json::array();
        for (const auto& w : words) {
            auto v = element_order(*pres, w, opt_.budget);
            auto j = verdict_json(v);
            j["word"] = format_word(w);
            list.push_back(j);
            if (is_unknown(v)) rep().indeterminate = true;
            say(format_word(w) + ": " + verdict_string(v));
        }
        payload()["orders"] = list;
        payload()["budget"] = opt_.budget;
    }

    void fclass_report(const FSignature& sig) {
        auto cls = classify_fgroup(sig);
        auto order = fclass_order(cls);
        payload() = {{"signature", format_signature(sig)},
                     {"class", fclass_string(cls)},
                     {"finite", order.has_value()},
                     {"order", order ? json(*order) : json(nullptr)}};
        say(format_signature(sig) + ": " + fclass_string(cls));
    }

    void fclass_sig() {
        load_expr_only();
        fclass_report(parse_signature(opt_.expr));
    }

    void fclass_graph() {
        auto g = graph();
        if (!g) return;
        auto sig = match_fgroup_graph(*g);
        if (!sig) throw std::runtime_error("graph does not have the F-group shape");
        fclass_report(*sig);
    }

    void holes() {
        auto g = graph();
        if (!g) return;
        auto orders = black_orders(*g, opt_.budget);
        payload()["orders"] = orders_json(orders);
        auto wh = white_holes(*g, orders);
        if (auto* ind = std::get_if<Indeterminate>(&wh)) {
            rep().indeterminate = true;
            payload()["white_holes"] = nullptr;
            payload()["unresolved"] = ind->unresolved;
            say("indeterminate: unresolved black orders");
            return;
        }
        const auto& h = std::get<std::set<std::string>>(wh);
        payload()["white_holes"] = h;
        std::string line = "white holes:";
        for (const auto& id : h) line += " " + id;
        say(line);
    }

    void q() {
        auto g = graph();
        if (!g) return;
        auto res = q_graph(*g, opt_.budget);
        if (auto* ind = std::get_if<Indeterminate>(&res)) {
            rep().indeterminate = true;
            payload()["unresolved"] = ind->unresolved;
            say("indeterminate: unresolved black orders");
            return;
        }
        const auto& r = std::get<QResult>(res);
        json comps = json::array();
        for (const auto& c : r.components) {
            json j{{"graph", serialize_graph(c.graph)},
                   {"capped", c.capped},
                   {"closed_genus", c.closed_genus ? json(*c.closed_genus) : json(nullptr)}};
            comps.push_back(j);
        }
        auto ab = abelianization(r.presentation);
        payload() = {{"orders", orders_json(r.orders)},
                     {"deleted_blacks", r.deleted_blacks},
                     {"white_holes", r.white_holes},
                     {"q_components", comps},
                     {"presentation", presentation_json(r.presentation)},
                     {"abelianization", invariants_json(ab)}};
        say("Q components: " + std::to_string(r.components.size()));
        say("Q abelianized = " + ab.to_string());
    }

    void obstruct() {
        auto g = graph();
        if (!g) return;
        auto rpt = obstructions(*g, opt_.budget);
        rep().obstructions = rpt.found;
        rep().indeterminate = rpt.indeterminate.has_value();
        std::string verdict = !rpt.found.empty()        ? "obstructed"
                              : rpt.indeterminate ? "indeterminate"
                                                  : "no obstruction found";
        payload() = {{"verdict", verdict},
                     {"unresolved", rpt.indeterminate ? json(rpt.indeterminate->unresolved) : json::array()}};
        say(verdict);
        for (const auto& o : rpt.found)
            say(std::string("  ") + obstruction_name(o.kind) + " at '" + o.witness + "': " + o.evidence);
    }

    void synth_cmd() {
        load_expr_only();
        auto e = parse_expr(opt_.expr);
        auto g = synth(e);
        payload() = {{"expr", e.to_string()}, {"graph", serialize_graph(g)}};
        out_.text = serialize_graph(g);
    }

    void recognize_cmd() {
        auto g = graph();
        if (!g) return;
        auto r = recognize(*g);
        if (auto* e = std::get_if<ManifoldExpr>(&r)) {
            json s = json::array();
            for (const auto& m : e->summands()) s.push_back(summand_string(m));
            payload() = {{"canonical", true}, {"expr", e->to_string()}, {"summands", s}, {"reason", nullptr}};
            say(e->to_string());
        } else {
            const auto& nc = std::get<NotCanonical>(r);
            payload() = {{"canonical", false}, {"expr", nullptr}, {"summands", json::array()}, {"reason", nc.reason}};
            say("not canonical: " + nc.reason);
        }
    }

    void delta() {
        if (sources_.size() != 2) throw std::runtime_error("delta needs --in twice");
        auto a = graph(0);
        if (!a) return;
        auto b = graph(1);
        if (!b) return;
        std::string w1 = attachment_white(*a), w2 = attachment_white(*b);
        if (!opt_.expr.empty()) {
            auto parts = split(opt_.expr, ',');
            if (parts.size() != 2) throw std::runtime_error("delta --expr takes '<white1>,<white2>'");
            w1 = parts[0];
            w2 = parts[1];
        }
        auto g = delta_sum(*a, w1, *b, w2);
        payload() = {{"w1", w1}, {"w2", w2}, {"graph", serialize_graph(g)}};
        out_.text = serialize_graph(g);
    }

    void tc() {
        auto pres = presentation();
        if (!pres) return;
        std::vector<Word> sub;
        if (!opt_.expr.empty()) sub = expr_words(*pres);
        auto res = todd_coxeter(*pres, sub, opt_.budget);
        if (auto* ex = std::get_if<Exhausted>(&res)) {
            rep().indeterminate = true;
            payload() = {{"complete", false}, {"index", nullptr}, {"budget", ex->budget}};
            say("exhausted after " + std::to_string(ex->budget) + " coset definitions");
            return;
        }
        const auto& t = std::get<CosetTable>(res);
        payload() = {{"complete", true}, {"index", t.cosets()}, {"defined", t.defined}, {"budget", opt_.budget}};
        say("index " + std::to_string(t.cosets()) + " (" + std::to_string(t.defined) + " cosets defined)");
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2-stratifold graphs: fundamental groups, homology, spines and obstructions"};
    app.require_subcommand(1);
    Options opt;

    const std::vector<std::pair<std::string, std::string>> commands{
        {"validate", "check a graph file against the validity rules"},
        {"pi1", "natural presentation of the fundamental group"},
        {"h1", "first homology (abelianization)"},
        {"euler", "Euler characteristic"},
        {"order", "certified orders of elements (default: the black generators)"},
        {"fclass", "classify an F-group from a signature '<genus>:<m1>,...' or an F-group graph"},
        {"holes", "white holes"},
        {"q", "Q-quotient: graph surgery and presentation"},
        {"obstruct", "sound obstructions to being a 3-manifold spine group"},
        {"synth", "spine graph of a connected sum, e.g. 'L(3) # S2xS1'"},
        {"recognize", "recover the connected sum from a synthesized spine"},
        {"delta", "Delta-sum of two graphs (--in twice, optional --expr 'w1,w2')"},
        {"tc", "Todd-Coxeter enumeration (optional --expr subgroup words, comma separated)"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--in", opt.in, "input file (default stdin)");
        sub->add_option("--expr", opt.expr, "expression, signature or words");
        sub->add_option("--budget", opt.budget, "coset definition budget")->check(CLI::PositiveNumber);
        sub->add_flag("--json", opt.json, "emit the JSON report");
        sub->add_flag("--simplify", opt.simplify, "simplify the presentation (pi1)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    std::string name;
    for (auto* sub : app.get_subcommands()) name = sub->get_name();
    auto out = Command(name, opt).run();
    const int code = exit_code(out.report);
    if (opt.json) {
        std::cout << to_json(out.report).dump(2) << "\n";
    } else {
        std::cout << out.text;
        if (out.report.error) std::cerr << "error: " << out.report.error->kind << ": " << out.report.error->message << "\n";
    }
    return code;
}
