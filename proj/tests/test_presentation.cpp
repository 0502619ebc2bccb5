#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stratifold/io.hpp"
#include "support.hpp"

using namespace stratifold;

namespace {

StratifoldGraph lens_graph(long q) {
    StratifoldGraph g;
    g.add_white("w", 0).add_black("b").add_edge("e", "w", "b", q);
    return g;
}

std::vector<std::string> gen_names(const GroupPresentation& p) {
    std::vector<std::string> out;
    for (const auto& g : p.generators) out.push_back(g.name);
    return out;
}

std::vector<std::string> rel_strings(const GroupPresentation& p) {
    std::vector<std::string> out;
    for (const auto& r : p.relators) out.push_back(format_word(r));
    return out;
}

GroupPresentation pres(std::string_view text) { return parse_presentation(text); }

}  // namespace

TEST_CASE("word helpers") {
    Word w{{"a", 2}, {"a", -2}, {"b", 1}, {"c", 0}, {"b", 2}};
    CHECK(free_reduce(w) == Word{{"b", 3}});
    CHECK(cyclic_reduce({{"a", 1}, {"b", 2}, {"a", -1}}) == Word{{"b", 2}});
    CHECK(inverse({{"a", 1}, {"b", -2}}) == Word{{"b", 2}, {"a", -1}});
    CHECK(power({{"a", 1}, {"b", 1}}, 2) == Word{{"a", 1}, {"b", 1}, {"a", 1}, {"b", 1}});
    CHECK(power({{"a", 1}}, -3) == Word{{"a", -3}});
    CHECK(word_length({{"a", -3}, {"b", 2}}) == 5);
    CHECK(exponent_sum({{"a", 1}, {"b", 1}, {"a", -3}}, "a") == -2);
    CHECK(format_word({}) == "1");
    CHECK(format_word({{"a", 2}, {"b", -1}, {"c", 1}}) == "a^2 b^-1 c");
}

TEST_CASE("natural presentation of the lens graph") {
    auto p = natural_presentation(lens_graph(5));
    CHECK(gen_names(p) == std::vector<std::string>{"b.b", "s.e"});
    CHECK(rel_strings(p) == std::vector<std::string>{"s.e", "s.e^-1 b.b^5"});
    auto s = simplify(p);
    CHECK(gen_names(s.presentation) == std::vector<std::string>{"b.b"});
    CHECK(rel_strings(s.presentation) == std::vector<std::string>{"b.b^5"});
    CHECK(abelianization(p).torsion == std::vector<mpz_class>{5});
}

TEST_CASE("natural presentation requires a normalized valid graph") {
    CHECK_THROWS_AS(natural_presentation(lens_graph(-5)), PresentationError);
    CHECK_THROWS(natural_presentation(lens_graph(2)));
}

TEST_CASE("natural presentation of closed surfaces") {
    StratifoldGraph p2;
    p2.add_white("w", -1);
    auto p = natural_presentation(p2);
    CHECK(gen_names(p) == std::vector<std::string>{"y.w.1"});
    CHECK(rel_strings(p) == std::vector<std::string>{"y.w.1^2"});

    for (int g = 1; g <= 3; ++g) {
        StratifoldGraph s;
        s.add_white("w", g);
        auto q = natural_presentation(s);
        CHECK(q.generators.size() == static_cast<std::size_t>(2 * g));
        CHECK(q.relators.size() == 1);
        CHECK(abelianization(q).free_rank == static_cast<std::size_t>(2 * g));
    }
    for (int k = 1; k <= 3; ++k) {
        StratifoldGraph s;
        s.add_white("w", -k);
        auto q = natural_presentation(s);
        CHECK(q.generators.size() == static_cast<std::size_t>(k));
        CHECK(q.relators.size() == 1);
        auto ab = abelianization(q);
        CHECK(ab.free_rank == static_cast<std::size_t>(k - 1));
        CHECK(ab.torsion == std::vector<mpz_class>{2});
    }
}

TEST_CASE("natural presentation of the torus-with-disk spine is Z") {
    auto p = natural_presentation(normalize(s2xs1_spine()));
    auto ab = abelianization(p);
    CHECK(ab.free_rank == 1);
    CHECK(ab.torsion.empty());
    auto s = simplify(p).presentation;
    CHECK(gen_names(s) == std::vector<std::string>{"t.e2"});
    CHECK(s.relators.empty());
}

TEST_CASE("non-tree edges produce stable letters") {
    auto p = natural_presentation(normalize(p2xs1_spine()));
    CHECK(gen_names(p) == std::vector<std::string>{"b.c", "s.e1", "s.e2", "s.e3", "t.e2"});
    CHECK(rel_strings(p) == std::vector<std::string>{"s.e1 s.e2", "s.e3", "s.e1^-1 b.c", "t.e2^-1 s.e2 t.e2 b.c",
                                                     "s.e3^-1 b.c^2"});
}

TEST_CASE("fgroup presentation") {
    auto p = fgroup_presentation(FSignature::spherical({2, 2, 3}));
    CHECK(gen_names(p) == std::vector<std::string>{"c.1", "c.2", "c.3"});
    CHECK(rel_strings(p) == std::vector<std::string>{"c.1^2", "c.2^2", "c.3^3", "c.1 c.2 c.3"});
    auto p2 = fgroup_presentation(FSignature::nonorientable(1, {}));
    CHECK(rel_strings(p2) == std::vector<std::string>{"y.1^2"});
    auto t = fgroup_presentation(FSignature::orientable(1, {}));
    CHECK(rel_strings(t) == std::vector<std::string>{"y.1 y.2 y.1^-1 y.2^-1"});
    CHECK_THROWS_AS(fgroup_presentation(FSignature::spherical({1, 3})), PresentationError);
}

TEST_CASE("fgroup graph") {
    auto g = fgroup_graph(FSignature::nonorientable(1, {2, 2}));
    CHECK(is_valid(g));
    CHECK(g.whites().size() == 3);
    CHECK(g.blacks().size() == 2);
    CHECK(g.white("w").genus == -1);
    auto ab = abelianization(natural_presentation(g));
    CHECK(ab.free_rank == 0);
    CHECK(ab.torsion == std::vector<mpz_class>{2, 4});

    auto cyc = natural_presentation(fgroup_graph(FSignature::spherical({3})));
    auto t = todd_coxeter(cyc, {});
    REQUIRE(std::holds_alternative<CosetTable>(t));
    CHECK(std::get<CosetTable>(t).cosets() == 1);

    auto ico = simplify(natural_presentation(fgroup_graph(FSignature::spherical({2, 3, 5})))).presentation;
    auto t2 = todd_coxeter(ico, {});
    REQUIRE(std::holds_alternative<CosetTable>(t2));
    CHECK(std::get<CosetTable>(t2).cosets() == 60);
    CHECK_THROWS_AS(fgroup_graph(FSignature::spherical({2, 1})), PresentationError);
}

TEST_CASE("simplify examples") {
    auto s = simplify(pres("gen b black\ngen s boundary\nrel s\nrel s^-1 b^5\n"));
    CHECK(rel_strings(s.presentation) == std::vector<std::string>{"b^5"});
    CHECK(format_word(s.eliminated.at("s")) == "1");
    auto fixed = pres("gen a other\n");
    CHECK(simplify(fixed).presentation == fixed);
    CHECK(simplify(fixed).steps == 0);
}

TEST_CASE("simplify respects its budget") {
    auto p = natural_presentation(normalize(synth(parse_expr("L(3) # L(4) # S2xS1"))));
    auto s = simplify(p, 1);
    CHECK(s.exhausted);
    CHECK(s.steps == 1);
    CHECK(abelianization(s.presentation) == abelianization(p));
}

TEST_CASE("simplify of fgroup graphs gives the F-group presentation up to renaming") {
    std::mt19937 rng(21);
    for (int i = 0; i < 20; ++i) {
        FSignature sig;
        sig.genus = static_cast<int>(testing::pick(rng, -2, 2));
        const long p = testing::pick(rng, sig.genus == 0 ? 1 : 0, 4);
        for (long k = 0; k < p; ++k) sig.periods.push_back(testing::pick(rng, 2, 7));
        auto s = simplify(natural_presentation(fgroup_graph(sig))).presentation;
        INFO(format_signature(sig));
        if (sig.genus == 0 && p == 1) {
            // One cone point on a sphere: simplify reaches the trivial group outright.
            CHECK(s.generators.empty());
            auto t = todd_coxeter(fgroup_presentation(sig), {});
            REQUIRE(std::holds_alternative<CosetTable>(t));
            CHECK(std::get<CosetTable>(t).cosets() == 1);
        } else {
            CHECK(testing::same_up_to_renaming(s, fgroup_presentation(sig)));
        }
    }
}

TEST_CASE("simplify keeps the abelianization on random graphs") {
    std::mt19937 rng(22);
    for (int i = 0; i < 100; ++i) {
        auto g = normalize(testing::random_graph(rng));
        auto p = natural_presentation(g);
        auto s = simplify(p);
        CHECK(s.presentation.generators.size() <= p.generators.size());
        CHECK(abelianization(s.presentation) == abelianization(p));
    }
}

TEST_CASE("rewrite maps words into the surviving generators") {
    auto p = natural_presentation(lens_graph(5));
    auto s = simplify(p);
    auto w = s.rewrite({{"s.e", 1}, {"b.b", 2}});
    CHECK(w == Word{{"b.b", 2}});
}

TEST_CASE("retract bound: free rank of H1 is at least the cycle rank") {
    std::mt19937 rng(23);
    for (int i = 0; i < 200; ++i) {
        auto g = testing::random_graph(rng);
        auto ab = abelianization(natural_presentation(normalize(g)));
        CHECK(static_cast<long>(ab.free_rank) >= g.cycle_rank());
    }
}

TEST_CASE("q presentation examples") {
    auto fig = fgroup_graph(FSignature::nonorientable(1, {2, 2}));
    auto orders = black_orders(fig);
    auto holes = white_holes(fig, orders);
    REQUIRE(std::holds_alternative<std::set<std::string>>(holes));
    auto q = q_presentation(fig, orders, std::get<std::set<std::string>>(holes));
    REQUIRE(std::holds_alternative<GroupPresentation>(q));
    auto qp = std::get<GroupPresentation>(q);
    CHECK(abelianization(qp).to_string() == "Z/2");
    CHECK(gen_names(qp) == gen_names(natural_presentation(fig)));
    for (std::size_t i = natural_presentation(fig).relators.size(); i < qp.relators.size(); ++i)
        CHECK(word_length(qp.relators[i]) == 1);

    auto lens = lens_graph(5);
    auto lq = q_presentation(lens, black_orders(lens), {});
    CHECK(abelianization(std::get<GroupPresentation>(lq)).trivial());

    auto torus = s2xs1_spine();
    auto tq = q_presentation(torus, black_orders(torus), {});
    auto tab = abelianization(std::get<GroupPresentation>(tq));
    CHECK(tab.free_rank == 1);
    CHECK(tab.torsion.empty());

    CHECK(std::holds_alternative<Indeterminate>(q_presentation(lens, {{"b", Unknown{5}}}, {})));
    CHECK_THROWS_AS(q_presentation(lens, {}, {}), GraphError);
    CHECK_THROWS_AS(q_presentation(lens, black_orders(lens), {"nope"}), GraphError);
}
