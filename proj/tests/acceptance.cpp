// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <iostream>

#include "stratifold/io.hpp"
#include "support.hpp"

using namespace stratifold;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

AbelianInvariants h1(const StratifoldGraph& g) { return abelianization(natural_presentation(normalize(g))); }

Outcome finite_fgroups() {
    Outcome o;
    std::vector<std::pair<std::vector<long>, std::uint64_t>> table;
    for (long m = 2; m <= 8; ++m) table.push_back({{2, 2, m}, static_cast<std::uint64_t>(2 * m)});
    table.push_back({{2, 3, 3}, 12});
    table.push_back({{2, 3, 4}, 24});
    table.push_back({{2, 3, 5}, 60});
    double worst = 0;
    for (const auto& [periods, order] : table) {
        auto sig = FSignature::spherical(periods);
        auto t0 = Clock::now();
        auto t = todd_coxeter(fgroup_presentation(sig), {});
        const double dt = seconds_since(t0);
        worst = std::max(worst, dt);
        auto* table_ = std::get_if<CosetTable>(&t);
        if (!table_ || table_->cosets() != order) o.fail(format_signature(sig) + ": enumeration disagrees");
        if (fclass_order(classify_fgroup(sig)) != order) o.fail(format_signature(sig) + ": classification disagrees");
        if (dt >= 1.0) o.fail(format_signature(sig) + ": took " + std::to_string(dt) + " s");
    }
    if (o.pass) o.detail = "10 signatures, slowest " + std::to_string(worst) + " s";
    return o;
}

Outcome lens_spines() {
    Outcome o;
    for (long q = 2; q <= 9; ++q) {
        auto t0 = Clock::now();
        auto g = synth(ManifoldExpr({Summand::lens(q)}));
        auto pres = natural_presentation(normalize(g));
        auto ab = abelianization(pres);
        if (ab.free_rank != 0 || ab.torsion != std::vector<mpz_class>{q}) o.fail("L(" + std::to_string(q) + "): H1 " + ab.to_string());
        // L(2)'s spine is the projective plane: its core generator is y, not b.
        Word core = q == 2 ? Word{{surface_gen("m1.w", 1), 1}} : Word{{black_gen("m1.b"), 1}};
        auto v = element_order(pres, core);
        auto* f = std::get_if<Finite>(&v);
        if (!f || f->order != static_cast<std::uint64_t>(q))
            o.fail("L(" + std::to_string(q) + "): order " + verdict_string(v));
        if (seconds_since(t0) >= 1.0) o.fail("L(" + std::to_string(q) + ") too slow");
    }
    if (o.pass) o.detail = "q = 2..9 (q = 2 checks the order of y on the RP^2 spine)";
    return o;
}

Outcome fig1_quotient() {
    Outcome o;
    int cases = 0;
    for (int p = 2; p <= 3; ++p) {
        for (int mask = 0; mask < (1 << p); ++mask) {
            std::vector<long> periods;
            for (int i = 0; i < p; ++i) periods.push_back(mask >> i & 1 ? 3 : 2);
            auto g = fgroup_graph(FSignature::nonorientable(1, periods));
            auto orders = black_orders(g);
            auto holes = white_holes(g, orders);
            auto* hs = std::get_if<std::set<std::string>>(&holes);
            if (!hs || !hs->empty()) {
                o.fail("white holes not empty");
                continue;
            }
            auto q = q_presentation(g, orders, *hs);
            auto* qp = std::get_if<GroupPresentation>(&q);
            auto ab = qp ? abelianization(*qp) : AbelianInvariants{};
            if (!qp || ab.free_rank != 0 || ab.torsion != std::vector<mpz_class>{2})
                o.fail(format_signature(FSignature::nonorientable(1, periods)) + ": Q abelianized " + ab.to_string());
            ++cases;
        }
    }
    if (o.pass) o.detail = std::to_string(cases) + " signatures give Z/2 with no white holes";
    return o;
}

Outcome primitives() {
    Outcome o;
    for (const auto& g : {s2xs1_spine(), s2xs1_twisted_spine()}) {
        auto ab = h1(g);
        if (ab.free_rank != 1 || !ab.torsion.empty()) o.fail("S2-bundle spine H1 " + ab.to_string());
    }
    auto p = h1(p2xs1_spine());
    if (p.free_rank != 1 || p.torsion != std::vector<mpz_class>{2}) o.fail("P2xS1 H1 " + p.to_string());
    auto v = element_order(natural_presentation(normalize(p2xs1_spine())), {{black_gen("c"), 1}});
    if (!is_finite(v) || std::get<Finite>(v).order != 2) o.fail("P2xS1 order of b " + verdict_string(v));
    if (are_isomorphic(s2xs1_spine(), s2xs1_twisted_spine())) o.fail("S2-bundle spines are move-isomorphic");
    if (o.pass) o.detail = "Z, Z, Z + Z/2, ord(b) = 2, bundles distinct";
    return o;
}

Outcome delta_laws() {
    Outcome o;
    std::mt19937 rng(1005);
    auto t0 = Clock::now();
    for (int i = 0; i < 100; ++i) {
        auto a = primitive_spine(testing::random_primitive(rng));
        auto b = primitive_spine(testing::random_primitive(rng));
        auto d = delta_sum(a, attachment_white(a), b, attachment_white(b));
        if (h1(d) != direct_sum(h1(a), h1(b))) o.fail("H1 not additive");
        if (euler_characteristic(d) != euler_characteristic(a) + euler_characteristic(b) - 1) o.fail("chi law fails");
    }
    const double dt = seconds_since(t0);
    if (dt >= 10.0) o.fail("took " + std::to_string(dt) + " s");
    if (o.pass) o.detail = "100 pairs in " + std::to_string(dt) + " s";
    return o;
}

Outcome round_trip() {
    Outcome o;
    std::mt19937 rng(1006);
    for (int i = 0; i < 50; ++i) {
        auto e = testing::random_expr(rng, 5);
        auto r = recognize(synth(e));
        auto* got = std::get_if<ManifoldExpr>(&r);
        if (!got || !(*got == e)) o.fail(e.to_string() + " not recovered");
    }
    if (o.pass) o.detail = "50 expressions";
    return o;
}

Outcome obstruction_soundness() {
    Outcome o;
    std::mt19937 rng(1007);
    for (int i = 0; i < 30; ++i) {
        auto e = testing::random_expr(rng, 4);
        auto r = obstructions(synth(e));
        if (!r.found.empty()) o.fail(e.to_string() + " obstructed");
        if (r.indeterminate) o.fail(e.to_string() + " indeterminate");
    }
    StratifoldGraph genus2;
    genus2.add_white("s", 2);
    const std::vector<std::pair<std::string, StratifoldGraph>> bad{
        {"(2,3,7)", fgroup_graph(FSignature::spherical({2, 3, 7}))},
        {"(-1;2,2)", fgroup_graph(FSignature::nonorientable(1, {2, 2}))},
        {"genus 2", genus2},
    };
    std::string found;
    for (const auto& [name, g] : bad) {
        auto r = obstructions(g);
        if (r.found.empty()) o.fail(name + " not obstructed");
        else found += name + ":" + obstruction_name(r.found.front().kind) + " ";
    }
    if (o.pass) o.detail = "30 synth outputs clean; " + found;
    return o;
}

Outcome euler_cross_check() {
    Outcome o;
    std::mt19937 rng(1008);
    for (int i = 0; i < 200; ++i) {
        auto g = testing::random_graph(rng);
        if (euler_characteristic(g) != cw_euler(g)) o.fail(serialize_graph(g));
    }
    if (o.pass) o.detail = "200 graphs";
    return o;
}

Outcome retract_bound() {
    Outcome o;
    std::mt19937 rng(1009);
    for (int i = 0; i < 200; ++i) {
        auto g = testing::random_graph(rng);
        if (static_cast<long>(h1(g).free_rank) < g.cycle_rank()) o.fail(serialize_graph(g));
    }
    if (o.pass) o.detail = "200 graphs";
    return o;
}

Outcome snf_stability() {
    Outcome o;
    std::mt19937 rng(1010);
    for (int i = 0; i < 50; ++i) {
        const std::size_t r = testing::pick(rng, 1, 6), c = testing::pick(rng, 1, 6);
        auto m = testing::random_matrix(rng, r, c, 9);
        auto base = smith_normal_form(m).invariants;
        auto moved = smith_normal_form(testing::random_unimodular(rng, r) * m * testing::random_unimodular(rng, c));
        if (!(moved.invariants == base)) o.fail("trial " + std::to_string(i));
    }
    if (o.pass) o.detail = "50 trials";
    return o;
}

Outcome s3_rejection() {
    Outcome o;
    try {
        synth(parse_expr("S3"));
        o.fail("no error");
    } catch (const NoSpine&) {
        o.detail = "NoSpine";
    } catch (const std::exception& e) {
        o.fail(std::string("wrong error: ") + e.what());
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
        {"finite F-group table", finite_fgroups},
        {"lens spines", lens_spines},
        {"Q-quotient of the projective-plane family", fig1_quotient},
        {"spine primitives", primitives},
        {"Delta-sum laws", delta_laws},
        {"synth/recognize round-trip", round_trip},
        {"obstruction soundness", obstruction_soundness},
        {"Euler cross-check", euler_cross_check},
        {"retract bound", retract_bound},
        {"SNF stability", snf_stability},
        {"S3 rejection", s3_rejection},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
        failed += !o.pass;
    }
    return failed ? 1 : 0;
}
