#include "doctest.h"

#include "json.hpp"
#include "knotss/chainledger.hpp"

using namespace knotss;

namespace {

Poly v(const std::string& name) { return Poly::var(name); }

MapComponent pt_x(Poly qv = Poly()) { return {Poly(1), Poly(), Poly(), std::move(qv)}; }
MapComponent pt_y(Poly qv = Poly()) { return {Poly(), Poly(1), Poly(), std::move(qv)}; }

PGraph on4(const char* edges) { return PGraph::parse(Partition::discrete(4), edges); }

LedgerContext only(const std::string& kind) {
    return LedgerContext(std::vector<ZeroFact>{{"only-" + kind, kind, "test", ""}});
}

}  // namespace

TEST_CASE("reduce_mod") {
    CHECK(reduce_mod(mpq_class(1, 2), 3) == 2);
    CHECK(reduce_mod(mpq_class(-1), 3) == 2);
    CHECK(reduce_mod(mpq_class(-1, 2), 3) == 1);
    CHECK(reduce_mod(mpq_class(7), 2) == 1);
    CHECK_THROWS_AS(reduce_mod(mpq_class(1, 3), 3), PreconditionError);
    CHECK_THROWS_AS(reduce_mod(mpq_class(1), 1), PreconditionError);
}

TEST_CASE("canonical form: renaming sign, transpose, torsion") {
    // (x + s v, y + r v, y, x) with parameters s, r
    MapExpr m({pt_x(v("s")), pt_y(v("r")), pt_y(), pt_x()});
    CanonicalForm a = canonicalize(m, {"s", "r"});
    CanonicalForm b = canonicalize(m, {"r", "s"});
    CHECK(a.map == b.map);
    CHECK(a.sign == -b.sign);
    CHECK_FALSE(a.torsion);

    CanonicalForm c = canonicalize(m.transposed(), {"s", "r"});
    CHECK(c.map == a.map);
    CHECK(c.sign == a.sign);

    // symmetric in the two parameters: the odd swap fixes the term
    MapExpr sym({pt_x(v("s") + v("r")), pt_y(), pt_y(), pt_x()});
    CHECK(canonicalize(sym, {"s", "r"}).torsion);

    LedgerChain ch;
    ch.add(make_term(1, m, {"s", "r"}, on4("(1,4)(2,3)")));
    ch.add(make_term(1, m, {"r", "s"}, on4("(1,4)(2,3)")));
    CHECK(ch.is_zero());
}

TEST_CASE("terms constant in a t-parameter are degenerate") {
    MapExpr m({pt_x(), pt_y(), pt_y(), pt_x()});
    LedgerChain ch;
    ch.add(make_term(1, m, {"t"}, on4("(1,4)")));
    CHECK(ch.is_zero());
    ch.add(make_term(1, straight_homotopy(m, m.transposed(), "t"), {"t"}, on4("(1,4)")));
    CHECK(ch.size() == 1);
}

TEST_CASE("contraction routes agree at s = 0") {
    PGraph g1 = on4("(1,4)(2,3)");
    MapExpr f = condensed_map(g1);
    auto dg = delta_graph(1, g1);
    REQUIRE(dg);
    MapExpr a = contraction(f, g1, {2, 3}, "s").restrict("s", 0);
    MapExpr b = contraction(f, dg->graph, {1, 2}, "s").restrict("s", 0);
    CHECK(canonicalize(a, {}).map == canonicalize(b, {}).map);
    // for the two graphs the contractions themselves differ
    CHECK_FALSE(contraction(f, g1, {2, 3}, "s") == contraction(f, on4("(1,4)(2,3)(1,2)"), {2, 3}, "s"));
}

TEST_CASE("D^2 = 0 and the char-2 cycles") {
    auto ctx = LedgerContext::from_file();
    for (const char* g : {"(1,4)(2,3)", "(1,3)(2,4)", "(1,2)(3,4)"}) {
        LedgerChain c = chain_cycle_ch2(on4(g));
        CHECK(boundary_D(ctx, c, Convention::Char2).equal_mod(LedgerChain{}, 2));
        LedgerChain dd = boundary_D(ctx, boundary_D(ctx, c, Convention::Char3), Convention::Char3);
        CHECK(dd.equal_mod(LedgerChain{}, 0));
    }
}

TEST_CASE("delta_i uses the sign of the graph relabelling") {
    auto ctx = LedgerContext::from_file();
    Partition d5 = Partition::discrete(5);
    PGraph g = PGraph::parse(d5, "(1,4)(2,5)(3,4)");
    LedgerChain c;
    c.add(make_term(1, condensed_map(g), {}, g));
    for (int i = 1; i <= 4; ++i) {
        auto img = delta_graph(i, g);
        LedgerChain r = apply_delta_i(ctx, c, i);
        if (!img) {
            CHECK(r.is_zero());
            continue;
        }
        for (const auto& [k, t] : r.terms()) CHECK(t.coef == img->sign);
    }
}

TEST_CASE("delta kills a boundary term whose support it kills") {
    auto ctx = LedgerContext::from_file();
    PGraph g = on4("(1,3)(2,3)");
    // (y, x, x, x) with pieces 2, 3 apart: only the support makes delta_0 vanish
    LedgerChain c;
    c.add(make_term(1, MapExpr({pt_y(), pt_x(), pt_y(), pt_x()}), {}, g));
    LedgerChain bd = boundary_D(ctx, c, Convention::Char2);
    REQUIRE(bd.size() == 2);
    CHECK(apply_delta_i(ctx, bd, 0).is_zero());
    CHECK(apply_delta_i(ctx, c, 0).is_zero());
}

TEST_CASE("contraction collapse, with and without the contraction parameter") {
    PGraph g = on4("(1,2)(1,3)");
    MapExpr f = condensed_map(g);
    auto ctx = only("contraction-collapse");
    LedgerTerm base = make_term(1, f, {}, g);
    CHECK(ctx.delta_kill(base, 2) == std::optional<std::string>("only-contraction-collapse"));
    CHECK_FALSE(ctx.delta_kill(base, 1));
    LedgerTerm con = make_term(1, contraction(f, g, {1, 2}, "s"), {"s"}, g.remove_edge(1));
    CHECK(ctx.delta_kill(con, 2));
    REQUIRE(ctx.uses().size() == 2);
    CHECK(ctx.uses()[0].target == Partition::discrete(4).merge(2));
    for (const auto& r : ctx.attack_uses(200, 5)) CHECK(r.pass());
}

TEST_CASE("commutation on single condensed terms, every graph on [4]") {
    auto ctx = LedgerContext::from_file();
    Partition d = Partition::discrete(4);
    std::size_t checked = 0;
    for (const auto& g : enumerate_graphs(d)) {
        if (g.edge_count() < 2) continue;
        LedgerChain c;
        c.add(make_term(1, condensed_map(g), {}, g));
        for (auto conv : {Convention::Char2, Convention::Char3}) {
            LedgerChain a = boundary_D(ctx, apply_delta(ctx, c), conv);
            LedgerChain b = apply_delta(ctx, boundary_D(ctx, c, conv));
            CHECK_MESSAGE(a.equal_mod(b, 0), g.to_string());
        }
        ++checked;
    }
    CHECK(checked > 0);
}

TEST_CASE("shipped cases") {
    std::vector<std::string> names = case_names();
    CHECK(names == std::vector<std::string>{"ch2-cycles", "ch2-bounding", "ch2-d2-survivors", "ch3-cycles",
                                            "ch3-first-bounding", "ch3-3term"});
    CaseOptions opt;
    opt.attack_samples = 0;
    for (const auto& n : names) {
        CaseReport r = run_case(n, opt);
        CHECK_MESSAGE(r.pass(), n);
        CHECK(r.d_squared_zero);
        CHECK_MESSAGE(r.delta_commutes, n);
        CHECK(r.zero_fact_uses > 0);
        for (const auto& id : r.identities) CHECK_MESSAGE(id.pass, (n + ": " + id.label));
        auto j = nlohmann::json::parse(r.to_json());
        CHECK(j.at("case") == n);
    }
    CHECK(run_case("ch2-bounding", opt).characteristic == 2);
    CHECK(run_case("ch3-3term", opt).characteristic == 3);
    CHECK_THROWS_AS(run_case("ch4-nothing", opt), PreconditionError);
}

TEST_CASE("char-2 survivors are the two psi terms over G0") {
    CaseOptions opt;
    opt.attack_samples = 0;
    CaseReport r = run_case("ch2-d2-survivors", opt);
    REQUIRE(!r.identities.empty());
    CHECK(r.identities[0].pass);
    CHECK(r.identities[0].lhs_terms == 2);
}

TEST_CASE("zero facts survive a short attack") {
    CaseOptions opt;
    opt.attack_samples = 20;
    opt.seed = 11;
    CaseReport r = run_case("ch2-bounding", opt);
    REQUIRE(!r.attacks.empty());
    for (const auto& a : r.attacks) CHECK_MESSAGE(a.pass(), a.lemma);
}
