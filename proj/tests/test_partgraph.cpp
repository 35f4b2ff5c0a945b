#include "doctest.h"

#include <algorithm>

#include "knotss/partgraph.hpp"

using namespace knotss;

namespace {

const Field QQ = Field::rationals();

// Parity of the permutation taking all edges of G, in lexicographic order, to
// the lexicographic order of their images.
int full_permutation_sign(int i, const PGraph& g) {
    auto image = [i](int v) { return v <= i ? v : v - 1; };
    std::vector<Edge> imgs;
    for (const auto& [a, b] : g.edges()) imgs.emplace_back(image(a), image(b));
    int inv = 0;
    for (std::size_t x = 0; x < imgs.size(); ++x)
        for (std::size_t y = x + 1; y < imgs.size(); ++y)
            if (imgs[y] < imgs[x]) ++inv;
    return inv % 2 ? -1 : 1;
}

}  // namespace

TEST_CASE("partition counts") {
    for (int n = 1; n <= 8; ++n) CHECK(enumerate_partitions(n).size() == (std::size_t{1} << (n + 1)) - 1);
    CHECK(enumerate_partitions(2).size() == 7);
}

TEST_CASE("partition parsing and printing") {
    Partition p = Partition::parse("{{0},{12},{345}}");
    CHECK(p.n() == 4);
    CHECK(p.sizes() == std::vector<int>{1, 2, 3});
    CHECK(p.to_string() == "{{0},{12},{345}}");
    CHECK_THROWS_AS(Partition::parse("{{0},{2}}"), PreconditionError);
    CHECK_THROWS_AS(Partition::parse("{{012}}"), PreconditionError);
}

TEST_CASE("subdivision examples") {
    Partition p = Partition::parse("{{0},{12},{345}}");
    Partition q = Partition::parse("{{0},{12},{3},{45}}");
    auto all = enumerate_partitions(4);
    CHECK(std::find(all.begin(), all.end(), p) != all.end());
    CHECK(std::find(all.begin(), all.end(), q) != all.end());
    CHECK(std::find(all.begin(), all.end(), Partition::discrete(4)) != all.end());
    CHECK(is_subdivision(p, q));
    CHECK_FALSE(is_subdivision(q, p));
    CHECK_FALSE(is_subdivision(p, p));
    for (const auto& x : all)
        if (!(x == Partition::discrete(4))) CHECK(is_subdivision(x, Partition::discrete(4)));
}

TEST_CASE("subdivision is a strict partial order") {
    auto all = enumerate_partitions(4);
    for (const auto& a : all) {
        CHECK_FALSE(is_subdivision(a, a));
        for (const auto& b : all) {
            if (!is_subdivision(a, b)) continue;
            CHECK_FALSE(is_subdivision(b, a));
            for (const auto& c : all)
                if (is_subdivision(b, c)) CHECK(is_subdivision(a, c));
        }
    }
}

TEST_CASE("delta on the two-edge graphs on [5]") {
    Partition d5 = Partition::discrete(4);
    PGraph g1 = PGraph::parse(d5, "(1,4)(2,3)");
    PGraph g2 = PGraph::parse(d5, "(1,3)(2,4)");
    auto a = delta_graph(1, g1), b = delta_graph(1, g2);
    REQUIRE(a);
    REQUIRE(b);
    CHECK(a->graph == b->graph);
    CHECK(a->graph.to_string() == "(1,2)(1,3)");
    auto c = delta_graph(3, g1), d = delta_graph(3, g2);
    REQUIRE(c);
    REQUIRE(d);
    CHECK(c->graph == d->graph);
    CHECK_FALSE(delta_graph(2, g1));
    CHECK_FALSE(delta_graph(2, PGraph::parse(d5, "(2,3)")));
}

TEST_CASE("delta sign on three edges over [6]") {
    PGraph g3 = PGraph::parse(Partition::discrete(5), "(1,4)(2,5)(3,4)");
    auto img = delta_graph(2, g3);
    REQUIRE(img);
    CHECK(img->sign == -1);
    auto img1 = delta_graph(2, g3.remove_edge(1));
    REQUIRE(img1);
    CHECK(img1->sign == -1);
}

TEST_CASE("extreme pieces kill delta") {
    PGraph g = PGraph::parse(Partition::discrete(3), "(1,3)");
    CHECK_FALSE(delta_graph(0, g));
    CHECK_FALSE(delta_graph(3, g));
    CHECK(delta_graph(1, g));
    CHECK(delta_graph(0, PGraph::parse(Partition::discrete(3), "(2,3)")));
}

TEST_CASE("restricted and full permutation signs agree") {
    for (int n = 1; n <= 4; ++n)
        for (const auto& p : enumerate_partitions(n))
            for (const auto& g : enumerate_graphs(p))
                for (int i = 0; i <= p.pieces() - 2; ++i) {
                    auto img = delta_graph(i, g);
                    if (img) CHECK(img->sign == full_permutation_sign(i, g));
                }
}

TEST_CASE("cech boundary") {
    Partition d5 = Partition::discrete(4);
    PGraph g1 = PGraph::parse(d5, "(1,4)(2,3)");
    ShapeChain expect(QQ);
    expect.add(PGraph::parse(d5, "(2,3)"), Scalar(QQ, 1));
    expect.add(PGraph::parse(d5, "(1,4)"), Scalar(QQ, -1));
    CHECK(cech_boundary(single(QQ, g1)) == expect);
    CHECK(cech_boundary(single(QQ, PGraph(d5, {}))).is_zero());
    CHECK(cech_boundary(cech_boundary(single(QQ, PGraph::parse(Partition::discrete(5), "(1,2)(1,4)(3,4)")))).is_zero());
}

TEST_CASE("delta of the edgeless discrete graph is the alternating sum of merges") {
    Partition d = Partition::discrete(3);
    ShapeChain expect(QQ);
    for (int i = 0; i <= d.pieces() - 2; ++i) expect.add(PGraph(d.merge(i), {}), Scalar(QQ, i % 2 ? -1 : 1));
    CHECK(shape_delta(single(QQ, PGraph(d, {}))) == expect);
}

TEST_CASE("kills read off boundary terms break commutation") {
    // delta_0 kills (1,3) on [4] but not its boundary, the edgeless graph.
    PGraph g = PGraph::parse(Partition::discrete(3), "(1,3)");
    ShapeChain x = single(QQ, g);
    CHECK_FALSE(shape_delta(cech_boundary(x)) == cech_boundary(shape_delta(x)));
    CHECK(shape_delta_supported(cech_boundary(x), g) == cech_boundary(shape_delta(x)));
}

TEST_CASE("triple complex commutation, exhaustive") {
    for (int n = 1; n <= 4; ++n) {
        CommutationReport r = verify_commutation(n);
        CHECK_MESSAGE(r.pass(), "n=" << n << " " << (r.examples.empty() ? "" : r.examples[0]));
        if (n >= 3) CHECK(r.naive_mismatches > 0);
    }
    CommutationReport r5 = verify_commutation(5, true);
    CHECK(r5.graphs_checked == 1024);
    CHECK(r5.pass());
}
