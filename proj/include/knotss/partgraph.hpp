#pragma once

// Interval partitions of [n+1], graphs on their internal pieces, the
// subdivision maps delta_i and the Cech differential at shape level.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "knotss/exactalg.hpp"

namespace knotss {

/** Consecutive pieces of {0..n+1}, stored as piece sizes. */
class Partition {
public:
    /** PreconditionError unless sizes are positive, sum to n+2, and there are at least two. */
    Partition(int n, std::vector<int> sizes);
    static Partition discrete(int n);
    /** Parses "{{0},{12},{3},{45}}"; elements are single digits. */
    static Partition parse(std::string_view text);

    int n() const { return n_; }
    int pieces() const { return static_cast<int>(sizes_.size()); }
    const std::vector<int>& sizes() const { return sizes_; }
    int first(int k) const;
    int last(int k) const;
    /** Piece index containing element e. */
    int piece_of(int e) const;
    /** delta_i: merges pieces i and i+1, 0 <= i <= pieces - 2. */
    Partition merge(int i) const;

    std::string to_string() const;
    auto operator<=>(const Partition&) const = default;

private:
    int n_;
    std::vector<int> sizes_;
};

/** All partitions of [n+1], 1 <= n <= 8, in lexicographic order of sizes. */
std::vector<Partition> enumerate_partitions(int n);

/** Q != P and every piece of Q lies in a piece of P. */
bool is_subdivision(const Partition& p, const Partition& q);

using Edge = std::pair<int, int>;

/** Edges between internal pieces (by index), a < b, kept sorted. */
class PGraph {
public:
    PGraph(Partition p, std::vector<Edge> edges);
    /** "(1,4)(2,3)" on the given partition; "()" or "" for no edges. */
    static PGraph parse(const Partition& p, std::string_view edges);

    const Partition& partition() const { return p_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }
    /** Removes the k-th edge, 1-based. */
    PGraph remove_edge(std::size_t k) const;

    std::string to_string() const;
    auto operator<=>(const PGraph&) const = default;

private:
    Partition p_;
    std::vector<Edge> edges_;
};

/** Connected-component label of every piece; labels are the smallest piece index in the component. */
std::vector<int> component_labels(const PGraph& g);

/** Every graph on the internal pieces of p. */
std::vector<PGraph> enumerate_graphs(const Partition& p);

struct DeltaImage {
    PGraph graph;
    int sign;
};

/**
 * delta_i G: absent when the merged graph has a loop, a double edge, or an
 * edge at the minimum or maximum piece. The sign is that of the permutation
 * induced on the edges whose smaller end is piece i or i+1.
 */
std::optional<DeltaImage> delta_graph(int i, const PGraph& g);

/** Formal sum of labelled graphs with nonzero coefficients. */
class ShapeChain {
public:
    explicit ShapeChain(Field f) : f_(f) {}
    Field field() const { return f_; }
    void add(const PGraph& g, const Scalar& c);
    const std::map<PGraph, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    ShapeChain operator-(const ShapeChain& o) const;
    bool operator==(const ShapeChain& o) const { return f_ == o.f_ && terms_ == o.terms_; }
    std::string to_string() const;

private:
    Field f_;
    std::map<PGraph, Scalar> terms_;
};

ShapeChain single(Field f, const PGraph& g);

/** sum_k (-1)^(k-1) d_k over edges in lexicographic order. */
ShapeChain cech_boundary(const ShapeChain& c);
/** sum_i (-1)^i delta_i with absent images dropped. */
ShapeChain shape_delta(const ShapeChain& c);

/**
 * delta applied to chains carried by T_support: delta_i vanishes whenever it
 * kills the support graph, since the collapse sends all of T_support to the
 * base point.
 */
ShapeChain shape_delta_supported(const ShapeChain& c, const PGraph& support);

struct CommutationReport {
    int n = 0;
    bool discrete_only = false;
    std::size_t graphs_checked = 0;
    /** delta d != d delta with kills read off the support graph. */
    std::size_t counterexamples = 0;
    std::vector<std::string> examples;
    /** Mismatches when kills are read off each boundary term instead. */
    std::size_t naive_mismatches = 0;
    std::size_t d_squared_failures = 0;
    std::size_t delta_squared_failures = 0;
    bool pass() const { return counterexamples == 0 && d_squared_failures == 0 && delta_squared_failures == 0; }
};

/** Exhaustive check over every partition and graph (n <= 5), or over the discrete partition only. */
CommutationReport verify_commutation(int n, bool discrete_only = false);

}  // namespace knotss
