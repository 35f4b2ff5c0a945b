#include "knotss/partgraph.hpp"

#include <algorithm>
#include <numeric>

namespace knotss {

Partition::Partition(int n, std::vector<int> sizes) : n_(n), sizes_(std::move(sizes)) {
    if (n < 0) throw PreconditionError("partition needs n >= 0");
    if (sizes_.size() < 2) throw PreconditionError("a partition has at least two pieces");
    for (int s : sizes_)
        if (s <= 0) throw PreconditionError("piece sizes must be positive");
    if (std::accumulate(sizes_.begin(), sizes_.end(), 0) != n + 2)
        throw PreconditionError("piece sizes must sum to n+2");
}

Partition Partition::discrete(int n) { return Partition(n, std::vector<int>(static_cast<std::size_t>(n + 2), 1)); }

Partition Partition::parse(std::string_view text) {
    std::vector<std::vector<int>> pieces;
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == ',')) ++pos;
    };
    skip();
    if (pos >= text.size() || text[pos] != '{') throw PreconditionError("partition must start with '{'");
    ++pos;
    for (;;) {
        skip();
        if (pos >= text.size()) throw PreconditionError("unterminated partition");
        if (text[pos] == '}') break;
        if (text[pos] != '{') throw PreconditionError("expected '{' for a piece");
        ++pos;
        std::vector<int> piece;
        while (pos < text.size() && text[pos] != '}') {
            char ch = text[pos++];
            if (ch == ' ') continue;
            if (ch < '0' || ch > '9') throw PreconditionError("piece elements are single digits");
            piece.push_back(ch - '0');
        }
        if (pos >= text.size()) throw PreconditionError("unterminated piece");
        ++pos;
        pieces.push_back(piece);
    }
    int expected = 0;
    std::vector<int> sizes;
    for (const auto& piece : pieces) {
        if (piece.empty()) throw PreconditionError("empty piece");
        for (int e : piece)
            if (e != expected++) throw PreconditionError("pieces must be consecutive intervals from 0");
        sizes.push_back(static_cast<int>(piece.size()));
    }
    return Partition(expected - 2, sizes);
}

int Partition::first(int k) const {
    return std::accumulate(sizes_.begin(), sizes_.begin() + k, 0);
}

int Partition::last(int k) const { return first(k) + sizes_.at(static_cast<std::size_t>(k)) - 1; }

int Partition::piece_of(int e) const {
    int acc = 0;
    for (int k = 0; k < pieces(); ++k) {
        acc += sizes_[static_cast<std::size_t>(k)];
        if (e < acc) return k;
    }
    throw PreconditionError("element outside [n+1]");
}

Partition Partition::merge(int i) const {
    if (i < 0 || i > pieces() - 2) throw PreconditionError("merge index out of range");
    if (pieces() == 2) throw PreconditionError("cannot merge the last two pieces");
    std::vector<int> s = sizes_;
    s[static_cast<std::size_t>(i)] += s[static_cast<std::size_t>(i) + 1];
    s.erase(s.begin() + i + 1);
    return Partition(n_, s);
}

std::string Partition::to_string() const {
    std::string out = "{";
    for (int k = 0; k < pieces(); ++k) {
        out += '{';
        for (int e = first(k); e <= last(k); ++e) out += std::to_string(e);
        out += '}';
        if (k + 1 < pieces()) out += ',';
    }
    return out + "}";
}

std::vector<Partition> enumerate_partitions(int n) {
    if (n < 1 || n > 8) throw PreconditionError("enumerate_partitions needs 1 <= n <= 8");
    // Compositions of n+2 correspond to subsets of the n+1 gaps between consecutive elements.
    std::vector<Partition> out;
    for (unsigned mask = 1; mask < (1u << (n + 1)); ++mask) {
        std::vector<int> sizes;
        int run = 1;
        for (int g = 0; g <= n; ++g) {
            if (mask & (1u << g)) {
                sizes.push_back(run);
                run = 1;
            } else {
                ++run;
            }
        }
        sizes.push_back(run);
        out.emplace_back(n, sizes);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_subdivision(const Partition& p, const Partition& q) {
    if (p.n() != q.n()) throw PreconditionError("partitions of different [n+1]");
    if (p == q) return false;
    for (int k = 0; k < q.pieces(); ++k)
        if (p.piece_of(q.first(k)) != p.piece_of(q.last(k))) return false;
    return true;
}

PGraph::PGraph(Partition p, std::vector<Edge> edges) : p_(std::move(p)), edges_(std::move(edges)) {
    int top = p_.pieces() - 1;
    for (const auto& [a, b] : edges_)
        if (a <= 0 || b >= top || a >= b) throw PreconditionError("edges join internal pieces a < b");
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw PreconditionError("duplicate edge");
}

PGraph PGraph::parse(const Partition& p, std::string_view text) {
    std::vector<Edge> edges;
    std::size_t pos = 0;
    auto number = [&] {
        std::size_t start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
        if (start == pos) throw PreconditionError("expected a piece index");
        return std::stoi(std::string(text.substr(start, pos - start)));
    };
    while (pos < text.size()) {
        if (text[pos] == ' ') {
            ++pos;
            continue;
        }
        if (text[pos] != '(') throw PreconditionError("expected '('");
        ++pos;
        if (pos < text.size() && text[pos] == ')') {
            ++pos;
            continue;
        }
        int a = number();
        if (pos >= text.size() || text[pos] != ',') throw PreconditionError("expected ','");
        ++pos;
        int b = number();
        if (pos >= text.size() || text[pos] != ')') throw PreconditionError("expected ')'");
        ++pos;
        edges.emplace_back(a, b);
    }
    return PGraph(p, edges);
}

PGraph PGraph::remove_edge(std::size_t k) const {
    if (k < 1 || k > edges_.size()) throw PreconditionError("edge index out of range");
    std::vector<Edge> e = edges_;
    e.erase(e.begin() + static_cast<std::ptrdiff_t>(k - 1));
    return PGraph(p_, e);
}

std::string PGraph::to_string() const {
    if (edges_.empty()) return "()";
    std::string out;
    for (const auto& [a, b] : edges_) out += "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    return out;
}

std::vector<int> component_labels(const PGraph& g) {
    std::vector<int> label(static_cast<std::size_t>(g.partition().pieces()));
    std::iota(label.begin(), label.end(), 0);
    auto find = [&](int v) {
        while (label[static_cast<std::size_t>(v)] != v) v = label[static_cast<std::size_t>(v)];
        return v;
    };
    for (const auto& [a, b] : g.edges()) {
        int ra = find(a), rb = find(b);
        if (ra != rb) label[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
    }
    for (std::size_t v = 0; v < label.size(); ++v) label[v] = find(static_cast<int>(v));
    return label;
}

std::vector<PGraph> enumerate_graphs(const Partition& p) {
    std::vector<Edge> all;
    for (int a = 1; a < p.pieces() - 1; ++a)
        for (int b = a + 1; b < p.pieces() - 1; ++b) all.emplace_back(a, b);
    if (all.size() > 20) throw PreconditionError("too many possible edges to enumerate");
    std::vector<PGraph> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << all.size()); ++mask) {
        std::vector<Edge> e;
        for (std::size_t k = 0; k < all.size(); ++k)
            if (mask & (std::size_t{1} << k)) e.push_back(all[k]);
        out.emplace_back(p, e);
    }
    return out;
}

std::optional<DeltaImage> delta_graph(int i, const PGraph& g) {
    const Partition& p = g.partition();
    if (i < 0 || i > p.pieces() - 2) throw PreconditionError("delta index out of range");
    if (p.pieces() == 2) return std::nullopt;
    Partition q = p.merge(i);
    int top = q.pieces() - 1;
    auto image = [i](int v) { return v <= i ? v : v - 1; };
    std::vector<Edge> edges;
    std::vector<Edge> moved;  // images of edges whose smaller end is piece i or i+1, in source order
    for (const auto& [a, b] : g.edges()) {
        int a2 = image(a), b2 = image(b);
        if (a2 == b2 || a2 == 0 || b2 == top) return std::nullopt;
        edges.emplace_back(a2, b2);
        if (a == i || a == i + 1) moved.emplace_back(a2, b2);
    }
    std::vector<Edge> sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return std::nullopt;
    int inversions = 0;
    for (std::size_t x = 0; x < moved.size(); ++x)
        for (std::size_t y = x + 1; y < moved.size(); ++y)
            if (moved[y] < moved[x]) ++inversions;
    return DeltaImage{PGraph(q, sorted), inversions % 2 ? -1 : 1};
}

void ShapeChain::add(const PGraph& g, const Scalar& c) {
    require_same_field(f_, c.field());
    auto it = terms_.find(g);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(g, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

ShapeChain ShapeChain::operator-(const ShapeChain& o) const {
    ShapeChain out = *this;
    for (const auto& [g, c] : o.terms_) out.add(g, -c);
    return out;
}

std::string ShapeChain::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [g, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += c.to_string() + "*" + g.partition().to_string() + g.to_string();
    }
    return out;
}

ShapeChain single(Field f, const PGraph& g) {
    ShapeChain c(f);
    c.add(g, Scalar(f, 1));
    return c;
}

ShapeChain cech_boundary(const ShapeChain& c) {
    ShapeChain out(c.field());
    for (const auto& [g, coef] : c.terms())
        for (std::size_t k = 1; k <= g.edge_count(); ++k) out.add(g.remove_edge(k), k % 2 ? coef : -coef);
    return out;
}

namespace {

void add_delta_terms(ShapeChain& out, const PGraph& g, const Scalar& coef, const PGraph* support) {
    for (int i = 0; i <= g.partition().pieces() - 2; ++i) {
        if (support && !delta_graph(i, *support)) continue;
        auto img = delta_graph(i, g);
        if (!img) continue;
        int s = (i % 2 ? -1 : 1) * img->sign;
        out.add(img->graph, s > 0 ? coef : -coef);
    }
}

}  // namespace

ShapeChain shape_delta(const ShapeChain& c) {
    ShapeChain out(c.field());
    for (const auto& [g, coef] : c.terms()) add_delta_terms(out, g, coef, nullptr);
    return out;
}

ShapeChain shape_delta_supported(const ShapeChain& c, const PGraph& support) {
    ShapeChain out(c.field());
    for (const auto& [g, coef] : c.terms()) add_delta_terms(out, g, coef, &support);
    return out;
}

CommutationReport verify_commutation(int n, bool discrete_only) {
    if (n < 1 || n > 5) throw PreconditionError("verify_commutation needs 1 <= n <= 5");
    CommutationReport rep;
    rep.n = n;
    rep.discrete_only = discrete_only;
    Field f = Field::rationals();
    std::vector<Partition> parts = discrete_only ? std::vector<Partition>{Partition::discrete(n)} : enumerate_partitions(n);
    for (const auto& p : parts)
        for (const auto& g : enumerate_graphs(p)) {
            ++rep.graphs_checked;
            ShapeChain x = single(f, g);
            ShapeChain dx = cech_boundary(x);
            ShapeChain lhs = shape_delta_supported(dx, g);
            ShapeChain rhs = cech_boundary(shape_delta(x));
            if (!(lhs == rhs)) {
                ++rep.counterexamples;
                if (rep.examples.size() < 10)
                    rep.examples.push_back(p.to_string() + g.to_string() + ": delta d = " + lhs.to_string() +
                                           ", d delta = " + rhs.to_string());
            }
            if (!(shape_delta(dx) == rhs)) ++rep.naive_mismatches;
            if (!cech_boundary(dx).is_zero()) ++rep.d_squared_failures;
            if (!shape_delta(shape_delta(x)).is_zero()) ++rep.delta_squared_failures;
        }
    return rep;
}

}  // namespace knotss
