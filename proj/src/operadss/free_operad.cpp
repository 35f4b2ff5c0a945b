#include "knotss/free_operad.hpp"

#include <sstream>

namespace knotss {

std::size_t subtree_end(const std::vector<int>& tokens, std::size_t start) {
    std::size_t need = 1, pos = start;
    while (need > 0) {
        if (pos >= tokens.size()) throw PreconditionError("truncated planar tree");
        int t = tokens[pos++];
        need = need - 1 + static_cast<std::size_t>(t);
    }
    return pos;
}

PlanarTree PlanarTree::corolla(int k) {
    if (k < 2) throw PreconditionError("generators have arity >= 2");
    std::vector<int> t{k};
    t.insert(t.end(), static_cast<std::size_t>(k), 0);
    return PlanarTree(std::move(t));
}

PlanarTree PlanarTree::from_preorder(std::vector<int> tokens) {
    for (int t : tokens)
        if (t == 1 || t < 0) throw PreconditionError("invalid vertex arity in planar tree");
    if (tokens.empty() || subtree_end(tokens, 0) != tokens.size())
        throw PreconditionError("malformed preorder token list");
    return PlanarTree(std::move(tokens));
}

int PlanarTree::arity() const {
    int n = 0;
    for (int t : tok_) n += t == 0;
    return n;
}

int PlanarTree::degree() const {
    int d = 0;
    for (int t : tok_)
        if (t) d += t - 2;
    return d;
}

int PlanarTree::vertex_count() const {
    int n = 0;
    for (int t : tok_) n += t != 0;
    return n;
}

namespace {

void render(const std::vector<int>& tok, std::size_t& pos, int& leaf, std::ostringstream& os) {
    int t = tok[pos++];
    if (t == 0) {
        os << ++leaf;
        return;
    }
    os << "m" << t << "(";
    for (int c = 0; c < t; ++c) {
        if (c) os << ",";
        render(tok, pos, leaf, os);
    }
    os << ")";
}

}  // namespace

std::string PlanarTree::to_string() const {
    std::ostringstream os;
    std::size_t pos = 0;
    int leaf = 0;
    render(tok_, pos, leaf, os);
    return os.str();
}

FreeElement FreeElement::generator(Field f, int k) {
    FreeElement e(f);
    e.add(PlanarTree::corolla(k), Scalar(f, 1));
    return e;
}

void FreeElement::add(const PlanarTree& t, const Scalar& c) {
    require_same_field(f_, c.field());
    if (c.is_zero()) return;
    auto [it, ins] = terms_.try_emplace(t, c);
    if (!ins) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

FreeElement FreeElement::operator+(const FreeElement& o) const {
    FreeElement r = *this;
    for (const auto& [t, c] : o.terms_) r.add(t, c);
    return r;
}

FreeElement FreeElement::operator-(const FreeElement& o) const { return *this + o.scaled(Scalar(f_, -1)); }

FreeElement FreeElement::scaled(const Scalar& c) const {
    FreeElement r(f_);
    for (const auto& [t, k] : terms_) r.add(t, k * c);
    return r;
}

std::string FreeElement::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        if (!c.is_one()) os << c.to_string() << "*";
        os << t.to_string();
    }
    return os.str();
}

namespace {

int vertex_degree_sum(const std::vector<int>& tok, std::size_t from, std::size_t to) {
    int d = 0;
    for (std::size_t a = from; a < to; ++a)
        if (tok[a]) d += tok[a] - 2;
    return d;
}

Scalar sign(Field f, int exponent, SignMode mode) {
    if (mode == SignMode::Unsigned) return Scalar(f, 1);
    return Scalar(f, (exponent % 2 == 0) ? 1 : -1);
}

}  // namespace

FreeElement compose_free(const FreeElement& a, int i, const FreeElement& b, SignMode mode) {
    require_same_field(a.field(), b.field());
    FreeElement r(a.field());
    for (const auto& [ta, ca] : a.terms()) {
        const auto& tok = ta.preorder();
        if (i < 1 || i > ta.arity()) throw PreconditionError("composition slot out of range");
        std::size_t pos = 0;
        for (int seen = 0;; ++pos)
            if (tok[pos] == 0 && ++seen == i) break;
        int after = vertex_degree_sum(tok, pos + 1, tok.size());
        for (const auto& [tb, cb] : b.terms()) {
            std::vector<int> out(tok.begin(), tok.begin() + static_cast<std::ptrdiff_t>(pos));
            out.insert(out.end(), tb.preorder().begin(), tb.preorder().end());
            out.insert(out.end(), tok.begin() + static_cast<std::ptrdiff_t>(pos) + 1, tok.end());
            // Koszul sign for moving b's vertices past a's vertices that follow leaf i.
            r.add(PlanarTree::from_preorder(std::move(out)),
                  ca * cb * sign(a.field(), tb.degree() * after, mode));
        }
    }
    return r;
}

namespace {

// Sign of mu_l o_{p+1} mu_q inside d(mu_k).
int ainf_sign_exponent(int l, int p, int q) { return p + q * (l - 1 - p); }

}  // namespace

FreeElement ainf_differential(Field f, int k, SignMode mode) {
    if (k < 2) throw PreconditionError("ainf_differential needs k >= 2");
    FreeElement r(f);
    for (int l = 2; l <= k - 1; ++l) {
        int q = k + 1 - l;
        if (q < 2) continue;
        for (int p = 0; p <= l - 1; ++p) {
            FreeElement term = compose_free(FreeElement::generator(f, l), p + 1, FreeElement::generator(f, q), mode);
            r = r + term.scaled(sign(f, ainf_sign_exponent(l, p, q), mode));
        }
    }
    return r;
}

FreeElement apply_differential(const FreeElement& x, SignMode mode) {
    Field f = x.field();
    FreeElement r(f);
    for (const auto& [tree, c] : x.terms()) {
        const auto& tok = tree.preorder();
        for (std::size_t v = 0; v < tok.size(); ++v) {
            int k = tok[v];
            if (k < 3) continue;  // d(mu_2) = 0
            // Children subtree boundaries of vertex v.
            std::vector<std::size_t> bounds{v + 1};
            for (int c2 = 0; c2 < k; ++c2) bounds.push_back(subtree_end(tok, bounds.back()));
            int before = vertex_degree_sum(tok, 0, v);
            for (int l = 2; l <= k - 1; ++l) {
                int q = k + 1 - l;
                if (q < 2) continue;
                for (int p = 0; p <= l - 1; ++p) {
                    // Replace mu_k by mu_l with mu_q grafted at input p+1; the original
                    // children attach to the new leaves in order.
                    std::vector<int> out(tok.begin(), tok.begin() + static_cast<std::ptrdiff_t>(v));
                    out.push_back(l);
                    auto copy_children = [&](int from, int to) {
                        out.insert(out.end(), tok.begin() + static_cast<std::ptrdiff_t>(bounds[from]),
                                   tok.begin() + static_cast<std::ptrdiff_t>(bounds[to]));
                    };
                    copy_children(0, p);
                    out.push_back(q);
                    copy_children(p, p + q);
                    copy_children(p + q, k);
                    out.insert(out.end(), tok.begin() + static_cast<std::ptrdiff_t>(bounds[k]), tok.end());
                    int passed = vertex_degree_sum(tok, bounds[0], bounds[p]);
                    int e = before + (q - 2) * passed + ainf_sign_exponent(l, p, q);
                    r.add(PlanarTree::from_preorder(std::move(out)), c * sign(f, e, mode));
                }
            }
        }
    }
    return r;
}

std::vector<AinfCheckRow> ainf_check(Field f, int max_arity, SignMode mode) {
    std::vector<AinfCheckRow> rows;
    for (int k = 2; k <= max_arity; ++k) {
        FreeElement d = ainf_differential(f, k, mode);
        rows.push_back({k, d.terms().size(), apply_differential(d, mode).is_zero()});
    }
    return rows;
}

}  // namespace knotss
