#include "knotss/mapexpr.hpp"

#include <algorithm>

namespace knotss {

namespace {

PolyMonomial multiply(const PolyMonomial& a, const PolyMonomial& b) {
    std::map<std::string, int> e;
    for (const auto& [v, k] : a) e[v] += k;
    for (const auto& [v, k] : b) e[v] += k;
    return {e.begin(), e.end()};
}

}  // namespace

Poly::Poly(const mpq_class& c) {
    if (c != 0) terms_.emplace(PolyMonomial{}, c);
}

Poly Poly::var(const std::string& name) {
    Poly p;
    p.terms_.emplace(PolyMonomial{{name, 1}}, mpq_class(1));
    return p;
}

void Poly::add_term(const PolyMonomial& m, const mpq_class& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (fresh) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Poly Poly::operator-() const {
    Poly r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    Poly r;
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) r.add_term(multiply(m1, m2), c1 * c2);
    return r;
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

mpq_class Poly::constant_term() const {
    auto it = terms_.find(PolyMonomial{});
    return it == terms_.end() ? mpq_class(0) : it->second;
}

bool Poly::depends_on(const std::string& name) const {
    for (const auto& [m, c] : terms_)
        for (const auto& [v, k] : m)
            if (v == name) return true;
    return false;
}

std::set<std::string> Poly::variables() const {
    std::set<std::string> out;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, k] : m) out.insert(v);
    return out;
}

Poly Poly::substitute(const std::string& name, const mpq_class& value) const {
    Poly r;
    for (const auto& [m, c] : terms_) {
        PolyMonomial rest;
        mpq_class coef = c;
        for (const auto& [v, k] : m) {
            if (v != name) {
                rest.emplace_back(v, k);
                continue;
            }
            for (int j = 0; j < k; ++j) coef *= value;
        }
        r.add_term(rest, coef);
    }
    return r;
}

Poly Poly::rename(const std::map<std::string, std::string>& names) const {
    Poly r;
    for (const auto& [m, c] : terms_) {
        PolyMonomial mm;
        for (const auto& [v, k] : m) {
            auto it = names.find(v);
            mm.emplace_back(it == names.end() ? v : it->second, k);
        }
        r.add_term(multiply(mm, {}), c);
    }
    return r;
}

mpq_class Poly::evaluate(const std::map<std::string, mpq_class>& values) const {
    mpq_class total = 0;
    for (const auto& [m, c] : terms_) {
        mpq_class term = c;
        for (const auto& [v, k] : m) {
            auto it = values.find(v);
            if (it == values.end()) throw PreconditionError("unassigned parameter " + v);
            for (int j = 0; j < k; ++j) term *= it->second;
        }
        total += term;
    }
    return total;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
        std::string mono;
        for (const auto& [v, k] : m) mono += (mono.empty() ? "" : "*") + v + (k > 1 ? "^" + std::to_string(k) : "");
        std::string coef = c.get_str();
        if (!out.empty()) out += c > 0 ? "+" : "";
        if (mono.empty())
            out += coef;
        else if (c == 1)
            out += mono;
        else if (c == -1)
            out += "-" + mono;
        else
            out += coef + "*" + mono;
    }
    return out;
}

MapExpr::MapExpr(std::vector<MapComponent> components) : c_(std::move(components)) {}

const MapComponent& MapExpr::component(int i) const {
    if (i < 1 || i > n()) throw PreconditionError("component index out of range");
    return c_[static_cast<std::size_t>(i - 1)];
}

MapComponent& MapExpr::component(int i) {
    if (i < 1 || i > n()) throw PreconditionError("component index out of range");
    return c_[static_cast<std::size_t>(i - 1)];
}

std::set<std::string> MapExpr::parameters() const {
    std::set<std::string> out;
    for (const auto& c : c_)
        for (const Poly* p : {&c.cx, &c.cy, &c.qu, &c.qv}) out.merge(p->variables());
    return out;
}

bool MapExpr::depends_on(const std::string& name) const {
    for (const auto& c : c_)
        if (c.cx.depends_on(name) || c.cy.depends_on(name) || c.qu.depends_on(name) || c.qv.depends_on(name))
            return true;
    return false;
}

MapExpr MapExpr::restrict(const std::string& name, const mpq_class& value) const {
    MapExpr r = *this;
    for (auto& c : r.c_)
        for (Poly* p : {&c.cx, &c.cy, &c.qu, &c.qv}) *p = p->substitute(name, value);
    return r;
}

MapExpr MapExpr::rename(const std::map<std::string, std::string>& names) const {
    MapExpr r = *this;
    for (auto& c : r.c_)
        for (Poly* p : {&c.cx, &c.cy, &c.qu, &c.qv}) *p = p->rename(names);
    return r;
}

MapExpr MapExpr::transposed() const {
    MapExpr r = *this;
    for (auto& c : r.c_) std::swap(c.cx, c.cy);
    return r;
}

PointConfig MapExpr::evaluate(const Point2& x, const Point2& y, const std::map<std::string, mpq_class>& params) const {
    PointConfig out;
    out.reserve(c_.size());
    for (const auto& c : c_) {
        mpq_class kx = c.cx.evaluate(params), ky = c.cy.evaluate(params);
        out.push_back({kx * x.a + ky * y.a + c.qu.evaluate(params), kx * x.b + ky * y.b + c.qv.evaluate(params)});
    }
    return out;
}

std::string MapExpr::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < c_.size(); ++i) {
        const auto& c = c_[i];
        if (i) out += ", ";
        out += "[" + c.cx.to_string() + "]x+[" + c.cy.to_string() + "]y+[" + c.qu.to_string() + "]u+[" +
               c.qv.to_string() + "]v";
    }
    return out + ")";
}

MapExpr operator+(const MapExpr& a, const MapExpr& b) {
    if (a.n() != b.n()) throw DimensionError("maps with different numbers of points");
    std::vector<MapComponent> c;
    for (int i = 1; i <= a.n(); ++i) {
        const auto &p = a.component(i), &q = b.component(i);
        c.push_back({p.cx + q.cx, p.cy + q.cy, p.qu + q.qu, p.qv + q.qv});
    }
    return MapExpr(c);
}

MapExpr scale(const Poly& k, const MapExpr& f) {
    std::vector<MapComponent> c;
    for (const auto& p : f.components()) c.push_back({k * p.cx, k * p.cy, k * p.qu, k * p.qv});
    return MapExpr(c);
}

MapExpr condensed_map(const PGraph& g) {
    const Partition& p = g.partition();
    std::vector<int> comp = component_labels(g);
    int one = comp[static_cast<std::size_t>(p.piece_of(1))];
    std::vector<MapComponent> c;
    for (int i = 1; i <= p.n(); ++i) {
        bool with_one = comp[static_cast<std::size_t>(p.piece_of(i))] == one;
        c.push_back({with_one ? Poly(1) : Poly(0), with_one ? Poly(0) : Poly(1), {}, {}});
    }
    return MapExpr(c);
}

MapExpr contraction(const MapExpr& f, const PGraph& g, const Edge& e, const std::string& param, int direction) {
    const Partition& p = g.partition();
    if (f.n() != p.n()) throw DimensionError("map and graph have different n");
    if (direction != 1 && direction != -1) throw PreconditionError("direction must be +1 or -1");
    auto it = std::find(g.edges().begin(), g.edges().end(), e);
    if (it == g.edges().end()) throw PreconditionError("contracted edge is not an edge of the graph");
    PGraph rest = g.remove_edge(static_cast<std::size_t>(it - g.edges().begin()) + 1);
    std::vector<int> comp = component_labels(rest);
    int ca = comp[static_cast<std::size_t>(e.first)], cb = comp[static_cast<std::size_t>(e.second)];
    if (ca == cb) throw PreconditionError("contracted edge must be a bridge");
    MapExpr r = f;
    Poly s = Poly::var(param);
    for (int i = 1; i <= p.n(); ++i) {
        int ci = comp[static_cast<std::size_t>(p.piece_of(i))];
        if (ci == ca) r.component(i).qv += direction == 1 ? s : -s;
        if (ci == cb) r.component(i).qv += direction == 1 ? -s : s;
    }
    return r;
}

MapExpr straight_homotopy(const MapExpr& f, const MapExpr& g, const std::string& t) {
    Poly tt = Poly::var(t);
    return scale(Poly(1) - tt, f) + scale(tt, g);
}

MapExpr i_contraction(const MapExpr& f, int i, int eps, const std::string& param) {
    if (i < 1 || i >= f.n()) throw PreconditionError("i-contraction needs 1 <= i <= n-1");
    if (eps != 1 && eps != -1) throw PreconditionError("eps must be +1 or -1");
    MapExpr r = f;
    Poly s = Poly::var(param);
    r.component(i).qu += eps == 1 ? s : -s;
    r.component(i + 1).qu += eps == 1 ? -s : s;
    return r;
}

}  // namespace knotss
