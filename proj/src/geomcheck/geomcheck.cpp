#include "knotss/geomcheck.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "json.hpp"

namespace knotss {

namespace {

const Field QQ = Field::rationals();

mpq_class norm_sq(const Point2& p) { return p.a * p.a + p.b * p.b; }

void require_params_for(const Params& prm, const Partition& p) {
    if (prm.n != p.n()) throw DimensionError("parameters and partition have different n");
}

void require_piece(const Partition& p, int k) {
    if (k < 0 || k >= p.pieces()) throw PreconditionError("piece index out of range");
}

void require_internal(const Partition& p, int k) {
    if (k <= 0 || k >= p.pieces() - 1) throw PreconditionError("expected an internal piece");
}

std::size_t internal_count(const Partition& p) { return static_cast<std::size_t>(p.pieces() - 2); }

}  // namespace

Params default_params(int n) {
    if (n < 1 || n > 6) throw PreconditionError("default_params needs 1 <= n <= 6");
    mpz_class top;
    mpz_ui_pow_ui(top.get_mpz_t(), 101, static_cast<unsigned long>(n + 2));
    mpq_class k(100, top - 1);
    k.canonicalize();
    Params prm;
    prm.n = n;
    prm.rho = mpq_class(1, 2);
    prm.eps = prm.rho * k / 300;
    mpq_class w = k;
    for (int i = 0; i <= n + 1; ++i) {
        prm.c.push_back(w);
        w *= 101;
    }
    return prm;
}

std::vector<std::string> validate(const Params& prm) {
    std::vector<std::string> bad;
    if (prm.n < 1) bad.push_back("n >= 1");
    if (prm.c.size() != static_cast<std::size_t>(prm.n + 2)) {
        bad.push_back("exactly n+2 constants c_i");
        return bad;
    }
    if (prm.rho <= 0) bad.push_back("rho > 0");
    if (prm.eps <= 0) bad.push_back("eps > 0");
    if (!(prm.rho < 1)) bad.push_back("rho < 1");
    mpq_class sum = 0;
    for (std::size_t i = 0; i < prm.c.size(); ++i) {
        if (prm.c[i] <= 0) bad.push_back("c_" + std::to_string(i) + " > 0");
        sum += prm.c[i];
    }
    if (sum != 1) bad.push_back("sum of c_i = 1");
    if (prm.rho <= 0) return bad;
    mpq_class ratio = prm.eps / prm.rho;
    if (!(100 * ratio < prm.c[0])) bad.push_back("100 eps/rho < c_0");
    mpq_class prefix = 0;
    for (std::size_t i = 1; i < prm.c.size(); ++i) {
        prefix += prm.c[i - 1];
        if (!(100 * (ratio + prefix) < prm.c[i]))
            bad.push_back("100(eps/rho + sum_{j<" + std::to_string(i) + "} c_j) < c_" + std::to_string(i));
    }
    return bad;
}

mpq_class eps_P(const Params& prm, const Partition& p) {
    require_params_for(prm, p);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 8, static_cast<unsigned long>(p.n() - (p.pieces() - 2)));
    mpq_class r = prm.eps / mpq_class(den);
    r.canonicalize();
    return r;
}

mpq_class c_piece(const Params& prm, const Partition& p, int k) {
    require_params_for(prm, p);
    require_piece(p, k);
    mpq_class s = 0;
    for (int e = p.first(k); e <= p.last(k); ++e) s += prm.c[static_cast<std::size_t>(e)];
    return s;
}

mpq_class c_below(const Params& prm, const Partition& p, int k) {
    mpq_class s = c_piece(prm, p, k) / 2;
    for (int j = 0; j < k; ++j) s += c_piece(prm, p, j);
    return s;
}

mpq_class c_above(const Params& prm, const Partition& p, int k) {
    mpq_class s = c_piece(prm, p, k) / 2;
    for (int j = k + 1; j < p.pieces(); ++j) s += c_piece(prm, p, j);
    return s;
}

mpq_class c_between(const Params& prm, const Partition& p, int a, int b) {
    if (a >= b) throw PreconditionError("c_ab needs a < b");
    mpq_class s = (c_piece(prm, p, a) + c_piece(prm, p, b)) / 2;
    for (int j = a + 1; j < b; ++j) s += c_piece(prm, p, j);
    return s;
}

mpq_class d_pair(const Params& prm, const Partition& p, int a, int b) {
    return prm.rho * c_between(prm, p, a, b) - eps_P(prm, p);
}

PointConfig e_embed(const Params& prm, const Partition& p, const Partition& q, const PointConfig& x) {
    require_params_for(prm, p);
    if (p.n() != q.n()) throw DimensionError("partitions of different [n+1]");
    if (!(p == q) && !is_subdivision(p, q)) throw PreconditionError("e_{P,Q} needs Q to subdivide P");
    if (x.size() != internal_count(p)) throw DimensionError("configuration does not match the partition");
    int top = p.pieces() - 1;
    std::vector<Point2> centre(static_cast<std::size_t>(p.pieces()));
    centre[0] = {-1 + prm.rho * c_piece(prm, p, 0) / 2, 0};
    centre[static_cast<std::size_t>(top)] = {1 - prm.rho * c_piece(prm, p, top) / 2, 0};
    for (int k = 1; k < top; ++k) centre[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(k - 1)];
    PointConfig out;
    for (int m = 1; m < q.pieces() - 1; ++m) {
        int i = p.piece_of(q.first(m));
        mpq_class before = 0;
        for (int m2 = 0; m2 < m; ++m2)
            if (p.piece_of(q.first(m2)) == i) before += c_piece(prm, q, m2);
        Point2 y = centre[static_cast<std::size_t>(i)];
        y.a += prm.rho * (-c_piece(prm, p, i) / 2 + before + c_piece(prm, q, m) / 2);
        out.push_back(y);
    }
    return out;
}

PointConfig e_P(const Params& prm, const Partition& p, const PointConfig& x) {
    return e_embed(prm, p, Partition::discrete(p.n()), x);
}

PointConfig project_pi(const Params& prm, const Partition& p, const PointConfig& y) {
    require_params_for(prm, p);
    std::size_t n = static_cast<std::size_t>(p.n()), k = internal_count(p);
    if (y.size() != n) throw DimensionError("configuration does not have n points");
    PointConfig offset = e_P(prm, p, PointConfig(k, Point2{0, 0}));
    Matrix a(QQ, n, k);
    for (std::size_t i = 0; i < n; ++i) {
        int piece = p.piece_of(static_cast<int>(i) + 1);
        if (piece > 0 && piece < p.pieces() - 1) a.set(i, static_cast<std::size_t>(piece - 1), Scalar(QQ, 1));
    }
    Matrix at = a.transpose();
    Matrix normal = at * a;
    PointConfig out(k);
    for (int coord = 0; coord < 2; ++coord) {
        Vector rhs;
        for (std::size_t i = 0; i < n; ++i)
            rhs.emplace_back(QQ, coord == 0 ? y[i].a - offset[i].a : y[i].b - offset[i].b);
        auto sol = solve(normal, at.apply(rhs));
        if (!sol) throw std::logic_error("normal equations are always consistent");
        for (std::size_t j = 0; j < k; ++j) (coord == 0 ? out[j].a : out[j].b) = (*sol)[j].rational();
    }
    return out;
}

mpq_class residual_sq(const Params& prm, const Partition& p, const PointConfig& y) {
    PointConfig e = e_P(prm, p, project_pi(prm, p, y));
    mpq_class s = 0;
    for (std::size_t i = 0; i < y.size(); ++i) s += norm_sq({y[i].a - e[i].a, y[i].b - e[i].b});
    return s;
}

mpq_class residual_sq_first(const Params& prm, const Partition& p, const PointConfig& y) {
    PointConfig e = e_P(prm, p, project_pi(prm, p, y));
    mpq_class s = 0;
    for (std::size_t i = 0; i < y.size(); ++i) s += (y[i].a - e[i].a) * (y[i].a - e[i].a);
    return s;
}

bool in_nu(const Params& prm, const Partition& p, const PointConfig& y) {
    mpq_class e = eps_P(prm, p);
    return residual_sq(prm, p, y) < e * e;
}

bool in_D(const Params& prm, const Partition& p, const PointConfig& x, int a, int b) {
    require_internal(p, a);
    require_internal(p, b);
    if (x.size() != internal_count(p)) throw DimensionError("configuration does not match the partition");
    if (a > b) std::swap(a, b);
    mpq_class d = d_pair(prm, p, a, b);
    const Point2 &xa = x[static_cast<std::size_t>(a - 1)], &xb = x[static_cast<std::size_t>(b - 1)];
    return d >= 0 && norm_sq({xa.a - xb.a, xa.b - xb.b}) <= d * d;
}

bool in_E_alpha(const Params& prm, const Partition& p, const PointConfig& x, int a) {
    require_internal(p, a);
    if (x.size() != internal_count(p)) throw DimensionError("configuration does not match the partition");
    const Point2& xa = x[static_cast<std::size_t>(a - 1)];
    mpq_class e = eps_P(prm, p);
    mpq_class r = 1 - prm.rho * c_piece(prm, p, a) / 2 + e;
    if (norm_sq(xa) >= r * r) return true;
    if (xa.a <= -1 + prm.rho * c_below(prm, p, a) - e) return true;
    return xa.a >= 1 - prm.rho * c_above(prm, p, a) + e;
}

bool in_E(const Params& prm, const Partition& p, const PointConfig& x) {
    for (int a = 1; a < p.pieces() - 1; ++a)
        if (in_E_alpha(prm, p, x, a)) return true;
    return false;
}

bool in_E_space(const Params& prm, const Partition& p, const PointConfig& x) {
    if (x.size() != internal_count(p)) throw DimensionError("configuration does not match the partition");
    for (int a = 1; a < p.pieces() - 1; ++a) {
        const Point2& xa = x[static_cast<std::size_t>(a - 1)];
        mpq_class r = 1 - prm.rho * c_piece(prm, p, a) / 2;
        if (norm_sq(xa) > r * r) return false;
        if (xa.a < -1 + prm.rho * c_below(prm, p, a) || xa.a > 1 - prm.rho * c_above(prm, p, a)) return false;
        for (int b = a + 1; b < p.pieces() - 1; ++b) {
            const Point2& xb = x[static_cast<std::size_t>(b - 1)];
            mpq_class d = prm.rho * c_between(prm, p, a, b);
            if (norm_sq({xa.a - xb.a, xa.b - xb.b}) < d * d) return false;
        }
    }
    return true;
}

bool is_basepoint(const Params& prm, const Partition& p, const PointConfig& y) {
    return !in_nu(prm, p, y) || in_E(prm, p, project_pi(prm, p, y));
}

bool in_U(const Params& prm, const PGraph& g, const PointConfig& y) {
    const Partition& p = g.partition();
    if (!in_nu(prm, p, y)) return true;
    PointConfig x = project_pi(prm, p, y);
    for (const auto& [a, b] : g.edges())
        if (!in_D(prm, p, x, a, b)) return false;
    return true;
}

bool in_U1(const Params& prm, const PGraph& g, const PointConfig& y) {
    const Partition& p = g.partition();
    mpq_class e = eps_P(prm, p);
    if (residual_sq_first(prm, p, y) >= e * e) return true;
    // Second coordinates are free: put every projected point on one horizontal line.
    PointConfig x = project_pi(prm, p, y);
    for (const auto& [a, b] : g.edges()) {
        mpq_class gap = abs(x[static_cast<std::size_t>(a - 1)].a - x[static_cast<std::size_t>(b - 1)].a);
        if (gap > d_pair(prm, p, a, b)) return false;
    }
    return true;
}

PointConfig closed_form_n4(const Params& prm, const PointConfig& y) {
    if (prm.n != 4 || y.size() != 4) throw DimensionError("closed form for n = 4");
    const auto& c = prm.c;
    return {{(y[0].a + y[1].a) / 2 + prm.rho * (c[2] - c[1]) / 4, (y[0].b + y[1].b) / 2},
            {(y[2].a + y[3].a) / 2 + prm.rho * (c[4] - c[3]) / 4, (y[2].b + y[3].b) / 2}};
}

PointConfig closed_form_n5_printed(const Params& prm, const PointConfig& y) {
    if (prm.n != 5 || y.size() != 5) throw DimensionError("closed form for n = 5");
    const auto& c = prm.c;
    return {{(y[0].a + y[1].a + y[2].a + prm.rho * (c[3] - c[1])) / 3, (y[0].b + y[1].b + y[2].b) / 3},
            {(y[3].a + y[4].a + prm.rho * (c[4] - c[3]) / 2) / 2, (y[3].b + y[4].b) / 2}};
}

PointConfig closed_form_n5_corrected(const Params& prm, const PointConfig& y) {
    PointConfig r = closed_form_n5_printed(prm, y);
    const auto& c = prm.c;
    r[1].a = (y[3].a + y[4].a) / 2 + prm.rho * (c[5] - c[4]) / 4;
    return r;
}

PointConfig eval_condensed(const MapExpr& f, const Point2& x, const Point2& y,
                           const std::map<std::string, mpq_class>& params) {
    for (const auto& [name, v] : params) {
        if (name.empty()) throw PreconditionError("empty parameter name");
        if (name[0] == 's' && v < 0) throw PreconditionError("s-parameter " + name + " must be >= 0");
        if (name[0] == 't' && (v < 0 || v > 1)) throw PreconditionError("t-parameter " + name + " must lie in [0,1]");
    }
    return f.evaluate(x, y, params);
}

std::string to_string(const PointConfig& y) {
    std::string out = "(";
    for (std::size_t i = 0; i < y.size(); ++i)
        out += (i ? ",(" : "(") + y[i].a.get_str() + "," + y[i].b.get_str() + ")";
    return out + ")";
}

std::string LemmaReport::to_json() const {
    nlohmann::ordered_json j;
    j["lemma"] = lemma;
    j["samples"] = samples;
    j["hits"] = hits;
    j["counterexample_count"] = counterexample_count;
    j["counterexamples"] = counterexamples;
    j["seed"] = seed;
    j["pass"] = pass();
    return j.dump();
}

void LemmaReport::merge(const LemmaReport& o) {
    samples += o.samples;
    hits += o.hits;
    counterexample_count += o.counterexample_count;
    for (const auto& c : o.counterexamples)
        if (counterexamples.size() < 5) counterexamples.push_back(c);
}

namespace {

constexpr long kGrain = 1L << 20;

struct Sampler {
    std::mt19937_64& rng;

    long below(long n) { return static_cast<long>(rng() % static_cast<std::uint64_t>(n)); }
    /** Uniform on a grid in [0, 1). */
    mpq_class unit() {
        mpq_class r(below(kGrain), kGrain);
        r.canonicalize();
        return r;
    }
    mpq_class sym() { return 2 * unit() - 1; }
    /** A few multiples of scale around zero. */
    mpq_class margin(const mpq_class& scale) { return scale * (mpq_class(below(7) - 3) + sym() / 2); }
    Point2 direction() {
        mpq_class m(below(2001) - 1000, 500);
        m.canonicalize();
        Point2 d{(1 - m * m) / (1 + m * m), 2 * m / (1 + m * m)};
        if (below(2)) d.a = -d.a;
        return d;
    }
};

PointConfig add(const PointConfig& a, const PointConfig& b) {
    PointConfig r = a;
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i].a += b[i].a;
        r[i].b += b[i].b;
    }
    return r;
}

PointConfig noise(Sampler& s, std::size_t n, const mpq_class& scale) {
    PointConfig r(n);
    for (auto& p : r) {
        p.a = s.sym() * scale;
        p.b = s.sym() * scale;
    }
    return r;
}

/** Reduced configuration with coordinates concentrated near the E and D boundaries. */
PointConfig boundary_config(const Params& prm, const Partition& p, Sampler& s) {
    mpq_class e = eps_P(prm, p);
    PointConfig x(internal_count(p));
    for (int k = 1; k < p.pieces() - 1; ++k) {
        Point2& xk = x[static_cast<std::size_t>(k - 1)];
        mpq_class lo = -1 + prm.rho * c_below(prm, p, k), hi = 1 - prm.rho * c_above(prm, p, k);
        switch (s.below(6)) {
            case 0:
                xk = {lo + s.margin(e), s.sym() / 4};
                break;
            case 1:
                xk = {hi + s.margin(e), s.sym() / 4};
                break;
            case 2: {
                mpq_class r = 1 - prm.rho * c_piece(prm, p, k) / 2 + s.margin(e);
                Point2 d = s.direction();
                xk = {r * d.a, r * d.b};
                break;
            }
            default:
                xk = {lo + s.unit() * (hi - lo), s.sym() / 2};
        }
    }
    if (x.size() >= 2 && s.below(3) == 0) {
        int a = 1 + static_cast<int>(s.below(static_cast<long>(x.size())));
        int b = 1 + static_cast<int>(s.below(static_cast<long>(x.size())));
        if (a != b) {
            if (a > b) std::swap(a, b);
            mpq_class r = prm.rho * c_between(prm, p, a, b) + s.margin(e);
            Point2 d = s.direction();
            const Point2& xa = x[static_cast<std::size_t>(a - 1)];
            x[static_cast<std::size_t>(b - 1)] = {xa.a + r * d.a, xa.b + r * d.b};
        }
    }
    return x;
}

mpq_class tube_scale(Sampler& s, const mpq_class& e) {
    static const long num[] = {1, 1, 2, 4, 8, 16};
    static const long den[] = {4, 1, 1, 1, 1, 1};
    long k = s.below(6);
    return e * mpq_class(num[k], den[k]);
}

struct Pair {
    Partition p, q;
};

std::vector<Pair> subdivision_pairs() {
    return {
        {Partition::parse("{{0},{12},{345}}"), Partition::parse("{{0},{12},{3},{45}}")},
        {Partition::parse("{{0},{12},{3},{45}}"), Partition::discrete(4)},
        {Partition::parse("{{0},{12},{34},{5}}"), Partition::discrete(4)},
        {Partition::parse("{{0},{1234},{5}}"), Partition::parse("{{0},{12},{34},{5}}")},
        {Partition::parse("{{01},{2},{3},{45}}"), Partition::discrete(4)},
        {Partition::parse("{{0},{123},{45},{6}}"), Partition::discrete(5)},
    };
}

const Params& params_for(int n) {
    static std::map<int, Params> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, default_params(n)).first;
    return it->second;
}

void record(LemmaReport& r, const std::string& witness) {
    ++r.counterexample_count;
    if (r.counterexamples.size() < 5) r.counterexamples.push_back(witness);
}

LemmaReport diagonal_bound(std::size_t samples, Sampler& s) {
    LemmaReport r;
    auto pairs = subdivision_pairs();
    for (std::size_t k = 0; k < samples; ++k) {
        const Pair& pq = pairs[k % pairs.size()];
        const Params& prm = params_for(pq.p.n());
        const Partition& base = s.below(2) ? pq.p : pq.q;
        PointConfig y = add(e_P(prm, base, boundary_config(prm, base, s)),
                            noise(s, static_cast<std::size_t>(prm.n), tube_scale(s, eps_P(prm, pq.p))));
        ++r.samples;
        if (!is_basepoint(prm, pq.q, y)) continue;
        if (in_nu(prm, pq.p, y)) ++r.hits;
        if (!is_basepoint(prm, pq.p, y)) record(r, pq.p.to_string() + "<" + pq.q.to_string() + " y=" + to_string(y));
    }
    return r;
}

/**
 * facing_only keeps the pairs where alpha holds the top of alpha' and beta
 * the bottom of beta' (or the image collapses), the case the triangle
 * inequality argument covers.
 */
LemmaReport diagonal_incl(std::size_t samples, Sampler& s, bool facing_only) {
    LemmaReport r;
    auto pairs = subdivision_pairs();
    for (std::size_t k = 0; k < samples; ++k) {
        const Pair& pq = pairs[k % pairs.size()];
        const Params& prm = params_for(pq.p.n());
        int q_int = pq.q.pieces() - 2;
        int a, b, a2, b2;
        bool collapses;
        for (;;) {
            a = 1 + static_cast<int>(s.below(q_int));
            b = 1 + static_cast<int>(s.below(q_int));
            if (a == b) b = a == q_int ? a - 1 : a + 1;
            if (a > b) std::swap(a, b);
            a2 = pq.p.piece_of(pq.q.first(a));
            b2 = pq.p.piece_of(pq.q.first(b));
            collapses = a2 == b2 || a2 == 0 || b2 == pq.p.pieces() - 1;
            bool facing = pq.q.last(a) == pq.p.last(a2) && pq.q.first(b) == pq.p.first(b2);
            if (!facing_only || collapses || facing) break;
        }
        bool on_q = s.below(2);
        const Partition& base = on_q ? pq.q : pq.p;
        PointConfig x = boundary_config(prm, base, s);
        // Put the chosen pair near the boundary of its D region.
        int pa = on_q ? a : a2, pb = on_q ? b : b2;
        if (s.below(4) && (on_q || !collapses)) {
            mpq_class dist = d_pair(prm, base, pa, pb) + s.margin(eps_P(prm, pq.q));
            Point2 d = s.below(2) ? s.direction() : Point2{1, 0};
            const Point2& xa = x[static_cast<std::size_t>(pa - 1)];
            x[static_cast<std::size_t>(pb - 1)] = {xa.a + dist * d.a, xa.b + dist * d.b};
        }
        PointConfig y = add(e_P(prm, base, x), noise(s, static_cast<std::size_t>(prm.n), eps_P(prm, pq.p) / (2 + s.below(6))));
        ++r.samples;
        if (is_basepoint(prm, pq.q, y) || !in_D(prm, pq.q, project_pi(prm, pq.q, y), a, b)) continue;
        if (in_nu(prm, pq.p, y)) ++r.hits;
        bool ok = is_basepoint(prm, pq.p, y) || (!collapses && in_D(prm, pq.p, project_pi(prm, pq.p, y), a2, b2));
        if (!ok)
            record(r, pq.p.to_string() + "<" + pq.q.to_string() + " pieces " + std::to_string(a) + "," +
                          std::to_string(b) + " y=" + to_string(y));
    }
    return r;
}

struct MapInstance {
    MapExpr f;
    PGraph label;
};

PGraph delta_of(int i, const PGraph& g) {
    auto img = delta_graph(i, g);
    if (!img) throw std::logic_error("harness instance uses a killed delta");
    return img->graph;
}

std::vector<MapInstance> condensed_instances() {
    std::vector<MapInstance> out;
    Partition d4 = Partition::discrete(4);
    PGraph g1 = PGraph::parse(d4, "(1,4)(2,3)"), g2 = PGraph::parse(d4, "(1,3)(2,4)");
    MapExpr f1 = condensed_map(g1);
    PGraph d1g1 = delta_of(1, g1), d3g1 = delta_of(3, g1);
    out.push_back({f1, g1});
    out.push_back({f1, d1g1});
    out.push_back({f1, d3g1});
    out.push_back({straight_homotopy(f1, condensed_map(g2), "t"), d1g1});
    out.push_back({contraction(f1, g1, {1, 4}, "s"), g1.remove_edge(1)});
    out.push_back({contraction(f1, d1g1, {1, 3}, "s"), d1g1.remove_edge(2)});
    Partition d5 = Partition::discrete(5);
    for (const char* text : {"(1,3)(2,3)(4,5)", "(1,4)(2,4)(3,5)", "(1,4)(2,5)(3,4)", "(1,5)(2,4)(3,4)"}) {
        PGraph g = PGraph::parse(d5, text);
        out.push_back({condensed_map(g), g});
    }
    return out;
}

std::vector<MapInstance> i_contraction_instances() {
    std::vector<MapInstance> out;
    Partition d5 = Partition::discrete(5);
    struct Spec {
        const char* graph;
        int i;
    };
    for (const Spec& sp : {Spec{"(1,3)(2,3)(4,5)", 1}, Spec{"(1,4)(2,4)(3,5)", 1}, Spec{"(1,5)(2,4)(3,4)", 2}}) {
        PGraph g = PGraph::parse(d5, sp.graph);
        MapExpr f = condensed_map(g);
        int k = sp.i;  // piece index of point i in the discrete partition
        for (std::size_t j = 1; j <= 3; ++j) {
            const Edge& ej = g.edges()[j - 1];
            auto target = delta_graph(k, g.remove_edge(j));
            if (target) {
                MapExpr fj = contraction(f, g, ej, "s1");
                for (int eps : {1, -1}) out.push_back({i_contraction(fj, sp.i, eps, "s3"), target->graph});
            }
            for (std::size_t l = j + 1; l <= 3; ++l) {
                auto target2 = delta_graph(k, g.remove_edge(l).remove_edge(j));
                if (!target2) continue;
                MapExpr fjl = contraction(contraction(f, g, ej, "s1"), g, g.edges()[l - 1], "s2");
                for (int eps : {1, -1}) out.push_back({i_contraction(fjl, sp.i, eps, "s3"), target2->graph});
            }
        }
    }
    return out;
}

/** v enters f only as a plain linear term of the translation parts. */
bool translation_only(const MapExpr& f, const std::string& v) {
    for (const auto& c : f.components()) {
        if (c.cx.depends_on(v) || c.cy.depends_on(v)) return false;
        for (const Poly* q : {&c.qu, &c.qv})
            for (const auto& [mono, coef] : q->terms())
                for (const auto& [name, deg] : mono)
                    if (name == v && (deg != 1 || mono.size() != 1)) return false;
    }
    return true;
}

LemmaReport attack_all(const std::vector<MapInstance>& inst, MapClaim claim, std::size_t samples, std::mt19937_64& rng) {
    LemmaReport r;
    std::size_t per = (samples + inst.size() - 1) / inst.size();
    for (const auto& mi : inst) r.merge(attack_map(params_for(mi.f.n()), mi.f, mi.label, claim, per, rng));
    return r;
}

LemmaReport collapse0(std::size_t samples, Sampler& s) {
    LemmaReport r;
    std::vector<Partition> parts = enumerate_partitions(4);
    for (const auto& p : enumerate_partitions(5)) parts.push_back(p);
    for (std::size_t k = 0; k < samples; ++k) {
        const Partition& p = parts[static_cast<std::size_t>(s.below(static_cast<long>(parts.size())))];
        const Params& prm = params_for(p.n());
        mpq_class e = eps_P(prm, p);
        PointConfig y = add(e_P(prm, p, boundary_config(prm, p, s)), noise(s, static_cast<std::size_t>(p.n()), tube_scale(s, e)));
        ++r.samples;
        if (is_basepoint(prm, p, y)) continue;
        ++r.hits;
        Partition d = Partition::discrete(p.n());
        // Positions including the fixed end points 0 and n+1.
        std::vector<mpq_class> pos{-1 + prm.rho * prm.c[0] / 2};
        for (const auto& pt : y) pos.push_back(pt.a);
        pos.push_back(1 - prm.rho * prm.c.back() / 2);
        bool ok = true;
        for (int i = 1; i <= p.n(); ++i) {
            mpq_class lo = -1 + prm.rho * c_below(prm, d, i) - 2 * e, hi = 1 - prm.rho * c_above(prm, d, i) + 2 * e;
            if (!(lo < pos[static_cast<std::size_t>(i)] && pos[static_cast<std::size_t>(i)] < hi)) ok = false;
        }
        for (int a = 0; a < p.pieces(); ++a)
            for (int i = p.first(a); i <= p.last(a); ++i)
                for (int j = i + 1; j <= p.last(a); ++j) {
                    mpq_class gap = pos[static_cast<std::size_t>(j)] - pos[static_cast<std::size_t>(i)];
                    mpq_class c = prm.rho * c_between(prm, d, i, j);
                    if (!(c - 2 * e < gap && gap < c + 2 * e)) ok = false;
                }
        if (!ok) record(r, p.to_string() + " y=" + to_string(y));
    }
    // The "in particular" clause: two points of one piece with equal first coordinates.
    Partition d4 = Partition::discrete(4);
    MapExpr tied = condensed_map(PGraph::parse(d4, "(1,4)(2,3)"));
    r.merge(attack_map(params_for(4), tied, PGraph(d4.merge(2), {}), MapClaim::Basepoint, std::max<std::size_t>(samples / 4, 1), s.rng));
    return r;
}

struct CollapseInstance {
    PGraph g;
    Partition p;
};

std::vector<CollapseInstance> collapse_instances() {
    Partition d4 = Partition::discrete(4), d5 = Partition::discrete(5);
    PGraph g1 = PGraph::parse(d4, "(1,4)(2,3)");
    PGraph d1g1 = delta_of(1, g1);
    return {
        {g1, d4.merge(2)},
        {g1, d4.merge(0)},
        {g1, d4.merge(4)},
        {PGraph::parse(d4, "(2,3)"), d4.merge(2)},
        {d1g1, d1g1.partition().merge(1)},
        {PGraph::parse(d5, "(1,3)(2,3)(4,5)"), d5.merge(4)},
    };
}

LemmaReport collapse(std::size_t samples, Sampler& s) {
    LemmaReport r;
    auto inst = collapse_instances();
    for (std::size_t k = 0; k < samples; ++k) {
        const CollapseInstance& ci = inst[k % inst.size()];
        const Partition& q = ci.g.partition();
        const Params& prm = params_for(q.n());
        const Partition& base = s.below(2) ? ci.p : q;
        PointConfig y = add(e_P(prm, base, boundary_config(prm, base, s)),
                            noise(s, static_cast<std::size_t>(q.n()), tube_scale(s, eps_P(prm, q))));
        ++r.samples;
        if (!in_U1(prm, ci.g, y)) continue;
        mpq_class eq = eps_P(prm, q);
        if (residual_sq_first(prm, q, y) < eq * eq) ++r.hits;
        if (!is_basepoint(prm, ci.p, y))
            record(r, ci.g.partition().to_string() + ci.g.to_string() + " -> " + ci.p.to_string() + " y=" + to_string(y));
    }
    return r;
}

}  // namespace

std::vector<std::string> lemma_names() {
    return {"diagonal-bound", "diagonal-incl", "diagonal-incl-facing", "condensed-image", "collapse0", "collapse", "i-contraction"};
}

LemmaReport check_lemma(const std::string& name, std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Sampler s{rng};
    LemmaReport r;
    if (name == "diagonal-bound")
        r = diagonal_bound(samples, s);
    else if (name == "diagonal-incl")
        r = diagonal_incl(samples, s, false);
    else if (name == "diagonal-incl-facing")
        r = diagonal_incl(samples, s, true);
    else if (name == "condensed-image")
        r = attack_all(condensed_instances(), MapClaim::InsideU, samples, rng);
    else if (name == "collapse0")
        r = collapse0(samples, s);
    else if (name == "collapse")
        r = collapse(samples, s);
    else if (name == "i-contraction")
        r = attack_all(i_contraction_instances(), MapClaim::InsideU, samples, rng);
    else
        throw PreconditionError("unknown lemma " + name);
    r.lemma = name;
    r.seed = seed;
    return r;
}

LemmaReport attack_map(const Params& prm, const MapExpr& f, const PGraph& label, MapClaim claim, std::size_t samples,
                       std::mt19937_64& rng, const std::string& name) {
    const Partition& p = label.partition();
    require_params_for(prm, p);
    if (f.n() != p.n()) throw DimensionError("map and label have different n");
    Sampler s{rng};
    LemmaReport r;
    r.lemma = name;
    std::size_t n = static_cast<std::size_t>(p.n()), k = internal_count(p);
    mpq_class e = eps_P(prm, p);
    PointConfig offset = e_P(prm, p, PointConfig(k, Point2{0, 0}));
    std::set<std::string> names = f.parameters();
    Partition disc = Partition::discrete(p.n());
    std::vector<std::string> translation_params;
    for (const auto& v : names)
        if (v[0] == 's' && translation_only(f, v)) translation_params.push_back(v);
    for (std::size_t it = 0; it < samples; ++it) {
        std::map<std::string, mpq_class> val;
        for (const auto& v : names) {
            if (v[0] == 't') {
                long c = s.below(4);
                val[v] = c == 0 ? mpq_class(0) : c == 1 ? mpq_class(1) : s.unit();
                continue;
            }
            switch (s.below(5)) {
                case 0:
                    val[v] = 0;
                    break;
                case 4: {
                    // Half or whole gap between neighbouring points of one piece.
                    int j = 1 + static_cast<int>(s.below(std::max(prm.n - 1, 1)));
                    mpq_class gap = prm.n > 1 ? prm.rho * c_between(prm, disc, j, j + 1) : mpq_class(0);
                    mpq_class pick = gap / (1 + s.below(2)) + s.margin(e);
                    val[v] = pick < 0 ? mpq_class(0) : pick;
                    break;
                }
                case 1:
                    val[v] = e * 8 * s.unit();
                    break;
                case 2:
                    val[v] = prm.rho * prm.c[static_cast<std::size_t>(s.below(prm.n + 2))] * 2 * s.unit();
                    break;
                default:
                    val[v] = 2 * s.unit();
            }
        }
        // Translation-only parameters are sometimes left free and solved for with (x, y).
        std::vector<std::string> free;
        for (const auto& v : translation_params)
            if (s.below(2)) free.push_back(v);
        MapExpr g = f;
        for (const auto& [v, q] : val)
            if (std::find(free.begin(), free.end(), v) == free.end()) g = g.restrict(v, q);
        // Closest approach of the image of g to the image of e_P. Unknowns:
        // x, y (u then v), the piece centres (u then v), the free parameters.
        std::size_t cols = 4 + 2 * k + free.size();
        Matrix m(QQ, 2 * n, cols);
        Vector rhs;
        for (int coord = 0; coord < 2; ++coord)
            for (std::size_t i = 0; i < n; ++i) {
                std::size_t row = static_cast<std::size_t>(coord) * n + i;
                const MapComponent& c = g.component(static_cast<int>(i) + 1);
                std::size_t base = 2 * static_cast<std::size_t>(coord);
                m.set(row, base, Scalar(QQ, c.cx.constant_term()));
                m.set(row, base + 1, Scalar(QQ, c.cy.constant_term()));
                int piece = p.piece_of(static_cast<int>(i) + 1);
                if (piece > 0 && piece < p.pieces() - 1)
                    m.set(row, 4 + static_cast<std::size_t>(coord) * k + static_cast<std::size_t>(piece - 1),
                          Scalar(QQ, -1));
                const Poly& q = coord == 0 ? c.qu : c.qv;
                for (std::size_t j = 0; j < free.size(); ++j) {
                    auto it = q.terms().find(PolyMonomial{{free[j], 1}});
                    if (it != q.terms().end()) m.set(row, 4 + 2 * k + j, Scalar(QQ, it->second));
                }
                rhs.emplace_back(QQ, (coord == 0 ? offset[i].a : offset[i].b) - q.constant_term());
            }
        Matrix mt = m.transpose();
        Matrix normal = mt * m;
        auto sol = solve(normal, mt.apply(rhs));
        if (!sol) throw std::logic_error("normal equations are always consistent");
        Vector z = *sol;
        Subspace ker = kernel_basis(normal);
        for (std::size_t j = 0; j < ker.dim(); ++j) {
            Vector kv = ker.vector(j);
            mpq_class big = 0;
            for (const auto& c : kv) big = std::max(big, mpq_class(abs(c.rational())));
            if (big == 0) continue;
            mpq_class coef = s.sym() / (2 * big);
            for (std::size_t t = 0; t < z.size(); ++t) z[t] += Scalar(QQ, coef * kv[t].rational());
        }
        mpq_class jitter = e * mpq_class(s.below(3), 2);
        auto pick = [&](std::size_t j) -> mpq_class { return z[j].rational() + s.sym() * jitter; };
        Point2 x{pick(0), pick(2)}, y{pick(1), pick(3)};
        for (std::size_t j = 0; j < free.size(); ++j) {
            mpq_class v = pick(4 + 2 * k + j);
            val[free[j]] = v < 0 ? mpq_class(0) : v;
            g = g.restrict(free[j], val[free[j]]);
        }
        PointConfig img = g.evaluate(x, y, {});
        ++r.samples;
        bool ok;
        if (claim == MapClaim::Basepoint) {
            ok = is_basepoint(prm, p, img);
            if (in_nu(prm, p, img)) ++r.hits;
        } else {
            ok = in_U(prm, label, img) && in_U1(prm, label, img);
            if (residual_sq_first(prm, p, img) < e * e) ++r.hits;
        }
        if (!ok) {
            std::string params;
            for (const auto& [v, q] : val) params += v + "=" + q.get_str() + " ";
            record(r, f.to_string() + " on " + p.to_string() + label.to_string() + " x=(" + x.a.get_str() + "," +
                          x.b.get_str() + ") y=(" + y.a.get_str() + "," + y.b.get_str() + ") " + params);
        }
    }
    return r;
}

}  // namespace knotss
