#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "knotss/chainledger.hpp"

namespace knotss {

namespace {

bool is_t(const std::string& name) { return !name.empty() && name[0] == 't'; }

std::vector<std::string> t_variables(const Poly& p) {
    std::vector<std::string> out;
    for (const auto& v : p.variables())
        if (is_t(v)) out.push_back(v);
    return out;
}

// Values of a polynomial in t-parameters only, over a grid (or the vertices).
std::vector<mpq_class> grid_values(const Poly& p, const std::vector<std::string>& ts, bool vertices_only) {
    std::vector<mpq_class> steps = vertices_only ? std::vector<mpq_class>{0, 1}
                                                 : std::vector<mpq_class>{0, mpq_class(1, 4), mpq_class(1, 2),
                                                                          mpq_class(3, 4), 1};
    std::vector<mpq_class> out;
    std::vector<std::size_t> idx(ts.size(), 0);
    while (true) {
        std::map<std::string, mpq_class> at;
        for (std::size_t k = 0; k < ts.size(); ++k) at[ts[k]] = steps[idx[k]];
        out.push_back(p.evaluate(at));
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == steps.size()) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    return out;
}

bool only_t(const Poly& p) {
    for (const auto& v : p.variables())
        if (!is_t(v)) return false;
    return true;
}

// Is point i of f in the convex hull of the points of alpha, for every x, y and parameter value?
bool in_hull(const MapExpr& f, int i, const std::vector<int>& alpha) {
    const MapComponent& ci = f.component(i);
    for (int j : alpha)
        if (f.component(j) == ci) return true;
    auto affine_xy = [](const MapComponent& c) {
        return c.qu.is_zero() && c.qv.is_zero() && (c.cx + c.cy) == Poly(1) && only_t(c.cx);
    };
    if (!affine_xy(ci)) return false;
    std::set<std::string> tset;
    for (const auto& v : ci.cx.variables()) tset.insert(v);
    for (int j : alpha) {
        if (!affine_xy(f.component(j))) return false;
        for (const auto& v : f.component(j).cx.variables()) tset.insert(v);
    }
    // Points are a x + (1 - a) y; the hull of alpha is the range of its a's.
    std::vector<std::string> ts(tset.begin(), tset.end());
    std::vector<mpq_class> ai = grid_values(ci.cx, ts, false);
    std::vector<mpq_class> lo = ai, hi = ai;
    bool first = true;
    for (int j : alpha) {
        std::vector<mpq_class> aj = grid_values(f.component(j).cx, ts, false);
        for (std::size_t k = 0; k < aj.size(); ++k) {
            if (first || aj[k] < lo[k]) lo[k] = aj[k];
            if (first || aj[k] > hi[k]) hi[k] = aj[k];
        }
        first = false;
    }
    for (std::size_t k = 0; k < ai.size(); ++k)
        if (ai[k] < lo[k] || ai[k] > hi[k]) return false;
    return true;
}

std::vector<int> points_of(const Partition& p, int k) {
    std::vector<int> out;
    for (int e = p.first(k); e <= p.last(k); ++e) out.push_back(e);
    return out;
}

MapExpr u_part(const MapExpr& f) {
    MapExpr r = f;
    for (int i = 1; i <= r.n(); ++i) r.component(i).qv = Poly();
    return r;
}

int merged_index(int v, int i) { return v <= i ? v : v - 1; }

// Sign-definiteness of a u-coordinate difference a(t)(y1 - x1) + q(s, t) from its coefficients.
bool nonpositive(const Poly& q) {
    // Group by the s-part of each monomial; each t-coefficient must be <= 0 at the t-vertices.
    std::map<PolyMonomial, Poly> groups;
    for (const auto& [m, c] : q.terms()) {
        PolyMonomial spart, tpart;
        for (const auto& vk : m) (is_t(vk.first) ? tpart : spart).push_back(vk);
        Poly mono(c);
        for (const auto& [v, k] : tpart)
            for (int j = 0; j < k; ++j) mono = mono * Poly::var(v);
        groups[spart] += mono;
    }
    for (const auto& [s, p] : groups) {
        std::vector<std::string> ts = t_variables(p);
        for (const auto& v : grid_values(p, ts, true))
            if (v > 0) return false;
    }
    return true;
}

bool always_misordered(const MapExpr& f, const Partition& p) {
    bool when_y_ahead = false, when_x_ahead = false;
    for (int k = 1; k + 1 < p.pieces(); ++k) {
        for (int i = p.first(k); i <= p.last(k); ++i)
            for (int j = i + 1; j <= p.last(k); ++j) {
                const MapComponent &a = f.component(i), &b = f.component(j);
                Poly dx = b.cx - a.cx, dy = b.cy - a.cy, dq = b.qu - a.qu;
                if (!(dx + dy).is_zero() || !only_t(dy)) continue;
                if (!nonpositive(dq)) continue;
                std::vector<std::string> ts = t_variables(dy);
                std::vector<mpq_class> vals = grid_values(dy, ts, true);
                bool nonpos = std::all_of(vals.begin(), vals.end(), [](const mpq_class& v) { return v <= 0; });
                bool nonneg = std::all_of(vals.begin(), vals.end(), [](const mpq_class& v) { return v >= 0; });
                when_y_ahead |= nonpos;
                when_x_ahead |= nonneg;
            }
    }
    return when_y_ahead && when_x_ahead;
}

const Params& fixture(int n) {
    static std::map<int, Params> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, default_params(n)).first;
    return it->second;
}

struct PairGap {
    Poly a, q;       // u-coordinate of f_j - f_i is a (y1 - x1) + q
    mpq_class lo, hi;  // and it must lie strictly between lo and hi off the base point
};

// Two same-piece pairs whose differences are proportional in y1 - x1 but whose
// spacing windows are incompatible with the rest of their difference.
bool spacing_mismatch(const MapExpr& f, const Partition& p) {
    const Params& prm = fixture(p.n());
    PointConfig off = e_P(prm, p, PointConfig(static_cast<std::size_t>(p.pieces() - 2), Point2{0, 0}));
    mpq_class slack = 2 * eps_P(prm, p);
    std::vector<PairGap> gaps;
    for (int k = 1; k + 1 < p.pieces(); ++k)
        for (int i = p.first(k); i <= p.last(k); ++i)
            for (int j = i + 1; j <= p.last(k); ++j) {
                const MapComponent &a = f.component(i), &b = f.component(j);
                Poly dx = b.cx - a.cx, dy = b.cy - a.cy;
                if (!(dx + dy).is_zero() || !only_t(dy)) continue;
                mpq_class gap = off[static_cast<std::size_t>(j - 1)].a - off[static_cast<std::size_t>(i - 1)].a;
                gaps.push_back({dy, b.qu - a.qu, gap - slack, gap + slack});
            }
    for (std::size_t u = 0; u < gaps.size(); ++u)
        for (std::size_t w = u + 1; w < gaps.size(); ++w) {
            const PairGap &g1 = gaps[u], &g2 = gaps[w];
            mpq_class k;
            if (g2.a.is_zero()) {
                if (!g1.a.is_zero()) continue;
                k = 1;
            } else {
                const auto& [m, c] = *g2.a.terms().begin();
                auto it = g1.a.terms().find(m);
                if (it == g1.a.terms().end()) continue;
                k = it->second / c;
                if (!(g1.a - Poly(k) * g2.a).is_zero()) continue;
            }
            // g1 - k g2 = q1 - k q2 lies in lo..hi below
            mpq_class lo = k > 0 ? g1.lo - k * g2.hi : g1.lo - k * g2.lo;
            mpq_class hi = k > 0 ? g1.hi - k * g2.lo : g1.hi - k * g2.hi;
            Poly r = g1.q - Poly(k) * g2.q;
            if (lo >= 0 && nonpositive(r)) return true;
            if (hi <= 0 && nonpositive(-r)) return true;
        }
    return false;
}

// Contraction collapse: alpha < beta joined by e, alpha a base, gamma > alpha joined to alpha,
// and delta_i merges beta with gamma.
bool contraction_collapses(const MapExpr& f, const PGraph& g, const Edge& e, int i) {
    auto [alpha, beta] = e;
    std::vector<int> comp = component_labels(g);
    if (!is_base(f, g, alpha)) return false;
    for (int gamma = alpha + 1; gamma + 1 < g.partition().pieces(); ++gamma) {
        if (gamma == beta || comp[static_cast<std::size_t>(gamma)] != comp[static_cast<std::size_t>(alpha)]) continue;
        if (merged_index(beta, i) == merged_index(gamma, i)) return true;
    }
    return false;
}

int permutation_sign(const std::vector<std::size_t>& perm) {
    int inv = 0;
    for (std::size_t a = 0; a < perm.size(); ++a)
        for (std::size_t b = a + 1; b < perm.size(); ++b)
            if (perm[a] > perm[b]) ++inv;
    return inv % 2 ? -1 : 1;
}

std::string label_key(const PGraph& g) { return g.partition().to_string() + g.to_string(); }

}  // namespace

bool is_base(const MapExpr& f, const PGraph& g, int piece) {
    const Partition& p = g.partition();
    std::vector<int> comp = component_labels(g);
    int c = comp[static_cast<std::size_t>(piece)];
    for (const auto& [a, b] : g.edges())
        if (comp[static_cast<std::size_t>(a)] == c && a < piece && b < piece) return false;
    std::vector<int> alpha = points_of(p, piece);
    for (int k = 1; k + 1 < p.pieces(); ++k) {
        if (comp[static_cast<std::size_t>(k)] != c) continue;
        for (int i : points_of(p, k))
            if (!in_hull(f, i, alpha)) return false;
    }
    return true;
}

bool is_condensed_for(const MapExpr& f, const PGraph& g) {
    const Partition& p = g.partition();
    if (f.n() != p.n()) return false;
    std::vector<int> comp = component_labels(g);
    std::set<int> done;
    for (int k = 1; k + 1 < p.pieces(); ++k) {
        int c = comp[static_cast<std::size_t>(k)];
        if (done.count(c)) continue;
        bool found = false;
        for (int a = 1; a + 1 < p.pieces() && !found; ++a)
            if (comp[static_cast<std::size_t>(a)] == c && is_base(f, g, a)) found = true;
        if (!found) return false;
        done.insert(c);
    }
    return true;
}

LedgerTerm make_term(mpq_class coef, MapExpr map, std::vector<std::string> params, PGraph label, std::string tag) {
    PGraph support = label;
    return LedgerTerm{std::move(coef), std::move(map), std::move(params), std::move(label), std::move(support),
                      std::move(tag)};
}

CanonicalForm canonicalize(const MapExpr& m, const std::vector<std::string>& params) {
    std::vector<std::string> s, t;
    for (const auto& p : params) (is_t(p) ? t : s).push_back(p);
    std::vector<std::size_t> ps(s.size()), pt(t.size());
    std::iota(ps.begin(), ps.end(), 0);
    CanonicalForm best{m, params, {}, 1, false};
    std::string best_text;
    bool have = false;
    do {
        std::iota(pt.begin(), pt.end(), 0);
        do {
            std::map<std::string, std::string> names;
            std::vector<std::string> order;
            for (std::size_t k = 0; k < ps.size(); ++k) {
                names[s[ps[k]]] = "s" + std::to_string(k + 1);
                order.push_back("s" + std::to_string(k + 1));
            }
            for (std::size_t k = 0; k < pt.size(); ++k) {
                names[t[pt[k]]] = "t" + std::to_string(k + 1);
                order.push_back("t" + std::to_string(k + 1));
            }
            int sign = permutation_sign(ps) * permutation_sign(pt);
            MapExpr r = m.rename(names);
            for (int swap = 0; swap < 2; ++swap) {
                MapExpr cand = swap ? r.transposed() : r;
                std::string text = cand.to_string();
                if (!have || text < best_text) {
                    best = {cand, order, names, sign, false};
                    best_text = text;
                    have = true;
                } else if (text == best_text && sign != best.sign) {
                    best.torsion = true;
                }
            }
        } while (std::next_permutation(pt.begin(), pt.end()));
    } while (std::next_permutation(ps.begin(), ps.end()));
    return best;
}

void LedgerChain::add(LedgerTerm t) {
    if (t.coef == 0) return;
    CanonicalForm cf = canonicalize(t.map, t.params);
    for (const auto& p : cf.params)
        if (is_t(p) && !cf.map.depends_on(p)) return;  // degenerate simplex
    std::string key = label_key(t.label) + "|" + cf.map.to_string();
    for (const auto& p : cf.params) key += "|" + p;
    key += "#" + t.support.to_string();
    t.coef *= cf.sign;
    t.map = cf.map;
    t.params = cf.params;
    if (cf.torsion && std::find(torsion_.begin(), torsion_.end(), key) == torsion_.end()) torsion_.push_back(key);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, std::move(t));
        return;
    }
    it->second.coef += t.coef;
    if (it->second.coef == 0) terms_.erase(it);
}

void LedgerChain::add(const LedgerChain& c, const mpq_class& k) {
    for (const auto& [key, t] : c.terms_) {
        LedgerTerm u = t;
        u.coef *= k;
        add(std::move(u));
    }
}

LedgerChain LedgerChain::operator+(const LedgerChain& o) const {
    LedgerChain r = *this;
    r.add(o);
    return r;
}

LedgerChain LedgerChain::operator-(const LedgerChain& o) const {
    LedgerChain r = *this;
    r.add(o, -1);
    return r;
}

LedgerChain LedgerChain::scaled(const mpq_class& k) const {
    LedgerChain r;
    r.add(*this, k);
    return r;
}

long reduce_mod(const mpq_class& q, int p) {
    if (p <= 1) throw PreconditionError("reduction needs a prime");
    mpz_class num = q.get_num() % p, den = q.get_den() % p;
    if (den == 0) throw PreconditionError("denominator divisible by p");
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mpz_class(p).get_mpz_t());
    mpz_class r = (num * inv) % p;
    if (r < 0) r += p;
    return r.get_si();
}

namespace {

std::string without_support(const std::string& key) { return key.substr(0, key.rfind('#')); }

}  // namespace

std::size_t LedgerChain::distinct_size() const {
    std::map<std::string, mpq_class> coefs;
    for (const auto& [k, t] : terms_) coefs[without_support(k)] += t.coef;
    return static_cast<std::size_t>(
        std::count_if(coefs.begin(), coefs.end(), [](const auto& kv) { return kv.second != 0; }));
}

std::vector<std::string> LedgerChain::difference_mod(const LedgerChain& o, int p) const {
    std::map<std::string, std::pair<mpq_class, mpq_class>> coefs;
    std::map<std::string, const LedgerTerm*> sample;
    for (const auto& [k, t] : terms_) {
        coefs[without_support(k)].first += t.coef;
        sample.emplace(without_support(k), &t);
    }
    for (const auto& [k, t] : o.terms_) {
        coefs[without_support(k)].second += t.coef;
        sample.emplace(without_support(k), &t);
    }
    std::set<std::string> torsion;
    for (const auto& k : torsion_) torsion.insert(without_support(k));
    for (const auto& k : o.torsion_) torsion.insert(without_support(k));
    std::vector<std::string> out;
    for (const auto& [k, c] : coefs) {
        mpq_class diff = c.first - c.second;
        bool zero = p == 0 ? diff == 0 : reduce_mod(diff, p) == 0;
        if (!zero && p != 2 && torsion.count(k)) zero = true;  // 2T = 0 with 2 invertible
        if (zero) continue;
        const LedgerTerm& t = *sample.at(k);
        out.push_back(c.first.get_str() + " vs " + c.second.get_str() + "  " + (t.tag.empty() ? "" : "[" + t.tag + "] ") + k);
    }
    return out;
}

std::string LedgerChain::to_string() const {
    std::ostringstream os;
    for (const auto& [k, t] : terms_) os << t.coef.get_str() << "  " << (t.tag.empty() ? "" : "[" + t.tag + "] ") << k << "\n";
    return os.str();
}

LedgerContext::LedgerContext(std::vector<ZeroFact> facts) : facts_(std::move(facts)) {}

std::string data_dir() {
    if (const char* env = std::getenv("KNOTSS_DATA")) return env;
#ifdef KNOTSS_DATA_DIR
    return KNOTSS_DATA_DIR;
#else
    return "data";
#endif
}

LedgerContext LedgerContext::from_file(const std::string& path) {
    std::string file = path.empty() ? data_dir() + "/zero_facts.json" : path;
    std::ifstream in(file);
    if (!in) throw PreconditionError("cannot open zero-fact table " + file);
    nlohmann::json j = nlohmann::json::parse(in);
    std::vector<ZeroFact> facts;
    for (const auto& f : j.at("facts"))
        facts.push_back({f.at("id").get<std::string>(), f.at("kind").get<std::string>(),
                         f.at("citation").get<std::string>(), f.value("description", std::string())});
    return LedgerContext(std::move(facts));
}

const ZeroFact* LedgerContext::find(const std::string& kind) const {
    for (const auto& f : facts_)
        if (f.kind == kind) return &f;
    return nullptr;
}

void LedgerContext::record(const ZeroFact& f, const MapExpr& m, const Partition& target, const std::string& detail) {
    std::string key = f.id + "|" + m.to_string() + "|" + target.to_string();
    if (seen_.count(key)) return;
    seen_[key] = uses_.size();
    uses_.push_back({f.id, f.citation, m, target, detail});
}

// The collapse rules only look at the map and the label's partition, so a term is killed the same way
// whichever construction produced it. Graphs are searched among the smallest witnesses: any condensed
// graph containing an edge can be cut down to that edge plus a star from a base of its component.
std::optional<LedgerContext::Kill> LedgerContext::kill_search(const MapExpr& map, const Partition& p, int i) {
    std::string key = std::to_string(i) + "|" + p.to_string() + "|" + map.to_string();
    auto cached = kill_cache_.find(key);
    if (cached != kill_cache_.end()) return cached->second;
    auto remember = [&](const ZeroFact& f, const std::string& why) {
        Kill k{&f, why + " on " + p.to_string() + ", delta_" + std::to_string(i)};
        kill_cache_[key] = k;
        return std::optional<Kill>(k);
    };
    const int internal = p.pieces() - 2;
    if (const ZeroFact* f = find("support-collapse")) {
        MapExpr u = u_part(map);
        for (int a = 1; a <= internal; ++a)
            for (int b = a + 1; b <= internal; ++b) {
                int ia = merged_index(a, i), ib = merged_index(b, i);
                if (!(ia == ib || ia == 0 || ib + 1 == p.pieces() - 1)) continue;
                for (int c = 0; c <= internal; ++c) {
                    if (c == a || c == b) continue;
                    std::vector<std::vector<Edge>> shapes;
                    if (c == 0)
                        shapes.push_back({{a, b}});
                    else
                        for (int mask = 1; mask < 4; ++mask) {
                            std::vector<Edge> es{{a, b}};
                            if (mask & 1) es.push_back({std::min(a, c), std::max(a, c)});
                            if (mask & 2) es.push_back({std::min(b, c), std::max(b, c)});
                            shapes.push_back(es);
                        }
                    for (auto& es : shapes) {
                        std::sort(es.begin(), es.end());
                        PGraph s(p, es);
                        if (is_condensed_for(u, s)) return remember(*f, "support " + s.to_string());
                    }
                }
            }
    }
    if (const ZeroFact* f = find("contraction-collapse")) {
        std::vector<std::string> ss;
        for (const auto& v : map.parameters())
            if (!is_t(v)) ss.push_back(v);
        if (ss.empty()) {
            for (int a = 1; a <= internal; ++a)
                for (int b = a + 1; b <= internal; ++b)
                    for (int c = a + 1; c <= internal; ++c) {
                        if (c == b || merged_index(b, i) != merged_index(c, i)) continue;
                        PGraph s(p, {{a, b}, {a, c}});
                        if (is_condensed_for(map, s) && contraction_collapses(map, s, {a, b}, i))
                            return remember(*f, "s = 0 end of the contraction of (" + std::to_string(a) + "," +
                                                    std::to_string(b) + ") for " + s.to_string());
                    }
        } else if (ss.size() == 1) {
            MapExpr base = map.restrict(ss[0], 0);
            std::vector<Edge> all;
            for (int a = 1; a <= internal; ++a)
                for (int b = a + 1; b <= internal; ++b) all.push_back({a, b});
            const std::size_t m = all.size();
            // graphs with one to three edges; index m stands for "no edge"
            for (std::size_t x = 0; x < m; ++x)
                for (std::size_t y = x + 1; y <= m; ++y)
                    for (std::size_t z = y + 1; z <= m + 1; ++z) {
                        if ((y == m) != (z == m + 1)) continue;
                        std::vector<Edge> es{all[x]};
                        if (y < m) es.push_back(all[y]);
                        if (z < m) es.push_back(all[z]);
                        PGraph s(p, es);
                        if (!is_condensed_for(base, s)) continue;
                        for (const auto& e : es) {
                            if (!contraction_collapses(base, s, e, i)) continue;
                            for (int dir : {1, -1}) {
                                bool same = false;
                                try {
                                    same = contraction(base, s, e, ss[0], dir) == map;
                                } catch (const std::exception&) {
                                }
                                if (same)
                                    return remember(*f, "contraction of (" + std::to_string(e.first) + "," +
                                                            std::to_string(e.second) + ") for " + s.to_string());
                            }
                        }
                    }
        }
    }
    kill_cache_[key] = std::nullopt;
    return std::nullopt;
}

std::optional<std::string> LedgerContext::delta_kill(const LedgerTerm& t, int i) {
    auto k = kill_search(t.map, t.label.partition(), i);
    if (!k) return std::nullopt;
    record(*k->fact, t.map, t.label.partition().merge(i), k->why);
    return k->fact->id;
}

void LedgerContext::support_kill(const LedgerTerm& t, int i) {
    if (const ZeroFact* f = find("support-collapse"))
        record(*f, t.map, t.label.partition().merge(i),
               "support " + t.support.to_string() + " of the label " + t.label.to_string() + " on " +
                   t.label.partition().to_string() + ", delta_" + std::to_string(i));
}

// The merge rules say where the image lies in T of the coarser partition, so they apply to any term on it,
// whichever finer partition it came from.
bool LedgerContext::collapses_after_merge(const LedgerTerm& t) {
    const Partition& q = t.label.partition();
    const std::vector<int>& sizes = q.sizes();
    for (int k = 0; k < q.pieces(); ++k)
        for (int cut = 1; cut < sizes[static_cast<std::size_t>(k)]; ++cut) {
            std::vector<int> finer = sizes;
            finer[static_cast<std::size_t>(k)] = cut;
            finer.insert(finer.begin() + k + 1, sizes[static_cast<std::size_t>(k)] - cut);
            if (auto kill = kill_search(t.map, Partition(q.n(), finer), k)) {
                record(*kill->fact, t.map, q, kill->why);
                return true;
            }
        }
    return false;
}

LedgerChain LedgerContext::prune(const LedgerChain& c) {
    const ZeroFact* f = find("misordered-pair");
    const ZeroFact* g = find("spacing-mismatch");
    if (!f) return c;
    LedgerChain out;
    for (const auto& [k, t] : c.terms()) {
        if (always_misordered(t.map, t.label.partition())) {
            record(*f, t.map, t.label.partition(), "term " + (t.tag.empty() ? k : t.tag));
            continue;
        }
        if (g && spacing_mismatch(t.map, t.label.partition())) {
            record(*g, t.map, t.label.partition(), "term " + (t.tag.empty() ? k : t.tag));
            continue;
        }
        if (collapses_after_merge(t)) continue;
        out.add(t);
    }
    return out;
}

std::vector<LemmaReport> LedgerContext::attack_uses(std::size_t samples, std::uint64_t seed) const {
    std::map<std::string, LemmaReport> by_fact;
    std::mt19937_64 rng(seed);
    std::map<int, Params> prm;
    for (const auto& u : uses_) {
        int n = u.target.n();
        if (!prm.count(n)) prm.emplace(n, default_params(n));
        LemmaReport r = attack_map(prm.at(n), u.map, PGraph(u.target, {}), MapClaim::Basepoint, samples, rng, u.fact);
        for (auto& w : r.counterexamples) w = u.detail + ": " + w;
        auto it = by_fact.find(u.fact);
        if (it == by_fact.end())
            by_fact.emplace(u.fact, r);
        else
            it->second.merge(r);
    }
    std::vector<LemmaReport> out;
    for (auto& [id, r] : by_fact) {
        r.seed = seed;
        out.push_back(r);
    }
    return out;
}

LedgerChain boundary_D(LedgerContext& ctx, const LedgerChain& c, Convention conv) {
    LedgerChain out;
    for (const auto& [key, t] : c.terms()) {
        const std::size_t m = t.params.size();
        for (std::size_t k = 0; k < m; ++k) {
            const std::string& name = t.params[k];
            mpq_class sign = (k % 2) ? -1 : 1;
            LedgerTerm base = t;
            base.params.erase(base.params.begin() + static_cast<long>(k));
            if (!is_t(name)) {
                LedgerTerm r = base;
                r.map = t.map.restrict(name, 0);
                r.coef = t.coef * sign;
                out.add(std::move(r));
            } else {
                for (int end = 0; end < 2; ++end) {
                    LedgerTerm r = base;
                    r.map = t.map.restrict(name, end);
                    r.coef = t.coef * sign * (end ? 1 : -1);
                    out.add(std::move(r));
                }
            }
        }
        if (t.label.edge_count() >= 2) {
            int deg_sign = (conv == Convention::Char3 && t.degree() % 2) ? -1 : 1;
            for (std::size_t k = 1; k <= t.label.edge_count(); ++k) {
                LedgerTerm r = t;
                r.label = t.label.remove_edge(k);
                r.coef = t.coef * deg_sign * ((k - 1) % 2 ? -1 : 1);
                out.add(std::move(r));
            }
        }
    }
    return ctx.prune(out);
}

LedgerChain apply_delta_i(LedgerContext& ctx, const LedgerChain& c, int i) {
    LedgerChain out;
    for (const auto& [key, t] : c.terms()) {
        if (i < 0 || i + 2 > t.label.partition().pieces()) continue;
        auto img = delta_graph(i, t.label);
        if (!img) continue;
        auto sup = delta_graph(i, t.support);
        if (!sup) {
            ctx.support_kill(t, i);
            continue;
        }
        LedgerTerm r = t;
        r.coef = t.coef * img->sign;
        r.label = img->graph;
        r.support = sup->graph;
        out.add(std::move(r));
    }
    return ctx.prune(out);
}

LedgerChain apply_delta(LedgerContext& ctx, const LedgerChain& c) {
    int top = 0;
    for (const auto& [k, t] : c.terms()) top = std::max(top, t.label.partition().pieces() - 2);
    LedgerChain out;
    for (int i = 0; i <= top; ++i) out.add(apply_delta_i(ctx, c, i), i % 2 ? -1 : 1);
    return out;
}

}  // namespace knotss
