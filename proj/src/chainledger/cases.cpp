#include <fstream>

#include "json.hpp"
#include "knotss/chainledger.hpp"

namespace knotss {

namespace {

using Chain = LedgerChain;

int merged(int v, int i) { return v <= i ? v : v - 1; }

Edge image_edge(int i, const Edge& e) {
    Edge r{merged(e.first, i), merged(e.second, i)};
    if (r.first > r.second) std::swap(r.first, r.second);
    return r;
}

PGraph delta_of(int i, const PGraph& g) {
    auto d = delta_graph(i, g);
    if (!d) throw PreconditionError("delta_" + std::to_string(i) + " kills " + g.to_string());
    return d->graph;
}

std::optional<PGraph> maybe_delta(int i, const PGraph& g) {
    auto d = delta_graph(i, g);
    if (!d) return std::nullopt;
    return d->graph;
}

Edge edge(const PGraph& g, std::size_t j) { return g.edges().at(j - 1); }

PGraph without(const PGraph& g, std::size_t j, std::size_t k = 0) {
    // k > j when given
    return k ? g.remove_edge(k).remove_edge(j) : g.remove_edge(j);
}

MapExpr contract2(const MapExpr& f, const PGraph& g, const Edge& a, const Edge& b, int dir = 1) {
    return contraction(contraction(f, g, a, "s1", dir), g, b, "s2", dir);
}

LedgerTerm contraction_term(mpq_class coef, const MapExpr& base, const PGraph& g, const Edge& e, int dir,
                            std::vector<std::string> params, const PGraph& label, std::string tag) {
    return make_term(std::move(coef), contraction(base, g, e, "s", dir), std::move(params), label, std::move(tag));
}

mpq_class alt(int k) { return k % 2 ? -1 : 1; }

std::string jtag(const std::string& stem, std::size_t j, std::size_t k = 0) {
    return stem + "_" + std::to_string(j) + (k ? std::to_string(k) : "");
}

// The edge of h with the same delta_i image as e.
Edge matching_edge(const PGraph& h, int i, const Edge& e) {
    Edge target = image_edge(i, e);
    for (const auto& x : h.edges())
        if (image_edge(i, x) == target) return x;
    throw PreconditionError("no matching edge in " + h.to_string());
}

struct Homotopy {
    MapExpr f, fp, psi;
    PGraph dg;
};

// psi runs from f_G to f_H, precomposed with the swap when their i-th points differ.
Homotopy homotopy(const PGraph& g, const PGraph& h, int i) {
    PGraph dg = delta_of(i, g), dh = delta_of(i, h);
    if (!(dg == dh)) throw PreconditionError("delta_i G and delta_i H differ");
    MapExpr f = condensed_map(g), fp = condensed_map(h);
    MapExpr end = f.component(i) == fp.component(i) ? fp : fp.transposed();
    return {f, fp, straight_homotopy(f, end, "t"), dg};
}

Chain bounding(const PGraph& g, const PGraph& h, int i, bool signed_version, bool psi_only) {
    Homotopy hm = homotopy(g, h, i);
    Chain c;
    if (!psi_only) c.add(make_term(1, hm.psi, {"t"}, hm.dg, "psi"));
    const std::size_t m = g.edge_count();
    for (std::size_t j = 1; j <= m; ++j) {
        Edge e = edge(g, j), de = image_edge(i, e), he = matching_edge(h, i, e);
        PGraph lab = delta_of(i, without(g, j));
        mpq_class sg = signed_version ? alt(static_cast<int>(j) + 1) : mpq_class(1);
        c.add(contraction_term(sg, hm.psi, hm.dg, de, 1, {"s", "t"}, lab, jtag("psi", j)));
        if (psi_only) continue;
        c.add(make_term(sg,
                        straight_homotopy(contraction(hm.f, g, e, "s"), contraction(hm.f, hm.dg, de, "s"), "t"),
                        {"s", "t"}, lab, jtag("lambda", j)));
        c.add(make_term(signed_version ? -sg : sg,
                        straight_homotopy(contraction(hm.fp, h, he, "s"), contraction(hm.fp, hm.dg, de, "s"), "t"),
                        {"s", "t"}, lab, jtag("lambda'", j)));
    }
    if (!signed_version || psi_only) return c;
    for (std::size_t j = 1; j <= m; ++j)
        for (std::size_t k = j + 1; k <= m; ++k) {
            Edge ej = edge(g, j), ek = edge(g, k);
            Edge dj = image_edge(i, ej), dk = image_edge(i, ek);
            Edge hj = matching_edge(h, i, ej), hk = matching_edge(h, i, ek);
            PGraph lab = delta_of(i, without(g, j, k));
            mpq_class sg = alt(static_cast<int>(j + k) + 1);
            std::vector<std::string> p{"s1", "s2", "t"};
            c.add(make_term(sg, contract2(hm.psi, hm.dg, dj, dk), p, lab, jtag("psi", j, k)));
            c.add(make_term(sg, straight_homotopy(contract2(hm.f, g, ej, ek), contract2(hm.f, hm.dg, dj, dk), "t"), p,
                            lab, jtag("lambda", j, k)));
            c.add(make_term(-sg,
                            straight_homotopy(contract2(hm.fp, h, hj, hk), contract2(hm.fp, hm.dg, dj, dk), "t"), p,
                            lab, jtag("lambda'", j, k)));
        }
    return c;
}

}  // namespace

Chain chain_cycle_ch2(const PGraph& g) {
    MapExpr f = condensed_map(g);
    Chain c;
    c.add(make_term(1, f, {}, g, "f"));
    for (std::size_t j = 1; j <= g.edge_count(); ++j)
        c.add(contraction_term(1, f, g, edge(g, j), 1, {"s"}, without(g, j), jtag("f", j)));
    return c;
}

Chain chain_cycle_ch3(const PGraph& g) {
    MapExpr f = condensed_map(g);
    Chain c;
    c.add(make_term(1, f, {}, g, "f"));
    const std::size_t m = g.edge_count();
    for (std::size_t j = 1; j <= m; ++j)
        c.add(contraction_term(alt(static_cast<int>(j)), f, g, edge(g, j), 1, {"s"}, without(g, j), jtag("f", j)));
    for (std::size_t j = 1; j <= m; ++j)
        for (std::size_t k = j + 1; k <= m; ++k)
            c.add(make_term(alt(static_cast<int>(j + k) + 1), contract2(f, g, edge(g, j), edge(g, k)), {"s1", "s2"},
                            without(g, j, k), jtag("f", j, k)));
    return c;
}

Chain chain_bounding_ch2(const PGraph& g, const PGraph& h, int i) { return bounding(g, h, i, false, false); }
Chain chain_bounding_ch2_psi(const PGraph& g, const PGraph& h, int i) { return bounding(g, h, i, false, true); }
Chain chain_bounding_ch3(const PGraph& g, const PGraph& h, int i) { return bounding(g, h, i, true, false); }

Chain chain_i_contraction(const PGraph& g, int i) {
    MapExpr f = condensed_map(g);
    Chain c;
    const std::size_t m = g.edge_count();
    for (std::size_t j = 1; j <= m; ++j) {
        auto lab = maybe_delta(i, without(g, j));
        if (!lab) continue;
        MapExpr fj = contraction(f, g, edge(g, j), "s1");
        for (int eps : {1, -1})
            c.add(make_term(alt(static_cast<int>(j) + 1) / 2, i_contraction(fj, i, eps, "s2"), {"s1", "s2"}, *lab, jtag(eps > 0 ? "f+" : "f-", j)));
    }
    for (std::size_t j = 1; j <= m; ++j)
        for (std::size_t k = j + 1; k <= m; ++k) {
            auto lab = maybe_delta(i, without(g, j, k));
            if (!lab) continue;
            MapExpr fjk = contract2(f, g, edge(g, j), edge(g, k));
            for (int eps : {1, -1})
                c.add(make_term(alt(static_cast<int>(j + k) + 1) / 2, i_contraction(fjk, i, eps, "s3"),
                                {"s1", "s2", "s3"}, *lab, jtag(eps > 0 ? "f+" : "f-", j, k)));
        }
    return c;
}

Chain chain_cycle_prime(const PGraph& g) {
    MapExpr f = condensed_map(g);
    Chain c;
    c.add(make_term(1, f, {}, g, "f"));
    for (std::size_t j = 1; j <= g.edge_count(); ++j)
        for (int eps : {1, -1})
            c.add(contraction_term(alt(static_cast<int>(j)) / 2, f, g, edge(g, j), eps, {"s"}, without(g, j),
                                   jtag(eps > 0 ? "f+" : "f-", j)));
    return c;
}

Chain chain_bounding_prime(const PGraph& g, const PGraph& h, int i) {
    Homotopy hm = homotopy(g, h, i);
    Chain c;
    c.add(make_term(1, hm.psi, {"t"}, hm.dg, "psi"));
    for (std::size_t j = 1; j <= g.edge_count(); ++j) {
        Edge e = edge(g, j), de = image_edge(i, e), he = matching_edge(h, i, e);
        PGraph lab = delta_of(i, without(g, j));
        mpq_class sg = alt(static_cast<int>(j) + 1) / 2;
        for (int eps : {1, -1}) {
            std::string pm = eps > 0 ? "+" : "-";
            c.add(contraction_term(sg, hm.psi, hm.dg, de, eps, {"s", "t"}, lab, jtag("psi" + pm, j)));
            c.add(make_term(sg,
                            straight_homotopy(contraction(hm.f, g, e, "s", eps),
                                              contraction(hm.f, hm.dg, de, "s", eps), "t"),
                            {"s", "t"}, lab, jtag("lambda" + pm, j)));
            c.add(make_term(-sg,
                            straight_homotopy(contraction(hm.fp, h, he, "s", eps),
                                              contraction(hm.fp, hm.dg, de, "s", eps), "t"),
                            {"s", "t"}, lab, jtag("lambda'" + pm, j)));
        }
    }
    return c;
}

Chain chain_three_term(const PGraph& g5, const PGraph& g6, const PGraph& g7, const PGraph& g8) {
    const int i = 2;
    MapExpr f1 = condensed_map(g5), f2 = condensed_map(g6), f3 = condensed_map(g7);
    PGraph d5 = delta_of(i, g5), d6 = delta_of(i, g6), d7 = delta_of(i, g7);
    Chain c;
    c.add(make_term(1, f1, {}, g8, "f1"));
    MapExpr psi = straight_homotopy(f1, f2, "t"), phi = straight_homotopy(f1, f3, "t");
    c.add(make_term(1, psi, {"t"}, d6, "psi"));
    c.add(make_term(1, phi, {"t"}, d7, "phi"));
    struct Piece {
        const PGraph* g;
        const PGraph* d;
        const MapExpr* f;
        mpq_class sign;
        std::string name;
    };
    const Piece lambdas[] = {{&g5, &d5, &f1, 1, "lambda1"}, {&g6, &d6, &f2, -1, "lambda2"}, {&g7, &d7, &f3, -1, "lambda3"}};
    for (std::size_t j = 1; j <= 2; ++j)
        for (int eps : {1, -1}) {
            std::string pm = eps > 0 ? "+" : "-";
            mpq_class w = alt(static_cast<int>(j) + 1) / 2;
            c.add(contraction_term(w, psi, d6, image_edge(i, edge(g6, j)), eps, {"s", "t"},
                                   delta_of(i, without(g6, j)), jtag("psi" + pm, j)));
            c.add(contraction_term(w, phi, d7, image_edge(i, edge(g7, j)), eps, {"s", "t"},
                                   delta_of(i, without(g7, j)), jtag("phi" + pm, j)));
            for (const auto& l : lambdas) {
                Edge e = edge(*l.g, j);
                c.add(make_term(l.sign * w,
                                straight_homotopy(contraction(*l.f, *l.g, e, "s", eps),
                                                  contraction(*l.f, *l.d, image_edge(i, e), "s", eps), "t"),
                                {"s", "t"}, delta_of(i, without(*l.g, j)), jtag(l.name + pm, j)));
            }
        }
    return c;
}

bool CaseReport::pass() const {
    for (const auto& r : identities)
        if (!r.pass) return false;
    for (const auto& a : attacks)
        if (!a.pass()) return false;
    return d_squared_zero && delta_commutes;
}

std::string CaseReport::to_json() const {
    nlohmann::ordered_json j;
    j["case"] = name;
    j["citation"] = citation;
    j["characteristic"] = characteristic;
    j["pass"] = pass();
    nlohmann::ordered_json ids = nlohmann::ordered_json::array();
    for (const auto& r : identities) {
        nlohmann::ordered_json x;
        x["identity"] = r.label;
        x["pass"] = r.pass;
        x["lhs_terms"] = r.lhs_terms;
        x["rhs_terms"] = r.rhs_terms;
        x["symmetric_difference"] = r.difference;
        if (!r.note.empty()) x["note"] = r.note;
        ids.push_back(x);
    }
    j["identities"] = ids;
    j["d_squared_zero"] = d_squared_zero;
    j["d_squared_failures"] = d_squared_failures;
    j["delta_commutes"] = delta_commutes;
    j["commutation_failures"] = commutation_failures;
    j["torsion_terms"] = torsion_terms;
    j["zero_fact_uses"] = zero_fact_uses;
    nlohmann::ordered_json at = nlohmann::ordered_json::array();
    for (const auto& a : attacks) at.push_back(nlohmann::ordered_json::parse(a.to_json()));
    j["zero_fact_attacks"] = at;
    return j.dump(2);
}

namespace {

nlohmann::ordered_json load_cases(const std::string& path) {
    std::string file = path.empty() ? data_dir() + "/cases.json" : path;
    std::ifstream in(file);
    if (!in) throw PreconditionError("cannot open case file " + file);
    return nlohmann::ordered_json::parse(in);
}

PGraph parse_graph(const std::string& spec, int n) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) return PGraph::parse(Partition::discrete(n), spec);
    return PGraph::parse(Partition::parse(spec.substr(0, colon)), spec.substr(colon + 1));
}

mpq_class parse_coef(const nlohmann::ordered_json& j) {
    if (j.is_number_integer()) return mpq_class(j.get<long>());
    mpq_class q(j.get<std::string>());
    q.canonicalize();
    return q;
}

class Evaluator {
public:
    Evaluator(const nlohmann::ordered_json& spec, LedgerContext& ctx, Convention conv) : ctx_(ctx), conv_(conv) {
        int n = spec.at("n").get<int>();
        for (const auto& [name, g] : spec.at("graphs").items()) graphs_.emplace(name, parse_graph(g, n));
        for (const auto& [name, e] : spec.at("chains").items()) {
            named_.emplace(name, eval(e));
            order_.push_back(name);
        }
    }

    Chain eval(const nlohmann::ordered_json& e) {
        if (e.is_number_integer() && e.get<long>() == 0) return {};
        if (e.is_string()) {
            auto it = named_.find(e.get<std::string>());
            if (it == named_.end()) throw PreconditionError("unknown chain " + e.get<std::string>());
            return it->second;
        }
        if (e.contains("build")) return ctx_.prune(build(e));
        if (e.contains("sum")) {
            Chain c;
            for (const auto& part : e.at("sum")) c.add(eval(part.at(1)), parse_coef(part.at(0)));
            return c;
        }
        if (e.contains("D")) return boundary_D(ctx_, eval(e.at("D")), conv_);
        if (e.contains("delta")) return apply_delta(ctx_, eval(e.at("delta")));
        if (e.contains("delta_i")) return apply_delta_i(ctx_, eval(e.at("of")), e.at("delta_i").get<int>());
        throw PreconditionError("bad chain expression " + e.dump());
    }

    const std::map<std::string, Chain>& named() const { return named_; }
    const std::vector<std::string>& order() const { return order_; }

private:
    const PGraph& graph(const nlohmann::ordered_json& e, std::size_t k) {
        std::string name = e.at("graphs").at(k).get<std::string>();
        auto it = graphs_.find(name);
        if (it == graphs_.end()) throw PreconditionError("unknown graph " + name);
        return it->second;
    }

    Chain build(const nlohmann::ordered_json& e) {
        std::string b = e.at("build").get<std::string>();
        int i = e.value("i", 0);
        if (b == "c2") return chain_cycle_ch2(graph(e, 0));
        if (b == "c3") return chain_cycle_ch3(graph(e, 0));
        if (b == "cGH2") return chain_bounding_ch2(graph(e, 0), graph(e, 1), i);
        if (b == "cGH2-psi") return chain_bounding_ch2_psi(graph(e, 0), graph(e, 1), i);
        if (b == "cGH3") return chain_bounding_ch3(graph(e, 0), graph(e, 1), i);
        if (b == "cGi") return chain_i_contraction(graph(e, 0), i);
        if (b == "cprime") return chain_cycle_prime(graph(e, 0));
        if (b == "cGHprime") return chain_bounding_prime(graph(e, 0), graph(e, 1), i);
        if (b == "three") return chain_three_term(graph(e, 0), graph(e, 1), graph(e, 2), graph(e, 3));
        throw PreconditionError("unknown constructor " + b);
    }

    LedgerContext& ctx_;
    Convention conv_;
    std::map<std::string, PGraph> graphs_;
    std::map<std::string, Chain> named_;
    std::vector<std::string> order_;
};

std::vector<std::string> head(const std::vector<std::string>& v, std::size_t k = 12) {
    return {v.begin(), v.begin() + static_cast<long>(std::min(k, v.size()))};
}

}  // namespace

std::vector<std::string> case_names(const std::string& cases_path) {
    std::vector<std::string> out;
    nlohmann::ordered_json all = load_cases(cases_path);
    for (const auto& c : all.at("cases")) out.push_back(c.at("name").get<std::string>());
    return out;
}

CaseReport run_case(const std::string& name, const CaseOptions& opt) {
    nlohmann::ordered_json all = load_cases(opt.cases_path);
    const nlohmann::ordered_json* spec = nullptr;
    for (const auto& c : all.at("cases"))
        if (c.at("name") == name) spec = &c;
    if (!spec) throw PreconditionError("unknown case " + name);

    LedgerContext ctx = LedgerContext::from_file(opt.facts_path);
    std::string conv_name = spec->at("convention").get<std::string>();
    if (conv_name != "char2" && conv_name != "char3") throw PreconditionError("unknown convention " + conv_name);
    Convention conv = conv_name == "char2" ? Convention::Char2 : Convention::Char3;
    int p = conv == Convention::Char2 ? 2 : 3;

    CaseReport rep;
    rep.name = name;
    rep.citation = spec->value("citation", std::string());
    rep.characteristic = p;

    Evaluator ev(*spec, ctx, conv);
    for (const auto& id : spec->at("identities")) {
        IdentityResult r;
        r.label = id.at("label").get<std::string>();
        Chain lhs = ev.eval(id.at("lhs")), rhs = ev.eval(id.at("rhs"));
        r.lhs_terms = lhs.distinct_size();
        r.rhs_terms = rhs.distinct_size();
        r.difference = head(lhs.difference_mod(rhs, p), 40);
        r.pass = r.difference.empty();
        if (id.contains("expect_terms") && lhs.distinct_size() != id.at("expect_terms").get<std::size_t>()) {
            r.pass = false;
            r.note = "expected " + std::to_string(id.at("expect_terms").get<std::size_t>()) + " terms";
        }
        if (id.contains("expect_label")) {
            PGraph want = parse_graph(id.at("expect_label").get<std::string>(), spec->at("n").get<int>());
            for (const auto& [k, t] : lhs.terms())
                if (!(t.label == want)) {
                    r.pass = false;
                    r.note = "term off the expected graph: " + k;
                }
        }
        rep.identities.push_back(std::move(r));
    }

    for (const auto& cname : ev.order()) {
        const Chain& c = ev.named().at(cname);
        for (const auto& k : c.torsion()) rep.torsion_terms.push_back(cname + ": " + k);
        Chain dd = boundary_D(ctx, boundary_D(ctx, c, conv), conv);
        for (const auto& k : dd.difference_mod(Chain{}, p)) rep.d_squared_failures.push_back(cname + ": " + k);
        Chain a = boundary_D(ctx, apply_delta(ctx, c), conv);
        Chain b = apply_delta(ctx, boundary_D(ctx, c, conv));
        for (const auto& k : a.difference_mod(b, p)) rep.commutation_failures.push_back(cname + ": " + k);
    }
    rep.d_squared_zero = rep.d_squared_failures.empty();
    rep.delta_commutes = rep.commutation_failures.empty();
    rep.d_squared_failures = head(rep.d_squared_failures);
    rep.commutation_failures = head(rep.commutation_failures);
    rep.zero_fact_uses = ctx.uses().size();
    if (opt.attack_samples > 0) rep.attacks = ctx.attack_uses(opt.attack_samples, opt.seed);
    return rep;
}

}  // namespace knotss
