// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any line fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "knotss/chainledger.hpp"
#include "knotss/free_operad.hpp"
#include "knotss/geomcheck.hpp"
#include "knotss/hochschild.hpp"
#include "knotss/partgraph.hpp"
#include "random_complex.hpp"
#include "synthetic.hpp"

using namespace knotss;

namespace {

const Field F2 = Field::prime(2);
const Field F3 = Field::prime(3);
const Field QQ = Field::rationals();
const std::vector<Field> FIELDS{F2, F3, QQ};

struct Outcome {
    bool ok = true;
    std::ostringstream why;
    void fail(const std::string& s) {
        if (!ok) why << "; ";
        ok = false;
        why << s;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Coefficients of prod_{k=1}^{p-1} (1 + k t).
std::vector<std::size_t> poincare(int p) {
    std::vector<std::size_t> c{1};
    for (int k = 1; k < p; ++k) {
        std::vector<std::size_t> n(c.size() + 1, 0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            n[i] += c[i];
            n[i + 1] += static_cast<std::size_t>(k) * c[i];
        }
        c = n;
    }
    return c;
}

std::vector<Gen> generators(int p) {
    std::vector<Gen> g;
    for (int j = 2; j <= p; ++j)
        for (int i = 1; i < j; ++i) g.push_back({i, j});
    return g;
}

// Rank over f of the normal forms of all degree-q monomials (exhaustive when small, sampled otherwise).
std::size_t normal_form_rank(int p, int q, Field f, std::mt19937_64& rng) {
    auto gens = generators(p);
    std::vector<Vector> cols;
    for (const auto& m : admissible_basis(p, q)) cols.push_back(class_to_vector(normal_form(m, p, f)));
    if (q <= 3 && p <= 6) {
        std::vector<int> idx(q, 0);
        std::function<void(int, int)> rec = [&](int pos, int start) {
            if (pos == q) {
                Monomial m;
                for (int a : idx) m.push_back(gens[a]);
                cols.push_back(class_to_vector(normal_form(m, p, f)));
                return;
            }
            for (int a = start; a < static_cast<int>(gens.size()); ++a) {
                idx[pos] = a;
                rec(pos + 1, a + 1);
            }
        };
        rec(0, 0);
    } else if (q > 0) {
        std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
        for (int it = 0; it < 60; ++it) {
            Monomial m;
            for (int k = 0; k < q; ++k) m.push_back(gens[pick(rng)]);
            cols.push_back(class_to_vector(normal_form(m, p, f)));
        }
    }
    return rank(Matrix::from_columns(f, dim_cohomology(p, q), cols));
}

Outcome c1_dimensions() {
    Outcome o;
    auto t0 = Clock::now();
    std::mt19937_64 rng(1);
    for (int p = 1; p <= 7; ++p) {
        auto pc = poincare(p);
        for (int q = 0; q < p; ++q) {
            if (dim_cohomology(p, q) != pc[q]) o.fail("dim_cohomology(" + std::to_string(p) + "," + std::to_string(q) + ")");
            if (admissible_basis(p, q).size() != pc[q]) o.fail("admissible basis size at p=" + std::to_string(p));
            for (Field f : FIELDS)
                if (normal_form_rank(p, q, f, rng) != pc[q])
                    o.fail("normal form rank over " + f.name() + " at (" + std::to_string(p) + "," + std::to_string(q) + ")");
        }
    }
    double s = seconds_since(t0);
    if (s >= 60) o.fail("took " + std::to_string(s) + " s");
    o.why << (o.ok ? "" : "; ") << "p<=7, F2/F3/Q, " << static_cast<int>(s) << " s";
    return o;
}

Outcome c2_d1_squared() {
    Outcome o;
    for (Field f : FIELDS)
        for (int p = 2; p <= 7; ++p)
            for (int q = 0; q <= p - 1; ++q)
                if (!(sinha_d1_matrix(p - 1, q, f) * sinha_d1_matrix(p, q, f)).is_zero())
                    o.fail(f.name() + " p=" + std::to_string(p) + " q=" + std::to_string(q));
    if (o.ok) o.why << "p<=7 over F2, F3, Q";
    return o;
}

Outcome cycle_in_char(const char* cls, int p, Field good) {
    Outcome o;
    if (!sinha_d1(parse_class(cls, p, good)).is_zero()) o.fail("not a cycle over " + good.name());
    if (sinha_d1(parse_class(cls, p, QQ)).is_zero()) o.fail("a cycle over Q");
    if (o.ok) o.why << "cycle over " << good.name() << ", not over Q";
    return o;
}

Outcome c5_e2_f3() {
    Outcome o;
    E2Report a = e2_report(parse_class("g13*g24", 4, F3));
    if (!a.is_d1_cycle || a.is_d1_boundary || a.e2_dim != 1 || !a.e2_coordinates || (*a.e2_coordinates)[0] == "0")
        o.fail("g13*g24 does not generate E2 at (-4,2)");
    E2Report b = e2_report(parse_class("g12", 2, F3));
    if (!b.is_d1_cycle || b.e2_dim != 1 || !b.e2_coordinates || (*b.e2_coordinates)[0] == "0")
        o.fail("g12 does not generate E2 at (-2,1)");
    if (o.ok) o.why << "both slots one-dimensional with the expected generators";
    return o;
}

Outcome c6_mu3() {
    Outcome o;
    for (Field f : FIELDS)
        if (std::size_t r = mu3_obstruction_rank(f); r != 3) o.fail(f.name() + " rank " + std::to_string(r));
    if (o.ok) o.why << "rank 3 over F2, F3, Q";
    return o;
}

Outcome c7_higher_differentials() {
    Outcome o;
    for (Field f : FIELDS) {
        FilteredComplex c = hochschild_complex(sinha_presentation(6, f), HochschildMode::Signed);
        SpectralSequence ss(c, 4);
        for (int r = 2; r <= 4; ++r)
            for (const auto& [s, sp] : ss.page(r).slots)
                if (s.first < 6 && sp.d_rank != 0)
                    o.fail(f.name() + " d" + std::to_string(r) + " at (" + std::to_string(-s.first) + "," +
                           std::to_string(s.second) + ")");
    }
    Vector x = class_to_vector(parse_class("g13*g24", 4, F3));
    LiftResult lr = d2_via_lifting(x, {4, 2}, sinha_presentation(5, F3), HochschildMode::Signed);
    if (!lr.zero_class) o.fail("d2(g13*g24) by lifting is nonzero");
    if (o.ok) o.why << "d2..d4 vanish below arity 6; lifted d2(g13*g24) = 0 over F3";
    return o;
}

Outcome c8_ainf() {
    Outcome o;
    auto t0 = Clock::now();
    auto rows = ainf_check(F2, 6, SignMode::Unsigned);
    if (rows.empty() || rows.back().arity != 6) o.fail("arities up to 6 not covered");
    for (const auto& row : rows)
        if (!row.d_squared_zero) o.fail("d^2 != 0 in arity " + std::to_string(row.arity));
    double s = seconds_since(t0);
    if (s >= 30) o.fail("took " + std::to_string(s) + " s");
    if (!rows.empty()) o.why << (o.ok ? "" : "; ") << "arities " << rows.front().arity << ".." << rows.back().arity << " over F2";
    return o;
}

// d_1 on a page-1 class against [mu_2 x_p]; returns the number of mismatches.
std::size_t d1_mu2_mismatches(const OperadPresentation& pr) {
    std::size_t bad = 0;
    FilteredComplex c = hochschild_complex(pr, HochschildMode::Signed);
    if (!c.squares_to_zero()) ++bad;
    SpectralSequence ss(c, 1);
    for (const auto& [s, sp] : ss.page(1).slots) {
        Slot t{s.first - 1, s.second};
        if (sp.dim == 0 || c.slot_dim(t) == 0) continue;
        Matrix mu2 = mu_action_matrix(pr, 2, s.first, s.second, HochschildMode::Signed);
        for (std::size_t k = 0; k < sp.dim; ++k) {
            Vector xp = slot_component(c, s, sp.reps.column(k));
            auto coords = ss.class_coordinates(t, 1, embed_slot_vector(c, t, mu2.apply(xp)));
            if (!coords || *coords != sp.d.column(k)) ++bad;
        }
    }
    return bad;
}

// A presentation with nonzero mu_3 where d2 must match the lifting formula.
bool crafted_toy(Field f) {
    OperadPresentation o(f, 4);
    o.set_component(4, 2, {"x"});
    o.set_component(3, 1, {"y"});
    o.set_component(3, 2, {"z"});
    o.set_component(2, 1, {"w"});
    o.set_internal_differential(3, 1, Matrix::from_rows(f, {{1}}));
    o.supply_mu(2);
    o.supply_mu(3);
    o.set_oracle({OracleKind::OuterLast, 2, 2, 4, 2}, Matrix::from_rows(f, {{1}}));
    o.set_oracle({OracleKind::OuterLast, 3, 3, 4, 2}, Matrix::from_rows(f, {{1}}));
    o.fill_missing_with_zero();

    FilteredComplex c = hochschild_complex(o, HochschildMode::Signed);
    if (!c.squares_to_zero()) return false;
    SpectralSequence ss(c, 3);
    const SlotPage& sp = ss.page(2).slots.at({4, 2});
    if (sp.dim != 1) return false;
    Vector x{Scalar(f, 1)};
    LiftResult lr = d2_via_lifting(x, {4, 2}, o, HochschildMode::Signed);
    if (lr.zero_class || lr.lift != Vector{Scalar(f, 1)}) return false;
    Vector v = embed_slot_vector(c, {4, 2}, x);
    Vector y = embed_slot_vector(c, {3, 1}, lr.lift);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= y[k];
    auto coords = ss.class_coordinates({4, 2}, 2, v);
    return coords && sp.d.apply(*coords) == lr.e2_coordinates && ss.page(3).dim({4, 2}) == 0;
}

Outcome c9_synthetic() {
    Outcome o;
    std::mt19937_64 rng(909);
    std::size_t n = 0;
    for (Field f : FIELDS)
        for (int it = 0; it < 7; ++it, ++n) {
            OperadPresentation pr = testing::synthetic_presentation(sinha_presentation(4, f), rng);
            if (std::size_t bad = d1_mu2_mismatches(pr))
                o.fail(f.name() + " presentation " + std::to_string(it) + ": " + std::to_string(bad) + " mismatches");
        }
    for (Field f : FIELDS)
        if (!crafted_toy(f)) o.fail("crafted mu3 toy over " + f.name());
    o.why << (o.ok ? "" : "; ") << n << " synthetic presentations, crafted toy over 3 fields";
    return o;
}

Outcome c10_commutation() {
    Outcome o;
    std::size_t graphs = 0;
    for (int n = 1; n <= 4; ++n) {
        CommutationReport r = verify_commutation(n);
        graphs += r.graphs_checked;
        if (!r.pass()) o.fail("n=" + std::to_string(n) + (r.examples.empty() ? "" : " " + r.examples[0]));
    }
    CommutationReport r5 = verify_commutation(5, true);
    graphs += r5.graphs_checked;
    if (!r5.pass()) o.fail("n=5 discrete");
    o.why << (o.ok ? "" : "; ") << graphs << " graphs, n<=4 all partitions, n=5 discrete";
    return o;
}

Outcome c11_ledger(std::vector<LemmaReport>& attacks) {
    Outcome o;
    CaseOptions opt;
    opt.attack_samples = 200;
    opt.seed = 1;
    for (const auto& name : case_names()) {
        CaseReport r = run_case(name, opt);
        if (!r.d_squared_zero) o.fail(name + ": D^2 != 0");
        for (const auto& id : r.identities)
            if (!id.pass) o.fail(name + ": " + id.label);
        if (!r.delta_commutes) o.fail(name + ": delta does not commute with D");
        attacks.insert(attacks.end(), r.attacks.begin(), r.attacks.end());
    }
    if (o.ok) o.why << case_names().size() << " cases, identities hold, D^2 = 0, D delta = delta D";
    return o;
}

PointConfig random_config(std::mt19937_64& rng, std::size_t k) {
    auto q = [&] {
        mpq_class r(static_cast<long>(rng() % 2001) - 1000, 1000);
        r.canonicalize();
        return r;
    };
    PointConfig x(k);
    for (auto& p : x) p = {q(), q()};
    return x;
}

Outcome c12_geometry(const std::vector<LemmaReport>& attacks) {
    Outcome o;
    std::mt19937_64 rng(10);
    Params p4 = default_params(4), p5 = default_params(5);
    Partition q4 = Partition::parse("{{0},{12},{34},{5}}"), q5 = Partition::parse("{{0},{123},{45},{6}}");
    std::size_t n4_bad = 0, n5_bad = 0, n5_fixed_bad = 0;
    for (int k = 0; k < 100; ++k) {
        PointConfig y4 = random_config(rng, 4), y5 = random_config(rng, 5);
        if (!(closed_form_n4(p4, y4) == project_pi(p4, q4, y4))) ++n4_bad;
        PointConfig pi5 = project_pi(p5, q5, y5);
        if (!(closed_form_n5_printed(p5, y5) == pi5)) ++n5_bad;
        if (!(closed_form_n5_corrected(p5, y5) == pi5)) ++n5_fixed_bad;
    }
    if (n4_bad) o.fail("n=4 closed form differs on " + std::to_string(n4_bad) + "/100");
    if (n5_bad)
        o.fail("printed n=5 closed form differs on " + std::to_string(n5_bad) +
               "/100 (b uses rho(c4-c3)/4, projection gives rho(c5-c4)/4; corrected form differs on " +
               std::to_string(n5_fixed_bad) + ")");
    for (const auto& name : lemma_names()) {
        LemmaReport r = check_lemma(name, 1000, 20260101);
        if (!r.pass()) o.fail(name + " has " + std::to_string(r.counterexample_count) + "/" + std::to_string(r.samples) + " counterexamples");
    }
    std::size_t bad_attacks = 0;
    for (const auto& a : attacks)
        if (!a.pass()) {
            ++bad_attacks;
            o.fail("zero fact " + a.lemma + " attacked");
        }
    o.why << (o.ok ? "" : "; ") << lemma_names().size() << " lemma harnesses at 1000 samples, " << attacks.size()
          << " zero-fact attacks at 200 samples";
    return o;
}

Outcome c13_random_complexes() {
    Outcome o;
    std::mt19937_64 rng(1313);
    std::size_t n = 0;
    for (Field f : FIELDS)
        for (int it = 0; it < 18; ++it, ++n) {
            FilteredComplex c = testing::random_filtered_complex(f, rng, 30);
            SpectralSequence ss(c, SpectralSequence::stable_page(c));
            auto gr = testing::associated_graded(c);
            for (const auto& [s, sp] : ss.pages().back().slots)
                if (sp.dim != gr.at(s)) {
                    o.fail(f.name() + " complex " + std::to_string(it));
                    break;
                }
        }
    o.why << (o.ok ? "" : "; ") << n << " random filtered complexes";
    return o;
}

}  // namespace

int main() {
    int failures = 0;
    auto report = [&](int k, const std::string& what, Outcome o) {
        std::cout << "criterion " << k << ": " << (o.ok ? "PASS" : "FAIL") << "  " << what << " (" << o.why.str()
                  << ")" << std::endl;
        if (!o.ok) ++failures;
    };
    report(1, "cohomology dimensions match the Poincare polynomial", c1_dimensions());
    report(2, "d1 squares to zero", c2_d1_squared());
    report(3, "char-2 class is a d1-cycle", cycle_in_char("g14*g23+g13*g24+g12*g34", 4, F2));
    report(4, "char-3 class is a d1-cycle",
           cycle_in_char("-g(1,3)*g(2,3)*g(4,5)+g(1,4)*g(2,4)*g(3,5)+g(1,4)*g(2,5)*g(3,4)+g(1,5)*g(2,4)*g(3,4)", 5, F3));
    report(5, "E2 over F3 in low arity", c5_e2_f3());
    report(6, "mu3 obstruction map is injective", c6_mu3());
    report(7, "higher differentials vanish on the Hochschild complex", c7_higher_differentials());
    report(8, "A-infinity differential squares to zero", c8_ainf());
    report(9, "d1 is induced by mu2; d2 matches lifting", c9_synthetic());
    report(10, "triple complex commutation", c10_commutation());
    std::vector<LemmaReport> attacks;
    report(11, "ledger cases", c11_ledger(attacks));
    report(12, "geometric closed forms, lemmas and zero facts", c12_geometry(attacks));
    report(13, "E-infinity equals associated graded", c13_random_complexes());
    std::cout << failures << " of 13 criteria failed" << std::endl;
    return failures == 0 ? 0 : 1;
}
