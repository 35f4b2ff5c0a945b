// Batch front end. Every run prints one JSON document (or TSV rows) that
// echoes its configuration; exit codes are 0 success, 1 failed check, 2 usage.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "knotss/chainledger.hpp"
#include "knotss/confcoh.hpp"
#include "knotss/free_operad.hpp"
#include "knotss/geomcheck.hpp"
#include "knotss/hochschild.hpp"
#include "knotss/partgraph.hpp"
#include "knotss/spectral.hpp"

using json = nlohmann::ordered_json;
using namespace knotss;

namespace {

constexpr const char* kSchemaVersion = "1.0";

struct Config {
    std::string format = "json";
    std::string output;
    std::string field = "f2";
    int max_arity = 0;  // 0: per-command default
    bool normalized = false;
    int r_max = 4;
    std::string cls;
    int arity = 0;
    std::string case_name = "all";
    int n = 4;
    bool discrete_only = false;
    std::string lemma = "all";
    std::size_t samples = 0;  // 0: per-command default
    std::uint64_t seed = 1;
};

struct Outcome {
    json result;
    std::string tsv;
    bool pass = true;
};

std::string join_tsv(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t k = 0; k < cells.size(); ++k) out += (k ? "\t" : "") + cells[k];
    return out + "\n";
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

Field field_of(const Config& c) { return Field::parse(c.field); }

// Poincare polynomial prod_{k<p} (1 + k t).
std::vector<std::uint64_t> poincare(int p) {
    std::vector<std::uint64_t> c{1};
    for (int k = 1; k < p; ++k) {
        std::vector<std::uint64_t> next(c.size() + 1, 0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i] += c[i];
            next[i + 1] += c[i] * static_cast<std::uint64_t>(k);
        }
        c = std::move(next);
    }
    return c;
}

Outcome conf_dims(const Config& cfg) {
    Outcome o;
    Field f = field_of(cfg);
    json rows = json::array();
    o.tsv = join_tsv({"p", "q", "dim"});
    for (int p = 1; p <= cfg.max_arity; ++p) {
        std::vector<std::uint64_t> expect = poincare(p);
        json dims = json::array();
        for (int q = 0; q < p; ++q) {
            // the dimension over f: rank of the admissible basis, checked against the product formula
            std::uint64_t d = dim_cohomology(p, q);
            std::uint64_t basis = admissible_basis(p, q).size();
            if (d != basis || d != expect[static_cast<std::size_t>(q)]) o.pass = false;
            dims.push_back(d);
            o.tsv += join_tsv({std::to_string(p), std::to_string(q), std::to_string(d)});
        }
        rows.push_back({{"p", p}, {"dims", dims}});
    }
    o.result = {{"field", f.name()}, {"rows", rows}, {"matches_poincare_polynomial", o.pass}};
    return o;
}

Outcome ss_table(const Config& cfg) {
    Outcome o;
    Field f = field_of(cfg);
    FilteredComplex c = build_sinha_complex(cfg.max_arity, f, cfg.normalized);
    SpectralSequence ss(c, cfg.r_max);
    json pages = json::array();
    o.tsv = join_tsv({"r", "p", "q", "dim", "d_rank"});
    bool higher_vanish = true;
    for (const auto& page : ss.pages()) {
        json slots = json::array();
        for (const auto& [s, sp] : page.slots) {
            slots.push_back({{"p", -s.first}, {"q", s.second}, {"dim", sp.dim}, {"d_rank", sp.d_rank}});
            o.tsv += join_tsv({std::to_string(page.r), std::to_string(-s.first), std::to_string(s.second),
                               std::to_string(sp.dim), std::to_string(sp.d_rank)});
            // the top arity has no outgoing d1 in the truncated complex
            if (page.r >= 2 && s.first < cfg.max_arity && sp.d_rank != 0) higher_vanish = false;
        }
        pages.push_back({{"r", page.r}, {"slots", slots}});
    }
    o.pass = higher_vanish;
    o.result = {{"field", f.name()},
                {"normalized", cfg.normalized},
                {"truncated_arity", cfg.max_arity},
                {"pages", pages},
                {"higher_differentials_vanish", higher_vanish}};
    return o;
}

Outcome verify_cycle(const Config& cfg) {
    Outcome o;
    Field f = field_of(cfg);
    CohClass x = parse_class(cfg.cls, cfg.arity, f);
    E2Report r = e2_report(x);
    json coords = r.e2_coordinates ? json(*r.e2_coordinates) : json(nullptr);
    o.result = {{"class", x.to_string()},   {"p", r.p},
                {"q", r.q},                 {"field", r.field},
                {"is_d1_cycle", r.is_d1_cycle}, {"is_d1_boundary", r.is_d1_boundary},
                {"e2_dim", r.e2_dim},       {"e2_coordinates", coords},
                {"e2_generators", r.generators}};
    o.tsv = join_tsv({"is_d1_cycle", "is_d1_boundary", "e2_dim"}) +
            join_tsv({bool_text(r.is_d1_cycle), bool_text(r.is_d1_boundary), std::to_string(r.e2_dim)});
    return o;
}

Outcome ledger(const Config& cfg) {
    Outcome o;
    std::vector<std::string> names = cfg.case_name == "all" ? case_names() : std::vector<std::string>{cfg.case_name};
    CaseOptions opt;
    opt.attack_samples = cfg.samples;
    opt.seed = cfg.seed;
    json cases = json::array();
    o.tsv = join_tsv({"case", "identity", "pass"});
    for (const auto& n : names) {
        CaseReport r = run_case(n, opt);
        o.pass = o.pass && r.pass();
        cases.push_back(json::parse(r.to_json()));
        for (const auto& id : r.identities) o.tsv += join_tsv({n, id.label, bool_text(id.pass)});
        o.tsv += join_tsv({n, "D^2 = 0", bool_text(r.d_squared_zero)});
        o.tsv += join_tsv({n, "D delta = delta D", bool_text(r.delta_commutes)});
        for (const auto& a : r.attacks) o.tsv += join_tsv({n, "attack " + a.lemma, bool_text(a.pass())});
    }
    o.result = {{"cases", cases}};
    return o;
}

Outcome ainf(const Config& cfg) {
    Outcome o;
    Field f = field_of(cfg);
    json rows = json::array();
    o.tsv = join_tsv({"arity", "terms_in_d", "d_squared_zero"});
    for (const auto& row : ainf_check(f, cfg.max_arity)) {
        o.pass = o.pass && row.d_squared_zero;
        rows.push_back({{"arity", row.arity}, {"terms_in_d", row.terms_in_d}, {"d_squared_zero", row.d_squared_zero}});
        o.tsv += join_tsv({std::to_string(row.arity), std::to_string(row.terms_in_d), bool_text(row.d_squared_zero)});
    }
    o.result = {{"field", f.name()}, {"rows", rows}};
    return o;
}

Outcome triple(const Config& cfg) {
    Outcome o;
    CommutationReport r = verify_commutation(cfg.n, cfg.discrete_only);
    o.pass = r.pass();
    o.result = {{"n", r.n},
                {"discrete_only", r.discrete_only},
                {"graphs_checked", r.graphs_checked},
                {"counterexamples", r.counterexamples},
                {"examples", r.examples},
                {"naive_mismatches", r.naive_mismatches},
                {"d_squared_failures", r.d_squared_failures},
                {"delta_squared_failures", r.delta_squared_failures}};
    o.tsv = join_tsv({"graphs_checked", "counterexamples"}) +
            join_tsv({std::to_string(r.graphs_checked), std::to_string(r.counterexamples)});
    return o;
}

Outcome geom(const Config& cfg) {
    Outcome o;
    std::vector<std::string> names = cfg.lemma == "all" ? lemma_names() : std::vector<std::string>{cfg.lemma};
    json reports = json::array();
    o.tsv = join_tsv({"lemma", "samples", "hits", "counterexamples"});
    for (const auto& n : names) {
        LemmaReport r = check_lemma(n, cfg.samples, cfg.seed);
        o.pass = o.pass && r.pass();
        reports.push_back(json::parse(r.to_json()));
        o.tsv += join_tsv({r.lemma, std::to_string(r.samples), std::to_string(r.hits),
                           std::to_string(r.counterexample_count)});
    }
    o.result = {{"reports", reports}};
    return o;
}

json echo(const std::string& command, const Config& c) {
    json j = {{"format", c.format}};
    if (command == "conf-dims" || command == "ss-table" || command == "verify-cycle" || command == "ainf-check")
        j["field"] = c.field;
    if (command == "conf-dims" || command == "ss-table" || command == "ainf-check") j["max_arity"] = c.max_arity;
    if (command == "ss-table") {
        j["normalized"] = c.normalized;
        j["r_max"] = c.r_max;
    }
    if (command == "verify-cycle") {
        j["class"] = c.cls;
        j["arity"] = c.arity;
    }
    if (command == "ledger") j["case"] = c.case_name;
    if (command == "triple-commute") {
        j["n"] = c.n;
        j["discrete_only"] = c.discrete_only;
    }
    if (command == "geom") j["lemma"] = c.lemma;
    if (command == "ledger" || command == "geom") {
        j["samples"] = c.samples;
        j["seed"] = c.seed;
    }
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sinha spectral sequence computations for long knots in codimension one"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file mirroring the flags");
    Config cfg;
    if (const char* env = std::getenv("KNOTSS_SEED")) {
        try {
            cfg.seed = std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "KNOTSS_SEED is not an unsigned integer\n";
            return 2;
        }
    }

    auto fields = CLI::IsMember({"f2", "f3", "q"}, CLI::ignore_case);
    app.add_option("--format", cfg.format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));
    app.add_option("--output,-o", cfg.output, "write to this file instead of stdout");
    app.add_option("--field", cfg.field, "f2, f3 or q")->transform(fields);
    app.add_option("--max-arity", cfg.max_arity)->check(CLI::Range(1, 8));
    app.add_flag("--normalized", cfg.normalized, "quotient by degenerate classes");
    app.add_option("--r-max", cfg.r_max)->check(CLI::Range(1, 12));
    app.add_option("--class", cfg.cls, "class in g_ij notation");
    app.add_option("--arity", cfg.arity)->check(CLI::Range(1, 8));
    app.add_option("--case", cfg.case_name, "ledger case name or all");
    app.add_option("--n", cfg.n)->check(CLI::Range(1, 5));
    app.add_flag("--discrete-only", cfg.discrete_only);
    app.add_option("--lemma", cfg.lemma, "lemma harness name or all");
    app.add_option("--samples", cfg.samples);
    app.add_option("--seed", cfg.seed, "defaults to KNOTSS_SEED, else 1");

    struct Command {
        std::string name, help;
        Outcome (*run)(const Config&);
        int default_arity;
        std::size_t default_samples;
    };
    std::vector<Command> commands = {
        {"conf-dims", "dim H^q(Conf_p(R^2)) per (p, q)", conf_dims, 7, 0},
        {"ss-table", "E_r pages of the Sinha complex", ss_table, 5, 0},
        {"verify-cycle", "d1-cycle, boundary and E2 class of a cohomology class", verify_cycle, 0, 0},
        {"ledger", "run ledger cases", ledger, 0, 200},
        {"ainf-check", "d^2 = 0 in the free planar operad", ainf, 6, 0},
        {"triple-commute", "commutation of the triple complex", triple, 0, 0},
        {"geom", "sampling harnesses of the geometric lemmas", geom, 0, 1000},
    };
    for (const auto& c : commands) app.add_subcommand(c.name, c.help)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const Command* cmd = nullptr;
    for (const auto& c : commands)
        if (app.got_subcommand(c.name)) cmd = &c;
    if (cfg.max_arity == 0) cfg.max_arity = cmd->default_arity;
    if (cfg.samples == 0) cfg.samples = cmd->default_samples;
    if (cmd->name == "verify-cycle" && (cfg.cls.empty() || cfg.arity == 0)) {
        std::cerr << "verify-cycle needs --class and --arity\n";
        return 2;
    }

    Outcome out;
    try {
        out = cmd->run(cfg);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    std::string text;
    if (cfg.format == "tsv") {
        text = out.tsv;
    } else {
        json doc = {{"schema_version", kSchemaVersion},
                    {"command", cmd->name},
                    {"config", echo(cmd->name, cfg)},
                    {"pass", out.pass},
                    {"result", out.result}};
        text = doc.dump(2) + "\n";
    }
    if (cfg.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(cfg.output);
        if (!f) {
            std::cerr << "cannot write " << cfg.output << "\n";
            return 2;
        }
        f << text;
    }
    return out.pass ? 0 : 1;
}
