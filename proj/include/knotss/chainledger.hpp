#pragma once

// Symbolic bookkeeping for the bounding chains of the planar (d = 2)
// computations: terms are pushforwards f(w) of weight chains by parametrized
// condensed maps, labelled by graphs on interval partitions. The boundary D,
// the Cech part and the delta relabelling act on whole chains, and
// collapses justified by geometric lemmas are applied from a table of zero
// facts whose every use is recorded so it can be attacked by sampling.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "knotss/geomcheck.hpp"
#include "knotss/mapexpr.hpp"
#include "knotss/partgraph.hpp"

namespace knotss {

/**
 * Char2: D = d + boundary. Char3: D = d + (-1)^deg boundary with deg the
 * singular degree, 4 plus the number of parameters.
 */
enum class Convention { Char2, Char3 };

struct LedgerTerm {
    mpq_class coef;
    MapExpr map;
    /** Weight order: one w_inf factor per s-parameter, then one w_I factor per t-parameter. */
    std::vector<std::string> params;
    PGraph label;
    /**
     * The graph whose Thom space the chain lives in: the label at construction, kept through edge
     * removals by the Cech boundary. delta_i kills the term whenever it kills this graph.
     */
    PGraph support;
    std::string tag;

    int degree() const { return 4 + static_cast<int>(params.size()); }
};

LedgerTerm make_term(mpq_class coef, MapExpr map, std::vector<std::string> params, PGraph label, std::string tag = "");

/** Base test of the condensed-map definition, with t-parameters checked on a grid. */
bool is_base(const MapExpr& f, const PGraph& g, int piece);
bool is_condensed_for(const MapExpr& f, const PGraph& g);

struct CanonicalForm {
    MapExpr map;
    std::vector<std::string> params;
    /** Old parameter name -> new one. */
    std::map<std::string, std::string> renaming;
    int sign = 1;
    /** An odd reparametrization fixes the term, so it is 2-torsion. */
    bool torsion = false;
};

/**
 * Minimum over renamings of the s- and t-parameters to s1.., t1.. and over
 * x <-> y. The sign is the parity of the parameter permutation; exchanging
 * the two 2-spheres preserves orientation.
 */
CanonicalForm canonicalize(const MapExpr& m, const std::vector<std::string>& params);

class LedgerChain {
public:
    /** Canonicalizes, deletes terms constant in some t-parameter, merges equal terms. */
    void add(LedgerTerm t);
    void add(const LedgerChain& c, const mpq_class& k = 1);

    LedgerChain operator+(const LedgerChain& o) const;
    LedgerChain operator-(const LedgerChain& o) const;
    LedgerChain scaled(const mpq_class& k) const;

    /** Keyed by label, canonical map, parameters and support. */
    const std::map<std::string, LedgerTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    /** Nonzero terms once supports are forgotten. */
    std::size_t distinct_size() const;
    /**
     * Terms whose coefficients differ after reduction mod p (p = 0: over Q). Supports are forgotten:
     * the comparison is between chains of the triple complex.
     */
    std::vector<std::string> difference_mod(const LedgerChain& o, int p) const;
    bool equal_mod(const LedgerChain& o, int p) const { return difference_mod(o, p).empty(); }
    /** Keys of terms flagged as 2-torsion when they were added. */
    const std::vector<std::string>& torsion() const { return torsion_; }
    std::string to_string() const;

private:
    std::map<std::string, LedgerTerm> terms_;
    std::vector<std::string> torsion_;
};

/** rational -> F_p; PreconditionError when p divides the denominator. */
long reduce_mod(const mpq_class& q, int p);

struct ZeroFact {
    std::string id;
    /** support-collapse, contraction-collapse or misordered-pair. */
    std::string kind;
    std::string citation;
    std::string description;
};

struct ZeroFactUse {
    std::string fact;
    std::string citation;
    MapExpr map;
    /** The image must be the base point of T_{empty_target}. */
    Partition target;
    std::string detail;
};

class LedgerContext {
public:
    explicit LedgerContext(std::vector<ZeroFact> facts);
    /** Reads the zero-fact table; path defaults to the shipped data directory. */
    static LedgerContext from_file(const std::string& path = "");

    const std::vector<ZeroFact>& facts() const { return facts_; }
    /** Distinct (fact, map, target) uses so far. */
    const std::vector<ZeroFactUse>& uses() const { return uses_; }

    /** A zero fact that kills t after delta_i, if any; the use is recorded. Depends only on the map and partition. */
    std::optional<std::string> delta_kill(const LedgerTerm& t, int i);
    /** Records the collapse of a term whose support graph delta_i kills. */
    void support_kill(const LedgerTerm& t, int i);
    /**
     * Drops terms whose image is the base point of T_{empty_P} for the label's partition: misordered
     * pairs, spacing mismatches, and the merge rules of delta_kill read off every one-step refinement.
     */
    LedgerChain prune(const LedgerChain& c);

    /** Samples every recorded use; each must land only on the base point. */
    std::vector<LemmaReport> attack_uses(std::size_t samples, std::uint64_t seed) const;

private:
    struct Kill {
        const ZeroFact* fact;
        std::string why;
    };
    std::optional<Kill> kill_search(const MapExpr& map, const Partition& p, int i);
    bool collapses_after_merge(const LedgerTerm& t);
    const ZeroFact* find(const std::string& kind) const;
    void record(const ZeroFact& f, const MapExpr& m, const Partition& target, const std::string& detail);

    std::vector<ZeroFact> facts_;
    std::vector<ZeroFactUse> uses_;
    std::map<std::string, std::size_t> seen_;
    std::map<std::string, std::optional<Kill>> kill_cache_;
};

LedgerChain boundary_D(LedgerContext& ctx, const LedgerChain& c, Convention conv);
/** delta_i with sgn(sigma_{G,i}); syntactic kills, then zero facts. */
LedgerChain apply_delta_i(LedgerContext& ctx, const LedgerChain& c, int i);
/** sum_i (-1)^i delta_i. */
LedgerChain apply_delta(LedgerContext& ctx, const LedgerChain& c);

// Chain constructors. Graph edges are numbered in lexicographic order.

/** f(w0) + f1(w1) + f2(w1) for a two-edge graph on [5]. */
LedgerChain chain_cycle_ch2(const PGraph& g);
/** f(w0) + sum (-1)^j f_j(w1) + sum_{j<k} (-1)^{j+k+1} f_jk(w2). */
LedgerChain chain_cycle_ch3(const PGraph& g);
/** psi(w01) + sum_j (lambda_j + lambda'_j + psi_j)(w11). */
LedgerChain chain_bounding_ch2(const PGraph& g, const PGraph& h, int i);
/** Only the psi_j(w11) terms of chain_bounding_ch2. */
LedgerChain chain_bounding_ch2_psi(const PGraph& g, const PGraph& h, int i);
/** The signed three-edge version with lambda'_j entering with a minus sign. */
LedgerChain chain_bounding_ch3(const PGraph& g, const PGraph& h, int i);
/** sum_j (-1)^{j+1} f^pm_j(w2) + sum_{j<k} (-1)^{j+k+1} f^pm_jk(w3) from (i, eps)-contractions. */
LedgerChain chain_i_contraction(const PGraph& g, int i);
/** f(w0) - f^pm_1(w1) + f^pm_2(w1) from (e, eps)-contractions. */
LedgerChain chain_cycle_prime(const PGraph& g);
/** The three-graph bounding chain over g8 for delta_2 of -c'(g5) + c'(g6) + c'(g7). */
LedgerChain chain_three_term(const PGraph& g5, const PGraph& g6, const PGraph& g7, const PGraph& g8);
/** c'(G, H, i): bounding chain of delta_i(c'(H) - c'(G)) built from (e, eps)-contractions. */
LedgerChain chain_bounding_prime(const PGraph& g, const PGraph& h, int i);

struct IdentityResult {
    std::string label;
    bool pass = false;
    std::size_t lhs_terms = 0, rhs_terms = 0;
    /** Terms on which the two sides differ, with both coefficients. */
    std::vector<std::string> difference;
    std::string note;
};

struct CaseReport {
    std::string name;
    std::string citation;
    int characteristic = 0;
    std::vector<IdentityResult> identities;
    bool d_squared_zero = true;
    std::vector<std::string> d_squared_failures;
    bool delta_commutes = true;
    std::vector<std::string> commutation_failures;
    std::vector<std::string> torsion_terms;
    std::size_t zero_fact_uses = 0;
    std::vector<LemmaReport> attacks;

    bool pass() const;
    std::string to_json() const;
};

struct CaseOptions {
    std::size_t attack_samples = 200;
    std::uint64_t seed = 1;
    std::string cases_path;
    std::string facts_path;
};

/** Names in the shipped case file. */
std::vector<std::string> case_names(const std::string& cases_path = "");
/** PreconditionError for an unknown case. */
CaseReport run_case(const std::string& name, const CaseOptions& opt = {});

/** Directory holding the shipped JSON tables (KNOTSS_DATA overrides). */
std::string data_dir();

}  // namespace knotss
