#pragma once

// Exact planar geometry of the fat-diagonal model (d = 2): the constants
// rho, eps, c_i, the little-segment embeddings e_{P,Q}, the tube projection
// pi_P, the collapse regions, and sampling harnesses for the geometric lemmas.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "knotss/mapexpr.hpp"
#include "knotss/partgraph.hpp"

namespace knotss {

struct Params {
    int n = 0;
    mpq_class rho, eps;
    std::vector<mpq_class> c;  // c_0 .. c_{n+1}
};

/** c_i = K 101^i with K = 100 / (101^(n+2) - 1), rho = 1/2, eps = rho K / 300; 1 <= n <= 6. */
Params default_params(int n);

/** Violated defining inequalities, empty when the parameters are admissible. */
std::vector<std::string> validate(const Params& prm);

mpq_class eps_P(const Params& prm, const Partition& p);
/** Sums over piece k of p, and the half-sums c_{<=k}, c_{>=k}, c_{ab}. */
mpq_class c_piece(const Params& prm, const Partition& p, int k);
mpq_class c_below(const Params& prm, const Partition& p, int k);
mpq_class c_above(const Params& prm, const Partition& p, int k);
mpq_class c_between(const Params& prm, const Partition& p, int a, int b);
/** rho c_ab - eps_P. */
mpq_class d_pair(const Params& prm, const Partition& p, int a, int b);

/**
 * e_{P,Q}: x holds one point per internal piece of p (in order); the result
 * has one point per internal piece of q. DimensionError on a shape mismatch,
 * PreconditionError unless q is p or a subdivision of it.
 */
PointConfig e_embed(const Params& prm, const Partition& p, const Partition& q, const PointConfig& x);
/** e_P = e_{P, discrete}: n points. */
PointConfig e_P(const Params& prm, const Partition& p, const PointConfig& x);

/** Closest point of the image of e_P, from the normal equations. */
PointConfig project_pi(const Params& prm, const Partition& p, const PointConfig& y);
/** |y - e_P(pi_P y)|^2, and its part along u alone. */
mpq_class residual_sq(const Params& prm, const Partition& p, const PointConfig& y);
mpq_class residual_sq_first(const Params& prm, const Partition& p, const PointConfig& y);

bool in_nu(const Params& prm, const Partition& p, const PointConfig& y);
/** Pieces are indices into p; x is a reduced configuration. */
bool in_D(const Params& prm, const Partition& p, const PointConfig& x, int a, int b);
bool in_E_alpha(const Params& prm, const Partition& p, const PointConfig& x, int a);
bool in_E(const Params& prm, const Partition& p, const PointConfig& x);
/** The closed inequalities cutting out E(P). */
bool in_E_space(const Params& prm, const Partition& p, const PointConfig& x);

/** y is the base point of T_{empty_P}: outside the tube or projecting into E_P. */
bool is_basepoint(const Params& prm, const Partition& p, const PointConfig& y);
bool in_U(const Params& prm, const PGraph& g, const PointConfig& y);
/** U^1_G depends on the u-coordinates only. */
bool in_U1(const Params& prm, const PGraph& g, const PointConfig& y);

/** n = 4, P = {{0},{12},{34},{5}}: (a, b) from y = (c, d, e, f). */
PointConfig closed_form_n4(const Params& prm, const PointConfig& y);
/** n = 5, P = {{0},{123},{45},{6}}, as printed: b = (f + g + rho (c_4 - c_3) u / 2) / 2. */
PointConfig closed_form_n5_printed(const Params& prm, const PointConfig& y);
/** Same partition with the offset of b read off e_P: b = (f + g)/2 + rho (c_5 - c_4) u / 4. */
PointConfig closed_form_n5_corrected(const Params& prm, const PointConfig& y);

/** Image of a map; PreconditionError unless s-parameters are >= 0 and t-parameters lie in [0, 1]. */
PointConfig eval_condensed(const MapExpr& f, const Point2& x, const Point2& y,
                           const std::map<std::string, mpq_class>& params);

std::string to_string(const PointConfig& y);

struct LemmaReport {
    std::string lemma;
    std::size_t samples = 0;
    /** Samples that exercised the nontrivial branch of the claim. */
    std::size_t hits = 0;
    std::size_t counterexample_count = 0;
    /** First few witnesses, exact rationals. */
    std::vector<std::string> counterexamples;
    std::uint64_t seed = 0;
    bool pass() const { return counterexample_count == 0; }
    std::string to_json() const;
    void merge(const LemmaReport& o);
};

/** diagonal-bound, diagonal-incl, condensed-image, collapse0, collapse, i-contraction. */
std::vector<std::string> lemma_names();
/** PreconditionError for an unknown name. */
LemmaReport check_lemma(const std::string& name, std::size_t samples, std::uint64_t seed);

enum class MapClaim {
    /** Every image point is the base point of T_{empty_P}. */
    Basepoint,
    /** The image lies in U_G and U^1_G. */
    InsideU,
};

/**
 * Targeted sampling of a map against the tube of the label's partition:
 * parameters are drawn near 0, near the segment scales and at random, and
 * (x, y) is taken from the affine set of closest approach between the image
 * and e_P, then jittered at the tube scale.
 */
LemmaReport attack_map(const Params& prm, const MapExpr& f, const PGraph& label, MapClaim claim, std::size_t samples,
                       std::mt19937_64& rng, const std::string& name = "map");

}  // namespace knotss
