#pragma once

// Hochschild complex of a planar operad under a map from A-infinity, and the
// Sinha-type complex built from configuration-space cohomology.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "knotss/confcoh.hpp"
#include "knotss/spectral.hpp"

namespace knotss {

/**
 * Terms of mu_l * x for x in O(p)^v:
 *   OuterFirst  x o_1 mu_l   (x evaluated on mu_l o_1 y),
 *   OuterLast   x o_l mu_l   (x evaluated on mu_l o_l y),
 *   Inner i     mu_l o_i x   (x evaluated on y o_i mu_l), 1 <= i <= p - l + 1.
 */
enum class OracleKind { OuterFirst, OuterLast, Inner };

struct OracleKey {
    OracleKind kind;
    int l;
    int i;  // insertion slot: 1 for OuterFirst, l for OuterLast, 1..p-l+1 for Inner
    int p;
    int q;
    auto operator<=>(const OracleKey&) const = default;
};

/** "signed": alternating signs reproducing the cosimplicial sum; "verbatim": every sign +1. */
enum class HochschildMode { Signed, Verbatim };

class MissingOracleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Finite-arity operad given dually: components (O(p)_q)^v with labels, the
 * internal differential on duals (p, q) -> (p, q + 1), and composition oracles
 * (p, q) -> (p - l + 1, q - l + 2) for each mu_l whose image is nonzero.
 */
class OperadPresentation {
public:
    OperadPresentation(Field f, int max_arity) : f_(f), max_arity_(max_arity) {}

    Field field() const { return f_; }
    int max_arity() const { return max_arity_; }

    void set_component(int p, int q, std::vector<std::string> labels);
    std::size_t dim(int p, int q) const;
    const std::map<Slot, std::vector<std::string>>& components() const { return comps_; }

    void set_internal_differential(int p, int q, Matrix m);
    /** Zero matrix when none was set. */
    Matrix internal_differential(int p, int q) const;

    /** Declares mu'_l nonzero; hochschild_delta then requires its oracles. */
    void supply_mu(int l);
    const std::vector<int>& supplied() const { return supplied_; }

    void set_oracle(const OracleKey& key, Matrix m);
    /** Oracle matrix; trivially zero when source or target is empty, else MissingOracleError. */
    Matrix oracle(const OracleKey& key) const;
    /** Fills every still-missing oracle of supplied mu_l with zero. */
    void fill_missing_with_zero();
    /** Keys needed by supplied mu_l. */
    std::vector<OracleKey> required_keys() const;

private:
    Field f_;
    int max_arity_;
    std::map<Slot, std::vector<std::string>> comps_;
    std::map<Slot, Matrix> internal_;
    std::vector<int> supplied_;
    std::map<OracleKey, Matrix> oracles_;
};

/** Sign of one oracle term in the given mode. */
int oracle_sign(const OracleKey& key, HochschildMode mode);

/** Block of x -> mu_l * x from slot (p, q). */
Matrix mu_action_matrix(const OperadPresentation& o, int l, int p, int q, HochschildMode mode);

/** delta(x) = sum over supplied l of mu_l * x, keyed by target slot. */
std::map<Slot, Vector> hochschild_delta(const Vector& x, Slot s, const OperadPresentation& o,
                                        HochschildMode mode);

/** Hoch^{-p,q} = (O(p)_q)^v with D_0 = internal differential and D_{l-1} = mu_l * -. */
FilteredComplex hochschild_complex(const OperadPresentation& o, HochschildMode mode);

/** H_*(K_2) presented dually by configuration-space cohomology; mu'_2 acts by coface pullbacks. */
OperadPresentation sinha_presentation(int max_p, Field f);

/** Arities 1..max_p, slots (p, q) with admissible-monomial bases and D_1 = sinha_d1. */
FilteredComplex build_sinha_complex(int max_p, Field f, bool normalized);

/** Quotient by a subcomplex given slotwise; labels follow the chosen complement. */
FilteredComplex quotient_complex(const FilteredComplex& c, const std::map<Slot, Subspace>& sub);

struct E2Report {
    int p = 0, q = 0;
    std::string field;
    bool is_d1_cycle = false;
    bool is_d1_boundary = false;
    std::size_t e2_dim = 0;
    /** Coordinates of [x] in the E_2 basis (present when x is a cycle). */
    std::optional<std::vector<std::string>> e2_coordinates;
    /** Leading monomial part of each E_2 basis representative. */
    std::vector<std::string> generators;
};

E2Report e2_report(const CohClass& x);

struct LiftResult {
    /** y with d y = mu_2 * x. */
    Vector lift;
    Slot target;
    /** mu_3 * x - mu_2 * y at the target slot. */
    Vector representative;
    /** Class in E_2 at the target, in the engine's representative basis. */
    Vector e2_coordinates;
    bool zero_class = true;
};

class NoLiftError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * d_2[x] via a lift y of mu_2 * x through the internal differential. x is a
 * slot vector at (p, q) with d x = 0; NoLiftError if mu_2 * x is not d-exact.
 */
LiftResult d2_via_lifting(const Vector& x, Slot s, const OperadPresentation& o, HochschildMode mode);

/** Rank of the unnormalized d1 : H^1(Conf_4) -> H^1(Conf_3). */
std::size_t mu3_obstruction_rank(Field f);

/** Embeds a slot vector into the coordinates of its total degree. */
Vector embed_slot_vector(const FilteredComplex& c, Slot s, const Vector& v);
/** Restricts degree coordinates to one slot. */
Vector slot_component(const FilteredComplex& c, Slot s, const Vector& v);

}  // namespace knotss
