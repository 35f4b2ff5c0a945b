#pragma once

// Cohomology of planar configuration spaces in the Arnold presentation.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "knotss/exactalg.hpp"

namespace knotss {

/** Generator g_{ij}, 1 <= i < j. */
struct Gen {
    int i = 0, j = 0;
    auto operator<=>(const Gen&) const = default;
};

/** Factor list; in normal form the second indices strictly increase. */
using Monomial = std::vector<Gen>;

bool is_normal(const Monomial& m);
std::string monomial_to_string(const Monomial& m);

class CohClass {
public:
    CohClass(int arity, int degree, Field f) : p_(arity), q_(degree), f_(f) {}

    int arity() const { return p_; }
    int degree() const { return q_; }
    Field field() const { return f_; }
    const std::map<Monomial, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /** Adds c * m; m must already be in normal form. */
    void add_term(const Monomial& m, const Scalar& c);
    /** Adds c * (straightened factors). */
    void add_factors(const Monomial& factors, const Scalar& c);

    CohClass operator+(const CohClass& o) const;
    CohClass operator-(const CohClass& o) const;
    CohClass scaled(const Scalar& c) const;
    bool operator==(const CohClass& o) const;

    std::string to_string() const;

private:
    void check_compatible(const CohClass& o) const;
    int p_, q_;
    Field f_;
    std::map<Monomial, Scalar> terms_;
};

/** Straightens a product of generators at arity p; PreconditionError on bad indices. */
CohClass normal_form(const Monomial& factors, int p, Field f);

/** Coefficient of t^q in prod_{k=1}^{p-1} (1 + k t). */
std::uint64_t dim_cohomology(int p, int q);

/** Admissible monomials of degree q at arity p, in a fixed canonical order. */
std::vector<Monomial> admissible_basis(int p, int q);

/** Cup product; arities must agree. */
CohClass multiply(const CohClass& a, const CohClass& b);

/**
 * Pullback along the i-th coface Conf_{p-1} -> Conf_p, so arity p -> p-1.
 * i = 0 and i = p are the end-point insertions, 1 <= i <= p-1 doubles point i.
 * Arity 1 is accepted as well (its only nonzero classes live in degree 0).
 */
CohClass coface_pullback(int i, const CohClass& x);

/** Pullback along the i-th codegeneracy (forget point i+1), arity p -> p+1. */
CohClass codegeneracy_pullback(int i, const CohClass& x);

/** Alternating sum of coface pullbacks. */
CohClass sinha_d1(const CohClass& x);

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

/** Parses e.g. "g14*g23 + 2*g(1,3)*g(2,4)"; throws ParseError or PreconditionError. */
CohClass parse_class(std::string_view text, int p, Field f);

/** Coordinates in admissible_basis(p, q). */
Vector class_to_vector(const CohClass& x);
CohClass vector_to_class(const Vector& v, int p, int q, Field f);

/** Matrix of sinha_d1 from degree-q classes at arity p to arity p-1. */
Matrix sinha_d1_matrix(int p, int q, Field f);
/** Matrix of coface_pullback(i, -) from arity p to p-1 in degree q. */
Matrix coface_matrix(int i, int p, int q, Field f);
/** Span of all codegeneracy images from arity p-1 inside degree-q classes at arity p. */
Subspace degenerate_subspace(int p, int q, Field f);

}  // namespace knotss
