#pragma once

// Free planar operad on generators mu_k (k >= 2, degree k-2) and the A-infinity differential.

#include <map>
#include <string>
#include <vector>

#include "knotss/exactalg.hpp"

namespace knotss {

/**
 * Planar tree in preorder: a vertex labelled mu_k is the token k (k >= 2),
 * a leaf is the token 0. Leaves are numbered 1..n in planar order.
 */
class PlanarTree {
public:
    static PlanarTree leaf() { return PlanarTree({0}); }
    static PlanarTree corolla(int k);
    /** Validates a preorder token list. */
    static PlanarTree from_preorder(std::vector<int> tokens);

    const std::vector<int>& preorder() const { return tok_; }
    int arity() const;
    /** Sum of |mu_k| = k - 2 over vertices. */
    int degree() const;
    int vertex_count() const;
    std::string to_string() const;

    auto operator<=>(const PlanarTree&) const = default;

private:
    explicit PlanarTree(std::vector<int> t) : tok_(std::move(t)) {}
    std::vector<int> tok_;
};

/** Index one past the end of the subtree starting at `start` in a preorder list. */
std::size_t subtree_end(const std::vector<int>& tokens, std::size_t start);

/**
 * Sign convention for the A-infinity differential: "signed" uses Koszul signs
 * for grafting and derivations, "unsigned" drops every sign (valid over F_2).
 */
enum class SignMode { Signed, Unsigned };

class FreeElement {
public:
    explicit FreeElement(Field f) : f_(f) {}
    static FreeElement generator(Field f, int k);

    Field field() const { return f_; }
    const std::map<PlanarTree, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(const PlanarTree& t, const Scalar& c);
    FreeElement operator+(const FreeElement& o) const;
    FreeElement operator-(const FreeElement& o) const;
    FreeElement scaled(const Scalar& c) const;
    bool operator==(const FreeElement& o) const { return f_ == o.f_ && terms_ == o.terms_; }
    std::string to_string() const;

private:
    Field f_;
    std::map<PlanarTree, Scalar> terms_;
};

/** Grafting b onto leaf i (1-based) of a, bilinearly; PreconditionError if i is out of range. */
FreeElement compose_free(const FreeElement& a, int i, const FreeElement& b, SignMode mode = SignMode::Signed);

/** d(mu_k) = sum over l,q >= 2, 0 <= p <= l-1, l+q = k+1 of ±mu_l o_{p+1} mu_q. */
FreeElement ainf_differential(Field f, int k, SignMode mode = SignMode::Signed);

/** Extends ainf_differential to all trees as a (Koszul) derivation. */
FreeElement apply_differential(const FreeElement& x, SignMode mode = SignMode::Signed);

struct AinfCheckRow {
    int arity;
    std::size_t terms_in_d;
    bool d_squared_zero;
};

/** d(d(mu_k)) = 0 for 2 <= k <= max_arity. */
std::vector<AinfCheckRow> ainf_check(Field f, int max_arity, SignMode mode = SignMode::Signed);

}  // namespace knotss
