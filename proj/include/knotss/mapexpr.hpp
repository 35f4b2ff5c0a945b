#pragma once

// Maps R^2 x R^2 x (parameters) -> (R^2)^n whose components are
// cx*x + cy*y + qu*u + qv*v with rational polynomial coefficients in named
// parameters. Parameters starting with 's' range over [0, inf), those
// starting with 't' over [0, 1].

#include <gmpxx.h>

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "knotss/partgraph.hpp"

namespace knotss {

/** Sorted (name, exponent) pairs; the empty monomial is 1. */
using PolyMonomial = std::vector<std::pair<std::string, int>>;

class Poly {
public:
    Poly() = default;
    Poly(const mpq_class& c);  // NOLINT(google-explicit-constructor)
    Poly(long c) : Poly(mpq_class(c)) {}  // NOLINT(google-explicit-constructor)
    static Poly var(const std::string& name);

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    mpq_class constant_term() const;
    bool depends_on(const std::string& name) const;
    std::set<std::string> variables() const;
    Poly substitute(const std::string& name, const mpq_class& value) const;
    Poly rename(const std::map<std::string, std::string>& names) const;
    /** Every variable must be assigned. */
    mpq_class evaluate(const std::map<std::string, mpq_class>& values) const;

    const std::map<PolyMonomial, mpq_class>& terms() const { return terms_; }
    std::string to_string() const;
    bool operator==(const Poly& o) const { return terms_ == o.terms_; }

private:
    void add_term(const PolyMonomial& m, const mpq_class& c);
    std::map<PolyMonomial, mpq_class> terms_;
};

struct MapComponent {
    Poly cx, cy, qu, qv;
    bool operator==(const MapComponent&) const = default;
};

struct Point2 {
    mpq_class a, b;  // coordinates along u and v
    bool operator==(const Point2&) const = default;
};

using PointConfig = std::vector<Point2>;

class MapExpr {
public:
    explicit MapExpr(std::vector<MapComponent> components);

    int n() const { return static_cast<int>(c_.size()); }
    /** Component i, 1-based. */
    const MapComponent& component(int i) const;
    MapComponent& component(int i);
    const std::vector<MapComponent>& components() const { return c_; }

    std::set<std::string> parameters() const;
    bool depends_on(const std::string& name) const;
    MapExpr restrict(const std::string& name, const mpq_class& value) const;
    MapExpr rename(const std::map<std::string, std::string>& names) const;
    /** Precomposition with T(x, y) = (y, x). */
    MapExpr transposed() const;

    PointConfig evaluate(const Point2& x, const Point2& y, const std::map<std::string, mpq_class>& params) const;

    /** Canonical text; equal maps print identically. */
    std::string to_string() const;
    bool operator==(const MapExpr& o) const { return c_ == o.c_; }

private:
    std::vector<MapComponent> c_;
};

MapExpr operator+(const MapExpr& a, const MapExpr& b);
MapExpr scale(const Poly& k, const MapExpr& f);

/** f_G: component i is x when i lies in the component of point 1, y otherwise. */
MapExpr condensed_map(const PGraph& g);

/**
 * e-contraction of f for g: adds direction*s*v to the points joined to the
 * smaller end of e in g minus e and -direction*s*v to those joined to the
 * larger end. direction -1 is the reversed contraction.
 */
MapExpr contraction(const MapExpr& f, const PGraph& g, const Edge& e, const std::string& param, int direction = 1);

/** (1 - t) f + t g. */
MapExpr straight_homotopy(const MapExpr& f, const MapExpr& g, const std::string& t);

/** (i, eps)-contraction: eps*s*u on point i and -eps*s*u on point i+1. */
MapExpr i_contraction(const MapExpr& f, int i, int eps, const std::string& param);

}  // namespace knotss
