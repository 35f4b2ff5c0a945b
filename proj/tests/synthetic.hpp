#pragma once

// Synthetic operad presentations with strict mu_2: a surviving copy of a base
// presentation plus an acyclic cone, conjugated by random basis changes.

#include <random>

#include "knotss/hochschild.hpp"

namespace knotss::testing {

inline Matrix random_invertible(Field f, std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> coef(-3, 3);
    for (;;) {
        Matrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m.set(i, j, Scalar(f, coef(rng)));
        if (rank(m) == n) return m;
    }
}

inline Matrix inverse_of(const Matrix& m) {
    Matrix inv(m.field(), m.rows(), m.cols());
    auto cols = solve_columns(m, Matrix::identity(m.field(), m.rows()));
    for (std::size_t j = 0; j < cols.size(); ++j) inv.set_column(j, *cols[j]);
    return inv;
}

// Block-diagonal embedding helper: places `m` at (row0, col0) inside `out`.
inline void place(Matrix& out, const Matrix& m, std::size_t row0, std::size_t col0, bool negate = false) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Scalar v = m.at(i, j);
            if (!v.is_zero()) out.set(row0 + i, col0 + j, negate ? -v : v);
        }
}

/**
 * Component (p, q) = A (p, q) ⊕ C (p, q) ⊕ C' (p, q - 1) where A and C are
 * copies of the base and C' a shifted copy; d : C -> C' is the identity and mu
 * acts diagonally with the sign flipped on C'. Each slot is then conjugated by
 * a random invertible matrix, oracle by oracle.
 */
inline OperadPresentation synthetic_presentation(const OperadPresentation& base, std::mt19937_64& rng) {
    Field f = base.field();
    OperadPresentation o(f, base.max_arity());
    struct Layout {
        std::size_t a = 0, c = 0, cs = 0;
        std::size_t total() const { return a + c + cs; }
    };
    std::map<Slot, Layout> lay;
    for (const auto& [s, labels] : base.components()) {
        lay[s].a = lay[s].c = labels.size();
        lay[{s.first, s.second + 1}].cs = labels.size();
    }
    std::map<Slot, Matrix> g, ginv;
    for (const auto& [s, l] : lay) {
        std::vector<std::string> labels;
        for (std::size_t k = 0; k < l.total(); ++k) labels.push_back("e" + std::to_string(k));
        o.set_component(s.first, s.second, labels);
        g.emplace(s, random_invertible(f, l.total(), rng));
        ginv.emplace(s, inverse_of(g.at(s)));
    }
    auto conj = [&](Slot t, const Matrix& m, Slot s) { return g.at(t) * m * ginv.at(s); };

    for (const auto& [s, l] : lay) {
        Slot up{s.first, s.second + 1};
        auto it = lay.find(up);
        if (it == lay.end() || l.c == 0) continue;
        Matrix d(f, it->second.total(), l.total());
        place(d, Matrix::identity(f, l.c), it->second.a + it->second.c, l.a);
        o.set_internal_differential(s.first, s.second, conj(up, d, s));
    }
    for (int mu : base.supplied()) {
        o.supply_mu(mu);
        for (const auto& [s, l] : lay) {
            auto [p, q] = s;
            if (p < mu) continue;
            Slot t{p - mu + 1, q - mu + 2};
            auto tl = lay.find(t);
            if (tl == lay.end() || l.total() == 0 || tl->second.total() == 0) continue;
            std::vector<OracleKey> keys{{OracleKind::OuterFirst, mu, 1, p, q}, {OracleKind::OuterLast, mu, mu, p, q}};
            for (int i = 1; i <= p - mu + 1; ++i) keys.push_back({OracleKind::Inner, mu, i, p, q});
            for (const auto& k : keys) {
                Matrix m(f, tl->second.total(), l.total());
                if (l.a > 0 && tl->second.a > 0) {
                    Matrix b = base.oracle(k);
                    place(m, b, 0, 0);
                    place(m, b, tl->second.a, l.a);
                }
                if (l.cs > 0 && tl->second.cs > 0) {
                    OracleKey shifted = k;
                    shifted.q = q - 1;
                    place(m, base.oracle(shifted), tl->second.a + tl->second.c, l.a + l.c, true);
                }
                o.set_oracle(k, conj(t, m, s));
            }
        }
    }
    return o;
}

}  // namespace knotss::testing
