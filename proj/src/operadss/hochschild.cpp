#include "knotss/hochschild.hpp"

#include <algorithm>

namespace knotss {

void OperadPresentation::set_component(int p, int q, std::vector<std::string> labels) {
    if (p < 1 || p > max_arity_) throw PreconditionError("component arity out of range");
    comps_[{p, q}] = std::move(labels);
}

std::size_t OperadPresentation::dim(int p, int q) const {
    auto it = comps_.find({p, q});
    return it == comps_.end() ? 0 : it->second.size();
}

void OperadPresentation::set_internal_differential(int p, int q, Matrix m) {
    require_same_field(f_, m.field());
    if (m.cols() != dim(p, q) || m.rows() != dim(p, q + 1))
        throw DimensionError("internal differential shape mismatch");
    internal_.insert_or_assign({p, q}, std::move(m));
}

Matrix OperadPresentation::internal_differential(int p, int q) const {
    auto it = internal_.find({p, q});
    if (it != internal_.end()) return it->second;
    return Matrix(f_, dim(p, q + 1), dim(p, q));
}

void OperadPresentation::supply_mu(int l) {
    if (l < 2) throw PreconditionError("mu_l needs l >= 2");
    if (std::find(supplied_.begin(), supplied_.end(), l) == supplied_.end()) supplied_.push_back(l);
    std::sort(supplied_.begin(), supplied_.end());
}

namespace {

Slot oracle_target(const OracleKey& k) { return {k.p - k.l + 1, k.q - k.l + 2}; }

void check_key(const OracleKey& k) {
    if (k.l < 2 || k.p < k.l) throw PreconditionError("oracle needs p >= l >= 2");
    bool ok = (k.kind == OracleKind::OuterFirst && k.i == 1) || (k.kind == OracleKind::OuterLast && k.i == k.l) ||
              (k.kind == OracleKind::Inner && k.i >= 1 && k.i <= k.p - k.l + 1);
    if (!ok) throw PreconditionError("oracle slot index out of range");
}

}  // namespace

void OperadPresentation::set_oracle(const OracleKey& key, Matrix m) {
    check_key(key);
    require_same_field(f_, m.field());
    Slot t = oracle_target(key);
    if (m.cols() != dim(key.p, key.q) || m.rows() != dim(t.first, t.second))
        throw DimensionError("oracle shape mismatch");
    oracles_.insert_or_assign(key, std::move(m));
}

Matrix OperadPresentation::oracle(const OracleKey& key) const {
    check_key(key);
    Slot t = oracle_target(key);
    auto it = oracles_.find(key);
    if (it != oracles_.end()) return it->second;
    std::size_t src = dim(key.p, key.q), tgt = dim(t.first, t.second);
    if (src == 0 || tgt == 0) return Matrix(f_, tgt, src);
    throw MissingOracleError("missing composition oracle for mu_" + std::to_string(key.l) + " at (" +
                             std::to_string(key.p) + "," + std::to_string(key.q) + "), slot " +
                             std::to_string(key.i));
}

std::vector<OracleKey> OperadPresentation::required_keys() const {
    std::vector<OracleKey> keys;
    for (int l : supplied_)
        for (const auto& [s, labels] : comps_) {
            auto [p, q] = s;
            if (p < l || labels.empty()) continue;
            Slot t{p - l + 1, q - l + 2};
            if (dim(t.first, t.second) == 0) continue;
            keys.push_back({OracleKind::OuterFirst, l, 1, p, q});
            keys.push_back({OracleKind::OuterLast, l, l, p, q});
            for (int i = 1; i <= p - l + 1; ++i) keys.push_back({OracleKind::Inner, l, i, p, q});
        }
    return keys;
}

void OperadPresentation::fill_missing_with_zero() {
    for (const auto& k : required_keys())
        if (!oracles_.count(k)) {
            Slot t = oracle_target(k);
            oracles_.emplace(k, Matrix(f_, dim(t.first, t.second), dim(k.p, k.q)));
        }
}

int oracle_sign(const OracleKey& key, HochschildMode mode) {
    if (mode == HochschildMode::Verbatim) return 1;
    switch (key.kind) {
        case OracleKind::OuterLast:
            return 1;
        case OracleKind::Inner:
            return key.i % 2 ? -1 : 1;
        case OracleKind::OuterFirst:
            return (key.p - key.l + 2) % 2 ? -1 : 1;
    }
    return 1;
}

Matrix mu_action_matrix(const OperadPresentation& o, int l, int p, int q, HochschildMode mode) {
    Slot t{p - l + 1, q - l + 2};
    Matrix acc(o.field(), o.dim(t.first, t.second), o.dim(p, q));
    if (p < l) return acc;
    std::vector<OracleKey> keys{{OracleKind::OuterFirst, l, 1, p, q}, {OracleKind::OuterLast, l, l, p, q}};
    for (int i = 1; i <= p - l + 1; ++i) keys.push_back({OracleKind::Inner, l, i, p, q});
    for (const auto& k : keys) {
        Matrix m = o.oracle(k);
        if (oracle_sign(k, mode) < 0)
            acc = acc - m;
        else
            acc = acc + m;
    }
    return acc;
}

std::map<Slot, Vector> hochschild_delta(const Vector& x, Slot s, const OperadPresentation& o,
                                        HochschildMode mode) {
    if (x.size() != o.dim(s.first, s.second)) throw DimensionError("vector does not match slot");
    std::map<Slot, Vector> out;
    for (int l : o.supplied()) {
        if (s.first < l) continue;
        Slot t{s.first - l + 1, s.second - l + 2};
        out.emplace(t, mu_action_matrix(o, l, s.first, s.second, mode).apply(x));
    }
    return out;
}

FilteredComplex hochschild_complex(const OperadPresentation& o, HochschildMode mode) {
    FilteredComplex c(o.field());
    for (const auto& [s, labels] : o.components()) c.add_slot(s, labels);
    for (const auto& [s, labels] : o.components()) {
        auto [p, q] = s;
        if (o.dim(p, q + 1) > 0 && !labels.empty()) c.set_block(s, 0, o.internal_differential(p, q));
        for (int l : o.supplied()) {
            if (p < l || labels.empty()) continue;
            if (o.dim(p - l + 1, q - l + 2) == 0) continue;
            c.set_block(s, l - 1, mu_action_matrix(o, l, p, q, mode));
        }
    }
    return c;
}

namespace {

std::vector<std::string> monomial_labels(int p, int q) {
    std::vector<std::string> out;
    for (const auto& m : admissible_basis(p, q)) out.push_back(monomial_to_string(m));
    return out;
}

void check_max_p(int max_p) {
    if (max_p < 1 || max_p > 8) throw PreconditionError("max arity must lie in 1..8");
}

}  // namespace

OperadPresentation sinha_presentation(int max_p, Field f) {
    check_max_p(max_p);
    OperadPresentation o(f, max_p);
    for (int p = 1; p <= max_p; ++p)
        for (int q = 0; q <= p - 1; ++q) o.set_component(p, q, monomial_labels(p, q));
    o.supply_mu(2);
    for (int p = 2; p <= max_p; ++p)
        for (int q = 0; q <= p - 2; ++q) {
            o.set_oracle({OracleKind::OuterLast, 2, 2, p, q}, coface_matrix(0, p, q, f));
            o.set_oracle({OracleKind::OuterFirst, 2, 1, p, q}, coface_matrix(p, p, q, f));
            for (int i = 1; i <= p - 1; ++i) o.set_oracle({OracleKind::Inner, 2, i, p, q}, coface_matrix(i, p, q, f));
        }
    return o;
}

FilteredComplex quotient_complex(const FilteredComplex& c, const std::map<Slot, Subspace>& sub) {
    Field f = c.field();
    struct Proj {
        std::vector<std::size_t> keep;
        Matrix system;  // [W | E_keep]
        std::size_t wdim;
    };
    std::map<Slot, Proj> proj;
    FilteredComplex out(f);
    for (const auto& [s, labels] : c.slots()) {
        std::size_t n = labels.size();
        Subspace w = sub.count(s) ? sub.at(s) : Subspace(f, n);
        Echelon e = row_reduce(w.basis().hconcat(Matrix::identity(f, n)));
        std::vector<std::size_t> keep;
        for (auto col : e.pivots)
            if (col >= w.dim()) keep.push_back(col - w.dim());
        std::vector<std::string> kept;
        for (auto k : keep) kept.push_back(labels[k]);
        out.add_slot(s, kept);
        Matrix sys = w.basis().hconcat(Matrix::identity(f, n).select_cols(keep));
        proj.emplace(s, Proj{keep, sys, w.dim()});
    }
    for (const auto& [key, m] : c.blocks()) {
        auto [s, r] = key;
        Slot t{s.first - r, s.second - r + 1};
        const Proj& ps = proj.at(s);
        const Proj& pt = proj.at(t);
        Matrix image = m.select_cols(ps.keep);
        Matrix block(f, pt.keep.size(), ps.keep.size());
        auto sols = solve_columns(pt.system, image);
        for (std::size_t j = 0; j < sols.size(); ++j) {
            if (!sols[j]) throw std::logic_error("quotient projection failed");
            for (std::size_t i = 0; i < pt.keep.size(); ++i) block.set(i, j, (*sols[j])[pt.wdim + i]);
        }
        // Invariance of the subcomplex: images of W must project to zero.
        if (sub.count(s) && sub.at(s).dim() > 0) {
            auto wimg = solve_columns(pt.system, m * sub.at(s).basis());
            for (const auto& x : wimg)
                for (std::size_t i = 0; i < pt.keep.size(); ++i)
                    if (!(*x)[pt.wdim + i].is_zero())
                        throw PreconditionError("quotient by a subspace that is not a subcomplex");
        }
        out.set_block(s, r, block);
    }
    return out;
}

FilteredComplex build_sinha_complex(int max_p, Field f, bool normalized) {
    check_max_p(max_p);
    FilteredComplex c(f);
    for (int p = 1; p <= max_p; ++p)
        for (int q = 0; q <= p - 1; ++q) c.add_slot({p, q}, monomial_labels(p, q));
    for (int p = 2; p <= max_p; ++p)
        for (int q = 0; q <= p - 2; ++q) c.set_block({p, q}, 1, sinha_d1_matrix(p, q, f));
    if (!normalized) return c;
    std::map<Slot, Subspace> deg;
    for (int p = 1; p <= max_p; ++p)
        for (int q = 0; q <= p - 1; ++q) deg.emplace(Slot{p, q}, degenerate_subspace(p, q, f));
    return quotient_complex(c, deg);
}

Vector embed_slot_vector(const FilteredComplex& c, Slot s, const Vector& v) {
    if (v.size() != c.slot_dim(s)) throw DimensionError("vector does not match slot");
    Vector out = zero_vector(c.field(), c.degree_dim(s.second - s.first));
    std::size_t off = c.offset_in_degree(s);
    for (std::size_t k = 0; k < v.size(); ++k) out[off + k] = v[k];
    return out;
}

Vector slot_component(const FilteredComplex& c, Slot s, const Vector& v) {
    std::size_t off = c.offset_in_degree(s);
    return Vector(v.begin() + static_cast<std::ptrdiff_t>(off),
                  v.begin() + static_cast<std::ptrdiff_t>(off + c.slot_dim(s)));
}

E2Report e2_report(const CohClass& x) {
    int p = x.arity(), q = x.degree();
    Field f = x.field();
    E2Report rep;
    rep.p = p;
    rep.q = q;
    rep.field = f.name();
    FilteredComplex c = build_sinha_complex(std::max(p + 1, 2), f, false);
    SpectralSequence ss(c, 2);
    Slot s{p, q};
    Vector v = class_to_vector(x);
    rep.is_d1_cycle = sinha_d1(x).is_zero();
    rep.is_d1_boundary = solve(sinha_d1_matrix(p + 1, q, f), v).has_value();
    const SlotPage& sp = ss.page(2).slots.at(s);
    rep.e2_dim = sp.dim;
    for (std::size_t k = 0; k < sp.dim; ++k)
        rep.generators.push_back(vector_to_class(slot_component(c, s, sp.reps.column(k)), p, q, f).to_string());
    if (rep.is_d1_cycle) {
        auto coords = ss.class_coordinates(s, 2, embed_slot_vector(c, s, v));
        if (!coords) throw std::logic_error("d1-cycle without an E2 class");
        std::vector<std::string> out;
        for (const auto& a : *coords) out.push_back(a.to_string());
        rep.e2_coordinates = out;
    }
    return rep;
}

LiftResult d2_via_lifting(const Vector& x, Slot s, const OperadPresentation& o, HochschildMode mode) {
    auto [p, q] = s;
    Field f = o.field();
    if (x.size() != o.dim(p, q)) throw DimensionError("vector does not match slot");
    if (!is_zero_vector(o.internal_differential(p, q).apply(x)))
        throw PreconditionError("x is not a cycle for the internal differential");
    bool has_mu3 = std::find(o.supplied().begin(), o.supplied().end(), 3) != o.supplied().end();

    Vector z = mu_action_matrix(o, 2, p, q, mode).apply(x);
    Matrix dlow = o.internal_differential(p - 1, q - 1);
    auto y = solve(dlow, z);
    if (!y) throw NoLiftError("mu_2 * x is not a boundary of the internal differential");

    LiftResult res{*y, {p - 2, q - 1}, {}, {}, true};
    Vector w = zero_vector(f, o.dim(p - 2, q - 1));
    if (o.dim(p - 1, q - 1) > 0) {
        Vector m2y = mu_action_matrix(o, 2, p - 1, q - 1, mode).apply(*y);
        for (std::size_t k = 0; k < w.size(); ++k) w[k] -= m2y[k];
    }
    if (has_mu3) {
        Vector m3x = mu_action_matrix(o, 3, p, q, mode).apply(x);
        for (std::size_t k = 0; k < w.size(); ++k) w[k] += m3x[k];
    }
    res.representative = w;
    if (w.empty()) return res;

    FilteredComplex c = hochschild_complex(o, mode);
    SpectralSequence ss(c, 2);
    Slot t = res.target;
    // Correct w by u one filtration lower so that the sum lies in Z_2.
    Vector cand = embed_slot_vector(c, t, w);
    Slot below{t.first - 1, t.second - 1};
    if (c.slot_dim(below) > 0) {
        Vector m2w = mu_action_matrix(o, 2, t.first, t.second, mode).apply(w);
        for (auto& a : m2w) a = -a;
        auto u = solve(o.internal_differential(below.first, below.second), m2w);
        if (!u) throw std::logic_error("d_1 of the lifted class does not vanish");
        Vector eu = embed_slot_vector(c, below, *u);
        for (std::size_t k = 0; k < cand.size(); ++k) cand[k] += eu[k];
    }
    auto coords = ss.class_coordinates(t, 2, cand);
    if (!coords) throw std::logic_error("lifted representative is not a page-2 cycle");
    res.e2_coordinates = *coords;
    res.zero_class = is_zero_vector(*coords);
    return res;
}

std::size_t mu3_obstruction_rank(Field f) { return rank(sinha_d1_matrix(4, 1, f)); }

}  // namespace knotss
