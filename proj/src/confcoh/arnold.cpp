#include "knotss/confcoh.hpp"

#include <algorithm>
#include <sstream>

namespace knotss {

bool is_normal(const Monomial& m) {
    for (std::size_t a = 0; a < m.size(); ++a) {
        if (m[a].i < 1 || m[a].i >= m[a].j) return false;
        if (a > 0 && m[a - 1].j >= m[a].j) return false;
    }
    return true;
}

std::string monomial_to_string(const Monomial& m) {
    if (m.empty()) return "1";
    std::string s;
    for (std::size_t a = 0; a < m.size(); ++a) {
        if (a) s += "*";
        if (m[a].i < 10 && m[a].j < 10)
            s += "g" + std::to_string(m[a].i) + std::to_string(m[a].j);
        else
            s += "g(" + std::to_string(m[a].i) + "," + std::to_string(m[a].j) + ")";
    }
    return s;
}

void CohClass::add_term(const Monomial& m, const Scalar& c) {
    require_same_field(f_, c.field());
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void CohClass::add_factors(const Monomial& factors, const Scalar& c) {
    CohClass nf = normal_form(factors, p_, f_);
    for (const auto& [m, k] : nf.terms()) add_term(m, k * c);
}

void CohClass::check_compatible(const CohClass& o) const {
    require_same_field(f_, o.f_);
    if (p_ != o.p_ || q_ != o.q_) throw PreconditionError("classes live in different (arity, degree)");
}

CohClass CohClass::operator+(const CohClass& o) const {
    check_compatible(o);
    CohClass r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

CohClass CohClass::operator-(const CohClass& o) const { return *this + o.scaled(Scalar(f_, -1)); }

CohClass CohClass::scaled(const Scalar& c) const {
    CohClass r(p_, q_, f_);
    for (const auto& [m, k] : terms_) r.add_term(m, k * c);
    return r;
}

bool CohClass::operator==(const CohClass& o) const {
    return f_ == o.f_ && p_ == o.p_ && q_ == o.q_ && terms_ == o.terms_;
}

std::string CohClass::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::string coef = c.to_string();
        bool neg = !coef.empty() && coef[0] == '-';
        if (neg) coef.erase(0, 1);
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        if (coef != "1") os << coef << (m.empty() ? "" : "*");
        if (!m.empty() || coef == "1") os << (m.empty() ? "1" : monomial_to_string(m));
    }
    return os.str();
}

namespace {

void straighten(Monomial work, const Scalar& coef, CohClass& out) {
    // Bubble sort by (second, first) index; every swap of degree-one generators flips the sign.
    Scalar c = coef;
    auto key = [](const Gen& g) { return std::pair(g.j, g.i); };
    for (std::size_t n = work.size(); n > 1; --n)
        for (std::size_t a = 0; a + 1 < n; ++a)
            if (key(work[a + 1]) < key(work[a])) {
                std::swap(work[a], work[a + 1]);
                c = -c;
            }
    for (std::size_t a = 0; a + 1 < work.size(); ++a) {
        if (work[a] == work[a + 1]) return;  // g_ij^2 = 0
        if (work[a].j == work[a + 1].j) {
            // g_ik g_jk = g_ij g_jk - g_ij g_ik for i < j.
            int i = work[a].i, j = work[a + 1].i, k = work[a].j;
            Monomial first = work, second = work;
            first[a] = {i, j};
            first[a + 1] = {j, k};
            second[a] = {i, j};
            second[a + 1] = {i, k};
            straighten(std::move(first), c, out);
            straighten(std::move(second), -c, out);
            return;
        }
    }
    out.add_term(work, c);
}

}  // namespace

CohClass normal_form(const Monomial& factors, int p, Field f) {
    for (const auto& g : factors)
        if (g.i < 1 || g.i >= g.j || g.j > p)
            throw PreconditionError("generator index out of range: " + monomial_to_string({g}) +
                                    " at arity " + std::to_string(p));
    CohClass out(p, static_cast<int>(factors.size()), f);
    straighten(factors, Scalar(f, 1), out);
    return out;
}

std::uint64_t dim_cohomology(int p, int q) {
    if (p < 0 || q < 0) throw PreconditionError("negative arity or degree");
    std::vector<std::uint64_t> poly{1};
    for (int k = 1; k <= p - 1; ++k) {
        std::vector<std::uint64_t> next(poly.size() + 1, 0);
        for (std::size_t a = 0; a < poly.size(); ++a) {
            next[a] += poly[a];
            next[a + 1] += poly[a] * static_cast<std::uint64_t>(k);
        }
        poly = std::move(next);
    }
    return static_cast<std::size_t>(q) < poly.size() ? poly[q] : 0;
}

namespace {

void enumerate(int p, int q, int next_j, Monomial& cur, std::vector<Monomial>& out) {
    if (static_cast<int>(cur.size()) == q) {
        out.push_back(cur);
        return;
    }
    int remaining = q - static_cast<int>(cur.size());
    for (int j = next_j; j <= p - remaining + 1; ++j)
        for (int i = 1; i < j; ++i) {
            cur.push_back({i, j});
            enumerate(p, q, j + 1, cur, out);
            cur.pop_back();
        }
}

}  // namespace

std::vector<Monomial> admissible_basis(int p, int q) {
    std::vector<Monomial> out;
    if (q < 0 || (p < 1 && q > 0)) return out;
    Monomial cur;
    enumerate(p, q, 2, cur, out);
    return out;
}

CohClass multiply(const CohClass& a, const CohClass& b) {
    require_same_field(a.field(), b.field());
    if (a.arity() != b.arity()) throw PreconditionError("product of classes at different arities");
    CohClass r(a.arity(), a.degree() + b.degree(), a.field());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            Monomial m = ma;
            m.insert(m.end(), mb.begin(), mb.end());
            r.add_factors(m, ca * cb);
        }
    return r;
}

CohClass coface_pullback(int i, const CohClass& x) {
    int p = x.arity();
    if (p < 1) throw PreconditionError("coface pullback needs arity >= 1");
    if (i < 0 || i > p) throw PreconditionError("coface index out of range: " + std::to_string(i));
    CohClass r(p - 1, x.degree(), x.field());
    for (const auto& [m, c] : x.terms()) {
        Monomial img;
        bool dead = false;
        for (const auto& g : m) {
            Gen h;
            if (i == 0) {
                if (g.i == 1) dead = true;
                h = {g.i - 1, g.j - 1};
            } else if (i == p) {
                if (g.j == p) dead = true;
                h = g;
            } else {
                auto cm = [i](int v) { return v <= i ? v : v - 1; };
                h = {cm(g.i), cm(g.j)};
                if (h.i == h.j) dead = true;
            }
            if (dead) break;
            img.push_back(h);
        }
        if (!dead) r.add_factors(img, c);
    }
    return r;
}

CohClass codegeneracy_pullback(int i, const CohClass& x) {
    int p = x.arity();
    if (i < 0 || i > p) throw PreconditionError("codegeneracy index out of range: " + std::to_string(i));
    CohClass r(p + 1, x.degree(), x.field());
    auto e = [i](int v) { return v <= i ? v : v + 1; };
    for (const auto& [m, c] : x.terms()) {
        Monomial img;
        for (const auto& g : m) img.push_back({e(g.i), e(g.j)});
        r.add_factors(img, c);
    }
    return r;
}

CohClass sinha_d1(const CohClass& x) {
    if (x.arity() < 1) throw PreconditionError("d1 needs arity >= 1");
    CohClass r(x.arity() - 1, x.degree(), x.field());
    for (int i = 0; i <= x.arity(); ++i) {
        CohClass t = coface_pullback(i, x);
        r = r + (i % 2 ? t.scaled(Scalar(x.field(), -1)) : t);
    }
    return r;
}

Vector class_to_vector(const CohClass& x) {
    auto basis = admissible_basis(x.arity(), x.degree());
    std::map<Monomial, std::size_t> index;
    for (std::size_t a = 0; a < basis.size(); ++a) index[basis[a]] = a;
    Vector v = zero_vector(x.field(), basis.size());
    for (const auto& [m, c] : x.terms()) v[index.at(m)] = c;
    return v;
}

CohClass vector_to_class(const Vector& v, int p, int q, Field f) {
    auto basis = admissible_basis(p, q);
    if (v.size() != basis.size()) throw DimensionError("coordinate vector length mismatch");
    CohClass x(p, q, f);
    for (std::size_t a = 0; a < basis.size(); ++a) x.add_term(basis[a], v[a]);
    return x;
}

namespace {

template <class Op>
Matrix operator_matrix(int p_src, int p_tgt, int q, Field f, Op op) {
    auto src = admissible_basis(p_src, q);
    auto tgt = admissible_basis(p_tgt, q);
    std::map<Monomial, std::size_t> index;
    for (std::size_t a = 0; a < tgt.size(); ++a) index[tgt[a]] = a;
    Matrix m(f, tgt.size(), src.size());
    for (std::size_t b = 0; b < src.size(); ++b) {
        CohClass x(p_src, q, f);
        x.add_term(src[b], Scalar(f, 1));
        CohClass y = op(x);
        for (const auto& [mono, c] : y.terms()) m.set(index.at(mono), b, c);
    }
    return m;
}

}  // namespace

Matrix sinha_d1_matrix(int p, int q, Field f) {
    return operator_matrix(p, p - 1, q, f, [](const CohClass& x) { return sinha_d1(x); });
}

Matrix coface_matrix(int i, int p, int q, Field f) {
    return operator_matrix(p, p - 1, q, f, [i](const CohClass& x) { return coface_pullback(i, x); });
}

Subspace degenerate_subspace(int p, int q, Field f) {
    std::size_t n = admissible_basis(p, q).size();
    if (p < 1) return Subspace(f, n);
    Matrix gens(f, n, 0);
    for (int i = 0; i <= p - 1; ++i)
        gens = gens.hconcat(operator_matrix(p - 1, p, q, f,
                                            [i](const CohClass& x) { return codegeneracy_pullback(i, x); }));
    return Subspace::span(gens);
}

}  // namespace knotss
