#include "knotss/exactalg.hpp"

#include <utility>

namespace knotss {

namespace {

// Gauss-Jordan on a dense row-major buffer, restricted to the first `limit`
// columns when choosing pivots.
void reduce_fp(std::vector<std::uint32_t>& a, std::size_t rows, std::size_t cols, std::uint32_t p,
               std::size_t limit, std::vector<std::size_t>& pivots) {
    const std::uint64_t P = p;
    auto inv = [&](std::uint64_t x) {
        std::uint64_t r = 1, e = P - 2;
        while (e) {
            if (e & 1) r = r * x % P;
            x = x * x % P;
            e >>= 1;
        }
        return r;
    };
    std::size_t r = 0;
    for (std::size_t c = 0; c < limit && r < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (a[i * cols + c]) {
                piv = i;
                break;
            }
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
        std::uint64_t s = inv(a[r * cols + c]);
        std::uint32_t* pr = &a[r * cols];
        std::vector<std::size_t> nz;
        for (std::size_t j = c; j < cols; ++j)
            if (pr[j]) {
                pr[j] = static_cast<std::uint32_t>(pr[j] * s % P);
                nz.push_back(j);
            }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            std::uint32_t* pi = &a[i * cols];
            std::uint64_t f = pi[c];
            if (!f) continue;
            std::uint64_t nf = P - f;
            for (std::size_t j : nz) pi[j] = static_cast<std::uint32_t>((pi[j] + nf * pr[j]) % P);
        }
        pivots.push_back(c);
        ++r;
    }
}

void reduce_q(std::vector<mpq_class>& a, std::size_t rows, std::size_t cols, std::size_t limit,
              std::vector<std::size_t>& pivots) {
    std::size_t r = 0;
    mpq_class f;
    for (std::size_t c = 0; c < limit && r < rows; ++c) {
        // Prefer the pivot with the smallest numerator and denominator to limit growth.
        std::size_t piv = rows;
        std::size_t best = 0;
        for (std::size_t i = r; i < rows; ++i) {
            const mpq_class& x = a[i * cols + c];
            if (x == 0) continue;
            std::size_t sz = mpz_sizeinbase(x.get_num_mpz_t(), 2) + mpz_sizeinbase(x.get_den_mpz_t(), 2);
            if (piv == rows || sz < best) {
                piv = i;
                best = sz;
                if (sz <= 2) break;
            }
        }
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
        mpq_class s = 1 / a[r * cols + c];
        mpq_class* pr = &a[r * cols];
        std::vector<std::size_t> nz;
        for (std::size_t j = c; j < cols; ++j)
            if (pr[j] != 0) {
                pr[j] *= s;
                nz.push_back(j);
            }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            mpq_class* pi = &a[i * cols];
            if (pi[c] == 0) continue;
            f = pi[c];
            for (std::size_t j : nz) pi[j] -= f * pr[j];
        }
        pivots.push_back(c);
        ++r;
    }
}

Echelon reduce_limited(const Matrix& m, std::size_t limit) {
    Echelon e{m, {}};
    if (m.field().is_rational())
        reduce_q(e.reduced.q_data(), m.rows(), m.cols(), limit, e.pivots);
    else
        reduce_fp(e.reduced.fp_data(), m.rows(), m.cols(), m.field().characteristic(), limit, e.pivots);
    return e;
}

}  // namespace

std::vector<std::optional<Vector>> solve_columns(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw DimensionError("right-hand side length mismatch");
    require_same_field(a.field(), b.field());
    Echelon e = reduce_limited(a.hconcat(b), a.cols());
    const Matrix& red = e.reduced;
    std::size_t rk = e.pivots.size();
    std::vector<std::optional<Vector>> out;
    out.reserve(b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        std::size_t col = a.cols() + j;
        bool ok = true;
        for (std::size_t i = rk; i < red.rows(); ++i)
            if (!red.entry_is_zero(i, col)) {
                ok = false;
                break;
            }
        if (!ok) {
            out.emplace_back(std::nullopt);
            continue;
        }
        Vector x = zero_vector(a.field(), a.cols());
        for (std::size_t i = 0; i < rk; ++i) x[e.pivots[i]] = red.at(i, col);
        out.emplace_back(std::move(x));
    }
    return out;
}

Echelon row_reduce(const Matrix& m) { return reduce_limited(m, m.cols()); }

std::size_t rank(const Matrix& m) {
    // Eliminate along the shorter side.
    if (m.cols() > m.rows()) return row_reduce(m.transpose()).pivots.size();
    return row_reduce(m).pivots.size();
}

Subspace kernel_basis(const Matrix& m) {
    Echelon e = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivots) is_pivot[c] = true;
    std::vector<Vector> vecs;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vector v = zero_vector(m.field(), m.cols());
        v[free] = Scalar(m.field(), 1);
        for (std::size_t i = 0; i < e.pivots.size(); ++i)
            if (!e.reduced.entry_is_zero(i, free)) v[e.pivots[i]] = -e.reduced.at(i, free);
        vecs.push_back(std::move(v));
    }
    return Subspace::from_basis(Matrix::from_columns(m.field(), m.cols(), vecs));
}

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
    if (b.size() != m.rows()) throw DimensionError("right-hand side length mismatch");
    Matrix bm = Matrix::from_columns(m.field(), m.rows(), {b});
    return solve_columns(m, bm)[0];
}

Subspace::Subspace(Field f, std::size_t ambient) : basis_(f, ambient, 0) {}

Subspace Subspace::from_basis(const Matrix& cols) {
    if (rank(cols) != cols.cols()) throw PreconditionError("basis vectors are not independent");
    return Subspace(cols);
}

Subspace Subspace::span(const Matrix& cols) {
    Echelon e = row_reduce(cols);
    return Subspace(cols.select_cols(e.pivots));
}

Subspace Subspace::span(Field f, std::size_t ambient, const std::vector<Vector>& vecs) {
    return span(Matrix::from_columns(f, ambient, vecs));
}

Subspace Subspace::whole(Field f, std::size_t ambient) { return Subspace(Matrix::identity(f, ambient)); }

std::optional<Vector> Subspace::coordinates(const Vector& v) const {
    if (v.size() != ambient()) throw DimensionError("vector length mismatch");
    return solve(basis_, v);
}

bool Subspace::contains(const Vector& v) const { return coordinates(v).has_value(); }

bool Subspace::contains(const Subspace& o) const {
    require_same_field(field(), o.field());
    if (o.ambient() != ambient()) throw DimensionError("ambient mismatch");
    if (o.dim() == 0) return true;
    for (const auto& x : solve_columns(basis_, o.basis_))
        if (!x) return false;
    return true;
}

Subspace Subspace::sum(const Subspace& o) const {
    require_same_field(field(), o.field());
    if (o.ambient() != ambient()) throw DimensionError("ambient mismatch");
    return span(basis_.hconcat(o.basis_));
}

Subspace Subspace::image_under(const Matrix& f) const {
    if (f.cols() != ambient()) throw DimensionError("map source mismatch");
    return span(f * basis_);
}

Subquotient subquotient(const Subspace& z, const Subspace& b) {
    require_same_field(z.field(), b.field());
    if (z.ambient() != b.ambient()) throw DimensionError("ambient mismatch");
    if (b.dim() > 0) {
        auto sols = solve_columns(z.basis(), b.basis());
        for (std::size_t j = 0; j < sols.size(); ++j)
            if (!sols[j]) throw ContainmentError("subquotient: B is not contained in Z", b.vector(j));
    }
    // Greedy completion: [B | Z] pivots beyond B's block pick representatives.
    Echelon e = row_reduce(b.basis().hconcat(z.basis()));
    std::vector<std::size_t> chosen;
    for (auto c : e.pivots)
        if (c >= b.dim()) chosen.push_back(c - b.dim());
    return {chosen.size(), z.basis().select_cols(chosen)};
}

std::optional<Vector> quotient_coordinates(const Subspace& z, const Subspace& b, const Matrix& reps,
                                           const Vector& v) {
    (void)z;
    Matrix sys = reps.hconcat(b.basis());
    auto x = solve(sys, v);
    if (!x) return std::nullopt;
    return Vector(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(reps.cols()));
}

Matrix induced_map(const Matrix& f, const Subspace& source_z, const Subspace& source_b,
                   const Subspace& target_z, const Subspace& target_b) {
    require_same_field(f.field(), source_z.field());
    if (f.cols() != source_z.ambient() || f.rows() != target_z.ambient())
        throw DimensionError("induced_map shape mismatch");
    Subquotient src = subquotient(source_z, source_b);
    Subquotient tgt = subquotient(target_z, target_b);

    Matrix fz = f * source_z.basis();
    if (fz.cols() > 0) {
        auto in_z = solve_columns(target_z.basis(), fz);
        for (std::size_t j = 0; j < in_z.size(); ++j)
            if (!in_z[j])
                throw ContainmentError("induced_map: f(Z_source) not inside Z_target", source_z.vector(j));
    }
    Matrix fb = f * source_b.basis();
    if (fb.cols() > 0) {
        auto in_b = solve_columns(target_b.basis(), fb);
        for (std::size_t j = 0; j < in_b.size(); ++j)
            if (!in_b[j])
                throw ContainmentError("induced_map: f(B_source) not inside B_target", source_b.vector(j));
    }

    Matrix out(f.field(), tgt.dimension, src.dimension);
    if (src.dimension == 0 || tgt.dimension == 0) return out;
    Matrix images = f * src.representatives;
    auto coords = solve_columns(tgt.representatives.hconcat(target_b.basis()), images);
    for (std::size_t j = 0; j < coords.size(); ++j) {
        // Containment in Z_target was checked above, so every image has coordinates.
        for (std::size_t i = 0; i < tgt.dimension; ++i) out.set(i, j, (*coords[j])[i]);
    }
    return out;
}

}  // namespace knotss
