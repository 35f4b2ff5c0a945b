#include "knotss/exactalg.hpp"

#include <sstream>

namespace knotss {

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols) : f_(f), rows_(rows), cols_(cols) {
    if (f.is_rational())
        data_ = std::vector<mpq_class>(rows * cols);
    else
        data_ = std::vector<std::uint32_t>(rows * cols, 0);
}

Matrix Matrix::identity(Field f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, Scalar(f, 1));
    return m;
}

Matrix Matrix::from_rows(Field f, const std::vector<std::vector<long>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows[0].size() : 0;
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw DimensionError("ragged matrix literal");
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, Scalar(f, rows[i][j]));
    }
    return m;
}

Matrix Matrix::from_columns(Field f, std::size_t rows, const std::vector<Vector>& cols) {
    Matrix m(f, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
    return m;
}

Scalar Matrix::at(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw DimensionError("matrix index out of range");
    if (f_.is_rational()) return Scalar(f_, q_data()[r * cols_ + c]);
    return Scalar(f_, static_cast<long>(fp_data()[r * cols_ + c]));
}

void Matrix::set(std::size_t r, std::size_t c, const Scalar& v) {
    if (r >= rows_ || c >= cols_) throw DimensionError("matrix index out of range");
    require_same_field(f_, v.field());
    if (f_.is_rational())
        q_data()[r * cols_ + c] = v.rational();
    else
        fp_data()[r * cols_ + c] = v.residue();
}

void Matrix::add_to(std::size_t r, std::size_t c, const Scalar& v) { set(r, c, at(r, c) + v); }

bool Matrix::entry_is_zero(std::size_t r, std::size_t c) const {
    if (f_.is_rational()) return q_data()[r * cols_ + c] == 0;
    return fp_data()[r * cols_ + c] == 0;
}

Vector Matrix::column(std::size_t c) const {
    Vector v;
    v.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v.push_back(at(r, c));
    return v;
}

Vector Matrix::row(std::size_t r) const {
    Vector v;
    v.reserve(cols_);
    for (std::size_t c = 0; c < cols_; ++c) v.push_back(at(r, c));
    return v;
}

void Matrix::set_column(std::size_t c, const Vector& v) {
    if (v.size() != rows_) throw DimensionError("column length mismatch");
    for (std::size_t r = 0; r < rows_; ++r) set(r, c, v[r]);
}

Matrix Matrix::transpose() const {
    Matrix t(f_, cols_, rows_);
    if (f_.is_rational()) {
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t.q_data()[c * rows_ + r] = q_data()[r * cols_ + c];
    } else {
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t.fp_data()[c * rows_ + r] = fp_data()[r * cols_ + c];
    }
    return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
    require_same_field(f_, o.f_);
    if (cols_ != o.rows_) throw DimensionError("matrix product shape mismatch");
    Matrix m(f_, rows_, o.cols_);
    if (f_.is_rational()) {
        const auto& a = q_data();
        const auto& b = o.q_data();
        auto& c = m.q_data();
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const mpq_class& x = a[i * cols_ + k];
                if (x == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    const mpq_class& y = b[k * o.cols_ + j];
                    if (y != 0) c[i * o.cols_ + j] += x * y;
                }
            }
    } else {
        const std::uint64_t p = f_.characteristic();
        const auto& a = fp_data();
        const auto& b = o.fp_data();
        auto& c = m.fp_data();
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                std::uint64_t x = a[i * cols_ + k];
                if (x == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    std::uint64_t y = b[k * o.cols_ + j];
                    if (y) c[i * o.cols_ + j] = static_cast<std::uint32_t>((c[i * o.cols_ + j] + x * y) % p);
                }
            }
    }
    return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
    require_same_field(f_, o.f_);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix sum shape mismatch");
    Matrix m = *this;
    if (f_.is_rational()) {
        for (std::size_t i = 0; i < rows_ * cols_; ++i) m.q_data()[i] += o.q_data()[i];
    } else {
        std::uint64_t p = f_.characteristic();
        for (std::size_t i = 0; i < rows_ * cols_; ++i)
            m.fp_data()[i] = static_cast<std::uint32_t>((std::uint64_t(m.fp_data()[i]) + o.fp_data()[i]) % p);
    }
    return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
    Matrix neg(o.f_, o.rows_, o.cols_);
    for (std::size_t r = 0; r < o.rows_; ++r)
        for (std::size_t c = 0; c < o.cols_; ++c)
            if (!o.entry_is_zero(r, c)) neg.set(r, c, -o.at(r, c));
    return *this + neg;
}

Vector Matrix::apply(const Vector& v) const {
    if (v.size() != cols_) throw DimensionError("vector length mismatch");
    Vector out = zero_vector(f_, rows_);
    for (std::size_t c = 0; c < cols_; ++c) {
        require_same_field(f_, v[c].field());
        if (v[c].is_zero()) continue;
        for (std::size_t r = 0; r < rows_; ++r)
            if (!entry_is_zero(r, c)) out[r] += at(r, c) * v[c];
    }
    return out;
}

bool Matrix::is_zero() const {
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (!entry_is_zero(r, c)) return false;
    return true;
}

bool Matrix::operator==(const Matrix& o) const {
    return f_ == o.f_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
    Matrix m(f_, idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t c = 0; c < cols_; ++c)
            if (!entry_is_zero(idx[i], c)) m.set(i, c, at(idx[i], c));
    return m;
}

Matrix Matrix::select_cols(const std::vector<std::size_t>& idx) const {
    Matrix m(f_, rows_, idx.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t j = 0; j < idx.size(); ++j)
            if (!entry_is_zero(r, idx[j])) m.set(r, j, at(r, idx[j]));
    return m;
}

Matrix Matrix::hconcat(const Matrix& o) const {
    require_same_field(f_, o.f_);
    if (rows_ != o.rows_) throw DimensionError("hconcat row mismatch");
    Matrix m(f_, rows_, cols_ + o.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c)
            if (!entry_is_zero(r, c)) m.set(r, c, at(r, c));
        for (std::size_t c = 0; c < o.cols_; ++c)
            if (!o.entry_is_zero(r, c)) m.set(r, cols_ + c, o.at(r, c));
    }
    return m;
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t r = 0; r < rows_; ++r) {
        os << (r ? ", [" : "[");
        for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << at(r, c).to_string();
        os << "]";
    }
    os << "]";
    return os.str();
}

}  // namespace knotss
