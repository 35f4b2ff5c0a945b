#pragma once

// Exact linear algebra over prime fields and the rationals.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace knotss {

class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class Field {
public:
    /** F_p; throws PreconditionError unless p is a prime below 2^31. */
    static Field prime(std::uint32_t p);
    static Field rationals() { return Field(0); }
    /** Accepts "f2", "F3", "q", "Q", "f5", ... (case-insensitive). */
    static Field parse(std::string_view s);

    bool is_rational() const { return p_ == 0; }
    std::uint32_t characteristic() const { return p_; }
    std::string name() const;

    friend bool operator==(Field a, Field b) { return a.p_ == b.p_; }
    friend bool operator!=(Field a, Field b) { return a.p_ != b.p_; }

private:
    explicit Field(std::uint32_t p) : p_(p) {}
    std::uint32_t p_;
};

void require_same_field(Field a, Field b);

class Scalar {
public:
    explicit Scalar(Field f) : f_(f) {}
    Scalar(Field f, long v);
    Scalar(Field f, const mpq_class& v);
    /** Parses "3", "-2/5"; over F_p the denominator must be invertible. */
    static Scalar parse(Field f, std::string_view text);

    Field field() const { return f_; }
    bool is_zero() const;
    bool is_one() const;
    std::uint32_t residue() const { return r_; }
    const mpq_class& rational() const { return q_; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar inverse() const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    Field f_;
    std::uint32_t r_ = 0;
    mpq_class q_;
};

/** Reduces a rational into F_p, or copies it for Q. */
Scalar reduce_into(Field f, const mpq_class& v);

using Vector = std::vector<Scalar>;

Vector zero_vector(Field f, std::size_t n);
bool is_zero_vector(const Vector& v);

class Matrix {
public:
    Matrix(Field f, std::size_t rows, std::size_t cols);
    static Matrix identity(Field f, std::size_t n);
    /** Builds from integer rows; convenient for literals in tests. */
    static Matrix from_rows(Field f, const std::vector<std::vector<long>>& rows);
    /** Columns given as vectors of common length `rows`. */
    static Matrix from_columns(Field f, std::size_t rows, const std::vector<Vector>& cols);

    Field field() const { return f_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const Scalar& v);
    /** Adds v to entry (r, c). */
    void add_to(std::size_t r, std::size_t c, const Scalar& v);
    bool entry_is_zero(std::size_t r, std::size_t c) const;

    Vector column(std::size_t c) const;
    Vector row(std::size_t r) const;
    void set_column(std::size_t c, const Vector& v);

    Matrix transpose() const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Vector apply(const Vector& v) const;
    bool is_zero() const;
    bool operator==(const Matrix& o) const;

    Matrix select_rows(const std::vector<std::size_t>& idx) const;
    Matrix select_cols(const std::vector<std::size_t>& idx) const;
    /** Horizontal concatenation [this | o]. */
    Matrix hconcat(const Matrix& o) const;

    std::string to_string() const;

    // Raw storage access for the elimination kernels.
    const std::vector<std::uint32_t>& fp_data() const { return std::get<0>(data_); }
    std::vector<std::uint32_t>& fp_data() { return std::get<0>(data_); }
    const std::vector<mpq_class>& q_data() const { return std::get<1>(data_); }
    std::vector<mpq_class>& q_data() { return std::get<1>(data_); }

private:
    Field f_;
    std::size_t rows_, cols_;
    std::variant<std::vector<std::uint32_t>, std::vector<mpq_class>> data_;
};

/** Reduced row echelon form with the list of pivot columns. */
struct Echelon {
    Matrix reduced;
    std::vector<std::size_t> pivots;
};

Echelon row_reduce(const Matrix& m);

std::size_t rank(const Matrix& m);

class Subspace;

Subspace kernel_basis(const Matrix& m);

/** Some x with Mx = b, or nullopt if inconsistent; DimensionError on length mismatch. */
std::optional<Vector> solve(const Matrix& m, const Vector& b);

/** Solves M X = B column by column from a single elimination. */
std::vector<std::optional<Vector>> solve_columns(const Matrix& m, const Matrix& b);

class Subspace {
public:
    Subspace(Field f, std::size_t ambient);
    /** Independent columns required; PreconditionError otherwise. */
    static Subspace from_basis(const Matrix& cols);
    /** Any spanning columns; a basis is extracted. */
    static Subspace span(const Matrix& cols);
    static Subspace span(Field f, std::size_t ambient, const std::vector<Vector>& vecs);
    static Subspace whole(Field f, std::size_t ambient);

    Field field() const { return basis_.field(); }
    std::size_t ambient() const { return basis_.rows(); }
    std::size_t dim() const { return basis_.cols(); }
    const Matrix& basis() const { return basis_; }
    Vector vector(std::size_t i) const { return basis_.column(i); }

    bool contains(const Vector& v) const;
    bool contains(const Subspace& o) const;
    /** Coordinates of v in this basis, or nullopt when v lies outside. */
    std::optional<Vector> coordinates(const Vector& v) const;

    Subspace sum(const Subspace& o) const;
    Subspace image_under(const Matrix& f) const;

private:
    explicit Subspace(Matrix basis) : basis_(std::move(basis)) {}
    Matrix basis_;
};

class ContainmentError : public std::runtime_error {
public:
    ContainmentError(const std::string& what, Vector witness)
        : std::runtime_error(what), witness_(std::move(witness)) {}
    const Vector& witness() const { return witness_; }

private:
    Vector witness_;
};

struct Subquotient {
    std::size_t dimension;
    /** Columns: representatives completing B's basis to a basis of Z. */
    Matrix representatives;
};

/** Z / B with B ⊆ Z checked; throws ContainmentError with a witness. */
Subquotient subquotient(const Subspace& z, const Subspace& b);

/**
 * Matrix of the map Z_s/B_s -> Z_t/B_t induced by f, in the representative
 * bases chosen by subquotient(). Throws ContainmentError on f(Z_s) ⊄ Z_t or
 * f(B_s) ⊄ B_t, with the offending source vector as witness.
 */
Matrix induced_map(const Matrix& f, const Subspace& source_z, const Subspace& source_b,
                   const Subspace& target_z, const Subspace& target_b);

/** Coordinates of v modulo B in the representative basis of Z/B. */
std::optional<Vector> quotient_coordinates(const Subspace& z, const Subspace& b,
                                           const Matrix& reps, const Vector& v);

}  // namespace knotss
