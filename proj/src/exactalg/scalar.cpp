#include "knotss/exactalg.hpp"

#include <cctype>

namespace knotss {

namespace {

bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
    std::int64_t t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (t < 0) t += p;
    return static_cast<std::uint32_t>(t);
}

std::uint32_t reduce_mpz(const mpz_class& z, std::uint32_t p) {
    mpz_class r = z % p;
    if (r < 0) r += p;
    return static_cast<std::uint32_t>(r.get_ui());
}

}  // namespace

Field Field::prime(std::uint32_t p) {
    if (p >= (1u << 31) || !is_prime(p))
        throw PreconditionError("field characteristic must be a prime below 2^31: " +
                                std::to_string(p));
    return Field(p);
}

Field Field::parse(std::string_view s) {
    std::string t;
    for (char c : s) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (t == "q") return rationals();
    if (t.size() >= 2 && t[0] == 'f') {
        std::string digits = t.substr(1);
        if (!digits.empty() && digits[0] == '_') digits.erase(0, 1);
        if (digits.empty() || digits.size() > 9) throw PreconditionError("bad field: " + t);
        for (char c : digits)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw PreconditionError("bad field: " + t);
        return prime(static_cast<std::uint32_t>(std::stoul(digits)));
    }
    throw PreconditionError("bad field: " + std::string(s));
}

std::string Field::name() const { return p_ == 0 ? "Q" : "F" + std::to_string(p_); }

void require_same_field(Field a, Field b) {
    if (a != b) throw PreconditionError("field mismatch: " + a.name() + " vs " + b.name());
}

Scalar::Scalar(Field f, long v) : f_(f) {
    if (f.is_rational()) {
        q_ = v;
    } else {
        long p = f.characteristic();
        long r = v % p;
        if (r < 0) r += p;
        r_ = static_cast<std::uint32_t>(r);
    }
}

Scalar::Scalar(Field f, const mpq_class& v) : f_(f) {
    if (f.is_rational()) {
        q_ = v;
        q_.canonicalize();
    } else {
        std::uint32_t p = f.characteristic();
        std::uint32_t den = reduce_mpz(v.get_den(), p);
        if (den == 0) throw PreconditionError("denominator not invertible in " + f.name());
        std::uint64_t num = reduce_mpz(v.get_num(), p);
        r_ = static_cast<std::uint32_t>(num * mod_inverse(den, p) % p);
    }
}

Scalar reduce_into(Field f, const mpq_class& v) { return Scalar(f, v); }

Scalar Scalar::parse(Field f, std::string_view text) {
    std::string s(text);
    mpq_class v;
    if (v.set_str(s, 10) != 0) throw PreconditionError("bad scalar literal: " + s);
    v.canonicalize();
    return Scalar(f, v);
}

bool Scalar::is_zero() const { return f_.is_rational() ? q_ == 0 : r_ == 0; }
bool Scalar::is_one() const { return f_.is_rational() ? q_ == 1 : r_ == 1; }

Scalar Scalar::operator+(const Scalar& o) const {
    require_same_field(f_, o.f_);
    Scalar s(f_);
    if (f_.is_rational())
        s.q_ = q_ + o.q_;
    else
        s.r_ = static_cast<std::uint32_t>((std::uint64_t(r_) + o.r_) % f_.characteristic());
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
    Scalar s(f_);
    if (f_.is_rational())
        s.q_ = -q_;
    else
        s.r_ = r_ == 0 ? 0 : f_.characteristic() - r_;
    return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
    require_same_field(f_, o.f_);
    Scalar s(f_);
    if (f_.is_rational())
        s.q_ = q_ * o.q_;
    else
        s.r_ = static_cast<std::uint32_t>(std::uint64_t(r_) * o.r_ % f_.characteristic());
    return s;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw PreconditionError("division by zero");
    Scalar s(f_);
    if (f_.is_rational())
        s.q_ = 1 / q_;
    else
        s.r_ = mod_inverse(r_, f_.characteristic());
    return s;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

bool Scalar::operator==(const Scalar& o) const {
    require_same_field(f_, o.f_);
    return f_.is_rational() ? q_ == o.q_ : r_ == o.r_;
}

std::string Scalar::to_string() const {
    return f_.is_rational() ? q_.get_str() : std::to_string(r_);
}

Vector zero_vector(Field f, std::size_t n) { return Vector(n, Scalar(f)); }

bool is_zero_vector(const Vector& v) {
    for (const auto& s : v)
        if (!s.is_zero()) return false;
    return true;
}

}  // namespace knotss
