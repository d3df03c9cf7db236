#include "rankstab/field.hpp"

#include <cstdlib>

namespace rankstab {

bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (std::uint64_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

FieldSpec FieldSpec::prime_field(std::uint64_t p) {
    if (p >= (1ull << 31))
        throw Error("prime field modulus too large (must be below 2^31): " + std::to_string(p));
    if (!is_prime(p))
        throw Error("prime field modulus is not prime: " + std::to_string(p));
    return FieldSpec(FieldKind::PrimeField, p);
}

std::uint64_t FieldSpec::prime() const {
    if (!is_prime_field()) throw Error("field has no modulus: not a prime field");
    return p_;
}

void FieldSpec::require_same(const FieldSpec& o) const {
    if (*this != o)
        throw FieldMismatchError("field mismatch: " + to_string() + " vs " + o.to_string());
}

std::string FieldSpec::to_string() const {
    return is_rationals() ? "Q" : "Fp(" + std::to_string(p_) + ")";
}

namespace {

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
    if (a == 0) throw Error("division by zero in F_p");
    // extended Euclid on signed 64-bit; p < 2^31 keeps everything in range
    long long t = 0, new_t = 1;
    long long r = (long long)p, new_r = (long long)a;
    while (new_r != 0) {
        long long q = r / new_r;
        long long tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw Error("element not invertible mod p");
    if (t < 0) t += (long long)p;
    return (std::uint64_t)t;
}

std::uint64_t mpz_mod_u64(const mpz_class& v, std::uint64_t p) {
    mpz_class m = v % (long)p;
    if (m < 0) m += (long)p;
    return m.get_ui();
}

}  // namespace

Scalar Scalar::zero(const FieldSpec& f) {
    return f.is_rationals() ? Scalar(f, mpq_class(0)) : Scalar(f, std::uint64_t(0));
}

Scalar Scalar::one(const FieldSpec& f) {
    return f.is_rationals() ? Scalar(f, mpq_class(1)) : Scalar(f, std::uint64_t(1 % f.prime()));
}

Scalar Scalar::from_integer(const FieldSpec& f, long v) {
    return from_mpz(f, mpz_class(v));
}

Scalar Scalar::from_mpz(const FieldSpec& f, const mpz_class& v) {
    if (f.is_rationals()) return Scalar(f, mpq_class(v));
    return Scalar(f, mpz_mod_u64(v, f.prime()));
}

Scalar Scalar::from_mpq(const FieldSpec& f, const mpq_class& v) {
    mpq_class q = v;
    q.canonicalize();
    if (f.is_rationals()) return Scalar(f, q);
    std::uint64_t p = f.prime();
    std::uint64_t num = mpz_mod_u64(q.get_num(), p);
    std::uint64_t den = mpz_mod_u64(q.get_den(), p);
    return Scalar(f, (num * mod_inverse(den, p)) % p);
}

Scalar Scalar::parse(const FieldSpec& f, const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return from_mpz(f, mpz_class(text));
        }
        mpz_class num(text.substr(0, slash));
        mpz_class den(text.substr(slash + 1));
        if (den == 0) throw Error("zero denominator in scalar: " + text);
        return from_mpq(f, mpq_class(num, den));
    } catch (const std::invalid_argument&) {
        throw Error("malformed scalar literal: \"" + text + "\"");
    }
}

bool Scalar::is_zero() const {
    return field_.is_rationals() ? rational() == 0 : residue() == 0;
}

bool Scalar::is_one() const {
    return field_.is_rationals() ? rational() == 1 : residue() == 1 % field_.prime();
}

Scalar Scalar::operator-() const {
    if (field_.is_rationals()) return Scalar(field_, mpq_class(-rational()));
    std::uint64_t p = field_.prime();
    return Scalar(field_, residue() == 0 ? 0 : p - residue());
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw Error("inverse of zero");
    if (field_.is_rationals()) return Scalar(field_, mpq_class(1) / rational());
    return Scalar(field_, mod_inverse(residue(), field_.prime()));
}

Scalar& Scalar::operator+=(const Scalar& o) {
    field_.require_same(o.field_);
    if (field_.is_rationals())
        std::get<mpq_class>(v_) += o.rational();
    else
        v_ = (residue() + o.residue()) % field_.prime();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    field_.require_same(o.field_);
    if (field_.is_rationals())
        std::get<mpq_class>(v_) -= o.rational();
    else
        v_ = (residue() + field_.prime() - o.residue()) % field_.prime();
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    field_.require_same(o.field_);
    if (field_.is_rationals())
        std::get<mpq_class>(v_) *= o.rational();
    else
        v_ = (residue() * o.residue()) % field_.prime();
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    *this *= o.inverse();
    return *this;
}

void Scalar::add_mul(const Scalar& a, const Scalar& b) {
    field_.require_same(a.field_);
    field_.require_same(b.field_);
    if (field_.is_rationals())
        std::get<mpq_class>(v_) += a.rational() * b.rational();
    else
        v_ = (residue() + a.residue() * b.residue()) % field_.prime();
}

bool Scalar::operator==(const Scalar& o) const {
    if (field_ != o.field_) return false;
    return field_.is_rationals() ? rational() == o.rational() : residue() == o.residue();
}

std::string Scalar::to_string() const {
    return field_.is_rationals() ? rational().get_str() : std::to_string(residue());
}

}  // namespace rankstab
