#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "rankstab/errors.hpp"

namespace rankstab {

enum class FieldKind { Rationals, PrimeField };

bool is_prime(std::uint64_t p);

/// Ground field descriptor: the rationals, or integers mod a prime p.
class FieldSpec {
public:
    static FieldSpec rationals() { return FieldSpec(FieldKind::Rationals, 0); }
    /// Throws Error unless p is a prime below 2^31.
    static FieldSpec prime_field(std::uint64_t p);

    FieldKind kind() const { return kind_; }
    bool is_rationals() const { return kind_ == FieldKind::Rationals; }
    bool is_prime_field() const { return kind_ == FieldKind::PrimeField; }
    std::uint64_t prime() const;

    bool operator==(const FieldSpec& o) const { return kind_ == o.kind_ && p_ == o.p_; }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }

    void require_same(const FieldSpec& o) const;
    std::string to_string() const;

private:
    FieldSpec(FieldKind k, std::uint64_t p) : kind_(k), p_(p) {}
    FieldKind kind_;
    std::uint64_t p_;
};

/// Exact field element tagged with its field. Rationals are kept in lowest
/// terms with positive denominator; prime-field values as residues in [0, p).
class Scalar {
public:
    Scalar() : field_(FieldSpec::rationals()), v_(mpq_class(0)) {}

    static Scalar zero(const FieldSpec& f);
    static Scalar one(const FieldSpec& f);
    static Scalar from_integer(const FieldSpec& f, long v);
    static Scalar from_mpz(const FieldSpec& f, const mpz_class& v);
    /// Rational a/b reduced into the field (for F_p, b must be invertible).
    static Scalar from_mpq(const FieldSpec& f, const mpq_class& v);
    /// Parses "a" or "a/b" with optional sign.
    static Scalar parse(const FieldSpec& f, const std::string& text);

    const FieldSpec& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    Scalar operator-() const;
    Scalar inverse() const;  // throws Error on zero

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    /// this += a * b, avoiding intermediate Scalar copies in hot loops.
    void add_mul(const Scalar& a, const Scalar& b);

    friend Scalar operator+(Scalar a, const Scalar& b) { a += b; return a; }
    friend Scalar operator-(Scalar a, const Scalar& b) { a -= b; return a; }
    friend Scalar operator*(Scalar a, const Scalar& b) { a *= b; return a; }
    friend Scalar operator/(Scalar a, const Scalar& b) { a /= b; return a; }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Canonical decimal string: "n" or "p/q".
    std::string to_string() const;

    const mpq_class& rational() const { return std::get<mpq_class>(v_); }
    std::uint64_t residue() const { return std::get<std::uint64_t>(v_); }

private:
    Scalar(FieldSpec f, mpq_class q) : field_(f), v_(std::move(q)) {}
    Scalar(FieldSpec f, std::uint64_t r) : field_(f), v_(r) {}

    FieldSpec field_;
    std::variant<mpq_class, std::uint64_t> v_;
};

}  // namespace rankstab
