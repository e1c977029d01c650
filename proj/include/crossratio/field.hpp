#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "crossratio/errors.hpp"

namespace crossratio {

enum class FieldKind {
    Rationals,         // Q
    GaussianRationals, // Q(i)
    PrimeField,        // F_p
    PrimeFieldQuadratic // F_p(i), p = 3 mod 4
};

/// Describes one of the supported base fields. Construct through `make()`
/// or `parse()`, which validate the modulus.
class Field {
public:
    static Field rationals() { return Field(FieldKind::Rationals, 0); }
    static Field gaussian_rationals() { return Field(FieldKind::GaussianRationals, 0); }
    static Field make(FieldKind kind, std::uint64_t p = 0);

    /// Accepts the CLI names `Q`, `Q(i)`, `Fp`, `Fp(i)`.
    static Field parse(std::string_view name);

    FieldKind kind() const noexcept { return kind_; }
    std::uint64_t modulus() const noexcept { return p_; }
    std::uint64_t characteristic() const noexcept { return p_; }
    bool is_finite() const noexcept {
        return kind_ == FieldKind::PrimeField || kind_ == FieldKind::PrimeFieldQuadratic;
    }
    /// True when elements carry an `i` coordinate (i^2 = -1 adjoined).
    bool has_adjoined_i() const noexcept {
        return kind_ == FieldKind::GaussianRationals || kind_ == FieldKind::PrimeFieldQuadratic;
    }
    /// Number of elements; 0 for infinite fields.
    std::uint64_t size() const noexcept;

    std::string name() const;

    friend bool operator==(const Field&, const Field&) = default;

private:
    Field(FieldKind kind, std::uint64_t p) : kind_(kind), p_(p) {}

    FieldKind kind_;
    std::uint64_t p_;
};

std::ostream& operator<<(std::ostream& os, const Field& f);

bool is_prime(std::uint64_t n);

/// Exact element of a supported base field, stored as re + im * i with
/// rational (or residue) coordinates, always canonical.
class FieldElement {
public:
    FieldElement(const Field& field, long value);
    FieldElement(const Field& field, const mpq_class& re, const mpq_class& im = 0);

    static FieldElement zero(const Field& f) { return FieldElement(f, 0); }
    static FieldElement one(const Field& f) { return FieldElement(f, 1); }

    /// The adjoined square root of -1. Only valid when `has_adjoined_i()`.
    static FieldElement adjoined_i(const Field& f);

    /// Enumeration of a finite field: index = re + p * im.
    static FieldElement from_index(const Field& f, std::uint64_t index);
    std::uint64_t index() const;

    const Field& field() const noexcept { return field_; }
    const mpq_class& re() const noexcept { return re_; }
    const mpq_class& im() const noexcept { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

    FieldElement operator-() const;
    FieldElement inverse() const;
    FieldElement pow(unsigned long e) const;

    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    FieldElement& operator/=(const FieldElement& o);

    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
    friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }

    friend bool operator==(const FieldElement& a, const FieldElement& b);

    /// Rendering accepted by the expression parser: `5/6`, `-3`, `(1/2+2*i)`.
    std::string to_string() const;
    /// True when `to_string()` needs parentheses as a product factor.
    bool is_compound() const;
    /// Sign of the leading coordinate (+1 for every nonzero finite-field element).
    int sign() const;

    std::size_t hash() const;

private:
    void check_same(const FieldElement& o) const;
    void canonicalize();

    Field field_;
    mpq_class re_;
    mpq_class im_;
};

std::ostream& operator<<(std::ostream& os, const FieldElement& e);

/// Some s with s^2 = -1, if the field has one. In characteristic 2 this
/// is 1; callers deciding rationality must branch on the characteristic first.
std::optional<FieldElement> sqrt_minus_one(const Field& f);

/// All elements of a finite field in index order.
std::vector<FieldElement> field_elements(const Field& f);

}  // namespace crossratio

template <>
struct std::hash<crossratio::FieldElement> {
    std::size_t operator()(const crossratio::FieldElement& e) const { return e.hash(); }
};
