#include "crossratio/field.hpp"

#include <charconv>
#include <sstream>

namespace crossratio {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

Field Field::make(FieldKind kind, std::uint64_t p) {
    switch (kind) {
    case FieldKind::Rationals:
    case FieldKind::GaussianRationals:
        return Field(kind, 0);
    case FieldKind::PrimeField:
    case FieldKind::PrimeFieldQuadratic:
        break;
    }
    if (p >= (1ULL << 31)) throw DomainError("modulus " + std::to_string(p) + " is too large");
    if (!is_prime(p)) throw DomainError("modulus " + std::to_string(p) + " is not prime");
    if (kind == FieldKind::PrimeFieldQuadratic && p % 4 != 3) {
        throw DomainError("X^2+1 is reducible over F" + std::to_string(p) +
                          "; F_p(i) requires p = 3 mod 4");
    }
    return Field(kind, p);
}

Field Field::parse(std::string_view name) {
    auto bad = [&] { return DomainError("unknown field name '" + std::string(name) + "'"); };
    if (name == "Q") return rationals();
    if (name == "Q(i)") return gaussian_rationals();
    if (name.size() < 2 || name[0] != 'F') throw bad();
    bool quadratic = false;
    std::string_view digits = name.substr(1);
    if (digits.size() > 3 && digits.substr(digits.size() - 3) == "(i)") {
        quadratic = true;
        digits.remove_suffix(3);
    }
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) throw bad();
    return make(quadratic ? FieldKind::PrimeFieldQuadratic : FieldKind::PrimeField, p);
}

std::uint64_t Field::size() const noexcept {
    switch (kind_) {
    case FieldKind::PrimeField: return p_;
    case FieldKind::PrimeFieldQuadratic: return p_ * p_;
    default: return 0;
    }
}

std::string Field::name() const {
    switch (kind_) {
    case FieldKind::Rationals: return "Q";
    case FieldKind::GaussianRationals: return "Q(i)";
    case FieldKind::PrimeField: return "F" + std::to_string(p_);
    case FieldKind::PrimeFieldQuadratic: return "F" + std::to_string(p_) + "(i)";
    }
    return "?";
}

std::ostream& operator<<(std::ostream& os, const Field& f) { return os << f.name(); }

namespace {

mpz_class reduce_mod(const mpq_class& q, std::uint64_t p) {
    mpz_class m(static_cast<unsigned long>(p));
    mpz_class num = q.get_num() % m;
    if (num < 0) num += m;
    mpz_class den = q.get_den() % m;
    if (den == 0) throw DivisionByZero("denominator vanishes modulo " + std::to_string(p));
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
    return (num * inv) % m;
}

}  // namespace

FieldElement::FieldElement(const Field& field, long value) : field_(field), re_(value), im_(0) {
    canonicalize();
}

FieldElement::FieldElement(const Field& field, const mpq_class& re, const mpq_class& im)
    : field_(field), re_(re), im_(im) {
    if (!field_.has_adjoined_i() && sgn(im_) != 0) {
        throw DomainError("field " + field_.name() + " has no adjoined i");
    }
    canonicalize();
}

FieldElement FieldElement::adjoined_i(const Field& f) {
    if (!f.has_adjoined_i()) throw DomainError("field " + f.name() + " has no adjoined i");
    return FieldElement(f, 0, 1);
}

FieldElement FieldElement::from_index(const Field& f, std::uint64_t index) {
    if (!f.is_finite() || index >= f.size()) throw DomainError("element index out of range");
    const std::uint64_t p = f.modulus();
    return FieldElement(f, mpq_class(static_cast<unsigned long>(index % p)),
                        mpq_class(static_cast<unsigned long>(index / p)));
}

std::uint64_t FieldElement::index() const {
    if (!field_.is_finite()) throw DomainError("index() requires a finite field");
    return re_.get_num().get_ui() + field_.modulus() * im_.get_num().get_ui();
}

void FieldElement::canonicalize() {
    re_.canonicalize();
    im_.canonicalize();
    if (field_.is_finite()) {
        re_ = reduce_mod(re_, field_.modulus());
        im_ = reduce_mod(im_, field_.modulus());
    }
}

void FieldElement::check_same(const FieldElement& o) const {
    if (!(field_ == o.field_)) {
        throw MismatchError("mixed-field operands: " + field_.name() + " and " + o.field_.name());
    }
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    r.re_ = -r.re_;
    r.im_ = -r.im_;
    r.canonicalize();
    return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
    check_same(o);
    re_ += o.re_;
    im_ += o.im_;
    canonicalize();
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
    check_same(o);
    re_ -= o.re_;
    im_ -= o.im_;
    canonicalize();
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
    check_same(o);
    // (a + b i)(c + d i) with i^2 = -1
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    canonicalize();
    return *this;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero in " + field_.name());
    if (field_.is_finite()) {
        const mpz_class m(static_cast<unsigned long>(field_.modulus()));
        mpz_class norm = (re_.get_num() * re_.get_num() + im_.get_num() * im_.get_num()) % m;
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), norm.get_mpz_t(), m.get_mpz_t()) == 0) {
            throw DivisionByZero("norm not invertible in " + field_.name());
        }
        return FieldElement(field_, mpq_class(re_.get_num() * inv), mpq_class(-im_.get_num() * inv));
    }
    mpq_class norm = re_ * re_ + im_ * im_;
    return FieldElement(field_, re_ / norm, -im_ / norm);
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
    check_same(o);
    return *this *= o.inverse();
}

FieldElement FieldElement::pow(unsigned long e) const {
    FieldElement result = one(field_);
    FieldElement base = *this;
    while (e > 0) {
        if (e & 1UL) result *= base;
        e >>= 1;
        if (e > 0) base *= base;
    }
    return result;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field_ == b.field_ && a.re_ == b.re_ && a.im_ == b.im_;
}

bool FieldElement::is_compound() const { return sgn(re_) != 0 && sgn(im_) != 0; }

int FieldElement::sign() const {
    if (field_.is_finite()) return is_zero() ? 0 : 1;
    if (sgn(re_) != 0) return sgn(re_);
    return sgn(im_);
}

std::string FieldElement::to_string() const {
    auto imag_part = [](const mpq_class& v) -> std::string {
        if (v == 1) return "i";
        if (v == -1) return "-i";
        return v.get_str() + "*i";
    };
    if (sgn(im_) == 0) return re_.get_str();
    if (sgn(re_) == 0) return imag_part(im_);
    std::string im = imag_part(im_);
    if (im[0] != '-') im = "+" + im;
    return "(" + re_.get_str() + im + ")";
}

std::size_t FieldElement::hash() const {
    std::size_t h = std::hash<int>()(static_cast<int>(field_.kind())) ^ (field_.modulus() << 4);
    auto mix = [&h](const mpz_class& z) {
        h ^= std::hash<std::string>()(z.get_str(16)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    mix(re_.get_num());
    mix(re_.get_den());
    mix(im_.get_num());
    mix(im_.get_den());
    return h;
}

std::ostream& operator<<(std::ostream& os, const FieldElement& e) { return os << e.to_string(); }

std::optional<FieldElement> sqrt_minus_one(const Field& f) {
    switch (f.kind()) {
    case FieldKind::Rationals:
        return std::nullopt;
    case FieldKind::GaussianRationals:
    case FieldKind::PrimeFieldQuadratic:
        return FieldElement::adjoined_i(f);
    case FieldKind::PrimeField:
        break;
    }
    const std::uint64_t p = f.modulus();
    if (p == 2) return FieldElement::one(f);
    if (p % 4 != 1) return std::nullopt;
    for (std::uint64_t s = 2; s < p; ++s) {
        if ((s * s) % p == p - 1) return FieldElement(f, static_cast<long>(s));
    }
    return std::nullopt;
}

std::vector<FieldElement> field_elements(const Field& f) {
    if (!f.is_finite()) throw DomainError("cannot enumerate infinite field " + f.name());
    std::vector<FieldElement> out;
    out.reserve(f.size());
    for (std::uint64_t k = 0; k < f.size(); ++k) out.push_back(FieldElement::from_index(f, k));
    return out;
}

}  // namespace crossratio
