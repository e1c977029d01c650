#pragma once

// Seeded random generators for the property tests. Every law runs at least
// kCases cases; a failing case reports its index so it can be replayed.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "crossratio/field.hpp"
#include "crossratio/perm.hpp"
#include "crossratio/poly.hpp"
#include "crossratio/ratfunc.hpp"

namespace gen {

inline constexpr int kCases = 1000;

using crossratio::Field;
using crossratio::FieldElement;
using crossratio::MultiPoly;
using crossratio::RatFunc;
using crossratio::Ring;

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
    }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

    mpq_class small_rational() {
        mpq_class r(range(-9, 9), range(1, 6));
        r.canonicalize();
        return r;
    }

    FieldElement element(const Field& f) {
        if (f.is_finite()) {
            const auto p = static_cast<long>(f.modulus());
            const long im = f.has_adjoined_i() ? range(0, p - 1) : 0;
            return FieldElement(f, mpq_class(range(0, p - 1)), mpq_class(im));
        }
        const mpq_class im = f.has_adjoined_i() && coin() ? small_rational() : mpq_class(0);
        return FieldElement(f, small_rational(), im);
    }

    FieldElement nonzero(const Field& f) {
        for (;;) {
            auto e = element(f);
            if (!e.is_zero()) return e;
        }
    }

    /// Up to `max_terms` terms, exponents at most `max_exp` per variable.
    MultiPoly poly(const Ring& r, int max_terms = 4, int max_exp = 2) {
        MultiPoly p(r);
        const auto terms = range(0, max_terms);
        for (std::int64_t k = 0; k < terms; ++k) {
            crossratio::Monomial m(r.num_variables());
            for (auto& e : m) e = static_cast<std::uint32_t>(range(0, max_exp));
            p += MultiPoly::monomial(r, m, element(r.field()));
        }
        return p;
    }

    MultiPoly nonzero_poly(const Ring& r, int max_terms = 3, int max_exp = 2) {
        for (;;) {
            auto p = poly(r, max_terms, max_exp);
            if (!p.is_zero()) return p;
        }
    }

    RatFunc ratfunc(const Ring& r, int max_terms = 3, int max_exp = 2) {
        return RatFunc(poly(r, max_terms, max_exp), nonzero_poly(r, 2, 1));
    }

    RatFunc nonzero_ratfunc(const Ring& r, int max_terms = 3, int max_exp = 2) {
        return RatFunc(nonzero_poly(r, max_terms, max_exp), nonzero_poly(r, 2, 1));
    }

    crossratio::Perm perm4() {
        const auto& s4 = crossratio::symmetric_group_4();
        return s4[static_cast<std::size_t>(range(0, 23))];
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// Fields exercised by the algebraic laws.
inline std::vector<Field> law_fields() {
    return {Field::parse("Q"),  Field::parse("Q(i)"), Field::parse("F2"),    Field::parse("F3"),
            Field::parse("F5"), Field::parse("F101"), Field::parse("F3(i)"), Field::parse("F7(i)")};
}

}  // namespace gen
