#pragma once

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "crossratio/poly.hpp"

namespace crossratio {

/// Element of k(x1..xn) as an unreduced fraction num/den.
///
/// Equality is semantic (cross-multiplication); no multivariate GCD is ever
/// taken. Construction strips the common monomial content of numerator and
/// denominator and makes the denominator's leading coefficient 1, which keeps
/// sizes down without affecting correctness.
class RatFunc {
public:
    explicit RatFunc(const Ring& ring);  // zero
    RatFunc(const Ring& ring, long constant);
    RatFunc(const Ring& ring, const FieldElement& constant);
    RatFunc(MultiPoly num);  // NOLINT(google-explicit-constructor): polynomials are rational functions
    RatFunc(MultiPoly num, MultiPoly den);

    static RatFunc variable(const Ring& ring, std::string_view name) {
        return RatFunc(MultiPoly::variable(ring, name));
    }

    const Ring& ring() const noexcept { return num_.ring(); }
    const Field& field() const noexcept { return num_.field(); }
    const MultiPoly& num() const noexcept { return num_; }
    const MultiPoly& den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    RatFunc operator-() const;
    RatFunc inverse() const;
    RatFunc pow(long e) const;

    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc& operator*=(const RatFunc& o);
    RatFunc& operator/=(const RatFunc& o);
    friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
    friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
    friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
    friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }

    /// num(f) * den(g) == num(g) * den(f).
    friend bool operator==(const RatFunc& f, const RatFunc& g);

    /// Field homomorphism: variables in `assignment` are replaced by their
    /// images (which live in `target`); the others map to same-named target
    /// variables. Throws DivisionByZero if the image denominator vanishes.
    RatFunc substitute(const std::unordered_map<std::string, RatFunc>& assignment,
                       const Ring& target) const;
    RatFunc substitute(const std::unordered_map<std::string, RatFunc>& assignment) const {
        return substitute(assignment, ring());
    }

    /// Throws DomainError at a pole.
    FieldElement evaluate(const std::unordered_map<std::string, FieldElement>& point) const;
    FieldElement evaluate(std::span<const FieldElement> values) const;

    RatFunc derivative(std::size_t var) const;
    RatFunc derivative(std::string_view var) const { return derivative(ring().require_index(var)); }

    RatFunc embed(const Ring& target) const;

    /// `num` or `(num)/(den)`, in parser syntax.
    std::string to_string() const;

private:
    void normalize();

    MultiPoly num_;
    MultiPoly den_;
};

std::ostream& operator<<(std::ostream& os, const RatFunc& f);

/// Rank of the Jacobian matrix d f_i / d vars_j over the fraction field,
/// by fraction-free elimination. Refuses positive characteristic, where
/// full rank is not the criterion this is used for.
std::size_t jacobian_rank(std::span<const RatFunc> fs, std::span<const std::string> vars);

}  // namespace crossratio
