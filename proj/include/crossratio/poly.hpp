#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "crossratio/field.hpp"

namespace crossratio {

/// Base field plus an ordered list of variable names. Cheap to copy.
class Ring {
public:
    Ring(const Field& field, std::vector<std::string> variables);

    const Field& field() const noexcept { return data_->field; }
    const std::vector<std::string>& variables() const noexcept { return data_->variables; }
    std::size_t num_variables() const noexcept { return data_->variables.size(); }

    std::optional<std::size_t> index_of(std::string_view name) const;
    std::size_t require_index(std::string_view name) const;
    bool has_variable(std::string_view name) const { return index_of(name).has_value(); }

    /// Same variable list over another field.
    Ring with_field(const Field& f) const { return Ring(f, data_->variables); }

    friend bool operator==(const Ring& a, const Ring& b) {
        return a.data_ == b.data_ ||
               (a.data_->field == b.data_->field && a.data_->variables == b.data_->variables);
    }

private:
    struct Data {
        Field field;
        std::vector<std::string> variables;
    };
    std::shared_ptr<const Data> data_;
};

/// Exponent vector; length equals the ring's variable count.
using Monomial = std::vector<std::uint32_t>;

/// Graded lexicographic order: total degree first, then lexicographic.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial. Terms are stored in grlex order and
/// no stored coefficient is zero, so structural equality is equality.
class MultiPoly {
public:
    using TermMap = std::map<Monomial, FieldElement, GrlexLess>;

    explicit MultiPoly(const Ring& ring);
    MultiPoly(const Ring& ring, const FieldElement& constant);
    MultiPoly(const Ring& ring, long constant);

    static MultiPoly variable(const Ring& ring, std::string_view name);
    static MultiPoly variable(const Ring& ring, std::size_t index);
    static MultiPoly monomial(const Ring& ring, Monomial m, const FieldElement& c);

    const Ring& ring() const noexcept { return ring_; }
    const Field& field() const noexcept { return ring_.field(); }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t num_terms() const noexcept { return terms_.size(); }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const;
    /// Constant coefficient (zero if absent).
    FieldElement constant_term() const;
    /// Greatest term in grlex order. Requires a nonzero polynomial.
    const std::pair<const Monomial, FieldElement>& leading_term() const;

    int total_degree() const;
    /// Largest exponent of variable `v` over all terms (0 for the zero polynomial).
    std::uint32_t degree_in(std::size_t v) const;

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const FieldElement& c);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const FieldElement& c) { return a *= c; }
    MultiPoly pow(unsigned e) const;

    friend bool operator==(const MultiPoly& a, const MultiPoly& b);

    /// Ring homomorphism into `target`: each assigned variable is replaced by
    /// its image, each unassigned variable by the same-named target variable.
    MultiPoly substitute(const std::unordered_map<std::string, MultiPoly>& assignment,
                         const Ring& target) const;
    MultiPoly substitute(const std::unordered_map<std::string, MultiPoly>& assignment) const {
        return substitute(assignment, ring_);
    }

    /// Point must assign every variable that occurs in the polynomial.
    FieldElement evaluate(const std::unordered_map<std::string, FieldElement>& point) const;
    /// Values listed in ring variable order.
    FieldElement evaluate(std::span<const FieldElement> values) const;

    MultiPoly derivative(std::string_view var) const;
    MultiPoly derivative(std::size_t var) const;

    /// Coefficients of powers of `var`: result[k] is the coefficient of var^k,
    /// still living in this ring (with var absent).
    std::vector<MultiPoly> coefficients_in(std::size_t var) const;

    /// Re-express in a ring with a superset of this ring's variables.
    MultiPoly embed(const Ring& target) const;

    /// Exponent-wise minimum over all terms (the monomial content).
    Monomial monomial_content() const;
    /// Divide every term by monomial m, which must divide each term.
    MultiPoly divide_monomial(const Monomial& m) const;

    /// Canonical text: descending grlex, explicit `*`, `^` powers.
    std::string to_string() const;

private:
    void check_ring(const MultiPoly& o) const;
    void add_term(const Monomial& m, const FieldElement& c);

    Ring ring_;
    TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

}  // namespace crossratio
