#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crossratio/ratfunc.hpp"

namespace crossratio {

/// Ring k(x) in the single variable `x` that hosts form coefficients.
Ring coefficient_ring(const Field& f);
/// Ring k(x)[Y, Z, W] used to print and parse forms.
Ring form_ring(const Field& f);

enum class FormSlot { YY, ZZ, WW, YZ, YW, ZW };

/// Quadratic form in Y, Z, W with coefficients in k(x). Supports every
/// characteristic (no symmetric matrix is involved).
class TernaryForm {
public:
    TernaryForm(const Ring& base, std::array<RatFunc, 6> coeffs);
    /// Parse `Y^2 - x*Z^2 - x*W^2` style text; variables Y, Z, W, x are reserved.
    static TernaryForm parse(std::string_view text, const Field& f);

    const Ring& base() const noexcept { return base_; }
    const Field& field() const noexcept { return base_.field(); }
    const RatFunc& coeff(FormSlot s) const { return coeffs_[static_cast<std::size_t>(s)]; }
    const std::array<RatFunc, 6>& coeffs() const noexcept { return coeffs_; }

    /// q(P) for coordinates in the coefficient ring.
    RatFunc evaluate(const std::array<RatFunc, 3>& yzw) const;
    /// Polar form q(P + R) - q(P) - q(R).
    RatFunc polar(const std::array<RatFunc, 3>& p, const std::array<RatFunc, 3>& r) const;
    /// 4abc - af^2 - be^2 - cd^2 + def; the conic is smooth iff this is nonzero.
    RatFunc half_discriminant() const;

    /// The form as an element of k(x)[Y,Z,W], in `form_ring`.
    RatFunc as_polynomial() const;
    std::string to_string() const { return as_polynomial().to_string(); }

private:
    Ring base_;
    std::array<RatFunc, 6> coeffs_;
};

/// q = Y^2 - x Z^2 - x W^2 (characteristic not 2).
TernaryForm isotropy_form(const Field& f);
/// Z^2 + Z W + Y W + x W^2 (characteristic 2).
TernaryForm char2_conic(const Field& f);

/// Point (Y : Z : W) of P^2 over k(x), kept with polynomial coordinates
/// without common factor, scaled so the first nonzero of W, Z, Y is monic.
class ProjPoint2 {
public:
    ProjPoint2(const Ring& base, std::array<RatFunc, 3> yzw);
    /// "Y,Z,W" with each coordinate an expression in x.
    static ProjPoint2 parse(std::string_view text, const Field& f);

    const std::array<RatFunc, 3>& coords() const noexcept { return coords_; }
    const Ring& base() const noexcept { return coords_[0].ring(); }

    friend bool operator==(const ProjPoint2& a, const ProjPoint2& b);
    std::string to_string() const;

private:
    std::array<RatFunc, 3> coords_;
};

struct FormValue {
    RatFunc value;
    bool is_point;
};

FormValue form_eval(const TernaryForm& q, const ProjPoint2& p);

struct ObstructionStep {
    std::string claim;
    bool holds;
};

/// Bounded-degree replay of the valuation argument at x = 0 showing that
/// Y^2 - x Z^2 - x W^2 has no k(x)-point when -1 is not a square in k.
struct ObstructionRecord {
    Field field;
    unsigned degree_bound;
    std::vector<ObstructionStep> steps;
    /// Enumerated triple count of the independent exhaustive search (finite fields).
    std::optional<std::uint64_t> search_enumerated;
    bool verified;
};

struct IsotropyDecision {
    bool isotropic;
    std::optional<ProjPoint2> witness;        // set when isotropic
    std::optional<ObstructionRecord> obstruction;  // set when anisotropic
};

/// Decide isotropy of Y^2 - x Z^2 - x W^2 over k(x) by the square-root-of-(-1)
/// criterion, with a verified witness (0, s, 1) or an obstruction record.
/// Refuses characteristic 2.
IsotropyDecision paper_isotropy_decision(const Field& f, unsigned degree_bound = 2);

/// Requires char != 2 and -1 not a square. Symbolic steps are checked for every
/// degree up to `degree_bound`; finite fields also get the exhaustive search.
ObstructionRecord specialization_obstruction(const Field& f, unsigned degree_bound = 2);

struct PointSearchResult {
    std::uint64_t enumerated;
    std::uint64_t solutions;
    std::optional<ProjPoint2> point;
};

/// Exhaustive search for a point with polynomial coordinates of degree <= d
/// over a finite field; at most 1e7 triples.
PointSearchResult bounded_point_search(const TernaryForm& q, unsigned degree_bound);

/// Line-pencil parametrization of a smooth conic through a base point.
struct ParametrizationMap {
    Ring param_ring;                  // k(x, s)
    std::array<RatFunc, 3> forward;   // s -> (Y : Z : W), polynomial in x, s
    Ring chart_ring;                  // k(x, Y, Z, W)
    RatFunc inverse;                  // degree-0 expression in Y, Z, W giving s
    ProjPoint2 base_point;
    char chart;                       // coordinate that is nonzero at the base point
};

/// Builds the map and verifies q(forward(s)) = 0 and inverse(forward(s)) = s
/// before returning.
ParametrizationMap parametrize(const TernaryForm& q, const ProjPoint2& base_point);

}  // namespace crossratio
