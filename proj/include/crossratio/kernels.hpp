#pragma once

// Brute-force kernels over small finite fields. Each kernel exists twice: a
// plain serial loop kept as the reference, and an OpenMP version used by the
// library. Both return identical results (outputs are sorted or reduced with
// a deterministic tie-break), which the unit tests assert.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "crossratio/field.hpp"

namespace crossratio::kernels {

/// Arithmetic on a finite field with elements encoded as re + p * im.
class FqArith {
public:
    explicit FqArith(const Field& f);

    std::uint32_t q() const noexcept { return q_; }
    std::uint32_t p() const noexcept { return p_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
        return enc((re(a) + re(b)) % p_, (im(a) + im(b)) % p_);
    }
    std::uint32_t neg(std::uint32_t a) const noexcept {
        return enc((p_ - re(a)) % p_, (p_ - im(a)) % p_);
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept { return add(a, neg(b)); }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
        const std::uint64_t ar = re(a), ai = im(a), br = re(b), bi = im(b);
        const std::uint64_t r = (ar * br + (p_ - ai) * bi) % p_;
        const std::uint64_t i = (ar * bi + ai * br) % p_;
        return enc(static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(i));
    }
    /// Requires a != 0.
    std::uint32_t inv(std::uint32_t a) const noexcept { return inverse_[a]; }

private:
    std::uint32_t re(std::uint32_t a) const noexcept { return a % p_; }
    std::uint32_t im(std::uint32_t a) const noexcept { return a / p_; }
    std::uint32_t enc(std::uint32_t r, std::uint32_t i) const noexcept { return r + p_ * i; }

    std::uint32_t p_;
    std::uint32_t q_;
    std::vector<std::uint32_t> inverse_;
};

// ---------------------------------------------------------------- P^1

/// Points of P^1(F_q): 0..q-1 are affine values, q is infinity.
using P1Code = std::uint32_t;

/// Matrix [[a, b], [c, d]] with encoded entries.
struct MoebiusCode {
    std::uint32_t a, b, c, d;
    friend auto operator<=>(const MoebiusCode&, const MoebiusCode&) = default;
};

P1Code apply(const FqArith& f, const MoebiusCode& m, P1Code x);

/// Elements [[1, b], [0, d]] of the Borel subgroup that permute `points`.
std::vector<MoebiusCode> borel_stabilizer_serial(const FqArith& f, const std::vector<P1Code>& points);
std::vector<MoebiusCode> borel_stabilizer_parallel(const FqArith& f, const std::vector<P1Code>& points);

/// Elements of PGL2(F_q) (canonical: first nonzero entry 1) that permute `points`.
std::vector<MoebiusCode> pgl2_stabilizer_serial(const FqArith& f, const std::vector<P1Code>& points);
std::vector<MoebiusCode> pgl2_stabilizer_parallel(const FqArith& f, const std::vector<P1Code>& points);

// ---------------------------------------------------------------- conics

/// Dense univariate polynomial over F_q in x, constant term first, no trailing zeros.
using FqPoly = std::vector<std::uint32_t>;

/// Coefficients of Y^2, Z^2, W^2, YZ, YW, ZW.
using FormCoeffs = std::array<FqPoly, 6>;

/// Coordinates (Y, Z, W), each padded to degree_bound + 1 coefficients.
using Triple = std::array<FqPoly, 3>;

struct SearchOutcome {
    std::uint64_t enumerated = 0;  // nonzero triples examined
    std::uint64_t solutions = 0;   // triples (not classes) on the conic
    std::optional<Triple> best;    // least canonical solution
};

/// Number of nonzero triples with coordinates of degree <= d: q^(3(d+1)) - 1.
std::uint64_t triple_count(std::uint32_t q, unsigned degree_bound);

/// Exhaustive search for zeros of the form with polynomial coordinates of
/// degree <= degree_bound. Solutions are scaled so that the first nonzero of
/// W, Z, Y is monic; the reported one is least when comparing W, then Z, then
/// Y coefficient lists (constant term first) with 1 < 2 < ... < q-1 < 0.
SearchOutcome point_search_serial(const FqArith& f, const FormCoeffs& form, unsigned degree_bound);
SearchOutcome point_search_parallel(const FqArith& f, const FormCoeffs& form, unsigned degree_bound);

/// Value of the form at a triple, as a polynomial in x.
FqPoly eval_form(const FqArith& f, const FormCoeffs& form, const Triple& t);

}  // namespace crossratio::kernels
