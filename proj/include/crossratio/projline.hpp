#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crossratio/field.hpp"

namespace crossratio {

/// Point of P^1 as (s : 1), or infinity (1 : 0).
class ProjPoint1 {
public:
    static ProjPoint1 affine(const FieldElement& s) { return ProjPoint1(s, false); }
    static ProjPoint1 infinity(const Field& f) { return ProjPoint1(FieldElement::zero(f), true); }
    /// Homogeneous (s : t), not both zero.
    static ProjPoint1 homogeneous(const FieldElement& s, const FieldElement& t);
    /// A field element in parser syntax, or `inf`.
    static ProjPoint1 parse(std::string_view text, const Field& f);

    bool is_infinity() const noexcept { return infinite_; }
    /// Affine value; meaningless at infinity.
    const FieldElement& value() const noexcept { return value_; }
    const Field& field() const noexcept { return value_.field(); }

    friend bool operator==(const ProjPoint1& a, const ProjPoint1& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }

    std::string to_string() const { return infinite_ ? "inf" : value_.to_string(); }

private:
    ProjPoint1(FieldElement v, bool inf) : value_(std::move(v)), infinite_(inf) {}
    FieldElement value_;
    bool infinite_;
};

/// Element of PGL2, scaled so the first nonzero entry (a, b, c, d order) is 1.
class Moebius {
public:
    Moebius(const FieldElement& a, const FieldElement& b, const FieldElement& c, const FieldElement& d);
    static Moebius identity(const Field& f);

    const FieldElement& a() const noexcept { return a_; }
    const FieldElement& b() const noexcept { return b_; }
    const FieldElement& c() const noexcept { return c_; }
    const FieldElement& d() const noexcept { return d_; }

    bool is_identity() const;
    bool is_upper_triangular() const { return c_.is_zero(); }

    /// Matrix product (this * o): apply o first.
    Moebius operator*(const Moebius& o) const;
    Moebius inverse() const;

    friend bool operator==(const Moebius& x, const Moebius& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
    }

    std::string to_string() const;

private:
    FieldElement a_, b_, c_, d_;
};

std::vector<ProjPoint1> p1_points(const Field& f);

ProjPoint1 moebius_apply(const Moebius& m, const ProjPoint1& p);

/// Elements of the Borel subgroup B(F) fixing the 4-set `points`. Brute force
/// over all q(q-1) elements; requires a finite field with q <= 257.
std::vector<Moebius> borel_stabilizer(std::span<const ProjPoint1> points, const Field& f);

/// Elements of PGL2(F) fixing the 5-set `points`; q <= 257.
std::vector<Moebius> pgl2_stabilizer(std::span<const ProjPoint1> points, const Field& f);

struct GenericFreenessStats {
    std::size_t samples = 0;
    std::size_t trivial = 0;
    /// Sample indices with a nontrivial stabilizer, with their points.
    std::vector<std::pair<std::size_t, std::vector<ProjPoint1>>> special;
};

/// Draw `samples` uniformly random 4-sets of distinct affine points (never
/// infinity, which B fixes) and count those with trivial Borel stabilizer.
/// Sample k depends only on (seed, k), so results do not depend on threads.
GenericFreenessStats sample_borel_freeness(const Field& f, std::size_t samples, std::uint64_t seed);

/// Same for 5-sets of distinct points of P^1 under PGL2.
GenericFreenessStats sample_pgl2_freeness(const Field& f, std::size_t samples, std::uint64_t seed);

}  // namespace crossratio
