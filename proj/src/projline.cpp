#include "crossratio/projline.hpp"

#include <algorithm>
#include <random>

#include "crossratio/kernels.hpp"
#include "crossratio/parser.hpp"

namespace crossratio {

ProjPoint1 ProjPoint1::homogeneous(const FieldElement& s, const FieldElement& t) {
    if (s.is_zero() && t.is_zero()) throw DomainError("(0:0) is not a point of P^1");
    if (t.is_zero()) return infinity(s.field());
    return affine(s / t);
}

ProjPoint1 ProjPoint1::parse(std::string_view text, const Field& f) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text == "inf") return infinity(f);
    const RatFunc v = parse_expr(text, Ring(f, {}));
    return affine(v.num().constant_term() / v.den().constant_term());
}

Moebius::Moebius(const FieldElement& a, const FieldElement& b, const FieldElement& c, const FieldElement& d)
    : a_(a), b_(b), c_(c), d_(d) {
    if ((a_ * d_ - b_ * c_).is_zero()) throw DomainError("Moebius matrix is singular");
    const FieldElement& lead = !a_.is_zero() ? a_ : b_;
    if (!lead.is_one()) {
        const FieldElement s = lead.inverse();
        a_ *= s;
        b_ *= s;
        c_ *= s;
        d_ *= s;
    }
}

Moebius Moebius::identity(const Field& f) {
    return Moebius(FieldElement::one(f), FieldElement::zero(f), FieldElement::zero(f), FieldElement::one(f));
}

bool Moebius::is_identity() const { return a_.is_one() && b_.is_zero() && c_.is_zero() && d_.is_one(); }

Moebius Moebius::operator*(const Moebius& o) const {
    return Moebius(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_);
}

Moebius Moebius::inverse() const { return Moebius(d_, -b_, -c_, a_); }

std::string Moebius::to_string() const {
    return "[[" + a_.to_string() + ", " + b_.to_string() + "], [" + c_.to_string() + ", " + d_.to_string() + "]]";
}

std::vector<ProjPoint1> p1_points(const Field& f) {
    std::vector<ProjPoint1> out;
    for (const auto& e : field_elements(f)) out.push_back(ProjPoint1::affine(e));
    out.push_back(ProjPoint1::infinity(f));
    return out;
}

ProjPoint1 moebius_apply(const Moebius& m, const ProjPoint1& p) {
    if (p.is_infinity()) return ProjPoint1::homogeneous(m.a(), m.c());
    return ProjPoint1::homogeneous(m.a() * p.value() + m.b(), m.c() * p.value() + m.d());
}

namespace {

constexpr std::uint64_t kMaxStabilizerField = 257;

kernels::P1Code encode(const ProjPoint1& p, const kernels::FqArith& fq) {
    return p.is_infinity() ? fq.q() : static_cast<kernels::P1Code>(p.value().index());
}

ProjPoint1 decode(kernels::P1Code c, const Field& f, const kernels::FqArith& fq) {
    return c == fq.q() ? ProjPoint1::infinity(f) : ProjPoint1::affine(FieldElement::from_index(f, c));
}

Moebius decode(const kernels::MoebiusCode& m, const Field& f) {
    return Moebius(FieldElement::from_index(f, m.a), FieldElement::from_index(f, m.b),
                   FieldElement::from_index(f, m.c), FieldElement::from_index(f, m.d));
}

std::vector<kernels::P1Code> encode_distinct(std::span<const ProjPoint1> points, const Field& f,
                                             const kernels::FqArith& fq, std::size_t expected) {
    if (points.size() != expected) {
        throw DomainError("expected " + std::to_string(expected) + " points, got " + std::to_string(points.size()));
    }
    std::vector<kernels::P1Code> codes;
    for (const auto& p : points) {
        if (!(p.field() == f)) throw MismatchError("point from another field");
        codes.push_back(encode(p, fq));
    }
    std::vector<kernels::P1Code> sorted = codes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw DomainError("points are not distinct in " + f.name());
    }
    return codes;
}

void check_field(const Field& f) {
    if (!f.is_finite()) throw DomainError("stabilizer brute force needs a finite field, got " + f.name());
    if (f.size() > kMaxStabilizerField) throw DomainError("field " + f.name() + " too large for brute force");
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::vector<kernels::P1Code> random_distinct(std::mt19937_64& rng, std::uint32_t range, std::size_t count) {
    std::vector<kernels::P1Code> out;
    while (out.size() < count) {
        const auto c = static_cast<kernels::P1Code>(rng() % range);
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
    return out;
}

template <typename Kernel>
GenericFreenessStats sample(const Field& f, std::size_t samples, std::uint64_t seed, std::size_t set_size,
                            std::uint32_t range, Kernel kernel) {
    check_field(f);
    const kernels::FqArith fq(f);
    if (range < set_size) throw DomainError("field " + f.name() + " has too few points to sample from");
    std::vector<std::vector<kernels::P1Code>> sets(samples);
    std::vector<char> trivial(samples, 0);
    const auto n = static_cast<std::int64_t>(samples);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < n; ++k) {
        std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(k))));
        auto& pts = sets[static_cast<std::size_t>(k)];
        pts = random_distinct(rng, range, set_size);
        trivial[static_cast<std::size_t>(k)] = kernel(fq, pts).size() == 1 ? 1 : 0;
    }
    GenericFreenessStats stats;
    stats.samples = samples;
    for (std::size_t k = 0; k < samples; ++k) {
        if (trivial[k]) {
            ++stats.trivial;
            continue;
        }
        std::vector<ProjPoint1> pts;
        for (auto c : sets[k]) pts.push_back(decode(c, f, fq));
        stats.special.emplace_back(k, std::move(pts));
    }
    return stats;
}

}  // namespace

std::vector<Moebius> borel_stabilizer(std::span<const ProjPoint1> points, const Field& f) {
    check_field(f);
    const kernels::FqArith fq(f);
    const auto codes = encode_distinct(points, f, fq, 4);
    std::vector<Moebius> out;
    for (const auto& m : kernels::borel_stabilizer_parallel(fq, codes)) out.push_back(decode(m, f));
    return out;
}

std::vector<Moebius> pgl2_stabilizer(std::span<const ProjPoint1> points, const Field& f) {
    check_field(f);
    const kernels::FqArith fq(f);
    const auto codes = encode_distinct(points, f, fq, 5);
    std::vector<Moebius> out;
    for (const auto& m : kernels::pgl2_stabilizer_parallel(fq, codes)) out.push_back(decode(m, f));
    return out;
}

GenericFreenessStats sample_borel_freeness(const Field& f, std::size_t samples, std::uint64_t seed) {
    return sample(f, samples, seed, 4, static_cast<std::uint32_t>(f.size()), kernels::borel_stabilizer_serial);
}

GenericFreenessStats sample_pgl2_freeness(const Field& f, std::size_t samples, std::uint64_t seed) {
    return sample(f, samples, seed, 5, static_cast<std::uint32_t>(f.size() + 1), kernels::pgl2_stabilizer_serial);
}

}  // namespace crossratio
