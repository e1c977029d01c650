#include <algorithm>

#include "crossratio/kernels.hpp"

namespace crossratio::kernels {

P1Code apply(const FqArith& f, const MoebiusCode& m, P1Code x) {
    const std::uint32_t inf = f.q();
    std::uint32_t num, den;
    if (x == inf) {
        num = m.a;
        den = m.c;
    } else {
        num = f.add(f.mul(m.a, x), m.b);
        den = f.add(f.mul(m.c, x), m.d);
    }
    if (den == 0) return inf;
    return f.mul(num, f.inv(den));
}

namespace {

struct PointSet {
    PointSet(const FqArith& f, const std::vector<P1Code>& points) : member(f.q() + 1, false), pts(points) {
        for (auto p : points) member[p] = true;
    }
    bool preserved_by(const FqArith& f, const MoebiusCode& m) const {
        for (auto p : pts) {
            if (!member[apply(f, m, p)]) return false;
        }
        return true;
    }
    std::vector<bool> member;
    std::vector<P1Code> pts;
};

// Canonical PGL2 matrices by flat index: block one is [[1,b],[c,d]] (q^3
// slots, some singular), block two is [[0,1],[c,d]] with c != 0.
bool pgl2_by_index(const FqArith& f, std::uint64_t idx, MoebiusCode& out) {
    const std::uint64_t q = f.q();
    if (idx < q * q * q) {
        const auto b = static_cast<std::uint32_t>(idx / (q * q));
        const auto c = static_cast<std::uint32_t>((idx / q) % q);
        const auto d = static_cast<std::uint32_t>(idx % q);
        if (f.sub(d, f.mul(b, c)) == 0) return false;
        out = {1, b, c, d};
        return true;
    }
    idx -= q * q * q;
    const auto c = static_cast<std::uint32_t>(idx / q + 1);
    const auto d = static_cast<std::uint32_t>(idx % q);
    out = {0, 1, c, d};
    return true;
}

std::uint64_t pgl2_slots(const FqArith& f) {
    const std::uint64_t q = f.q();
    return q * q * q + (q - 1) * q;
}

}  // namespace

std::vector<MoebiusCode> borel_stabilizer_serial(const FqArith& f, const std::vector<P1Code>& points) {
    const PointSet set(f, points);
    std::vector<MoebiusCode> out;
    for (std::uint32_t b = 0; b < f.q(); ++b) {
        for (std::uint32_t d = 1; d < f.q(); ++d) {
            const MoebiusCode m{1, b, 0, d};
            if (set.preserved_by(f, m)) out.push_back(m);
        }
    }
    return out;
}

std::vector<MoebiusCode> borel_stabilizer_parallel(const FqArith& f, const std::vector<P1Code>& points) {
    const PointSet set(f, points);
    const std::int64_t q = f.q();
    std::vector<MoebiusCode> out;
#pragma omp parallel
    {
        std::vector<MoebiusCode> local;
#pragma omp for schedule(static) nowait
        for (std::int64_t b = 0; b < q; ++b) {
            for (std::uint32_t d = 1; d < f.q(); ++d) {
                const MoebiusCode m{1, static_cast<std::uint32_t>(b), 0, d};
                if (set.preserved_by(f, m)) local.push_back(m);
            }
        }
#pragma omp critical
        out.insert(out.end(), local.begin(), local.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<MoebiusCode> pgl2_stabilizer_serial(const FqArith& f, const std::vector<P1Code>& points) {
    const PointSet set(f, points);
    std::vector<MoebiusCode> out;
    const std::uint64_t slots = pgl2_slots(f);
    MoebiusCode m{};
    for (std::uint64_t idx = 0; idx < slots; ++idx) {
        if (pgl2_by_index(f, idx, m) && set.preserved_by(f, m)) out.push_back(m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<MoebiusCode> pgl2_stabilizer_parallel(const FqArith& f, const std::vector<P1Code>& points) {
    const PointSet set(f, points);
    const auto slots = static_cast<std::int64_t>(pgl2_slots(f));
    std::vector<MoebiusCode> out;
#pragma omp parallel
    {
        std::vector<MoebiusCode> local;
        MoebiusCode m{};
#pragma omp for schedule(static) nowait
        for (std::int64_t idx = 0; idx < slots; ++idx) {
            if (pgl2_by_index(f, static_cast<std::uint64_t>(idx), m) && set.preserved_by(f, m)) local.push_back(m);
        }
#pragma omp critical
        out.insert(out.end(), local.begin(), local.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace crossratio::kernels
