#include <algorithm>

#include "crossratio/kernels.hpp"

namespace crossratio::kernels {

namespace {

void trim(FqPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

FqPoly mul(const FqArith& f, const FqPoly& a, const FqPoly& b) {
    if (a.empty() || b.empty()) return {};
    FqPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

void add_into(const FqArith& f, FqPoly& acc, const FqPoly& t) {
    if (acc.size() < t.size()) acc.resize(t.size(), 0);
    for (std::size_t i = 0; i < t.size(); ++i) acc[i] = f.add(acc[i], t[i]);
    trim(acc);
}

bool is_zero_poly(const FqPoly& p) {
    return std::all_of(p.begin(), p.end(), [](auto c) { return c == 0; });
}

/// Leading coefficient of a padded coordinate, 0 if the coordinate is zero.
std::uint32_t leading(const FqPoly& p) {
    for (std::size_t k = p.size(); k-- > 0;) {
        if (p[k] != 0) return p[k];
    }
    return 0;
}

void canonicalize(const FqArith& f, Triple& t) {
    // first nonzero of W, Z, Y made monic
    for (int c : {2, 1, 0}) {
        const std::uint32_t lc = leading(t[static_cast<std::size_t>(c)]);
        if (lc == 0) continue;
        const std::uint32_t s = f.inv(lc);
        for (auto& coord : t) {
            for (auto& e : coord) e = f.mul(e, s);
        }
        return;
    }
}

/// Comparison W, then Z, then Y; coefficient order 1 < 2 < ... < q-1 < 0.
bool key_less(std::uint32_t q, const Triple& a, const Triple& b) {
    auto rank = [q](std::uint32_t e) { return e == 0 ? q : e; };
    for (int c : {2, 1, 0}) {
        const auto& x = a[static_cast<std::size_t>(c)];
        const auto& y = b[static_cast<std::size_t>(c)];
        for (std::size_t k = 0; k < x.size(); ++k) {
            if (x[k] != y[k]) return rank(x[k]) < rank(y[k]);
        }
    }
    return false;
}

void decode(std::uint64_t index, std::uint32_t q, unsigned width, Triple& t) {
    for (auto& coord : t) {
        coord.assign(width, 0);
        for (unsigned k = 0; k < width; ++k) {
            coord[k] = static_cast<std::uint32_t>(index % q);
            index /= q;
        }
    }
}

void consider(const FqArith& f, const FormCoeffs& form, Triple& t, SearchOutcome& acc) {
    ++acc.enumerated;
    if (!is_zero_poly(eval_form(f, form, t))) return;
    ++acc.solutions;
    canonicalize(f, t);
    if (!acc.best || key_less(f.q(), t, *acc.best)) acc.best = t;
}

void merge(std::uint32_t q, SearchOutcome& into, const SearchOutcome& from) {
    into.enumerated += from.enumerated;
    into.solutions += from.solutions;
    if (from.best && (!into.best || key_less(q, *from.best, *into.best))) into.best = from.best;
}

constexpr std::uint64_t kSearchBudget = 10'000'000;

void check_budget(std::uint32_t q, unsigned degree_bound) {
    const std::uint64_t n = triple_count(q, degree_bound);
    if (n == 0 || n > kSearchBudget) {
        throw DomainError("point search budget exceeded: q=" + std::to_string(q) +
                          ", degree bound " + std::to_string(degree_bound));
    }
}

}  // namespace

std::uint64_t triple_count(std::uint32_t q, unsigned degree_bound) {
    std::uint64_t n = 1;
    for (unsigned k = 0; k < 3 * (degree_bound + 1); ++k) {
        if (n > (1ULL << 40)) return 0;  // overflow guard: reported as over budget
        n *= q;
    }
    return n - 1;
}

FqPoly eval_form(const FqArith& f, const FormCoeffs& form, const Triple& t) {
    const auto& [y, z, w] = t;
    const std::array<FqPoly, 6> mons{mul(f, y, y), mul(f, z, z), mul(f, w, w),
                                     mul(f, y, z), mul(f, y, w), mul(f, z, w)};
    FqPoly acc;
    for (std::size_t k = 0; k < 6; ++k) add_into(f, acc, mul(f, form[k], mons[k]));
    return acc;
}

SearchOutcome point_search_serial(const FqArith& f, const FormCoeffs& form, unsigned degree_bound) {
    check_budget(f.q(), degree_bound);
    const std::uint64_t n = triple_count(f.q(), degree_bound);
    SearchOutcome out;
    Triple t;
    for (std::uint64_t idx = 1; idx <= n; ++idx) {
        decode(idx, f.q(), degree_bound + 1, t);
        consider(f, form, t, out);
    }
    return out;
}

SearchOutcome point_search_parallel(const FqArith& f, const FormCoeffs& form, unsigned degree_bound) {
    check_budget(f.q(), degree_bound);
    const auto n = static_cast<std::int64_t>(triple_count(f.q(), degree_bound));
    SearchOutcome out;
#pragma omp parallel
    {
        SearchOutcome local;
        Triple t;
#pragma omp for schedule(static) nowait
        for (std::int64_t idx = 1; idx <= n; ++idx) {
            decode(static_cast<std::uint64_t>(idx), f.q(), degree_bound + 1, t);
            consider(f, form, t, local);
        }
#pragma omp critical
        merge(f.q(), out, local);
    }
    return out;
}

}  // namespace crossratio::kernels
