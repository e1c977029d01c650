#include "crossratio/ratfunc.hpp"

#include <algorithm>

namespace crossratio {

RatFunc::RatFunc(const Ring& ring) : num_(ring), den_(ring, 1) {}

RatFunc::RatFunc(const Ring& ring, long constant) : num_(ring, constant), den_(ring, 1) {}

RatFunc::RatFunc(const Ring& ring, const FieldElement& constant) : num_(ring, constant), den_(ring, 1) {}

RatFunc::RatFunc(MultiPoly num) : num_(std::move(num)), den_(num_.ring(), 1) {}

RatFunc::RatFunc(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (!(num_.ring() == den_.ring())) throw MismatchError("numerator and denominator in different rings");
    if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
    normalize();
}

void RatFunc::normalize() {
    if (num_.is_zero()) {
        den_ = MultiPoly(num_.ring(), 1);
        return;
    }
    if (num_ == den_) {
        num_ = MultiPoly(num_.ring(), 1);
        den_ = num_;
        return;
    }
    Monomial cn = num_.monomial_content();
    Monomial cd = den_.monomial_content();
    bool strip = false;
    for (std::size_t v = 0; v < cn.size(); ++v) {
        cn[v] = std::min(cn[v], cd[v]);
        strip = strip || cn[v] > 0;
    }
    if (strip) {
        num_ = num_.divide_monomial(cn);
        den_ = den_.divide_monomial(cn);
    }
    const FieldElement& lc = den_.leading_term().second;
    if (!lc.is_one()) {
        const FieldElement inv = lc.inverse();
        num_ *= inv;
        den_ *= inv;
    }
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::inverse() const {
    if (num_.is_zero()) throw DivisionByZero("inverse of the zero rational function");
    return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    return RatFunc(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
    if (den_ == o.den_) {
        *this = RatFunc(num_ + o.num_, den_);
    } else {
        *this = RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
    if (num_ == o.den_) {
        *this = RatFunc(o.num_, den_);
    } else if (den_ == o.num_) {
        *this = RatFunc(num_, o.den_);
    } else {
        *this = RatFunc(num_ * o.num_, den_ * o.den_);
    }
    return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
    if (o.num_.is_zero()) throw DivisionByZero("division by the zero rational function");
    return *this *= RatFunc(o.den_, o.num_);
}

bool operator==(const RatFunc& f, const RatFunc& g) {
    if (!(f.ring() == g.ring())) throw MismatchError("comparing rational functions from different rings");
    if (f.num_ == g.num_ && f.den_ == g.den_) return true;
    return f.num_ * g.den_ == g.num_ * f.den_;
}

RatFunc RatFunc::substitute(const std::unordered_map<std::string, RatFunc>& assignment,
                            const Ring& target) const {
    const Ring& src = ring();
    const std::size_t n = src.num_variables();
    std::vector<MultiPoly> nimg, dimg;
    nimg.reserve(n);
    dimg.reserve(n);
    for (std::size_t v = 0; v < n; ++v) {
        const auto& name = src.variables()[v];
        auto it = assignment.find(name);
        if (it != assignment.end()) {
            if (!(it->second.ring() == target)) {
                throw MismatchError("image of '" + name + "' is not in the target ring");
            }
            nimg.push_back(it->second.num());
            dimg.push_back(it->second.den());
        } else if (num_.degree_in(v) == 0 && den_.degree_in(v) == 0) {
            nimg.emplace_back(target);
            dimg.emplace_back(target, 1);
        } else {
            auto idx = target.index_of(name);
            if (!idx) throw DomainError("target ring has no variable '" + name + "'");
            nimg.push_back(MultiPoly::variable(target, *idx));
            dimg.emplace_back(target, 1);
        }
    }

    std::vector<std::vector<MultiPoly>> npow(n), dpow(n);
    auto power = [&](std::vector<std::vector<MultiPoly>>& cache, const std::vector<MultiPoly>& base,
                     std::size_t v, std::uint32_t k) -> const MultiPoly& {
        auto& c = cache[v];
        if (c.empty()) c.emplace_back(target, 1);
        while (c.size() <= k) c.push_back(c.back() * base[v]);
        return c[k];
    };
    // Homogenized image: sum c_m prod n_v^{m_v} d_v^{deg_v - m_v}; the true
    // image is this divided by prod d_v^{deg_v}.
    auto homogenized = [&](const MultiPoly& p) {
        MultiPoly out(target);
        for (const auto& [m, c] : p.terms()) {
            MultiPoly term(target, c);
            for (std::size_t v = 0; v < n; ++v) {
                const std::uint32_t dv = p.degree_in(v);
                if (m[v] > 0) term = term * power(npow, nimg, v, m[v]);
                if (dv > m[v] && !dimg[v].is_constant()) term = term * power(dpow, dimg, v, dv - m[v]);
                else if (dv > m[v]) term *= dimg[v].constant_term().pow(dv - m[v]);
            }
            out += term;
        }
        return out;
    };

    MultiPoly top = homogenized(num_);
    MultiPoly bottom = homogenized(den_);
    if (bottom.is_zero()) throw DivisionByZero("substitution makes the denominator vanish");
    for (std::size_t v = 0; v < n; ++v) {
        const long e = static_cast<long>(den_.degree_in(v)) - static_cast<long>(num_.degree_in(v));
        if (e > 0) top = top * power(dpow, dimg, v, static_cast<std::uint32_t>(e));
        if (e < 0) bottom = bottom * power(dpow, dimg, v, static_cast<std::uint32_t>(-e));
    }
    return RatFunc(std::move(top), std::move(bottom));
}

FieldElement RatFunc::evaluate(const std::unordered_map<std::string, FieldElement>& point) const {
    FieldElement d = den_.evaluate(point);
    if (d.is_zero()) throw DomainError("pole: denominator " + den_.to_string() + " vanishes at the point");
    return num_.evaluate(point) / d;
}

FieldElement RatFunc::evaluate(std::span<const FieldElement> values) const {
    FieldElement d = den_.evaluate(values);
    if (d.is_zero()) throw DomainError("pole: denominator " + den_.to_string() + " vanishes at the point");
    return num_.evaluate(values) / d;
}

RatFunc RatFunc::derivative(std::size_t var) const {
    return RatFunc(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

RatFunc RatFunc::embed(const Ring& target) const {
    return RatFunc(num_.embed(target), den_.embed(target));
}

std::string RatFunc::to_string() const {
    if (den_.is_constant() && den_.constant_term().is_one()) return num_.to_string();
    // a single-term numerator reads correctly left to right; a denominator needs
    // parentheses unless it is one atom
    auto wrap = [](const MultiPoly& p, const char* breaks) {
        std::string s = p.to_string();
        if (s.find_first_of(breaks) == std::string::npos) return s;
        return "(" + s + ")";
    };
    return wrap(num_, " ") + "/" + wrap(den_, "*/+- ");
}

std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << f.to_string(); }

std::size_t jacobian_rank(std::span<const RatFunc> fs, std::span<const std::string> vars) {
    if (fs.empty()) return 0;
    const Ring& ring = fs.front().ring();
    if (ring.field().characteristic() != 0) {
        throw DomainError("jacobian_rank refuses characteristic " +
                          std::to_string(ring.field().characteristic()) +
                          ": full rank is not an independence certificate used here");
    }
    std::vector<std::size_t> cols;
    for (const auto& v : vars) cols.push_back(ring.require_index(v));

    // Row i holds D^2 * d f_i / d x_j = N_j D - N D_j: same rank, polynomial entries.
    std::vector<std::vector<MultiPoly>> m;
    for (const auto& f : fs) {
        if (!(f.ring() == ring)) throw MismatchError("jacobian_rank over mixed rings");
        std::vector<MultiPoly> row;
        for (auto c : cols) row.push_back(f.num().derivative(c) * f.den() - f.num() * f.den().derivative(c));
        m.push_back(std::move(row));
    }

    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols.size() && rank < m.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < m.size() && m[pivot][c].is_zero()) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[rank], m[pivot]);
        for (std::size_t r = rank + 1; r < m.size(); ++r) {
            if (m[r][c].is_zero()) continue;
            const MultiPoly a = m[rank][c];
            const MultiPoly b = m[r][c];
            for (std::size_t k = c; k < cols.size(); ++k) m[r][k] = a * m[r][k] - b * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

}  // namespace crossratio
