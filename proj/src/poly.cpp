#include "crossratio/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace crossratio {

Ring::Ring(const Field& field, std::vector<std::string> variables)
    : data_(std::make_shared<const Data>(Data{field, std::move(variables)})) {
    const auto& vars = data_->variables;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i].empty()) throw DomainError("empty variable name");
        for (std::size_t j = 0; j < i; ++j) {
            if (vars[i] == vars[j]) throw DomainError("duplicate variable '" + vars[i] + "'");
        }
    }
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
    const auto& vars = data_->variables;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i] == name) return i;
    }
    return std::nullopt;
}

std::size_t Ring::require_index(std::string_view name) const {
    auto idx = index_of(name);
    if (!idx) throw DomainError("unknown variable '" + std::string(name) + "'");
    return *idx;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
    const auto da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
    const auto db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

MultiPoly::MultiPoly(const Ring& ring) : ring_(ring) {}

MultiPoly::MultiPoly(const Ring& ring, const FieldElement& constant) : ring_(ring) {
    if (!(constant.field() == ring.field())) throw MismatchError("constant from another field");
    if (!constant.is_zero()) terms_.emplace(Monomial(ring.num_variables(), 0), constant);
}

MultiPoly::MultiPoly(const Ring& ring, long constant)
    : MultiPoly(ring, FieldElement(ring.field(), constant)) {}

MultiPoly MultiPoly::variable(const Ring& ring, std::string_view name) {
    return variable(ring, ring.require_index(name));
}

MultiPoly MultiPoly::variable(const Ring& ring, std::size_t index) {
    if (index >= ring.num_variables()) throw DomainError("variable index out of range");
    Monomial m(ring.num_variables(), 0);
    m[index] = 1;
    return monomial(ring, std::move(m), FieldElement::one(ring.field()));
}

MultiPoly MultiPoly::monomial(const Ring& ring, Monomial m, const FieldElement& c) {
    if (m.size() != ring.num_variables()) throw DomainError("monomial length mismatch");
    MultiPoly p(ring);
    if (!c.is_zero()) p.terms_.emplace(std::move(m), c);
    return p;
}

bool MultiPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& m = terms_.begin()->first;
    return std::all_of(m.begin(), m.end(), [](auto e) { return e == 0; });
}

FieldElement MultiPoly::constant_term() const {
    auto it = terms_.find(Monomial(ring_.num_variables(), 0));
    return it == terms_.end() ? FieldElement::zero(field()) : it->second;
}

const std::pair<const Monomial, FieldElement>& MultiPoly::leading_term() const {
    if (terms_.empty()) throw DomainError("zero polynomial has no leading term");
    return *terms_.rbegin();
}

int MultiPoly::total_degree() const {
    if (terms_.empty()) return -1;
    const auto& m = terms_.rbegin()->first;
    return static_cast<int>(std::accumulate(m.begin(), m.end(), std::uint64_t{0}));
}

std::uint32_t MultiPoly::degree_in(std::size_t v) const {
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[v]);
    return d;
}

void MultiPoly::check_ring(const MultiPoly& o) const {
    if (!(ring_ == o.ring_)) throw MismatchError("polynomials from different rings");
}

void MultiPoly::add_term(const Monomial& m, const FieldElement& c) {
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    } else if (c.is_zero()) {
        terms_.erase(it);
    }
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    check_ring(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    check_ring(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const FieldElement& c) {
    if (!(c.field() == field())) throw MismatchError("scalar from another field");
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, coeff] : terms_) coeff *= c;
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_ring(b);
    MultiPoly r(a.ring_);
    Monomial prod(a.ring_.num_variables());
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            for (std::size_t k = 0; k < prod.size(); ++k) prod[k] = ma[k] + mb[k];
            r.add_term(prod, ca * cb);
        }
    }
    return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly result(ring_, 1);
    MultiPoly base = *this;
    while (e > 0) {
        if (e & 1U) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (!(a.ring_ == b.ring_)) return false;
    return a.terms_ == b.terms_;
}

MultiPoly MultiPoly::substitute(const std::unordered_map<std::string, MultiPoly>& assignment,
                                const Ring& target) const {
    if (!(target.field() == field())) throw MismatchError("substitution target over another field");
    const std::size_t n = ring_.num_variables();
    std::vector<MultiPoly> images;
    images.reserve(n);
    for (std::size_t v = 0; v < n; ++v) {
        const auto& name = ring_.variables()[v];
        auto it = assignment.find(name);
        if (it != assignment.end()) {
            if (!(it->second.ring() == target)) {
                throw MismatchError("image of '" + name + "' is not in the target ring");
            }
            images.push_back(it->second);
        } else if (degree_in(v) == 0) {
            images.emplace_back(target);  // never used
        } else {
            auto idx = target.index_of(name);
            if (!idx) throw DomainError("target ring has no variable '" + name + "'");
            images.push_back(variable(target, *idx));
        }
    }
    // powers[v][k] = images[v]^k, grown on demand
    std::vector<std::vector<MultiPoly>> powers(n);
    auto power = [&](std::size_t v, std::uint32_t k) -> const MultiPoly& {
        auto& cache = powers[v];
        if (cache.empty()) cache.emplace_back(target, 1);
        while (cache.size() <= k) cache.push_back(cache.back() * images[v]);
        return cache[k];
    };
    MultiPoly result(target);
    for (const auto& [m, c] : terms_) {
        MultiPoly term(target, c);
        for (std::size_t v = 0; v < n && !term.is_zero(); ++v) {
            if (m[v] > 0) term = term * power(v, m[v]);
        }
        result += term;
    }
    return result;
}

FieldElement MultiPoly::evaluate(const std::unordered_map<std::string, FieldElement>& point) const {
    std::vector<FieldElement> values;
    values.reserve(ring_.num_variables());
    for (std::size_t v = 0; v < ring_.num_variables(); ++v) {
        const auto& name = ring_.variables()[v];
        auto it = point.find(name);
        if (it != point.end()) {
            values.push_back(it->second);
        } else if (degree_in(v) == 0) {
            values.push_back(FieldElement::zero(field()));
        } else {
            throw DomainError("evaluation point does not assign '" + name + "'");
        }
    }
    return evaluate(values);
}

FieldElement MultiPoly::evaluate(std::span<const FieldElement> values) const {
    if (values.size() != ring_.num_variables()) throw DomainError("evaluation point has wrong length");
    for (const auto& v : values) {
        if (!(v.field() == field())) throw MismatchError("evaluation point from another field");
    }
    FieldElement sum = FieldElement::zero(field());
    for (const auto& [m, c] : terms_) {
        FieldElement t = c;
        for (std::size_t v = 0; v < m.size(); ++v) {
            if (m[v] > 0) t *= values[v].pow(m[v]);
        }
        sum += t;
    }
    return sum;
}

MultiPoly MultiPoly::derivative(std::string_view var) const {
    return derivative(ring_.require_index(var));
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
    if (var >= ring_.num_variables()) throw DomainError("variable index out of range");
    MultiPoly r(ring_);
    for (const auto& [m, c] : terms_) {
        if (m[var] == 0) continue;
        Monomial d = m;
        d[var] -= 1;
        r.add_term(d, c * FieldElement(field(), static_cast<long>(m[var])));
    }
    return r;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(std::size_t var) const {
    std::vector<MultiPoly> out(degree_in(var) + 1, MultiPoly(ring_));
    for (const auto& [m, c] : terms_) {
        Monomial rest = m;
        rest[var] = 0;
        out[m[var]].add_term(rest, c);
    }
    return out;
}

MultiPoly MultiPoly::embed(const Ring& target) const {
    if (!(target.field() == field())) throw MismatchError("embedding into another field");
    std::vector<std::size_t> map(ring_.num_variables());
    for (std::size_t v = 0; v < map.size(); ++v) {
        auto idx = target.index_of(ring_.variables()[v]);
        if (!idx) {
            if (degree_in(v) > 0) {
                throw DomainError("target ring has no variable '" + ring_.variables()[v] + "'");
            }
            map[v] = target.num_variables();
        } else {
            map[v] = *idx;
        }
    }
    MultiPoly r(target);
    for (const auto& [m, c] : terms_) {
        Monomial t(target.num_variables(), 0);
        for (std::size_t v = 0; v < m.size(); ++v) {
            if (m[v] > 0) t[map[v]] = m[v];
        }
        r.add_term(t, c);
    }
    return r;
}

Monomial MultiPoly::monomial_content() const {
    Monomial content(ring_.num_variables(), 0);
    if (terms_.empty()) return content;
    content = terms_.begin()->first;
    for (const auto& [m, c] : terms_) {
        for (std::size_t v = 0; v < m.size(); ++v) content[v] = std::min(content[v], m[v]);
    }
    return content;
}

MultiPoly MultiPoly::divide_monomial(const Monomial& d) const {
    MultiPoly r(ring_);
    for (const auto& [m, c] : terms_) {
        Monomial q = m;
        for (std::size_t v = 0; v < q.size(); ++v) {
            if (q[v] < d[v]) throw DomainError("monomial does not divide polynomial");
            q[v] -= d[v];
        }
        r.terms_.emplace_hint(r.terms_.end(), std::move(q), c);
    }
    return r;
}

namespace {

std::string monomial_string(const Ring& ring, const Monomial& m) {
    std::string out;
    for (std::size_t v = 0; v < m.size(); ++v) {
        if (m[v] == 0) continue;
        if (!out.empty()) out += "*";
        out += ring.variables()[v];
        if (m[v] > 1) out += "^" + std::to_string(m[v]);
    }
    return out;
}

}  // namespace

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        const bool negative = !c.is_compound() && c.sign() < 0;
        const FieldElement mag = negative ? -c : c;
        const std::string mono = monomial_string(ring_, m);
        std::string body;
        if (mono.empty()) {
            body = mag.to_string();
        } else if (mag.is_one()) {
            body = mono;
        } else {
            body = mag.to_string() + "*" + mono;
        }
        if (first) {
            out = negative ? "-" + body : body;
        } else {
            out += negative ? " - " : " + ";
            out += body;
        }
        first = false;
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string(); }

}  // namespace crossratio
