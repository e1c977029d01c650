#include "crossratio/perm.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "crossratio/errors.hpp"

namespace crossratio {

Perm Perm::identity(std::size_t n) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    return Perm(std::move(img));
}

Perm Perm::from_images(std::vector<int> one_based) {
    std::vector<int> img;
    std::vector<bool> seen(one_based.size(), false);
    for (int v : one_based) {
        if (v < 1 || v > static_cast<int>(one_based.size()) || seen[static_cast<std::size_t>(v - 1)]) {
            throw DomainError("image list is not a bijection");
        }
        seen[static_cast<std::size_t>(v - 1)] = true;
        img.push_back(v - 1);
    }
    return Perm(std::move(img));
}

Perm Perm::parse(std::string_view text, std::size_t n) {
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && text[pos] == ' ') ++pos;
    };
    skip();
    if (text.substr(pos) == "id") return identity(n);
    Perm result = identity(n);
    bool any = false;
    while (skip(), pos < text.size()) {
        if (text[pos] != '(') throw ParseError("expected '(' in cycle notation", pos);
        ++pos;
        std::vector<int> cycle;
        while (skip(), pos < text.size() && text[pos] != ')') {
            if (text[pos] < '0' || text[pos] > '9') throw ParseError("expected a point", pos);
            int v = 0;
            while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') v = v * 10 + (text[pos++] - '0');
            if (v < 1 || v > static_cast<int>(n)) throw ParseError("point out of range", pos);
            if (std::find(cycle.begin(), cycle.end(), v - 1) != cycle.end()) {
                throw ParseError("repeated point in cycle", pos);
            }
            cycle.push_back(v - 1);
        }
        if (pos >= text.size()) throw ParseError("unterminated cycle", pos);
        ++pos;
        std::vector<int> img(n);
        std::iota(img.begin(), img.end(), 0);
        for (std::size_t k = 0; k < cycle.size(); ++k) {
            img[static_cast<std::size_t>(cycle[k])] = cycle[(k + 1) % cycle.size()];
        }
        result = result * Perm(std::move(img));
        any = true;
    }
    if (!any) throw ParseError("empty permutation", pos);
    return result;
}

bool Perm::is_identity() const {
    for (std::size_t i = 0; i < image_.size(); ++i) {
        if (image_[i] != static_cast<int>(i)) return false;
    }
    return true;
}

Perm Perm::inverse() const {
    std::vector<int> inv(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) inv[static_cast<std::size_t>(image_[i])] = static_cast<int>(i);
    return Perm(std::move(inv));
}

std::size_t Perm::order() const {
    std::size_t k = 1;
    Perm p = *this;
    while (!p.is_identity()) {
        p = p * *this;
        ++k;
    }
    return k;
}

Perm operator*(const Perm& p, const Perm& q) {
    if (p.size() != q.size()) throw MismatchError("composing permutations of different degree");
    std::vector<int> img(p.size());
    for (std::size_t i = 0; i < img.size(); ++i) img[i] = p.image_[static_cast<std::size_t>(q.image_[i])];
    return Perm(std::move(img));
}

std::string Perm::to_string() const {
    if (is_identity()) return "id";
    std::string out;
    std::vector<bool> done(image_.size(), false);
    for (std::size_t start = 0; start < image_.size(); ++start) {
        if (done[start] || image_[start] == static_cast<int>(start)) continue;
        out += "(";
        std::size_t cur = start;
        bool first = true;
        while (!done[cur]) {
            if (!first) out += " ";
            out += std::to_string(cur + 1);
            done[cur] = true;
            cur = static_cast<std::size_t>(image_[cur]);
            first = false;
        }
        out += ")";
    }
    return out;
}

const std::vector<Perm>& symmetric_group_4() {
    static const std::vector<Perm> all = [] {
        std::vector<Perm> out;
        std::vector<int> img{1, 2, 3, 4};
        do {
            out.push_back(Perm::from_images(img));
        } while (std::next_permutation(img.begin(), img.end()));
        return out;
    }();
    return all;
}

namespace {

std::size_t s4_index(const Perm& p) {
    const auto& all = symmetric_group_4();
    auto it = std::lower_bound(all.begin(), all.end(), p);
    if (it == all.end() || !(*it == p)) throw DomainError("not a permutation of 4 points");
    return static_cast<std::size_t>(it - all.begin());
}

}  // namespace

PermGroup PermGroup::generated_by(const std::vector<Perm>& gens, std::size_t n) {
    std::set<Perm> elems{Perm::identity(n)};
    std::vector<Perm> frontier{Perm::identity(n)};
    while (!frontier.empty()) {
        std::vector<Perm> next;
        for (const auto& e : frontier) {
            for (const auto& g : gens) {
                Perm h = g * e;
                if (elems.insert(h).second) next.push_back(h);
            }
        }
        frontier = std::move(next);
    }
    return PermGroup(std::vector<Perm>(elems.begin(), elems.end()));
}

PermGroup PermGroup::from_elements(std::vector<Perm> elements) {
    if (elements.empty()) throw DomainError("a group has at least one element");
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    PermGroup g(std::move(elements));
    if (!g.contains(Perm::identity(g.degree()))) throw DomainError("element list lacks the identity");
    for (const auto& a : g.elements_) {
        for (const auto& b : g.elements_) {
            if (!g.contains(a * b)) throw DomainError("element list is not closed under composition");
        }
    }
    return g;
}

bool PermGroup::contains(const Perm& p) const {
    return std::binary_search(elements_.begin(), elements_.end(), p);
}

bool PermGroup::is_subgroup_of(const PermGroup& other) const {
    return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(), elements_.end());
}

bool PermGroup::is_normal_in(const PermGroup& other) const {
    for (const auto& g : other.elements_) {
        if (!(conjugate(g) == *this)) return false;
    }
    return true;
}

bool PermGroup::is_cyclic() const {
    return std::any_of(elements_.begin(), elements_.end(), [&](const Perm& p) { return p.order() == order(); });
}

PermGroup PermGroup::intersect(const PermGroup& other) const {
    std::vector<Perm> out;
    std::set_intersection(elements_.begin(), elements_.end(), other.elements_.begin(), other.elements_.end(),
                          std::back_inserter(out));
    return PermGroup(std::move(out));
}

PermGroup PermGroup::conjugate(const Perm& g) const {
    const Perm gi = g.inverse();
    std::vector<Perm> out;
    out.reserve(elements_.size());
    for (const auto& e : elements_) out.push_back(g * e * gi);
    std::sort(out.begin(), out.end());
    return PermGroup(std::move(out));
}

std::uint32_t PermGroup::mask() const {
    std::uint32_t m = 0;
    for (const auto& e : elements_) m |= 1U << s4_index(e);
    return m;
}

std::string PermGroup::to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (i > 0) out += ", ";
        out += elements_[i].to_string();
    }
    return out + "}";
}

const PermGroup& klein_four() {
    static const PermGroup v4 = PermGroup::from_elements(
        {Perm::identity(4), Perm::parse("(1 2)(3 4)"), Perm::parse("(1 3)(2 4)"), Perm::parse("(1 4)(2 3)")});
    return v4;
}

const std::vector<SubgroupRecord>& enumerate_subgroups() {
    static const std::vector<SubgroupRecord> records = [] {
        const auto& s4 = symmetric_group_4();
        // Every subgroup of S4 is generated by at most two elements.
        std::map<std::uint32_t, PermGroup> by_mask;
        for (const auto& g : s4) {
            for (const auto& h : s4) {
                PermGroup grp = PermGroup::generated_by({g, h});
                by_mask.emplace(grp.mask(), std::move(grp));
            }
        }
        // Class representative: the least mask among conjugates.
        std::map<std::uint32_t, std::uint32_t> rep;
        for (const auto& [m, grp] : by_mask) {
            std::uint32_t best = m;
            for (const auto& g : s4) best = std::min(best, grp.conjugate(g).mask());
            rep[m] = best;
        }
        std::vector<std::pair<std::size_t, std::uint32_t>> classes;  // (order, rep mask)
        for (const auto& [m, r] : rep) {
            std::pair<std::size_t, std::uint32_t> key{by_mask.at(r).order(), r};
            if (std::find(classes.begin(), classes.end(), key) == classes.end()) classes.push_back(key);
        }
        std::sort(classes.begin(), classes.end());
        std::vector<SubgroupRecord> out;
        for (const auto& [m, grp] : by_mask) {
            std::pair<std::size_t, std::uint32_t> key{grp.order(), rep.at(m)};
            int id = static_cast<int>(std::find(classes.begin(), classes.end(), key) - classes.begin());
            out.push_back({grp, id});
        }
        std::sort(out.begin(), out.end(), [](const SubgroupRecord& a, const SubgroupRecord& b) {
            if (a.group.order() != b.group.order()) return a.group.order() < b.group.order();
            if (a.class_id != b.class_id) return a.class_id < b.class_id;
            return a.group.elements() < b.group.elements();
        });
        return out;
    }();
    return records;
}

std::size_t conjugacy_class_count(const std::vector<SubgroupRecord>& subgroups) {
    std::set<int> ids;
    for (const auto& r : subgroups) ids.insert(r.class_id);
    return ids.size();
}

PermGroup klein_part(const PermGroup& s) { return s.intersect(klein_four()); }

namespace {

int largest_moved_point(const PermGroup& g) {
    int best = 0;
    for (const auto& e : g.elements()) {
        for (int i = 1; i <= static_cast<int>(e.size()); ++i) {
            if (e(i) != i) best = std::max(best, i);
        }
    }
    return best;
}

}  // namespace

SplitResult sequence_splits(const PermGroup& s) {
    const PermGroup k = klein_part(s);
    std::optional<PermGroup> best;
    for (const auto& rec : enumerate_subgroups()) {
        const PermGroup& c = rec.group;
        if (!c.is_subgroup_of(s)) continue;
        if (c.order() * k.order() != s.order()) continue;
        if (c.intersect(k).order() != 1) continue;
        if (!best) {
            best = c;
            continue;
        }
        const int lc = largest_moved_point(c);
        const int lb = largest_moved_point(*best);
        if (lc < lb || (lc == lb && c.elements() < best->elements())) best = c;
    }
    return {best.has_value(), best};
}

OrbitInfo orbits(const PermGroup& s) {
    const int n = static_cast<int>(s.degree());
    std::vector<bool> seen(static_cast<std::size_t>(n + 1), false);
    OrbitInfo info{{}, false, false};
    for (int start = 1; start <= n; ++start) {
        if (seen[static_cast<std::size_t>(start)]) continue;
        std::set<int> orbit;
        for (const auto& e : s.elements()) orbit.insert(e(start));
        for (int v : orbit) seen[static_cast<std::size_t>(v)] = true;
        info.orbits.emplace_back(orbit.begin(), orbit.end());
        if (orbit.size() == 1) info.has_fixed_point = true;
        if (orbit.size() % 2 == 1) info.has_odd_orbit = true;
    }
    return info;
}

}  // namespace crossratio
