#include "crossratio/certificate.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "crossratio/parser.hpp"

namespace crossratio {

// ---------------------------------------------------------------- QuadExt

QuadExt::QuadExt(std::shared_ptr<const Modulus> mod, RatFunc alpha, RatFunc beta)
    : mod_(std::move(mod)), alpha_(std::move(alpha)), beta_(std::move(beta)) {
    if (!mod_ && !beta_.is_zero()) throw DomainError("t-component without an algebraic relation");
}

QuadExt QuadExt::base(std::shared_ptr<const Modulus> mod, RatFunc alpha) {
    RatFunc zero(alpha.ring());
    return QuadExt(std::move(mod), std::move(alpha), std::move(zero));
}

QuadExt QuadExt::root(std::shared_ptr<const Modulus> mod, const Ring& ring) {
    if (!mod) throw DomainError("no adjoined root without an algebraic relation");
    return QuadExt(std::move(mod), RatFunc(ring), RatFunc(ring, 1));
}

QuadExt QuadExt::operator-() const { return QuadExt(mod_, -alpha_, -beta_); }

QuadExt& QuadExt::operator+=(const QuadExt& o) {
    alpha_ += o.alpha_;
    beta_ += o.beta_;
    if (!mod_) mod_ = o.mod_;
    return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& o) {
    alpha_ -= o.alpha_;
    beta_ -= o.beta_;
    if (!mod_) mod_ = o.mod_;
    return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& o) {
    if (!mod_) mod_ = o.mod_;
    if (beta_.is_zero() || o.beta_.is_zero()) {
        beta_ = alpha_ * o.beta_ + beta_ * o.alpha_;
        alpha_ *= o.alpha_;
        return *this;
    }
    const RatFunc bb = beta_ * o.beta_;
    const RatFunc a = alpha_ * o.alpha_ + bb * mod_->c0;
    beta_ = alpha_ * o.beta_ + beta_ * o.alpha_ + bb * mod_->c1;
    alpha_ = a;
    return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& o) { return *this *= o.inverse(); }

RatFunc QuadExt::norm() const {
    if (beta_.is_zero()) return alpha_ * alpha_;
    return alpha_ * alpha_ + alpha_ * beta_ * mod_->c1 - beta_ * beta_ * mod_->c0;
}

QuadExt QuadExt::inverse() const {
    if (beta_.is_zero()) return QuadExt(mod_, alpha_.inverse(), beta_);
    const RatFunc n = norm();
    if (n.is_zero()) throw DivisionByZero("element of zero norm has no inverse");
    return QuadExt(mod_, (alpha_ + beta_ * mod_->c1) / n, -beta_ / n);
}

QuadExt QuadExt::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    QuadExt result = base(mod_, RatFunc(ring(), 1));
    QuadExt b = *this;
    while (e > 0) {
        if (e & 1) result *= b;
        b *= b;
        e >>= 1;
    }
    return result;
}

std::string QuadExt::to_string(std::string_view root_name) const {
    if (beta_.is_zero()) return alpha_.to_string();
    std::string t = "(" + beta_.to_string() + ")*" + std::string(root_name);
    if (alpha_.is_zero()) return t;
    return alpha_.to_string() + " + " + t;
}

// ---------------------------------------------------------------- parsing

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> words(std::string_view s) {
    std::istringstream in{std::string(s)};
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty()) out.push_back(trim(cur));
    return out;
}

}  // namespace

Certificate Certificate::parse(std::string_view text) {
    Certificate c;
    std::istringstream in{std::string(text)};
    std::size_t lineno = 0;
    bool have_primitive = false;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto colon = t.find(':');
        if (colon == std::string::npos) throw ParseError("certificate line " + std::to_string(lineno) + ": missing ':'", lineno);
        const auto key = words(std::string_view(t).substr(0, colon));
        const std::string value = trim(std::string_view(t).substr(colon + 1));
        auto bad = [&](const std::string& why) {
            return ParseError("certificate line " + std::to_string(lineno) + ": " + why, lineno);
        };
        if (key.empty()) throw bad("empty key");
        const std::string& k = key[0];
        if (k == "name" && key.size() == 1) {
            c.name = value;
        } else if (k == "field" && key.size() == 1) {
            c.field_spec = value;
        } else if (k == "variables" && key.size() == 1) {
            c.variables = split_list(value);
        } else if (k == "algebraic" && key.size() == 2) {
            c.algebraic = std::make_pair(key[1], value);
        } else if (k == "group" && key.size() == 1) {
            c.group = split_list(value);
        } else if (k == "image" && key.size() == 3) {
            if (!c.images[key[1]].emplace(key[2], value).second) throw bad("duplicate image");
        } else if (k == "generator" && key.size() == 2) {
            c.generators.emplace_back(key[1], value);
        } else if (k == "primitive" && key.size() == 2) {
            c.primitive = {key[1], value};
            have_primitive = true;
        } else if (k == "relation" && key.size() == 1) {
            c.relation = value;
        } else if (k == "express" && key.size() == 2) {
            c.expressions.emplace_back(key[1], value);
        } else {
            throw bad("unknown key '" + trim(std::string_view(t).substr(0, colon)) + "'");
        }
    }
    auto missing = [](const char* what) { return ParseError(std::string("certificate has no ") + what, 0); };
    if (c.name.empty()) throw missing("name");
    if (c.field_spec.empty()) throw missing("field");
    if (c.variables.empty()) throw missing("variables");
    if (c.group.empty()) throw missing("group");
    if (c.generators.empty()) throw missing("generators");
    if (!have_primitive) throw missing("primitive");
    if (c.relation.empty()) throw missing("relation");
    if (c.expressions.empty()) throw missing("expressions");
    return c;
}

Certificate Certificate::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read certificate file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

bool Certificate::applies_to(const Field& f) const {
    if (field_spec == "char != 2") return f.characteristic() != 2;
    if (field_spec == "char 2") return f.characteristic() == 2;
    return Field::parse(field_spec) == f;
}

// ---------------------------------------------------------------- compiled form

CompiledCertificate::CompiledCertificate(const Certificate& cert, const Field& f)
    : cert_(cert), ring_(f, cert.variables) {
    if (!cert.applies_to(f)) throw DomainError("certificate '" + cert.name + "' does not apply to " + f.name());
    symbols_ = cert.variables;
    if (cert.algebraic) {
        const Ring r(f, cert.variables);
        auto rel = parse_expr(cert.algebraic->second, Ring(f, [&] {
                                  auto v = cert.variables;
                                  v.push_back(cert.algebraic->first);
                                  return v;
                              }()));
        const std::size_t ti = cert.variables.size();
        if (!rel.is_polynomial()) throw DomainError("algebraic relation must be a polynomial in the root");
        const auto cs = (rel.num() * rel.den().constant_term().inverse()).coefficients_in(ti);
        if (cs.size() != 3 || !(cs[2] == MultiPoly(cs[2].ring(), 1))) {
            throw DomainError("algebraic relation must be monic of degree 2 in " + cert.algebraic->first);
        }
        mod_ = std::make_shared<const QuadExt::Modulus>(
            QuadExt::Modulus{RatFunc(-cs[1].embed(r)), RatFunc(-cs[0].embed(r))});
        symbols_.push_back(cert.algebraic->first);
    }

    for (const auto& g : cert.group) {
        auto it = cert.images.find(g);
        if (it == cert.images.end()) throw DomainError("group generator '" + g + "' has no images");
        Images h;
        for (const auto& s : symbols_) {
            auto img = it->second.find(s);
            if (img == it->second.end()) throw DomainError("generator '" + g + "' gives no image of '" + s + "'");
            h.push_back(element(img->second));
        }
        for (const auto& [s, _] : it->second) {
            if (std::find(symbols_.begin(), symbols_.end(), s) == symbols_.end()) {
                throw DomainError("generator '" + g + "' maps unknown symbol '" + s + "'");
            }
        }
        if (mod_) {
            // t -> h(t) must respect t^2 = c1 t + c0
            const QuadExt& ht = h.back();
            const QuadExt c1 = evaluate_at(mod_->c1, h), c0 = evaluate_at(mod_->c0, h);
            if (!(ht * ht - c1 * ht - c0).is_zero()) {
                throw DomainError("generator '" + g + "' does not preserve the algebraic relation");
            }
        }
        const Images id = identity();
        Images p = h;
        unsigned order = 1;
        while (!(p == id)) {
            if (++order > 24) throw DomainError("generator '" + g + "' has no finite order <= 24");
            p = compose(h, p);
        }
        orders_.push_back(order);
    }

    // closure under left multiplication by generators
    group_.push_back(identity());
    group_labels_.push_back("id");
    std::vector<Images> gens;
    for (const auto& g : cert.group) {
        Images h;
        for (const auto& s : symbols_) h.push_back(element(cert.images.at(g).at(s)));
        gens.push_back(std::move(h));
    }
    for (std::size_t k = 0; k < group_.size(); ++k) {
        for (std::size_t j = 0; j < gens.size(); ++j) {
            Images c = compose(gens[j], group_[k]);
            if (std::find(group_.begin(), group_.end(), c) != group_.end()) continue;
            if (group_.size() == 24) throw DomainError("group does not close within 24 elements");
            group_.push_back(std::move(c));
            group_labels_.push_back(group_labels_[k] == "id" ? cert.group[j] : cert.group[j] + "*" + group_labels_[k]);
        }
    }

    for (const auto& [name, text] : cert.generators) {
        if (name == "T") throw DomainError("generator name T is reserved for the relation");
        gens_.emplace_back(name, element(text));
    }
    if (std::any_of(gens_.begin(), gens_.end(), [&](const auto& g) { return g.first == cert.primitive.first; })) {
        throw DomainError("primitive element name clashes with a generator");
    }
    primitive_ = element(cert.primitive.second);
}

CompiledCertificate::Images CompiledCertificate::identity() const {
    Images id;
    for (const auto& v : cert_.variables) id.push_back(QuadExt::base(mod_, RatFunc::variable(ring_, v)));
    if (mod_) id.push_back(QuadExt::root(mod_, ring_));
    return id;
}

QuadExt CompiledCertificate::evaluate_at(const RatFunc& f, const Images& point) const {
    auto eval = [&](const MultiPoly& p) {
        std::vector<std::size_t> idx;
        for (const auto& v : p.ring().variables()) {
            auto it = std::find(symbols_.begin(), symbols_.end(), v);
            if (it == symbols_.end()) throw DomainError("symbol '" + v + "' is not in the ambient");
            idx.push_back(static_cast<std::size_t>(it - symbols_.begin()));
        }
        std::map<std::pair<std::size_t, std::uint32_t>, QuadExt> powers;
        QuadExt acc = QuadExt::base(mod_, RatFunc(ring_));
        for (const auto& [m, c] : p.terms()) {
            QuadExt term = QuadExt::base(mod_, RatFunc(ring_, c));
            for (std::size_t v = 0; v < m.size(); ++v) {
                if (m[v] == 0) continue;
                auto key = std::make_pair(idx[v], m[v]);
                auto it = powers.find(key);
                if (it == powers.end()) it = powers.emplace(key, point[idx[v]].pow(m[v])).first;
                term *= it->second;
            }
            acc += term;
        }
        return acc;
    };
    const QuadExt d = eval(f.den());
    if (d.is_zero()) throw DivisionByZero("denominator vanishes under the substitution");
    return eval(f.num()) / d;
}

QuadExt CompiledCertificate::element(std::string_view text) const {
    const RatFunc f = parse_expr(text, Ring(field(), symbols_));
    return evaluate_at(f, identity());
}

QuadExt CompiledCertificate::apply(const Images& h, const QuadExt& e) const {
    QuadExt out = evaluate_at(e.alpha(), h);
    if (!e.beta().is_zero()) out += evaluate_at(e.beta(), h) * h.back();
    return out;
}

CompiledCertificate::Images CompiledCertificate::compose(const Images& g, const Images& h) const {
    Images out;
    for (const auto& e : h) out.push_back(apply(g, e));
    return out;
}

std::string CompiledCertificate::describe(const Images& h) const {
    auto it = std::find(group_.begin(), group_.end(), h);
    std::string label;
    if (it != group_.end()) {
        // collapse g*g*g into g^3
        const std::string& w = group_labels_[static_cast<std::size_t>(it - group_.begin())];
        std::vector<std::string> parts;
        std::string cur;
        for (char c : w) {
            if (c == '*') {
                parts.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        parts.push_back(cur);
        for (std::size_t k = 0; k < parts.size();) {
            std::size_t j = k;
            while (j < parts.size() && parts[j] == parts[k]) ++j;
            if (!label.empty()) label += "*";
            label += parts[k];
            if (j - k > 1) label += "^" + std::to_string(j - k);
            k = j;
        }
    }
    std::string maps;
    for (std::size_t k = 0; k < symbols_.size(); ++k) {
        if (k) maps += ", ";
        maps += symbols_[k] + " -> " + h[k].to_string(mod_ ? symbols_.back() : "t");
    }
    return label.empty() ? "[" + maps + "]" : label + " [" + maps + "]";
}

// ---------------------------------------------------------------- verification

namespace {

/// f evaluated with its ring's k-th variable set to values[k]; nullopt at a pole.
std::optional<QuadExt> eval_in(const RatFunc& f, const std::vector<QuadExt>& values, const CompiledCertificate& cc) {
    const QuadExt zero = cc.primitive() - cc.primitive();
    auto eval = [&](const MultiPoly& p) {
        QuadExt acc = zero;
        for (const auto& [m, c] : p.terms()) {
            QuadExt term = zero + QuadExt::base(nullptr, RatFunc(cc.ring(), c));
            for (std::size_t v = 0; v < m.size(); ++v) {
                if (m[v]) term *= values[v].pow(m[v]);
            }
            acc += term;
        }
        return acc;
    };
    const QuadExt d = eval(f.den());
    if (d.is_zero()) return std::nullopt;
    return eval(f.num()) / d;
}

}  // namespace

CertReport verify_certificate(const Certificate& cert, const Field& f) {
    const CompiledCertificate cc(cert, f);
    const std::string root = cert.algebraic ? cert.algebraic->first : "t";
    const std::size_t order = cc.group().size();

    CertReport rep{cert.name, f, order, {}, {}, true, std::nullopt};
    {
        std::string orders;
        for (std::size_t k = 0; k < cert.group.size(); ++k) {
            if (k) orders += ", ";
            orders += cert.group[k] + " of order " + std::to_string(cc.generator_orders()[k]);
        }
        rep.group_detail = "|H| = " + std::to_string(order) + " (" + orders + "; closure computed)";
    }
    auto record = [&rep](int n, std::string label, bool ok, std::string detail) {
        rep.conditions.push_back({n, std::move(label), ok, std::move(detail)});
        if (!ok) {
            rep.passed = false;
            if (!rep.first_failure) rep.first_failure = n;
        }
    };

    // (1)
    {
        std::string detail = "each of " + std::to_string(cc.generator_values().size()) + " generators fixed by all " +
                             std::to_string(order) + " elements";
        bool ok = true;
        for (const auto& [name, g] : cc.generator_values()) {
            for (const auto& h : cc.group()) {
                const QuadExt img = cc.apply(h, g);
                if (img == g) continue;
                ok = false;
                detail = "generator " + name + " = " + g.to_string(root) + " is moved by " + cc.describe(h) +
                         " to " + img.to_string(root);
                break;
            }
            if (!ok) break;
        }
        record(1, "generators invariant under H", ok, detail);
    }

    // relation as a polynomial in T over k(G)
    std::vector<std::string> rel_vars{"T"};
    for (const auto& [name, _] : cc.generator_values()) rel_vars.push_back(name);
    const Ring rel_ring(f, rel_vars);
    const RatFunc rel = parse_expr(cert.relation, rel_ring);

    // (2)
    {
        std::vector<QuadExt> values{cc.primitive()};
        for (const auto& [_, g] : cc.generator_values()) values.push_back(g);
        const auto val = eval_in(rel, values, cc);
        const bool ok = val && val->is_zero();
        record(2, "relation vanishes at the primitive element", ok,
               ok    ? "relation vanishes at T = " + cert.primitive.second
               : val ? "relation at T = " + cert.primitive.second + " evaluates to " + val->to_string(root)
                     : "relation has a vanishing denominator at T = " + cert.primitive.second);
    }

    // (3)
    {
        std::vector<std::string> ex_vars;
        std::vector<QuadExt> values;
        for (const auto& [name, g] : cc.generator_values()) {
            ex_vars.push_back(name);
            values.push_back(g);
        }
        ex_vars.push_back(cert.primitive.first);
        values.push_back(cc.primitive());
        const Ring ex_ring(f, ex_vars);

        bool ok = true;
        std::string detail = "all " + std::to_string(cc.ambient_symbols().size()) + " ambient symbols recovered";
        for (const auto& s : cc.ambient_symbols()) {
            auto it = std::find_if(cert.expressions.begin(), cert.expressions.end(),
                                   [&](const auto& e) { return e.first == s; });
            if (it == cert.expressions.end()) {
                ok = false;
                detail = "no expression given for " + s;
                break;
            }
            const auto v = eval_in(parse_expr(it->second, ex_ring), values, cc);
            if (!v) {
                ok = false;
                detail = "expression for " + s + " has a vanishing denominator";
                break;
            }
            if (!(*v == cc.element(s))) {
                ok = false;
                detail = "expression for " + s + " gives " + v->to_string(root);
                break;
            }
        }
        record(3, "ambient symbols expressed through generators and primitive", ok, detail);
    }

    // (4)
    {
        bool ok = rel.den().degree_in(0) == 0;
        std::string detail;
        if (!ok) {
            detail = "relation has T in a denominator";
        } else {
            const auto cs = rel.num().coefficients_in(0);
            const std::size_t m = cs.empty() ? 0 : cs.size() - 1;
            const bool monic = !cs.empty() && RatFunc(cs.back(), rel.den()) == RatFunc(rel_ring, 1);
            ok = monic && m == order;
            detail = std::string(monic ? "monic" : "not monic") + " of degree " + std::to_string(m) +
                     ", |H| = " + std::to_string(order);
        }
        record(4, "relation monic of degree |H|", ok, detail);
    }
    return rep;
}

std::string CertReport::to_string() const {
    std::ostringstream os;
    os << "certificate " << name << " over " << field.name() << ": " << (passed ? "PASS" : "FAIL");
    if (first_failure) os << " at condition (" << *first_failure << ")";
    os << "\n  " << kArtinAxiom << "\n  group: " << group_detail << "\n";
    for (const auto& c : conditions) {
        os << "  (" << c.number << ") " << (c.passed ? "PASS" : "FAIL") << " " << c.label << ": " << c.detail << "\n";
    }
    return os.str();
}

}  // namespace crossratio
