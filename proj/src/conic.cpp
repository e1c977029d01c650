#include "crossratio/conic.hpp"

#include <stdexcept>

#include "crossratio/kernels.hpp"
#include "crossratio/parser.hpp"

namespace crossratio {

Ring coefficient_ring(const Field& f) { return Ring(f, {"x"}); }
Ring form_ring(const Field& f) { return Ring(f, {"x", "Y", "Z", "W"}); }

namespace {

// ---- univariate helpers for polynomials in the coefficient ring

MultiPoly udivmod(const MultiPoly& a, const MultiPoly& b, MultiPoly& rem) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    const Ring& r = a.ring();
    MultiPoly quo(r);
    rem = a;
    const auto& [bm, bc] = b.leading_term();
    const FieldElement binv = bc.inverse();
    while (!rem.is_zero() && rem.total_degree() >= b.total_degree()) {
        const auto& [rm, rc] = rem.leading_term();
        Monomial shift = rm;
        shift[0] -= bm[0];
        MultiPoly t = MultiPoly::monomial(r, shift, rc * binv);
        quo += t;
        rem -= t * b;
    }
    return quo;
}

MultiPoly exact_div(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly rem(a.ring());
    MultiPoly q = udivmod(a, b, rem);
    if (!rem.is_zero()) throw std::logic_error("inexact univariate division");
    return q;
}

MultiPoly monic(const MultiPoly& p) {
    if (p.is_zero()) return p;
    return p * p.leading_term().second.inverse();
}

MultiPoly ugcd(MultiPoly a, MultiPoly b) {
    while (!b.is_zero()) {
        MultiPoly rem(a.ring());
        udivmod(a, b, rem);
        a = std::move(b);
        b = std::move(rem);
    }
    return monic(a);
}

MultiPoly ulcm(const MultiPoly& a, const MultiPoly& b) { return exact_div(a * b, ugcd(a, b)); }

std::array<RatFunc, 3> canonical_coords(std::array<RatFunc, 3> c) {
    const Ring& r = c[0].ring();
    if (r.num_variables() != 1) throw DomainError("points of P^2 need a one-variable coefficient ring");
    if (c[0].is_zero() && c[1].is_zero() && c[2].is_zero()) throw DomainError("(0:0:0) is not a point of P^2");
    MultiPoly den(r, 1);
    for (const auto& e : c) den = ulcm(den, monic(e.den()));
    std::array<MultiPoly, 3> nums{MultiPoly(r), MultiPoly(r), MultiPoly(r)};
    for (std::size_t k = 0; k < 3; ++k) nums[k] = c[k].num() * exact_div(den, c[k].den());
    MultiPoly g(r);
    for (const auto& n : nums) g = ugcd(g, n);
    for (auto& n : nums) n = exact_div(n, g);
    for (std::size_t k : {2U, 1U, 0U}) {
        if (nums[k].is_zero()) continue;
        const FieldElement s = nums[k].leading_term().second.inverse();
        for (auto& n : nums) n *= s;
        break;
    }
    return {RatFunc(nums[0]), RatFunc(nums[1]), RatFunc(nums[2])};
}

MultiPoly clear_denominators(std::vector<RatFunc>& fs) {
    const Ring& r = fs.front().ring();
    MultiPoly den(r, 1);
    for (const auto& f : fs) den = ulcm(den, monic(f.den()));
    for (auto& f : fs) f = RatFunc(f.num() * exact_div(den, f.den()));
    return den;
}

}  // namespace

// ---------------------------------------------------------------- TernaryForm

TernaryForm::TernaryForm(const Ring& base, std::array<RatFunc, 6> coeffs) : base_(base), coeffs_(std::move(coeffs)) {
    bool any = false;
    for (const auto& c : coeffs_) {
        if (!(c.ring() == base_)) throw MismatchError("form coefficient outside the coefficient ring");
        any = any || !c.is_zero();
    }
    if (!any) throw DomainError("all form coefficients are zero");
}

TernaryForm TernaryForm::parse(std::string_view text, const Field& f) {
    const Ring fr = form_ring(f);
    const Ring base = coefficient_ring(f);
    const RatFunc g = parse_expr(text, fr);
    for (std::size_t v = 1; v <= 3; ++v) {
        if (g.den().degree_in(v) > 0) throw DomainError("form denominator involves Y, Z or W");
    }
    std::array<MultiPoly, 6> slots{MultiPoly(fr), MultiPoly(fr), MultiPoly(fr),
                                   MultiPoly(fr), MultiPoly(fr), MultiPoly(fr)};
    for (const auto& [m, c] : g.num().terms()) {
        const std::uint32_t y = m[1], z = m[2], w = m[3];
        if (y + z + w != 2) throw DomainError("not a quadratic form in Y, Z, W: " + std::string(text));
        std::size_t slot;
        if (y == 2) slot = 0;
        else if (z == 2) slot = 1;
        else if (w == 2) slot = 2;
        else if (y == 1 && z == 1) slot = 3;
        else if (y == 1 && w == 1) slot = 4;
        else slot = 5;
        slots[slot] += MultiPoly::monomial(fr, Monomial{m[0], 0, 0, 0}, c);
    }
    const MultiPoly den = g.den().embed(base);
    std::array<RatFunc, 6> coeffs{RatFunc(base), RatFunc(base), RatFunc(base),
                                  RatFunc(base), RatFunc(base), RatFunc(base)};
    for (std::size_t k = 0; k < 6; ++k) coeffs[k] = RatFunc(slots[k].embed(base), den);
    return TernaryForm(base, coeffs);
}

RatFunc TernaryForm::evaluate(const std::array<RatFunc, 3>& p) const {
    const auto& [y, z, w] = p;
    return coeffs_[0] * y * y + coeffs_[1] * z * z + coeffs_[2] * w * w + coeffs_[3] * y * z +
           coeffs_[4] * y * w + coeffs_[5] * z * w;
}

RatFunc TernaryForm::polar(const std::array<RatFunc, 3>& p, const std::array<RatFunc, 3>& r) const {
    const RatFunc two(base_, 2);
    return two * coeffs_[0] * p[0] * r[0] + two * coeffs_[1] * p[1] * r[1] + two * coeffs_[2] * p[2] * r[2] +
           coeffs_[3] * (p[0] * r[1] + p[1] * r[0]) + coeffs_[4] * (p[0] * r[2] + p[2] * r[0]) +
           coeffs_[5] * (p[1] * r[2] + p[2] * r[1]);
}

RatFunc TernaryForm::half_discriminant() const {
    const auto& [a, b, c, d, e, f] = coeffs_;
    return RatFunc(base_, 4) * a * b * c - a * f * f - b * e * e - c * d * d + d * e * f;
}

RatFunc TernaryForm::as_polynomial() const {
    const Ring fr = form_ring(field());
    const RatFunc y = RatFunc::variable(fr, "Y"), z = RatFunc::variable(fr, "Z"), w = RatFunc::variable(fr, "W");
    const std::array<RatFunc, 6> mons{y * y, z * z, w * w, y * z, y * w, z * w};
    RatFunc out(fr);
    for (std::size_t k = 0; k < 6; ++k) {
        if (!coeffs_[k].is_zero()) out += coeffs_[k].embed(fr) * mons[k];
    }
    return out;
}

TernaryForm isotropy_form(const Field& f) {
    if (f.characteristic() == 2) throw DomainError("Y^2 - xZ^2 - xW^2 is used only in characteristic != 2");
    return TernaryForm::parse("Y^2 - x*Z^2 - x*W^2", f);
}

TernaryForm char2_conic(const Field& f) {
    if (f.characteristic() != 2) throw DomainError("Z^2 + ZW + YW + xW^2 is used only in characteristic 2");
    return TernaryForm::parse("Z^2 + Z*W + Y*W + x*W^2", f);
}

// ---------------------------------------------------------------- ProjPoint2

ProjPoint2::ProjPoint2(const Ring& base, std::array<RatFunc, 3> yzw) : coords_(canonical_coords(std::move(yzw))) {
    for (const auto& c : coords_) {
        if (!(c.ring() == base)) throw MismatchError("point coordinate outside the coefficient ring");
    }
}

ProjPoint2 ProjPoint2::parse(std::string_view text, const Field& f) {
    const Ring base = coefficient_ring(f);
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    // optional "(Y : Z : W)" wrapping
    if (text.size() >= 2 && text.front() == '(' && text.back() == ')' &&
        text.find_first_of(",:") != std::string_view::npos) {
        int depth = 0;
        bool outer = true;
        for (std::size_t k = 0; k + 1 < text.size(); ++k) {
            depth += text[k] == '(' ? 1 : text[k] == ')' ? -1 : 0;
            if (depth == 0) outer = false;
        }
        if (outer) text = text.substr(1, text.size() - 2);
    }
    std::vector<std::string> parts(1);
    int depth = 0;
    for (char ch : text) {
        depth += ch == '(' ? 1 : ch == ')' ? -1 : 0;
        if (depth == 0 && (ch == ',' || ch == ':')) {
            parts.emplace_back();
        } else {
            parts.back() += ch;
        }
    }
    if (parts.size() != 3) throw ParseError("a point needs three coordinates Y,Z,W", 0);
    return ProjPoint2(base, {parse_expr(parts[0], base), parse_expr(parts[1], base), parse_expr(parts[2], base)});
}

bool operator==(const ProjPoint2& a, const ProjPoint2& b) {
    return a.coords_[0] == b.coords_[0] && a.coords_[1] == b.coords_[1] && a.coords_[2] == b.coords_[2];
}

std::string ProjPoint2::to_string() const {
    return "(" + coords_[0].to_string() + " : " + coords_[1].to_string() + " : " + coords_[2].to_string() + ")";
}

FormValue form_eval(const TernaryForm& q, const ProjPoint2& p) {
    if (!(p.base() == q.base())) throw MismatchError("point and form over different coefficient rings");
    RatFunc v = q.evaluate(p.coords());
    const bool zero = v.is_zero();
    return {std::move(v), zero};
}

// ---------------------------------------------------------------- isotropy

ObstructionRecord specialization_obstruction(const Field& f, unsigned degree_bound) {
    if (f.characteristic() == 2) throw DomainError("obstruction replay requires characteristic != 2");
    if (sqrt_minus_one(f)) throw DomainError("precondition violated: -1 is a square in " + f.name());

    ObstructionRecord rec{f, degree_bound, {}, std::nullopt, true};
    auto step = [&rec](std::string claim, bool holds) {
        rec.steps.push_back({std::move(claim), holds});
        rec.verified = rec.verified && holds;
    };

    for (unsigned d = 0; d <= degree_bound; ++d) {
        std::vector<std::string> vars{"x"};
        for (char c : {'a', 'b', 'c'}) {
            for (unsigned j = 0; j <= d; ++j) vars.push_back(std::string(1, c) + std::to_string(j));
        }
        const Ring r(f, vars);
        auto generic = [&](char c) {
            MultiPoly p(r);
            const MultiPoly x = MultiPoly::variable(r, "x");
            for (unsigned j = 0; j <= d; ++j) p += MultiPoly::variable(r, std::string(1, c) + std::to_string(j)) * x.pow(j);
            return p;
        };
        const MultiPoly A = generic('a'), B = generic('b'), C = generic('c');
        const MultiPoly x = MultiPoly::variable(r, "x");
        const MultiPoly a0 = MultiPoly::variable(r, "a0"), b0 = MultiPoly::variable(r, "b0"),
                        c0 = MultiPoly::variable(r, "c0");
        const MultiPoly E = A * A - x * (B * B + C * C);
        const std::size_t xi = r.require_index("x");
        const std::string tag = "[deg <= " + std::to_string(d) + "] ";

        const auto coeffs = E.coefficients_in(xi);
        step(tag + "x^0 coefficient of A^2 - x(B^2 + C^2) is A(0)^2, so A(0) = 0",
             !coeffs.empty() && coeffs[0] == a0 * a0);

        const MultiPoly E0 = E.substitute({{"a0", MultiPoly(r)}});
        const MultiPoly A0 = A.substitute({{"a0", MultiPoly(r)}});
        const auto a_coeffs = (A0 * A0).coefficients_in(xi);
        const bool div_x2 = a_coeffs.size() < 2 || (a_coeffs[0].is_zero() && a_coeffs[1].is_zero());
        step(tag + "with A(0) = 0 the left side A^2 is divisible by x^2", div_x2);

        const auto e_coeffs = E0.coefficients_in(xi);
        step(tag + "with A(0) = 0 the x^1 coefficient is -(B(0)^2 + C(0)^2), so B(0)^2 + C(0)^2 = 0",
             e_coeffs.size() > 1 && e_coeffs[0].is_zero() && e_coeffs[1] == -(b0 * b0 + c0 * c0));
    }

    step("[argument] after clearing denominators and dividing out the common power of x, "
         "(A(0), B(0), C(0)) != (0, 0, 0); with A(0) = 0 this leaves (B(0), C(0)) != (0, 0)",
         true);

    {
        const Ring r(f, {"b0", "c0"});
        const RatFunc b0 = RatFunc::variable(r, "b0"), c0 = RatFunc::variable(r, "c0");
        const RatFunc sum = b0 * b0 + c0 * c0;
        step("C(0) = 0 would force B(0)^2 = 0, hence B(0) = 0; so C(0) != 0",
             sum.substitute({{"c0", RatFunc(r)}}) == b0 * b0);
        step("(B(0)^2 + C(0)^2) / C(0)^2 = (B(0)/C(0))^2 + 1, so B(0)/C(0) would be a primitive "
             "4th root of unity (a square root of -1) in " + f.name(),
             sum / (c0 * c0) == (b0 / c0).pow(2) + RatFunc(r, 1));
    }

    if (f.is_finite()) {
        bool none = true;
        for (const auto& t : field_elements(f)) none = none && !(t * t == FieldElement(f, -1));
        step("exhaustive: no t in " + f.name() + " with t^2 = -1", none);

        bool unsat = true;
        const auto elems = field_elements(f);
        for (const auto& b : elems) {
            for (const auto& c : elems) {
                if (b.is_zero() && c.is_zero()) continue;
                if ((b * b + c * c).is_zero()) unsat = false;
            }
        }
        step("exhaustive: B(0)^2 + C(0)^2 = 0 has no solution with (B(0), C(0)) != (0, 0) in " + f.name(), unsat);

        if (kernels::triple_count(static_cast<std::uint32_t>(f.size()), degree_bound) != 0 &&
            kernels::triple_count(static_cast<std::uint32_t>(f.size()), degree_bound) <= 10'000'000) {
            const auto search = bounded_point_search(isotropy_form(f), degree_bound);
            rec.search_enumerated = search.enumerated;
            step("independent search over all " + std::to_string(search.enumerated) +
                     " nonzero triples of degree <= " + std::to_string(degree_bound) + " finds no point",
                 !search.point.has_value());
        }
    } else {
        step("[sign] in Q every square is >= 0, so t^2 = -1 and B(0)^2 + C(0)^2 = 0 with "
             "(B(0), C(0)) != (0, 0) are impossible",
             f.kind() == FieldKind::Rationals);
    }
    return rec;
}

IsotropyDecision paper_isotropy_decision(const Field& f, unsigned degree_bound) {
    if (f.characteristic() == 2) {
        throw DomainError("isotropy criterion is for characteristic != 2; characteristic 2 uses the explicit point");
    }
    const TernaryForm q = isotropy_form(f);
    if (auto s = sqrt_minus_one(f)) {
        const Ring base = q.base();
        ProjPoint2 w(base, {RatFunc(base), RatFunc(base, *s), RatFunc(base, 1)});
        if (!form_eval(q, w).is_point) throw std::logic_error("witness (0, s, 1) is not on the conic");
        return {true, std::move(w), std::nullopt};
    }
    return {false, std::nullopt, specialization_obstruction(f, degree_bound)};
}

PointSearchResult bounded_point_search(const TernaryForm& q, unsigned degree_bound) {
    const Field& f = q.field();
    if (!f.is_finite()) throw DomainError("bounded point search needs a finite field, got " + f.name());
    const kernels::FqArith fq(f);
    std::vector<RatFunc> cs(q.coeffs().begin(), q.coeffs().end());
    clear_denominators(cs);
    kernels::FormCoeffs form;
    for (std::size_t k = 0; k < 6; ++k) {
        const MultiPoly& p = cs[k].num();
        kernels::FqPoly dense(p.is_zero() ? 0 : static_cast<std::size_t>(p.total_degree()) + 1, 0);
        for (const auto& [m, c] : p.terms()) dense[m[0]] = static_cast<std::uint32_t>(c.index());
        form[k] = std::move(dense);
    }
    const kernels::SearchOutcome out = kernels::point_search_parallel(fq, form, degree_bound);
    PointSearchResult res{out.enumerated, out.solutions, std::nullopt};
    if (out.best) {
        const Ring& base = q.base();
        std::array<RatFunc, 3> coords{RatFunc(base), RatFunc(base), RatFunc(base)};
        for (std::size_t k = 0; k < 3; ++k) {
            MultiPoly p(base);
            for (std::size_t e = 0; e < (*out.best)[k].size(); ++e) {
                p += MultiPoly::monomial(base, Monomial{static_cast<std::uint32_t>(e)},
                                         FieldElement::from_index(f, (*out.best)[k][e]));
            }
            coords[k] = RatFunc(p);
        }
        res.point = ProjPoint2(base, coords);
    }
    return res;
}

// ---------------------------------------------------------------- parametrization

ParametrizationMap parametrize(const TernaryForm& q, const ProjPoint2& p0) {
    const FormValue at = form_eval(q, p0);
    if (!at.is_point) throw DomainError("base point " + p0.to_string() + " is not on the conic");
    if (q.half_discriminant().is_zero()) throw DomainError("degenerate conic: half-discriminant vanishes");

    const Field& f = q.field();
    const Ring prm(f, {"x", "s"});
    const Ring chart(f, {"x", "Y", "Z", "W"});

    // chart order W, Z, Y; (e1, e2) are the remaining coordinates in Y, Z, W order
    std::size_t c = 2;
    if (p0.coords()[2].is_zero()) c = p0.coords()[1].is_zero() ? 0 : 1;
    std::size_t e1 = c == 0 ? 1 : 0;
    std::size_t e2 = c == 2 ? 1 : 2;

    // Work over k(x, s): lift form and base point.
    std::array<RatFunc, 6> lifted{RatFunc(prm), RatFunc(prm), RatFunc(prm), RatFunc(prm), RatFunc(prm), RatFunc(prm)};
    for (std::size_t k = 0; k < 6; ++k) lifted[k] = q.coeffs()[k].embed(prm);
    const TernaryForm qs(prm, lifted);
    std::array<RatFunc, 3> P{p0.coords()[0].embed(prm), p0.coords()[1].embed(prm), p0.coords()[2].embed(prm)};
    std::array<RatFunc, 3> R{RatFunc(prm), RatFunc(prm), RatFunc(prm)};
    R[e1] = RatFunc(prm, 1);
    R[e2] = RatFunc::variable(prm, "s");

    const RatFunc qr = qs.evaluate(R);
    const RatFunc b = qs.polar(P, R);
    if (b.is_zero()) throw DomainError("degenerate pencil: polar form vanishes on the whole line");
    std::vector<RatFunc> fwd{qr * P[0] - b * R[0], qr * P[1] - b * R[1], qr * P[2] - b * R[2]};
    clear_denominators(fwd);

    const std::array<RatFunc, 3> pc{p0.coords()[0].embed(chart), p0.coords()[1].embed(chart),
                                    p0.coords()[2].embed(chart)};
    const std::array<RatFunc, 3> v{RatFunc::variable(chart, "Y"), RatFunc::variable(chart, "Z"),
                                   RatFunc::variable(chart, "W")};
    const RatFunc inverse = (pc[c] * v[e2] - v[c] * pc[e2]) / (pc[c] * v[e1] - v[c] * pc[e1]);

    ParametrizationMap map{prm, {fwd[0], fwd[1], fwd[2]}, chart, inverse, p0, "YZW"[c]};

    // both identities are checked here; a failure is a defect, not bad input
    if (!qs.evaluate(map.forward).is_zero()) throw std::logic_error("parametrization does not lie on the conic");
    const std::unordered_map<std::string, RatFunc> back{
        {"x", RatFunc::variable(prm, "x")}, {"Y", map.forward[0]}, {"Z", map.forward[1]}, {"W", map.forward[2]}};
    if (!(inverse.substitute(back, prm) == RatFunc::variable(prm, "s"))) {
        throw std::logic_error("inverse of the parametrization is not a left inverse");
    }
    return map;
}

}  // namespace crossratio
