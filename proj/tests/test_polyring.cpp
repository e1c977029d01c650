#include <algorithm>

#include <gtest/gtest.h>

#include "crossratio/parser.hpp"
#include "crossratio/poly.hpp"
#include "gen.hpp"

using namespace crossratio;

namespace {

MultiPoly P(const std::string& text, const Ring& r) {
    const RatFunc f = parse_expr(text, r);
    EXPECT_TRUE(f.den() == MultiPoly(r, 1)) << text;
    return f.num();
}

const Ring& x14(const Field& f) {
    static std::map<std::string, Ring> cache;
    auto it = cache.find(f.name());
    if (it == cache.end()) it = cache.emplace(f.name(), Ring(f, {"x1", "x2", "x3", "x4"})).first;
    return it->second;
}

}  // namespace

TEST(PolyRing, FrobeniusInCharTwo) {
    const Ring r = x14(Field::parse("F2"));
    EXPECT_EQ(P("x1+x2", r).pow(2), P("x1^2+x2^2", r));
}

TEST(PolyRing, DifferenceOfSquares) {
    const Ring r(Field::rationals(), {"w", "y", "z", "a"});
    EXPECT_EQ(P("w+z", r) * P("w-z", r), P("w^2-z^2", r));
    const auto lhs = P("w^2-z^2", r) - P("a", r) * P("w^2-y^2", r);
    EXPECT_EQ(lhs, P("(1-a)*w^2 - z^2 + a*y^2", r));
}

TEST(PolyRing, BasisChangeSubstitution) {
    const Field Q = Field::rationals();
    const Ring basis(Q, {"w", "y", "z"});
    const Ring r = x14(Q);
    const std::unordered_map<std::string, MultiPoly> defs{
        {"w", P("-x1-x2+x3+x4", r)}, {"y", P("-x1+x2+x3-x4", r)}, {"z", P("-x1+x2-x3+x4", r)}};
    EXPECT_EQ(P("(1/2)*(w+z)", basis).substitute(defs, r), P("x4-x1", r));
    EXPECT_EQ(P("(1/2)*(w-y)", basis).substitute(defs, r), P("x4-x2", r));
}

TEST(PolyRing, IdentitySubstitution) {
    const Ring r = x14(Field::rationals());
    const auto p = P("x1^2*x3 - 7*x4 + 1/3", r);
    EXPECT_EQ(p.substitute({}), p);
    std::unordered_map<std::string, MultiPoly> id;
    for (const auto& v : r.variables()) id.emplace(v, MultiPoly::variable(r, v));
    EXPECT_EQ(p.substitute(id), p);
}

TEST(PolyRing, CharTwoRelationVanishes) {
    const Field F2 = Field::parse("F2");
    const Ring xyz(F2, {"x", "y", "z"});
    const Ring au(F2, {"a", "u"});
    const auto image = P("z^2+z+y+x", xyz).substitute(
        {{"y", P("u*(1+u)", au)}, {"z", P("a+u", au)}, {"x", P("a*(1+a)", au)}}, au);
    EXPECT_TRUE(image.is_zero());
}

TEST(PolyRing, EvaluationAtZeroKeepsConstantSquare) {
    const Field Q = Field::rationals();
    const Ring r(Q, {"x"});
    gen::Gen g(3);
    for (int n = 0; n < 50; ++n) {
        const auto A = g.poly(r), B = g.poly(r), C = g.poly(r);
        const auto e = A * A - P("x", r) * (B * B + C * C);
        const auto zero = FieldElement::zero(Q);
        const auto a0 = A.evaluate({{"x", zero}});
        EXPECT_EQ(e.evaluate({{"x", zero}}), a0 * a0);
    }
}

TEST(PolyRing, EvaluationExamples) {
    const Field Q = Field::rationals();
    const Ring r = x14(Q);
    EXPECT_TRUE(MultiPoly(r).evaluate(std::unordered_map<std::string, FieldElement>{}).is_zero());
    const std::unordered_map<std::string, FieldElement> pt{
        {"x1", FieldElement(Q, 0)}, {"x2", FieldElement(Q, 1)}, {"x3", FieldElement(Q, 2)}, {"x4", FieldElement(Q, 3)}};
    const auto w = P("-x1-x2+x3+x4", r), y = P("-x1+x2+x3-x4", r);
    const auto direct = (w * w - y * y).evaluate(pt);
    const auto wv = w.evaluate(pt), yv = y.evaluate(pt);
    EXPECT_EQ(wv, FieldElement(Q, 4));
    EXPECT_TRUE(yv.is_zero());
    EXPECT_EQ(direct, wv * wv - yv * yv);
    EXPECT_EQ(direct, FieldElement(Q, 16));
}

TEST(PolyRing, Derivatives) {
    const Ring q(Field::rationals(), {"x", "w", "a"});
    EXPECT_EQ(P("x^2", q).derivative("x"), P("2*x", q));
    EXPECT_EQ(P("(1-a)*w^2", q).derivative("w"), P("2*(1-a)*w", q));
    const Ring f2(Field::parse("F2"), {"x"});
    EXPECT_TRUE(P("x^2", f2).derivative("x").is_zero());
}

TEST(PolyRing, CanonicalText) {
    const Ring r = x14(Field::rationals());
    EXPECT_EQ(P("x2 + x1^2 - 1/2", r).to_string(), "x1^2 + x2 - 1/2");
    EXPECT_EQ(MultiPoly(r).to_string(), "0");
    EXPECT_EQ(P("3*x1*x4^2", r).to_string(), "3*x1*x4^2");
}

TEST(PolyRing, Errors) {
    const Ring a = x14(Field::rationals());
    const Ring b(Field::rationals(), {"y"});
    EXPECT_THROW(MultiPoly::variable(a, "x1") + MultiPoly::variable(b, "y"), MismatchError);
    EXPECT_THROW(MultiPoly::variable(a, "x1").substitute({}, b), DomainError);
    EXPECT_THROW(MultiPoly::variable(a, "x1").evaluate(std::unordered_map<std::string, FieldElement>{}), DomainError);
    EXPECT_THROW(MultiPoly::variable(a, "x1").derivative("q"), DomainError);
    EXPECT_THROW(Ring(Field::rationals(), {"x", "x"}), DomainError);
}

// ---------------------------------------------------------------- laws

namespace {

const std::vector<Field>& poly_fields() {
    static const std::vector<Field> fs{Field::parse("Q"), Field::parse("Q(i)"), Field::parse("F2"),
                                       Field::parse("F5"), Field::parse("F3(i)")};
    return fs;
}

}  // namespace

TEST(PolyRingLaws, RingAxioms) {
    gen::Gen g(101);
    for (const auto& f : poly_fields()) {
        const Ring r(f, {"x", "y", "z"});
        for (int n = 0; n < gen::kCases; ++n) {
            const auto p = g.poly(r), q = g.poly(r), s = g.poly(r);
            ASSERT_EQ((p + q) + s, p + (q + s)) << n;
            ASSERT_EQ((p * q) * s, p * (q * s)) << n;
            ASSERT_EQ(p * q, q * p) << n;
            ASSERT_EQ(p * (q + s), p * q + p * s) << n;
            ASSERT_TRUE((p - p).is_zero()) << n;
        }
    }
}

TEST(PolyRingLaws, SubstitutionIsHomomorphism) {
    gen::Gen g(102);
    for (const auto& f : poly_fields()) {
        const Ring src(f, {"x", "y", "z"});
        const Ring dst(f, {"s", "t"});
        for (int n = 0; n < gen::kCases; ++n) {
            const std::unordered_map<std::string, MultiPoly> phi{
                {"x", g.poly(dst, 3, 2)}, {"y", g.poly(dst, 3, 2)}, {"z", g.poly(dst, 3, 2)}};
            const auto p = g.poly(src, 3, 2), q = g.poly(src, 3, 2);
            ASSERT_EQ((p + q).substitute(phi, dst), p.substitute(phi, dst) + q.substitute(phi, dst)) << n;
            ASSERT_EQ((p * q).substitute(phi, dst), p.substitute(phi, dst) * q.substitute(phi, dst)) << n;
        }
    }
}

TEST(PolyRingLaws, EvaluationIgnoresVariableOrder) {
    gen::Gen g(103);
    for (const auto& f : poly_fields()) {
        const Ring r(f, {"x", "y", "z"});
        const Ring rev(f, {"z", "y", "x"});
        for (int n = 0; n < gen::kCases; ++n) {
            const auto p = g.poly(r);
            const std::vector<FieldElement> v{g.element(f), g.element(f), g.element(f)};
            const std::vector<FieldElement> vr{v[2], v[1], v[0]};
            ASSERT_EQ(p.evaluate(v), p.embed(rev).evaluate(vr)) << n;
            ASSERT_EQ(p.evaluate(v), p.evaluate({{"x", v[0]}, {"y", v[1]}, {"z", v[2]}})) << n;
        }
    }
}

TEST(PolyRingLaws, EvaluationMatchesSubstitution) {
    gen::Gen g(104);
    for (const auto& f : poly_fields()) {
        const Ring r(f, {"x", "y"});
        const Ring none(f, {"c"});
        for (int n = 0; n < gen::kCases; ++n) {
            const auto p = g.poly(r);
            const auto a = g.element(f), b = g.element(f);
            const auto sub = p.substitute({{"x", MultiPoly(none, a)}, {"y", MultiPoly(none, b)}}, none);
            ASSERT_TRUE(sub.is_constant()) << n;
            ASSERT_EQ(sub.constant_term(), p.evaluate({{"x", a}, {"y", b}})) << n;
        }
    }
}

TEST(PolyRingLaws, LeibnizRule) {
    gen::Gen g(105);
    for (const auto& f : poly_fields()) {
        const Ring r(f, {"x", "y", "z"});
        for (int n = 0; n < gen::kCases; ++n) {
            const auto p = g.poly(r), q = g.poly(r);
            const std::size_t v = static_cast<std::size_t>(g.range(0, 2));
            ASSERT_EQ((p * q).derivative(v), p.derivative(v) * q + p * q.derivative(v)) << n;
        }
    }
}

TEST(PolyRingLaws, CanonicalFormAndTextRoundTrip) {
    gen::Gen g(106);
    for (const auto& f : poly_fields()) {
        const Ring r(f, {"x", "y", "z"});
        for (int n = 0; n < gen::kCases; ++n) {
            const auto p = g.poly(r), q = g.poly(r);
            const auto back = (p + q) - q;
            ASSERT_EQ(back, p) << n;
            ASSERT_TRUE(back.terms() == p.terms()) << n;
            for (const auto& [m, c] : back.terms()) ASSERT_FALSE(c.is_zero());
            ASSERT_TRUE(std::is_sorted(back.terms().begin(), back.terms().end(),
                                       [](const auto& a, const auto& b) { return GrlexLess{}(a.first, b.first); }));
            ASSERT_EQ(P(p.to_string(), r), p) << p.to_string();
        }
    }
}
