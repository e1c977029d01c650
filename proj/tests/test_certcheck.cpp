#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "crossratio/certificate.hpp"
#include "crossratio/parser.hpp"
#include "gen.hpp"

using namespace crossratio;

namespace {

const std::string kCertDir = std::string(CROSSRATIO_DATA_DIR) + "/certificates/";
const std::vector<std::string> kCertNames{"kb_sigma",  "kbu_sigma",  "ka_char2",
                                          "kau_char2", "conic_sigma2", "conic_char2"};

const std::vector<Field>& all_fields() {
    static const std::vector<Field> fs = [] {
        std::vector<Field> v;
        for (const char* n : {"Q", "Q(i)", "F2", "F3", "F5", "F7", "F101", "F3(i)", "F7(i)"})
            v.push_back(Field::parse(n));
        return v;
    }();
    return fs;
}

Certificate load(const std::string& name) { return Certificate::load(kCertDir + name + ".cert"); }

// Replace the value of the first line starting with `key`.
std::string with_line(std::string text, const std::string& key, const std::string& value) {
    const auto at = text.find("\n" + key);
    EXPECT_NE(at, std::string::npos) << key;
    const auto end = text.find('\n', at + 1);
    return text.replace(at + 1, end - at - 1, key + value);
}

std::string read_text(const std::string& name) {
    std::ifstream in(kCertDir + name + ".cert");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(CertCheck, AllCertificatesPassOnApplicableFields) {
    int checked = 0;
    for (const auto& name : kCertNames) {
        const Certificate c = load(name);
        for (const auto& f : all_fields()) {
            if (!c.applies_to(f)) {
                EXPECT_THROW(verify_certificate(c, f), DomainError);
                continue;
            }
            const CertReport r = verify_certificate(c, f);
            EXPECT_TRUE(r.passed) << name << " over " << f.name() << "\n" << r.to_string();
            EXPECT_EQ(r.group_order, 2u) << name;
            ASSERT_EQ(r.conditions.size(), 4u);
            for (int k = 0; k < 4; ++k) EXPECT_EQ(r.conditions[k].number, k + 1);
            EXPECT_FALSE(r.first_failure);
            EXPECT_NE(r.to_string().find(kArtinAxiom), std::string::npos);
            ++checked;
        }
    }
    // Three char != 2 certificates over eight fields, three char 2 certificates over F2.
    EXPECT_EQ(checked, 3 * 8 + 3);
}

TEST(CertCheck, FieldClasses) {
    EXPECT_TRUE(load("kb_sigma").applies_to(Field::parse("F3(i)")));
    EXPECT_FALSE(load("kb_sigma").applies_to(Field::parse("F2")));
    EXPECT_TRUE(load("ka_char2").applies_to(Field::parse("F2")));
    EXPECT_FALSE(load("ka_char2").applies_to(Field::rationals()));
    auto c = load("kb_sigma");
    c.field_spec = "F5";
    EXPECT_TRUE(c.applies_to(Field::parse("F5")));
    EXPECT_FALSE(c.applies_to(Field::parse("F7")));
}

TEST(CertCheck, PerturbedCertificateFailsInvariance) {
    const Certificate c = Certificate::load(std::string(CROSSRATIO_DATA_DIR) + "/fixtures/kbu_sigma_perturbed.cert");
    for (const char* fname : {"Q", "F5"}) {
        const CertReport r = verify_certificate(c, Field::parse(fname));
        EXPECT_FALSE(r.passed);
        ASSERT_TRUE(r.first_failure);
        EXPECT_EQ(*r.first_failure, 1);
        EXPECT_FALSE(r.conditions[0].passed);
        EXPECT_NE(r.conditions[0].detail.find("generator y"), std::string::npos) << r.conditions[0].detail;
        EXPECT_NE(r.to_string().find("(1) FAIL"), std::string::npos);
    }
}

TEST(CertCheck, ParsedFields) {
    const Certificate c = load("kbu_sigma");
    EXPECT_EQ(c.name, "kbu-sigma");
    EXPECT_EQ(c.field_spec, "char != 2");
    EXPECT_EQ(c.variables, (std::vector<std::string>{"b", "u"}));
    EXPECT_EQ(c.group, std::vector<std::string>{"sigma"});
    EXPECT_EQ(c.images.at("sigma").at("u"), "-1/u");
    ASSERT_EQ(c.generators.size(), 3u);
    EXPECT_EQ(c.generators[1].first, "y");
    EXPECT_EQ(c.primitive.first, "t");
    EXPECT_EQ(c.relation, "T^2 - 2*z*T - 1");
    EXPECT_FALSE(c.algebraic);
    EXPECT_TRUE(load("conic_sigma2").algebraic);
}

TEST(CertCheck, ParseErrors) {
    const std::string good = read_text("kb_sigma");
    EXPECT_NO_THROW(Certificate::parse(good));
    try {
        Certificate::parse("name: x\nfield: Q\nbogus line\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 3u);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
    try {
        Certificate::parse("name: x\n# comment\nwhatever: 1\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 3u);
        EXPECT_NE(std::string(e.what()).find("unknown key"), std::string::npos);
    }
    EXPECT_THROW(Certificate::parse(with_line(good, "relation:", "")), ParseError);
    EXPECT_THROW(Certificate::parse(good + "image sigma b: b\n"), ParseError);
    EXPECT_THROW(Certificate::parse("field: Q\n"), ParseError);
    EXPECT_THROW(Certificate::load("/nonexistent/file.cert"), DomainError);
}

TEST(CertCheck, MalformedGroups) {
    const std::string good = read_text("kb_sigma");
    const Field Q = Field::rationals();
    // b -> b + 1 has infinite order over Q.
    EXPECT_THROW(verify_certificate(Certificate::parse(with_line(good, "image sigma b:", " b + 1")), Q), DomainError);
    // Unknown symbol in the images.
    EXPECT_THROW(verify_certificate(Certificate::parse(good + "image sigma q: q\n"), Q), DomainError);
    // The algebraic relation must be preserved.
    const std::string conic = read_text("conic_sigma2");
    EXPECT_THROW(verify_certificate(Certificate::parse(with_line(conic, "image tau t:", " t + 1")), Q), DomainError);
}

TEST(CertCheck, WrongRelationFailsLaterConditions) {
    const std::string good = read_text("kb_sigma");
    const Field Q = Field::rationals();
    // Vanishes at t = b but has degree 3.
    const auto cubic = verify_certificate(Certificate::parse(with_line(good, "relation:", " T^3 - x*T")), Q);
    EXPECT_FALSE(cubic.passed);
    EXPECT_EQ(cubic.first_failure, 4);
    EXPECT_TRUE(cubic.conditions[1].passed);
    // Degree two but does not vanish.
    const auto off = verify_certificate(Certificate::parse(with_line(good, "relation:", " T^2 - x - 1")), Q);
    EXPECT_EQ(off.first_failure, 2);
    // Expression does not recover b.
    const auto expr = verify_certificate(Certificate::parse(with_line(good, "express b:", " 2*t")), Q);
    EXPECT_EQ(expr.first_failure, 3);
}

// Equality is semantic: rewriting a generator into an equal expression keeps the verdict.
TEST(CertCheck, SemanticStability) {
    const std::string text = read_text("kbu_sigma");
    for (const char* fname : {"Q", "F3", "F101"}) {
        const Field f = Field::parse(fname);
        for (const char* y : {" (b*u^2 + b)/(2*u)", " b*(u^2+1)/(2*u)", " (b/4)*(2*u + 2/u)"}) {
            const auto r = verify_certificate(Certificate::parse(with_line(text, "generator y:", y)), f);
            EXPECT_TRUE(r.passed) << y << " over " << fname << "\n" << r.to_string();
        }
        const auto r = verify_certificate(Certificate::parse(with_line(text, "generator x:", " b*b")), f);
        EXPECT_TRUE(r.passed) << fname;
        const auto e = verify_certificate(Certificate::parse(with_line(text, "express b:", " y/((1/2)*(t + 1/t))")), f);
        EXPECT_TRUE(e.passed) << fname;
    }
}

TEST(CertCheck, CompiledGroup) {
    const CompiledCertificate cc(load("kbu_sigma"), Field::rationals());
    ASSERT_EQ(cc.group().size(), 2u);
    EXPECT_EQ(cc.generator_orders(), std::vector<unsigned>{2});
    EXPECT_EQ(cc.ambient_symbols(), (std::vector<std::string>{"b", "u"}));
    const auto& sigma = cc.group()[1];
    EXPECT_EQ(cc.apply(sigma, cc.element("u")), cc.element("-1/u"));
    EXPECT_EQ(cc.apply(sigma, cc.apply(sigma, cc.element("b*u"))), cc.element("b*u"));
    EXPECT_EQ(cc.primitive(), cc.element("u"));

    const CompiledCertificate conic(load("conic_sigma2"), Field::parse("F5"));
    EXPECT_EQ(conic.ambient_symbols(), (std::vector<std::string>{"a", "u", "t"}));
    const auto t = conic.element("t");
    EXPECT_EQ(t * t, conic.element("(1 - a)*u^2 + a"));
    EXPECT_EQ(conic.apply(conic.group()[1], t), -t);
}

// ---------------------------------------------------------------- laws

// Random field expressions in the generators are fixed by every element of H.
TEST(CertCheckLaws, GeneratorExpressionsAreInvariant) {
    gen::Gen g(701);
    int cases = 0;
    for (const auto& name : kCertNames) {
        const Certificate c = load(name);
        for (const char* fname : {"Q", "F5", "F2"}) {
            const Field f = Field::parse(fname);
            if (!c.applies_to(f)) continue;
            const CompiledCertificate cc(c, f);
            const auto& gens = cc.generator_values();
            const int n_cases = f.characteristic() == 2 ? 300 : 100;
            for (int n = 0; n < n_cases; ++n) {
                auto pick = [&] { return gens[static_cast<std::size_t>(g.range(0, static_cast<long>(gens.size()) - 1))].second; };
                auto konst = [&] { return QuadExt::base(nullptr, RatFunc(cc.ring(), g.element(f))); };
                QuadExt num = konst() * pick() + konst() * pick() * pick() + konst();
                QuadExt den = pick() + konst();
                if (den.is_zero()) continue;
                const QuadExt e = num / den;
                for (const auto& h : cc.group()) ASSERT_EQ(cc.apply(h, e), e) << name << " over " << fname << " case " << n;
                ++cases;
            }
        }
    }
    EXPECT_GE(cases, gen::kCases);
}

TEST(CertCheckLaws, QuadraticExtensionArithmetic) {
    gen::Gen g(702);
    for (const char* fname : {"Q", "F5", "F2"}) {
        const Field f = Field::parse(fname);
        const Ring r(f, {"a"});
        // t^2 = t + a in char 2, t^2 = a otherwise: irreducible over k(a).
        const RatFunc c1 = f.characteristic() == 2 ? RatFunc(r, 1) : RatFunc(r);
        auto mod = std::make_shared<const QuadExt::Modulus>(QuadExt::Modulus{c1, RatFunc::variable(r, "a")});
        const QuadExt t = QuadExt::root(mod, r);
        EXPECT_EQ(t * t, QuadExt(mod, RatFunc::variable(r, "a"), c1));
        auto rnd = [&] { return QuadExt(mod, g.ratfunc(r, 2, 2), g.ratfunc(r, 2, 2)); };
        for (int n = 0; n < gen::kCases; ++n) {
            const QuadExt x = rnd(), y = rnd(), z = rnd();
            ASSERT_EQ((x * y) * z, x * (y * z)) << n;
            ASSERT_EQ(x * (y + z), x * y + x * z) << n;
            ASSERT_EQ(x * y, y * x) << n;
            ASSERT_EQ((x * y).norm(), x.norm() * y.norm()) << n;
            if (!x.is_zero()) {
                ASSERT_EQ(x * x.inverse(), QuadExt::base(mod, RatFunc(r, 1))) << n;
            }
        }
        EXPECT_EQ(t.pow(3), t * t * t);
    }
}
