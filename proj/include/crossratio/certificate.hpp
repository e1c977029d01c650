#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "crossratio/ratfunc.hpp"

namespace crossratio {

/// Element alpha + beta*t of K[t]/(t^2 - c1*t - c0) over K = k(vars).
/// Without a modulus the ambient is K itself and beta stays zero.
class QuadExt {
public:
    struct Modulus {
        RatFunc c1;
        RatFunc c0;
    };

    QuadExt(std::shared_ptr<const Modulus> mod, RatFunc alpha, RatFunc beta);
    static QuadExt base(std::shared_ptr<const Modulus> mod, RatFunc alpha);
    /// The adjoined root t; requires a modulus.
    static QuadExt root(std::shared_ptr<const Modulus> mod, const Ring& ring);

    const RatFunc& alpha() const noexcept { return alpha_; }
    const RatFunc& beta() const noexcept { return beta_; }
    const Ring& ring() const noexcept { return alpha_.ring(); }
    bool is_zero() const { return alpha_.is_zero() && beta_.is_zero(); }

    QuadExt operator-() const;
    QuadExt& operator+=(const QuadExt& o);
    QuadExt& operator-=(const QuadExt& o);
    QuadExt& operator*=(const QuadExt& o);
    QuadExt& operator/=(const QuadExt& o);
    friend QuadExt operator+(QuadExt a, const QuadExt& b) { return a += b; }
    friend QuadExt operator-(QuadExt a, const QuadExt& b) { return a -= b; }
    friend QuadExt operator*(QuadExt a, const QuadExt& b) { return a *= b; }
    friend QuadExt operator/(QuadExt a, const QuadExt& b) { return a /= b; }
    QuadExt pow(long e) const;
    /// Conjugate alpha + beta*c1 - beta*t over the norm, which must be nonzero.
    QuadExt inverse() const;
    /// alpha^2 + alpha*beta*c1 - beta^2*c0.
    RatFunc norm() const;

    friend bool operator==(const QuadExt& a, const QuadExt& b) {
        return a.alpha_ == b.alpha_ && a.beta_ == b.beta_;
    }

    std::string to_string(std::string_view root_name = "t") const;

private:
    std::shared_ptr<const Modulus> mod_;
    RatFunc alpha_;
    RatFunc beta_;
};

/// Text form of a certificate, as read from a `.cert` file.
///
///   name: <label>
///   field: char != 2 | char 2 | <field name>
///   variables: b, u
///   algebraic t: t^2 - ((1-a)*u^2 + a)        (optional)
///   group: sigma
///   image sigma b: -b
///   generator x: b^2
///   primitive t: u
///   relation: T^2 - 2*z*T - 1                 (T is reserved)
///   express b: 2*y*t/(t^2+1)
///
/// Lines starting with `#` are comments.
struct Certificate {
    std::string name;
    std::string field_spec;
    std::vector<std::string> variables;
    std::optional<std::pair<std::string, std::string>> algebraic;  // root name, monic quadratic
    std::vector<std::string> group;                                // generator names
    std::map<std::string, std::map<std::string, std::string>> images;
    std::vector<std::pair<std::string, std::string>> generators;
    std::pair<std::string, std::string> primitive;
    std::string relation;
    std::vector<std::pair<std::string, std::string>> expressions;

    static Certificate parse(std::string_view text);
    static Certificate load(const std::string& path);

    /// Whether `f` belongs to the certificate's field class.
    bool applies_to(const Field& f) const;
};

/// A certificate instantiated over one field: every expression parsed into
/// the ambient, and the group closed.
class CompiledCertificate {
public:
    using Images = std::vector<QuadExt>;  // indexed like ambient_symbols()

    CompiledCertificate(const Certificate& cert, const Field& f);

    const Certificate& source() const noexcept { return cert_; }
    const Field& field() const noexcept { return ring_.field(); }
    /// Base ring k(vars).
    const Ring& ring() const noexcept { return ring_; }
    /// Variables plus the adjoined root, in that order.
    const std::vector<std::string>& ambient_symbols() const noexcept { return symbols_; }

    QuadExt element(std::string_view text) const;
    /// Apply a group element given by the images of the ambient symbols.
    QuadExt apply(const Images& h, const QuadExt& e) const;
    /// Value of a polynomial in the ambient symbols at the given images.
    QuadExt evaluate_at(const RatFunc& f, const Images& point) const;

    /// Closed group H, identity first.
    const std::vector<Images>& group() const noexcept { return group_; }
    /// Orders of the declared generators, each verified.
    const std::vector<unsigned>& generator_orders() const noexcept { return orders_; }
    const std::vector<std::pair<std::string, QuadExt>>& generator_values() const noexcept { return gens_; }
    const QuadExt& primitive() const noexcept { return *primitive_; }

    std::string describe(const Images& h) const;

private:
    Images compose(const Images& g, const Images& h) const;
    Images identity() const;

    Certificate cert_;
    Ring ring_;
    std::shared_ptr<const QuadExt::Modulus> mod_;
    std::vector<std::string> symbols_;
    std::vector<Images> group_;
    std::vector<std::string> group_labels_;
    std::vector<unsigned> orders_;
    std::vector<std::pair<std::string, QuadExt>> gens_;
    std::optional<QuadExt> primitive_;
};

struct ConditionResult {
    int number;  // 1..4
    std::string label;
    bool passed;
    std::string detail;
};

struct CertReport {
    std::string name;
    Field field;
    std::size_t group_order;
    std::string group_detail;
    std::vector<ConditionResult> conditions;
    bool passed;
    std::optional<int> first_failure;

    std::string to_string() const;
};

/// Stated in every report: verification relies on this classical fact.
inline constexpr const char* kArtinAxiom =
    "axiom (Artin): a finite group H of automorphisms of L gives [L : L^H] = |H|";

/// Checks, in order: (1) generators invariant under H, (2) relation vanishes at
/// the primitive element, (3) each variable equals its expression, (4) the
/// relation is monic of degree |H|. Throws on malformed input or a group that
/// does not close within 24 elements.
CertReport verify_certificate(const Certificate& cert, const Field& f);

}  // namespace crossratio
