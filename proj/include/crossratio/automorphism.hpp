#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "crossratio/perm.hpp"
#include "crossratio/ratfunc.hpp"

namespace crossratio {

/// Field automorphism of k(x1..xn) given by the images of the variables.
/// Application is substitution: sigma(f) = f(sigma(x1), ..., sigma(xn)).
class Automorphism {
public:
    /// Every ring variable needs an image in the same ring.
    Automorphism(const Ring& ring, std::unordered_map<std::string, RatFunc> images);

    static Automorphism identity(const Ring& ring);

    const Ring& ring() const noexcept { return ring_; }
    const std::unordered_map<std::string, RatFunc>& images() const noexcept { return images_; }
    const RatFunc& image(std::string_view var) const;
    /// 0 until auto_order() succeeds.
    unsigned verified_order() const noexcept { return verified_order_; }

    RatFunc apply(const RatFunc& f) const { return f.substitute(images_, ring_); }

    /// Least m <= max with sigma^m = id on every variable; stores it.
    /// Throws DomainError when no such m exists.
    unsigned verify_order(unsigned max = 24);

    bool is_identity() const;
    bool fixes(const RatFunc& f) const { return apply(f) == f; }

    /// Semantic equality of the variable images.
    bool same_map(const Automorphism& other) const;

    std::string to_string() const;

private:
    Ring ring_;
    std::unordered_map<std::string, RatFunc> images_;
    unsigned verified_order_ = 0;
};

/// (sigma o tau)(f) = sigma(tau(f)).
Automorphism compose(const Automorphism& sigma, const Automorphism& tau);

/// x_i -> x_{pi(i)} on the variables of `ring`, which must number pi.size().
Automorphism perm_automorphism(const Ring& ring, const Perm& pi);

/// x_i -> (alpha x_i + beta) / (gamma x_i + delta) for every variable x_i in
/// `vars`; the entries live in `ring` and may be symbolic.
Automorphism moebius_automorphism(const Ring& ring, const std::vector<std::string>& vars, const RatFunc& alpha,
                                  const RatFunc& beta, const RatFunc& gamma, const RatFunc& delta);

}  // namespace crossratio
