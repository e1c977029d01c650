#include "crossratio/automorphism.hpp"

namespace crossratio {

Automorphism::Automorphism(const Ring& ring, std::unordered_map<std::string, RatFunc> images)
    : ring_(ring), images_(std::move(images)) {
    for (const auto& v : ring_.variables()) {
        auto it = images_.find(v);
        if (it == images_.end()) throw DomainError("automorphism has no image for variable '" + v + "'");
        if (!(it->second.ring() == ring_)) throw MismatchError("image of '" + v + "' lies in another ring");
    }
    for (const auto& [name, img] : images_) {
        if (!ring_.has_variable(name)) throw DomainError("image given for unknown variable '" + name + "'");
    }
}

Automorphism Automorphism::identity(const Ring& ring) {
    std::unordered_map<std::string, RatFunc> images;
    for (const auto& v : ring.variables()) images.emplace(v, RatFunc::variable(ring, v));
    Automorphism id(ring, std::move(images));
    id.verified_order_ = 1;
    return id;
}

const RatFunc& Automorphism::image(std::string_view var) const {
    auto it = images_.find(std::string(var));
    if (it == images_.end()) throw DomainError("no image for '" + std::string(var) + "'");
    return it->second;
}

bool Automorphism::is_identity() const {
    for (const auto& v : ring_.variables()) {
        if (!(image(v) == RatFunc::variable(ring_, v))) return false;
    }
    return true;
}

bool Automorphism::same_map(const Automorphism& other) const {
    if (!(ring_ == other.ring_)) return false;
    for (const auto& v : ring_.variables()) {
        if (!(image(v) == other.image(v))) return false;
    }
    return true;
}

unsigned Automorphism::verify_order(unsigned max) {
    if (max < 1) throw DomainError("order bound must be at least 1");
    Automorphism power = *this;
    for (unsigned m = 1; m <= max; ++m) {
        if (power.is_identity()) {
            verified_order_ = m;
            return m;
        }
        try {
            power = compose(*this, power);
        } catch (const DivisionByZero&) {
            throw DomainError("automorphism is not invertible (degenerate power)");
        }
    }
    throw DomainError("order exceeds bound " + std::to_string(max) + " or map is not invertible");
}

std::string Automorphism::to_string() const {
    std::string out;
    for (const auto& v : ring_.variables()) {
        out += v + " -> " + image(v).to_string() + "\n";
    }
    return out;
}

Automorphism compose(const Automorphism& sigma, const Automorphism& tau) {
    if (!(sigma.ring() == tau.ring())) throw MismatchError("composing automorphisms of different rings");
    std::unordered_map<std::string, RatFunc> images;
    for (const auto& v : tau.ring().variables()) images.emplace(v, sigma.apply(tau.image(v)));
    return Automorphism(tau.ring(), std::move(images));
}

Automorphism perm_automorphism(const Ring& ring, const Perm& pi) {
    if (pi.size() != ring.num_variables()) {
        throw MismatchError("permutation of " + std::to_string(pi.size()) + " points on a ring with " +
                            std::to_string(ring.num_variables()) + " variables");
    }
    std::unordered_map<std::string, RatFunc> images;
    for (std::size_t i = 0; i < pi.size(); ++i) {
        const int target = pi(static_cast<int>(i + 1)) - 1;
        images.emplace(ring.variables()[i], RatFunc::variable(ring, ring.variables()[static_cast<std::size_t>(target)]));
    }
    return Automorphism(ring, std::move(images));
}

Automorphism moebius_automorphism(const Ring& ring, const std::vector<std::string>& vars, const RatFunc& alpha,
                                  const RatFunc& beta, const RatFunc& gamma, const RatFunc& delta) {
    if ((alpha * delta - beta * gamma).is_zero()) throw DomainError("Moebius matrix has zero determinant");
    std::unordered_map<std::string, RatFunc> images;
    for (const auto& v : ring.variables()) images.emplace(v, RatFunc::variable(ring, v));
    for (const auto& v : vars) {
        const RatFunc x = RatFunc::variable(ring, v);
        images.insert_or_assign(v, (alpha * x + beta) / (gamma * x + delta));
    }
    return Automorphism(ring, std::move(images));
}

}  // namespace crossratio
