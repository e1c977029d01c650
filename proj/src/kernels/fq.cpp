#include "crossratio/kernels.hpp"

namespace crossratio::kernels {

FqArith::FqArith(const Field& f) {
    if (!f.is_finite()) throw DomainError("kernel arithmetic needs a finite field, got " + f.name());
    if (f.size() > (1U << 20)) throw DomainError("field " + f.name() + " is too large for brute-force kernels");
    p_ = static_cast<std::uint32_t>(f.modulus());
    q_ = static_cast<std::uint32_t>(f.size());
    inverse_.assign(q_, 0);
    // a^{-1} = a^{q-2} in the multiplicative group of order q - 1
    for (std::uint32_t a = 1; a < q_; ++a) {
        std::uint32_t result = 1, base = a;
        for (std::uint32_t e = q_ - 2; e > 0; e >>= 1) {
            if (e & 1U) result = mul(result, base);
            base = mul(base, base);
        }
        inverse_[a] = result;
    }
}

}  // namespace crossratio::kernels
