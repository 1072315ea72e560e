#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace dpfq::ff {

/// GF(q) with q = p^k <= 256, fully table driven.
///
/// An element is a byte index: the base-p digits of its coefficient vector
/// over GF(p) in the polynomial basis 1, a, a^2, ... of GF(p)[a]/(m(a)).
/// Index 0 is zero and index 1 is one.
class BaseField {
public:
    static std::shared_ptr<const BaseField> make(uint32_t p, uint32_t k, uint64_t seed = 0);

    uint32_t p() const noexcept { return p_; }
    uint32_t k() const noexcept { return k_; }
    uint32_t q() const noexcept { return q_; }
    uint64_t seed() const noexcept { return seed_; }

    /// Modulus over GF(p) for k > 1, low degree first; {0, 1} for k == 1.
    const std::vector<uint32_t>& modulus() const noexcept { return modulus_; }

    uint8_t add(uint8_t a, uint8_t b) const noexcept { return add_[a * q_ + b]; }
    uint8_t sub(uint8_t a, uint8_t b) const noexcept { return add_[a * q_ + neg_[b]]; }
    uint8_t neg(uint8_t a) const noexcept { return neg_[a]; }
    uint8_t mul(uint8_t a, uint8_t b) const noexcept { return mul_[a * q_ + b]; }
    /// Undefined for a == 0.
    uint8_t inv(uint8_t a) const noexcept { return inv_[a]; }
    /// The integer n reduced into the prime field.
    uint8_t from_int(int64_t n) const noexcept;

private:
    BaseField() = default;

    uint32_t p_ = 0, k_ = 0, q_ = 0;
    uint64_t seed_ = 0;
    std::vector<uint32_t> modulus_;
    std::vector<uint8_t> add_, mul_, neg_, inv_;
};

bool is_prime(uint64_t n) noexcept;

/// Splits q into (p, k) with q = p^k; throws if q is not a prime power.
std::pair<uint32_t, uint32_t> prime_power(uint64_t q);

}  // namespace dpfq::ff
