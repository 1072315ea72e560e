#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "dpfq/ff/base_field.hpp"

namespace dpfq::ff {

/// Largest supported extension degree of a level over its base GF(q).
inline constexpr int kMaxDegree = 16;

class Elem;

/// GF(q^m) represented as GF(q)[x]/(g(x)) for a monic irreducible g of degree m.
///
/// Fields are immutable. Elements keep a raw pointer to their field, so a
/// field must outlive every element created from it; FieldTower owns its
/// levels through shared pointers for exactly this reason.
class Field {
public:
    Field(std::shared_ptr<const BaseField> base, std::vector<uint8_t> modulus);

    const BaseField& base() const noexcept { return *base_; }
    const std::shared_ptr<const BaseField>& base_ptr() const noexcept { return base_; }
    /// Degree over GF(q).
    int degree() const noexcept { return m_; }
    /// Degree over GF(p).
    int abs_degree() const noexcept { return m_ * static_cast<int>(base_->k()); }
    uint64_t q() const noexcept { return base_->q(); }
    /// q^m; throws if it does not fit in 64 bits.
    uint64_t order() const;
    bool order_fits() const noexcept { return order_ != 0; }
    /// Monic modulus, low degree first (size m + 1).
    const std::vector<uint8_t>& modulus() const noexcept { return modulus_; }

    Elem zero() const;
    Elem one() const;
    /// The class of x, a root of the modulus.
    Elem gen() const;
    Elem from_base(uint8_t a) const;
    Elem from_int(int64_t n) const;
    Elem from_coeffs(std::span<const uint8_t> c) const;
    /// Element whose coefficients are the base-q digits of n (enumeration order).
    Elem from_index(uint64_t n) const;
    Elem random(std::mt19937_64& rng) const;

    // Raw kernels on coefficient arrays of length degree().
    void mul(const uint8_t* a, const uint8_t* b, uint8_t* out) const noexcept;
    void frob(const uint8_t* a, uint8_t* out) const noexcept;

private:
    std::shared_ptr<const BaseField> base_;
    int m_;
    uint64_t order_;
    std::vector<uint8_t> modulus_;
    // Column i holds x^(i q) mod g, so frob is a matrix-vector product.
    std::vector<uint8_t> frob_matrix_;
};

/// An element of some Field. Value type, cheap to copy.
class Elem {
public:
    Elem() = default;

    const Field* field() const noexcept { return f_; }
    uint8_t coeff(int i) const noexcept { return c_[i]; }
    std::span<const uint8_t> coeffs() const noexcept { return {c_.data(), static_cast<size_t>(f_->degree())}; }
    bool is_zero() const noexcept;
    bool is_one() const noexcept;
    /// Lies in the base GF(q) (all non-constant coefficients zero).
    bool in_base() const noexcept;
    /// Base-q digits of the coefficients; inverse of Field::from_index.
    uint64_t index() const noexcept;

    Elem operator+(const Elem& o) const noexcept;
    Elem operator-(const Elem& o) const noexcept;
    Elem operator-() const noexcept;
    Elem operator*(const Elem& o) const noexcept;
    Elem operator/(const Elem& o) const;
    Elem& operator+=(const Elem& o) noexcept { return *this = *this + o; }
    Elem& operator-=(const Elem& o) noexcept { return *this = *this - o; }
    Elem& operator*=(const Elem& o) noexcept { return *this = *this * o; }
    bool operator==(const Elem& o) const noexcept;
    bool operator!=(const Elem& o) const noexcept { return !(*this == o); }
    /// Lexicographic on coefficient arrays (high coefficient first); any total order will do.
    bool operator<(const Elem& o) const noexcept;

    Elem pow(uint64_t e) const noexcept;
    Elem inv() const;
    /// x^(q^i).
    Elem frobenius(int i = 1) const noexcept;
    /// Least n >= 1 with x^(q^n) = x.
    int degree() const noexcept;
    /// Square test in the level (zero counts as a square). Odd q only.
    bool is_square() const;

    std::string to_string() const;

private:
    friend class Field;
    const Field* f_ = nullptr;
    std::array<uint8_t, kMaxDegree> c_{};
};

struct ElemHash {
    size_t operator()(const Elem& x) const noexcept;
};

/// x^(p^i), the absolute Frobenius.
Elem abs_frobenius(const Elem& x, int i = 1);

}  // namespace dpfq::ff
