#pragma once

#include <cstdint>
#include <vector>

#include "dpfq/ff/field.hpp"

namespace dpfq::ff {

/// GF(Q) by discrete logarithms and a Zech table, for Q up to 2^22.
///
/// An element is its logarithm to a fixed primitive element, in [0, Q-2];
/// zero is the value Q - 1. Built from a Field level, whose elements map in
/// and out through index().
class TableField {
public:
    explicit TableField(const Field& f);

    uint32_t order() const noexcept { return Q_; }
    uint32_t zero() const noexcept { return Q_ - 1; }
    uint32_t one() const noexcept { return 0; }
    bool is_zero(uint32_t a) const noexcept { return a == Q_ - 1; }

    uint32_t mul(uint32_t a, uint32_t b) const noexcept {
        if (a == Q_ - 1 || b == Q_ - 1) return Q_ - 1;
        uint32_t s = a + b;
        return s >= Q_ - 1 ? s - (Q_ - 1) : s;
    }
    uint32_t add(uint32_t a, uint32_t b) const noexcept {
        if (a == Q_ - 1) return b;
        if (b == Q_ - 1) return a;
        uint32_t d = b >= a ? b - a : b + (Q_ - 1) - a;
        uint32_t z = zech_[d];
        return z == Q_ - 1 ? z : mul(a, z);
    }
    uint32_t neg(uint32_t a) const noexcept { return mul(a, minus_one_); }
    uint32_t sub(uint32_t a, uint32_t b) const noexcept { return add(a, neg(b)); }
    /// Undefined for zero.
    uint32_t inv(uint32_t a) const noexcept { return a == 0 ? 0 : Q_ - 1 - a; }

    uint32_t from_elem(const Elem& x) const { return log_of_index_.at(x.index()); }
    Elem to_elem(uint32_t a) const;
    /// Element with Field index i (0 <= i < Q).
    uint32_t from_index(uint64_t i) const { return log_of_index_.at(i); }
    const Field& field() const noexcept { return *f_; }

private:
    const Field* f_;
    uint32_t Q_;
    uint32_t minus_one_;
    std::vector<uint32_t> zech_;          // zech_[k] = log(1 + g^k)
    std::vector<uint32_t> log_of_index_;  // Field index -> log
    std::vector<uint32_t> index_of_log_;
};

/// Number of distinct roots in GF(Q) of c0 + c1 x + c2 x^2 + c3 x^3 (table elements);
/// Q when the polynomial is zero.
uint32_t count_roots_cubic(const TableField& F, uint32_t c0, uint32_t c1, uint32_t c2, uint32_t c3);

}  // namespace dpfq::ff
