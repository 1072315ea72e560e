#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "dpfq/cubic/form.hpp"
#include "dpfq/ff/tower.hpp"

namespace dpfq::cubic {

/// Cubic surface over GF(q): 20 coefficients (base-field indices) in the order of
/// cubic_exponents(), scaled so the first nonzero coefficient is 1.
class CubicSurface {
public:
    CubicSurface(std::shared_ptr<const ff::FieldTower> tower, std::array<uint8_t, 20> coeffs);
    /// Integers are reduced mod p when q is prime; otherwise each must be a field index in [0, q).
    static CubicSurface from_ints(uint64_t q, std::span<const int64_t> coeffs, uint64_t seed = 0);
    static CubicSurface from_form(std::shared_ptr<const ff::FieldTower> tower, const CubicForm& f);

    uint64_t q() const noexcept { return tower_->q(); }
    uint64_t seed() const noexcept { return tower_->seed(); }
    const ff::FieldTower& tower() const noexcept { return *tower_; }
    std::shared_ptr<const ff::FieldTower> tower_ptr() const noexcept { return tower_; }
    const std::array<uint8_t, 20>& coeffs() const noexcept { return c_; }

    /// The form over the base level of tower().
    CubicForm form() const;
    /// The form over any level whose base field is this surface's GF(q).
    CubicForm form_in(const Field& level) const;
    /// x -> f(T x), T over GF(q).
    CubicSurface transform(const geom::Matrix& T) const;

    bool operator==(const CubicSurface& o) const noexcept { return q() == o.q() && c_ == o.c_; }

private:
    std::shared_ptr<const ff::FieldTower> tower_;
    std::array<uint8_t, 20> c_;
};

struct SmoothnessEvidence {
    bool smooth = false;
    std::string strategy;  // "macaulay-degree-6"
    int rank = 0;
    int columns = 0;
};

/// Smooth iff f and its four partials have no common zero over the algebraic closure.
/// Decided by the rank of the degree-6 part of the ideal (f, df/dx0, ..., df/dx3): the
/// ideal is irrelevant exactly when it contains every sextic monomial.
SmoothnessEvidence is_smooth(const CubicSurface& X);

/// The same test for a form over GF(2) given as a 20-bit mask (bit m = coefficient m).
bool is_smooth_gf2(uint32_t mask);

/// #X(GF(q^n)) by fibers over P^2: the point (1:0:0:0), then roots in x0 of f(x0, v).
uint64_t count_points(const CubicSurface& X, int n);
/// #X(GF(q^n)) by evaluating f at every point of P^3 (small fields only).
uint64_t count_points_exhaustive(const CubicSurface& X, int n);

/// t_n = (#X(GF(q^n)) - q^{2n} - 1) / q^n for n = 1..N; throws if some t_n is not an
/// integer in [-7, 7].
std::vector<int64_t> trace_vector(const CubicSurface& X, int N);
/// The field GF(q^n) compatible with X's coefficients.
const Field& extension_level(const CubicSurface& X, int n);

}  // namespace dpfq::cubic
