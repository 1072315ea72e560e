#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dpfq/ff/tower.hpp"
#include "dpfq/geom/matrix.hpp"
#include "dpfq/weyl/classes.hpp"

namespace dpfq::dp2 {

using ff::Elem;
using ff::Field;

/// Coefficients of x^2, xy, xz, y^2, yz, z^2 as base-field indices.
using TernaryQuadratic = std::array<uint8_t, 6>;

/// Surface s^2 Q0(x,y,z) + st Q1(x,y,z) + t^2 Q2(x,y,z) = 0 in P^1 x P^2 over GF(q), q odd.
class ConicBundleSurface {
public:
    ConicBundleSurface(std::shared_ptr<const ff::FieldTower> tower, std::array<TernaryQuadratic, 3> forms);
    /// 18 integers: Q0, Q1, Q2 in turn, each in the order x^2, xy, xz, y^2, yz, z^2. Integers are
    /// reduced mod p for prime q; otherwise they must be field indices in [0, q).
    static ConicBundleSurface from_ints(uint64_t q, std::span<const int64_t> coeffs, uint64_t seed = 0);

    uint64_t q() const noexcept { return tower_->q(); }
    uint64_t seed() const noexcept { return tower_->seed(); }
    const ff::FieldTower& tower() const noexcept { return *tower_; }
    const std::array<TernaryQuadratic, 3>& forms() const noexcept { return forms_; }

    /// Symmetric matrix of the conic over (s : t), entries in `level`.
    geom::Matrix matrix_at(const Elem& s, const Elem& t) const;
    Elem eval(const Elem& s, const Elem& t, std::span<const Elem> p) const;
    /// Partial derivatives in s, t, x, y, z.
    std::array<Elem, 5> gradient(const Elem& s, const Elem& t, std::span<const Elem> p) const;

private:
    Elem form_value(int k, std::span<const Elem> p) const;
    std::array<Elem, 3> form_gradient(int k, std::span<const Elem> p) const;

    std::shared_ptr<const ff::FieldTower> tower_;
    std::array<TernaryQuadratic, 3> forms_;
};

/// Binary form sum_i c[i] s^i t^(n-i) over GF(q).
struct BinaryForm {
    std::vector<Elem> coeffs;
    int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
    bool is_zero() const noexcept;
    std::string to_string() const;
};

/// Closed point of P^1: an irreducible binary form (monic in s, or t itself) and its degree.
struct ClosedPoint {
    BinaryForm form;
    int degree = 1;
    int multiplicity = 1;
};

/// det M(s, t), a binary sextic (zero if every fiber is singular).
BinaryForm discriminant(const ConicBundleSurface& X);
/// Irreducible factors of a nonzero binary form with multiplicities.
std::vector<ClosedPoint> closed_points(const BinaryForm& f, uint64_t seed = 0);

struct Dp2Smoothness {
    bool smooth = false;
    std::string strategy;  // "discriminant-kernel"
    /// A singular point (s, t, x, y, z) over GF(q^d) when not smooth and one exists at a finite level.
    std::optional<std::array<Elem, 5>> witness;
    std::string reason;
};

/// Smooth iff det M is not identically zero and at every root (s : t) the matrix has rank 2
/// with kernel vector p satisfying (dF/ds, dF/dt)(s, t, p) != 0. Exact: singular points lie
/// over roots of det M at the kernel of M, and a rank <= 1 fiber always carries one.
Dp2Smoothness dp2_smooth(const ConicBundleSurface& X);

struct FiberRecord {
    ClosedPoint point;
    int rank = 3;
    bool split = false;
};

/// One record per closed point of the discriminant. Throws InvalidArgument if the
/// discriminant is zero or not squarefree, or if some fiber has rank <= 1.
std::vector<FiberRecord> singular_fibers(const ConicBundleSurface& X);

/// Rank-2 ternary quadratic form over a field: true if its two lines are defined over that field.
bool rank2_conic_splits(const geom::Matrix& M);

/// Eigenvalues of Frobenius on Pic of the surface (8 of them): 1, 1 for the base and fiber
/// classes; for a singular fiber over a degree-d point the d-th roots of unity if it splits,
/// otherwise the 2d-th roots of unity that are not d-th roots.
std::vector<weyl::RootOfUnity> frobenius_eigenvalues(const ConicBundleSurface& X);
/// Whether every singular fiber is non-split (the conic bundle is relatively minimal).
bool relatively_minimal(const std::vector<FiberRecord>& fibers);

/// The E7 class with these eigenvalues; throws LookupError if none or several match.
const weyl::ClassRecord& classify_dp2(const ConicBundleSurface& X);

/// #X(GF(q^n)) from the conic over each point of P^1(GF(q^n)).
uint64_t count_points_dp2(const ConicBundleSurface& X, int n);
/// #X(GF(q^n)) by evaluating the form on all of P^1 x P^2 (small fields only).
uint64_t count_points_dp2_exhaustive(const ConicBundleSurface& X, int n);

}  // namespace dpfq::dp2
