#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace dpfq::weyl {

constexpr int kMaxRank = 8;
constexpr int kMaxCurves = 56;

/// Lattice vector in the basis (h, e_1, ..., e_r), padded with zeros.
using LatVec = std::array<int, kMaxRank>;
/// Integer matrix acting on column vectors; only the leading (r+1)x(r+1) block is used.
using IntMatrix = std::array<std::array<int64_t, kMaxRank>, kMaxRank>;
/// Integer polynomial, low degree first.
using IntPoly = std::vector<int64_t>;

/// Z^{1,r} with form diag(1, -1, ..., -1), canonical class K = -3h + sum e_i, and the
/// exceptional classes in a fixed order:
///   r = 6: e_i; h - e_i - e_j (i < j); 2h - sum_{k != i} e_k.                (6 + 15 + 6)
///   r = 7: e_i; h - e_i - e_j (i < j); 2h - sum_{k not in {i,j}} e_k (i < j); 3h - sum e_k - e_i.
class Lattice {
public:
    explicit Lattice(int r);

    int r() const noexcept { return r_; }
    int rank() const noexcept { return r_ + 1; }
    int num_curves() const noexcept { return static_cast<int>(curves_.size()); }
    const std::vector<LatVec>& curves() const noexcept { return curves_; }
    const LatVec& curve(int i) const { return curves_.at(i); }
    const LatVec& canonical() const noexcept { return K_; }
    /// e_i - e_{i+1} (i = 1..r-1) and h - e_1 - e_2 - e_3.
    const std::vector<LatVec>& simple_roots() const noexcept { return roots_; }

    int dot(const LatVec& a, const LatVec& b) const noexcept;
    /// Index of an exceptional class, or -1.
    int index_of(const LatVec& v) const;
    std::string label(int idx) const;

private:
    int r_;
    std::vector<LatVec> curves_;
    std::vector<LatVec> roots_;
    LatVec K_{};
};

const Lattice& lattice(int r);

/// Weyl group element stored as its permutation of the exceptional classes:
/// the curve i goes to img[i]. Composition (a * b) applies b first.
class WeylElement {
public:
    WeylElement() = default;
    static WeylElement identity(const Lattice& L);
    /// s(x) = x + (x.alpha) alpha for a root alpha (alpha.alpha = -2).
    static WeylElement reflection(const Lattice& L, const LatVec& alpha);
    /// Permutation induced by a lattice automorphism; throws if some curve is not sent to a curve.
    static WeylElement from_matrix(const Lattice& L, const IntMatrix& m);
    /// Curve i goes to perm[i]; throws unless this is induced by an isometry fixing K.
    static WeylElement from_permutation(const Lattice& L, const std::vector<int>& perm);

    int size() const noexcept { return n_; }
    int operator[](int i) const { return img_[i]; }
    WeylElement operator*(const WeylElement& o) const;
    bool operator==(const WeylElement& o) const noexcept { return n_ == o.n_ && img_ == o.img_; }
    WeylElement inverse() const;
    WeylElement pow(int64_t e) const;

    /// Matrix on the lattice recovered from the images of e_1..e_r and h - e_1 - e_2.
    IntMatrix matrix(const Lattice& L) const;
    /// Orbit lengths, sorted descending.
    std::vector<int> cycle_type() const;
    int order() const;
    /// Images of e_1..e_r and h - e_1 - e_2 packed 6 bits each; determines the element.
    uint64_t key(const Lattice& L) const;

private:
    int n_ = 0;
    std::array<uint8_t, kMaxCurves> img_{};
};

struct WeylElementHash {
    size_t operator()(const WeylElement& w) const noexcept;
};

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b, int n);
IntMatrix mat_identity(int n);
int64_t mat_trace(const IntMatrix& a, int n);
LatVec mat_apply(const IntMatrix& a, const LatVec& v, int n);

/// det(t I - M) by the Faddeev-LeVerrier recursion.
IntPoly charpoly(const IntMatrix& m, int n);
/// Monic degree-n polynomial with power sums p_1..p_n = traces[0..n-1] (Newton identities).
IntPoly charpoly_from_traces(const std::vector<int64_t>& traces, int n);
/// Power sums p_1..p_count of the roots of a monic polynomial.
std::vector<int64_t> power_sums(const IntPoly& monic, int count);

/// n-th cyclotomic polynomial.
IntPoly cyclotomic(int n);
IntPoly poly_mul(const IntPoly& a, const IntPoly& b);
std::string poly_to_string(const IntPoly& p);

/// Root of unity exp(2 pi i num / den), kept reduced with 0 <= num < den.
struct RootOfUnity {
    int num = 0, den = 1;
    RootOfUnity() = default;
    RootOfUnity(int n, int d);
    int order() const noexcept { return den; }
    bool operator==(const RootOfUnity&) const = default;
    auto operator<=>(const RootOfUnity&) const = default;
    std::string to_string() const;
};

/// prod (t - z) over a multiset closed under Galois conjugation; throws otherwise.
IntPoly charpoly_from_roots(const std::vector<RootOfUnity>& roots);
/// sum z^n, exact (the multiset must be Galois-closed).
int64_t root_power_sum(const std::vector<RootOfUnity>& roots, int n);

}  // namespace dpfq::weyl
