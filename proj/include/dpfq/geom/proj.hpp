#pragma once

#include <array>
#include <functional>
#include <vector>

#include "dpfq/geom/matrix.hpp"

namespace dpfq::geom {

/// Point of projective space over a Field, normalized so the first nonzero coordinate is 1.
class ProjPoint {
public:
    explicit ProjPoint(Vec coords);

    int dim() const noexcept { return static_cast<int>(x_.size()) - 1; }
    const Vec& coords() const noexcept { return x_; }
    const Elem& operator[](int i) const { return x_.at(i); }
    const Field& field() const noexcept { return *x_.front().field(); }

    ProjPoint frobenius(int i = 1) const;
    /// Degree of the closed point: size of the Frobenius orbit.
    int degree() const;

    bool operator==(const ProjPoint& o) const noexcept { return x_ == o.x_; }
    bool operator<(const ProjPoint& o) const noexcept;

private:
    Vec x_;
};

/// Line in P^3 spanned by two distinct points, keyed by normalized Plücker coordinates
/// (p01, p02, p03, p12, p13, p23) with p_ij = a_i b_j - a_j b_i.
class ProjLine {
public:
    ProjLine(const ProjPoint& a, const ProjPoint& b);
    ProjLine(const Vec& a, const Vec& b);

    const std::array<Elem, 6>& plucker() const noexcept { return key_; }
    const Vec& a() const noexcept { return a_; }
    const Vec& b() const noexcept { return b_; }
    const Field& field() const noexcept { return *key_[0].field(); }
    /// s*a + t*b.
    Vec point(const Elem& s, const Elem& t) const;

    ProjLine frobenius(int i = 1) const;
    int degree() const;
    bool contains(const Vec& p) const;
    /// Coplanar lines; a line meets itself.
    bool meets(const ProjLine& o) const;

    bool operator==(const ProjLine& o) const noexcept { return key_ == o.key_; }
    bool operator<(const ProjLine& o) const noexcept;

private:
    Vec a_, b_;
    std::array<Elem, 6> key_;
};

/// Plücker pairing; zero iff the lines are coplanar.
Elem plucker_pairing(const std::array<Elem, 6>& p, const std::array<Elem, 6>& q);

std::vector<ProjPoint> galois_orbit(const ProjPoint& p);
std::vector<ProjLine> galois_orbit(const ProjLine& l);

/// Calls `visit` on every normalized point of P^n over f (requires f.order() to fit).
void for_each_proj_point(int n, const Field& f, const std::function<void(const Vec&)>& visit);
std::vector<ProjPoint> enumerate_proj(int n, const Field& f);

}  // namespace dpfq::geom
