#include "dpfq/geom/proj.hpp"

#include <algorithm>
#include <numeric>

#include "dpfq/error.hpp"

namespace dpfq::geom {

namespace {

void normalize(Vec& v) {
    auto it = std::find_if(v.begin(), v.end(), [](const Elem& e) { return !e.is_zero(); });
    if (it == v.end()) throw InvalidArgument("zero vector is not a projective point");
    Elem inv = it->inv();
    for (auto& e : v) e *= inv;
}

bool lex_less(const Vec& a, const Vec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

ProjPoint::ProjPoint(Vec coords) : x_(std::move(coords)) {
    if (x_.size() < 2) throw InvalidArgument("projective point needs at least two coordinates");
    normalize(x_);
}

ProjPoint ProjPoint::frobenius(int i) const {
    Vec y;
    y.reserve(x_.size());
    for (const auto& e : x_) y.push_back(e.frobenius(i));
    return ProjPoint(std::move(y));
}

int ProjPoint::degree() const {
    int d = 1;
    for (const auto& e : x_) d = std::lcm(d, e.degree());
    return d;
}

bool ProjPoint::operator<(const ProjPoint& o) const noexcept { return lex_less(x_, o.x_); }

ProjLine::ProjLine(const ProjPoint& a, const ProjPoint& b) : ProjLine(a.coords(), b.coords()) {}

ProjLine::ProjLine(const Vec& a, const Vec& b) : a_(a), b_(b) {
    if (a.size() != 4 || b.size() != 4) throw InvalidArgument("lines live in P^3");
    const Field& f = *a[0].field();
    Vec key(6, f.zero());
    int k = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) key[k++] = a[i] * b[j] - a[j] * b[i];
    normalize(key);  // throws if a and b are proportional
    std::copy(key.begin(), key.end(), key_.begin());
}

Vec ProjLine::point(const Elem& s, const Elem& t) const {
    Vec p(4, s);
    for (int i = 0; i < 4; ++i) p[i] = s * a_[i] + t * b_[i];
    return p;
}

ProjLine ProjLine::frobenius(int i) const {
    Vec a, b;
    for (int k = 0; k < 4; ++k) {
        a.push_back(a_[k].frobenius(i));
        b.push_back(b_[k].frobenius(i));
    }
    return ProjLine(a, b);
}

int ProjLine::degree() const {
    int d = 1;
    for (const auto& e : key_) d = std::lcm(d, e.degree());
    return d;
}

bool ProjLine::contains(const Vec& p) const {
    // p is on the line iff the 3x4 matrix [a; b; p] has rank 2.
    Matrix m = Matrix::from_rows(field(), {a_, b_, p});
    return m.rank() == 2;
}

bool ProjLine::meets(const ProjLine& o) const { return plucker_pairing(key_, o.key_).is_zero(); }

bool ProjLine::operator<(const ProjLine& o) const noexcept {
    return std::lexicographical_compare(key_.begin(), key_.end(), o.key_.begin(), o.key_.end());
}

Elem plucker_pairing(const std::array<Elem, 6>& p, const std::array<Elem, 6>& q) {
    return p[0] * q[5] - p[1] * q[4] + p[2] * q[3] + p[3] * q[2] - p[4] * q[1] + p[5] * q[0];
}

std::vector<ProjPoint> galois_orbit(const ProjPoint& p) {
    std::vector<ProjPoint> orbit{p};
    for (ProjPoint x = p.frobenius(); !(x == p); x = x.frobenius()) orbit.push_back(x);
    return orbit;
}

std::vector<ProjLine> galois_orbit(const ProjLine& l) {
    std::vector<ProjLine> orbit{l};
    for (ProjLine x = l.frobenius(); !(x == l); x = x.frobenius()) orbit.push_back(x);
    return orbit;
}

void for_each_proj_point(int n, const Field& f, const std::function<void(const Vec&)>& visit) {
    uint64_t Q = f.order();
    Vec v(n + 1, f.zero());
    // Leading 1 in position lead, arbitrary after, zero before.
    for (int lead = n; lead >= 0; --lead) {
        std::fill(v.begin(), v.end(), f.zero());
        v[lead] = f.one();
        int free = n - lead;
        std::vector<uint64_t> idx(free, 0);
        while (true) {
            for (int i = 0; i < free; ++i) v[lead + 1 + i] = f.from_index(idx[i]);
            visit(v);
            int i = free - 1;
            while (i >= 0 && ++idx[i] == Q) idx[i--] = 0;
            if (i < 0) break;
        }
    }
}

std::vector<ProjPoint> enumerate_proj(int n, const Field& f) {
    std::vector<ProjPoint> pts;
    for_each_proj_point(n, f, [&](const Vec& v) { pts.emplace_back(v); });
    return pts;
}

}  // namespace dpfq::geom
