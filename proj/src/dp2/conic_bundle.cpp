#include "dpfq/dp2/conic_bundle.hpp"

#include <algorithm>
#include <sstream>

#include "dpfq/error.hpp"
#include "dpfq/ff/bipoly.hpp"
#include "dpfq/ff/poly.hpp"
#include "dpfq/geom/proj.hpp"

namespace dpfq::dp2 {

using ff::UniPoly;
using geom::Matrix;
using geom::Vec;

namespace {

// Monomial exponents of x^2, xy, xz, y^2, yz, z^2.
constexpr int kQuadExp[6][3] = {{2, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2}};

const Field& level_of(const ff::FieldTower& tower, int n) {
    if (n == 1) return tower.base();
    return ff::shared_tower(tower.q(), {1, n}, tower.seed())->top();
}

}  // namespace

ConicBundleSurface::ConicBundleSurface(std::shared_ptr<const ff::FieldTower> tower, std::array<TernaryQuadratic, 3> forms)
    : tower_(std::move(tower)), forms_(forms) {
    if (tower_->p() == 2) throw InvalidArgument("conic bundles are supported in odd characteristic only");
    bool nonzero = false;
    for (const auto& f : forms_)
        for (uint8_t c : f) {
            if (c >= tower_->q()) throw InvalidArgument("coefficient index out of range");
            nonzero |= c != 0;
        }
    if (!nonzero) throw InvalidArgument("form is identically zero");
}

ConicBundleSurface ConicBundleSurface::from_ints(uint64_t q, std::span<const int64_t> coeffs, uint64_t seed) {
    if (coeffs.size() != 18) throw InvalidArgument("a (2,2) conic bundle needs 18 coefficients");
    auto tower = ff::shared_tower(q, {1}, seed);
    const ff::BaseField& F = tower->base().base();
    std::array<TernaryQuadratic, 3> forms{};
    for (int k = 0; k < 18; ++k) {
        uint8_t c;
        if (F.k() == 1)
            c = F.from_int(coeffs[k]);
        else if (coeffs[k] < 0 || static_cast<uint64_t>(coeffs[k]) >= q)
            throw InvalidArgument("coefficients over GF(" + std::to_string(q) + ") must be indices in [0, q)");
        else
            c = static_cast<uint8_t>(coeffs[k]);
        forms[k / 6][k % 6] = c;
    }
    return ConicBundleSurface(tower, forms);
}

Elem ConicBundleSurface::form_value(int k, std::span<const Elem> p) const {
    const Field& F = *p[0].field();
    Elem r = F.zero();
    for (int m = 0; m < 6; ++m) {
        if (!forms_[k][m]) continue;
        Elem term = F.from_base(forms_[k][m]);
        for (int v = 0; v < 3; ++v)
            for (int e = 0; e < kQuadExp[m][v]; ++e) term *= p[v];
        r += term;
    }
    return r;
}

std::array<Elem, 3> ConicBundleSurface::form_gradient(int k, std::span<const Elem> p) const {
    const Field& F = *p[0].field();
    std::array<Elem, 3> g{F.zero(), F.zero(), F.zero()};
    for (int m = 0; m < 6; ++m) {
        if (!forms_[k][m]) continue;
        for (int v = 0; v < 3; ++v) {
            if (!kQuadExp[m][v]) continue;
            Elem term = F.from_base(forms_[k][m]) * F.from_int(kQuadExp[m][v]);
            for (int w = 0; w < 3; ++w)
                for (int e = 0; e < kQuadExp[m][w] - (w == v ? 1 : 0); ++e) term *= p[w];
            g[v] += term;
        }
    }
    return g;
}

Elem ConicBundleSurface::eval(const Elem& s, const Elem& t, std::span<const Elem> p) const {
    return s * s * form_value(0, p) + s * t * form_value(1, p) + t * t * form_value(2, p);
}

std::array<Elem, 5> ConicBundleSurface::gradient(const Elem& s, const Elem& t, std::span<const Elem> p) const {
    const Field& F = *s.field();
    Elem two = F.from_int(2);
    Elem q0 = form_value(0, p), q1 = form_value(1, p), q2 = form_value(2, p);
    auto g0 = form_gradient(0, p), g1 = form_gradient(1, p), g2 = form_gradient(2, p);
    std::array<Elem, 5> g;
    g[0] = two * s * q0 + t * q1;
    g[1] = s * q1 + two * t * q2;
    for (int v = 0; v < 3; ++v) g[2 + v] = s * s * g0[v] + s * t * g1[v] + t * t * g2[v];
    return g;
}

Matrix ConicBundleSurface::matrix_at(const Elem& s, const Elem& t) const {
    const Field& F = *s.field();
    Elem half = F.from_int(2).inv();
    std::array<Elem, 3> w{s * s, s * t, t * t};
    Matrix M(F, 3, 3);
    for (int k = 0; k < 3; ++k)
        for (int m = 0; m < 6; ++m) {
            if (!forms_[k][m]) continue;
            Elem c = w[k] * F.from_base(forms_[k][m]);
            int i = -1, j = -1;
            for (int v = 0; v < 3; ++v)
                for (int e = 0; e < kQuadExp[m][v]; ++e) (i < 0 ? i : j) = v;
            if (i == j) {
                M.at(i, i) += c;
            } else {
                M.at(i, j) += c * half;
                M.at(j, i) += c * half;
            }
        }
    return M;
}

bool BinaryForm::is_zero() const noexcept {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Elem& c) { return c.is_zero(); });
}

std::string BinaryForm::to_string() const {
    std::ostringstream out;
    int n = degree();
    bool first = true;
    for (int i = n; i >= 0; --i) {
        const Elem& c = coeffs[i];
        if (c.is_zero()) continue;
        if (!first) out << " + ";
        first = false;
        std::string mono;
        if (i > 0) mono += i == 1 ? "s" : "s^" + std::to_string(i);
        if (n - i > 0) mono += (mono.empty() ? "" : "*") + std::string(n - i == 1 ? "t" : "t^" + std::to_string(n - i));
        if (!c.is_one() || mono.empty()) out << c.to_string() << (mono.empty() ? "" : "*");
        out << mono;
    }
    return first ? "0" : out.str();
}

namespace {

// det M(u, 1) as a polynomial in u over GF(q).
UniPoly det_in_u(const ConicBundleSurface& X) {
    const Field& F = X.tower().base();
    std::vector<std::vector<UniPoly>> m(3, std::vector<UniPoly>(3, UniPoly(F)));
    // M(u, 1) = u^2 M0 + u M1 + M2, with Mk the matrix of form k.
    std::array<Matrix, 3> parts{X.matrix_at(F.one(), F.zero()), Matrix(F, 3, 3), X.matrix_at(F.zero(), F.one())};
    Matrix sum = X.matrix_at(F.one(), F.one());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) parts[1].at(i, j) = sum.at(i, j) - parts[0].at(i, j) - parts[2].at(i, j);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = UniPoly(F, {parts[2].at(i, j), parts[1].at(i, j), parts[0].at(i, j)});
    return ff::poly_determinant(m);
}

}  // namespace

BinaryForm discriminant(const ConicBundleSurface& X) {
    UniPoly d = det_in_u(X);
    BinaryForm b;
    for (int i = 0; i <= 6; ++i) b.coeffs.push_back(d[i]);
    if (d.degree() > 6) throw InternalError("discriminant degree exceeds 6");
    return b;
}

std::vector<ClosedPoint> closed_points(const BinaryForm& f, uint64_t seed) {
    if (f.is_zero()) throw InvalidArgument("the zero binary form has no closed points");
    const Field& F = *f.coeffs.front().field();
    UniPoly u(F, f.coeffs);
    std::vector<ClosedPoint> out;
    int at_infinity = f.degree() - u.degree();
    if (at_infinity > 0) {
        BinaryForm t;
        t.coeffs = {F.one(), F.zero()};  // t
        out.push_back({t, 1, at_infinity});
    }
    if (u.degree() >= 1)
        for (auto& [g, mult] : ff::factor(u, seed)) {
            BinaryForm b;
            b.coeffs = g.monic().coeffs();
            out.push_back({b, g.degree(), mult});
        }
    std::sort(out.begin(), out.end(), [](const ClosedPoint& a, const ClosedPoint& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        return a.form.coeffs < b.form.coeffs;
    });
    return out;
}

namespace {

// A root (s : t) of the closed point, over GF(q^d).
std::pair<Elem, Elem> root_of(const ConicBundleSurface& X, const ClosedPoint& pt, uint64_t seed) {
    const Field& L = level_of(X.tower(), pt.degree);
    const auto& c = pt.form.coeffs;
    if (c.size() == 2 && c[0].is_one() && c[1].is_zero()) return {L.one(), L.zero()};  // t = 0
    if (pt.degree == 1) return {-UniPoly(L, c).monic()[0], L.one()};
    auto tower = ff::shared_tower(X.q(), {1, pt.degree}, X.seed());
    std::vector<Elem> moved;
    for (const Elem& x : c) moved.push_back(ff::transfer(x, tower->base()));
    return {ff::edf_find_root(*tower, UniPoly(tower->base(), moved), 1, seed), L.one()};
}

Vec kernel_vector(const Matrix& M) {
    auto k = M.kernel();
    if (k.size() != 1) throw InternalError("expected a one-dimensional kernel");
    return k.front();
}

}  // namespace

Dp2Smoothness dp2_smooth(const ConicBundleSurface& X) {
    Dp2Smoothness ev;
    ev.strategy = "discriminant-kernel";
    BinaryForm disc = discriminant(X);
    if (disc.is_zero()) {
        // Every fiber is singular: the vertices of the fibers trace out a curve of singular points.
        ev.reason = "discriminant vanishes identically";
        return ev;
    }
    for (const ClosedPoint& pt : closed_points(disc)) {
        auto [s, t] = root_of(X, pt, 0);
        Matrix M = X.matrix_at(s, t);
        int rank = M.rank();
        if (rank <= 1) {
            ev.reason = "fiber over " + pt.form.to_string() + " has rank " + std::to_string(rank);
            return ev;
        }
        Vec p = kernel_vector(M);
        auto g = X.gradient(s, t, p);
        if (g[0].is_zero() && g[1].is_zero()) {
            ev.reason = "singular point on the fiber over " + pt.form.to_string();
            ev.witness = std::array<Elem, 5>{s, t, p[0], p[1], p[2]};
            return ev;
        }
    }
    ev.smooth = true;
    return ev;
}

bool rank2_conic_splits(const Matrix& M) {
    const Field& F = M.field();
    Vec p = kernel_vector(M);
    // Restrict to a coordinate line missing the vertex.
    std::vector<Vec> cand;
    for (int i = 0; i < 3; ++i) {
        Vec e(3, F.zero());
        e[i] = F.one();
        cand.push_back(e);
    }
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            if (Matrix::from_rows(F, {p, cand[i], cand[j]}).determinant().is_zero()) continue;
            // Q(l e_i + m e_j) = alpha l^2 + beta l m + gamma m^2.
            Elem alpha = M.at(i, i), gamma = M.at(j, j), beta = M.at(i, j) + M.at(j, i);
            Elem disc = beta * beta - F.from_int(4) * alpha * gamma;
            return disc.is_square();
        }
    throw InternalError("no line avoids the vertex");
}

std::vector<FiberRecord> singular_fibers(const ConicBundleSurface& X) {
    BinaryForm disc = discriminant(X);
    if (disc.is_zero()) throw InvalidArgument("discriminant vanishes identically");
    std::vector<FiberRecord> out;
    for (const ClosedPoint& pt : closed_points(disc)) {
        if (pt.multiplicity > 1) throw InvalidArgument("discriminant is not squarefree at " + pt.form.to_string());
        auto [s, t] = root_of(X, pt, 0);
        Matrix M = X.matrix_at(s, t);
        FiberRecord r{pt, M.rank(), false};
        if (r.rank <= 1) throw InvalidArgument("non-reduced fiber over " + pt.form.to_string());
        r.split = rank2_conic_splits(M);
        out.push_back(r);
    }
    return out;
}

bool relatively_minimal(const std::vector<FiberRecord>& fibers) {
    return std::none_of(fibers.begin(), fibers.end(), [](const FiberRecord& f) { return f.split; });
}

std::vector<weyl::RootOfUnity> frobenius_eigenvalues(const ConicBundleSurface& X) {
    if (!dp2_smooth(X).smooth) throw InvalidArgument("surface is not smooth");
    std::vector<weyl::RootOfUnity> ev{{0, 1}, {0, 1}};
    int total = 0;
    for (const FiberRecord& f : singular_fibers(X)) {
        int d = f.point.degree;
        total += d;
        if (f.split)
            for (int k = 0; k < d; ++k) ev.emplace_back(k, d);
        else
            for (int k = 1; k < 2 * d; k += 2) ev.emplace_back(k, 2 * d);
    }
    if (total != 6) throw InternalError("singular fibers do not account for the sextic discriminant");
    std::sort(ev.begin(), ev.end());
    return ev;
}

const weyl::ClassRecord& classify_dp2(const ConicBundleSurface& X) {
    return weyl::WeylTable::get(7).lookup_eigenvalues(frobenius_eigenvalues(X));
}

uint64_t count_points_dp2(const ConicBundleSurface& X, int n) {
    const Field& L = level_of(X.tower(), n);
    uint64_t Q = L.order();
    uint64_t total = 0;
    auto fiber = [&](const Elem& s, const Elem& t) -> uint64_t {
        Matrix M = X.matrix_at(s, t);
        switch (M.rank()) {
            case 3: return Q + 1;
            case 2: return rank2_conic_splits(M) ? 2 * Q + 1 : 1;
            case 1: return Q + 1;
            default: return Q * Q + Q + 1;
        }
    };
    total += fiber(L.one(), L.zero());
    for (uint64_t i = 0; i < Q; ++i) total += fiber(L.from_index(i), L.one());
    return total;
}

uint64_t count_points_dp2_exhaustive(const ConicBundleSurface& X, int n) {
    const Field& L = level_of(X.tower(), n);
    std::vector<Vec> plane;
    geom::for_each_proj_point(2, L, [&](const Vec& p) { plane.push_back(p); });
    uint64_t total = 0;
    geom::for_each_proj_point(1, L, [&](const Vec& st) {
        for (const Vec& p : plane) total += X.eval(st[0], st[1], p).is_zero();
    });
    return total;
}

}  // namespace dpfq::dp2
