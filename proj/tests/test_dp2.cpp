#include <doctest.h>

#include <algorithm>
#include <random>

#include "dpfq/dp2/conic_bundle.hpp"
#include "dpfq/error.hpp"
#include "dpfq/geom/proj.hpp"

using namespace dpfq;
using namespace dpfq::dp2;
using geom::Vec;

namespace {

ConicBundleSurface fixed_surface() {
    std::vector<int64_t> c{1, 0, 1, 0, 0, -1, 1, 0, 0, 1, 0, 0, 1, -1, 1, -1, 0, -1};
    return ConicBundleSurface::from_ints(3, c);
}

// Diagonal bundle a(s,t) x^2 + b(s,t) y^2 + c(s,t) z^2 from binary quadratics (s^2, st, t^2 coefficients).
ConicBundleSurface diagonal(uint64_t q, std::array<int64_t, 3> a, std::array<int64_t, 3> b, std::array<int64_t, 3> c) {
    std::vector<int64_t> v(18, 0);
    for (int k = 0; k < 3; ++k) {
        v[6 * k + 0] = a[k];
        v[6 * k + 3] = b[k];
        v[6 * k + 5] = c[k];
    }
    return ConicBundleSurface::from_ints(q, v);
}

ConicBundleSurface random_bundle(uint64_t q, std::mt19937_64& rng) {
    std::vector<int64_t> v(18);
    for (auto& x : v) x = static_cast<int64_t>(rng() % q);
    v[0] = 1;
    return ConicBundleSurface::from_ints(q, v);
}

bool has_singular_point(const ConicBundleSurface& X, int k) {
    auto tower = k == 1 ? ff::shared_tower(X.q(), {1}) : ff::shared_tower(X.q(), {1, k});
    const Field& L = tower->top();
    std::vector<Vec> plane;
    geom::for_each_proj_point(2, L, [&](const Vec& p) { plane.push_back(p); });
    bool found = false;
    geom::for_each_proj_point(1, L, [&](const Vec& st) {
        for (const Vec& p : plane) {
            if (found || !X.eval(st[0], st[1], p).is_zero()) continue;
            auto g = X.gradient(st[0], st[1], p);
            found = std::all_of(g.begin(), g.end(), [](const Elem& x) { return x.is_zero(); });
        }
    });
    return found;
}

int64_t ipow(int64_t b, int e) {
    int64_t r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace

TEST_CASE("the fixed surface over GF(3)") {
    auto X = fixed_surface();
    CHECK(dp2_smooth(X).smooth);
    CHECK_FALSE(has_singular_point(X, 1));
    CHECK_FALSE(has_singular_point(X, 2));

    auto disc = discriminant(X);
    CHECK(disc.degree() == 6);
    auto pts = closed_points(disc);
    std::vector<std::string> forms;
    for (const auto& p : pts) forms.push_back(p.form.to_string());
    // s^2 + st - t^2 is s^2 + st + 2t^2 over GF(3).
    CHECK(forms == std::vector<std::string>{"s", "t", "s^2 + t^2", "s^2 + s*t + [2]*t^2"});

    auto fibers = singular_fibers(X);
    REQUIRE(fibers.size() == 4);
    for (const auto& f : fibers) {
        CHECK(f.rank == 2);
        CHECK_FALSE(f.split);
    }
    CHECK(relatively_minimal(fibers));

    auto ev = frobenius_eigenvalues(X);
    std::vector<weyl::RootOfUnity> expected{{0, 1}, {0, 1}, {1, 2}, {1, 2}, {1, 4}, {1, 4}, {3, 4}, {3, 4}};
    std::sort(expected.begin(), expected.end());
    CHECK(ev == expected);
    // (t^4 - 1)^2
    CHECK(weyl::charpoly_from_roots(ev) == weyl::IntPoly{1, 0, 0, 0, -2, 0, 0, 0, 1});

    const auto& cls = classify_dp2(X);
    CHECK(cls.alias == "35");
    CHECK(weyl::geiser_twist(cls).alias == "28");
    CHECK(&weyl::geiser_twist(weyl::geiser_twist(cls)) == &cls);

    for (int n = 1; n <= 3; ++n) {
        int64_t qn = ipow(3, n);
        int64_t count = static_cast<int64_t>(count_points_dp2(X, n));
        CHECK(count == qn * qn + qn * weyl::root_power_sum(ev, n) + 1);
        if (n <= 2) CHECK(count_points_dp2_exhaustive(X, n) == static_cast<uint64_t>(count));
    }
}

TEST_CASE("diagonal bundles") {
    // diag(s^2, t^2, s^2 + t^2): determinant s^2 t^2 (s^2 + t^2).
    auto X = diagonal(5, {1, 0, 0}, {0, 0, 1}, {1, 0, 1});
    auto disc = discriminant(X);
    std::vector<int> got;
    for (const auto& c : disc.coeffs) got.push_back(static_cast<int>(c.index()));
    CHECK(got == std::vector<int>{0, 0, 1, 0, 1, 0, 0});
    CHECK_THROWS_AS(singular_fibers(X), InvalidArgument);
    auto sm = dp2_smooth(X);
    CHECK_FALSE(sm.smooth);
    REQUIRE(sm.witness.has_value());
    auto w = *sm.witness;
    auto g = X.gradient(w[0], w[1], std::vector<Elem>{w[2], w[3], w[4]});
    for (const auto& x : g) CHECK(x.is_zero());
    CHECK(has_singular_point(X, 1));

    // Distinct rational roots in all three entries; scale until every fiber splits.
    bool found_split = false;
    for (int64_t al = 1; al < 5 && !found_split; ++al)
        for (int64_t be = 1; be < 5 && !found_split; ++be)
            for (int64_t ga = 1; ga < 5 && !found_split; ++ga) {
                // a = s(s - t), b = t(s + t), c = (s - 2t)(s + 2t)
                auto Y = diagonal(5, {al, -al, 0}, {0, be, be}, {ga, 0, -4 * ga});
                REQUIRE(dp2_smooth(Y).smooth);
                auto fibers = singular_fibers(Y);
                CHECK(fibers.size() == 6);
                if (!std::all_of(fibers.begin(), fibers.end(), [](const FiberRecord& f) { return f.split; })) continue;
                found_split = true;
                auto ev = frobenius_eigenvalues(Y);
                CHECK(ev == std::vector<weyl::RootOfUnity>(8, weyl::RootOfUnity{0, 1}));
                CHECK(classify_dp2(Y).order == 1);
                CHECK(count_points_dp2(Y, 1) == 25 + 5 * 8 + 1);
            }
    CHECK(found_split);
}

TEST_CASE("smoothness agrees with a search for singular points") {
    std::mt19937_64 rng(4);
    int smooth = 0, singular = 0;
    for (int trial = 0; trial < 60; ++trial) {
        uint64_t q = trial % 2 ? 5 : 3;
        auto X = random_bundle(q, rng);
        auto ev = dp2_smooth(X);
        if (ev.smooth) {
            ++smooth;
            CHECK_FALSE(has_singular_point(X, 1));
            CHECK_FALSE(has_singular_point(X, 2));
        } else {
            ++singular;
            if (ev.witness) {
                auto w = *ev.witness;
                CHECK(X.eval(w[0], w[1], std::vector<Elem>{w[2], w[3], w[4]}).is_zero());
                auto g = X.gradient(w[0], w[1], std::vector<Elem>{w[2], w[3], w[4]});
                for (const auto& x : g) CHECK(x.is_zero());
            } else {
                // Rank <= 1 fibers and vanishing discriminants have singular points of low degree.
                bool found = false;
                for (int k = 1; k <= 3 && !found; ++k) found = has_singular_point(X, k);
                CHECK(found);
            }
        }
    }
    CHECK(smooth > 10);
    CHECK(singular > 0);
}

TEST_CASE("eigenvalues reproduce point counts") {
    std::mt19937_64 rng(15);
    int tested = 0;
    for (int trial = 0; trial < 200 && tested < 24; ++trial) {
        uint64_t q = trial % 2 ? 5 : 3;
        auto X = random_bundle(q, rng);
        if (!dp2_smooth(X).smooth) continue;
        std::vector<FiberRecord> fibers;
        try {
            fibers = singular_fibers(X);
        } catch (const InvalidArgument&) {
            continue;  // repeated discriminant roots
        }
        ++tested;
        int total = 0;
        for (const auto& f : fibers) total += f.point.degree;
        CHECK(total == 6);
        auto ev = frobenius_eigenvalues(X);
        CHECK(ev.size() == 8);
        for (int n = 1; n <= 3; ++n) {
            int64_t qn = ipow(static_cast<int64_t>(q), n);
            CHECK(static_cast<int64_t>(count_points_dp2(X, n)) == qn * qn + qn * weyl::root_power_sum(ev, n) + 1);
        }
        CHECK(count_points_dp2(X, 1) == count_points_dp2_exhaustive(X, 1));
        if (q == 3) CHECK(count_points_dp2(X, 2) == count_points_dp2_exhaustive(X, 2));
        try {
            const auto& cls = classify_dp2(X);
            CHECK(weyl::charpoly_from_roots(ev) == cls.charpoly);
            CHECK(&weyl::geiser_twist(weyl::geiser_twist(cls)) == &cls);
        } catch (const LookupError& e) {
            CHECK(e.ambiguous());
        }
    }
    CHECK(tested >= 12);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(ConicBundleSurface::from_ints(4, std::vector<int64_t>(18, 1)), InvalidArgument);
    CHECK_THROWS_AS(ConicBundleSurface::from_ints(3, std::vector<int64_t>(18, 0)), InvalidArgument);
    CHECK_THROWS_AS(ConicBundleSurface::from_ints(3, std::vector<int64_t>(17, 1)), InvalidArgument);
    std::vector<int64_t> v(18, 0);
    v[0] = 1;
    v[20 % 18] = 2;
    CHECK_NOTHROW(ConicBundleSurface::from_ints(9, v));
}
