#include <doctest.h>

#include <random>

#include "dpfq/cubic/surface.hpp"
#include "dpfq/error.hpp"
#include "dpfq/ff/table_field.hpp"
#include "dpfq/geom/proj.hpp"

using namespace dpfq;
using namespace dpfq::cubic;

namespace {

std::array<uint8_t, 20> random_coeffs(uint64_t q, std::mt19937_64& rng) {
    std::array<uint8_t, 20> c{};
    do {
        for (auto& x : c) x = static_cast<uint8_t>(rng() % q);
    } while (c == std::array<uint8_t, 20>{});
    return c;
}

CubicSurface random_surface(uint64_t q, std::mt19937_64& rng) {
    return CubicSurface(ff::shared_tower(q, {1}), random_coeffs(q, rng));
}

// Brute force: a common zero of f and all partials over GF(q^k).
bool has_singular_point(const CubicSurface& X, int k) {
    const Field& level = extension_level(X, k);
    CubicForm f = X.form_in(level);
    bool found = false;
    geom::for_each_proj_point(3, level, [&](const geom::Vec& p) {
        if (found || !f.eval(p).is_zero()) return;
        auto g = f.gradient(p);
        found = g[0].is_zero() && g[1].is_zero() && g[2].is_zero() && g[3].is_zero();
    });
    return found;
}

// Independent count with Elem arithmetic over the whole of P^3.
uint64_t count_by_elems(const CubicSurface& X, int n) {
    const Field& level = extension_level(X, n);
    CubicForm f = X.form_in(level);
    uint64_t count = 0;
    geom::for_each_proj_point(3, level, [&](const geom::Vec& p) { count += f.eval(p).is_zero(); });
    return count;
}

}  // namespace

TEST_CASE("table field agrees with polynomial arithmetic") {
    for (auto [q, n] : std::vector<std::pair<uint64_t, int>>{{2, 5}, {3, 3}, {4, 3}, {9, 2}, {7, 1}, {25, 1}}) {
        auto tower = ff::shared_tower(q, {1, n});
        const Field& F = tower->level(1);
        ff::TableField T(F);
        REQUIRE(T.order() == F.order());
        for (uint64_t i = 0; i < F.order(); ++i) {
            Elem a = F.from_index(i);
            REQUIRE(T.to_elem(T.from_elem(a)) == a);
            for (uint64_t j = 0; j < F.order(); j += 3) {
                Elem b = F.from_index(j);
                uint32_t ta = T.from_elem(a), tb = T.from_elem(b);
                CHECK(T.to_elem(T.mul(ta, tb)) == a * b);
                CHECK(T.to_elem(T.add(ta, tb)) == a + b);
                CHECK(T.to_elem(T.sub(ta, tb)) == a - b);
            }
            if (!a.is_zero()) CHECK(T.to_elem(T.inv(T.from_elem(a))) == a.inv());
        }
    }
}

TEST_CASE("cubic root counts agree with exhaustive evaluation") {
    std::mt19937_64 rng(5);
    for (uint64_t q : {2, 3, 4, 5, 8, 9, 16, 27, 49}) {
        auto tower = ff::shared_tower(q, {1});
        const Field& F = tower->base();
        ff::TableField T(F);
        for (int trial = 0; trial < 300; ++trial) {
            uint32_t c[4];
            for (auto& x : c) x = T.from_index(rng() % q);
            if (trial % 7 == 0) c[3] = T.zero();
            if (trial % 11 == 0) c[2] = T.zero();
            uint32_t brute = 0;
            for (uint64_t i = 0; i < q; ++i) {
                uint32_t x = T.from_index(i);
                uint32_t v = T.add(T.add(T.add(c[0], T.mul(c[1], x)), T.mul(c[2], T.mul(x, x))),
                                   T.mul(c[3], T.mul(x, T.mul(x, x))));
                brute += T.is_zero(v);
            }
            CHECK(ff::count_roots_cubic(T, c[0], c[1], c[2], c[3]) == brute);
        }
    }
}

TEST_CASE("surface normalization and integer input") {
    std::vector<int64_t> fermat(20, 0);
    fermat[0] = fermat[10] = fermat[16] = fermat[19] = 2;
    auto X = CubicSurface::from_ints(5, fermat);
    CHECK(X.coeffs()[0] == 1);
    CHECK(X.coeffs()[19] == 1);
    std::vector<int64_t> big(20, 0);
    big[0] = 9;
    CHECK_THROWS_AS(CubicSurface::from_ints(4, big), InvalidArgument);
    CHECK_THROWS_AS(CubicSurface::from_ints(5, std::vector<int64_t>(20, 0)), InvalidArgument);
    CHECK_THROWS_AS(CubicSurface::from_ints(5, std::vector<int64_t>(19, 1)), InvalidArgument);
}

TEST_CASE("smoothness of known surfaces") {
    std::vector<int64_t> fermat(20, 0);
    fermat[0] = fermat[10] = fermat[16] = fermat[19] = 1;
    for (uint64_t q : {2, 4, 5, 7, 8, 16, 25}) CHECK(is_smooth(CubicSurface::from_ints(q, fermat)).smooth);
    for (uint64_t q : {3, 9}) CHECK_FALSE(is_smooth(CubicSurface::from_ints(q, fermat)).smooth);

    // Everything vanishing to second order at (1:0:0:0).
    std::mt19937_64 rng(2);
    for (uint64_t q : {2, 3, 5, 7}) {
        auto c = random_coeffs(q, rng);
        c[0] = c[1] = c[2] = c[3] = 0;
        c[10] = 1;
        auto ev = is_smooth(CubicSurface(ff::shared_tower(q, {1}), c));
        CHECK_FALSE(ev.smooth);
        CHECK(ev.rank < ev.columns);
        CHECK(ev.strategy == "macaulay-degree-6");
    }
}

TEST_CASE("smoothness agrees with a search for singular points") {
    // A singular cubic surface has a singular point over GF(q^k) for some k <= 4:
    // at most four isolated singularities, or a singular curve with points in low degree.
    std::mt19937_64 rng(17);
    int singular = 0, smooth = 0;
    for (int trial = 0; trial < 150; ++trial) {
        auto c = random_coeffs(2, rng);
        if (trial % 3 == 0)
            for (int m = 0; m < 10; ++m) c[m] = 0;  // pushes toward singular surfaces
        CubicSurface X(ff::shared_tower(2, {1}), c);
        bool expected = !(has_singular_point(X, 3) || has_singular_point(X, 4));
        auto ev = is_smooth(X);
        CHECK(ev.smooth == expected);
        uint32_t mask = 0;
        for (int m = 0; m < 20; ++m) mask |= uint32_t{c[m]} << m;
        CHECK(is_smooth_gf2(mask) == ev.smooth);
        (expected ? smooth : singular)++;
    }
    CHECK(smooth > 10);
    CHECK(singular > 10);
    for (int trial = 0; trial < 6; ++trial) {
        auto X = random_surface(3, rng);
        bool expected = !(has_singular_point(X, 3) || has_singular_point(X, 4));
        CHECK(is_smooth(X).smooth == expected);
    }
}

TEST_CASE("point counts agree with direct enumeration") {
    std::mt19937_64 rng(23);
    for (uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
        for (int trial = 0; trial < 4; ++trial) {
            auto X = random_surface(q, rng);
            if (trial == 0) {
                auto c = X.coeffs();
                c[0] = 0;
                X = CubicSurface(ff::shared_tower(q, {1}), c);
            }
            CHECK(count_points(X, 1) == count_by_elems(X, 1));
            if (q <= 4) CHECK(count_points(X, 2) == count_by_elems(X, 2));
            CHECK(count_points(X, 2) == count_points_exhaustive(X, 2));
        }
    }
}

TEST_CASE("traces of smooth surfaces are small integers") {
    std::mt19937_64 rng(31);
    for (uint64_t q : {2, 3, 5, 7}) {
        int done = 0;
        while (done < 3) {
            auto X = random_surface(q, rng);
            if (!is_smooth(X).smooth) continue;
            auto t = trace_vector(X, q <= 3 ? 5 : 3);
            for (auto tn : t) CHECK(std::abs(tn) <= 7);
            ++done;
        }
    }
}
