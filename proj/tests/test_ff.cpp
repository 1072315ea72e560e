#include <doctest.h>

#include <map>
#include <set>

#include <algorithm>

#include "dpfq/ff/bipoly.hpp"
#include "dpfq/ff/tower.hpp"

using namespace dpfq::ff;

namespace {

int multiplicative_order(const Elem& x) {
    Elem t = x;
    for (int n = 1;; ++n) {
        if (t.is_one()) return n;
        t *= x;
    }
}

int brute_force_roots(const UniPoly& f) {
    const Field& F = f.field();
    int n = 0;
    for (uint64_t i = 0; i < F.order(); ++i)
        if (f.eval(F.from_index(i)).is_zero()) ++n;
    return n;
}

// Naive factorization oracle over GF(2): trial division by every monic polynomial by degree.
std::map<int, int> trial_division_degrees(UniPoly f) {
    const Field& F = f.field();
    std::map<int, int> out;
    for (int d = 1; d <= f.degree(); ++d) {
        for (uint64_t n = 0; n < (1ull << d) && f.degree() >= d; ++n) {
            std::vector<Elem> c;
            for (int i = 0; i < d; ++i) c.push_back(F.from_int((n >> i) & 1));
            c.push_back(F.one());
            UniPoly g(F, c);
            while (f.degree() >= d && (f % g).is_zero()) {
                f = f / g;
                out[d] += 1;
            }
        }
    }
    return out;
}

UniPoly random_poly(const Field& F, int deg, std::mt19937_64& rng) {
    std::vector<Elem> c;
    for (int i = 0; i < deg; ++i) c.push_back(F.random(rng));
    c.push_back(F.one());
    return UniPoly(F, c);
}

}  // namespace

TEST_CASE("make_field builds towers with the expected cardinalities") {
    FieldTower t = FieldTower::make(2, {1, 9});
    CHECK(t.top().order() == 512);
    FieldTower t3 = FieldTower::make(3, {1, 3, 9});
    REQUIRE(t3.num_levels() == 3);
    CHECK(t3.level(0).abs_degree() == 1);
    CHECK(t3.level(1).abs_degree() == 3);
    CHECK(t3.level(2).abs_degree() == 9);
    CHECK_THROWS(FieldTower::make(4, {1}));
    CHECK_THROWS(FieldTower::make(3, {2, 3}));
}

TEST_CASE("GF(25) multiplicative group is cyclic of order 24") {
    FieldTower t = FieldTower::make(5, {2});
    const Field& F = t.base();
    CHECK(F.order() == 25);
    int generators = 0;
    for (uint64_t i = 1; i < 25; ++i) {
        int ord = multiplicative_order(F.from_index(i));
        CHECK(24 % ord == 0);
        if (ord == 24) ++generators;
    }
    CHECK(generators == 8);  // phi(24)
}

TEST_CASE("frobenius fixes the base and closes orbits") {
    FieldTower t = FieldTower::make(3, {1, 9});
    std::mt19937_64 rng(1);
    const Field& top = t.top();
    Elem c = t.embed(t.base().from_int(2), 1);
    CHECK(c.frobenius(1) == c);
    CHECK(c.frobenius(5) == c);
    int checked = 0;
    while (checked < 20) {
        Elem x = top.random(rng);
        if (x.degree() != 9) continue;
        Elem y = x;
        for (int i = 0; i < 9; ++i) {
            if (i == 3) CHECK(y != x);
            y = y.frobenius(1);
        }
        CHECK(y == x);
        CHECK(x.frobenius(9) == x);
        ++checked;
    }
}

TEST_CASE("element degrees over GF(2^9) by exhaustive enumeration") {
    FieldTower t = FieldTower::make(2, {1, 9});
    std::map<int, int> counts;
    for (uint64_t i = 0; i < 512; ++i) counts[t.top().from_index(i).degree()] += 1;
    CHECK(counts[1] == 2);
    CHECK(counts[3] == 6);
    CHECK(counts[9] == 504);
    CHECK(counts.size() == 3);
}

TEST_CASE("frobenius is additive and multiplicative; embeddings are ring maps") {
    FieldTower t = FieldTower::make(3, {1, 2, 6});
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const Field& F = t.top();
        Elem x = F.random(rng), y = F.random(rng);
        uint32_t p = F.base().p();
        CHECK((x + y).pow(p) == x.pow(p) + y.pow(p));
        CHECK((x * y).frobenius(1) == x.frobenius(1) * y.frobenius(1));
        Elem a = t.level(1).random(rng), b = t.level(1).random(rng);
        CHECK(t.embed(a * b, 2) == t.embed(a, 2) * t.embed(b, 2));
        CHECK(t.embed(a + b, 2) == t.embed(a, 2) + t.embed(b, 2));
        CHECK(t.descend(t.embed(a, 2), 1) == a);
        if (!x.is_zero()) CHECK((x * x.inv()).is_one());
    }
    // Path independence: 0 -> 2 equals 0 -> 1 -> 2.
    Elem c = t.base().from_int(2);
    CHECK(t.embed(c, 2) == t.embed(t.embed(c, 1), 2));
}

TEST_CASE("count_roots on small examples") {
    FieldTower t3 = FieldTower::make(3, {1});
    CHECK(count_roots(UniPoly::from_ints(t3.base(), {1, 0, 1})) == 0);
    CHECK(count_roots(UniPoly::from_ints(t3.base(), {0, -1, 0, 1})) == 3);
    FieldTower t2 = FieldTower::make(2, {1});
    CHECK(count_roots(UniPoly::from_ints(t2.base(), {0, -1, 0, 1})) == 2);
}

TEST_CASE("count_roots of random cubics over GF(2^9) matches brute force") {
    FieldTower t = FieldTower::make(2, {1, 9});
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        UniPoly f = random_poly(t.top(), 3, rng);
        CHECK(count_roots(f) == brute_force_roots(f));
    }
}

TEST_CASE("count_roots agrees with brute force for low-degree polynomials") {
    // Exhaustive over all monic polynomials of degree <= 4 where that is cheap,
    // random samples on the larger fields up to 81 elements.
    for (uint64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 32, 49, 64, 81}) {
        auto [p, k] = prime_power(q);
        FieldTower t = FieldTower::make(p, {static_cast<int>(k)});
        if (q > 25) t = FieldTower::over(p, {1, static_cast<int>(k)});
        const Field& F = t.top();
        uint64_t total = q * q * q * q;
        if (total <= 20000) {
            for (int deg = 1; deg <= 4; ++deg) {
                uint64_t n = 1;
                for (int i = 0; i < deg; ++i) n *= q;
                for (uint64_t idx = 0; idx < n; ++idx) {
                    std::vector<Elem> c;
                    uint64_t r = idx;
                    for (int i = 0; i < deg; ++i, r /= q) c.push_back(F.from_index(r % q));
                    c.push_back(F.one());
                    UniPoly f(F, c);
                    REQUIRE(count_roots(f) == brute_force_roots(f));
                }
            }
        } else {
            std::mt19937_64 rng(q);
            for (int trial = 0; trial < 300; ++trial) {
                UniPoly f = random_poly(F, 1 + trial % 4, rng);
                REQUIRE(count_roots(f) == brute_force_roots(f));
            }
        }
    }
}

TEST_CASE("ddf on known factorizations") {
    FieldTower t = FieldTower::make(2, {1});
    const Field& F = t.base();
    UniPoly lin = UniPoly::from_ints(F, {1, 1});
    UniPoly quad = UniPoly::from_ints(F, {1, 1, 1});
    auto b = ddf(lin * quad);
    REQUIRE(b.size() == 2);
    CHECK(b[1] == lin);
    CHECK(b[2] == quad);

    UniPoly quint = UniPoly::from_ints(F, {1, 0, 1, 0, 0, 1});  // x^5 + x^2 + 1
    auto b5 = ddf(quint);
    REQUIRE(b5.size() == 1);
    CHECK(b5[5] == quint);
}

TEST_CASE("ddf of random squarefree degree-12 polynomials agrees with trial division") {
    FieldTower t = FieldTower::make(2, {1});
    const Field& F = t.base();
    std::mt19937_64 rng(11);
    int done = 0;
    while (done < 25) {
        UniPoly f = random_poly(F, 12, rng);
        if (gcd(f, f.derivative()).degree() > 0) continue;
        auto buckets = ddf(f);
        auto oracle = trial_division_degrees(f);
        int total = 0;
        std::map<int, int> from_ddf;
        for (auto& [d, g] : buckets) {
            CHECK(g.degree() % d == 0);
            from_ddf[d] = g.degree() / d;
            total += g.degree();
        }
        CHECK(total == 12);
        CHECK(from_ddf == oracle);
        ++done;
    }
}

TEST_CASE("squarefree decomposition handles p-th powers") {
    FieldTower t = FieldTower::make(3, {2});
    const Field& F = t.base();
    UniPoly a = UniPoly::from_ints(F, {1, 1});     // x + 1
    UniPoly b = UniPoly::from_ints(F, {1, 0, 1});  // x^2 + 1
    UniPoly f = a * a * a * a * b * b * b;         // (x+1)^4 (x^2+1)^3
    auto parts = squarefree_decomposition(f);
    UniPoly prod = UniPoly::constant(F.one());
    int degree_sum = 0;
    for (auto& [g, m] : parts) {
        for (int i = 0; i < m; ++i) prod = prod * g;
        degree_sum += g.degree();
    }
    CHECK(prod == f.monic());
    CHECK(squarefree_part(f).degree() == degree_sum);
    auto fac = factor(f);
    int total = 0;
    for (auto& [g, m] : fac) {
        CHECK(is_irreducible(g));
        total += g.degree() * m;
    }
    CHECK(total == f.degree());
}

TEST_CASE("edf_find_root") {
    FieldTower t = FieldTower::make(3, {1, 2});
    Elem c = t.base().from_int(2);
    UniPoly lin(t.base(), {-c, t.base().one()});
    CHECK(edf_find_root(t, lin, 0) == c);
    Elem i = edf_find_root(t, UniPoly::from_ints(t.base(), {1, 0, 1}), 1);
    CHECK(i * i == -t.level(1).one());
    CHECK_THROWS(edf_find_root(t, UniPoly::from_ints(t.base(), {1, 1, 0, 1}), 1));

    FieldTower t2 = FieldTower::make(2, {1, 9});
    std::mt19937_64 rng(5);
    int done = 0;
    while (done < 5) {
        UniPoly f = random_poly(t2.base(), 3, rng);
        if (!is_irreducible(f)) continue;
        Elem r = edf_find_root(t2, f, 1, done);
        CHECK(t2.embed(f, 1).eval(r).is_zero());
        CHECK(r.degree() == 3);
        ++done;
    }
}

TEST_CASE("univariate resultant respects formal degrees") {
    FieldTower t = FieldTower::make(5, {1});
    const Field& F = t.base();
    UniPoly f = UniPoly::from_ints(F, {-2, 1});      // x - 2
    UniPoly g = UniPoly::from_ints(F, {3, 0, 1});    // x^2 + 3
    CHECK(resultant(f, g) == g.eval(F.from_int(2)));  // 7 = 2 mod 5
    // Formal degree 3 for g: Res_{1,3} = lc(f)^1 * ... = g(2) still (f monic).
    CHECK(resultant(f, g, 1, 3) == g.eval(F.from_int(2)));
    UniPoly zero(F);
    CHECK(resultant(zero, g, 1, 2).is_zero());
}

namespace {

BiPoly bipoly(const Field& F, std::vector<std::vector<int64_t>> rows) {
    BiPoly b{&F, {}};
    for (auto& r : rows) {
        std::vector<Elem> c;
        for (int64_t v : r) c.push_back(F.from_int(v));
        b.coeffs.emplace_back(F, c);
    }
    return b;
}

// Leibniz expansion over F[x]: sum over permutations of signed products.
UniPoly leibniz_determinant(const std::vector<std::vector<UniPoly>>& m) {
    size_t n = m.size();
    std::vector<size_t> perm(n);
    for (size_t i = 0; i < n; ++i) perm[i] = i;
    const Field& F = m[0][0].field_ptr() ? m[0][0].field() : *[&] {
        for (auto& r : m)
            for (auto& e : r)
                if (e.field_ptr()) return e.field_ptr();
        return static_cast<const Field*>(nullptr);
    }();
    UniPoly total(F);
    do {
        int inversions = 0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        UniPoly term = UniPoly::constant(F.one());
        for (size_t i = 0; i < n && !term.is_zero(); ++i) term = term * m[i][perm[i]];
        total = inversions % 2 ? total - term : total + term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

UniPoly sylvester_oracle(const BiPoly& f, const BiPoly& g) {
    int df = f.deg_y(), dg = g.deg_y(), n = df + dg;
    std::vector<std::vector<UniPoly>> s(n, std::vector<UniPoly>(n, UniPoly(*f.field)));
    for (int r = 0; r < dg; ++r)
        for (int j = 0; j <= df; ++j) s[r][r + j] = f.coeffs[df - j];
    for (int r = 0; r < df; ++r)
        for (int j = 0; j <= dg; ++j) s[dg + r][r + j] = g.coeffs[dg - j];
    return leibniz_determinant(s);
}

bool proportional(const UniPoly& a, const UniPoly& b) { return a.monic() == b.monic(); }

}  // namespace

TEST_CASE("bivariate resultant on hand-computed cases") {
    FieldTower t = FieldTower::over(5, {1, 2, 4});
    const Field& F = t.base();
    // f = y - x, g = y - 1  ->  x - 1
    BiPoly f = bipoly(F, {{0, -1}, {1}});
    BiPoly g = bipoly(F, {{-1}, {1}});
    CHECK(proportional(resultant_y(t, f, g), UniPoly::from_ints(F, {-1, 1})));
    // f = y^2, g = y - x  ->  x^2
    BiPoly f2 = bipoly(F, {{0}, {0}, {1}});
    BiPoly g2 = bipoly(F, {{0, -1}, {1}});
    CHECK(proportional(resultant_y(t, f2, g2), UniPoly::from_ints(F, {0, 0, 1})));
    CHECK(proportional(resultant_y_sylvester(f2, g2), UniPoly::from_ints(F, {0, 0, 1})));
}

TEST_CASE("bivariate resultant matches the Sylvester determinant oracle over GF(5)") {
    FieldTower t = FieldTower::over(5, {1, 2, 4});
    const Field& F = t.base();
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> deg(1, 3), xdeg(0, 3), coef(0, 4);
    for (int trial = 0; trial < 40; ++trial) {
        auto random_bi = [&] {
            BiPoly b{&F, {}};
            int dy = deg(rng);
            for (int j = 0; j <= dy; ++j) {
                std::vector<Elem> c;
                for (int i = 0, dx = xdeg(rng); i <= dx; ++i) c.push_back(F.from_int(coef(rng)));
                b.coeffs.emplace_back(F, c);
            }
            if (b.coeffs.back().is_zero()) b.coeffs.back() = UniPoly::constant(F.one());
            return b;
        };
        BiPoly f = random_bi(), g = random_bi();
        UniPoly oracle = sylvester_oracle(f, g);
        CHECK(resultant_y(t, f, g) == oracle);
        CHECK(resultant_y_sylvester(f, g) == oracle);
    }
}

TEST_CASE("bivariate resultant vanishes identically iff there is a common factor") {
    FieldTower t = FieldTower::over(5, {1, 2, 4});
    const Field& F = t.base();
    // f = (y - x)(y + 1), g = (y - x)(y + x + 2): common factor y - x.
    BiPoly f = bipoly(F, {{0, -1}, {1, -1}, {1}});
    BiPoly g = bipoly(F, {{0, -2, -1}, {2}, {1}});
    CHECK(resultant_y(t, f, g).is_zero());
    BiPoly h = bipoly(F, {{1, 0, 1}, {0}, {1}});
    CHECK_FALSE(resultant_y(t, f, h).is_zero());
}
