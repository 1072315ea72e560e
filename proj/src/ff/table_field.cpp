#include "dpfq/ff/table_field.hpp"

#include <array>

#include "dpfq/error.hpp"

namespace dpfq::ff {

namespace {

std::vector<uint64_t> prime_divisors(uint64_t n) {
    std::vector<uint64_t> ps;
    for (uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

}  // namespace

TableField::TableField(const Field& f) : f_(&f) {
    if (!f.order_fits() || f.order() > (1u << 22)) throw InvalidArgument("field too large for log tables");
    Q_ = static_cast<uint32_t>(f.order());
    auto divs = prime_divisors(Q_ - 1);
    Elem g = f.one();
    for (uint64_t i = 1; i < Q_; ++i) {
        Elem x = f.from_index(i);
        bool primitive = true;
        for (uint64_t p : divs)
            if (x.pow((Q_ - 1) / p).is_one()) {
                primitive = false;
                break;
            }
        if (primitive) {
            g = x;
            break;
        }
    }
    log_of_index_.assign(Q_, Q_ - 1);
    index_of_log_.assign(Q_, 0);
    Elem x = f.one();
    for (uint32_t k = 0; k + 1 < Q_; ++k) {
        uint64_t idx = x.index();
        log_of_index_[idx] = k;
        index_of_log_[k] = static_cast<uint32_t>(idx);
        x *= g;
    }
    index_of_log_[Q_ - 1] = 0;
    zech_.assign(Q_ - 1, 0);
    x = f.one();
    for (uint32_t k = 0; k + 1 < Q_; ++k) {
        zech_[k] = log_of_index_[(x + f.one()).index()];
        x *= g;
    }
    minus_one_ = log_of_index_[(-f.one()).index()];
}

Elem TableField::to_elem(uint32_t a) const { return f_->from_index(a == Q_ - 1 ? 0 : index_of_log_[a]); }

namespace {

int degree_of(const TableField& F, const std::array<uint32_t, 4>& c, int hi) {
    while (hi >= 0 && F.is_zero(c[hi])) --hi;
    return hi;
}

// a * b mod m, m monic of degree d (1..3), a and b reduced.
std::array<uint32_t, 4> mulmod(const TableField& F, const std::array<uint32_t, 4>& a, const std::array<uint32_t, 4>& b,
                               const std::array<uint32_t, 4>& m, int d) {
    std::array<uint32_t, 6> prod;
    prod.fill(F.zero());
    for (int i = 0; i < d; ++i) {
        if (F.is_zero(a[i])) continue;
        for (int j = 0; j < d; ++j) prod[i + j] = F.add(prod[i + j], F.mul(a[i], b[j]));
    }
    for (int i = 2 * d - 2; i >= d; --i) {
        uint32_t c = prod[i];
        if (F.is_zero(c)) continue;
        for (int j = 0; j < d; ++j) prod[i - d + j] = F.sub(prod[i - d + j], F.mul(c, m[j]));
    }
    std::array<uint32_t, 4> r;
    r.fill(F.zero());
    for (int i = 0; i < d; ++i) r[i] = prod[i];
    return r;
}

// Degree of gcd(a, b) for polynomials of degree <= 3.
int gcd_degree(const TableField& F, std::array<uint32_t, 4> a, int da, std::array<uint32_t, 4> b, int db) {
    while (db >= 0) {
        // a mod b
        while (da >= db) {
            uint32_t f = F.mul(a[da], F.inv(b[db]));
            for (int j = 0; j <= db; ++j) a[da - db + j] = F.sub(a[da - db + j], F.mul(f, b[j]));
            da = degree_of(F, a, da - 1);
            if (da < 0) break;
        }
        std::swap(a, b);
        std::swap(da, db);
    }
    return da;
}

}  // namespace

uint32_t count_roots_cubic(const TableField& F, uint32_t c0, uint32_t c1, uint32_t c2, uint32_t c3) {
    std::array<uint32_t, 4> m{c0, c1, c2, c3};
    int d = degree_of(F, m, 3);
    if (d < 0) return F.order();
    if (d == 0) return 0;
    if (d == 1) return 1;
    uint32_t lead_inv = F.inv(m[d]);
    for (int i = 0; i <= d; ++i) m[i] = F.mul(m[i], lead_inv);
    // x^Q mod m by square and multiply.
    std::array<uint32_t, 4> x, r;
    x.fill(F.zero());
    r.fill(F.zero());
    x[1] = F.one();
    r[0] = F.one();
    uint64_t e = F.order();
    int top = 63 - __builtin_clzll(e);
    for (int bit = top; bit >= 0; --bit) {
        r = mulmod(F, r, r, m, d);
        if ((e >> bit) & 1) r = mulmod(F, r, x, m, d);
    }
    r[1] = F.sub(r[1], F.one());
    int dr = degree_of(F, r, d - 1);
    if (dr < 0) return static_cast<uint32_t>(d);
    return static_cast<uint32_t>(gcd_degree(F, m, d, r, dr));
}

}  // namespace dpfq::ff
