#include "dpfq/ff/base_field.hpp"

#include <random>
#include <string>

#include "dpfq/error.hpp"

namespace dpfq::ff {

namespace {

using Poly = std::vector<uint32_t>;  // over GF(p), low degree first

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo b (b nonzero) over GF(p).
Poly poly_mod(Poly a, const Poly& b, uint32_t p) {
    trim(a);
    uint32_t lead_inv = 1;
    for (uint32_t e = p - 2, base = b.back(); e; e >>= 1, base = base * base % p)
        if (e & 1) lead_inv = lead_inv * base % p;
    while (a.size() >= b.size()) {
        uint32_t c = a.back() * lead_inv % p;
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i)
            a[shift + i] = (a[shift + i] + p * p - c * b[i] % p) % p;
        trim(a);
    }
    return a;
}

// Monic polynomial of degree d whose non-leading coefficients are the base-p digits of n.
Poly monic_from_index(uint64_t n, uint32_t d, uint32_t p) {
    Poly f(d + 1, 0);
    for (uint32_t i = 0; i < d; ++i, n /= p) f[i] = static_cast<uint32_t>(n % p);
    f[d] = 1;
    return f;
}

bool irreducible_by_trial(const Poly& f, uint32_t p) {
    uint32_t d = static_cast<uint32_t>(f.size() - 1);
    for (uint32_t e = 1; 2 * e <= d; ++e) {
        uint64_t count = 1;
        for (uint32_t i = 0; i < e; ++i) count *= p;
        for (uint64_t n = 0; n < count; ++n)
            if (poly_mod(f, monic_from_index(n, e, p), p).empty()) return false;
    }
    return true;
}

}  // namespace

bool is_prime(uint64_t n) noexcept {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::pair<uint32_t, uint32_t> prime_power(uint64_t q) {
    if (q < 2) throw InvalidArgument("not a prime power: " + std::to_string(q));
    uint64_t p = 2;
    while (q % p) ++p;
    uint32_t k = 0;
    uint64_t r = q;
    while (r % p == 0) r /= p, ++k;
    if (r != 1) throw InvalidArgument("not a prime power: " + std::to_string(q));
    return {static_cast<uint32_t>(p), k};
}

uint8_t BaseField::from_int(int64_t n) const noexcept {
    int64_t r = n % static_cast<int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<uint8_t>(r);
}

std::shared_ptr<const BaseField> BaseField::make(uint32_t p, uint32_t k, uint64_t seed) {
    if (!is_prime(p)) throw InvalidArgument("characteristic is not prime: " + std::to_string(p));
    if (k < 1) throw InvalidArgument("base degree must be >= 1");
    uint64_t q = 1;
    for (uint32_t i = 0; i < k; ++i) q *= p;
    if (q > 256) throw InvalidArgument("base field GF(" + std::to_string(q) + ") exceeds 256 elements");

    auto f = std::shared_ptr<BaseField>(new BaseField());
    f->p_ = p;
    f->k_ = k;
    f->q_ = static_cast<uint32_t>(q);
    f->seed_ = seed;

    if (k == 1) {
        f->modulus_ = {0, 1};
    } else {
        uint64_t count = q;  // number of monic polys of degree k
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<uint64_t> pick(0, count - 1);
        bool found = false;
        for (int attempt = 0; attempt < 10000 && !found; ++attempt) {
            Poly m = monic_from_index(pick(rng), k, p);
            if (irreducible_by_trial(m, p)) {
                f->modulus_ = m;
                found = true;
            }
        }
        if (!found) throw InternalError("no irreducible modulus found for GF(" + std::to_string(q) + ")");
    }

    // Element index <-> coefficient vector.
    auto digits = [&](uint32_t idx) {
        Poly v(k, 0);
        for (uint32_t i = 0; i < k; ++i, idx /= p) v[i] = idx % p;
        return v;
    };
    auto index = [&](const Poly& v) {
        uint32_t idx = 0;
        for (size_t i = v.size(); i-- > 0;) idx = idx * p + v[i];
        return idx;
    };

    f->add_.resize(q * q);
    f->mul_.resize(q * q);
    f->neg_.resize(q);
    f->inv_.resize(q, 0);
    for (uint32_t a = 0; a < q; ++a) {
        Poly va = digits(a);
        Poly vn(k);
        for (uint32_t i = 0; i < k; ++i) vn[i] = (p - va[i]) % p;
        f->neg_[a] = static_cast<uint8_t>(index(vn));
        for (uint32_t b = 0; b < q; ++b) {
            Poly vb = digits(b);
            Poly sum(k);
            for (uint32_t i = 0; i < k; ++i) sum[i] = (va[i] + vb[i]) % p;
            f->add_[a * q + b] = static_cast<uint8_t>(index(sum));
            Poly prod(2 * k, 0);
            for (uint32_t i = 0; i < k; ++i)
                for (uint32_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + va[i] * vb[j]) % p;
            Poly r = k == 1 ? Poly{prod[0]} : poly_mod(prod, f->modulus_, p);
            r.resize(k, 0);
            f->mul_[a * q + b] = static_cast<uint8_t>(index(r));
        }
    }
    for (uint32_t a = 1; a < q; ++a)
        for (uint32_t b = 1; b < q; ++b)
            if (f->mul_[a * q + b] == 1) f->inv_[a] = static_cast<uint8_t>(b);
    return f;
}

}  // namespace dpfq::ff
