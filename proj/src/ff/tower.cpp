#include "dpfq/ff/tower.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <tuple>
#include <string>

#include "dpfq/error.hpp"

namespace dpfq::ff {

std::vector<Elem> find_irreducible(const Field& base_level, int m, uint64_t seed) {
    if (m == 1) return {base_level.zero(), base_level.one()};
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + static_cast<uint64_t>(m));
    for (int attempt = 0; attempt < 100000; ++attempt) {
        std::vector<Elem> c;
        for (int i = 0; i < m; ++i) c.push_back(base_level.random(rng));
        c.push_back(base_level.one());
        if (c[0].is_zero()) continue;
        if (is_irreducible(UniPoly(base_level, c))) return c;
    }
    throw InternalError("no irreducible polynomial of degree " + std::to_string(m) + " found");
}

FieldTower FieldTower::make(uint32_t p, const std::vector<int>& abs_degrees, uint64_t seed) {
    if (!is_prime(p)) throw InvalidArgument("characteristic is not prime: " + std::to_string(p));
    if (abs_degrees.empty()) throw InvalidArgument("tower needs at least one level");
    for (size_t i = 0; i < abs_degrees.size(); ++i) {
        if (abs_degrees[i] < 1) throw InvalidArgument("tower degrees must be >= 1");
        if (i && abs_degrees[i] % abs_degrees[i - 1])
            throw InvalidArgument("tower degrees must form a divisibility chain");
    }
    int k = abs_degrees[0];
    std::vector<int> rel;
    for (int d : abs_degrees) rel.push_back(d / k);
    uint64_t q = 1;
    for (int i = 0; i < k; ++i) q *= p;
    return over(q, rel, seed);
}

FieldTower FieldTower::over(uint64_t q, const std::vector<int>& rel_degrees, uint64_t seed) {
    auto [p, k] = prime_power(q);
    if (rel_degrees.empty() || rel_degrees[0] != 1) throw InvalidArgument("tower must start at the base field");
    FieldTower t;
    t.seed_ = seed;
    t.base_ = BaseField::make(p, k, seed);
    t.levels_.push_back(std::make_shared<Field>(t.base_, std::vector<uint8_t>{0, 1}));
    const Field& base = *t.levels_[0];
    for (size_t i = 1; i < rel_degrees.size(); ++i) {
        int m = rel_degrees[i];
        if (m < 1 || m % rel_degrees[i - 1]) throw InvalidArgument("tower degrees must form a divisibility chain");
        if (m > kMaxDegree) throw InvalidArgument("tower level degree exceeds " + std::to_string(kMaxDegree));
        std::vector<uint8_t> mod;
        for (const Elem& c : find_irreducible(base, m, seed)) mod.push_back(c.coeff(0));
        t.levels_.push_back(std::make_shared<Field>(t.base_, std::move(mod)));
    }
    // Embeddings: the generator of level i maps to the least root of its modulus in level i+1.
    for (size_t i = 0; i + 1 < t.levels_.size(); ++i) {
        const Field& lo = *t.levels_[i];
        const Field& hi = *t.levels_[i + 1];
        std::vector<Elem> mod;
        for (uint8_t c : lo.modulus()) mod.push_back(hi.from_base(c));
        std::vector<Elem> rts = roots(UniPoly(hi, mod), seed);
        if (rts.empty()) throw InternalError("level modulus has no root in the next level");
        std::vector<Elem> pw{hi.one()};
        for (int j = 1; j < lo.degree(); ++j) pw.push_back(pw.back() * rts.front());
        t.images_.push_back(std::move(pw));
    }
    return t;
}

int FieldTower::find_level(int rel_degree) const noexcept {
    for (int i = 0; i < num_levels(); ++i)
        if (levels_[i]->degree() == rel_degree) return i;
    return -1;
}

int FieldTower::level_of(const Elem& x) const {
    for (int i = 0; i < num_levels(); ++i)
        if (levels_[i].get() == x.field()) return i;
    throw InvalidArgument("element does not belong to this tower");
}

Elem FieldTower::embed_step(const Elem& x, int from) const {
    const Field& hi = *levels_[from + 1];
    Elem r = hi.zero();
    const auto& img = images_[from];
    for (int j = 0; j < levels_[from]->degree(); ++j)
        if (x.coeff(j)) r += img[j] * hi.from_base(x.coeff(j));
    return r;
}

Elem FieldTower::embed(const Elem& x, int to) const {
    int from = level_of(x);
    if (to < from) throw InvalidArgument("embed: target level below source level");
    Elem r = x;
    for (int i = from; i < to; ++i) r = embed_step(r, i);
    return r;
}

UniPoly FieldTower::embed(const UniPoly& f, int to) const {
    std::vector<Elem> c;
    for (const Elem& e : f.coeffs()) c.push_back(embed(e, to));
    return UniPoly(level(to), std::move(c));
}

namespace {

// Solves sum_j c_j cols[j] = target over GF(q); nullopt if inconsistent.
std::optional<std::vector<uint8_t>> solve_over_base(const BaseField& F, const std::vector<Elem>& cols,
                                                    const Elem& target) {
    int rows = target.field()->degree();
    int n = static_cast<int>(cols.size());
    std::vector<std::vector<uint8_t>> a(rows, std::vector<uint8_t>(n + 1));
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < n; ++c) a[r][c] = cols[c].coeff(r);
        a[r][n] = target.coeff(r);
    }
    std::vector<int> pivot_col;
    int rank = 0;
    for (int c = 0; c < n && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (a[r][c]) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[piv], a[rank]);
        uint8_t inv = F.inv(a[rank][c]);
        for (auto& v : a[rank]) v = F.mul(v, inv);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || !a[r][c]) continue;
            uint8_t f = a[r][c];
            for (int cc = 0; cc <= n; ++cc) a[r][cc] = F.sub(a[r][cc], F.mul(f, a[rank][cc]));
        }
        pivot_col.push_back(c);
        ++rank;
    }
    for (int r = rank; r < rows; ++r)
        if (a[r][n]) return std::nullopt;
    std::vector<uint8_t> sol(n, 0);
    for (int i = 0; i < rank; ++i) sol[pivot_col[i]] = a[i][n];
    return sol;
}

}  // namespace

bool FieldTower::lies_in(const Elem& x, int to) const {
    int from = level_of(x);
    if (to >= from) return true;
    std::vector<Elem> cols;
    for (int j = 0; j < levels_[to]->degree(); ++j) {
        std::vector<uint8_t> c(levels_[to]->degree(), 0);
        c[j] = 1;
        cols.push_back(embed(levels_[to]->from_coeffs(c), from));
    }
    return solve_over_base(*base_, cols, x).has_value();
}

Elem FieldTower::descend(const Elem& x, int to) const {
    int from = level_of(x);
    if (to >= from) return embed(x, to);
    const Field& lo = *levels_[to];
    std::vector<Elem> cols;
    for (int j = 0; j < lo.degree(); ++j) {
        std::vector<uint8_t> c(lo.degree(), 0);
        c[j] = 1;
        cols.push_back(embed(lo.from_coeffs(c), from));
    }
    auto sol = solve_over_base(*base_, cols, x);
    if (!sol) throw InvalidArgument("descend: element not in the requested subfield");
    return lo.from_coeffs(*sol);
}

nlohmann::json FieldTower::descriptor() const {
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& l : levels_)
        levels.push_back({{"degree", l->degree()}, {"modulus", l->modulus()}});
    return {{"p", p()},
            {"q", q()},
            {"base_modulus", base_->modulus()},
            {"levels", levels},
            {"seed", seed_}};
}

}  // namespace dpfq::ff

namespace dpfq::ff {

Elem edf_find_root(const FieldTower& tower, const UniPoly& f, int target, uint64_t seed) {
    if (f.degree() < 1) throw InvalidArgument("edf_find_root: constant polynomial");
    int from = tower.level_of(f.lead());
    int rel = tower.level(target).degree() / tower.level(from).degree();
    if (target < from || rel % f.degree())
        throw InvalidArgument("edf_find_root: factor degree does not divide the target degree");
    UniPoly g = tower.embed(f, target).monic();
    std::mt19937_64 rng(seed);
    while (g.degree() > 1) {
        std::vector<UniPoly> parts = edf(g, 1, rng);
        g = parts.front();
    }
    return -g[0];
}

std::shared_ptr<const FieldTower> shared_tower(uint64_t q, const std::vector<int>& rel_degrees, uint64_t seed) {
    static std::mutex mu;
    static std::map<std::tuple<uint64_t, std::vector<int>, uint64_t>, std::shared_ptr<const FieldTower>> cache;
    auto key = std::make_tuple(q, rel_degrees, seed);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto tower = std::make_shared<const FieldTower>(FieldTower::over(q, rel_degrees, seed));
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, tower).first->second;
}

Elem transfer(const Elem& x, const Field& target) {
    const Field& src = *x.field();
    if (&src == &target) return x;
    if (src.modulus() != target.modulus() || src.base().q() != target.base().q() ||
        src.base().modulus() != target.base().modulus())
        throw InvalidArgument("fields are not the same presentation");
    return target.from_coeffs(x.coeffs());
}

}  // namespace dpfq::ff
