#include "dpfq/weyl/lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "dpfq/error.hpp"

namespace dpfq::weyl {

Lattice::Lattice(int r) : r_(r) {
    if (r != 6 && r != 7) throw InvalidArgument("lattice rank must be 6 or 7");
    auto vec = [](int h) {
        LatVec v{};
        v[0] = h;
        return v;
    };
    for (int i = 1; i <= r; ++i) {
        LatVec v = vec(0);
        v[i] = 1;
        curves_.push_back(v);
    }
    for (int i = 1; i <= r; ++i)
        for (int j = i + 1; j <= r; ++j) {
            LatVec v = vec(1);
            v[i] = v[j] = -1;
            curves_.push_back(v);
        }
    if (r == 6) {
        for (int i = 1; i <= 6; ++i) {
            LatVec v = vec(2);
            for (int k = 1; k <= 6; ++k)
                if (k != i) v[k] = -1;
            curves_.push_back(v);
        }
    } else {
        for (int i = 1; i <= 7; ++i)
            for (int j = i + 1; j <= 7; ++j) {
                LatVec v = vec(2);
                for (int k = 1; k <= 7; ++k)
                    if (k != i && k != j) v[k] = -1;
                curves_.push_back(v);
            }
        for (int i = 1; i <= 7; ++i) {
            LatVec v = vec(3);
            for (int k = 1; k <= 7; ++k) v[k] = -1;
            v[i] = -2;
            curves_.push_back(v);
        }
    }
    K_[0] = -3;
    for (int i = 1; i <= r; ++i) K_[i] = 1;
    for (int i = 1; i < r; ++i) {
        LatVec a{};
        a[i] = 1;
        a[i + 1] = -1;
        roots_.push_back(a);
    }
    roots_.push_back(LatVec{1, -1, -1, -1, 0, 0, 0, 0});
}

int Lattice::dot(const LatVec& a, const LatVec& b) const noexcept {
    int s = a[0] * b[0];
    for (int i = 1; i <= r_; ++i) s -= a[i] * b[i];
    return s;
}

int Lattice::index_of(const LatVec& v) const {
    // The h-coefficient fixes the block; scan is short enough.
    for (int i = 0; i < num_curves(); ++i)
        if (curves_[i] == v) return i;
    return -1;
}

std::string Lattice::label(int idx) const {
    const LatVec& v = curves_.at(idx);
    std::ostringstream os;
    if (v[0] == 0) {
        for (int i = 1; i <= r_; ++i)
            if (v[i]) os << 'e' << i;
        return os.str();
    }
    os << (v[0] == 1 ? "" : std::to_string(v[0])) << 'h';
    for (int i = 1; i <= r_; ++i)
        for (int k = 0; k < -v[i]; ++k) os << "-e" << i;
    return os.str();
}

const Lattice& lattice(int r) {
    static const Lattice l6(6), l7(7);
    if (r == 6) return l6;
    if (r == 7) return l7;
    throw InvalidArgument("lattice rank must be 6 or 7");
}

WeylElement WeylElement::identity(const Lattice& L) {
    WeylElement w;
    w.n_ = L.num_curves();
    for (int i = 0; i < w.n_; ++i) w.img_[i] = static_cast<uint8_t>(i);
    return w;
}

WeylElement WeylElement::reflection(const Lattice& L, const LatVec& alpha) {
    if (L.dot(alpha, alpha) != -2) throw InvalidArgument("reflection vector is not a root");
    WeylElement w;
    w.n_ = L.num_curves();
    for (int i = 0; i < w.n_; ++i) {
        LatVec x = L.curve(i);
        int c = L.dot(x, alpha);
        for (int k = 0; k < kMaxRank; ++k) x[k] += c * alpha[k];
        int j = L.index_of(x);
        if (j < 0) throw InternalError("reflection does not preserve the exceptional classes");
        w.img_[i] = static_cast<uint8_t>(j);
    }
    return w;
}

WeylElement WeylElement::from_matrix(const Lattice& L, const IntMatrix& m) {
    WeylElement w;
    w.n_ = L.num_curves();
    for (int i = 0; i < w.n_; ++i) {
        int j = L.index_of(mat_apply(m, L.curve(i), L.rank()));
        if (j < 0) throw InvalidArgument("matrix does not permute the exceptional classes");
        w.img_[i] = static_cast<uint8_t>(j);
    }
    return w;
}

WeylElement WeylElement::from_permutation(const Lattice& L, const std::vector<int>& perm) {
    int n = L.num_curves();
    if (static_cast<int>(perm.size()) != n) throw InvalidArgument("permutation has the wrong length");
    WeylElement w;
    w.n_ = n;
    std::vector<bool> seen(n, false);
    for (int i = 0; i < n; ++i) {
        if (perm[i] < 0 || perm[i] >= n || seen[perm[i]]) throw InvalidArgument("not a permutation of the curves");
        seen[perm[i]] = true;
        w.img_[i] = static_cast<uint8_t>(perm[i]);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            if (L.dot(L.curve(i), L.curve(j)) != L.dot(L.curve(perm[i]), L.curve(perm[j])))
                throw InvalidArgument("permutation does not preserve intersections");
    if (!(from_matrix(L, w.matrix(L)) == w)) throw InvalidArgument("permutation is not induced by a lattice map");
    return w;
}

WeylElement WeylElement::operator*(const WeylElement& o) const {
    WeylElement w;
    w.n_ = n_;
    for (int i = 0; i < n_; ++i) w.img_[i] = img_[o.img_[i]];
    return w;
}

WeylElement WeylElement::inverse() const {
    WeylElement w;
    w.n_ = n_;
    for (int i = 0; i < n_; ++i) w.img_[img_[i]] = static_cast<uint8_t>(i);
    return w;
}

WeylElement WeylElement::pow(int64_t e) const {
    int ord = order();
    e %= ord;
    if (e < 0) e += ord;
    WeylElement result, base = *this;
    result.n_ = n_;
    for (int i = 0; i < n_; ++i) result.img_[i] = static_cast<uint8_t>(i);
    while (e) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

IntMatrix WeylElement::matrix(const Lattice& L) const {
    // Column j of the matrix is the image of basis vector j.
    int r = L.r();
    IntMatrix m{};
    for (int i = 1; i <= r; ++i) {
        const LatVec& im = L.curve(img_[i - 1]);
        for (int k = 0; k <= r; ++k) m[k][i] = im[k];
    }
    // h = e_1 + e_2 + (h - e_1 - e_2); the latter sits right after the e_i.
    const LatVec& a = L.curve(img_[0]);
    const LatVec& b = L.curve(img_[1]);
    const LatVec& c = L.curve(img_[r]);
    for (int k = 0; k <= r; ++k) m[k][0] = a[k] + b[k] + c[k];
    return m;
}

std::vector<int> WeylElement::cycle_type() const {
    std::vector<int> lengths;
    std::array<bool, kMaxCurves> seen{};
    for (int i = 0; i < n_; ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (int j = i; !seen[j]; j = img_[j]) {
            seen[j] = true;
            ++len;
        }
        lengths.push_back(len);
    }
    std::sort(lengths.rbegin(), lengths.rend());
    return lengths;
}

int WeylElement::order() const {
    int o = 1;
    for (int len : cycle_type()) o = std::lcm(o, len);
    return o;
}

uint64_t WeylElement::key(const Lattice& L) const {
    uint64_t k = 0;
    for (int i = 0; i < L.r(); ++i) k = (k << 6) | img_[i];
    return (k << 6) | img_[L.r()];
}

size_t WeylElementHash::operator()(const WeylElement& w) const noexcept {
    uint64_t h = 1469598103934665603ull;
    for (int i = 0; i < w.size(); ++i) h = (h ^ static_cast<uint64_t>(w[i])) * 1099511628211ull;
    return h;
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b, int n) {
    IntMatrix c{};
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (!a[i][k]) continue;
            for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

IntMatrix mat_identity(int n) {
    IntMatrix m{};
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

int64_t mat_trace(const IntMatrix& a, int n) {
    int64_t t = 0;
    for (int i = 0; i < n; ++i) t += a[i][i];
    return t;
}

LatVec mat_apply(const IntMatrix& a, const LatVec& v, int n) {
    LatVec out{};
    for (int i = 0; i < n; ++i) {
        int64_t s = 0;
        for (int j = 0; j < n; ++j) s += a[i][j] * v[j];
        out[i] = static_cast<int>(s);
    }
    return out;
}

IntPoly charpoly(const IntMatrix& m, int n) {
    // M_k = M (M_{k-1} + c_{n-k+1} I), c_{n-k} = -tr(M_k) / k.
    IntPoly c(n + 1, 0);
    c[n] = 1;
    IntMatrix mk{};
    for (int k = 1; k <= n; ++k) {
        IntMatrix shifted = mk;
        for (int i = 0; i < n; ++i) shifted[i][i] += c[n - k + 1];
        mk = mat_mul(m, shifted, n);
        int64_t tr = mat_trace(mk, n);
        if (tr % k) throw InternalError("non-integral characteristic polynomial coefficient");
        c[n - k] = -tr / k;
    }
    return c;
}

IntPoly charpoly_from_traces(const std::vector<int64_t>& traces, int n) {
    if (static_cast<int>(traces.size()) < n) throw InvalidArgument("need n power sums");
    // e_k = (1/k) sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i; coefficient of t^{n-k} is (-1)^k e_k.
    std::vector<int64_t> e(n + 1, 0);
    e[0] = 1;
    for (int k = 1; k <= n; ++k) {
        int64_t s = 0;
        for (int i = 1; i <= k; ++i) s += (i % 2 ? 1 : -1) * e[k - i] * traces[i - 1];
        if (s % k) throw InvalidArgument("power sums are not those of an integer polynomial");
        e[k] = s / k;
    }
    IntPoly c(n + 1, 0);
    for (int k = 0; k <= n; ++k) c[n - k] = (k % 2 ? -1 : 1) * e[k];
    return c;
}

std::vector<int64_t> power_sums(const IntPoly& monic, int count) {
    int n = static_cast<int>(monic.size()) - 1;
    if (n < 0 || monic.back() != 1) throw InvalidArgument("power sums need a monic polynomial");
    // p_k = -sum_{i=1}^{k-1} a_{n-i} p_{k-i} - k a_{n-k}   (a_j = 0 for j < 0).
    auto a = [&](int j) -> int64_t { return j >= 0 ? monic[j] : 0; };
    std::vector<int64_t> p(count + 1, 0);
    for (int k = 1; k <= count; ++k) {
        int64_t s = 0;
        for (int i = 1; i < k && i <= n; ++i) s -= a(n - i) * p[k - i];
        if (k <= n) s -= k * a(n - k);
        p[k] = s;
    }
    return {p.begin() + 1, p.end()};
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
    if (a.empty() || b.empty()) return {};
    IntPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

namespace {

// Exact division by a monic polynomial.
IntPoly poly_div_exact(IntPoly num, const IntPoly& den) {
    int dn = static_cast<int>(num.size()) - 1, dd = static_cast<int>(den.size()) - 1;
    IntPoly q(dn - dd + 1, 0);
    for (int i = dn - dd; i >= 0; --i) {
        q[i] = num[i + dd];
        for (int j = 0; j <= dd; ++j) num[i + j] -= q[i] * den[j];
    }
    for (int i = 0; i < dd; ++i)
        if (num[i]) throw InternalError("inexact polynomial division");
    return q;
}

int euler_phi(int n) {
    int r = n;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            r -= r / p;
        }
    if (n > 1) r -= r / n;
    return r;
}

int mobius(int n) {
    int m = 1;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            m = -m;
        }
    return n > 1 ? -m : m;
}

}  // namespace

IntPoly cyclotomic(int n) {
    if (n < 1) throw InvalidArgument("cyclotomic index must be positive");
    IntPoly p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) p = poly_div_exact(p, cyclotomic(d));
    return p;
}

std::string poly_to_string(const IntPoly& p) {
    std::ostringstream os;
    for (size_t i = 0; i < p.size(); ++i) os << (i ? " " : "") << p[i];
    return os.str();
}

RootOfUnity::RootOfUnity(int n, int d) {
    if (d < 1) throw InvalidArgument("root of unity needs a positive order");
    n %= d;
    if (n < 0) n += d;
    int g = std::gcd(n, d);
    num = n / g;
    den = d / g;
}

std::string RootOfUnity::to_string() const {
    if (den == 1) return "1";
    if (den == 2) return "-1";
    if (den == 4) return num == 1 ? "i" : "-i";
    return "exp(2pi i*" + std::to_string(num) + "/" + std::to_string(den) + ")";
}

namespace {

std::map<int, int> primitive_multiplicities(const std::vector<RootOfUnity>& roots) {
    std::map<int, std::map<int, int>> by_order;
    for (const auto& z : roots) ++by_order[z.den][z.num];
    std::map<int, int> mult;
    for (const auto& [d, nums] : by_order) {
        int m = nums.begin()->second;
        if (static_cast<int>(nums.size()) != euler_phi(d) ||
            std::any_of(nums.begin(), nums.end(), [&](const auto& kv) { return kv.second != m; }))
            throw InvalidArgument("root multiset is not closed under Galois conjugation");
        mult[d] = m;
    }
    return mult;
}

}  // namespace

IntPoly charpoly_from_roots(const std::vector<RootOfUnity>& roots) {
    IntPoly p{1};
    for (const auto& [d, m] : primitive_multiplicities(roots))
        for (int i = 0; i < m; ++i) p = poly_mul(p, cyclotomic(d));
    return p;
}

int64_t root_power_sum(const std::vector<RootOfUnity>& roots, int n) {
    // Sum of n-th powers of the primitive d-th roots is the Ramanujan sum c_d(n).
    int64_t s = 0;
    for (const auto& [d, m] : primitive_multiplicities(roots)) {
        int g = std::gcd(d, n);
        int e = d / g;
        s += static_cast<int64_t>(m) * mobius(e) * euler_phi(d) / euler_phi(e);
    }
    return s;
}

}  // namespace dpfq::weyl
