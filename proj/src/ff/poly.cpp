#include "dpfq/ff/poly.hpp"

#include <algorithm>
#include <sstream>

#include "dpfq/error.hpp"

namespace dpfq::ff {

UniPoly::UniPoly(const Field& f, std::vector<Elem> coeffs) : f_(&f), c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::constant(const Elem& c) { return UniPoly(*c.field(), {c}); }

UniPoly UniPoly::x(const Field& f) { return monomial(f, 1); }

UniPoly UniPoly::monomial(const Field& f, int n) {
    std::vector<Elem> c(n + 1, f.zero());
    c[n] = f.one();
    return UniPoly(f, std::move(c));
}

UniPoly UniPoly::from_ints(const Field& f, std::initializer_list<int64_t> coeffs) {
    std::vector<Elem> c;
    for (int64_t v : coeffs) c.push_back(f.from_int(v));
    return UniPoly(f, std::move(c));
}

void UniPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Elem UniPoly::operator[](int i) const {
    if (i < 0 || i > degree()) return f_->zero();
    return c_[i];
}

Elem UniPoly::lead() const {
    if (c_.empty()) throw InvalidArgument("leading coefficient of zero polynomial");
    return c_.back();
}

Elem UniPoly::eval(const Elem& x) const {
    Elem r = x.field()->zero();
    for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}

UniPoly UniPoly::monic() const {
    if (c_.empty()) return *this;
    Elem li = lead().inv();
    return *this * li;
}

UniPoly UniPoly::derivative() const {
    std::vector<Elem> d;
    for (int i = 1; i <= degree(); ++i) d.push_back(c_[i] * f_->from_int(i));
    return UniPoly(*f_, std::move(d));
}

UniPoly UniPoly::frobenius(int i) const {
    std::vector<Elem> c;
    for (const Elem& e : c_) c.push_back(e.frobenius(i));
    return UniPoly(*f_, std::move(c));
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    const Field& f = f_ ? *f_ : *o.f_;
    std::vector<Elem> r(std::max(c_.size(), o.c_.size()), f.zero());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return UniPoly(f, std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const {
    const Field& f = f_ ? *f_ : *o.f_;
    std::vector<Elem> r(std::max(c_.size(), o.c_.size()), f.zero());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return UniPoly(f, std::move(r));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
    const Field& f = f_ ? *f_ : *o.f_;
    if (c_.empty() || o.c_.empty()) return UniPoly(f);
    std::vector<Elem> r(c_.size() + o.c_.size() - 1, f.zero());
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    return UniPoly(f, std::move(r));
}

UniPoly UniPoly::operator*(const Elem& c) const {
    std::vector<Elem> r = c_;
    for (Elem& e : r) e *= c;
    return UniPoly(*c.field(), std::move(r));
}

UniPoly UniPoly::operator%(const UniPoly& o) const { return divmod(*this, o).second; }
UniPoly UniPoly::operator/(const UniPoly& o) const { return divmod(*this, o).first; }

bool UniPoly::operator==(const UniPoly& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != o.c_[i]) return false;
    return true;
}

std::string UniPoly::to_string() const {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < c_.size(); ++i) os << (i ? " " : "") << c_[i].to_string();
    os << ')';
    return os.str();
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw InvalidArgument("polynomial division by zero");
    const Field& f = b.field();
    int db = b.degree();
    if (a.degree() < db) return {UniPoly(f), a};
    std::vector<Elem> r = a.coeffs();
    std::vector<Elem> quot(a.degree() - db + 1, f.zero());
    Elem li = b.lead().inv();
    const auto& bc = b.coeffs();
    for (int i = a.degree(); i >= db; --i) {
        if (r[i].is_zero()) continue;
        Elem c = r[i] * li;
        quot[i - db] = c;
        for (int j = 0; j <= db; ++j) r[i - db + j] -= c * bc[j];
    }
    r.resize(db);
    return {UniPoly(f, std::move(quot)), UniPoly(f, std::move(r))};
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a, y = b;
    while (!y.is_zero()) {
        UniPoly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

UniPoly powmod(const UniPoly& base, uint64_t e, const UniPoly& m) {
    UniPoly result = UniPoly::constant(m.field().one()) % m;
    UniPoly b = base % m;
    while (e) {
        if (e & 1) result = (result * b) % m;
        e >>= 1;
        if (e) b = (b * b) % m;
    }
    return result;
}

UniPoly frobenius_powmod(const UniPoly& g, int n, const UniPoly& m) {
    UniPoly r = g % m;
    for (int i = 0; i < n; ++i) r = powmod(r, m.field().q(), m);
    return r;
}

namespace {

// x^(Q) mod f where Q is the order of f's coefficient field.
UniPoly x_to_field_order(const UniPoly& f) {
    return frobenius_powmod(UniPoly::x(f.field()), f.field().degree(), f);
}

UniPoly pth_root(const UniPoly& f) {
    const Field& F = f.field();
    uint32_t p = F.base().p();
    int a = F.abs_degree();
    std::vector<Elem> c;
    for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) c.push_back(abs_frobenius(f[i], a - 1));
    return UniPoly(F, std::move(c));
}

}  // namespace

std::vector<std::pair<UniPoly, int>> squarefree_decomposition(const UniPoly& f_in) {
    if (f_in.is_zero()) throw InvalidArgument("squarefree decomposition of zero");
    std::vector<std::pair<UniPoly, int>> out;
    UniPoly f = f_in.monic();
    if (f.degree() == 0) return out;
    int p = static_cast<int>(f.field().base().p());
    UniPoly g = f.derivative();
    if (g.is_zero()) {
        for (auto& [h, j] : squarefree_decomposition(pth_root(f))) out.emplace_back(h, j * p);
        return out;
    }
    UniPoly c = gcd(f, g);
    UniPoly w = f / c;
    int i = 1;
    while (w.degree() > 0) {
        UniPoly y = gcd(w, c);
        UniPoly z = w / y;
        if (z.degree() > 0) out.emplace_back(z.monic(), i);
        w = y;
        c = c / y;
        ++i;
    }
    if (c.degree() > 0)
        for (auto& [h, j] : squarefree_decomposition(pth_root(c.monic()))) out.emplace_back(h, j * p);
    return out;
}

UniPoly squarefree_part(const UniPoly& f) {
    UniPoly r = UniPoly::constant(f.field().one());
    for (auto& [h, j] : squarefree_decomposition(f)) r = r * h;
    return r;
}

std::map<int, UniPoly> ddf(const UniPoly& f_in) {
    if (f_in.is_zero()) throw InvalidArgument("ddf of zero polynomial");
    std::map<int, UniPoly> out;
    UniPoly f = f_in.monic();
    UniPoly x = UniPoly::x(f.field());
    UniPoly h = x % f;
    for (int d = 1; 2 * d <= f.degree(); ++d) {
        h = frobenius_powmod(h, f.field().degree(), f);
        UniPoly g = gcd(f, h - x);
        if (g.degree() > 0) {
            out[d] = g;
            f = f / g;
            h = h % f;
        }
    }
    if (f.degree() > 0) out[f.degree()] = f;
    return out;
}

namespace {

// A polynomial sharing with f a nontrivial factor with probability about 1/2.
UniPoly splitting_candidate(const UniPoly& f, int d, std::mt19937_64& rng) {
    const Field& F = f.field();
    std::vector<Elem> rc;
    for (int i = 0; i < f.degree(); ++i) rc.push_back(F.random(rng));
    UniPoly r(F, std::move(rc));
    int n = F.degree() * d;  // extension degree of the residue fields over GF(q)
    if (F.base().p() == 2) {
        int bits = n * static_cast<int>(F.base().k());
        UniPoly t = r % f, acc = t;
        for (int i = 1; i < bits; ++i) {
            t = (t * t) % f;
            acc = acc + t;
        }
        return acc;
    }
    UniPoly t = r % f, acc = t;
    for (int i = 1; i < n; ++i) {
        t = powmod(t, F.q(), f);
        acc = (acc * t) % f;
    }
    UniPoly w = powmod(acc, (F.q() - 1) / 2, f);
    return w - UniPoly::constant(F.one());
}

}  // namespace

std::vector<UniPoly> edf(const UniPoly& f_in, int d, std::mt19937_64& rng) {
    UniPoly f = f_in.monic();
    if (f.degree() <= 0) return {};
    if (f.degree() % d) throw InvalidArgument("edf: degree not a multiple of the factor degree");
    if (f.degree() == d) return {f};
    std::vector<UniPoly> todo{f}, done;
    while (!todo.empty()) {
        UniPoly g = todo.back();
        todo.pop_back();
        if (g.degree() == d) {
            done.push_back(g);
            continue;
        }
        for (int attempt = 0;; ++attempt) {
            if (attempt > 200) throw InternalError("edf: splitting failed repeatedly");
            UniPoly h = gcd(g, splitting_candidate(g, d, rng));
            if (h.degree() > 0 && h.degree() < g.degree()) {
                todo.push_back(h);
                todo.push_back(g / h);
                break;
            }
        }
    }
    return done;
}

namespace {

bool poly_less(const UniPoly& a, const UniPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

}  // namespace

std::vector<std::pair<UniPoly, int>> factor(const UniPoly& f, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<UniPoly, int>> out;
    for (auto& [g, mult] : squarefree_decomposition(f))
        for (auto& [d, bucket] : ddf(g))
            for (UniPoly& h : edf(bucket, d, rng)) out.emplace_back(std::move(h), mult);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
    return out;
}

bool is_irreducible(const UniPoly& f) {
    if (f.degree() < 1) return false;
    if (gcd(f, f.derivative()).degree() > 0) return false;
    auto buckets = ddf(f);
    return buckets.size() == 1 && buckets.begin()->first == f.degree();
}

int count_roots(const UniPoly& f) {
    if (f.is_zero()) throw InvalidArgument("count_roots of zero polynomial");
    if (f.degree() == 0) return 0;
    UniPoly h = x_to_field_order(f) - UniPoly::x(f.field());
    return gcd(f, h).degree();
}

std::vector<Elem> roots(const UniPoly& f, uint64_t seed) {
    if (f.is_zero()) throw InvalidArgument("roots of zero polynomial");
    std::vector<Elem> out;
    if (f.degree() == 0) return out;
    UniPoly g = gcd(f, x_to_field_order(f) - UniPoly::x(f.field()));
    std::mt19937_64 rng(seed);
    for (const UniPoly& lin : edf(g, 1, rng)) out.push_back(-lin[0]);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Resultant for true degrees (leading coefficients nonzero).
Elem resultant_exact(UniPoly f, UniPoly g) {
    const Field& F = f.field();
    Elem scale = F.one();
    for (;;) {
        int m = f.degree(), n = g.degree();
        if (n == 0) return scale * g[0].pow(m);
        if (m == 0) return scale * f[0].pow(n);
        if ((m * n) & 1) scale = -scale;
        UniPoly r = f % g;
        if (r.is_zero()) return F.zero();
        // Res(f, g) = (-1)^(mn) Res(g, f) = (-1)^(mn) lc(g)^(m - deg r) Res(g, r)
        scale *= g.lead().pow(m - r.degree());
        f = std::move(g);
        g = std::move(r);
    }
}

}  // namespace

Elem resultant(const UniPoly& f, const UniPoly& g, int df, int dg) {
    const Field& F = f.field_ptr() ? f.field() : g.field();
    if (f.degree() > df || g.degree() > dg) throw InvalidArgument("resultant: formal degree below actual degree");
    if (df == 0) return f[0].pow(dg);
    if (dg == 0) return g[0].pow(df);
    int m = f.degree(), n = g.degree();
    if (m < df && n < dg) return F.zero();
    if (m < df) {
        // Res_{df,dg}(f,g) = (-1)^(df dg) lc(g)^(df - m) Res_{dg,m}(g,f)
        Elem s = g.lead().pow(df - m);
        if (((df * dg) + (dg * m)) & 1) s = -s;
        if (m <= 0) return m < 0 ? F.zero() : s * f[0].pow(dg);
        return s * resultant_exact(f, g);
    }
    Elem s = f.lead().pow(dg - n);
    if (n <= 0) return n < 0 ? F.zero() : s * g[0].pow(m);
    return s * resultant_exact(f, g);
}

UniPoly interpolate(const std::vector<Elem>& xs, const std::vector<Elem>& ys) {
    if (xs.size() != ys.size() || xs.empty()) throw InvalidArgument("interpolate: bad point set");
    const Field& F = *xs[0].field();
    size_t n = xs.size();
    std::vector<Elem> dd = ys;  // Newton divided differences, in place
    for (size_t j = 1; j < n; ++j)
        for (size_t i = n - 1; i >= j; --i) {
            Elem den = xs[i] - xs[i - j];
            if (den.is_zero()) throw InvalidArgument("interpolate: repeated abscissa");
            dd[i] = (dd[i] - dd[i - 1]) / den;
            if (i == j) break;
        }
    UniPoly result = UniPoly::constant(dd[n - 1]);
    for (size_t i = n - 1; i-- > 0;) {
        UniPoly lin(F, {-xs[i], F.one()});
        result = result * lin + UniPoly::constant(dd[i]);
    }
    return result;
}

}  // namespace dpfq::ff
