#include "dpfq/cubic/form.hpp"

#include "dpfq/error.hpp"

namespace dpfq::cubic {

std::vector<std::vector<int>> monomials(int nvars, int degree) {
    std::vector<std::vector<int>> out;
    std::vector<int> e(nvars, 0);
    std::function<void(int, int)> rec = [&](int var, int left) {
        if (var == nvars - 1) {
            e[var] = left;
            out.push_back(e);
            return;
        }
        for (int k = left; k >= 0; --k) {
            e[var] = k;
            rec(var + 1, left - k);
        }
    };
    if (nvars > 0) rec(0, degree);
    return out;
}

const std::array<std::array<int, 4>, 20>& cubic_exponents() {
    static const auto table = [] {
        std::array<std::array<int, 4>, 20> t{};
        auto m = monomials(4, 3);
        for (int i = 0; i < 20; ++i)
            for (int v = 0; v < 4; ++v) t[i][v] = m[i][v];
        return t;
    }();
    return table;
}

int cubic_index(int i, int j, int k) {
    static const auto lookup = [] {
        std::array<int, 64> t{};
        t.fill(-1);
        const auto& ex = cubic_exponents();
        for (int m = 0; m < 20; ++m) t[ex[m][0] + 4 * ex[m][1] + 16 * ex[m][2]] = m;
        return t;
    }();
    std::array<int, 4> e{};
    ++e[i];
    ++e[j];
    ++e[k];
    return lookup[e[0] + 4 * e[1] + 16 * e[2]];
}

CubicForm::CubicForm(const Field& f) : f_(&f) { c_.fill(f.zero()); }

CubicForm::CubicForm(const Field& f, std::array<Elem, 20> coeffs) : f_(&f), c_(coeffs) {}

bool CubicForm::is_zero() const noexcept {
    for (const auto& c : c_)
        if (!c.is_zero()) return false;
    return true;
}

Elem CubicForm::eval(std::span<const Elem> x) const {
    const auto& ex = cubic_exponents();
    std::array<std::array<Elem, 4>, 4> pw;
    for (int v = 0; v < 4; ++v) {
        pw[v][0] = f_->one();
        for (int k = 1; k < 4; ++k) pw[v][k] = pw[v][k - 1] * x[v];
    }
    Elem s = f_->zero();
    for (int m = 0; m < 20; ++m) {
        if (c_[m].is_zero()) continue;
        s += c_[m] * pw[0][ex[m][0]] * pw[1][ex[m][1]] * pw[2][ex[m][2]] * pw[3][ex[m][3]];
    }
    return s;
}

std::array<Elem, 4> CubicForm::gradient(std::span<const Elem> x) const {
    const auto& ex = cubic_exponents();
    std::array<std::array<Elem, 4>, 4> pw;
    for (int v = 0; v < 4; ++v) {
        pw[v][0] = f_->one();
        for (int k = 1; k < 4; ++k) pw[v][k] = pw[v][k - 1] * x[v];
    }
    std::array<Elem, 4> g;
    g.fill(f_->zero());
    for (int m = 0; m < 20; ++m) {
        if (c_[m].is_zero()) continue;
        for (int v = 0; v < 4; ++v) {
            int e = ex[m][v];
            if (!e) continue;
            Elem t = c_[m] * f_->from_int(e);
            for (int w = 0; w < 4; ++w) t *= pw[w][ex[m][w] - (w == v ? 1 : 0)];
            g[v] += t;
        }
    }
    return g;
}

std::array<Elem, 4> CubicForm::along(std::span<const Elem> p, std::span<const Elem> r) const {
    // f(p + u r) = f(p) + u grad f(p).r + u^2 grad f(r).p + u^3 f(r).
    auto gp = gradient(p);
    auto gr = gradient(r);
    Elem d1 = f_->zero(), d2 = f_->zero();
    for (int v = 0; v < 4; ++v) {
        d1 += gp[v] * r[v];
        d2 += gr[v] * p[v];
    }
    return {eval(p), d1, d2, eval(r)};
}

bool CubicForm::contains_line(std::span<const Elem> p, std::span<const Elem> r) const {
    for (const auto& c : along(p, r))
        if (!c.is_zero()) return false;
    return true;
}

CubicForm CubicForm::compose(const geom::Matrix& T) const {
    if (T.rows() != 4 || T.cols() != 4) throw InvalidArgument("coordinate change must be 4x4");
    const auto& ex = cubic_exponents();
    CubicForm out(*f_);
    for (int m = 0; m < 20; ++m) {
        if (c_[m].is_zero()) continue;
        std::array<int, 3> vars{};
        int n = 0;
        for (int v = 0; v < 4; ++v)
            for (int k = 0; k < ex[m][v]; ++k) vars[n++] = v;
        // Product of rows vars[0], vars[1], vars[2] of T as linear forms.
        std::array<Elem, 4> a, b, c;
        for (int j = 0; j < 4; ++j) {
            a[j] = T.at(vars[0], j);
            b[j] = T.at(vars[1], j);
            c[j] = T.at(vars[2], j);
        }
        out = out + product_of_linear(a, b, c) * c_[m];
    }
    return out;
}

CubicForm CubicForm::map(const Field& target, const std::function<Elem(const Elem&)>& phi) const {
    std::array<Elem, 20> c;
    for (int m = 0; m < 20; ++m) c[m] = phi(c_[m]);
    return CubicForm(target, c);
}

CubicForm CubicForm::operator+(const CubicForm& o) const {
    CubicForm r = *this;
    for (int m = 0; m < 20; ++m) r.c_[m] += o.c_[m];
    return r;
}

CubicForm CubicForm::operator*(const Elem& s) const {
    CubicForm r = *this;
    for (auto& c : r.c_) c *= s;
    return r;
}

bool CubicForm::operator==(const CubicForm& o) const { return c_ == o.c_; }

CubicForm product_of_linear(const std::array<Elem, 4>& a, const std::array<Elem, 4>& b, const std::array<Elem, 4>& c) {
    const Field& f = *a[0].field();
    CubicForm out(f);
    std::array<Elem, 20> acc;
    acc.fill(f.zero());
    for (int i = 0; i < 4; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j < 4; ++j) {
            if (b[j].is_zero()) continue;
            Elem ab = a[i] * b[j];
            for (int k = 0; k < 4; ++k) acc[cubic_index(i, j, k)] += ab * c[k];
        }
    }
    return CubicForm(f, acc);
}

}  // namespace dpfq::cubic
