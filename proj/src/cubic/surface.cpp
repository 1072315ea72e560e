#include "dpfq/cubic/surface.hpp"

#include <map>
#include <mutex>

#include "dpfq/error.hpp"
#include "dpfq/ff/table_field.hpp"

namespace dpfq::cubic {

CubicSurface::CubicSurface(std::shared_ptr<const ff::FieldTower> tower, std::array<uint8_t, 20> coeffs)
    : tower_(std::move(tower)), c_(coeffs) {
    const ff::BaseField& F = tower_->base().base();
    int lead = -1;
    for (int m = 0; m < 20; ++m) {
        if (c_[m] >= F.q()) throw InvalidArgument("coefficient index out of range");
        if (lead < 0 && c_[m]) lead = m;
    }
    if (lead < 0) throw InvalidArgument("cubic form is identically zero");
    uint8_t s = F.inv(c_[lead]);
    for (auto& c : c_) c = F.mul(c, s);
}

CubicSurface CubicSurface::from_ints(uint64_t q, std::span<const int64_t> coeffs, uint64_t seed) {
    if (coeffs.size() != 20) throw InvalidArgument("a cubic surface needs 20 coefficients");
    auto tower = ff::shared_tower(q, {1}, seed);
    const ff::BaseField& F = tower->base().base();
    std::array<uint8_t, 20> c{};
    for (int m = 0; m < 20; ++m) {
        if (F.k() == 1)
            c[m] = F.from_int(coeffs[m]);
        else if (coeffs[m] < 0 || static_cast<uint64_t>(coeffs[m]) >= q)
            throw InvalidArgument("coefficients over GF(" + std::to_string(q) + ") must be indices in [0, q)");
        else
            c[m] = static_cast<uint8_t>(coeffs[m]);
    }
    return CubicSurface(tower, c);
}

CubicSurface CubicSurface::from_form(std::shared_ptr<const ff::FieldTower> tower, const CubicForm& f) {
    const ff::BaseField& mine = tower->base().base();
    const ff::BaseField& theirs = f.field().base();
    if (mine.q() != theirs.q() || mine.modulus() != theirs.modulus())
        throw InvalidArgument("form is over another presentation of GF(q)");
    std::array<uint8_t, 20> c{};
    for (int m = 0; m < 20; ++m) {
        if (!f[m].in_base()) throw InvalidArgument("form is not defined over the base field");
        c[m] = f[m].coeff(0);
    }
    return CubicSurface(std::move(tower), c);
}

CubicForm CubicSurface::form() const { return form_in(tower_->base()); }

CubicForm CubicSurface::form_in(const Field& level) const {
    const ff::BaseField& mine = tower_->base().base();
    const ff::BaseField& theirs = level.base();
    if (mine.q() != theirs.q() || mine.modulus() != theirs.modulus())
        throw InvalidArgument("level is not an extension of this surface's base field");
    std::array<Elem, 20> c;
    for (int m = 0; m < 20; ++m) c[m] = level.from_base(c_[m]);
    return CubicForm(level, c);
}

CubicSurface CubicSurface::transform(const geom::Matrix& T) const { return from_form(tower_, form().compose(T)); }

namespace {

// Rows of the degree-6 Macaulay matrix as sparse (column, coefficient index) lists,
// with the partial-derivative multipliers folded into a callback.
struct MacaulayLayout {
    std::vector<std::vector<int>> cubics, quartics, sextics;
    std::array<int, 2401> sextic_col{};
    MacaulayLayout() {
        cubics = monomials(4, 3);
        quartics = monomials(4, 4);
        sextics = monomials(4, 6);
        sextic_col.fill(-1);
        for (size_t i = 0; i < sextics.size(); ++i) sextic_col[code(sextics[i])] = static_cast<int>(i);
    }
    static int code(const std::vector<int>& e) { return e[0] + 7 * e[1] + 49 * e[2] + 343 * e[3]; }
};

const MacaulayLayout& layout() {
    static const MacaulayLayout l;
    return l;
}

// Calls emit(row, col, value) for every nonzero entry, with values as integers for the
// exponent factors and the coefficient index m: entry = exponent * c[m].
template <class Emit>
void macaulay_entries(Emit emit) {
    const auto& L = layout();
    const auto& ex = cubic_exponents();
    int row = 0;
    for (const auto& mono : L.cubics) {
        for (int m = 0; m < 20; ++m) {
            std::vector<int> e(4);
            for (int v = 0; v < 4; ++v) e[v] = mono[v] + ex[m][v];
            emit(row, L.sextic_col[MacaulayLayout::code(e)], m, 1);
        }
        ++row;
    }
    for (int var = 0; var < 4; ++var)
        for (const auto& mono : L.quartics) {
            for (int m = 0; m < 20; ++m) {
                if (!ex[m][var]) continue;
                std::vector<int> e(4);
                for (int v = 0; v < 4; ++v) e[v] = mono[v] + ex[m][v] - (v == var ? 1 : 0);
                emit(row, L.sextic_col[MacaulayLayout::code(e)], m, ex[m][var]);
            }
            ++row;
        }
}

struct Entry {
    int row, col, m, mult;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> e = [] {
        std::vector<Entry> out;
        macaulay_entries([&](int r, int c, int m, int mult) { out.push_back({r, c, m, mult}); });
        return out;
    }();
    return e;
}

constexpr int kRows = 20 + 4 * 35;
constexpr int kCols = 84;

}  // namespace

SmoothnessEvidence is_smooth(const CubicSurface& X) {
    const ff::BaseField& F = X.tower().base().base();
    std::vector<std::array<uint8_t, kCols>> M(kRows);
    for (auto& r : M) r.fill(0);
    for (const auto& e : entries()) {
        uint8_t v = F.mul(F.from_int(e.mult), X.coeffs()[e.m]);
        M[e.row][e.col] = F.add(M[e.row][e.col], v);
    }
    int rank = 0;
    for (int c = 0; c < kCols && rank < kRows; ++c) {
        int piv = -1;
        for (int r = rank; r < kRows; ++r)
            if (M[r][c]) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(M[piv], M[rank]);
        uint8_t inv = F.inv(M[rank][c]);
        for (int k = c; k < kCols; ++k) M[rank][k] = F.mul(M[rank][k], inv);
        for (int r = rank + 1; r < kRows; ++r) {
            uint8_t f = M[r][c];
            if (!f) continue;
            for (int k = c; k < kCols; ++k) M[r][k] = F.sub(M[r][k], F.mul(f, M[rank][k]));
        }
        ++rank;
    }
    return {rank == kCols, "macaulay-degree-6", rank, kCols};
}

bool is_smooth_gf2(uint32_t mask) {
    // Rows are 84-bit vectors in two words.
    struct Row {
        uint64_t lo, hi;
    };
    std::array<Row, kRows> M{};
    for (const auto& e : entries()) {
        if (!((mask >> e.m) & 1) || !(e.mult & 1)) continue;
        if (e.col < 64)
            M[e.row].lo ^= uint64_t{1} << e.col;
        else
            M[e.row].hi ^= uint64_t{1} << (e.col - 64);
    }
    int rank = 0;
    for (int c = 0; c < kCols; ++c) {
        auto bit = [&](const Row& r) { return c < 64 ? (r.lo >> c) & 1 : (r.hi >> (c - 64)) & 1; };
        int piv = -1;
        for (int r = rank; r < kRows; ++r)
            if (bit(M[r])) {
                piv = r;
                break;
            }
        if (piv < 0) return false;  // a column without pivot means rank < 84
        std::swap(M[piv], M[rank]);
        for (int r = rank + 1; r < kRows; ++r)
            if (bit(M[r])) {
                M[r].lo ^= M[rank].lo;
                M[r].hi ^= M[rank].hi;
            }
        ++rank;
    }
    return true;
}

const Field& extension_level(const CubicSurface& X, int n) {
    if (n < 1) throw InvalidArgument("extension degree must be positive");
    if (n == 1) return X.tower().base();
    auto tower = ff::shared_tower(X.q(), {1, n}, X.seed());
    return tower->level(1);
}

namespace {

const ff::TableField& table_for(const Field& f) {
    static std::mutex mu;
    static std::map<const Field*, std::unique_ptr<ff::TableField>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[&f];
    if (!slot) slot = std::make_unique<ff::TableField>(f);
    return *slot;
}

// Visits every normalized point v of P^2(GF(Q)) as table elements.
template <class Visit>
void for_each_plane_point(const ff::TableField& T, Visit visit) {
    uint32_t Q = T.order();
    std::vector<uint32_t> elems(Q);
    for (uint32_t i = 0; i < Q; ++i) elems[i] = T.from_index(i);
    for (uint32_t a = 0; a < Q; ++a)
        for (uint32_t b = 0; b < Q; ++b) visit(T.one(), elems[a], elems[b]);
    for (uint32_t b = 0; b < Q; ++b) visit(T.zero(), T.one(), elems[b]);
    visit(T.zero(), T.zero(), T.one());
}

// Coefficients of f(x0, v) as a cubic in x0.
struct FiberCoeffs {
    std::array<uint32_t, 20> c;
    void operator()(const ff::TableField& T, uint32_t v1, uint32_t v2, uint32_t v3, uint32_t out[4]) const {
        uint32_t v11 = T.mul(v1, v1), v12 = T.mul(v1, v2), v13 = T.mul(v1, v3);
        uint32_t v22 = T.mul(v2, v2), v23 = T.mul(v2, v3), v33 = T.mul(v3, v3);
        out[3] = c[0];
        out[2] = T.add(T.add(T.mul(c[1], v1), T.mul(c[2], v2)), T.mul(c[3], v3));
        uint32_t a1 = T.mul(c[4], v11);
        a1 = T.add(a1, T.mul(c[5], v12));
        a1 = T.add(a1, T.mul(c[6], v13));
        a1 = T.add(a1, T.mul(c[7], v22));
        a1 = T.add(a1, T.mul(c[8], v23));
        a1 = T.add(a1, T.mul(c[9], v33));
        out[1] = a1;
        uint32_t a0 = T.mul(c[10], T.mul(v11, v1));
        a0 = T.add(a0, T.mul(c[11], T.mul(v11, v2)));
        a0 = T.add(a0, T.mul(c[12], T.mul(v11, v3)));
        a0 = T.add(a0, T.mul(c[13], T.mul(v1, v22)));
        a0 = T.add(a0, T.mul(c[14], T.mul(v12, v3)));
        a0 = T.add(a0, T.mul(c[15], T.mul(v1, v33)));
        a0 = T.add(a0, T.mul(c[16], T.mul(v22, v2)));
        a0 = T.add(a0, T.mul(c[17], T.mul(v22, v3)));
        a0 = T.add(a0, T.mul(c[18], T.mul(v2, v33)));
        a0 = T.add(a0, T.mul(c[19], T.mul(v33, v3)));
        out[0] = a0;
    }
};

FiberCoeffs fiber_coeffs(const CubicSurface& X, const Field& level, const ff::TableField& T) {
    FiberCoeffs fc;
    for (int m = 0; m < 20; ++m) fc.c[m] = T.from_elem(level.from_base(X.coeffs()[m]));
    return fc;
}

}  // namespace

uint64_t count_points(const CubicSurface& X, int n) {
    const Field& level = extension_level(X, n);
    const ff::TableField& T = table_for(level);
    FiberCoeffs fc = fiber_coeffs(X, level, T);
    uint64_t total = X.coeffs()[0] == 0 ? 1 : 0;
    uint32_t a[4];
    for_each_plane_point(T, [&](uint32_t v1, uint32_t v2, uint32_t v3) {
        fc(T, v1, v2, v3, a);
        total += ff::count_roots_cubic(T, a[0], a[1], a[2], a[3]);
    });
    return total;
}

uint64_t count_points_exhaustive(const CubicSurface& X, int n) {
    const Field& level = extension_level(X, n);
    const ff::TableField& T = table_for(level);
    FiberCoeffs fc = fiber_coeffs(X, level, T);
    const uint32_t Q = T.order(), Z = T.zero(), order = Q - 1;
    // Logarithms of x, x^2, x^3 for every nonzero x, so each term is one modular addition.
    std::vector<uint32_t> l2(order), l3(order);
    for (uint32_t l = 0; l < order; ++l) {
        l2[l] = static_cast<uint32_t>(2 * uint64_t{l} % order);
        l3[l] = static_cast<uint32_t>(3 * uint64_t{l} % order);
    }
    auto term = [order](uint32_t a, uint32_t l) { return a + l >= order ? a + l - order : a + l; };
    uint64_t total = X.coeffs()[0] == 0 ? 1 : 0;
    uint32_t a[4];
    for_each_plane_point(T, [&](uint32_t v1, uint32_t v2, uint32_t v3) {
        fc(T, v1, v2, v3, a);
        total += T.is_zero(a[0]);  // x0 = 0
        uint64_t roots = 0;
        for (uint32_t l = 0; l < order; ++l) {
            uint32_t s = a[0];
            if (a[1] != Z) s = T.add(s, term(a[1], l));
            if (a[2] != Z) s = T.add(s, term(a[2], l2[l]));
            if (a[3] != Z) s = T.add(s, term(a[3], l3[l]));
            roots += s == Z;
        }
        total += roots;
    });
    return total;
}

std::vector<int64_t> trace_vector(const CubicSurface& X, int N) {
    std::vector<int64_t> t;
    int64_t qn = 1;
    for (int n = 1; n <= N; ++n) {
        qn *= static_cast<int64_t>(X.q());
        int64_t count = static_cast<int64_t>(count_points(X, n));
        int64_t num = count - qn * qn - 1;
        if (num % qn) throw InternalError("non-integral trace at n = " + std::to_string(n));
        int64_t tn = num / qn;
        if (tn < -7 || tn > 7) throw InternalError("trace out of range at n = " + std::to_string(n));
        t.push_back(tn);
    }
    return t;
}

}  // namespace dpfq::cubic
