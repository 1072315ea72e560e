#include "dpfq/ff/field.hpp"

#include <algorithm>
#include <sstream>

#include "dpfq/error.hpp"

namespace dpfq::ff {

Field::Field(std::shared_ptr<const BaseField> base, std::vector<uint8_t> modulus)
    : base_(std::move(base)), m_(static_cast<int>(modulus.size()) - 1), modulus_(std::move(modulus)) {
    if (m_ < 1 || m_ > kMaxDegree)
        throw InvalidArgument("extension degree " + std::to_string(m_) + " outside [1, 16]");
    if (modulus_.back() != 1) throw InvalidArgument("field modulus must be monic");

    unsigned __int128 order = 1;
    for (int i = 0; i < m_; ++i) order *= base_->q();
    order_ = order >> 64 ? 0 : static_cast<uint64_t>(order);

    // x^q, then its powers, as columns of the Frobenius matrix.
    std::array<uint8_t, kMaxDegree> xq{}, acc{}, tmp{};
    std::array<uint8_t, kMaxDegree> x{};
    if (m_ == 1) {
        x[0] = base_->neg(modulus_[0]);
    } else {
        x[1] = 1;
    }
    xq[0] = 1;
    for (uint32_t i = 0; i < base_->q(); ++i) {
        mul(xq.data(), x.data(), tmp.data());
        xq = tmp;
    }
    frob_matrix_.assign(static_cast<size_t>(m_) * m_, 0);
    acc = {};
    acc[0] = 1;
    for (int col = 0; col < m_; ++col) {
        for (int row = 0; row < m_; ++row) frob_matrix_[row * m_ + col] = acc[row];
        mul(acc.data(), xq.data(), tmp.data());
        acc = tmp;
    }
}

uint64_t Field::order() const {
    if (!order_) throw InvalidArgument("field order exceeds 64 bits");
    return order_;
}

Elem Field::zero() const {
    Elem e;
    e.f_ = this;
    return e;
}

Elem Field::one() const { return from_base(1); }

Elem Field::gen() const {
    Elem e = zero();
    if (m_ == 1)
        e.c_[0] = base_->neg(modulus_[0]);
    else
        e.c_[1] = 1;
    return e;
}

Elem Field::from_base(uint8_t a) const {
    Elem e = zero();
    e.c_[0] = a;
    return e;
}

Elem Field::from_int(int64_t n) const { return from_base(base_->from_int(n)); }

Elem Field::from_coeffs(std::span<const uint8_t> c) const {
    if (c.size() > static_cast<size_t>(m_)) throw InvalidArgument("too many coefficients for field element");
    Elem e = zero();
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] >= base_->q()) throw InvalidArgument("coefficient out of range");
        e.c_[i] = c[i];
    }
    return e;
}

Elem Field::from_index(uint64_t n) const {
    Elem e = zero();
    for (int i = 0; i < m_; ++i, n /= base_->q()) e.c_[i] = static_cast<uint8_t>(n % base_->q());
    return e;
}

Elem Field::random(std::mt19937_64& rng) const {
    std::uniform_int_distribution<uint32_t> pick(0, base_->q() - 1);
    Elem e = zero();
    for (int i = 0; i < m_; ++i) e.c_[i] = static_cast<uint8_t>(pick(rng));
    return e;
}

void Field::mul(const uint8_t* a, const uint8_t* b, uint8_t* out) const noexcept {
    const BaseField& F = *base_;
    if (m_ == 1) {
        out[0] = F.mul(a[0], b[0]);
        return;
    }
    uint8_t prod[2 * kMaxDegree] = {};
    for (int i = 0; i < m_; ++i) {
        if (!a[i]) continue;
        for (int j = 0; j < m_; ++j) prod[i + j] = F.add(prod[i + j], F.mul(a[i], b[j]));
    }
    for (int i = 2 * m_ - 2; i >= m_; --i) {
        uint8_t c = prod[i];
        if (!c) continue;
        for (int j = 0; j < m_; ++j) prod[i - m_ + j] = F.sub(prod[i - m_ + j], F.mul(c, modulus_[j]));
    }
    std::copy(prod, prod + m_, out);
}

void Field::frob(const uint8_t* a, uint8_t* out) const noexcept {
    const BaseField& F = *base_;
    for (int row = 0; row < m_; ++row) {
        uint8_t s = 0;
        for (int col = 0; col < m_; ++col)
            if (a[col]) s = F.add(s, F.mul(frob_matrix_[row * m_ + col], a[col]));
        out[row] = s;
    }
}

bool Elem::is_zero() const noexcept {
    for (int i = 0; i < f_->degree(); ++i)
        if (c_[i]) return false;
    return true;
}

bool Elem::is_one() const noexcept {
    if (c_[0] != 1) return false;
    for (int i = 1; i < f_->degree(); ++i)
        if (c_[i]) return false;
    return true;
}

bool Elem::in_base() const noexcept {
    for (int i = 1; i < f_->degree(); ++i)
        if (c_[i]) return false;
    return true;
}

uint64_t Elem::index() const noexcept {
    uint64_t n = 0;
    for (int i = f_->degree(); i-- > 0;) n = n * f_->q() + c_[i];
    return n;
}

Elem Elem::operator+(const Elem& o) const noexcept {
    Elem r = *this;
    const BaseField& F = f_->base();
    for (int i = 0; i < f_->degree(); ++i) r.c_[i] = F.add(c_[i], o.c_[i]);
    return r;
}

Elem Elem::operator-(const Elem& o) const noexcept {
    Elem r = *this;
    const BaseField& F = f_->base();
    for (int i = 0; i < f_->degree(); ++i) r.c_[i] = F.sub(c_[i], o.c_[i]);
    return r;
}

Elem Elem::operator-() const noexcept {
    Elem r = *this;
    const BaseField& F = f_->base();
    for (int i = 0; i < f_->degree(); ++i) r.c_[i] = F.neg(c_[i]);
    return r;
}

Elem Elem::operator*(const Elem& o) const noexcept {
    Elem r;
    r.f_ = f_;
    f_->mul(c_.data(), o.c_.data(), r.c_.data());
    return r;
}

Elem Elem::operator/(const Elem& o) const { return *this * o.inv(); }

bool Elem::operator==(const Elem& o) const noexcept {
    for (int i = 0; i < f_->degree(); ++i)
        if (c_[i] != o.c_[i]) return false;
    return true;
}

bool Elem::operator<(const Elem& o) const noexcept {
    for (int i = f_->degree(); i-- > 0;)
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    return false;
}

Elem Elem::pow(uint64_t e) const noexcept {
    Elem result = f_->one();
    Elem base = *this;
    while (e) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

Elem Elem::frobenius(int i) const noexcept {
    int m = f_->degree();
    i %= m;
    if (i < 0) i += m;
    Elem r = *this;
    for (int k = 0; k < i; ++k) {
        Elem t;
        t.f_ = f_;
        f_->frob(r.c_.data(), t.c_.data());
        r = t;
    }
    return r;
}

Elem Elem::inv() const {
    if (is_zero()) throw InvalidArgument("inverse of zero");
    if (f_->degree() == 1) return f_->from_base(f_->base().inv(c_[0]));
    // x^-1 = N(x)^-1 * x^(q + q^2 + ... + q^(m-1)), with N(x) in GF(q).
    Elem conj_prod = f_->one();
    Elem t = *this;
    for (int i = 1; i < f_->degree(); ++i) {
        t = t.frobenius();
        conj_prod *= t;
    }
    Elem norm = conj_prod * *this;
    return conj_prod * f_->from_base(f_->base().inv(norm.c_[0]));
}

int Elem::degree() const noexcept {
    Elem t = *this;
    for (int n = 1; n <= f_->degree(); ++n) {
        t = t.frobenius();
        if (t == *this) return n;
    }
    return f_->degree();
}

bool Elem::is_square() const {
    const BaseField& F = f_->base();
    if (F.p() == 2) return true;
    if (is_zero()) return true;
    Elem norm = *this;
    Elem t = *this;
    for (int i = 1; i < f_->degree(); ++i) {
        t = t.frobenius();
        norm *= t;
    }
    // Euler's criterion in GF(q) on the norm.
    uint8_t n = norm.c_[0], r = 1;
    for (uint32_t e = (F.q() - 1) / 2; e; --e) r = F.mul(r, n);
    return r == 1;
}

std::string Elem::to_string() const {
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < f_->degree(); ++i) os << (i ? "," : "") << static_cast<int>(c_[i]);
    os << ']';
    return os.str();
}

size_t ElemHash::operator()(const Elem& x) const noexcept {
    size_t h = 1469598103934665603ull;
    for (uint8_t c : x.coeffs()) h = (h ^ c) * 1099511628211ull;
    return h;
}

Elem abs_frobenius(const Elem& x, int i) {
    Elem r = x;
    for (int k = 0; k < i; ++k) r = r.pow(x.field()->base().p());
    return r;
}

}  // namespace dpfq::ff
