#include "dpfq/geom/matrix.hpp"

#include "dpfq/error.hpp"

namespace dpfq::geom {

Matrix::Matrix(const Field& f, int rows, int cols)
    : f_(&f), rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, f.zero()) {}

Matrix Matrix::from_rows(const Field& f, const std::vector<Vec>& rows) {
    int cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    Matrix m(f, static_cast<int>(rows.size()), cols);
    for (int r = 0; r < m.rows_; ++r) {
        if (static_cast<int>(rows[r].size()) != cols) throw InvalidArgument("ragged matrix rows");
        for (int c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
    }
    return m;
}

Matrix Matrix::identity(const Field& f, int n) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
}

Vec Matrix::row(int r) const { return Vec(a_.begin() + static_cast<size_t>(r) * cols_, a_.begin() + static_cast<size_t>(r + 1) * cols_); }

std::vector<int> Matrix::rref() {
    std::vector<int> pivots;
    int rank = 0;
    for (int c = 0; c < cols_ && rank < rows_; ++c) {
        int piv = -1;
        for (int r = rank; r < rows_; ++r)
            if (!at(r, c).is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (int cc = 0; cc < cols_; ++cc) std::swap(at(piv, cc), at(rank, cc));
        Elem inv = at(rank, c).inv();
        for (int cc = c; cc < cols_; ++cc) at(rank, cc) *= inv;
        for (int r = 0; r < rows_; ++r) {
            if (r == rank || at(r, c).is_zero()) continue;
            Elem f = at(r, c);
            for (int cc = c; cc < cols_; ++cc) at(r, cc) -= f * at(rank, cc);
        }
        pivots.push_back(c);
        ++rank;
    }
    return pivots;
}

int Matrix::rank() const {
    Matrix m = *this;
    return static_cast<int>(m.rref().size());
}

std::vector<Vec> Matrix::kernel() const {
    Matrix m = *this;
    std::vector<int> pivots = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (int free = 0; free < cols_; ++free) {
        if (is_pivot[free]) continue;
        Vec v(cols_, f_->zero());
        v[free] = f_->one();
        for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m.at(static_cast<int>(i), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

Elem Matrix::determinant() const {
    if (rows_ != cols_) throw InvalidArgument("determinant of non-square matrix");
    Matrix m = *this;
    Elem det = f_->one();
    for (int c = 0; c < cols_; ++c) {
        int piv = -1;
        for (int r = c; r < rows_; ++r)
            if (!m.at(r, c).is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) return f_->zero();
        if (piv != c) {
            for (int cc = 0; cc < cols_; ++cc) std::swap(m.at(piv, cc), m.at(c, cc));
            det = -det;
        }
        det *= m.at(c, c);
        Elem inv = m.at(c, c).inv();
        for (int r = c + 1; r < rows_; ++r) {
            if (m.at(r, c).is_zero()) continue;
            Elem f = m.at(r, c) * inv;
            for (int cc = c; cc < cols_; ++cc) m.at(r, cc) -= f * m.at(c, cc);
        }
    }
    return det;
}

Vec Matrix::apply(const Vec& v) const {
    if (static_cast<int>(v.size()) != cols_) throw InvalidArgument("matrix-vector size mismatch");
    Vec out(rows_, f_->zero());
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) out[r] += at(r, c) * v[c];
    return out;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw InvalidArgument("matrix product size mismatch");
    Matrix out(*f_, rows_, o.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            if (at(r, k).is_zero()) continue;
            for (int c = 0; c < o.cols_; ++c) out.at(r, c) += at(r, k) * o.at(k, c);
        }
    return out;
}

Matrix Matrix::inverse() const {
    if (rows_ != cols_) throw InvalidArgument("inverse of non-square matrix");
    int n = rows_;
    Matrix aug(*f_, n, 2 * n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) aug.at(r, c) = at(r, c);
        aug.at(r, n + r) = f_->one();
    }
    std::vector<int> piv = aug.rref();
    if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) throw InvalidArgument("matrix is singular");
    Matrix inv(*f_, n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) inv.at(r, c) = aug.at(r, n + c);
    return inv;
}

}  // namespace dpfq::geom
