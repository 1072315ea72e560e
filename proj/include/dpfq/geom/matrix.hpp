#pragma once

#include <vector>

#include "dpfq/ff/field.hpp"

namespace dpfq::geom {

using ff::Elem;
using ff::Field;
using Vec = std::vector<Elem>;

/// Dense row-major matrix over a Field; exact Gaussian elimination.
class Matrix {
public:
    Matrix(const Field& f, int rows, int cols);
    static Matrix from_rows(const Field& f, const std::vector<Vec>& rows);
    static Matrix identity(const Field& f, int n);

    const Field& field() const noexcept { return *f_; }
    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    Elem& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const Elem& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }
    Vec row(int r) const;

    /// Reduced row echelon form; returns the pivot columns.
    std::vector<int> rref();
    int rank() const;
    /// Basis of the null space in echelon form: one vector per free column, with a 1
    /// in that column and zeros in the other free columns.
    std::vector<Vec> kernel() const;
    Elem determinant() const;
    Vec apply(const Vec& v) const;
    Matrix operator*(const Matrix& o) const;
    /// Inverse of a square matrix; throws if singular.
    Matrix inverse() const;

private:
    const Field* f_;
    int rows_, cols_;
    std::vector<Elem> a_;
};

}  // namespace dpfq::geom
