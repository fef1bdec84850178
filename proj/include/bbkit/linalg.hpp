#pragma once

#include <optional>
#include <vector>

#include "bbkit/field.hpp"

namespace bbkit {

using Vec = std::vector<Fe>;

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static Matrix from_rows(const std::vector<Vec>& rows);
    static Matrix from_columns(const std::vector<Vec>& cols);
    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Fe& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Fe at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Vec row(std::size_t r) const;
    Vec column(std::size_t c) const;
    void append_row(const Vec& v);

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Fe> data_;
};

Matrix transpose(const Matrix& a);
Matrix mat_mul(const FieldTower& F, const Matrix& a, const Matrix& b);
Vec mat_vec(const FieldTower& F, const Matrix& a, const Vec& v);
Matrix mat_frob(const FieldTower& F, const Matrix& a, int i);
Vec vec_frob(const FieldTower& F, const Vec& v, int i);
Vec vec_scale(const FieldTower& F, const Vec& v, Fe c);
Vec vec_add(const FieldTower& F, const Vec& a, const Vec& b);
Fe dot(const FieldTower& F, const Vec& a, const Vec& b);

// Reduced row echelon form with zero rows removed; pivots receives pivot columns.
Matrix rref(const FieldTower& F, Matrix a, std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const FieldTower& F, const Matrix& a);
// Rows spanning {x : a x = 0}.
Matrix nullspace(const FieldTower& F, const Matrix& a);
std::optional<Matrix> inverse(const FieldTower& F, const Matrix& a);
// Some x with a x = b, if one exists.
std::optional<Vec> solve(const FieldTower& F, const Matrix& a, const Vec& b);
// Highest level among the entries.
Level entry_level(const FieldTower& F, const Matrix& a);
Level entry_level(const FieldTower& F, const Vec& v);

}  // namespace bbkit
