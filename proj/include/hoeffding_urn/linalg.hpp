#pragma once

#include "hoeffding_urn/rational.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace hoeffding_urn::linalg {

using Vector = std::vector<Rational>;

/// Dense row-major matrix over the rationals. Sizes here are at most a few
/// dozen, so no attempt is made at fraction-free elimination.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix from_rows(std::span<const Vector> rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vector row(std::size_t r) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

struct RowEchelon {
    Matrix reduced;                     // reduced row echelon form
    std::vector<std::size_t> pivots;    // pivot column of each nonzero row
};

RowEchelon rref(Matrix m);

std::size_t rank(const Matrix& m);
std::size_t rank(std::span<const Vector> rows);

/// Basis of { x : m x = 0 }, one vector per free column, with that free
/// coordinate set to 1.
std::vector<Vector> nullspace(const Matrix& m);

/// Unique solution of a square nonsingular system; nullopt when singular.
std::optional<Vector> solve(const Matrix& a, const Vector& b);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);

}  // namespace hoeffding_urn::linalg
