#include "hoeffding_urn/linalg.hpp"

#include <cassert>
#include <utility>

namespace hoeffding_urn::linalg {

Matrix Matrix::from_rows(std::span<const Vector> rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        assert(rows[r].size() == m.cols());
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Vector Matrix::row(std::size_t r) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

RowEchelon rref(Matrix m) {
    RowEchelon out;
    std::size_t lead_row = 0;
    for (std::size_t col = 0; col < m.cols() && lead_row < m.rows(); ++col) {
        std::size_t pivot = lead_row;
        while (pivot < m.rows() && sgn(m(pivot, col)) == 0) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != lead_row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(lead_row, c));

        const Rational inv = 1 / m(lead_row, col);
        for (std::size_t c = col; c < m.cols(); ++c) m(lead_row, c) *= inv;

        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == lead_row || sgn(m(r, col)) == 0) continue;
            const Rational factor = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= factor * m(lead_row, c);
        }
        out.pivots.push_back(col);
        ++lead_row;
    }
    out.reduced = std::move(m);
    return out;
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::size_t rank(std::span<const Vector> rows) {
    if (rows.empty()) return 0;
    return rank(Matrix::from_rows(rows));
}

std::vector<Vector> nullspace(const Matrix& m) {
    const RowEchelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;

    std::vector<Vector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vector x(m.cols());
        x[free] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = -e.reduced(r, free);
        basis.push_back(std::move(x));
    }
    return basis;
}

std::optional<Vector> solve(const Matrix& a, const Vector& b) {
    assert(a.rows() == a.cols() && b.size() == a.rows());
    const std::size_t n = a.rows();
    Matrix aug(n, n + 1);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
        aug(r, n) = b[r];
    }
    const RowEchelon e = rref(std::move(aug));
    if (e.pivots.size() != n || e.pivots.back() != n - 1) return std::nullopt;
    Vector x(n);
    for (std::size_t r = 0; r < n; ++r) x[r] = e.reduced(r, n);
    return x;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
    assert(a.size() == b.size());
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace hoeffding_urn::linalg
