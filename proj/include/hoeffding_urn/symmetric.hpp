#pragma once

#include "hoeffding_urn/measure.hpp"
#include "hoeffding_urn/rational.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace hoeffding_urn {

/// Symmetric function on {0,1}^n, stored by zero count: values[j] is the
/// common value on configurations with exactly j zeros.
class SymmetricFunction {
public:
    SymmetricFunction() = default;
    explicit SymmetricFunction(std::vector<Rational> values);
    static SymmetricFunction constant(int n, const Rational& c);
    static SymmetricFunction zero(int n) { return constant(n, 0); }

    int arity() const noexcept { return static_cast<int>(values_.size()) - 1; }
    const Rational& operator[](int j) const { return values_[static_cast<std::size_t>(j)]; }
    Rational& operator[](int j) { return values_[static_cast<std::size_t>(j)]; }
    const std::vector<Rational>& values() const noexcept { return values_; }

    bool is_zero() const;

    SymmetricFunction& operator+=(const SymmetricFunction& other);
    SymmetricFunction& operator-=(const SymmetricFunction& other);
    SymmetricFunction& operator*=(const Rational& c);

    bool operator==(const SymmetricFunction&) const = default;

private:
    std::vector<Rational> values_;
};

SymmetricFunction operator+(SymmetricFunction a, const SymmetricFunction& b);
SymmetricFunction operator-(SymmetricFunction a, const SymmetricFunction& b);
SymmetricFunction operator*(const Rational& c, SymmetricFunction a);

/// Function on {0,1}^(v+w) that is symmetric inside the first v and inside
/// the last w coordinates. at(k, l) is the value with k zeros in the first
/// block and l zeros in the second.
class BiSymmetricFunction {
public:
    BiSymmetricFunction(int v, int w);

    int first_arity() const noexcept { return v_; }
    int second_arity() const noexcept { return w_; }
    const Rational& at(int k, int l) const;
    Rational& at(int k, int l);

private:
    int v_;
    int w_;
    std::vector<Rational> grid_;
};

/// U-statistic F(x) = sum over k-subsets of kernel, in zero-count form:
/// F(0^(z)) = sum_j C(z, j) C(n - z, k - j) kernel(0^(j)).
SymmetricFunction lift_ustatistic(const SymmetricFunction& kernel, int n);

/// E[T1 T2] under the exchangeable law of the measure.
Rational inner_product(const SymmetricFunction& t1, const SymmetricFunction& t2, const DeFinettiMeasure& measure);
Rational inner_product(const SymmetricFunction& t1, const SymmetricFunction& t2, const ConfigTable& table);

/// E[T(X_1..X_n) | X_1..X_a], as a symmetric function of arity a.
SymmetricFunction cond_expectation_prefix(const SymmetricFunction& t, const DeFinettiMeasure& measure, int a);

/// E[T(X_1..X_n) | X_{u+1}..X_{u+n-1}]: the first n-u conditioning
/// coordinates overlap with T's arguments, the remaining u-1 do not.
BiSymmetricFunction cond_expectation_overlap(const SymmetricFunction& t, const DeFinettiMeasure& measure, int u);
BiSymmetricFunction cond_expectation_overlap(const SymmetricFunction& t, const ConfigTable& table, int u);

/// Average over all permutations of the coordinates.
SymmetricFunction symmetrize(const BiSymmetricFunction& f);

/// Numerator of the symmetrized value at 0^(z) before division by C(m, z).
Rational symmetrize_numerator(const BiSymmetricFunction& f, int z);

/// E[kernel(X_1..X_k) | X_2..X_k], of arity k-1. Zero iff the kernel is
/// completely degenerate.
SymmetricFunction degeneracy_residual(const SymmetricFunction& kernel, const DeFinettiMeasure& measure);
SymmetricFunction degeneracy_residual(const SymmetricFunction& kernel, const ConfigTable& table);

SymmetricFunction parse_statistic(std::string_view document);
std::string statistic_json(const SymmetricFunction& t);

}  // namespace hoeffding_urn
