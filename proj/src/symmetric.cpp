#include "hoeffding_urn/symmetric.hpp"

#include "hoeffding_urn/combinatorics.hpp"
#include "hoeffding_urn/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <utility>

namespace hoeffding_urn {

SymmetricFunction::SymmetricFunction(std::vector<Rational> values) : values_(std::move(values)) {
    if (values_.empty()) throw Error(ErrorCode::ArityRange, "a symmetric function needs at least one value");
}

SymmetricFunction SymmetricFunction::constant(int n, const Rational& c) {
    if (n < 0) throw Error(ErrorCode::ArityRange, "negative arity");
    return SymmetricFunction(std::vector<Rational>(static_cast<std::size_t>(n) + 1, c));
}

bool SymmetricFunction::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

SymmetricFunction& SymmetricFunction::operator+=(const SymmetricFunction& other) {
    if (other.arity() != arity()) throw Error(ErrorCode::ArityMismatch, "adding functions of different arity");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

SymmetricFunction& SymmetricFunction::operator-=(const SymmetricFunction& other) {
    if (other.arity() != arity()) throw Error(ErrorCode::ArityMismatch, "subtracting functions of different arity");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
}

SymmetricFunction& SymmetricFunction::operator*=(const Rational& c) {
    for (auto& v : values_) v *= c;
    return *this;
}

SymmetricFunction operator+(SymmetricFunction a, const SymmetricFunction& b) { return a += b; }
SymmetricFunction operator-(SymmetricFunction a, const SymmetricFunction& b) { return a -= b; }
SymmetricFunction operator*(const Rational& c, SymmetricFunction a) { return a *= c; }

BiSymmetricFunction::BiSymmetricFunction(int v, int w) : v_(v), w_(w) {
    if (v < 0 || w < 0) throw Error(ErrorCode::ArityRange, "negative block arity");
    grid_.resize(static_cast<std::size_t>((v + 1) * (w + 1)));
}

const Rational& BiSymmetricFunction::at(int k, int l) const {
    if (k < 0 || k > v_ || l < 0 || l > w_) throw Error(ErrorCode::IndexRange, "bi-symmetric index out of range");
    return grid_[static_cast<std::size_t>(k * (w_ + 1) + l)];
}

Rational& BiSymmetricFunction::at(int k, int l) {
    if (k < 0 || k > v_ || l < 0 || l > w_) throw Error(ErrorCode::IndexRange, "bi-symmetric index out of range");
    return grid_[static_cast<std::size_t>(k * (w_ + 1) + l)];
}

SymmetricFunction lift_ustatistic(const SymmetricFunction& kernel, int n) {
    const int k = kernel.arity();
    if (k < 1 || k > n) throw Error(ErrorCode::ArityRange, "lift needs 1 <= k <= n");
    std::vector<Rational> out(static_cast<std::size_t>(n) + 1);
    for (int z = 0; z <= n; ++z) {
        Rational s;
        for (int j = 0; j <= k; ++j) {
            const Integer w = binomial(z, j) * binomial(n - z, k - j);
            if (w != 0) s += Rational(w) * kernel[j];
        }
        out[static_cast<std::size_t>(z)] = std::move(s);
    }
    return SymmetricFunction(std::move(out));
}

Rational inner_product(const SymmetricFunction& t1, const SymmetricFunction& t2, const ConfigTable& table) {
    if (t1.arity() != t2.arity()) throw Error(ErrorCode::ArityMismatch, "inner product of different arities");
    const int n = t1.arity();
    Rational s;
    for (int z = 0; z <= n; ++z) s += binomial_q(n, z) * table(n, z) * t1[z] * t2[z];
    return s;
}

Rational inner_product(const SymmetricFunction& t1, const SymmetricFunction& t2, const DeFinettiMeasure& measure) {
    if (t1.arity() != t2.arity()) throw Error(ErrorCode::ArityMismatch, "inner product of different arities");
    return inner_product(t1, t2, ConfigTable(measure, t1.arity()));
}

SymmetricFunction cond_expectation_prefix(const SymmetricFunction& t, const DeFinettiMeasure& measure, int a) {
    const int n = t.arity();
    if (a < 1 || a > n) throw Error(ErrorCode::IndexRange, "prefix length must satisfy 1 <= a <= n");
    const ConfigTable table(measure, n);
    table.require_positive(a);
    std::vector<Rational> out(static_cast<std::size_t>(a) + 1);
    for (int j = 0; j <= a; ++j) {
        Rational s;
        for (int m = 0; m <= n - a; ++m) s += binomial_q(n - a, m) * t[j + m] * table(n, j + m);
        out[static_cast<std::size_t>(j)] = s / table(a, j);
    }
    return SymmetricFunction(std::move(out));
}

BiSymmetricFunction cond_expectation_overlap(const SymmetricFunction& t, const ConfigTable& table, int u) {
    const int n = t.arity();
    if (u < 2 || u > n) throw Error(ErrorCode::IndexRange, "overlap parameter must satisfy 2 <= u <= n");
    table.require_positive(n - 1);
    const int v = n - u;
    const int w = u - 1;
    BiSymmetricFunction out(v, w);
    for (int k = 0; k <= v; ++k) {
        for (int l = 0; l <= w; ++l) {
            const int z = k + l;
            Rational s;
            for (int m = 0; m <= u; ++m) s += binomial_q(u, m) * t[k + m] * table(n - 1 + u, z + m);
            out.at(k, l) = s / table(n - 1, z);
        }
    }
    return out;
}

BiSymmetricFunction cond_expectation_overlap(const SymmetricFunction& t, const DeFinettiMeasure& measure, int u) {
    const int n = t.arity();
    if (u < 2 || u > n) throw Error(ErrorCode::IndexRange, "overlap parameter must satisfy 2 <= u <= n");
    return cond_expectation_overlap(t, ConfigTable(measure, n - 1 + u), u);
}

Rational symmetrize_numerator(const BiSymmetricFunction& f, int z) {
    const int v = f.first_arity();
    const int w = f.second_arity();
    Rational s;
    for (int k = std::max(0, z - w); k <= std::min(z, v); ++k)
        s += Rational(binomial(v, k) * binomial(w, z - k)) * f.at(k, z - k);
    return s;
}

SymmetricFunction symmetrize(const BiSymmetricFunction& f) {
    const int m = f.first_arity() + f.second_arity();
    std::vector<Rational> out(static_cast<std::size_t>(m) + 1);
    for (int z = 0; z <= m; ++z) out[static_cast<std::size_t>(z)] = symmetrize_numerator(f, z) / binomial_q(m, z);
    return SymmetricFunction(std::move(out));
}

SymmetricFunction degeneracy_residual(const SymmetricFunction& kernel, const ConfigTable& table) {
    const int k = kernel.arity();
    if (k < 1) throw Error(ErrorCode::ArityRange, "degeneracy needs a kernel of arity >= 1");
    table.require_positive(k - 1);
    std::vector<Rational> out(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j)
        out[static_cast<std::size_t>(j)] =
            (kernel[j + 1] * table(k, j + 1) + kernel[j] * table(k, j)) / table(k - 1, j);
    return SymmetricFunction(std::move(out));
}

SymmetricFunction degeneracy_residual(const SymmetricFunction& kernel, const DeFinettiMeasure& measure) {
    if (kernel.arity() < 1) throw Error(ErrorCode::ArityRange, "degeneracy needs a kernel of arity >= 1");
    return degeneracy_residual(kernel, ConfigTable(measure, kernel.arity()));
}

SymmetricFunction parse_statistic(std::string_view document) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer() || !doc.contains("values") ||
        !doc["values"].is_array())
        throw Error(ErrorCode::ParseError, "statistic needs integer 'n' and array 'values'");
    const int n = doc["n"].get<int>();
    if (n < 1) throw Error(ErrorCode::ParseError, "statistic arity must be positive");
    if (doc["values"].size() != static_cast<std::size_t>(n) + 1)
        throw Error(ErrorCode::ParseError, "statistic of arity n needs n+1 values");
    std::vector<Rational> values;
    for (const auto& v : doc["values"]) {
        if (!v.is_string()) throw Error(ErrorCode::ParseError, "statistic values must be strings");
        values.push_back(parse_rational(v.get<std::string>()));
    }
    return SymmetricFunction(std::move(values));
}

std::string statistic_json(const SymmetricFunction& t) {
    nlohmann::json values = nlohmann::json::array();
    for (const auto& v : t.values()) values.push_back(to_string(v));
    return nlohmann::json{{"n", t.arity()}, {"values", values}}.dump();
}

}  // namespace hoeffding_urn
