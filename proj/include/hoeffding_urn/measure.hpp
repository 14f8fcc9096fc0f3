#pragma once

#include "hoeffding_urn/rational.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hoeffding_urn {

enum class MeasureKind { Beta, Discrete, Moments };

struct Atom {
    Rational location;  // in [0, 1]
    Rational weight;    // > 0

    bool operator==(const Atom&) const = default;
};

/// The mixing law of a {0,1}-valued exchangeable sequence. Every
/// representation yields exact rational moments; MOMENTS carries a finite
/// truncation order past which all queries fail with ORDER_EXCEEDED.
class DeFinettiMeasure {
public:
    static DeFinettiMeasure beta(Rational alpha, Rational beta);
    static DeFinettiMeasure discrete(std::vector<Atom> atoms);
    static DeFinettiMeasure dirac(Rational location);
    // Validated for complete monotonicity up to the last supplied order.
    static DeFinettiMeasure from_moments(std::vector<Rational> values);
    // Uniform law on (0, epsilon): mu_n = epsilon^n / (n + 1), n = 0..order.
    static DeFinettiMeasure truncated_uniform(const Rational& epsilon, int order);

    MeasureKind kind() const noexcept { return kind_; }
    const Rational& alpha() const { return alpha_; }
    const Rational& beta_param() const { return beta_; }
    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    const std::vector<Rational>& moment_values() const noexcept { return moments_; }
    std::optional<Rational> uniform_epsilon() const;

    // Largest supported moment order; nullopt means unbounded.
    std::optional<int> max_order() const;
    bool supports(int n) const;

    // Short identifying text, e.g. "beta(3/2,2)".
    std::string describe() const;

    Rational moment(int n) const;

    bool operator==(const DeFinettiMeasure&) const = default;

private:
    DeFinettiMeasure() = default;

    MeasureKind kind_ = MeasureKind::Moments;
    Rational alpha_;
    Rational beta_;
    std::vector<Atom> atoms_;
    std::vector<Rational> moments_;
    Rational uniform_epsilon_;  // nonzero iff built by truncated_uniform
    std::string label_;
};

struct ZeroCountIndex {
    int n;  // sequence length
    int j;  // number of zeros, 0 <= j <= n
};

Rational moment(const DeFinettiMeasure& measure, int n);

/// P_n(0^(j)): the probability of any single length-n configuration with
/// exactly j zeros, computed as (-1)^j Delta_j mu_{n-j}.
Rational config_probability(const DeFinettiMeasure& measure, ZeroCountIndex idx);

/// Per-kind closed form of the same quantity (Beta integral or atom sum);
/// nullopt for MOMENTS. Used as an internal cross-check.
std::optional<Rational> closed_form_config_probability(const DeFinettiMeasure& measure, ZeroCountIndex idx);

/// P^n_{n+v}(0^(b) | 0^(a)) = C(v, b-a) P_{n+v}(0^(b)) / P_n(0^(a)).
Rational conditional_zero_count(const DeFinettiMeasure& measure, int n, int v, int a, int b);

/// P(X_{n+1} = 1 | X_1..X_n contain p zeros).
Rational predictive_probability(const DeFinettiMeasure& measure, int n, int p);

bool is_nondeterministic(const DeFinettiMeasure& measure, int n_max);

DeFinettiMeasure parse_measure_spec(std::string_view document);
std::string measure_spec_json(const DeFinettiMeasure& measure);

/// Moments mu_0..mu_order and the triangle P_n(0^(j)), n <= order, computed
/// once. The engines index into this instead of re-deriving differences.
class ConfigTable {
public:
    ConfigTable(const DeFinettiMeasure& measure, int order);

    int order() const noexcept { return order_; }
    const Rational& moment(int n) const;
    const Rational& operator()(int n, int j) const;

    // Throws DETERMINISTIC_MEASURE unless every P_n(0^(j)), j <= n, is positive.
    void require_positive(int n) const;
    // Throws DETERMINISTIC_MEASURE if P_n(0^(j)) is zero.
    const Rational& positive(int n, int j) const;

private:
    int order_;
    std::vector<Rational> moments_;
    std::vector<std::vector<Rational>> rows_;
};

}  // namespace hoeffding_urn
