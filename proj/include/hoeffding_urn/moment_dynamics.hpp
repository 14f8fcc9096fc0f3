#pragma once

#include "hoeffding_urn/hoeffding.hpp"
#include "hoeffding_urn/measure.hpp"

#include <optional>
#include <utility>
#include <variant>

namespace hoeffding_urn {

struct MomentPolynomials {
    Rational f;  // 2x^2 z - x y^2 - x^2 y
    Rational g;  // z x - 2 y^2 + y z
};

MomentPolynomials moment_polynomials(const Rational& x, const Rational& y, const Rational& z);

/// mu_{n+1} g(mu_n, mu_{n-1}, mu_{n-2}) - f(mu_n, mu_{n-1}, mu_{n-2}); zero
/// for every n >= 2 whenever the sequence is Hoeffding decomposable.
Rational moment_recursion_residual(const DeFinettiMeasure& measure, int n);

/// f/g at (x, y, z) = (mu_n, mu_{n-1}, mu_{n-2}). The triple must satisfy
/// 0 < x < y < z <= 1 (z = 1 admits mu_0 at n = 2).
Rational next_moment(const Rational& x, const Rational& y, const Rational& z);
Rational next_moment(const DeFinettiMeasure& measure, int n);

/// Strict membership 0 < x < y < z < 1.
bool in_region_s(const Rational& x, const Rational& y, const Rational& z);

struct BetaParameters {
    Rational alpha;
    Rational beta;

    bool operator==(const BetaParameters&) const = default;
};

/// Unique (alpha, beta) with mean c1 and second moment c2. The result is
/// substituted back into the two moment equations before returning.
BetaParameters recover_beta(const Rational& c1, const Rational& c2);

struct UrnEligibility {
    bool integer = false;
    BetaParameters parameters;
};

UrnEligibility is_urn_integer_eligible(const Rational& c1, const Rational& c2);

/// Second difference in p of P(X_{n+1} = 1 | p zeros among X_1..X_n).
Rational predictive_affinity_residual(const DeFinettiMeasure& measure, int n, int p);

/// (1 / (1 + a(n-1)), b / (1 + a(n-1))).
std::pair<Rational, Rational> dy_affine_coefficients(const Rational& a, const Rational& b, int n);

/// Slope and intercept of p -> P(X_{n+1} = 1 | p zeros), fitted exactly from
/// p = 0 and p = 1. Meaningful only when the affinity residual vanishes.
std::pair<Rational, Rational> fit_predictive_line(const DeFinettiMeasure& measure, int n);

enum class ClassificationKind { Iid, Polya, NotDecomposable, Inconclusive };

std::string_view classification_name(ClassificationKind kind);
std::optional<ClassificationKind> parse_classification(std::string_view text);

struct MomentWitness {
    int order;  // first n with mu_n different from the candidate's moment

    bool operator==(const MomentWitness&) const = default;
};

struct Classification {
    ClassificationKind kind = ClassificationKind::Inconclusive;
    std::optional<Rational> iid_p;
    std::optional<BetaParameters> polya;
    std::variant<std::monostate, Triple, MomentWitness> witness;
    int verified_order = 0;  // moments checked up to this order
    int checked_n_max = 0;   // decomposability residuals checked up to this n

    bool operator==(const Classification&) const = default;
};

Classification classify(const DeFinettiMeasure& measure, int n_max);

}  // namespace hoeffding_urn
