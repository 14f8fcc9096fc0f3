#include "hoeffding_urn/error.hpp"
#include "hoeffding_urn/moment_dynamics.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace hoeffding_urn;

namespace {

Rational q(long p, long d = 1) { return rational(p, d); }

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::ParseError;
}

const DeFinettiMeasure unif_half = DeFinettiMeasure::truncated_uniform(q(1, 2), 12);

// (alpha, beta) from the two moment equations, solved by elimination on
// s = alpha + beta: c2 / c1 = (alpha + 1) / (s + 1) and alpha = c1 s.
BetaParameters solve_moment_equations(const Rational& c1, const Rational& c2) {
    const Rational ratio = c2 / c1;
    const Rational s = (1 - ratio) / (ratio - c1);
    return {c1 * s, (1 - c1) * s};
}

}  // namespace

TEST(MomentPolynomials, Examples) {
    auto [f, g] = moment_polynomials(q(1, 3), q(1, 2), 1);
    EXPECT_EQ(f, q(1, 12));
    EXPECT_EQ(g, q(1, 3));
    const auto boundary = moment_polynomials(1, 1, 1);
    EXPECT_EQ(boundary.f, 0);
    EXPECT_EQ(boundary.g, 0);
    const auto u = moment_polynomials(q(1, 12), q(1, 4), 1);
    EXPECT_EQ(u.f, q(1, 144));
    EXPECT_EQ(u.g, q(5, 24));
}

TEST(MomentRecursion, VanishesForPolyaAndIid) {
    for (const auto& m : {DeFinettiMeasure::beta(1, 1), DeFinettiMeasure::beta(q(3, 2), 2),
                          DeFinettiMeasure::dirac(q(1, 3)), DeFinettiMeasure::dirac(q(1, 2))})
        for (int n = 2; n <= 20; ++n) EXPECT_EQ(moment_recursion_residual(m, n), 0) << m.describe();
}

TEST(MomentRecursion, UniformCounterexample) {
    EXPECT_EQ(moment_recursion_residual(unif_half, 2), q(-1, 2304));
    EXPECT_EQ(code_of([] { moment_recursion_residual(DeFinettiMeasure::truncated_uniform(q(1, 2), 3), 3); }),
              ErrorCode::OrderExceeded);
}

TEST(MomentRecursion, ConsistentWithCheck) {
    for (const auto& m : oracle::test_measures()) {
        const auto r = check_decomposable(m, 5, CheckMethod::Prop1);
        if (r.verdict == Verdict::DecomposableUpToNMax)
            for (int n = 2; n <= 5; ++n) EXPECT_EQ(moment_recursion_residual(m, n), 0);
    }
}

TEST(NextMoment, Examples) {
    EXPECT_EQ(next_moment(q(1, 3), q(1, 2), 1), q(1, 4));
    EXPECT_EQ(next_moment(q(1, 12), q(1, 4), 1), q(1, 30));
    EXPECT_EQ(next_moment(q(1, 4), q(1, 2), 1), q(1, 8));
    EXPECT_EQ(next_moment(DeFinettiMeasure::beta(2, 3), 4), moment(DeFinettiMeasure::beta(2, 3), 5));
}

TEST(NextMoment, Errors) {
    EXPECT_EQ(code_of([] { next_moment(q(1, 2), q(1, 3), 1); }), ErrorCode::NotInS);
    EXPECT_EQ(code_of([] { next_moment(0, q(1, 3), 1); }), ErrorCode::NotInS);
    EXPECT_EQ(code_of([] { next_moment(q(1, 3), q(1, 2), 2); }), ErrorCode::NotInS);
    EXPECT_FALSE(in_region_s(q(1, 3), q(1, 2), 1));
    EXPECT_TRUE(in_region_s(q(1, 4), q(1, 3), q(1, 2)));
}

TEST(NextMoment, NoCommonZeroOnS) {
    oracle::RationalGen gen(2024);
    int sampled = 0;
    while (sampled < 10000) {
        const Rational z = gen.in_open_interval(0, 1, 97);
        const Rational y = gen.in_open_interval(0, z, 97);
        const Rational x = gen.in_open_interval(0, y, 97);
        ASSERT_TRUE(in_region_s(x, y, z));
        const auto [f, g] = moment_polynomials(x, y, z);
        EXPECT_FALSE(sgn(f) == 0 && sgn(g) == 0);
        ++sampled;
    }
}

TEST(NextMoment, MomentTriplesOfTestMeasuresLieInS) {
    for (const auto& m : oracle::test_measures())
        for (int n = 3; n <= 12; ++n) EXPECT_TRUE(in_region_s(moment(m, n), moment(m, n - 1), moment(m, n - 2)));
}

TEST(RecoverBeta, Examples) {
    EXPECT_EQ(recover_beta(q(1, 2), q(1, 3)), (BetaParameters{1, 1}));
    EXPECT_EQ(recover_beta(q(1, 2), q(3, 10)), (BetaParameters{2, 2}));
    EXPECT_EQ(code_of([] { recover_beta(q(1, 2), q(1, 4)); }), ErrorCode::MomentRegion);
    EXPECT_EQ(code_of([] { recover_beta(q(1, 2), q(1, 2)); }), ErrorCode::MomentRegion);
    EXPECT_EQ(code_of([] { recover_beta(1, 1); }), ErrorCode::MomentRegion);
}

TEST(RecoverBeta, RoundTripAndIndependentSolve) {
    oracle::RationalGen gen(43);
    for (int i = 0; i < 40; ++i) {
        const Rational a = gen.positive(), b = gen.positive();
        const auto m = DeFinettiMeasure::beta(a, b);
        const Rational c1 = moment(m, 1), c2 = moment(m, 2);
        EXPECT_EQ(recover_beta(c1, c2), (BetaParameters{a, b}));
        EXPECT_EQ(solve_moment_equations(c1, c2), (BetaParameters{a, b}));
        EXPECT_EQ(code_of([&] { recover_beta(c1, c1 * c1); }), ErrorCode::MomentRegion);
    }
}

TEST(UrnEligibility, Examples) {
    const auto a = is_urn_integer_eligible(q(1, 2), q(3, 10));
    EXPECT_TRUE(a.integer);
    EXPECT_EQ(a.parameters, (BetaParameters{2, 2}));
    EXPECT_TRUE(is_urn_integer_eligible(q(1, 2), q(1, 3)).integer);

    const auto c = is_urn_integer_eligible(q(2, 5), q(7, 40));
    EXPECT_EQ(c.parameters, solve_moment_equations(q(2, 5), q(7, 40)));
    EXPECT_EQ(c.parameters, (BetaParameters{6, 9}));
    EXPECT_TRUE(c.integer);

    const auto d = is_urn_integer_eligible(moment(DeFinettiMeasure::beta(q(3, 2), 2), 1),
                                           moment(DeFinettiMeasure::beta(q(3, 2), 2), 2));
    EXPECT_FALSE(d.integer);
}

TEST(PredictiveAffinity, Examples) {
    const auto b = DeFinettiMeasure::beta(2, 3);
    for (int n = 2; n <= 8; ++n)
        for (int p = 0; p <= n - 2; ++p) EXPECT_EQ(predictive_affinity_residual(b, n, p), 0);
    const auto d = DeFinettiMeasure::dirac(q(1, 3));
    for (int n = 2; n <= 6; ++n) EXPECT_EQ(predictive_affinity_residual(d, n, 0), 0);
    EXPECT_EQ(predictive_affinity_residual(unif_half, 2, 0), q(-3, 56));
    EXPECT_EQ(predictive_probability(unif_half, 2, 0), q(3, 8));
    EXPECT_EQ(predictive_probability(unif_half, 2, 1), q(5, 16));
    EXPECT_EQ(predictive_probability(unif_half, 2, 2), q(11, 56));
    EXPECT_EQ(code_of([&] { predictive_affinity_residual(b, 2, 1); }), ErrorCode::IndexRange);
}

TEST(DyAffine, ExamplesAndMonotonicity) {
    EXPECT_EQ(dy_affine_coefficients(q(1, 3), q(1, 5), 1), std::pair(Rational(1), q(1, 5)));
    EXPECT_EQ(dy_affine_coefficients(q(1, 2), q(1, 4), 3), std::pair(q(1, 2), q(1, 8)));
    for (int n = 1; n < 10; ++n)
        EXPECT_GT(dy_affine_coefficients(q(1, 3), q(1, 5), n).first, dy_affine_coefficients(q(1, 3), q(1, 5), n + 1).first);
    EXPECT_EQ(code_of([] { dy_affine_coefficients(q(1, 2), q(1, 2), 2); }), ErrorCode::ParameterRange);
    EXPECT_EQ(code_of([] { dy_affine_coefficients(0, q(1, 2), 2); }), ErrorCode::ParameterRange);
}

TEST(DyAffine, PolyaFitMatchesPredictiveRule) {
    // p counts zeros, so the fitted slope is negative: -1 / (alpha + beta + n)
    for (const auto& [a, b] : std::vector<std::pair<Rational, Rational>>{{1, 1}, {2, 3}, {q(3, 2), 2}}) {
        const auto m = DeFinettiMeasure::beta(a, b);
        for (int n = 1; n <= 8; ++n) {
            const auto [slope, intercept] = fit_predictive_line(m, n);
            EXPECT_EQ(slope, -1 / (a + b + n));
            EXPECT_EQ(intercept, (a + n) / (a + b + n));
            for (int p = 0; p <= n; ++p) EXPECT_EQ(predictive_probability(m, n, p), intercept + slope * p);
            // slope_n / slope_1 follows the closed form with rate 1 / (alpha + beta + 1)
            if (n >= 2) {
                const Rational rate = 1 / (a + b + 1);
                const Rational first = fit_predictive_line(m, 1).first;
                EXPECT_EQ(slope / first, dy_affine_coefficients(rate, rate / 2, n).first);
            }
        }
    }
}

TEST(Classify, Examples) {
    const auto iid = classify(DeFinettiMeasure::dirac(q(1, 2)), 6);
    EXPECT_EQ(iid.kind, ClassificationKind::Iid);
    EXPECT_EQ(iid.iid_p, q(1, 2));

    std::vector<Rational> mu;
    for (int n = 0; n <= 12; ++n) mu.push_back(moment(DeFinettiMeasure::beta(2, 2), n));
    const auto polya = classify(DeFinettiMeasure::from_moments(mu), 6);
    EXPECT_EQ(polya.kind, ClassificationKind::Polya);
    EXPECT_EQ(polya.polya, (BetaParameters{2, 2}));
    EXPECT_EQ(polya.checked_n_max, 6);

    const auto bad = classify(unif_half, 4);
    EXPECT_EQ(bad.kind, ClassificationKind::NotDecomposable);
    EXPECT_EQ(std::get<MomentWitness>(bad.witness).order, 3);

    const auto two = classify(DeFinettiMeasure::discrete({{q(1, 3), q(1, 2)}, {q(2, 3), q(1, 2)}}), 4);
    EXPECT_EQ(two.kind, ClassificationKind::NotDecomposable);
}

TEST(Classify, InconclusiveWhenTruncationIsShort) {
    std::vector<Rational> mu;
    for (int n = 0; n <= 4; ++n) mu.push_back(moment(DeFinettiMeasure::beta(2, 3), n));
    const auto c = classify(DeFinettiMeasure::from_moments(mu), 6);
    EXPECT_EQ(c.kind, ClassificationKind::Inconclusive);
    EXPECT_EQ(c.verified_order, 4);
    EXPECT_LT(c.checked_n_max, 6);
}

TEST(Classify, RejectsDeterministicAndSmallBound) {
    EXPECT_EQ(code_of([] { classify(DeFinettiMeasure::dirac(1), 4); }), ErrorCode::DeterministicMeasure);
    EXPECT_EQ(code_of([] { classify(DeFinettiMeasure::beta(1, 1), 2); }), ErrorCode::IndexRange);
}

TEST(Classify, AgreesWithDecomposabilityOnTestMeasures) {
    for (const auto& m : oracle::test_measures()) {
        const auto c = classify(m, 5);
        const auto r = check_decomposable(m, 5, CheckMethod::Prop1);
        EXPECT_EQ(c.kind == ClassificationKind::NotDecomposable, r.verdict == Verdict::NotDecomposable)
            << m.describe();
    }
}
