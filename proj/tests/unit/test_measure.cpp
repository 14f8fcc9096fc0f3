#include "hoeffding_urn/error.hpp"
#include "hoeffding_urn/measure.hpp"
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

}  // namespace

TEST(Rational, ParseAndPrint) {
    EXPECT_EQ(parse_rational("3/6"), q(1, 2));
    EXPECT_EQ(parse_rational("-7"), q(-7));
    EXPECT_EQ(to_string(q(-3, 56)), "-3/56");
    EXPECT_EQ(to_string(q(4, 2)), "2");
    for (const char* bad : {"", "1/0", "1.5", "a", "1/-2", "+1", "1 /2", "--1"})
        EXPECT_EQ(code_of([&] { parse_rational(bad); }), ErrorCode::ParseError) << bad;
}

TEST(Rational, DoubleConversionRoundsToNearest) {
    EXPECT_EQ(to_double(q(1, 3)), 1.0 / 3.0);
    EXPECT_EQ(to_double(q(1, 7)), 1.0 / 7.0);
    EXPECT_EQ(to_double(q(-5, 8)), -0.625);
}

TEST(Combinatorics, BinomialSupport) {
    EXPECT_EQ(binomial(5, 2), 10);
    EXPECT_EQ(binomial(5, 6), 0);
    EXPECT_EQ(binomial(5, -1), 0);
    EXPECT_EQ(binomial(-1, 0), 0);
    EXPECT_EQ(binomial(0, 0), 1);
}

TEST(Moment, Examples) {
    EXPECT_EQ(moment(DeFinettiMeasure::beta(1, 1), 3), q(1, 4));
    EXPECT_EQ(moment(DeFinettiMeasure::dirac(q(1, 2)), 2), q(1, 4));
    EXPECT_EQ(moment(DeFinettiMeasure::discrete({{q(1, 3), q(1, 2)}, {q(2, 3), q(1, 2)}}), 2), q(5, 18));
    EXPECT_EQ(moment(unif_half, 3), q(1, 32));
}

TEST(Moment, OrderExceededPastTruncation) {
    const auto m = DeFinettiMeasure::from_moments({q(1), q(1, 4), q(1, 12), q(1, 32)});
    EXPECT_EQ(m.max_order(), 3);
    EXPECT_EQ(code_of([&] { moment(m, 4); }), ErrorCode::OrderExceeded);
    EXPECT_EQ(code_of([&] { config_probability(m, {4, 0}); }), ErrorCode::OrderExceeded);
}

TEST(ConfigProbability, Examples) {
    EXPECT_EQ(config_probability(DeFinettiMeasure::beta(1, 1), {3, 1}), q(1, 12));
    EXPECT_EQ(config_probability(DeFinettiMeasure::dirac(q(1, 2)), {2, 1}), q(1, 4));
    EXPECT_EQ(config_probability(unif_half, {2, 0}), q(1, 12));
}

TEST(ConfigProbability, MatchesDirectIntegration) {
    for (const auto& m : oracle::test_measures())
        for (int n = 0; n <= 7; ++n)
            for (int j = 0; j <= n; ++j)
                EXPECT_EQ(config_probability(m, {n, j}), oracle::pattern_probability(m, n - j, j))
                    << m.describe() << " n=" << n << " j=" << j;
}

TEST(ConfigProbability, ClosedFormsAgree) {
    for (const auto& m : oracle::test_measures()) {
        for (int n = 0; n <= 8; ++n)
            for (int j = 0; j <= n; ++j) {
                const auto closed = closed_form_config_probability(m, {n, j});
                if (m.kind() == MeasureKind::Moments)
                    EXPECT_FALSE(closed);
                else
                    EXPECT_EQ(*closed, config_probability(m, {n, j}));
            }
    }
}

TEST(ConfigProbability, DiscreteBruteForceOverConfigurations) {
    const auto m = DeFinettiMeasure::discrete({{q(1, 5), q(1, 6)}, {q(1, 2), q(1, 3)}, {q(9, 10), q(1, 2)}});
    for (int n = 1; n <= 6; ++n) {
        std::vector<Rational> by_zeros(static_cast<std::size_t>(n) + 1);
        oracle::for_each_config(n, [&](const oracle::Config& x) {
            by_zeros[static_cast<std::size_t>(oracle::zeros(x))] += oracle::config_probability(m, x);
        });
        for (int j = 0; j <= n; ++j)
            EXPECT_EQ(Rational(binomial(n, j)) * config_probability(m, {n, j}), by_zeros[static_cast<std::size_t>(j)]);
    }
}

TEST(ConfigProbability, NormalizationAndTower) {
    for (const auto& m : oracle::test_measures()) {
        const ConfigTable table(m, 10);
        for (int n = 0; n <= 10; ++n) {
            Rational total = 0;
            for (int j = 0; j <= n; ++j) total += Rational(binomial(n, j)) * table(n, j);
            EXPECT_EQ(total, 1) << m.describe();
        }
        for (int n = 0; n < 10; ++n)
            for (int j = 0; j <= n; ++j) EXPECT_EQ(table(n, j), table(n + 1, j) + table(n + 1, j + 1));
    }
}

TEST(Moment, MonotoneAndCauchySchwarz) {
    for (const auto& m : oracle::test_measures()) {
        for (int n = 1; n < 12; ++n) {
            EXPECT_GT(moment(m, n), moment(m, n + 1));
            EXPECT_LT(moment(m, n), 1);
        }
        const bool dirac = m.kind() == MeasureKind::Discrete && m.atoms().size() == 1;
        EXPECT_EQ(moment(m, 2) == moment(m, 1) * moment(m, 1), dirac) << m.describe();
        EXPECT_GE(moment(m, 2), moment(m, 1) * moment(m, 1));
    }
}

TEST(ConditionalZeroCount, Examples) {
    EXPECT_EQ(conditional_zero_count(DeFinettiMeasure::beta(1, 1), 2, 1, 1, 1), q(1, 2));
    EXPECT_EQ(conditional_zero_count(unif_half, 2, 1, 1, 1), q(5, 16));
    for (const auto& m : oracle::test_measures())
        for (int n = 1; n <= 5; ++n)
            for (int a = 0; a <= n; ++a)
                EXPECT_EQ(conditional_zero_count(m, n, 1, a, a) + conditional_zero_count(m, n, 1, a, a + 1), 1);
}

TEST(ConditionalZeroCount, MatchesEnumeration) {
    for (const auto& m : oracle::test_measures())
        for (int n = 1; n <= 4; ++n)
            for (int v = 1; v <= 3; ++v)
                for (int a = 0; a <= n; ++a)
                    for (int b = a; b <= a + v; ++b)
                        EXPECT_EQ(conditional_zero_count(m, n, v, a, b), oracle::cond_zero_count(m, n, v, a, b));
}

TEST(ConditionalZeroCount, Errors) {
    const auto m = DeFinettiMeasure::beta(1, 1);
    EXPECT_EQ(code_of([&] { conditional_zero_count(m, 2, 1, 1, 3); }), ErrorCode::IndexRange);
    EXPECT_EQ(code_of([&] { conditional_zero_count(m, 2, 0, 1, 1); }), ErrorCode::IndexRange);
    EXPECT_EQ(code_of([&] { conditional_zero_count(DeFinettiMeasure::dirac(1), 2, 1, 1, 1); }),
              ErrorCode::DeterministicMeasure);
}

TEST(PredictiveProbability, Examples) {
    EXPECT_EQ(predictive_probability(DeFinettiMeasure::beta(1, 1), 2, 1), q(1, 2));
    EXPECT_EQ(predictive_probability(unif_half, 2, 0), q(3, 8));
    const auto d = DeFinettiMeasure::dirac(q(2, 7));
    for (int n = 0; n <= 6; ++n)
        for (int p = 0; p <= n; ++p) EXPECT_EQ(predictive_probability(d, n, p), q(2, 7));
}

TEST(PredictiveProbability, PolyaRuleAndConsistency) {
    const Rational a = q(3, 2), b = 2;
    const auto m = DeFinettiMeasure::beta(a, b);
    for (int n = 0; n <= 6; ++n)
        for (int p = 0; p <= n; ++p) {
            EXPECT_EQ(predictive_probability(m, n, p), (a + n - p) / (a + b + n));
            EXPECT_EQ(predictive_probability(m, n, p), conditional_zero_count(m, n, 1, p, p));
        }
}

TEST(NonDeterministic, Examples) {
    EXPECT_TRUE(is_nondeterministic(DeFinettiMeasure::beta(2, 3), 8));
    EXPECT_FALSE(is_nondeterministic(DeFinettiMeasure::dirac(1), 3));
    EXPECT_FALSE(is_nondeterministic(DeFinettiMeasure::discrete({{q(0), q(1, 2)}, {q(1), q(1, 2)}}), 3));
    EXPECT_TRUE(is_nondeterministic(DeFinettiMeasure::discrete({{q(0), q(1, 2)}, {q(1, 2), q(1, 2)}}), 3));
}

TEST(MeasureSpec, ParsesEachKind) {
    const auto b = parse_measure_spec(R"({"type":"beta","alpha":"3/2","beta":"2"})");
    EXPECT_EQ(b.kind(), MeasureKind::Beta);
    EXPECT_EQ(b.alpha(), q(3, 2));
    EXPECT_EQ(b.beta_param(), 2);

    const auto m = parse_measure_spec(R"({"type":"moments","values":["1","1/4","1/12","1/32"]})");
    EXPECT_EQ(m.kind(), MeasureKind::Moments);
    EXPECT_EQ(m.max_order(), 3);

    const auto d = parse_measure_spec(R"({"type":"discrete","atoms":[["1/3","1/2"],["2/3","1/2"]]})");
    EXPECT_EQ(d.atoms().size(), 2u);

    const auto t = parse_measure_spec(R"({"type":"truncated_uniform","epsilon":"1/2","order":12})");
    EXPECT_EQ(t, unif_half);
}

TEST(MeasureSpec, RejectsInvalidDocuments) {
    EXPECT_EQ(code_of([] { parse_measure_spec(R"({"type":"moments","values":["1","1/2","3/4"]})"); }),
              ErrorCode::InvalidMomentSequence);
    EXPECT_EQ(code_of([] { parse_measure_spec(R"({"type":"moments","values":["2","1/2"]})"); }),
              ErrorCode::InvalidMomentSequence);
    for (const char* doc : {
             "", "[]", "{}", R"({"type":"gamma"})", R"({"type":"beta","alpha":"-1","beta":"2"})",
             R"({"type":"beta","alpha":"0","beta":"2"})", R"({"type":"beta","alpha":1,"beta":"2"})",
             R"({"type":"discrete","atoms":[["1/3","1/3"]]})", R"({"type":"discrete","atoms":[["3/2","1"]]})",
             R"({"type":"truncated_uniform","epsilon":"3/2","order":3})",
         })
        EXPECT_NE(code_of([&] { parse_measure_spec(doc); }), ErrorCode::InvalidMomentSequence) << doc;
}

TEST(MeasureSpec, InvalidMomentsNameFirstViolation) {
    try {
        parse_measure_spec(R"({"type":"moments","values":["1","1/2","3/4"]})");
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("n=2"), std::string::npos) << e.what();
    }
}

TEST(MeasureSpec, RoundTrip) {
    for (const auto& m : oracle::test_measures()) EXPECT_EQ(parse_measure_spec(measure_spec_json(m)), m);
}

TEST(MeasureSpec, CompletelyMonotoneRandomMixturesAccepted) {
    oracle::RationalGen gen(11);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Atom> atoms;
        Rational remaining = 1;
        for (int i = 0; i < 3; ++i) {
            const Rational w = i == 2 ? remaining : remaining / 2;
            remaining -= w;
            atoms.push_back({gen.in_open_interval(0, 1), w});
        }
        const auto mix = DeFinettiMeasure::discrete(atoms);
        std::vector<Rational> mu;
        for (int n = 0; n <= 8; ++n) mu.push_back(moment(mix, n));
        const auto from = DeFinettiMeasure::from_moments(mu);
        for (int n = 0; n <= 8; ++n)
            for (int j = 0; j <= n; ++j) EXPECT_EQ(config_probability(from, {n, j}), config_probability(mix, {n, j}));
    }
}
