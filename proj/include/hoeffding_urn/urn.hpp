#pragma once

#include "hoeffding_urn/measure.hpp"
#include "hoeffding_urn/rational.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hoeffding_urn {

using Sequence = std::vector<std::uint8_t>;

// All sampling draws from std::mt19937_64. A stream is identified by
// (seed, stream index); the engine is seeded through std::seed_seq with the
// four 32-bit halves of the pair, so trial t of a run uses stream t.
using Engine = std::mt19937_64;

Engine make_engine(std::uint64_t seed, std::uint64_t stream = 0);

// Uniform on [0, 1) from the top 53 bits of one engine output.
double uniform01(Engine& engine);

class ReinforcementFunction {
public:
    enum class Kind { Constant, Identity, Table };

    static ReinforcementFunction constant(Rational value);
    static ReinforcementFunction identity();
    // Piecewise-linear through the points; x must increase strictly from 0 to 1.
    static ReinforcementFunction table(std::vector<std::pair<Rational, Rational>> points);

    Kind kind() const noexcept { return kind_; }
    const Rational& constant_value() const noexcept { return value_; }
    const std::vector<std::pair<Rational, Rational>>& points() const noexcept { return points_; }

    // Throws F_RANGE if the value falls outside [0, 1].
    Rational operator()(const Rational& x) const;

    bool operator==(const ReinforcementFunction&) const = default;

private:
    Kind kind_ = Kind::Identity;
    Rational value_;
    std::vector<std::pair<Rational, Rational>> points_;
};

struct UrnSpec {
    ReinforcementFunction f = ReinforcementFunction::identity();
    int r = 1;
    int b = 1;

    bool operator==(const UrnSpec&) const = default;
};

UrnSpec parse_urn_spec(std::string_view document);
std::string urn_spec_json(const UrnSpec& spec);

/// The exchangeable law an urn reproduces, when one is known: identity gives
/// Beta(r, b), a constant c gives i.i.d. Bernoulli(c).
std::optional<DeFinettiMeasure> urn_equivalent_measure(const UrnSpec& spec);

Sequence sample_polya(const Rational& alpha, const Rational& beta, int n, std::uint64_t seed);
Sequence sample_polya(double alpha, double beta, int n, Engine& engine);

Sequence sample_urn_process(const UrnSpec& spec, int n, std::uint64_t seed);
Sequence sample_urn_process(const UrnSpec& spec, int n, Engine& engine);

Sequence sample_mixture(const DeFinettiMeasure& measure, int n, std::uint64_t seed);
Sequence sample_mixture(const DeFinettiMeasure& measure, int n, Engine& engine);

int count_zeros(const Sequence& s);

using Sampler = std::function<Sequence(Engine&)>;

/// Runs `trials` independent sequences (trial t on stream t) and tallies the
/// number of zeros in each.
std::vector<std::uint64_t> zero_count_histogram(const Sampler& sampler, int n, std::uint64_t trials,
                                                std::uint64_t seed);

struct ComparisonRow {
    int j = 0;
    Rational expected;            // C(n, j) P_n(0^(j))
    double expected_float = 0.0;  // round-to-nearest of `expected`
    double frequency = 0.0;       // count / trials
    double z_score = 0.0;

    bool operator==(const ComparisonRow&) const = default;
};

struct SampleReport {
    int n = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> zero_count_histogram;
    std::optional<std::vector<ComparisonRow>> comparison;

    bool operator==(const SampleReport&) const = default;
};

inline constexpr std::uint64_t kMinComparisonTrials = 1000;
inline constexpr double kDefaultZThreshold = 4.0;

/// Binomial z-score of `count` successes in `trials` against probability p.
double binomial_z(std::uint64_t count, std::uint64_t trials, double p);

/// Attaches exact expected zero-count probabilities and z-scores.
SampleReport attach_comparison(SampleReport report, const DeFinettiMeasure& measure);

SampleReport compare_exact_empirical(const DeFinettiMeasure& measure, int n, std::uint64_t trials, std::uint64_t seed);

SampleReport simulate_urn(const UrnSpec& spec, int n, std::uint64_t trials, std::uint64_t seed);

/// Per-cell z-scores for equality of two histograms with equal trial counts.
std::vector<double> two_sample_z(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b);

bool all_within(const std::vector<double>& z_scores, double threshold = kDefaultZThreshold);
bool all_within(const SampleReport& report, double threshold = kDefaultZThreshold);

struct ExchangeabilityTest {
    double chi_square = 0.0;
    int degrees_of_freedom = 0;
    double p_value = 1.0;
};

/// Pattern frequencies grouped by zero count; within each group they must be
/// uniform if the sampler is exchangeable.
ExchangeabilityTest exchangeability_chi_square(const Sampler& sampler, int n, std::uint64_t trials,
                                               std::uint64_t seed);

}  // namespace hoeffding_urn
