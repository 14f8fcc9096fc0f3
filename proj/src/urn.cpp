#include "hoeffding_urn/urn.hpp"

#include "hoeffding_urn/combinatorics.hpp"
#include "hoeffding_urn/error.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <nlohmann/json.hpp>

#include <bit>
#include <cmath>
#include <limits>

namespace hoeffding_urn {

Engine make_engine(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return Engine(seq);
}

double uniform01(Engine& engine) { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }

ReinforcementFunction ReinforcementFunction::constant(Rational value) {
    ReinforcementFunction f;
    f.kind_ = Kind::Constant;
    f.value_ = std::move(value);
    return f;
}

ReinforcementFunction ReinforcementFunction::identity() { return ReinforcementFunction{}; }

ReinforcementFunction ReinforcementFunction::table(std::vector<std::pair<Rational, Rational>> points) {
    if (points.size() < 2) throw Error(ErrorCode::ParseError, "table needs at least two points");
    if (points.front().first != 0 || points.back().first != 1)
        throw Error(ErrorCode::ParseError, "table x-coordinates must run from 0 to 1");
    for (std::size_t i = 1; i < points.size(); ++i)
        if (points[i].first <= points[i - 1].first)
            throw Error(ErrorCode::ParseError, "table x-coordinates must increase strictly");
    ReinforcementFunction f;
    f.kind_ = Kind::Table;
    f.points_ = std::move(points);
    return f;
}

Rational ReinforcementFunction::operator()(const Rational& x) const {
    Rational y;
    switch (kind_) {
        case Kind::Constant: y = value_; break;
        case Kind::Identity: y = x; break;
        case Kind::Table: {
            std::size_t i = 1;
            while (i + 1 < points_.size() && points_[i].first < x) ++i;
            const auto& [x0, y0] = points_[i - 1];
            const auto& [x1, y1] = points_[i];
            y = y0 + (y1 - y0) * (x - x0) / (x1 - x0);
            break;
        }
    }
    if (sgn(y) < 0 || y > 1) throw Error(ErrorCode::FRange, "f(" + to_string(x) + ") = " + to_string(y));
    return y;
}

UrnSpec parse_urn_spec(std::string_view document) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    if (!doc.is_object() || !doc.contains("f") || !doc["f"].is_object() || !doc["f"].contains("type") ||
        !doc["f"]["type"].is_string())
        throw Error(ErrorCode::ParseError, "urn spec needs an object 'f' with a string 'type'");
    if (!doc.contains("r") || !doc["r"].is_number_integer() || !doc.contains("b") || !doc["b"].is_number_integer())
        throw Error(ErrorCode::ParseError, "urn spec needs integer 'r' and 'b'");

    UrnSpec spec;
    spec.r = doc["r"].get<int>();
    spec.b = doc["b"].get<int>();
    if (spec.r < 1 || spec.b < 1) throw Error(ErrorCode::ParseError, "urn counts r, b must be >= 1");

    const auto& f = doc["f"];
    const auto type = f["type"].get<std::string>();
    if (type == "identity") {
        spec.f = ReinforcementFunction::identity();
    } else if (type == "constant") {
        if (!f.contains("value") || !f["value"].is_string())
            throw Error(ErrorCode::ParseError, "constant f needs a string 'value'");
        spec.f = ReinforcementFunction::constant(parse_rational(f["value"].get<std::string>()));
    } else if (type == "table") {
        if (!f.contains("points") || !f["points"].is_array())
            throw Error(ErrorCode::ParseError, "table f needs a 'points' array");
        std::vector<std::pair<Rational, Rational>> points;
        for (const auto& p : f["points"]) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
                throw Error(ErrorCode::ParseError, "each table point must be [\"x\", \"y\"]");
            points.emplace_back(parse_rational(p[0].get<std::string>()), parse_rational(p[1].get<std::string>()));
        }
        spec.f = ReinforcementFunction::table(std::move(points));
    } else {
        throw Error(ErrorCode::ParseError, "unknown f type '" + type + "'");
    }
    return spec;
}

std::string urn_spec_json(const UrnSpec& spec) {
    using nlohmann::json;
    json f;
    switch (spec.f.kind()) {
        case ReinforcementFunction::Kind::Identity: f = {{"type", "identity"}}; break;
        case ReinforcementFunction::Kind::Constant:
            f = {{"type", "constant"}, {"value", to_string(spec.f.constant_value())}};
            break;
        case ReinforcementFunction::Kind::Table: {
            json points = json::array();
            for (const auto& [x, y] : spec.f.points()) points.push_back({to_string(x), to_string(y)});
            f = {{"type", "table"}, {"points", points}};
            break;
        }
    }
    return json{{"f", f}, {"r", spec.r}, {"b", spec.b}}.dump();
}

std::optional<DeFinettiMeasure> urn_equivalent_measure(const UrnSpec& spec) {
    switch (spec.f.kind()) {
        case ReinforcementFunction::Kind::Identity: return DeFinettiMeasure::beta(spec.r, spec.b);
        case ReinforcementFunction::Kind::Constant: {
            const Rational& c = spec.f.constant_value();
            if (sgn(c) < 0 || c > 1) return std::nullopt;
            return DeFinettiMeasure::dirac(c);
        }
        case ReinforcementFunction::Kind::Table: return std::nullopt;
    }
    return std::nullopt;
}

Sequence sample_polya(double alpha, double beta, int n, Engine& engine) {
    if (!(alpha > 0) || !(beta > 0) || n < 1) throw Error(ErrorCode::ParameterRange, "need alpha, beta > 0, n >= 1");
    Sequence out(static_cast<std::size_t>(n));
    int ones = 0;
    for (int m = 0; m < n; ++m) {
        const double p = (alpha + ones) / (alpha + beta + m);
        const bool one = uniform01(engine) < p;
        out[static_cast<std::size_t>(m)] = one ? 1 : 0;
        ones += one;
    }
    return out;
}

Sequence sample_polya(const Rational& alpha, const Rational& beta, int n, std::uint64_t seed) {
    if (sgn(alpha) <= 0 || sgn(beta) <= 0) throw Error(ErrorCode::ParameterRange, "need alpha, beta > 0");
    Engine engine = make_engine(seed);
    return sample_polya(to_double(alpha), to_double(beta), n, engine);
}

Sequence sample_urn_process(const UrnSpec& spec, int n, Engine& engine) {
    if (n < 1 || spec.r < 1 || spec.b < 1) throw Error(ErrorCode::ParameterRange, "need n, r, b >= 1");
    Sequence out(static_cast<std::size_t>(n));
    long ones = 0;
    for (int m = 0; m < n; ++m) {
        const Rational proportion(Integer(spec.r + ones), Integer(spec.r + spec.b + m));
        const double p = to_double(spec.f(proportion));
        const bool one = uniform01(engine) < p;
        out[static_cast<std::size_t>(m)] = one ? 1 : 0;
        ones += one;
    }
    return out;
}

Sequence sample_urn_process(const UrnSpec& spec, int n, std::uint64_t seed) {
    Engine engine = make_engine(seed);
    return sample_urn_process(spec, n, engine);
}

Sequence sample_mixture(const DeFinettiMeasure& measure, int n, Engine& engine) {
    if (n < 1) throw Error(ErrorCode::ParameterRange, "need n >= 1");
    double theta = 0.0;
    switch (measure.kind()) {
        case MeasureKind::Beta: {
            std::gamma_distribution<double> ga(to_double(measure.alpha()), 1.0);
            std::gamma_distribution<double> gb(to_double(measure.beta_param()), 1.0);
            const double x = ga(engine);
            const double y = gb(engine);
            theta = x / (x + y);
            break;
        }
        case MeasureKind::Discrete: {
            const double u = uniform01(engine);
            double cumulative = 0.0;
            const auto& atoms = measure.atoms();
            theta = to_double(atoms.back().location);
            for (const auto& a : atoms) {
                cumulative += to_double(a.weight);
                if (u < cumulative) {
                    theta = to_double(a.location);
                    break;
                }
            }
            break;
        }
        case MeasureKind::Moments:
            throw Error(ErrorCode::UnsamplableKind, "moment-sequence measures cannot be sampled");
    }
    Sequence out(static_cast<std::size_t>(n));
    for (auto& x : out) x = uniform01(engine) < theta ? 1 : 0;
    return out;
}

Sequence sample_mixture(const DeFinettiMeasure& measure, int n, std::uint64_t seed) {
    Engine engine = make_engine(seed);
    return sample_mixture(measure, n, engine);
}

int count_zeros(const Sequence& s) {
    int z = 0;
    for (auto x : s) z += (x == 0);
    return z;
}

std::vector<std::uint64_t> zero_count_histogram(const Sampler& sampler, int n, std::uint64_t trials,
                                                std::uint64_t seed) {
    std::vector<std::uint64_t> hist(static_cast<std::size_t>(n) + 1, 0);
    for (std::uint64_t t = 0; t < trials; ++t) {
        Engine engine = make_engine(seed, t);
        const auto s = sampler(engine);
        ++hist[static_cast<std::size_t>(count_zeros(s))];
    }
    return hist;
}

double binomial_z(std::uint64_t count, std::uint64_t trials, double p) {
    const double n = static_cast<double>(trials);
    const double diff = static_cast<double>(count) - n * p;
    const double var = n * p * (1.0 - p);
    if (var <= 0.0) return diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
    return diff / std::sqrt(var);
}

SampleReport attach_comparison(SampleReport report, const DeFinettiMeasure& measure) {
    std::vector<ComparisonRow> rows;
    const ConfigTable table(measure, report.n);
    for (int j = 0; j <= report.n; ++j) {
        ComparisonRow row;
        row.j = j;
        row.expected = binomial_q(report.n, j) * table(report.n, j);
        row.expected_float = to_double(row.expected);
        const auto count = report.zero_count_histogram[static_cast<std::size_t>(j)];
        row.frequency = static_cast<double>(count) / static_cast<double>(report.trials);
        row.z_score = binomial_z(count, report.trials, row.expected_float);
        rows.push_back(std::move(row));
    }
    report.comparison = std::move(rows);
    return report;
}

SampleReport compare_exact_empirical(const DeFinettiMeasure& measure, int n, std::uint64_t trials,
                                     std::uint64_t seed) {
    if (measure.kind() == MeasureKind::Moments)
        throw Error(ErrorCode::UnsamplableKind, "moment-sequence measures cannot be sampled");
    if (trials < kMinComparisonTrials)
        throw Error(ErrorCode::TrialsTooFew, "comparison needs at least " + std::to_string(kMinComparisonTrials) +
                                                 " trials, got " + std::to_string(trials));
    if (n < 1) throw Error(ErrorCode::ParameterRange, "need n >= 1");
    SampleReport report;
    report.n = n;
    report.trials = trials;
    report.seed = seed;
    report.zero_count_histogram = zero_count_histogram(
        [&](Engine& e) { return sample_mixture(measure, n, e); }, n, trials, seed);
    return attach_comparison(std::move(report), measure);
}

SampleReport simulate_urn(const UrnSpec& spec, int n, std::uint64_t trials, std::uint64_t seed) {
    if (n < 1 || trials < 1) throw Error(ErrorCode::ParameterRange, "need n >= 1 and trials >= 1");
    SampleReport report;
    report.n = n;
    report.trials = trials;
    report.seed = seed;
    report.zero_count_histogram = zero_count_histogram(
        [&](Engine& e) { return sample_urn_process(spec, n, e); }, n, trials, seed);
    if (auto m = urn_equivalent_measure(spec); m && trials >= kMinComparisonTrials)
        report = attach_comparison(std::move(report), *m);
    return report;
}

std::vector<double> two_sample_z(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::ArityMismatch, "histograms of different length");
    std::uint64_t na = 0, nb = 0;
    for (auto c : a) na += c;
    for (auto c : b) nb += c;
    if (na != nb || na == 0) throw Error(ErrorCode::ParameterRange, "two-sample test needs equal, positive trials");
    const double n = static_cast<double>(na);
    std::vector<double> z;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double pooled = static_cast<double>(a[i] + b[i]) / (2.0 * n);
        const double var = 2.0 * n * pooled * (1.0 - pooled);
        const double diff = static_cast<double>(a[i]) - static_cast<double>(b[i]);
        z.push_back(var > 0.0 ? diff / std::sqrt(var) : 0.0);
    }
    return z;
}

bool all_within(const std::vector<double>& z_scores, double threshold) {
    for (double z : z_scores)
        if (!(std::abs(z) < threshold)) return false;
    return true;
}

bool all_within(const SampleReport& report, double threshold) {
    if (!report.comparison) return false;
    for (const auto& row : *report.comparison)
        if (!(std::abs(row.z_score) < threshold)) return false;
    return true;
}

ExchangeabilityTest exchangeability_chi_square(const Sampler& sampler, int n, std::uint64_t trials,
                                               std::uint64_t seed) {
    if (n < 1 || n > 16) throw Error(ErrorCode::ParameterRange, "pattern test needs 1 <= n <= 16");
    const std::size_t patterns = std::size_t{1} << n;
    std::vector<std::uint64_t> counts(patterns, 0);
    for (std::uint64_t t = 0; t < trials; ++t) {
        Engine engine = make_engine(seed, t);
        const auto s = sampler(engine);
        std::size_t code = 0;
        for (int i = 0; i < n; ++i) code |= static_cast<std::size_t>(s[static_cast<std::size_t>(i)]) << i;
        ++counts[code];
    }

    ExchangeabilityTest out;
    for (int zeros = 0; zeros <= n; ++zeros) {
        std::vector<std::uint64_t> group;
        for (std::size_t code = 0; code < patterns; ++code)
            if (n - std::popcount(code) == zeros) group.push_back(counts[code]);
        std::uint64_t total = 0;
        for (auto c : group) total += c;
        if (total == 0 || group.size() < 2) continue;
        const double expected = static_cast<double>(total) / static_cast<double>(group.size());
        for (auto c : group) {
            const double d = static_cast<double>(c) - expected;
            out.chi_square += d * d / expected;
        }
        out.degrees_of_freedom += static_cast<int>(group.size()) - 1;
    }
    if (out.degrees_of_freedom > 0) {
        const boost::math::chi_squared dist(out.degrees_of_freedom);
        out.p_value = boost::math::cdf(boost::math::complement(dist, out.chi_square));
    }
    return out;
}

}  // namespace hoeffding_urn
