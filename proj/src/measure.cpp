#include "hoeffding_urn/measure.hpp"

#include "hoeffding_urn/combinatorics.hpp"
#include "hoeffding_urn/error.hpp"

#include <nlohmann/json.hpp>

#include <utility>

namespace hoeffding_urn {

namespace {

using nlohmann::json;

std::string idx_text(int n, int j) { return "(n=" + std::to_string(n) + ", j=" + std::to_string(j) + ")"; }

// (-1)^j Delta_j mu_{n-j} = sum_i (-1)^i C(j,i) mu_{n-j+i}
Rational signed_forward_difference(const std::vector<Rational>& mu, int n, int j) {
    Rational s;
    for (int i = 0; i <= j; ++i) {
        Rational term = binomial_q(j, i) * mu[static_cast<std::size_t>(n - j + i)];
        if (i % 2 == 0)
            s += term;
        else
            s -= term;
    }
    return s;
}

void check_index(ZeroCountIndex idx) {
    if (idx.n < 0 || idx.j < 0 || idx.j > idx.n)
        throw Error(ErrorCode::IndexRange, "zero-count index out of range " + idx_text(idx.n, idx.j));
}

}  // namespace

DeFinettiMeasure DeFinettiMeasure::beta(Rational alpha, Rational beta) {
    if (sgn(alpha) <= 0 || sgn(beta) <= 0)
        throw Error(ErrorCode::NonpositiveParameter, "beta parameters must be positive");
    DeFinettiMeasure m;
    m.kind_ = MeasureKind::Beta;
    m.alpha_ = std::move(alpha);
    m.beta_ = std::move(beta);
    m.label_ = "beta(" + to_string(m.alpha_) + "," + to_string(m.beta_) + ")";
    return m;
}

DeFinettiMeasure DeFinettiMeasure::discrete(std::vector<Atom> atoms) {
    if (atoms.empty()) throw Error(ErrorCode::ParameterRange, "discrete measure needs at least one atom");
    Rational total;
    for (const auto& a : atoms) {
        if (sgn(a.location) < 0 || a.location > 1)
            throw Error(ErrorCode::ParameterRange, "atom location " + to_string(a.location) + " outside [0,1]");
        if (sgn(a.weight) <= 0)
            throw Error(ErrorCode::ParameterRange, "atom weight " + to_string(a.weight) + " not positive");
        total += a.weight;
    }
    if (total != 1) throw Error(ErrorCode::ParameterRange, "atom weights sum to " + to_string(total) + ", not 1");
    DeFinettiMeasure m;
    m.kind_ = MeasureKind::Discrete;
    m.atoms_ = std::move(atoms);
    if (m.atoms_.size() == 1) {
        m.label_ = "dirac(" + to_string(m.atoms_[0].location) + ")";
    } else {
        m.label_ = "discrete(";
        for (std::size_t i = 0; i < m.atoms_.size(); ++i) {
            if (i) m.label_ += ";";
            m.label_ += to_string(m.atoms_[i].location) + ":" + to_string(m.atoms_[i].weight);
        }
        m.label_ += ")";
    }
    return m;
}

DeFinettiMeasure DeFinettiMeasure::dirac(Rational location) { return discrete({Atom{std::move(location), 1}}); }

DeFinettiMeasure DeFinettiMeasure::from_moments(std::vector<Rational> values) {
    if (values.empty() || values[0] != 1)
        throw Error(ErrorCode::InvalidMomentSequence, "moment sequence must start with mu_0 = 1");
    const int order = static_cast<int>(values.size()) - 1;
    for (int n = 1; n <= order; ++n) {
        for (int j = 0; j <= n; ++j) {
            if (sgn(signed_forward_difference(values, n, j)) < 0)
                throw Error(ErrorCode::InvalidMomentSequence,
                            "complete monotonicity fails at " + idx_text(n, j));
        }
    }
    DeFinettiMeasure m;
    m.kind_ = MeasureKind::Moments;
    m.moments_ = std::move(values);
    m.label_ = "moments(M=" + std::to_string(order) + ")";
    return m;
}

DeFinettiMeasure DeFinettiMeasure::truncated_uniform(const Rational& epsilon, int order) {
    if (sgn(epsilon) <= 0 || epsilon > 1)
        throw Error(ErrorCode::ParameterRange, "epsilon must lie in (0, 1]");
    if (order < 0) throw Error(ErrorCode::ParameterRange, "order must be non-negative");
    std::vector<Rational> mu;
    mu.reserve(static_cast<std::size_t>(order) + 1);
    for (int n = 0; n <= order; ++n) mu.push_back(pow(epsilon, static_cast<unsigned long>(n)) / (n + 1));
    DeFinettiMeasure m = from_moments(std::move(mu));
    m.uniform_epsilon_ = epsilon;
    m.label_ = "truncated_uniform(" + to_string(epsilon) + ",M=" + std::to_string(order) + ")";
    return m;
}

std::optional<Rational> DeFinettiMeasure::uniform_epsilon() const {
    if (is_zero(uniform_epsilon_)) return std::nullopt;
    return uniform_epsilon_;
}

std::optional<int> DeFinettiMeasure::max_order() const {
    if (kind_ == MeasureKind::Moments) return static_cast<int>(moments_.size()) - 1;
    return std::nullopt;
}

bool DeFinettiMeasure::supports(int n) const {
    const auto m = max_order();
    return n >= 0 && (!m || n <= *m);
}

std::string DeFinettiMeasure::describe() const { return label_; }

Rational DeFinettiMeasure::moment(int n) const {
    if (n < 0) throw Error(ErrorCode::IndexRange, "negative moment order");
    switch (kind_) {
        case MeasureKind::Beta: {
            Rational mu = 1;
            for (int i = 0; i < n; ++i) mu *= (alpha_ + i) / (alpha_ + beta_ + i);
            return mu;
        }
        case MeasureKind::Discrete: {
            Rational mu;
            for (const auto& a : atoms_) mu += a.weight * pow(a.location, static_cast<unsigned long>(n));
            return mu;
        }
        case MeasureKind::Moments:
            if (!supports(n))
                throw Error(ErrorCode::OrderExceeded, "moment order " + std::to_string(n) +
                                                          " exceeds truncation M=" + std::to_string(*max_order()));
            return moments_[static_cast<std::size_t>(n)];
    }
    return {};
}

Rational moment(const DeFinettiMeasure& measure, int n) { return measure.moment(n); }

Rational config_probability(const DeFinettiMeasure& measure, ZeroCountIndex idx) {
    check_index(idx);
    if (!measure.supports(idx.n))
        throw Error(ErrorCode::OrderExceeded, "order " + std::to_string(idx.n) + " not supported by " +
                                                  measure.describe());
    std::vector<Rational> mu;
    for (int i = 0; i <= idx.n; ++i) mu.push_back(measure.moment(i));
    return signed_forward_difference(mu, idx.n, idx.j);
}

std::optional<Rational> closed_form_config_probability(const DeFinettiMeasure& measure, ZeroCountIndex idx) {
    check_index(idx);
    const int ones = idx.n - idx.j;
    switch (measure.kind()) {
        case MeasureKind::Beta: {
            // B(alpha + ones, beta + zeros) / B(alpha, beta) as rising factorials
            const Rational& a = measure.alpha();
            const Rational& b = measure.beta_param();
            Rational p = 1;
            for (int i = 0; i < ones; ++i) p *= a + i;
            for (int i = 0; i < idx.j; ++i) p *= b + i;
            for (int i = 0; i < idx.n; ++i) p /= a + b + i;
            return p;
        }
        case MeasureKind::Discrete: {
            Rational p;
            for (const auto& at : measure.atoms())
                p += at.weight * pow(at.location, static_cast<unsigned long>(ones)) *
                     pow(1 - at.location, static_cast<unsigned long>(idx.j));
            return p;
        }
        case MeasureKind::Moments:
            return std::nullopt;
    }
    return std::nullopt;
}

Rational conditional_zero_count(const DeFinettiMeasure& measure, int n, int v, int a, int b) {
    if (n < 0 || v < 1 || a < 0 || a > n || b < a || b > a + v)
        throw Error(ErrorCode::IndexRange, "conditional zero-count arguments out of range");
    const ConfigTable table(measure, n + v);
    return binomial_q(v, b - a) * table(n + v, b) / table.positive(n, a);
}

Rational predictive_probability(const DeFinettiMeasure& measure, int n, int p) {
    if (n < 0 || p < 0 || p > n) throw Error(ErrorCode::IndexRange, "predictive index out of range");
    const ConfigTable table(measure, n + 1);
    table.require_positive(n);
    return table(n + 1, p) / table(n, p);
}

bool is_nondeterministic(const DeFinettiMeasure& measure, int n_max) {
    const ConfigTable table(measure, n_max);
    for (int n = 0; n <= n_max; ++n)
        for (int j = 0; j <= n; ++j)
            if (sgn(table(n, j)) <= 0) return false;
    return true;
}

ConfigTable::ConfigTable(const DeFinettiMeasure& measure, int order) : order_(order) {
    if (order < 0) throw Error(ErrorCode::IndexRange, "negative order");
    if (!measure.supports(order))
        throw Error(ErrorCode::OrderExceeded, "order " + std::to_string(order) + " not supported by " +
                                                  measure.describe());
    moments_.reserve(static_cast<std::size_t>(order) + 1);
    for (int n = 0; n <= order; ++n) moments_.push_back(measure.moment(n));
    rows_.resize(static_cast<std::size_t>(order) + 1);
    for (int n = 0; n <= order; ++n) {
        auto& row = rows_[static_cast<std::size_t>(n)];
        row.reserve(static_cast<std::size_t>(n) + 1);
        for (int j = 0; j <= n; ++j) row.push_back(signed_forward_difference(moments_, n, j));
    }
}

const Rational& ConfigTable::moment(int n) const {
    if (n < 0 || n > order_)
        throw Error(ErrorCode::OrderExceeded, "moment " + std::to_string(n) + " beyond table order");
    return moments_[static_cast<std::size_t>(n)];
}

const Rational& ConfigTable::operator()(int n, int j) const {
    if (n < 0 || n > order_) throw Error(ErrorCode::OrderExceeded, "order " + std::to_string(n) + " beyond table");
    if (j < 0 || j > n) throw Error(ErrorCode::IndexRange, "zero count out of range " + idx_text(n, j));
    return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)];
}

void ConfigTable::require_positive(int n) const {
    for (int j = 0; j <= n; ++j) positive(n, j);
}

const Rational& ConfigTable::positive(int n, int j) const {
    const Rational& p = (*this)(n, j);
    if (sgn(p) <= 0)
        throw Error(ErrorCode::DeterministicMeasure, "P_n(0^(j)) vanishes at " + idx_text(n, j));
    return p;
}

// ---- measure-spec documents ----

namespace {

Rational field_rational(const json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_string())
        throw Error(ErrorCode::ParseError, std::string("missing string field '") + key + "'");
    return parse_rational(doc[key].get<std::string>());
}

}  // namespace

DeFinettiMeasure parse_measure_spec(std::string_view document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string())
        throw Error(ErrorCode::ParseError, "measure spec needs a string 'type'");
    const auto type = doc["type"].get<std::string>();
    try {
        if (type == "beta") return DeFinettiMeasure::beta(field_rational(doc, "alpha"), field_rational(doc, "beta"));
        if (type == "discrete") {
            if (!doc.contains("atoms") || !doc["atoms"].is_array())
                throw Error(ErrorCode::ParseError, "discrete spec needs an 'atoms' array");
            std::vector<Atom> atoms;
            for (const auto& pair : doc["atoms"]) {
                if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string())
                    throw Error(ErrorCode::ParseError, "each atom must be [\"loc\", \"weight\"]");
                atoms.push_back({parse_rational(pair[0].get<std::string>()), parse_rational(pair[1].get<std::string>())});
            }
            return DeFinettiMeasure::discrete(std::move(atoms));
        }
        if (type == "moments") {
            if (!doc.contains("values") || !doc["values"].is_array())
                throw Error(ErrorCode::ParseError, "moments spec needs a 'values' array");
            std::vector<Rational> values;
            for (const auto& v : doc["values"]) {
                if (!v.is_string()) throw Error(ErrorCode::ParseError, "moment values must be strings");
                values.push_back(parse_rational(v.get<std::string>()));
            }
            return DeFinettiMeasure::from_moments(std::move(values));
        }
        if (type == "truncated_uniform") {
            if (!doc.contains("order") || !doc["order"].is_number_integer())
                throw Error(ErrorCode::ParseError, "truncated_uniform spec needs an integer 'order'");
            return DeFinettiMeasure::truncated_uniform(field_rational(doc, "epsilon"), doc["order"].get<int>());
        }
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidMomentSequence || e.code() == ErrorCode::ParseError) throw;
        throw Error(ErrorCode::ParseError, e.what());
    }
    throw Error(ErrorCode::ParseError, "unknown measure type '" + type + "'");
}

std::string measure_spec_json(const DeFinettiMeasure& measure) {
    json doc;
    switch (measure.kind()) {
        case MeasureKind::Beta:
            doc = {{"type", "beta"}, {"alpha", to_string(measure.alpha())}, {"beta", to_string(measure.beta_param())}};
            break;
        case MeasureKind::Discrete: {
            json atoms = json::array();
            for (const auto& a : measure.atoms()) atoms.push_back({to_string(a.location), to_string(a.weight)});
            doc = {{"type", "discrete"}, {"atoms", atoms}};
            break;
        }
        case MeasureKind::Moments:
            if (auto eps = measure.uniform_epsilon()) {
                doc = {{"type", "truncated_uniform"}, {"epsilon", to_string(*eps)}, {"order", *measure.max_order()}};
            } else {
                json values = json::array();
                for (const auto& v : measure.moment_values()) values.push_back(to_string(v));
                doc = {{"type", "moments"}, {"values", values}};
            }
            break;
    }
    return doc.dump();
}

}  // namespace hoeffding_urn
