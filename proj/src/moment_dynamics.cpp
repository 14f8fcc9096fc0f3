#include "hoeffding_urn/moment_dynamics.hpp"

#include "hoeffding_urn/error.hpp"

#include <algorithm>
#include <stdexcept>

namespace hoeffding_urn {

MomentPolynomials moment_polynomials(const Rational& x, const Rational& y, const Rational& z) {
    MomentPolynomials out;
    out.f = 2 * x * x * z - x * y * y - x * x * y;
    out.g = z * x - 2 * y * y + y * z;
    return out;
}

Rational moment_recursion_residual(const DeFinettiMeasure& measure, int n) {
    if (n < 2) throw Error(ErrorCode::IndexRange, "moment recursion starts at n = 2");
    if (!measure.supports(n + 1))
        throw Error(ErrorCode::OrderExceeded, "moment recursion at n=" + std::to_string(n) + " needs mu_" +
                                                  std::to_string(n + 1));
    const auto [f, g] = moment_polynomials(measure.moment(n), measure.moment(n - 1), measure.moment(n - 2));
    return measure.moment(n + 1) * g - f;
}

bool in_region_s(const Rational& x, const Rational& y, const Rational& z) {
    return sgn(x) > 0 && x < y && y < z && z < 1;
}

Rational next_moment(const Rational& x, const Rational& y, const Rational& z) {
    if (!(sgn(x) > 0 && x < y && y < z && z <= 1))
        throw Error(ErrorCode::NotInS, "(" + to_string(x) + ", " + to_string(y) + ", " + to_string(z) +
                                           ") violates 0 < x < y < z <= 1");
    const auto [f, g] = moment_polynomials(x, y, z);
    if (sgn(g) == 0) throw Error(ErrorCode::ZeroDenominator, "g vanishes at the supplied moments");
    return f / g;
}

Rational next_moment(const DeFinettiMeasure& measure, int n) {
    if (n < 2) throw Error(ErrorCode::IndexRange, "next moment needs n >= 2");
    return next_moment(measure.moment(n), measure.moment(n - 1), measure.moment(n - 2));
}

BetaParameters recover_beta(const Rational& c1, const Rational& c2) {
    const Rational c1sq = c1 * c1;
    if (!(sgn(c1sq) > 0 && c1sq < c2 && c2 < c1 && c1 < 1))
        throw Error(ErrorCode::MomentRegion, "(c1, c2) = (" + to_string(c1) + ", " + to_string(c2) +
                                                 ") violates 0 < c1^2 < c2 < c1 < 1");
    const Rational spread = c2 - c1sq;
    BetaParameters out{c1 * (c1 - c2) / spread, (1 - c1) * (c1 - c2) / spread};

    const Rational s = out.alpha + out.beta;
    if (out.alpha / s != c1 || out.alpha * (out.alpha + 1) / (s * (s + 1)) != c2)
        throw std::logic_error("recovered Beta parameters fail the moment equations");
    return out;
}

UrnEligibility is_urn_integer_eligible(const Rational& c1, const Rational& c2) {
    UrnEligibility out;
    out.parameters = recover_beta(c1, c2);
    out.integer = out.parameters.alpha.get_den() == 1 && out.parameters.beta.get_den() == 1;
    return out;
}

namespace {

Rational predictive(const ConfigTable& table, int n, int p) { return table(n + 1, p) / table.positive(n, p); }

}  // namespace

Rational predictive_affinity_residual(const DeFinettiMeasure& measure, int n, int p) {
    if (n < 2 || p < 0 || p > n - 2) throw Error(ErrorCode::IndexRange, "affinity needs n >= 2, 0 <= p <= n-2");
    const ConfigTable table(measure, n + 1);
    table.require_positive(n + 1);
    return predictive(table, n, p + 2) - 2 * predictive(table, n, p + 1) + predictive(table, n, p);
}

std::pair<Rational, Rational> dy_affine_coefficients(const Rational& a, const Rational& b, int n) {
    if (!(sgn(a) > 0 && sgn(b) > 0 && a + b < 1 && n >= 1))
        throw Error(ErrorCode::ParameterRange, "need a > 0, b > 0, a + b < 1 and n >= 1");
    const Rational denom = 1 + a * (n - 1);
    return {1 / denom, b / denom};
}

std::pair<Rational, Rational> fit_predictive_line(const DeFinettiMeasure& measure, int n) {
    if (n < 1) throw Error(ErrorCode::IndexRange, "predictive line needs n >= 1");
    const ConfigTable table(measure, n + 1);
    const Rational at0 = predictive(table, n, 0);
    return {predictive(table, n, 1) - at0, at0};
}

std::string_view classification_name(ClassificationKind kind) {
    switch (kind) {
        case ClassificationKind::Iid: return "IID";
        case ClassificationKind::Polya: return "POLYA";
        case ClassificationKind::NotDecomposable: return "NOT_DECOMPOSABLE";
        case ClassificationKind::Inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

std::optional<ClassificationKind> parse_classification(std::string_view text) {
    for (auto k : {ClassificationKind::Iid, ClassificationKind::Polya, ClassificationKind::NotDecomposable,
                   ClassificationKind::Inconclusive})
        if (classification_name(k) == text) return k;
    return std::nullopt;
}

Classification classify(const DeFinettiMeasure& measure, int n_max) {
    if (n_max < 3) throw Error(ErrorCode::IndexRange, "classify needs n_max >= 3");
    const auto max_order = measure.max_order();
    const int wanted_order = 2 * n_max - 1;
    const int table_order = max_order ? std::min(wanted_order, *max_order) : wanted_order;
    if (table_order < 2) throw Error(ErrorCode::OrderExceeded, "classify needs at least mu_1 and mu_2");
    const ConfigTable table(measure, table_order);
    table.require_positive(table_order);

    Classification out;
    out.verified_order = std::min(n_max, table_order);
    // largest n whose residuals only need orders <= table_order
    out.checked_n_max = std::min(n_max, (table_order + 1) / 2);

    const Rational& mu1 = table.moment(1);
    const Rational& mu2 = table.moment(2);

    std::optional<Rational> iid_p;
    std::optional<BetaParameters> polya;
    if (mu2 == mu1 * mu1) {
        iid_p = mu1;
        for (int n = 3; n <= out.verified_order; ++n) {
            if (table.moment(n) != pow(mu1, static_cast<unsigned long>(n))) {
                out.kind = ClassificationKind::NotDecomposable;
                out.witness = MomentWitness{n};
                return out;
            }
        }
    } else {
        polya = recover_beta(mu1, mu2);
        const auto candidate = DeFinettiMeasure::beta(polya->alpha, polya->beta);
        for (int n = 3; n <= out.verified_order; ++n) {
            if (table.moment(n) != candidate.moment(n)) {
                out.kind = ClassificationKind::NotDecomposable;
                out.witness = MomentWitness{n};
                return out;
            }
        }
    }

    if (out.checked_n_max >= 2) {
        const auto report = check_decomposable(measure, out.checked_n_max, CheckMethod::Prop1);
        if (report.verdict == Verdict::NotDecomposable) {
            out.kind = ClassificationKind::NotDecomposable;
            out.witness = *report.witness;
            return out;
        }
    }

    if (out.verified_order < n_max || out.checked_n_max < n_max) {
        out.kind = ClassificationKind::Inconclusive;
        return out;
    }
    if (iid_p) {
        out.kind = ClassificationKind::Iid;
        out.iid_p = iid_p;
    } else {
        out.kind = ClassificationKind::Polya;
        out.polya = polya;
    }
    return out;
}

}  // namespace hoeffding_urn
