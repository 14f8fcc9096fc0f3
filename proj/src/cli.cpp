#include "hoeffding_urn/cli.hpp"

#include "hoeffding_urn/combinatorics.hpp"
#include "hoeffding_urn/error.hpp"
#include "hoeffding_urn/report.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

namespace hoeffding_urn::cli {

namespace {

using ojson = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

DeFinettiMeasure load_measure(const std::string& path) { return parse_measure_spec(read_file(path)); }

struct Options {
    std::string format = "tsv";
    std::string measure;
    std::string statistic;
    std::string urn;
    std::string method = "all";
    std::string c1;
    std::string c2;
    int max_n = 0;
    int n = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

int run_moments(const Options& o, Format fmt, std::ostream& out) {
    const auto m = load_measure(o.measure);
    std::vector<Rational> mu;
    for (int n = 0; n <= o.max_n; ++n) mu.push_back(moment(m, n));
    if (fmt == Format::Json) {
        ojson arr = ojson::array();
        for (const auto& v : mu) arr.push_back(to_string(v));
        out << ojson{{"measure", m.describe()}, {"moments", arr}}.dump(2) << '\n';
    } else {
        out << "n\tmoment\n";
        for (std::size_t n = 0; n < mu.size(); ++n) out << n << '\t' << to_string(mu[n]) << '\n';
    }
    return kExitOk;
}

int run_probabilities(const Options& o, Format fmt, std::ostream& out) {
    const auto m = load_measure(o.measure);
    const ConfigTable table(m, o.n);
    if (fmt == Format::Json) {
        ojson rows = ojson::array();
        for (int j = 0; j <= o.n; ++j)
            rows.push_back({{"j", j},
                            {"probability", to_string(table(o.n, j))},
                            {"zero_count_probability", to_string(binomial_q(o.n, j) * table(o.n, j))}});
        out << ojson{{"measure", m.describe()}, {"n", o.n}, {"rows", rows}}.dump(2) << '\n';
    } else {
        out << "j\tprobability\tzero_count_probability\n";
        for (int j = 0; j <= o.n; ++j)
            out << j << '\t' << to_string(table(o.n, j)) << '\t' << to_string(binomial_q(o.n, j) * table(o.n, j))
                << '\n';
    }
    return kExitOk;
}

int run_kernel(const Options& o, Format fmt, std::ostream& out) {
    const auto m = load_measure(o.measure);
    const auto phi = canonical_degenerate_kernel(m, o.n);
    if (fmt == Format::Json) {
        ojson arr = ojson::array();
        for (const auto& v : phi.values()) arr.push_back(to_string(v));
        out << ojson{{"measure", m.describe()}, {"n", o.n}, {"kernel", arr}}.dump(2) << '\n';
    } else {
        out << "k\tvalue\n";
        for (int k = 0; k <= o.n; ++k) out << k << '\t' << to_string(phi[k]) << '\n';
    }
    return kExitOk;
}

int run_project(const Options& o, Format fmt, std::ostream& out) {
    const auto m = load_measure(o.measure);
    const auto t = parse_statistic(read_file(o.statistic));
    const auto d = hoeffding_projection(t, m);
    out << (fmt == Format::Json ? render_json(d) : render_tsv(d, m));
    return kExitOk;
}

int run_check(const Options& o, Format fmt, std::ostream& out) {
    const auto method = parse_method(o.method);
    const auto m = load_measure(o.measure);
    const auto report = check_decomposable(m, o.max_n, *method);
    if (fmt == Format::Json) {
        out << render_json(report);
    } else {
        out << render_tsv(report);
        out << "verdict\t" << verdict_name(report.verdict) << "\tn_max=" << report.n_max << '\n';
    }
    return report.verdict == Verdict::NotDecomposable ? kExitViolation : kExitOk;
}

int run_classify(const Options& o, Format fmt, std::ostream& out) {
    const auto m = load_measure(o.measure);
    const auto c = classify(m, o.max_n);
    out << (fmt == Format::Json ? render_json(c) : render_tsv(c));
    return c.kind == ClassificationKind::NotDecomposable ? kExitViolation : kExitOk;
}

int run_recover_beta(const Options& o, Format fmt, std::ostream& out) {
    const auto p = recover_beta(parse_rational(o.c1), parse_rational(o.c2));
    const bool integer = p.alpha.get_den() == 1 && p.beta.get_den() == 1;
    if (fmt == Format::Json)
        out << ojson{{"alpha", to_string(p.alpha)}, {"beta", to_string(p.beta)}, {"integer", integer}}.dump(2)
            << '\n';
    else
        out << "alpha=" << to_string(p.alpha) << " beta=" << to_string(p.beta) << '\n';
    return kExitOk;
}

int run_recursion(const Options& o, Format fmt, std::ostream& out) {
    const auto m = load_measure(o.measure);
    std::vector<std::pair<int, Rational>> rows;
    std::optional<std::size_t> witness;
    for (int n = 2; n <= o.max_n; ++n) {
        rows.emplace_back(n, moment_recursion_residual(m, n));
        if (!witness && sgn(rows.back().second) != 0) witness = rows.size() - 1;
    }
    if (fmt == Format::Json) {
        ojson arr = ojson::array();
        for (const auto& [n, r] : rows) arr.push_back({{"n", n}, {"residual", to_string(r)}});
        ojson doc;
        doc["witness"] = witness ? ojson{{"n", rows[*witness].first}} : ojson(nullptr);
        doc["measure"] = m.describe();
        doc["residuals"] = arr;
        out << doc.dump(2) << '\n';
    } else {
        if (witness)
            out << "witness n=" << rows[*witness].first << " residual=" << to_string(rows[*witness].second) << '\n';
        out << "n\tresidual\n";
        for (const auto& [n, r] : rows) out << n << '\t' << to_string(r) << '\n';
    }
    return witness ? kExitViolation : kExitOk;
}

int run_simulate(const Options& o, Format fmt, std::ostream& out) {
    SampleReport report;
    if (!o.measure.empty())
        report = compare_exact_empirical(load_measure(o.measure), o.n, o.trials, o.seed);
    else
        report = simulate_urn(parse_urn_spec(read_file(o.urn)), o.n, o.trials, o.seed);
    out << (fmt == Format::Json ? render_json(report) : render_tsv(report));
    return kExitOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hoeffding decompositions of exchangeable binary sequences", "hoeffding-urn"};
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"tsv", "json"}));

    auto* moments = app.add_subcommand("moments", "Moments mu_0..mu_N");
    moments->add_option("--measure", o.measure)->required()->check(CLI::ExistingFile);
    moments->add_option("--max-n", o.max_n)->required()->check(CLI::Range(0, 4096));

    auto* probabilities = app.add_subcommand("probabilities", "Configuration probabilities P_n(0^(j))");
    probabilities->add_option("--measure", o.measure)->required()->check(CLI::ExistingFile);
    probabilities->add_option("--n", o.n)->required()->check(CLI::Range(0, 4096));

    auto* kernel = app.add_subcommand("kernel", "Canonical completely degenerate kernel");
    kernel->add_option("--measure", o.measure)->required()->check(CLI::ExistingFile);
    kernel->add_option("--n", o.n)->required()->check(CLI::Range(1, 4096));

    auto* project = app.add_subcommand("project", "Hoeffding decomposition of a symmetric statistic");
    project->add_option("--measure", o.measure)->required()->check(CLI::ExistingFile);
    project->add_option("--statistic", o.statistic)->required()->check(CLI::ExistingFile);

    auto* check = app.add_subcommand("check", "Hoeffding decomposability up to a bound");
    check->add_option("--measure", o.measure)->required()->check(CLI::ExistingFile);
    check->add_option("--max-n", o.max_n)->required()->check(CLI::Range(2, 4096));
    check->add_option("--method", o.method)->check(CLI::IsMember({"prop1", "weakindep", "definition", "all"}));

    auto* classify_cmd = app.add_subcommand("classify", "Classify as IID, POLYA or NOT_DECOMPOSABLE");
    classify_cmd->add_option("--measure", o.measure)->required()->check(CLI::ExistingFile);
    classify_cmd->add_option("--max-n", o.max_n)->required()->check(CLI::Range(3, 4096));

    auto* recover = app.add_subcommand("recover-beta", "Beta parameters from the first two moments");
    recover->add_option("--c1", o.c1)->required();
    recover->add_option("--c2", o.c2)->required();

    auto* recursion = app.add_subcommand("recursion", "Moment recursion residuals");
    recursion->add_option("--measure", o.measure)->required()->check(CLI::ExistingFile);
    recursion->add_option("--max-n", o.max_n)->required()->check(CLI::Range(2, 4096));

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo zero-count histogram");
    auto* sim_measure = simulate->add_option("--measure", o.measure)->check(CLI::ExistingFile);
    auto* sim_urn = simulate->add_option("--urn", o.urn)->check(CLI::ExistingFile);
    sim_measure->excludes(sim_urn);
    simulate->add_option("--n", o.n)->required()->check(CLI::Range(1, 1 << 20));
    simulate->add_option("--trials", o.trials)->required()->check(CLI::PositiveNumber);
    simulate->add_option("--seed", o.seed)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    if (simulate->parsed() && o.measure.empty() && o.urn.empty()) {
        err << "error: simulate needs one of --measure or --urn\n";
        return kExitUsage;
    }

    const Format fmt = *parse_format(o.format);
    std::ostringstream buffer;
    int code = kExitOk;
    try {
        if (moments->parsed()) code = run_moments(o, fmt, buffer);
        else if (probabilities->parsed()) code = run_probabilities(o, fmt, buffer);
        else if (kernel->parsed()) code = run_kernel(o, fmt, buffer);
        else if (project->parsed()) code = run_project(o, fmt, buffer);
        else if (check->parsed()) code = run_check(o, fmt, buffer);
        else if (classify_cmd->parsed()) code = run_classify(o, fmt, buffer);
        else if (recover->parsed()) code = run_recover_beta(o, fmt, buffer);
        else if (recursion->parsed()) code = run_recursion(o, fmt, buffer);
        else if (simulate->parsed()) code = run_simulate(o, fmt, buffer);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    out << buffer.str();
    return code;
}

}  // namespace hoeffding_urn::cli
