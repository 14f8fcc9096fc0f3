#include "hoeffding_urn/report.hpp"

#include "hoeffding_urn/error.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace hoeffding_urn {

using ojson = nlohmann::ordered_json;

std::optional<Format> parse_format(std::string_view text) {
    if (text == "tsv") return Format::Tsv;
    if (text == "json") return Format::Json;
    return std::nullopt;
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace {

ojson parse_document(std::string_view text) {
    try {
        return ojson::parse(text);
    } catch (const ojson::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

template <class F>
auto guarded(F&& f) {
    try {
        return f();
    } catch (const ojson::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

void expect_type(const ojson& doc, std::string_view type) {
    if (!doc.is_object() || !doc.contains("type") || doc["type"] != type)
        throw Error(ErrorCode::ParseError, "expected a report of type '" + std::string(type) + "'");
}

ojson double_json(double x) {
    if (std::isfinite(x)) return x;
    return format_double(x);
}

double json_double(const ojson& j) {
    if (j.is_number()) return j.get<double>();
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw Error(ErrorCode::ParseError, "bad number '" + s + "'");
}

Rational json_rational(const ojson& j) { return parse_rational(j.get<std::string>()); }

ojson triple_json(const Triple& t) { return {{"n", t.n}, {"u", t.u}, {"z", t.z}}; }

Triple json_triple(const ojson& j) { return {j.at("n").get<int>(), j.at("u").get<int>(), j.at("z").get<int>()}; }

ojson residual_map_json(const std::map<Triple, Rational>& m) {
    ojson arr = ojson::array();
    for (const auto& [t, r] : m) {
        ojson row = triple_json(t);
        row["value"] = to_string(r);
        arr.push_back(row);
    }
    return arr;
}

std::map<Triple, Rational> json_residual_map(const ojson& arr) {
    std::map<Triple, Rational> out;
    for (const auto& row : arr) out.emplace(json_triple(row), json_rational(row.at("value")));
    return out;
}

ojson values_json(const SymmetricFunction& f) {
    ojson arr = ojson::array();
    for (const auto& v : f.values()) arr.push_back(to_string(v));
    return arr;
}

}  // namespace

std::string witness_line(const DecomposabilityReport& report) {
    if (report.witness) {
        const auto& t = *report.witness;
        auto it = report.residuals.find(t);
        if (it == report.residuals.end()) it = report.cross_residuals.find(t);
        std::string line = "witness n=" + std::to_string(t.n) + " u=" + std::to_string(t.u) +
                           " z=" + std::to_string(t.z);
        if (it != report.cross_residuals.end()) line += " residual=" + to_string(it->second);
        return line;
    }
    if (report.definition_witness) return "witness definition n=" + std::to_string(*report.definition_witness);
    return {};
}

std::string witness_line(const Classification& c) {
    if (const auto* t = std::get_if<Triple>(&c.witness))
        return "witness n=" + std::to_string(t->n) + " u=" + std::to_string(t->u) + " z=" + std::to_string(t->z);
    if (const auto* m = std::get_if<MomentWitness>(&c.witness))
        return "witness moment_order=" + std::to_string(m->order);
    return {};
}

std::string render_tsv(const DecomposabilityReport& report) {
    std::ostringstream out;
    if (report.verdict == Verdict::NotDecomposable) {
        const auto w = witness_line(report);
        if (!w.empty()) out << w << '\n';
    }
    out << "n\tu\tz\tprop1\tweakindep\n";
    std::map<Triple, std::pair<std::string, std::string>> rows;
    for (const auto& [t, r] : report.residuals) rows[t] = {to_string(r), "NA"};
    for (const auto& [t, r] : report.cross_residuals) {
        auto [it, fresh] = rows.try_emplace(t, "NA", "NA");
        it->second.second = to_string(r);
    }
    for (const auto& [t, cells] : rows)
        out << t.n << '\t' << t.u << '\t' << t.z << '\t' << cells.first << '\t' << cells.second << '\n';
    if (!report.definition_a.empty()) {
        out << "definition_n\tequal\n";
        for (const auto& [n, equal] : report.definition_a) out << n << '\t' << (equal ? "true" : "false") << '\n';
    }
    return out.str();
}

std::string render_tsv(const HoeffdingDecomposition& d, const DeFinettiMeasure& measure) {
    std::ostringstream out;
    out << "component";
    for (int z = 0; z <= d.n; ++z) out << "\tz=" << z;
    out << '\n';
    SymmetricFunction total = SymmetricFunction::zero(d.n);
    for (std::size_t k = 0; k < d.components.size(); ++k) {
        out << k;
        for (const auto& v : d.components[k].values()) out << '\t' << to_string(v);
        out << '\n';
        total += d.components[k];
    }
    out << "sum";
    for (const auto& v : total.values()) out << '\t' << to_string(v);
    out << '\n';
    const ConfigTable table(measure, d.n);
    for (std::size_t i = 0; i < d.components.size(); ++i)
        for (std::size_t j = i + 1; j < d.components.size(); ++j)
            out << "inner(" << i << ',' << j << ")\t"
                << to_string(inner_product(d.components[i], d.components[j], table)) << '\n';
    return out.str();
}

std::string render_tsv(const SampleReport& report) {
    std::ostringstream out;
    if (!report.comparison) {
        out << "j\tcount\n";
        for (std::size_t j = 0; j < report.zero_count_histogram.size(); ++j)
            out << j << '\t' << report.zero_count_histogram[j] << '\n';
        return out.str();
    }
    out << "j\tcount\texpected\texpected_float\tfrequency\tz\n";
    for (const auto& row : *report.comparison)
        out << row.j << '\t' << report.zero_count_histogram[static_cast<std::size_t>(row.j)] << '\t'
            << to_string(row.expected) << '\t' << format_double(row.expected_float) << '\t'
            << format_double(row.frequency) << '\t' << format_double(row.z_score) << '\n';
    return out.str();
}

std::string render_tsv(const Classification& c) {
    std::ostringstream out;
    if (c.kind == ClassificationKind::NotDecomposable) {
        const auto w = witness_line(c);
        if (!w.empty()) out << w << '\n';
    }
    out << "classification\t" << classification_name(c.kind) << '\n';
    if (c.iid_p) out << "p\t" << to_string(*c.iid_p) << '\n';
    if (c.polya) out << "alpha\t" << to_string(c.polya->alpha) << "\nbeta\t" << to_string(c.polya->beta) << '\n';
    out << "verified_order\t" << c.verified_order << '\n';
    out << "checked_n_max\t" << c.checked_n_max << '\n';
    return out.str();
}

std::string render_json(const DecomposabilityReport& report) {
    ojson doc;
    doc["type"] = "decomposability";
    doc["witness"] = report.witness ? triple_json(*report.witness) : ojson(nullptr);
    doc["definition_witness"] = report.definition_witness ? ojson(*report.definition_witness) : ojson(nullptr);
    doc["verdict"] = verdict_name(report.verdict);
    doc["n_max"] = report.n_max;
    doc["method"] = method_name(report.method);
    doc["measure"] = report.measure_digest;
    doc["residuals"] = residual_map_json(report.residuals);
    doc["cross_residuals"] = residual_map_json(report.cross_residuals);
    ojson def = ojson::array();
    for (const auto& [n, equal] : report.definition_a) def.push_back({{"n", n}, {"equal", equal}});
    doc["definition_a"] = def;
    return doc.dump(2) + "\n";
}

std::string render_json(const HoeffdingDecomposition& d) {
    ojson doc;
    doc["type"] = "hoeffding_decomposition";
    doc["n"] = d.n;
    doc["measure"] = d.measure_digest;
    doc["mean"] = to_string(d.mean);
    ojson comps = ojson::array();
    for (const auto& c : d.components) comps.push_back(values_json(c));
    doc["components"] = comps;
    return doc.dump(2) + "\n";
}

std::string render_json(const SampleReport& report) {
    ojson doc;
    doc["type"] = "sample";
    doc["n"] = report.n;
    doc["trials"] = report.trials;
    doc["seed"] = report.seed;
    doc["histogram"] = report.zero_count_histogram;
    if (report.comparison) {
        ojson rows = ojson::array();
        for (const auto& row : *report.comparison)
            rows.push_back({{"j", row.j},
                            {"expected", to_string(row.expected)},
                            {"expected_float", double_json(row.expected_float)},
                            {"frequency", double_json(row.frequency)},
                            {"z", double_json(row.z_score)}});
        doc["comparison"] = rows;
    } else {
        doc["comparison"] = nullptr;
    }
    return doc.dump(2) + "\n";
}

std::string render_json(const Classification& c) {
    ojson doc;
    doc["type"] = "classification";
    if (const auto* t = std::get_if<Triple>(&c.witness))
        doc["witness"] = triple_json(*t);
    else if (const auto* m = std::get_if<MomentWitness>(&c.witness))
        doc["witness"] = {{"moment_order", m->order}};
    else
        doc["witness"] = nullptr;
    doc["classification"] = classification_name(c.kind);
    doc["p"] = c.iid_p ? ojson(to_string(*c.iid_p)) : ojson(nullptr);
    doc["polya"] = c.polya ? ojson{{"alpha", to_string(c.polya->alpha)}, {"beta", to_string(c.polya->beta)}}
                           : ojson(nullptr);
    doc["verified_order"] = c.verified_order;
    doc["checked_n_max"] = c.checked_n_max;
    return doc.dump(2) + "\n";
}

DecomposabilityReport parse_decomposability_report(std::string_view json) {
    const auto doc = parse_document(json);
    expect_type(doc, "decomposability");
    return guarded([&] {
        DecomposabilityReport r;
        r.n_max = doc.at("n_max").get<int>();
        const auto method = parse_method(doc.at("method").get<std::string>());
        const auto verdict = parse_verdict(doc.at("verdict").get<std::string>());
        if (!method || !verdict) throw Error(ErrorCode::ParseError, "unknown method or verdict");
        r.method = *method;
        r.verdict = *verdict;
        r.measure_digest = doc.at("measure").get<std::string>();
        r.residuals = json_residual_map(doc.at("residuals"));
        r.cross_residuals = json_residual_map(doc.at("cross_residuals"));
        for (const auto& row : doc.at("definition_a"))
            r.definition_a[row.at("n").get<int>()] = row.at("equal").get<bool>();
        if (!doc.at("witness").is_null()) r.witness = json_triple(doc.at("witness"));
        if (!doc.at("definition_witness").is_null()) r.definition_witness = doc.at("definition_witness").get<int>();
        return r;
    });
}

HoeffdingDecomposition parse_hoeffding_decomposition(std::string_view json) {
    const auto doc = parse_document(json);
    expect_type(doc, "hoeffding_decomposition");
    return guarded([&] {
        HoeffdingDecomposition d;
        d.n = doc.at("n").get<int>();
        d.measure_digest = doc.at("measure").get<std::string>();
        d.mean = json_rational(doc.at("mean"));
        for (const auto& comp : doc.at("components")) {
            std::vector<Rational> values;
            for (const auto& v : comp) values.push_back(json_rational(v));
            d.components.emplace_back(std::move(values));
        }
        return d;
    });
}

SampleReport parse_sample_report(std::string_view json) {
    const auto doc = parse_document(json);
    expect_type(doc, "sample");
    return guarded([&] {
        SampleReport r;
        r.n = doc.at("n").get<int>();
        r.trials = doc.at("trials").get<std::uint64_t>();
        r.seed = doc.at("seed").get<std::uint64_t>();
        r.zero_count_histogram = doc.at("histogram").get<std::vector<std::uint64_t>>();
        if (!doc.at("comparison").is_null()) {
            std::vector<ComparisonRow> rows;
            for (const auto& row : doc.at("comparison")) {
                ComparisonRow c;
                c.j = row.at("j").get<int>();
                c.expected = json_rational(row.at("expected"));
                c.expected_float = json_double(row.at("expected_float"));
                c.frequency = json_double(row.at("frequency"));
                c.z_score = json_double(row.at("z"));
                rows.push_back(std::move(c));
            }
            r.comparison = std::move(rows);
        }
        return r;
    });
}

Classification parse_classification_report(std::string_view json) {
    const auto doc = parse_document(json);
    expect_type(doc, "classification");
    return guarded([&] {
        Classification c;
        const auto kind = parse_classification(doc.at("classification").get<std::string>());
        if (!kind) throw Error(ErrorCode::ParseError, "unknown classification");
        c.kind = *kind;
        const auto& w = doc.at("witness");
        if (w.is_object() && w.contains("moment_order"))
            c.witness = MomentWitness{w.at("moment_order").get<int>()};
        else if (w.is_object())
            c.witness = json_triple(w);
        if (!doc.at("p").is_null()) c.iid_p = json_rational(doc.at("p"));
        if (!doc.at("polya").is_null())
            c.polya = BetaParameters{json_rational(doc.at("polya").at("alpha")),
                                     json_rational(doc.at("polya").at("beta"))};
        c.verified_order = doc.at("verified_order").get<int>();
        c.checked_n_max = doc.at("checked_n_max").get<int>();
        return c;
    });
}

}  // namespace hoeffding_urn
