// Python bindings. Rationals cross the boundary as "p/q" strings and measures,
// statistics and urns as the same JSON documents the CLI reads; the Python
// package converts both ends to Fraction and dict.
#include "hoeffding_urn/error.hpp"
#include "hoeffding_urn/hoeffding.hpp"
#include "hoeffding_urn/measure.hpp"
#include "hoeffding_urn/moment_dynamics.hpp"
#include "hoeffding_urn/report.hpp"
#include "hoeffding_urn/urn.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace hoeffding_urn;

namespace {

std::vector<std::string> strings(const std::vector<Rational>& values) {
    std::vector<std::string> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(to_string(v));
    return out;
}

std::optional<CheckMethod> method_or_throw(const std::string& name) {
    const auto m = parse_method(name);
    if (!m) throw Error(ErrorCode::ParseError, "unknown method '" + name + "'");
    return m;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact decomposability checks for exchangeable binary sequences";

    static py::exception<Error> error(m, "HoeffdingUrnError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = py::handle(error.ptr())(e.what());
            exc.attr("code") = std::string(error_code_name(e.code()));
            PyErr_SetObject(error.ptr(), exc.ptr());
        }
    });

    m.def("describe", [](const std::string& measure) { return parse_measure_spec(measure).describe(); });

    m.def("moments", [](const std::string& measure, int max_n) {
        const auto mu = parse_measure_spec(measure);
        std::vector<Rational> out;
        for (int n = 0; n <= max_n; ++n) out.push_back(moment(mu, n));
        return strings(out);
    });

    m.def("config_probability", [](const std::string& measure, int n, int j) {
        return to_string(config_probability(parse_measure_spec(measure), {n, j}));
    });

    m.def("canonical_kernel", [](const std::string& measure, int n) {
        return strings(canonical_degenerate_kernel(parse_measure_spec(measure), n).values());
    });

    m.def("project", [](const std::string& measure, const std::string& statistic) {
        return render_json(hoeffding_projection(parse_statistic(statistic), parse_measure_spec(measure)));
    });

    m.def("prop1_residual", [](const std::string& measure, int n, int u, int z) {
        return to_string(prop1_residual(parse_measure_spec(measure), n, u, z));
    });
    m.def("weak_independence_residual", [](const std::string& measure, int n, int u, int z) {
        return to_string(weak_independence_residual(parse_measure_spec(measure), n, u, z));
    });
    m.def("definition_a", [](const std::string& measure, int n) {
        return definitionA_check(parse_measure_spec(measure), n);
    });

    m.def(
        "check",
        [](const std::string& measure, int n_max, const std::string& method) {
            return render_json(check_decomposable(parse_measure_spec(measure), n_max, *method_or_throw(method)));
        },
        py::arg("measure"), py::arg("n_max"), py::arg("method") = "all");

    m.def("classify", [](const std::string& measure, int n_max) {
        return render_json(classify(parse_measure_spec(measure), n_max));
    });

    m.def("recover_beta", [](const std::string& c1, const std::string& c2) {
        const auto p = recover_beta(parse_rational(c1), parse_rational(c2));
        return std::make_pair(to_string(p.alpha), to_string(p.beta));
    });

    m.def("moment_recursion_residual", [](const std::string& measure, int n) {
        return to_string(moment_recursion_residual(parse_measure_spec(measure), n));
    });

    m.def("next_moment", [](const std::string& x, const std::string& y, const std::string& z) {
        return to_string(next_moment(parse_rational(x), parse_rational(y), parse_rational(z)));
    });

    m.def("simulate_measure", [](const std::string& measure, int n, std::uint64_t trials, std::uint64_t seed) {
        return render_json(compare_exact_empirical(parse_measure_spec(measure), n, trials, seed));
    });
    m.def("simulate_urn", [](const std::string& urn, int n, std::uint64_t trials, std::uint64_t seed) {
        return render_json(simulate_urn(parse_urn_spec(urn), n, trials, seed));
    });
}
