#pragma once

#include "hoeffding_urn/hoeffding.hpp"
#include "hoeffding_urn/moment_dynamics.hpp"
#include "hoeffding_urn/urn.hpp"

#include <string>
#include <string_view>

namespace hoeffding_urn {

enum class Format { Tsv, Json };

std::optional<Format> parse_format(std::string_view text);

// Shortest round-trip text for a double ("inf"/"-inf"/"nan" for non-finite).
std::string format_double(double x);

/// Witness line used first in failing TSV output, e.g.
/// "witness n=2 u=2 z=0 residual=-3/56".
std::string witness_line(const DecomposabilityReport& report);
std::string witness_line(const Classification& c);

// TSV layouts:
//   DecomposabilityReport: [witness line] then "n u z prop1 weakindep" rows,
//     then "definition_n equal" rows when that route ran. Missing values "NA".
//   HoeffdingDecomposition: "component z=0..z=n" rows, then "sum" and
//     "inner(i,j)" footer rows.
//   SampleReport: "j count" or "j count expected expected_float frequency z".
//   Classification: [witness line] then key/value rows.
std::string render_tsv(const DecomposabilityReport& report);
std::string render_tsv(const HoeffdingDecomposition& decomposition, const DeFinettiMeasure& measure);
std::string render_tsv(const SampleReport& report);
std::string render_tsv(const Classification& c);

// Inner products are only needed for the TSV footer, so JSON skips the measure.
std::string render_json(const DecomposabilityReport& report);
std::string render_json(const HoeffdingDecomposition& decomposition);
std::string render_json(const SampleReport& report);
std::string render_json(const Classification& c);

DecomposabilityReport parse_decomposability_report(std::string_view json);
HoeffdingDecomposition parse_hoeffding_decomposition(std::string_view json);
SampleReport parse_sample_report(std::string_view json);
Classification parse_classification_report(std::string_view json);

}  // namespace hoeffding_urn
