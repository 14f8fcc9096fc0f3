#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hoeffding_urn {

enum class ErrorCode {
    OrderExceeded,
    DeterministicMeasure,
    IndexRange,
    ArityRange,
    ArityMismatch,
    ParseError,
    InvalidMomentSequence,
    RankDeficient,
    NonpositiveParameter,
    ZeroDenominator,
    NotInS,
    MomentRegion,
    ParameterRange,
    FRange,
    UnsamplableKind,
    TrialsTooFew,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI) can branch on the category without parsing text.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace hoeffding_urn
