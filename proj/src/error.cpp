#include "hoeffding_urn/error.hpp"

namespace hoeffding_urn {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::OrderExceeded: return "ORDER_EXCEEDED";
        case ErrorCode::DeterministicMeasure: return "DETERMINISTIC_MEASURE";
        case ErrorCode::IndexRange: return "INDEX_RANGE";
        case ErrorCode::ArityRange: return "ARITY_RANGE";
        case ErrorCode::ArityMismatch: return "ARITY_MISMATCH";
        case ErrorCode::ParseError: return "PARSE_ERROR";
        case ErrorCode::InvalidMomentSequence: return "INVALID_MOMENT_SEQUENCE";
        case ErrorCode::RankDeficient: return "RANK_DEFICIENT";
        case ErrorCode::NonpositiveParameter: return "NONPOSITIVE_PARAMETER";
        case ErrorCode::ZeroDenominator: return "ZERO_DENOMINATOR";
        case ErrorCode::NotInS: return "NOT_IN_S";
        case ErrorCode::MomentRegion: return "MOMENT_REGION";
        case ErrorCode::ParameterRange: return "PARAMETER_RANGE";
        case ErrorCode::FRange: return "F_RANGE";
        case ErrorCode::UnsamplableKind: return "UNSAMPLABLE_KIND";
        case ErrorCode::TrialsTooFew: return "TRIALS_TOO_FEW";
    }
    return "UNKNOWN";
}

}  // namespace hoeffding_urn
