#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace champrec {

enum class ErrorCode {
    EmptyTable,
    MissingColumn,
    SourceUnavailable,
    NegativeCount,
    DuplicateChampion,
    NegativeInput,
    EmptyInput,
    MissingBaseline,
    InvalidCounts,
    EmptyHistory,
    TooFewPoints,
    InvalidWeights,
    InvalidArgument,
    HistoryTooShort,
    DegenerateLabels,
    InsufficientData,
    PlayerNotFound,
    Internal,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the engine carries a machine-readable code so the
/// CLI and HTTP layers can map it to exit codes and status codes.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace champrec
