#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace surgstat {

enum class ErrorKind {
    PreconditionViolation,
    DomainError,
    DegenerateSample,
    NonConvergence,
    AllFamiliesFailed,
    SampleSizeOutOfRange,
    ZeroVariance,
    ExpectedCountTooSmall,
    EmptySample,
    NegativeTotal,
    DivisionByZero,
    MissingParams,
    FileNotFound,
    MalformedHeader,
    MalformedInput,
    WriteError,
    UnknownFlag,
    MissingInput,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure surfaced by the library carries a kind so that the CLI can
// print a stable, machine-parsable error line.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

inline void require(bool condition, const std::string& message) {
    if (!condition) fail(ErrorKind::PreconditionViolation, message);
}

}  // namespace surgstat
