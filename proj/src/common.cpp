#include <random>

#include "surgstat/common.hpp"
#include "surgstat/error.hpp"
#include "surgstat/rng.hpp"

namespace surgstat {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::PreconditionViolation: return "PreconditionViolation";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::DegenerateSample: return "DegenerateSample";
        case ErrorKind::NonConvergence: return "NonConvergence";
        case ErrorKind::AllFamiliesFailed: return "AllFamiliesFailed";
        case ErrorKind::SampleSizeOutOfRange: return "SampleSizeOutOfRange";
        case ErrorKind::ZeroVariance: return "ZeroVariance";
        case ErrorKind::ExpectedCountTooSmall: return "ExpectedCountTooSmall";
        case ErrorKind::EmptySample: return "EmptySample";
        case ErrorKind::NegativeTotal: return "NegativeTotal";
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::MissingParams: return "MissingParams";
        case ErrorKind::FileNotFound: return "FileNotFound";
        case ErrorKind::MalformedHeader: return "MalformedHeader";
        case ErrorKind::MalformedInput: return "MalformedInput";
        case ErrorKind::WriteError: return "WriteError";
        case ErrorKind::UnknownFlag: return "UnknownFlag";
        case ErrorKind::MissingInput: return "MissingInput";
    }
    return "Unknown";
}

std::string_view to_string(PatientClass c) noexcept {
    return c == PatientClass::elective ? "elective" : "non_elective";
}

std::optional<PatientClass> patient_class_from_string(std::string_view s) {
    if (s == "elective") return PatientClass::elective;
    if (s == "non_elective" || s == "non-elective") return PatientClass::non_elective;
    return std::nullopt;
}

std::string_view to_string(Day d) noexcept {
    constexpr std::string_view names[] = {"Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"};
    return names[index(d)];
}

std::optional<Day> day_from_string(std::string_view s) {
    for (Day d : kWeek) {
        if (to_string(d) == s) return d;
    }
    return std::nullopt;
}

std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace surgstat
