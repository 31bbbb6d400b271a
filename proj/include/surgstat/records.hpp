#pragma once

#include <array>
#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "surgstat/common.hpp"
#include "surgstat/distfit.hpp"

namespace surgstat {

using Date = std::chrono::sys_days;

/// ISO-8601 calendar date (YYYY-MM-DD).
std::optional<Date> parse_date(std::string_view text);
std::string format_date(Date d);
Day day_of_week(Date d);

struct SurgicalRecord {
    std::string record_id;
    std::string specialty;
    PatientClass patient_class = PatientClass::elective;
    std::optional<int> urgency;  // 1..3, electives only
    Date request_date{};
    std::optional<Date> surgery_date;
    std::optional<double> duration_hours;
    bool cancelled = false;
    std::optional<std::string> cancellation_code;

    bool operator==(const SurgicalRecord&) const = default;
};

inline constexpr std::array<std::string_view, 9> kRecordColumns = {
    "record_id",    "specialty",      "patient_class", "urgency",          "request_date",
    "surgery_date", "duration_hours", "cancelled",     "cancellation_code"};

/// Reason the record breaks a schema invariant, or nullopt when it is valid.
std::optional<std::string> record_violation(const SurgicalRecord& r);

struct IngestReport {
    std::size_t input_rows = 0;
    std::size_t emitted = 0;
    std::map<std::string, std::size_t> dropped_by_reason;

    std::size_t dropped() const noexcept;
};

struct IngestResult {
    std::vector<SurgicalRecord> records;
    IngestReport report;
};

/// Parses a records CSV. Rows that fail to parse or break an invariant are
/// dropped and counted; duplicate record ids keep the first occurrence.
/// Throws FileNotFound or MalformedHeader.
IngestResult ingest(const std::filesystem::path& path);
IngestResult ingest(std::istream& in);

void write_records(std::ostream& out, std::span<const SurgicalRecord> records);
void write_records(const std::filesystem::path& path, std::span<const SurgicalRecord> records);

/// Completed (non-cancelled) durations grouped by specialty and class, with
/// nonpositive durations dropped and counted. Ordered by class, then name.
std::vector<CleanedSample> duration_samples(std::span<const SurgicalRecord> records);

}  // namespace surgstat
