#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "surgstat/common.hpp"
#include "surgstat/demand.hpp"
#include "surgstat/distfit.hpp"

namespace surgstat {

/// One row of the duration tables (table 1 elective, table 2 non-elective).
struct DurationRow {
    std::string specialty;
    PatientClass patient_class = PatientClass::elective;
    std::size_t count = 0;
    std::optional<double> p_value;  // NA when the test could not be run
    double mean = 0.0;
    double variance = 0.0;
    LognormalParams params;
};

/// One row of the weekly request table.
struct DemandRow {
    std::string specialty;
    double cat1 = 0.0;
    double cat2 = 0.0;
    double cat3 = 0.0;
    double elective_total = 0.0;
    double non_elective = 0.0;
    double total_demand = 0.0;

    double rate(UrgencyCategory c) const noexcept;
};

/// Case-study breakdown evidence: equipment-failure cancellations on 29 days
/// across a nine-month window.
struct BreakdownEvidence {
    double breakdown_days = 29.0;
    double observation_days = 274.0;
    double quoted_probability = 0.0054;
};

struct Fixture {
    std::vector<DurationRow> durations;
    std::vector<DemandRow> demand;
    std::optional<DemandRow> demand_printed_total;
    WeeklyCancellationTable cancellations;
    std::optional<double> cancellations_printed_total;
    BreakdownEvidence breakdowns;

    /// The tables compiled into the library.
    static const Fixture& builtin();
    static Fixture load(const std::filesystem::path& path);
    static Fixture parse(std::istream& in);

    std::vector<DurationRow> rows(PatientClass c) const;
    const DurationRow* find(std::string_view specialty, PatientClass c) const;

    /// One schedule per demand-table specialty and category (zero cells
    /// included), using the default day-of-week pattern.
    std::vector<RateSchedule> demand_schedules(double weekend_fraction = kDefaultWeekendFraction) const;
};

/// Raw text of the compiled-in fixture.
std::string_view builtin_fixture_text() noexcept;

}  // namespace surgstat
