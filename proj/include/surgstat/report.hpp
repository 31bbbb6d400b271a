#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "surgstat/demand.hpp"
#include "surgstat/distfit.hpp"
#include "surgstat/fixture.hpp"
#include "surgstat/records.hpp"

namespace surgstat {

inline constexpr std::array<std::string_view, 7> kDurationColumns = {"Specialty", "Count", "p-val", "Mean",
                                                                     "Variance",  "μ",     "σ^2"};
inline constexpr std::array<std::string_view, 7> kDemandColumns = {
    "Specialty", "Cat 1", "Cat 2", "Cat 3", "Elective Total", "Non-Electives", "Total Demand"};
inline constexpr std::array<std::string_view, 2> kCancellationColumns = {"Cancellation Description", "Count"};

/// One row of a duration table: lognormal fit, its implied mean and
/// variance, and the normality p-value of the log durations (absent when
/// the test cannot run).
struct DurationSummary {
    std::string specialty;
    std::size_t count = 0;
    std::optional<double> p_value;
    double mean = 0.0;
    double variance = 0.0;
    double mu = 0.0;
    double sigma2 = 0.0;
};

DurationSummary summarize_durations(const DurationSample& sample);

/// Weekly request rates per specialty and category from records spanning
/// `weeks` weeks (only requests that reached the records are counted).
std::vector<DemandRow> demand_from_records(std::span<const SurgicalRecord> records, double weeks);

/// Mean weekly count of each cancellation code.
WeeklyCancellationTable cancellations_from_records(std::span<const SurgicalRecord> records, double weeks);

/// Tables are written with the printed precision (3 decimals, 2 for the
/// demand and cancellation tables) or, when `rounded` is false, with the
/// shortest exact representation of every value.
void write_duration_table(std::ostream& out, std::span<const DurationSummary> rows, bool rounded = true);
void write_demand_table(std::ostream& out, std::span<const DemandRow> rows, bool rounded = true);
void write_cancellation_table(std::ostream& out, const WeeklyCancellationTable& table, bool rounded = true);

/// Reads back an unrounded duration table.
std::vector<DurationSummary> read_duration_table(std::istream& in);

struct ReportInputs {
    std::vector<DurationSummary> elective;
    std::vector<DurationSummary> non_elective;
    std::vector<DemandRow> demand;
    WeeklyCancellationTable cancellations;
};

/// Writes table1..table4 CSVs plus *_unrounded.csv sidecars into `dir`
/// (created if needed) and returns the paths written. Throws WriteError.
std::vector<std::filesystem::path> report_tables(const ReportInputs& inputs, const std::filesystem::path& dir);

}  // namespace surgstat
