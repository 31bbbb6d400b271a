#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "surgstat/common.hpp"
#include "surgstat/demand.hpp"
#include "surgstat/distfit.hpp"
#include "surgstat/fixture.hpp"
#include "surgstat/records.hpp"
#include "surgstat/resample.hpp"

namespace surgstat {

struct Block {
    std::string specialty;
    Day day = Day::mon;
    double length_hours = kFullDayHours;
    PatientClass patient_class = PatientClass::elective;
    std::size_t n_assigned = 0;
    std::size_t n_surgeons = 1;
    std::size_t n_anaesthetists = 1;
    std::optional<std::size_t> operating_room;  // round-robin by day when absent
};

struct MasterSchedule {
    std::vector<Block> blocks;
    std::size_t n_operating_rooms = 1;

    void validate() const;
    /// Operating room of each block: the explicit one, or the next room in
    /// round-robin order among that day's unassigned blocks.
    std::vector<std::size_t> operating_rooms() const;
};

/// Lognormal duration parameters keyed by specialty and patient class.
class DurationTable {
public:
    void set(std::string specialty, PatientClass c, LognormalParams params);
    const LognormalParams* find(const std::string& specialty, PatientClass c) const;
    /// Throws MissingParams when absent.
    const LognormalParams& at(const std::string& specialty, PatientClass c) const;
    std::size_t size() const noexcept { return table_.size(); }
    const auto& entries() const noexcept { return table_; }

    static DurationTable from_fixture(const Fixture& fx);

private:
    std::map<std::pair<std::string, PatientClass>, LognormalParams> table_;
};

enum class CancellationCause { waitlist, patient_day_of, or_breakdown, surgeon_leave, anaesthetist_leave };

inline constexpr std::array<CancellationCause, 5> kAllCauses = {
    CancellationCause::waitlist, CancellationCause::patient_day_of, CancellationCause::or_breakdown,
    CancellationCause::surgeon_leave, CancellationCause::anaesthetist_leave};

std::string_view to_string(CancellationCause c) noexcept;

struct SimOutcome {
    std::vector<double> overtime_probability_per_block;
    double expected_overtime_hours = 0.0;  // per simulated week, all blocks
    std::map<std::string, double> expected_cancellations_by_cause;
    std::map<std::string, double> unmet_demand_by_specialty;
    std::size_t replicates = 0;
    std::uint64_t seed = 0;

    bool operator==(const SimOutcome&) const = default;
};

struct SimOptions {
    std::size_t replicates = kDefaultReplicates;
    std::uint64_t seed = 0;
    Parallelism parallelism;
};

/// Monte Carlo evaluation of one week of a master schedule. Per replicate:
/// Poisson requests per schedule and day with waitlist cancellations for
/// electives; OR breakdowns per room-day cancel that room's blocks; surgeon and
/// anaesthetist leave cancel the staff member's block; day-of cancellations
/// thin the assigned electives; surviving patients draw lognormal durations
/// and overtime is max(0, total - block length). Unmet demand is surviving
/// requests minus completed surgeries for the specialty, floored at zero.
SimOutcome simulate_week(const MasterSchedule& schedule, const DurationTable& durations,
                         std::span<const RateSchedule> rate_schedules, const CancellationModel& cancel_model,
                         const SimOptions& options = {});

inline const std::string kDayOfSurgeryCode = "Failed to attend – day of surgery";

struct GenerationTally {
    std::string specialty;
    UrgencyCategory category = UrgencyCategory::cat1;
    std::size_t week = 0;
    std::uint64_t requested = 0;
    std::uint64_t waitlist_cancelled = 0;
    std::uint64_t emitted = 0;
};

struct SyntheticDataset {
    std::vector<SurgicalRecord> records;
    std::vector<GenerationTally> tallies;  // one per schedule and week
};

struct GenerateOptions {
    std::size_t weeks = 1;
    std::uint64_t seed = 0;
    Date start = Date{std::chrono::year{2016} / std::chrono::January / 4};  // a Monday
};

/// Synthetic surgical records: Poisson requests per rate schedule and day,
/// electives removed from the list with the waitlist probability (not
/// emitted) and otherwise booked within their urgency target, where they may
/// cancel on the day; non-electives are operated within a day. Completed
/// records carry a lognormal duration for their specialty and class.
SyntheticDataset generate_dataset(const DurationTable& durations, std::span<const RateSchedule> rate_schedules,
                                  const CancellationModel& cancel_model, const GenerateOptions& options);

/// Duration parameters plus request schedules for a synthetic hospital
/// whose specialties are the duration-table rows. Weekly elective and
/// non-elective request totals from the demand table are apportioned across
/// rows by observation count; elective rates are split across urgency
/// categories in the demand table's overall proportions.
struct SyntheticWorld {
    DurationTable durations;
    std::vector<RateSchedule> schedules;
};

SyntheticWorld synthetic_world(const Fixture& fx, double weekend_fraction = kDefaultWeekendFraction);

struct CapacityComparison {
    CapacityResult bootstrap;
    CapacityResult approx;
    bool agree = false;
};

CapacityComparison compare_capacity_methods(const CapacitySource& source, double block_hours,
                                            const CapacityOptions& options = {}, std::string specialty = "");

}  // namespace surgstat
