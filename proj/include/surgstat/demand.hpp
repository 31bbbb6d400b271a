#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "surgstat/common.hpp"
#include "surgstat/rng.hpp"

namespace surgstat {

/// Elective urgency categories (30/90/365-day targets) plus non-elective.
enum class UrgencyCategory { cat1, cat2, cat3, non_elective };

inline constexpr std::array<UrgencyCategory, 4> kAllCategories = {
    UrgencyCategory::cat1, UrgencyCategory::cat2, UrgencyCategory::cat3, UrgencyCategory::non_elective};

std::string_view to_string(UrgencyCategory c) noexcept;
std::optional<UrgencyCategory> category_from_string(std::string_view s);

/// Target days to surgery; absent for non-elective.
std::optional<int> target_days(UrgencyCategory c) noexcept;
PatientClass patient_class_of(UrgencyCategory c) noexcept;
/// Urgency number 1..3 for elective categories.
std::optional<int> urgency_number(UrgencyCategory c) noexcept;
std::optional<UrgencyCategory> category_from_urgency(int urgency);

enum class SchedulePattern { uniform_all_days, pooled_weekend_monday, monday_spike };

std::string_view to_string(SchedulePattern p) noexcept;

inline constexpr double kDefaultWeekendFraction = 0.1;

/// Expected Poisson requests per day of week (Mon..Sun).
struct RateSchedule {
    std::string specialty;
    UrgencyCategory category = UrgencyCategory::cat1;
    SchedulePattern pattern = SchedulePattern::uniform_all_days;
    std::array<double, 7> rates{};

    double rate(Day d) const noexcept { return rates[index(d)]; }
    double weekly_total() const noexcept;
};

/// Builds a day-of-week schedule that sums to `total`.
///   uniform_all_days       every day total/7
///   pooled_weekend_monday  every day total/7; Sat+Sun+Mon is only pooled when
///                          testing, the generating rate stays uniform
///   monday_spike           Tue-Fri at r = total/7, Sat and Sun at w*r, Monday
///                          takes the remainder total*(3-2w)/7
/// Throws NegativeTotal for total < 0 and DomainError for w outside [0, 1].
RateSchedule schedule_from_weekly_total(std::string specialty, double total, UrgencyCategory category,
                                        SchedulePattern pattern, double weekend_fraction = kDefaultWeekendFraction);

/// The pattern used by default: constant rate for categories 1-2 and
/// non-elective, Monday spike for category 3.
SchedulePattern default_pattern(UrgencyCategory c) noexcept;

/// One Poisson draw for `day`.
std::uint64_t generate_requests(const RateSchedule& schedule, Day day, Rng& rng);

/// Binomial(n, p) as the sum of n Bernoulli trials.
std::uint64_t cancellations(std::uint64_t n_trials, double p, Rng& rng);

/// Per-trial cancellation probabilities.
struct CancellationModel {
    double p_patient_waitlist = 0.0745;   // per listed patient, once per listing
    double p_patient_day_of = 0.0288;     // per scheduled elective patient
    double p_or_breakdown = 0.0054;       // per OR per day
    double p_surgeon_leave = 0.0026;      // per scheduled surgeon per day
    double p_anaesthetist_leave = 0.0006; // per scheduled anaesthetist per day

    /// DomainError unless every field lies in [0, 1].
    void validate() const;
    static CancellationModel none() { return {0.0, 0.0, 0.0, 0.0, 0.0}; }
};

struct CancellationRow {
    std::string description;
    double mean_weekly_count = 0.0;
};

struct WeeklyCancellationTable {
    std::vector<CancellationRow> rows;

    double total() const noexcept;
};

/// Per-OR per-day breakdown probability: breakdown_days / (observation_days * operating_rooms).
double breakdown_day_probability(double breakdown_days, double observation_days, double operating_rooms = 1.0);

/// Operating-room count implied by an observed breakdown-day count and a
/// quoted per-OR-day probability.
double implied_operating_rooms(double breakdown_days, double observation_days, double probability);

}  // namespace surgstat
