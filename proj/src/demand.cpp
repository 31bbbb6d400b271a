#include "surgstat/demand.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include "surgstat/error.hpp"

namespace surgstat {

std::string_view to_string(UrgencyCategory c) noexcept {
    switch (c) {
        case UrgencyCategory::cat1: return "cat1";
        case UrgencyCategory::cat2: return "cat2";
        case UrgencyCategory::cat3: return "cat3";
        case UrgencyCategory::non_elective: return "non_elective";
    }
    return "unknown";
}

std::optional<UrgencyCategory> category_from_string(std::string_view s) {
    for (auto c : kAllCategories) {
        if (to_string(c) == s) return c;
    }
    return std::nullopt;
}

std::optional<int> target_days(UrgencyCategory c) noexcept {
    switch (c) {
        case UrgencyCategory::cat1: return 30;
        case UrgencyCategory::cat2: return 90;
        case UrgencyCategory::cat3: return 365;
        case UrgencyCategory::non_elective: return std::nullopt;
    }
    return std::nullopt;
}

PatientClass patient_class_of(UrgencyCategory c) noexcept {
    return c == UrgencyCategory::non_elective ? PatientClass::non_elective : PatientClass::elective;
}

std::optional<int> urgency_number(UrgencyCategory c) noexcept {
    if (c == UrgencyCategory::non_elective) return std::nullopt;
    return static_cast<int>(c) + 1;
}

std::optional<UrgencyCategory> category_from_urgency(int urgency) {
    if (urgency < 1 || urgency > 3) return std::nullopt;
    return static_cast<UrgencyCategory>(urgency - 1);
}

std::string_view to_string(SchedulePattern p) noexcept {
    switch (p) {
        case SchedulePattern::uniform_all_days: return "uniform_all_days";
        case SchedulePattern::pooled_weekend_monday: return "pooled_weekend_monday";
        case SchedulePattern::monday_spike: return "monday_spike";
    }
    return "unknown";
}

double RateSchedule::weekly_total() const noexcept { return std::accumulate(rates.begin(), rates.end(), 0.0); }

RateSchedule schedule_from_weekly_total(std::string specialty, double total, UrgencyCategory category,
                                        SchedulePattern pattern, double weekend_fraction) {
    if (!std::isfinite(total) || total < 0.0) {
        fail(ErrorKind::NegativeTotal, "weekly total must be a nonnegative number");
    }
    RateSchedule s;
    s.specialty = std::move(specialty);
    s.category = category;
    s.pattern = pattern;
    const double daily = total / 7.0;

    if (pattern != SchedulePattern::monday_spike) {
        s.rates.fill(daily);
        // Put the rounding residue on Monday so the week sums back to total.
        s.rates[index(Day::mon)] = total - 6.0 * daily;
        return s;
    }
    if (!(weekend_fraction >= 0.0 && weekend_fraction <= 1.0)) {
        fail(ErrorKind::DomainError, "weekend fraction must lie in [0, 1]");
    }
    for (Day d : {Day::tue, Day::wed, Day::thu, Day::fri}) s.rates[index(d)] = daily;
    s.rates[index(Day::sat)] = weekend_fraction * daily;
    s.rates[index(Day::sun)] = weekend_fraction * daily;
    s.rates[index(Day::mon)] = total - (4.0 + 2.0 * weekend_fraction) * daily;
    if (s.rates[index(Day::mon)] < 0.0) s.rates[index(Day::mon)] = 0.0;
    return s;
}

SchedulePattern default_pattern(UrgencyCategory c) noexcept {
    switch (c) {
        case UrgencyCategory::cat1:
        case UrgencyCategory::cat2: return SchedulePattern::pooled_weekend_monday;
        case UrgencyCategory::cat3: return SchedulePattern::monday_spike;
        case UrgencyCategory::non_elective: return SchedulePattern::uniform_all_days;
    }
    return SchedulePattern::uniform_all_days;
}

std::uint64_t generate_requests(const RateSchedule& schedule, Day day, Rng& rng) {
    const double rate = schedule.rate(day);
    if (!(rate > 0.0)) return 0;
    std::poisson_distribution<long long> poisson(rate);
    return static_cast<std::uint64_t>(poisson(rng));
}

std::uint64_t cancellations(std::uint64_t n_trials, double p, Rng& rng) {
    require(p >= 0.0 && p <= 1.0, "cancellation probability must lie in [0, 1]");
    if (p == 0.0) return 0;
    if (p == 1.0) return n_trials;
    std::uint64_t count = 0;
    for (std::uint64_t i = 0; i < n_trials; ++i) count += rng.bernoulli(p) ? 1 : 0;
    return count;
}

void CancellationModel::validate() const {
    for (double p : {p_patient_waitlist, p_patient_day_of, p_or_breakdown, p_surgeon_leave, p_anaesthetist_leave}) {
        if (!(p >= 0.0 && p <= 1.0)) fail(ErrorKind::DomainError, "cancellation probabilities must lie in [0, 1]");
    }
}

double WeeklyCancellationTable::total() const noexcept {
    double t = 0.0;
    for (const auto& r : rows) t += r.mean_weekly_count;
    return t;
}

double breakdown_day_probability(double breakdown_days, double observation_days, double operating_rooms) {
    if (!(observation_days > 0.0) || !(operating_rooms > 0.0)) {
        fail(ErrorKind::DivisionByZero, "observation days and operating rooms must be positive");
    }
    require(breakdown_days >= 0.0 && breakdown_days <= observation_days,
            "breakdown days must lie in [0, observation days]");
    return breakdown_days / (observation_days * operating_rooms);
}

double implied_operating_rooms(double breakdown_days, double observation_days, double probability) {
    if (!(observation_days > 0.0) || !(probability > 0.0)) {
        fail(ErrorKind::DivisionByZero, "observation days and probability must be positive");
    }
    return breakdown_days / (observation_days * probability);
}

}  // namespace surgstat
