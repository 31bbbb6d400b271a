#include <catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "surgstat/demand.hpp"
#include "surgstat/error.hpp"
#include "surgstat/fixture.hpp"
#include "surgstat/rng.hpp"

using namespace surgstat;
using Catch::Approx;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an exception");
    return ErrorKind::PreconditionViolation;
}

double binomial_pmf(int n, int k, double p) {
    const double logc = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    return std::exp(logc + k * std::log(p) + (n - k) * std::log1p(-p));
}

}  // namespace

TEST_CASE("urgency categories", "[demand]") {
    CHECK(target_days(UrgencyCategory::cat1) == 30);
    CHECK(target_days(UrgencyCategory::cat2) == 90);
    CHECK(target_days(UrgencyCategory::cat3) == 365);
    CHECK_FALSE(target_days(UrgencyCategory::non_elective));
    CHECK(patient_class_of(UrgencyCategory::cat3) == PatientClass::elective);
    CHECK(patient_class_of(UrgencyCategory::non_elective) == PatientClass::non_elective);
    for (auto c : kAllCategories) CHECK(category_from_string(to_string(c)) == c);
    CHECK(category_from_urgency(2) == UrgencyCategory::cat2);
    CHECK_FALSE(category_from_urgency(4));
}

TEST_CASE("schedules from weekly totals", "[demand]") {
    SECTION("uniform") {
        const auto s = schedule_from_weekly_total("x", 7.0, UrgencyCategory::non_elective,
                                                  SchedulePattern::uniform_all_days);
        for (double r : s.rates) CHECK(r == 1.0);
    }
    SECTION("pooled keeps a uniform generating rate") {
        const auto s = schedule_from_weekly_total("x", 110.64, UrgencyCategory::cat1,
                                                  SchedulePattern::pooled_weekend_monday);
        CHECK(s.weekly_total() == Approx(110.64).epsilon(1e-15));
        for (double r : s.rates) CHECK(r == Approx(110.64 / 7.0).epsilon(1e-15));
    }
    SECTION("Monday spike") {
        const auto s = schedule_from_weekly_total("x", 78.71, UrgencyCategory::cat3, SchedulePattern::monday_spike, 0.1);
        const double r = s.rate(Day::tue);
        for (Day d : {Day::wed, Day::thu, Day::fri}) CHECK(s.rate(d) == r);
        CHECK(s.rate(Day::sat) == Approx(0.1 * r).epsilon(1e-15));
        CHECK(s.rate(Day::sun) == Approx(0.1 * r).epsilon(1e-15));
        CHECK(s.rate(Day::mon) == Approx(78.71 - 4.2 * r).epsilon(1e-12));
        CHECK(s.rate(Day::mon) > r);
        CHECK(std::abs(s.weekly_total() - 78.71) <= 1e-9);
    }
    SECTION("errors") {
        CHECK(kind_of([] {
                  (void)schedule_from_weekly_total("x", -1.0, UrgencyCategory::cat1, SchedulePattern::uniform_all_days);
              }) == ErrorKind::NegativeTotal);
        CHECK(kind_of([] {
                  (void)schedule_from_weekly_total("x", 1.0, UrgencyCategory::cat3, SchedulePattern::monday_spike, 1.5);
              }) == ErrorKind::DomainError);
    }
}

TEST_CASE("fixture schedules sum back to the table", "[demand][property]") {
    const auto& fx = Fixture::builtin();
    REQUIRE(fx.demand.size() == 10);
    for (double w : {0.0, 0.1, 0.5, 1.0}) {
        const auto schedules = fx.demand_schedules(w);
        CHECK(schedules.size() == 40);
        for (const auto& s : schedules) {
            const auto* row = &fx.demand.front();
            for (const auto& r : fx.demand) {
                if (r.specialty == s.specialty) row = &r;
            }
            CHECK(std::abs(s.weekly_total() - row->rate(s.category)) <= 1e-9);
            for (double r : s.rates) CHECK(r >= 0.0);
            CHECK(s.pattern == default_pattern(s.category));
        }
    }
    const auto total = fx.demand_printed_total.value();
    const auto cat1 = schedule_from_weekly_total("all", total.cat1, UrgencyCategory::cat1,
                                                 default_pattern(UrgencyCategory::cat1));
    CHECK(std::abs(cat1.weekly_total() - 110.64) <= 1e-9);
}

TEST_CASE("Poisson request draws", "[demand]") {
    Rng rng(1);
    const auto zero = schedule_from_weekly_total("x", 0.0, UrgencyCategory::cat1, SchedulePattern::uniform_all_days);
    for (int i = 0; i < 1000; ++i) REQUIRE(generate_requests(zero, Day::wed, rng) == 0);

    SECTION("Cardiology non-elective daily rate") {
        const auto s = schedule_from_weekly_total("Cardiology", 3.41, UrgencyCategory::non_elective,
                                                  SchedulePattern::uniform_all_days);
        Rng g(2);
        double total = 0.0;
        for (int i = 0; i < 100000; ++i) total += static_cast<double>(generate_requests(s, Day::tue, g));
        CHECK(total / 100000.0 == Approx(3.41 / 7.0).epsilon(0.01));
    }
    SECTION("Urology weekly total") {
        const auto& fx = Fixture::builtin();
        std::vector<RateSchedule> uro;
        for (const auto& s : fx.demand_schedules()) {
            if (s.specialty == "Urology") uro.push_back(s);
        }
        REQUIRE(uro.size() == 4);
        Rng g(3);
        double total = 0.0;
        for (int w = 0; w < 10000; ++w) {
            for (const auto& s : uro) {
                for (Day d : kWeek) total += static_cast<double>(generate_requests(s, d, g));
            }
        }
        CHECK(total / 10000.0 == Approx(111.69).epsilon(0.005));
    }
    SECTION("CLT bound for every Table 3 cell") {
        // Days cycle Mon..Sun, so the target is the mean daily rate of the cell.
        Rng g(4);
        const int days = 20000;
        for (const auto& s : Fixture::builtin().demand_schedules()) {
            const double rate = s.weekly_total() / 7.0;
            double sum = 0.0;
            for (int i = 0; i < days; ++i) sum += static_cast<double>(generate_requests(s, kWeek[i % 7], g));
            INFO(s.specialty << " " << to_string(s.category));
            CHECK(std::abs(sum / days - rate) <= 3.0 * std::sqrt(rate / days) + 1e-12);
        }
    }
}

TEST_CASE("Binomial cancellations", "[demand]") {
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        CHECK(cancellations(17, 0.0, rng) == 0);
        CHECK(cancellations(17, 1.0, rng) == 17);
        CHECK(cancellations(17, 0.3, rng) <= 17);
    }
    SECTION("day-of-surgery mean") {
        Rng g(6);
        double total = 0.0;
        for (int i = 0; i < 100000; ++i) total += static_cast<double>(cancellations(100, 0.0288, g));
        CHECK(total / 100000.0 == Approx(2.88).epsilon(0.02));
    }
    SECTION("matches the exact pmf") {
        Rng g(7);
        std::array<double, 6> freq{};
        const int draws = 1000000;
        for (int i = 0; i < draws; ++i) freq[cancellations(5, 0.5, g)] += 1.0;
        double tv = 0.0;
        for (int k = 0; k <= 5; ++k) tv += std::abs(freq[k] / draws - binomial_pmf(5, k, 0.5));
        CHECK(0.5 * tv <= 0.01);
    }
}

TEST_CASE("cancellation model", "[demand]") {
    const CancellationModel m;
    CHECK(m.p_patient_waitlist == 0.0745);
    CHECK(m.p_patient_day_of == 0.0288);
    CHECK(m.p_or_breakdown == 0.0054);
    CHECK(m.p_surgeon_leave == 0.0026);
    CHECK(m.p_anaesthetist_leave == 0.0006);
    m.validate();
    CancellationModel bad;
    bad.p_or_breakdown = 1.2;
    CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::DomainError);
}

TEST_CASE("Table 4 fixture total", "[demand]") {
    const auto& fx = Fixture::builtin();
    CHECK(fx.cancellations.rows.size() == 30);
    CHECK(std::abs(fx.cancellations.total() - 131.31) <= 0.01 + 1e-9);
    CHECK(fx.cancellations_printed_total == 131.31);
}

TEST_CASE("breakdown probability", "[demand]") {
    const auto& b = Fixture::builtin().breakdowns;
    const double ors = implied_operating_rooms(b.breakdown_days, b.observation_days, b.quoted_probability);
    CHECK(ors == Approx(19.6).margin(0.05));
    const double p = breakdown_day_probability(b.breakdown_days, b.observation_days, std::round(ors));
    CHECK(p == Approx(0.0054).margin(1.5e-4));
    CHECK(breakdown_day_probability(0, 274) == 0.0);
    CHECK(breakdown_day_probability(274, 274, 1) == 1.0);
    CHECK(kind_of([] { (void)breakdown_day_probability(1, 0); }) == ErrorKind::DivisionByZero);
    CHECK(kind_of([] { (void)breakdown_day_probability(1, 10, 0); }) == ErrorKind::DivisionByZero);
    CHECK_THROWS_AS(breakdown_day_probability(11, 10), Error);
}
