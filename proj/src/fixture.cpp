#include "surgstat/fixture.hpp"

#include <fstream>
#include <sstream>

#include "surgstat/csv.hpp"
#include "surgstat/error.hpp"

namespace surgstat {

double DemandRow::rate(UrgencyCategory c) const noexcept {
    switch (c) {
        case UrgencyCategory::cat1: return cat1;
        case UrgencyCategory::cat2: return cat2;
        case UrgencyCategory::cat3: return cat3;
        case UrgencyCategory::non_elective: return non_elective;
    }
    return 0.0;
}

namespace {

void expect_fields(const csv::Row& row, std::size_t n) {
    if (row.size() != n) {
        fail(ErrorKind::MalformedInput, "fixture table " + row.front() + " row '" + (row.size() > 1 ? row[1] : "") +
                                            "' has " + std::to_string(row.size()) + " fields, expected " +
                                            std::to_string(n));
    }
}

}  // namespace

Fixture Fixture::parse(std::istream& in) {
    Fixture fx;
    for (const auto& row : csv::read_all(in)) {
        if (row.size() < 2) fail(ErrorKind::MalformedInput, "fixture row has fewer than two fields");
        const std::string& table = row[0];
        if (table == "1" || table == "2") {
            expect_fields(row, 8);
            DurationRow r;
            r.specialty = row[1];
            r.patient_class = table == "1" ? PatientClass::elective : PatientClass::non_elective;
            r.count = static_cast<std::size_t>(csv::parse_double(row[2]));
            if (row[3] != "NA") r.p_value = csv::parse_double(row[3]);
            r.mean = csv::parse_double(row[4]);
            r.variance = csv::parse_double(row[5]);
            r.params = LognormalParams(csv::parse_double(row[6]), csv::parse_double(row[7]));
            fx.durations.push_back(std::move(r));
        } else if (table == "3") {
            expect_fields(row, 8);
            DemandRow r{row[1],
                        csv::parse_double(row[2]),
                        csv::parse_double(row[3]),
                        csv::parse_double(row[4]),
                        csv::parse_double(row[5]),
                        csv::parse_double(row[6]),
                        csv::parse_double(row[7])};
            if (r.specialty == "Total Demand") {
                fx.demand_printed_total = std::move(r);
            } else {
                fx.demand.push_back(std::move(r));
            }
        } else if (table == "4") {
            expect_fields(row, 3);
            const double count = csv::parse_double(row[2]);
            if (row[1] == "Total") {
                fx.cancellations_printed_total = count;
            } else {
                fx.cancellations.rows.push_back({row[1], count});
            }
        } else {
            fail(ErrorKind::MalformedInput, "unknown fixture table '" + table + "'");
        }
    }
    return fx;
}

const Fixture& Fixture::builtin() {
    static const Fixture fx = [] {
        std::istringstream in{std::string(builtin_fixture_text())};
        return parse(in);
    }();
    return fx;
}

Fixture Fixture::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::FileNotFound, "cannot open fixture '" + path.string() + "'");
    return parse(in);
}

std::vector<DurationRow> Fixture::rows(PatientClass c) const {
    std::vector<DurationRow> out;
    for (const auto& r : durations) {
        if (r.patient_class == c) out.push_back(r);
    }
    return out;
}

const DurationRow* Fixture::find(std::string_view specialty, PatientClass c) const {
    for (const auto& r : durations) {
        if (r.patient_class == c && r.specialty == specialty) return &r;
    }
    return nullptr;
}

std::vector<RateSchedule> Fixture::demand_schedules(double weekend_fraction) const {
    std::vector<RateSchedule> out;
    for (const auto& row : demand) {
        for (auto c : kAllCategories) {
            out.push_back(
                schedule_from_weekly_total(row.specialty, row.rate(c), c, default_pattern(c), weekend_fraction));
        }
    }
    return out;
}

}  // namespace surgstat
