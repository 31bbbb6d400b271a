#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "surgstat/config.hpp"
#include "surgstat/error.hpp"
#include "surgstat/fixture.hpp"
#include "surgstat/records.hpp"
#include "surgstat/report.hpp"
#include "surgstat/rng.hpp"
#include "surgstat/sim.hpp"

using namespace surgstat;
namespace fs = std::filesystem;

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

const std::string kHeader =
    "record_id,specialty,patient_class,urgency,request_date,surgery_date,duration_hours,cancelled,cancellation_code\n";

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / "surgstat_tests";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("dates", "[records]") {
    const auto d = parse_date("2016-02-29");
    REQUIRE(d);
    CHECK(format_date(*d) == "2016-02-29");
    CHECK(day_of_week(*d) == Day::mon);
    CHECK_FALSE(parse_date("2015-02-29"));
    CHECK_FALSE(parse_date("2016-2-3"));
    CHECK_FALSE(parse_date("2016-02-03x"));
}

TEST_CASE("ingest drops bad rows and counts them", "[records]") {
    std::istringstream in(kHeader +
                          "R1,Urology,elective,2,2016-01-04,2016-01-20,1.5,false,\n"
                          "R1,Urology,elective,2,2016-01-04,2016-01-21,1.7,false,\n"
                          "R2,Urology,elective,1,2016-01-04,2016-01-05,-1,false,\n"
                          "R3,Urology,non_elective,,2016-01-04,2016-01-04,0.8,false,\n"
                          "R4,Urology,elective,1,2016-01-10,2016-01-05,1.0,false,\n"
                          "R5,Urology,non_elective,2,2016-01-04,2016-01-04,1.0,false,\n"
                          "R6,Urology,elective,3,2016-01-04,,,true,Failed to attend – day of surgery\n"
                          "R7,Urology,elective,3,2016-01-04\n");
    const auto result = ingest(in);
    const auto& rep = result.report;
    CHECK(rep.input_rows == 8);
    CHECK(rep.emitted == 3);
    CHECK(rep.dropped() + rep.emitted == rep.input_rows);
    CHECK(rep.dropped_by_reason.at("duplicate_record_id") == 1);
    CHECK(rep.dropped_by_reason.at("nonpositive_duration") == 1);
    CHECK(rep.dropped_by_reason.at("date_order") == 1);
    CHECK(rep.dropped_by_reason.at("urgency_class_mismatch") == 1);
    CHECK(rep.dropped_by_reason.at("wrong_field_count") == 1);
    REQUIRE(result.records.size() == 3);
    CHECK(result.records[0].record_id == "R1");
    CHECK(result.records[0].duration_hours == 1.5);
    CHECK(result.records[2].cancelled);
    CHECK_FALSE(result.records[2].duration_hours);
}

TEST_CASE("ingest header and file errors", "[records]") {
    std::istringstream bad("id,specialty\n");
    CHECK(kind_of([&] { (void)ingest(bad); }) == ErrorKind::MalformedHeader);
    std::istringstream empty("");
    CHECK(kind_of([&] { (void)ingest(empty); }) == ErrorKind::MalformedHeader);
    CHECK(kind_of([] { (void)ingest(fs::path("/nonexistent/records.csv")); }) == ErrorKind::FileNotFound);
}

TEST_CASE("records round-trip through CSV", "[records][property]") {
    const auto world = synthetic_world(Fixture::builtin());
    const auto data = generate_dataset(world.durations, world.schedules, CancellationModel{}, {.weeks = 3, .seed = 11});
    REQUIRE_FALSE(data.records.empty());
    const auto path = scratch("roundtrip.csv");
    write_records(path, data.records);
    const auto back = ingest(path);
    CHECK(back.report.dropped() == 0);
    CHECK(back.report.input_rows == data.records.size());
    CHECK(back.records == data.records);
}

TEST_CASE("duration samples group by class and specialty", "[records]") {
    std::istringstream in(kHeader +
                          "A,Urology,elective,1,2016-01-04,2016-01-05,1.0,false,\n"
                          "B,Urology,elective,2,2016-01-04,2016-01-05,2.0,false,\n"
                          "C,Urology,non_elective,,2016-01-04,2016-01-04,3.0,false,\n"
                          "D,Cardiology,elective,3,2016-01-04,,,true,Other\n");
    const auto r = ingest(in);
    const auto samples = duration_samples(r.records);
    REQUIRE(samples.size() == 2);
    REQUIRE(samples[0].sample);
    CHECK(samples[0].sample->patient_class() == PatientClass::elective);
    CHECK(samples[0].sample->size() == 2);
    CHECK(samples[1].sample->size() == 1);
}

TEST_CASE("run configuration", "[config]") {
    const auto def = RunConfig::from_json("{}");
    CHECK(def.min_obs == 25);
    CHECK(def.bootstrap_replicates == 10000);
    CHECK(def.alpha == 0.05);
    CHECK(def.block_hours.half_day == 4.0);
    CHECK(def.block_hours.full_day == 8.0);
    CHECK_FALSE(def.seed);

    const auto c = RunConfig::from_json(R"({"min_obs": 30, "alpha": 0.1, "seed": 99, "block_hours": {"half_day": 3.5}})");
    CHECK(c.min_obs == 30);
    CHECK(c.alpha == 0.1);
    CHECK(c.seed == 99u);
    CHECK(c.block_hours.half_day == 3.5);
    CHECK(c.block_hours.full_day == 8.0);
    const auto again = RunConfig::from_json(c.to_json());
    CHECK(again.to_json() == c.to_json());

    CHECK(kind_of([] { (void)RunConfig::from_json(R"({"alpah": 0.1})"); }) == ErrorKind::MalformedInput);
    CHECK(kind_of([] { (void)RunConfig::from_json(R"({"alpha": "x"})"); }) == ErrorKind::MalformedInput);
    CHECK(kind_of([] { (void)RunConfig::from_json("{"); }) == ErrorKind::MalformedInput);
    CHECK(kind_of([] { (void)RunConfig::from_json(R"({"alpha": 1.5})"); }) == ErrorKind::DomainError);
    CHECK(kind_of([] { (void)RunConfig::from_json(R"({"bootstrap_replicates": 0})"); }) == ErrorKind::DomainError);
    CHECK(kind_of([] { (void)RunConfig::load("/nonexistent/config.json"); }) == ErrorKind::FileNotFound);
}

TEST_CASE("fixture tables", "[fixture]") {
    const auto& fx = Fixture::builtin();
    CHECK(fx.rows(PatientClass::elective).size() + fx.rows(PatientClass::non_elective).size() == fx.durations.size());
    const auto* breast = fx.find("Breast & Endocrine", PatientClass::elective);
    REQUIRE(breast);
    CHECK(breast->params.mu == 0.469);
    CHECK(breast->params.sigma2 == 0.211);
    std::istringstream text{std::string(builtin_fixture_text())};
    const auto parsed = Fixture::parse(text);
    CHECK(parsed.durations.size() == fx.durations.size());
    CHECK(parsed.demand.size() == fx.demand.size());
    CHECK(kind_of([] { (void)Fixture::load("/nonexistent/fixture.csv"); }) == ErrorKind::FileNotFound);
}

TEST_CASE("report tables", "[report]") {
    SECTION("empty inputs give header-only tables") {
        std::ostringstream d, m, c;
        write_duration_table(d, {});
        write_demand_table(m, {});
        write_cancellation_table(c, {});
        CHECK(d.str() == "Specialty,Count,p-val,Mean,Variance,μ,σ^2\n");
        CHECK(m.str() == "Specialty,Cat 1,Cat 2,Cat 3,Elective Total,Non-Electives,Total Demand\n");
        CHECK(c.str().rfind("Cancellation Description,Count\n", 0) == 0);
    }
    SECTION("fixture row keeps column order and precision") {
        const auto* b = Fixture::builtin().find("Breast & Endocrine", PatientClass::elective);
        const DurationSummary row{b->specialty, b->count, b->p_value, b->mean, b->variance, b->params.mu,
                                  b->params.sigma2};
        std::ostringstream out;
        write_duration_table(out, std::span(&row, 1));
        std::string line = out.str().substr(out.str().find('\n') + 1);
        CHECK(line.rfind("Breast & Endocrine,", 0) == 0);
        CHECK(line.find(",0.469,0.211") != std::string::npos);
    }
    SECTION("unrounded tables parse back exactly") {
        Rng rng(3);
        std::vector<double> x(60);
        for (auto& v : x) v = 0.3 + 2.0 * rng.uniform();
        const auto s = summarize_durations(DurationSample("Plastic Surgery", PatientClass::elective, x));
        CHECK(s.count == 60);
        REQUIRE(s.p_value);
        std::stringstream io;
        write_duration_table(io, std::span(&s, 1), false);
        const auto back = read_duration_table(io);
        REQUIRE(back.size() == 1);
        CHECK(back[0].specialty == s.specialty);
        CHECK(std::abs(back[0].mu - s.mu) <= 1e-12);
        CHECK(std::abs(back[0].sigma2 - s.sigma2) <= 1e-12);
        CHECK(std::abs(back[0].mean - s.mean) <= 1e-12);
        CHECK(std::abs(*back[0].p_value - *s.p_value) <= 1e-12);
    }
    SECTION("writing into an unwritable location fails") {
        const auto blocker = scratch("not_a_dir");
        std::ofstream(blocker) << "x";
        CHECK(kind_of([&] { (void)report_tables({}, blocker / "sub"); }) == ErrorKind::WriteError);
    }
    SECTION("report files are written") {
        const auto dir = scratch("report_out");
        fs::remove_all(dir);
        ReportInputs in;
        in.demand = Fixture::builtin().demand;
        in.cancellations = Fixture::builtin().cancellations;
        const auto written = report_tables(in, dir);
        CHECK(written.size() == 8);
        for (const auto& p : written) CHECK(fs::exists(p));
    }
}

TEST_CASE("demand and cancellations from records", "[report]") {
    std::istringstream in(kHeader +
                          "A,Urology,elective,1,2016-01-04,2016-01-05,1.0,false,\n"
                          "B,Urology,elective,1,2016-01-05,2016-01-06,1.0,false,\n"
                          "C,Urology,non_elective,,2016-01-04,2016-01-04,3.0,false,\n"
                          "D,Urology,elective,3,2016-01-04,,,true,Other\n");
    const auto r = ingest(in);
    const auto demand = demand_from_records(r.records, 2.0);
    REQUIRE(demand.size() == 1);
    CHECK(demand[0].cat1 == 1.0);
    CHECK(demand[0].cat3 == 0.5);
    CHECK(demand[0].non_elective == 0.5);
    CHECK(demand[0].total_demand == 2.0);
    const auto cancels = cancellations_from_records(r.records, 2.0);
    REQUIRE(cancels.rows.size() == 1);
    CHECK(cancels.rows[0].description == "Other");
    CHECK(cancels.total() == 0.5);
}
