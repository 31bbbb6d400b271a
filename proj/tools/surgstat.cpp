// surgstat command-line tool.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "surgstat/config.hpp"
#include "surgstat/csv.hpp"
#include "surgstat/demand.hpp"
#include "surgstat/distfit.hpp"
#include "surgstat/error.hpp"
#include "surgstat/fixture.hpp"
#include "surgstat/gof.hpp"
#include "surgstat/records.hpp"
#include "surgstat/report.hpp"
#include "surgstat/resample.hpp"
#include "surgstat/rng.hpp"
#include "surgstat/sim.hpp"

using namespace surgstat;
using nlohmann::json;

namespace {

struct Flags {
    std::string input;
    std::string output;
    std::string config;
    std::string specialty;
    std::string patient_class;
    std::string fixture;
    std::uint64_t seed = 0;
    std::size_t min_obs = 0;
    double block_hours = 0.0;
    double alpha = 0.0;
    std::size_t replicates = 0;
    unsigned workers = 1;

    CLI::Option* seed_opt = nullptr;
    CLI::Option* min_obs_opt = nullptr;
    CLI::Option* block_opt = nullptr;
    CLI::Option* alpha_opt = nullptr;
    CLI::Option* replicates_opt = nullptr;
};

// Flags merged over the config file over the defaults.
struct Settings {
    RunConfig config;
    std::uint64_t seed = 0;
    std::optional<double> block_hours;
    std::optional<PatientClass> patient_class;
    std::string specialty;
    std::string input;
    std::string output;
    Fixture fixture;
    Parallelism parallelism;
};

Settings resolve(const Flags& f) {
    Settings s;
    if (!f.config.empty()) s.config = RunConfig::load(f.config);
    if (*f.min_obs_opt) s.config.min_obs = f.min_obs;
    if (*f.alpha_opt) s.config.alpha = f.alpha;
    if (*f.replicates_opt) s.config.bootstrap_replicates = f.replicates;
    if (*f.seed_opt) s.config.seed = f.seed;
    s.config.validate();
    if (*f.block_opt) {
        require(std::isfinite(f.block_hours) && f.block_hours > 0.0, "--block-hours must be positive");
        s.block_hours = f.block_hours;
    }
    if (s.config.seed) {
        s.seed = *s.config.seed;
    } else {
        s.seed = entropy_seed();
        std::cerr << "seed: " << s.seed << '\n';
    }
    if (!f.patient_class.empty()) {
        s.patient_class = patient_class_from_string(f.patient_class);
        if (!s.patient_class) fail(ErrorKind::DomainError, "unknown patient class '" + f.patient_class + "'");
    }
    s.specialty = f.specialty;
    s.input = f.input;
    s.output = f.output;
    s.fixture = f.fixture.empty() ? Fixture::builtin() : Fixture::load(f.fixture);
    s.parallelism.workers = f.workers;
    return s;
}

bool same_name(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

bool wanted(const Settings& s, std::string_view specialty, PatientClass c) {
    if (s.patient_class && *s.patient_class != c) return false;
    return s.specialty.empty() || same_name(s.specialty, specialty);
}

void with_output(const Settings& s, const std::function<void(std::ostream&)>& body) {
    if (s.output.empty() || s.output == "-") {
        body(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(s.output);
    if (!out) fail(ErrorKind::WriteError, "cannot open '" + s.output + "' for writing");
    body(out);
    out.close();
    if (!out) fail(ErrorKind::WriteError, "failed writing '" + s.output + "'");
}

IngestResult load_records(const Settings& s) {
    if (s.input.empty()) fail(ErrorKind::MissingInput, "--input records file is required");
    auto result = ingest(s.input);
    std::cerr << "ingest: " << result.report.input_rows << " rows, " << result.report.emitted << " kept";
    for (const auto& [reason, n] : result.report.dropped_by_reason) std::cerr << ", " << reason << '=' << n;
    std::cerr << '\n';
    return result;
}

double span_weeks(std::span<const SurgicalRecord> records) {
    require(!records.empty(), "no records to measure");
    auto [lo, hi] = std::minmax_element(records.begin(), records.end(), [](const auto& a, const auto& b) {
        return a.request_date < b.request_date;
    });
    return static_cast<double>((hi->request_date - lo->request_date).count() + 1) / 7.0;
}

std::string fixed(double v, int d) { return csv::format_fixed(v, d); }

// ---- fit -------------------------------------------------------------------

void cmd_fit(const Settings& s) {
    const auto loaded = load_records(s);
    const auto samples = duration_samples(loaded.records);
    with_output(s, [&](std::ostream& out) {
        csv::write_row(out, {"Class", "Specialty", "Count", "p-val", "Mean", "Variance", "μ", "σ^2", "Best Family",
                             "AIC"});
        for (const auto& cs : samples) {
            if (!cs.sample || cs.sample->size() < s.config.min_obs) continue;
            if (!wanted(s, cs.sample->specialty(), cs.sample->patient_class())) continue;
            const auto row = summarize_durations(*cs.sample);
            std::string best = "NA", best_aic = "NA";
            try {
                const auto sel = select_best(*cs.sample, s.config.min_obs);
                if (sel.best) {
                    best = std::string(to_string(sel.best->family));
                    best_aic = fixed(sel.best->aic, 3);
                }
            } catch (const Error& e) {
                std::cerr << "warning: " << row.specialty << ": " << e.what() << '\n';
            }
            csv::write_row(out, {std::string(to_string(cs.sample->patient_class())), row.specialty,
                                 std::to_string(row.count), row.p_value ? fixed(*row.p_value, 3) : "NA",
                                 fixed(row.mean, 3), fixed(row.variance, 3), fixed(row.mu, 3), fixed(row.sigma2, 3),
                                 best, best_aic});
        }
    });
}

// ---- gof -------------------------------------------------------------------

csv::Row test_row(const std::string& group, const TestReport& r) {
    return {group,
            r.test_name,
            csv::format_exact(r.statistic),
            csv::format_exact(r.p_value),
            std::to_string(r.n),
            r.degrees_of_freedom > 0 ? csv::format_exact(r.degrees_of_freedom) : "",
            r.simulated ? "true" : "false",
            r.notes};
}

void emit_test(std::ostream& out, const std::string& group, const std::function<TestReport()>& run) {
    try {
        csv::write_row(out, test_row(group, run()));
    } catch (const Error& e) {
        csv::write_row(out, {group, "", "", "", "", "", "", std::string(to_string(e.kind())) + ": " + e.what()});
    }
}

// Daily request counts per category, keyed by request date.
std::map<UrgencyCategory, std::map<Date, std::uint64_t>> daily_requests(const Settings& s,
                                                                         std::span<const SurgicalRecord> records,
                                                                         Date& first, Date& last) {
    std::map<UrgencyCategory, std::map<Date, std::uint64_t>> out;
    first = Date::max();
    last = Date::min();
    for (const auto& r : records) {
        first = std::min(first, r.request_date);
        last = std::max(last, r.request_date);
        if (!wanted(s, r.specialty, r.patient_class)) continue;
        const auto cat = r.patient_class == PatientClass::non_elective ? UrgencyCategory::non_elective
                                                                        : category_from_urgency(*r.urgency).value();
        ++out[cat][r.request_date];
    }
    return out;
}

void cmd_gof(const Settings& s, const std::string& test) {
    const auto loaded = load_records(s);
    const auto& records = loaded.records;
    ExactMultinomialOptions mopts;
    mopts.mc_replicates = s.config.mc_fallback_replicates;
    mopts.seed = s.seed;

    with_output(s, [&](std::ostream& out) {
        csv::write_row(out, {"Group", "Test", "Statistic", "p-value", "n", "df", "Simulated", "Notes"});
        if (test == "normality") {
            for (const auto& cs : duration_samples(records)) {
                if (!cs.sample || !wanted(s, cs.sample->specialty(), cs.sample->patient_class())) continue;
                std::vector<double> logs;
                for (double x : cs.sample->durations()) logs.push_back(std::log(x));
                const std::string group =
                    std::string(to_string(cs.sample->patient_class())) + ":" + cs.sample->specialty();
                emit_test(out, group, [&] { return normality_test(logs); });
                emit_test(out, group, [&] { return anderson_darling_normal(logs); });
                emit_test(out, group, [&] { return lilliefors(logs); });
            }
            return;
        }

        Date first{}, last{};
        const auto daily = daily_requests(s, records, first, last);
        if (records.empty()) return;
        auto by_day = [&](const std::map<Date, std::uint64_t>& counts) {
            std::array<std::uint64_t, 7> totals{};
            for (const auto& [d, n] : counts) totals[index(day_of_week(d))] += n;
            return totals;
        };
        // Per-date series for the given weekday, zero-filled across the span.
        auto series = [&](const std::map<Date, std::uint64_t>& counts, Day day) {
            std::vector<std::uint64_t> out_counts;
            for (Date d = first; d <= last; d += std::chrono::days(1)) {
                if (day_of_week(d) != day) continue;
                const auto it = counts.find(d);
                out_counts.push_back(it == counts.end() ? 0 : it->second);
            }
            return out_counts;
        };

        if (test == "uniformity") {
            for (const auto& [cat, counts] : daily) {
                const auto totals = by_day(counts);
                const std::string group(to_string(cat));
                emit_test(out, group + ":all_days", [&] { return chi_square_uniformity(DayCounts::all_days(totals)); });
                emit_test(out, group + ":sat_sun_mon_pooled",
                          [&] { return chi_square_uniformity(DayCounts::pooled_weekend_monday(totals)); });
                emit_test(out, group + ":tue_to_fri",
                          [&] { return chi_square_uniformity(DayCounts::tuesday_to_friday(totals)); });
            }
        } else if (test == "poisson") {
            for (const auto& [cat, counts] : daily) {
                std::vector<std::uint64_t> obs;
                for (Day d : {Day::tue, Day::wed, Day::thu, Day::fri}) {
                    const auto part = series(counts, d);
                    obs.insert(obs.end(), part.begin(), part.end());
                    emit_test(out, std::string(to_string(cat)) + ":" + std::string(to_string(d)),
                              [&] { return poisson_exact_test(part, 4, mopts); });
                }
                emit_test(out, std::string(to_string(cat)) + ":tue_to_fri",
                          [&] { return poisson_exact_test(obs, 4, mopts); });
            }
        } else if (test == "weekday") {
            // Non-elective operations per weekday, one Welch test per weekday
            // against the other weekdays, for each specialty.
            std::map<std::string, std::map<Date, std::uint64_t>> ops;
            for (const auto& r : records) {
                if (r.patient_class != PatientClass::non_elective || r.cancelled || !r.surgery_date) continue;
                if (!wanted(s, r.specialty, r.patient_class)) continue;
                ++ops[r.specialty][*r.surgery_date];
            }
            constexpr std::array<Day, 5> weekdays = {Day::mon, Day::tue, Day::wed, Day::thu, Day::fri};
            for (const auto& [name, counts] : ops) {
                for (Day d : weekdays) {
                    std::vector<double> a, b;
                    for (Day other : weekdays) {
                        for (auto n : series(counts, other)) (other == d ? a : b).push_back(static_cast<double>(n));
                    }
                    emit_test(out, name + ":" + std::string(to_string(d)), [&] { return two_sample_t(a, b); });
                }
            }
        } else {
            fail(ErrorKind::DomainError, "unknown test '" + test + "'");
        }
    });
}

// ---- capacity ----------------------------------------------------------------

void cmd_capacity(const Settings& s, const std::string& method) {
    require(method == "both" || method == "bootstrap" || method == "approx",
            "--method must be both, bootstrap or approx");
    struct Source {
        std::string specialty;
        PatientClass patient_class;
        CapacitySource source;
    };
    std::vector<Source> sources;
    if (!s.input.empty()) {
        const auto loaded = load_records(s);
        for (const auto& cs : duration_samples(loaded.records)) {
            if (!cs.sample || cs.sample->size() < s.config.min_obs) continue;
            if (!wanted(s, cs.sample->specialty(), cs.sample->patient_class())) continue;
            sources.push_back({cs.sample->specialty(), cs.sample->patient_class(), *cs.sample});
        }
    } else {
        for (const auto& row : s.fixture.durations) {
            if (row.count < s.config.min_obs || row.params.degenerate()) continue;
            if (!wanted(s, row.specialty, row.patient_class)) continue;
            sources.push_back({row.specialty, row.patient_class, row.params});
        }
    }
    if (sources.empty()) fail(ErrorKind::MissingInput, "no specialty matches the selection");

    std::vector<double> blocks;
    if (s.block_hours) {
        blocks.push_back(*s.block_hours);
    } else {
        blocks = {s.config.block_hours.half_day, s.config.block_hours.full_day};
    }
    CapacityOptions opts;
    opts.alpha = s.config.alpha;
    opts.replicates = s.config.bootstrap_replicates;
    opts.seed = s.seed;
    opts.parallelism = s.parallelism;

    with_output(s, [&](std::ostream& out) {
        csv::write_row(out, {"Specialty", "Class", "Block Hours", "Alpha", "Bootstrap Max", "Bootstrap Percentile",
                             "Lognormal Max", "Lognormal Percentile", "Agree", "Replicates", "Seed"});
        for (const auto& src : sources) {
            for (double hours : blocks) {
                std::optional<CapacityResult> boot, approx;
                if (method != "approx") boot = max_patients(src.source, hours, CapacityMethod::bootstrap, opts);
                if (method != "bootstrap") {
                    approx = max_patients(src.source, hours, CapacityMethod::lognormal_approx, opts);
                }
                const bool agree = boot && approx && boot->max_patients == approx->max_patients;
                csv::write_row(out, {src.specialty, std::string(to_string(src.patient_class)), csv::format_exact(hours),
                                     csv::format_exact(opts.alpha),
                                     boot ? std::to_string(boot->max_patients) : "",
                                     boot ? fixed(boot->percentile_at_max, 3) : "",
                                     approx ? std::to_string(approx->max_patients) : "",
                                     approx ? fixed(approx->percentile_at_max, 3) : "",
                                     boot && approx ? (agree ? "true" : "false") : "",
                                     std::to_string(opts.replicates), std::to_string(opts.seed)});
            }
        }
    });
}

// ---- demand ------------------------------------------------------------------

void cmd_demand(const Settings& s, std::size_t weeks) {
    if (!s.input.empty()) {
        const auto loaded = load_records(s);
        auto rows = demand_from_records(loaded.records, span_weeks(loaded.records));
        std::erase_if(rows, [&](const DemandRow& r) { return !s.specialty.empty() && !same_name(s.specialty, r.specialty); });
        with_output(s, [&](std::ostream& out) { write_demand_table(out, rows); });
        return;
    }
    auto schedules = s.fixture.demand_schedules(s.config.weekend_fraction);
    std::erase_if(schedules, [&](const RateSchedule& r) {
        return !wanted(s, r.specialty, patient_class_of(r.category));
    });
    // Optional simulation of `weeks` weeks to check the weekly means.
    std::vector<double> simulated(schedules.size(), 0.0);
    if (weeks > 0) {
        for (std::size_t i = 0; i < schedules.size(); ++i) {
            Rng rng = Rng::substream(s.seed, i);
            std::uint64_t total = 0;
            for (std::size_t w = 0; w < weeks; ++w) {
                for (Day d : kWeek) total += generate_requests(schedules[i], d, rng);
            }
            simulated[i] = static_cast<double>(total) / static_cast<double>(weeks);
        }
    }
    with_output(s, [&](std::ostream& out) {
        csv::Row head = {"Specialty", "Category", "Pattern"};
        for (Day d : kWeek) head.emplace_back(to_string(d));
        head.emplace_back("Weekly Total");
        if (weeks > 0) {
            head.emplace_back("Simulated Weekly Mean");
            head.emplace_back("Relative Error");
        }
        csv::write_row(out, head);
        for (std::size_t i = 0; i < schedules.size(); ++i) {
            const auto& r = schedules[i];
            csv::Row row = {r.specialty, std::string(to_string(r.category)), std::string(to_string(r.pattern))};
            for (double v : r.rates) row.push_back(fixed(v, 4));
            row.push_back(fixed(r.weekly_total(), 2));
            if (weeks > 0) {
                const double target = r.weekly_total();
                row.push_back(fixed(simulated[i], 4));
                row.push_back(target > 0 ? fixed((simulated[i] - target) / target, 4) : "NA");
            }
            csv::write_row(out, row);
        }
    });
}

// ---- simulate ----------------------------------------------------------------

MasterSchedule parse_schedule(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::FileNotFound, "cannot open schedule '" + path + "'");
    json j;
    try {
        in >> j;
        MasterSchedule m;
        m.n_operating_rooms = j.value("n_operating_rooms", std::size_t{1});
        for (const auto& b : j.at("blocks")) {
            Block blk;
            blk.specialty = b.at("specialty").get<std::string>();
            const auto day = day_from_string(b.at("day").get<std::string>());
            if (!day) fail(ErrorKind::MalformedInput, "block day must be one of Mon..Sun");
            blk.day = *day;
            blk.length_hours = b.value("length_hours", kFullDayHours);
            const auto cls = patient_class_from_string(b.value("patient_class", std::string("elective")));
            if (!cls) fail(ErrorKind::MalformedInput, "unknown block patient_class");
            blk.patient_class = *cls;
            blk.n_assigned = b.at("n_assigned").get<std::size_t>();
            blk.n_surgeons = b.value("n_surgeons", std::size_t{1});
            blk.n_anaesthetists = b.value("n_anaesthetists", std::size_t{1});
            if (b.contains("operating_room")) blk.operating_room = b.at("operating_room").get<std::size_t>();
            m.blocks.push_back(std::move(blk));
        }
        return m;
    } catch (const json::exception& e) {
        fail(ErrorKind::MalformedInput, std::string("bad schedule JSON: ") + e.what());
    }
}

void cmd_simulate(const Settings& s) {
    if (s.input.empty()) fail(ErrorKind::MissingInput, "--input schedule JSON is required");
    const auto schedule = parse_schedule(s.input);
    const auto world = synthetic_world(s.fixture, s.config.weekend_fraction);
    std::set<std::string> used;
    for (const auto& b : schedule.blocks) used.insert(b.specialty);
    std::vector<RateSchedule> rates;
    for (const auto& r : world.schedules) {
        if (used.count(r.specialty)) rates.push_back(r);
    }
    SimOptions opts;
    opts.replicates = s.config.bootstrap_replicates;
    opts.seed = s.seed;
    opts.parallelism = s.parallelism;
    const auto outcome = simulate_week(schedule, world.durations, rates, CancellationModel{}, opts);

    json j;
    j["overtime_probability_per_block"] = outcome.overtime_probability_per_block;
    j["expected_overtime_hours"] = outcome.expected_overtime_hours;
    j["expected_cancellations_by_cause"] = outcome.expected_cancellations_by_cause;
    j["unmet_demand_by_specialty"] = outcome.unmet_demand_by_specialty;
    j["replicates"] = outcome.replicates;
    j["seed"] = outcome.seed;
    with_output(s, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
}

// ---- generate ----------------------------------------------------------------

void cmd_generate(const Settings& s, std::size_t weeks) {
    auto world = synthetic_world(s.fixture, s.config.weekend_fraction);
    std::erase_if(world.schedules, [&](const RateSchedule& r) {
        return !wanted(s, r.specialty, patient_class_of(r.category));
    });
    GenerateOptions opts;
    opts.weeks = weeks;
    opts.seed = s.seed;
    const auto data = generate_dataset(world.durations, world.schedules, CancellationModel{}, opts);
    std::uint64_t requested = 0, waitlisted = 0;
    for (const auto& t : data.tallies) {
        requested += t.requested;
        waitlisted += t.waitlist_cancelled;
    }
    std::cerr << "generate: " << requested << " requests, " << waitlisted << " left the waiting list, "
              << data.records.size() << " records\n";
    with_output(s, [&](std::ostream& out) { write_records(out, data.records); });
}

// ---- report ------------------------------------------------------------------

void cmd_report(const Settings& s) {
    ReportInputs in;
    if (!s.input.empty()) {
        const auto loaded = load_records(s);
        for (const auto& cs : duration_samples(loaded.records)) {
            if (!cs.sample || !wanted(s, cs.sample->specialty(), cs.sample->patient_class())) continue;
            auto& table = cs.sample->patient_class() == PatientClass::elective ? in.elective : in.non_elective;
            table.push_back(summarize_durations(*cs.sample));
        }
        const double weeks = span_weeks(loaded.records);
        in.demand = demand_from_records(loaded.records, weeks);
        in.cancellations = cancellations_from_records(loaded.records, weeks);
    } else {
        for (const auto& row : s.fixture.durations) {
            if (!wanted(s, row.specialty, row.patient_class)) continue;
            const auto m = lognormal_moments(row.params);
            DurationSummary d{row.specialty, row.count, row.p_value, m.mean, m.variance, row.params.mu,
                              row.params.sigma2};
            (row.patient_class == PatientClass::elective ? in.elective : in.non_elective).push_back(d);
        }
        in.demand = s.fixture.demand;
        in.cancellations = s.fixture.cancellations;
    }
    const auto dir = s.output.empty() ? std::filesystem::path("report") : std::filesystem::path(s.output);
    for (const auto& p : report_tables(in, dir)) std::cerr << "wrote " << p.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Surgical department statistics: duration fitting, goodness of fit, capacity, demand and "
                 "cancellation modelling"};
    app.require_subcommand(1);
    app.fallthrough();

    Flags f;
    app.add_option("--input", f.input, "Input file (records CSV, or schedule JSON for simulate)");
    app.add_option("--output", f.output, "Output file (directory for report); stdout when omitted");
    app.add_option("--config", f.config, "JSON run configuration");
    app.add_option("--fixture", f.fixture, "Parameter tables to use instead of the built-in ones");
    app.add_option("--specialty", f.specialty, "Restrict to one specialty");
    app.add_option("--class", f.patient_class, "Restrict to elective or non_elective");
    f.seed_opt = app.add_option("--seed", f.seed, "Random seed; drawn from entropy and printed when omitted");
    f.min_obs_opt = app.add_option("--min-obs", f.min_obs, "Minimum observations per specialty");
    f.block_opt = app.add_option("--block-hours", f.block_hours, "Block length in hours");
    f.alpha_opt = app.add_option("--alpha", f.alpha, "Overtime risk (1 - percentile)");
    f.replicates_opt = app.add_option("--replicates", f.replicates, "Monte Carlo replicates");
    app.add_option("--workers", f.workers, "Worker threads (0 = all cores); results do not depend on it");

    std::string test = "normality", method = "both";
    std::size_t weeks = 0;
    auto* fit = app.add_subcommand("fit", "Fit duration distributions per specialty");
    auto* gof = app.add_subcommand("gof", "Goodness-of-fit tests");
    gof->add_option("--test", test, "normality | uniformity | poisson | weekday")
        ->check(CLI::IsMember({"normality", "uniformity", "poisson", "weekday"}));
    auto* capacity = app.add_subcommand("capacity", "Maximum patients per block");
    capacity->add_option("--method", method, "both | bootstrap | approx")
        ->check(CLI::IsMember({"both", "bootstrap", "approx"}));
    auto* demand = app.add_subcommand("demand", "Weekly request rates");
    demand->add_option("--weeks", weeks, "Simulate this many weeks and compare with the table");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo evaluation of a master schedule");
    auto* generate = app.add_subcommand("generate", "Generate synthetic surgical records");
    generate->add_option("--weeks", weeks, "Number of weeks")->required();
    auto* report = app.add_subcommand("report", "Write tables 1-4 and unrounded sidecars");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ExtrasError& e) {
        std::cerr << "error: " << to_string(ErrorKind::UnknownFlag) << ": " << e.what() << '\n';
        return 2;
    } catch (const CLI::RequiredError& e) {
        std::cerr << "error: " << to_string(ErrorKind::MissingInput) << ": " << e.what() << '\n';
        return 2;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << to_string(ErrorKind::MalformedInput) << ": " << e.what() << '\n';
        return 2;
    }

    try {
        const Settings s = resolve(f);
        if (*fit) cmd_fit(s);
        else if (*gof) cmd_gof(s, test);
        else if (*capacity) cmd_capacity(s, method);
        else if (*demand) cmd_demand(s, weeks);
        else if (*simulate) cmd_simulate(s);
        else if (*generate) cmd_generate(s, weeks);
        else if (*report) cmd_report(s);
    } catch (const Error& e) {
        std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: Internal: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
