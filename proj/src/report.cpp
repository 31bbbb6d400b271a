#include "surgstat/report.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include "surgstat/csv.hpp"
#include "surgstat/error.hpp"
#include "surgstat/gof.hpp"

namespace surgstat {

namespace {

std::string num(double v, int decimals, bool rounded) {
    return rounded ? csv::format_fixed(v, decimals) : csv::format_exact(v);
}

csv::Row header(std::span<const std::string_view> cols) { return csv::Row(cols.begin(), cols.end()); }

}  // namespace

DurationSummary summarize_durations(const DurationSample& sample) {
    DurationSummary s;
    s.specialty = sample.specialty();
    s.count = sample.size();
    const auto params = fit_lognormal(sample);
    s.mu = params.mu;
    s.sigma2 = params.sigma2;
    const auto m = lognormal_moments(params);
    s.mean = m.mean;
    s.variance = m.variance;
    if (s.count >= 3 && !params.degenerate()) {
        std::vector<double> logs;
        logs.reserve(s.count);
        for (double x : sample.durations()) logs.push_back(std::log(x));
        try {
            s.p_value = normality_test(logs).p_value;
        } catch (const Error&) {
            s.p_value.reset();
        }
    }
    return s;
}

std::vector<DemandRow> demand_from_records(std::span<const SurgicalRecord> records, double weeks) {
    require(weeks > 0.0, "demand estimate needs a positive number of weeks");
    std::map<std::string, DemandRow> by_specialty;
    for (const auto& r : records) {
        auto& row = by_specialty[r.specialty];
        row.specialty = r.specialty;
        if (r.patient_class == PatientClass::non_elective) {
            row.non_elective += 1.0;
        } else if (r.urgency == 1) {
            row.cat1 += 1.0;
        } else if (r.urgency == 2) {
            row.cat2 += 1.0;
        } else if (r.urgency == 3) {
            row.cat3 += 1.0;
        }
    }
    std::vector<DemandRow> out;
    for (auto& [name, row] : by_specialty) {
        row.cat1 /= weeks;
        row.cat2 /= weeks;
        row.cat3 /= weeks;
        row.non_elective /= weeks;
        row.elective_total = row.cat1 + row.cat2 + row.cat3;
        row.total_demand = row.elective_total + row.non_elective;
        out.push_back(row);
    }
    return out;
}

WeeklyCancellationTable cancellations_from_records(std::span<const SurgicalRecord> records, double weeks) {
    require(weeks > 0.0, "cancellation estimate needs a positive number of weeks");
    std::map<std::string, double> counts;
    for (const auto& r : records) {
        if (r.cancelled) counts[r.cancellation_code.value_or("Unspecified")] += 1.0;
    }
    WeeklyCancellationTable t;
    for (const auto& [code, n] : counts) t.rows.push_back({code, n / weeks});
    return t;
}

void write_duration_table(std::ostream& out, std::span<const DurationSummary> rows, bool rounded) {
    csv::write_row(out, header(kDurationColumns));
    for (const auto& r : rows) {
        csv::write_row(out, {r.specialty, std::to_string(r.count), r.p_value ? num(*r.p_value, 3, rounded) : "NA",
                             num(r.mean, 3, rounded), num(r.variance, 3, rounded), num(r.mu, 3, rounded),
                             num(r.sigma2, 3, rounded)});
    }
}

void write_demand_table(std::ostream& out, std::span<const DemandRow> rows, bool rounded) {
    csv::write_row(out, header(kDemandColumns));
    DemandRow total{"Total Demand"};
    for (const auto& r : rows) {
        csv::write_row(out, {r.specialty, num(r.cat1, 2, rounded), num(r.cat2, 2, rounded), num(r.cat3, 2, rounded),
                             num(r.elective_total, 2, rounded), num(r.non_elective, 2, rounded),
                             num(r.total_demand, 2, rounded)});
        total.cat1 += r.cat1;
        total.cat2 += r.cat2;
        total.cat3 += r.cat3;
        total.elective_total += r.elective_total;
        total.non_elective += r.non_elective;
        total.total_demand += r.total_demand;
    }
    if (rows.empty()) return;
    csv::write_row(out, {total.specialty, num(total.cat1, 2, rounded), num(total.cat2, 2, rounded),
                         num(total.cat3, 2, rounded), num(total.elective_total, 2, rounded),
                         num(total.non_elective, 2, rounded), num(total.total_demand, 2, rounded)});
}

void write_cancellation_table(std::ostream& out, const WeeklyCancellationTable& table, bool rounded) {
    csv::write_row(out, header(kCancellationColumns));
    for (const auto& r : table.rows) csv::write_row(out, {r.description, num(r.mean_weekly_count, 2, rounded)});
    if (!table.rows.empty()) csv::write_row(out, {"Total", num(table.total(), 2, rounded)});
}

std::vector<DurationSummary> read_duration_table(std::istream& in) {
    const auto rows = csv::read_all(in);
    if (rows.empty() || rows.front() != header(kDurationColumns)) {
        fail(ErrorKind::MalformedHeader, "not a duration table");
    }
    std::vector<DurationSummary> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.size() != kDurationColumns.size()) fail(ErrorKind::MalformedInput, "duration table row has wrong width");
        DurationSummary s;
        s.specialty = row[0];
        s.count = static_cast<std::size_t>(csv::parse_double(row[1]));
        if (row[2] != "NA") s.p_value = csv::parse_double(row[2]);
        s.mean = csv::parse_double(row[3]);
        s.variance = csv::parse_double(row[4]);
        s.mu = csv::parse_double(row[5]);
        s.sigma2 = csv::parse_double(row[6]);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<std::filesystem::path> report_tables(const ReportInputs& inputs, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) fail(ErrorKind::WriteError, "cannot create '" + dir.string() + "': " + ec.message());

    std::vector<std::filesystem::path> written;
    auto emit = [&](const std::string& stem, auto&& writer) {
        for (bool rounded : {true, false}) {
            const auto path = dir / (stem + (rounded ? ".csv" : "_unrounded.csv"));
            std::ofstream out(path);
            if (!out) fail(ErrorKind::WriteError, "cannot open '" + path.string() + "' for writing");
            writer(out, rounded);
            out.close();
            if (!out) fail(ErrorKind::WriteError, "failed writing '" + path.string() + "'");
            written.push_back(path);
        }
    };
    emit("table1_elective_durations", [&](std::ostream& o, bool r) { write_duration_table(o, inputs.elective, r); });
    emit("table2_non_elective_durations",
         [&](std::ostream& o, bool r) { write_duration_table(o, inputs.non_elective, r); });
    emit("table3_weekly_demand", [&](std::ostream& o, bool r) { write_demand_table(o, inputs.demand, r); });
    emit("table4_weekly_cancellations",
         [&](std::ostream& o, bool r) { write_cancellation_table(o, inputs.cancellations, r); });
    return written;
}

}  // namespace surgstat
