#include "surgstat/records.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "surgstat/csv.hpp"
#include "surgstat/error.hpp"

namespace surgstat {

namespace {

template <class T>
bool parse_int(std::string_view s, T& out) {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

// Row-level failure; the message doubles as the drop reason.
struct RowError {
    std::string reason;
};

SurgicalRecord parse_record(const csv::Row& row) {
    if (row.size() != kRecordColumns.size()) throw RowError{"wrong_field_count"};
    SurgicalRecord r;
    r.record_id = row[0];
    if (r.record_id.empty()) throw RowError{"missing_record_id"};
    r.specialty = row[1];
    if (r.specialty.empty()) throw RowError{"missing_specialty"};
    const auto cls = patient_class_from_string(row[2]);
    if (!cls) throw RowError{"bad_patient_class"};
    r.patient_class = *cls;
    if (!row[3].empty()) {
        int u = 0;
        if (!parse_int(row[3], u)) throw RowError{"bad_urgency"};
        r.urgency = u;
    }
    const auto req = parse_date(row[4]);
    if (!req) throw RowError{"bad_date"};
    r.request_date = *req;
    if (!row[5].empty()) {
        const auto sd = parse_date(row[5]);
        if (!sd) throw RowError{"bad_date"};
        r.surgery_date = *sd;
    }
    if (!row[6].empty()) {
        try {
            r.duration_hours = csv::parse_double(row[6]);
        } catch (const Error&) {
            throw RowError{"bad_duration"};
        }
    }
    if (row[7] == "true" || row[7] == "1") {
        r.cancelled = true;
    } else if (row[7] == "false" || row[7] == "0") {
        r.cancelled = false;
    } else {
        throw RowError{"bad_cancelled_flag"};
    }
    if (!row[8].empty()) r.cancellation_code = row[8];
    return r;
}

}  // namespace

std::optional<Date> parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    int y = 0;
    unsigned m = 0, d = 0;
    if (!parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), m) || !parse_int(text.substr(8, 2), d)) {
        return std::nullopt;
    }
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!ymd.ok()) return std::nullopt;
    return Date{ymd};
}

std::string format_date(Date d) {
    const std::chrono::year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                  static_cast<unsigned>(ymd.day()));
    return buf;
}

Day day_of_week(Date d) {
    return static_cast<Day>(std::chrono::weekday{d}.iso_encoding() - 1);
}

std::optional<std::string> record_violation(const SurgicalRecord& r) {
    if (r.duration_hours && !(std::isfinite(*r.duration_hours) && *r.duration_hours > 0.0)) {
        return "nonpositive_duration";
    }
    if (r.surgery_date && *r.surgery_date < r.request_date) return "date_order";
    if (!r.cancelled && (!r.duration_hours || !r.surgery_date)) return "incomplete_surgery";
    const bool elective = r.patient_class == PatientClass::elective;
    if (elective != r.urgency.has_value()) return "urgency_class_mismatch";
    if (r.urgency && (*r.urgency < 1 || *r.urgency > 3)) return "bad_urgency";
    return std::nullopt;
}

std::size_t IngestReport::dropped() const noexcept {
    std::size_t n = 0;
    for (const auto& [reason, count] : dropped_by_reason) n += count;
    return n;
}

IngestResult ingest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::FileNotFound, "cannot open '" + path.string() + "'");
    return ingest(in);
}

IngestResult ingest(std::istream& in) {
    IngestResult out;
    std::string line;
    bool have_header = false;
    std::unordered_set<std::string> seen;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto row = csv::parse_line(line);
        if (!have_header) {
            bool ok = row.size() == kRecordColumns.size();
            for (std::size_t i = 0; ok && i < row.size(); ++i) ok = row[i] == kRecordColumns[i];
            if (!ok) fail(ErrorKind::MalformedHeader, "records header does not match the expected columns");
            have_header = true;
            continue;
        }
        ++out.report.input_rows;
        // The first occurrence of an id claims it even if that row is dropped.
        if (!row.empty() && !row[0].empty() && !seen.insert(row[0]).second) {
            ++out.report.dropped_by_reason["duplicate_record_id"];
            continue;
        }
        try {
            auto rec = parse_record(row);
            if (const auto why = record_violation(rec)) {
                ++out.report.dropped_by_reason[*why];
                continue;
            }
            out.records.push_back(std::move(rec));
        } catch (const RowError& e) {
            ++out.report.dropped_by_reason[e.reason];
        }
    }
    if (!have_header) fail(ErrorKind::MalformedHeader, "records file has no header");
    out.report.emitted = out.records.size();
    return out;
}

void write_records(std::ostream& out, std::span<const SurgicalRecord> records) {
    csv::write_row(out, csv::Row(kRecordColumns.begin(), kRecordColumns.end()));
    for (const auto& r : records) {
        csv::write_row(out, {r.record_id, r.specialty, std::string(to_string(r.patient_class)),
                             r.urgency ? std::to_string(*r.urgency) : "", format_date(r.request_date),
                             r.surgery_date ? format_date(*r.surgery_date) : "",
                             r.duration_hours ? csv::format_exact(*r.duration_hours) : "",
                             r.cancelled ? "true" : "false", r.cancellation_code.value_or("")});
    }
    if (!out) fail(ErrorKind::WriteError, "failed writing records");
}

void write_records(const std::filesystem::path& path, std::span<const SurgicalRecord> records) {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::WriteError, "cannot open '" + path.string() + "' for writing");
    write_records(out, records);
    out.close();
    if (!out) fail(ErrorKind::WriteError, "failed writing '" + path.string() + "'");
}

std::vector<CleanedSample> duration_samples(std::span<const SurgicalRecord> records) {
    std::map<std::pair<PatientClass, std::string>, std::vector<double>> groups;
    for (const auto& r : records) {
        if (r.cancelled || !r.duration_hours) continue;
        groups[{r.patient_class, r.specialty}].push_back(*r.duration_hours);
    }
    std::vector<CleanedSample> out;
    out.reserve(groups.size());
    for (const auto& [key, values] : groups) out.push_back(clean_durations(key.second, key.first, values));
    return out;
}

}  // namespace surgstat
