#include "surgstat/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "surgstat/detail/parallel.hpp"
#include "surgstat/error.hpp"
#include "surgstat/rng.hpp"

namespace surgstat {

void MasterSchedule::validate() const {
    if (blocks.empty()) return;
    require(n_operating_rooms >= 1, "a schedule with blocks needs at least one operating room");
    for (const auto& b : blocks) {
        require(std::isfinite(b.length_hours) && b.length_hours > 0.0,
                "block length must be positive (specialty '" + b.specialty + "')");
        if (b.operating_room) {
            require(*b.operating_room < n_operating_rooms,
                    "block operating room out of range (specialty '" + b.specialty + "')");
        }
    }
}

std::vector<std::size_t> MasterSchedule::operating_rooms() const {
    std::array<std::size_t, 7> next{};
    std::vector<std::size_t> rooms(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const auto& b = blocks[i];
        if (b.operating_room) {
            rooms[i] = *b.operating_room;
        } else {
            rooms[i] = next[index(b.day)]++ % std::max<std::size_t>(n_operating_rooms, 1);
        }
    }
    return rooms;
}

void DurationTable::set(std::string specialty, PatientClass c, LognormalParams params) {
    table_.insert_or_assign({std::move(specialty), c}, params);
}

const LognormalParams* DurationTable::find(const std::string& specialty, PatientClass c) const {
    const auto it = table_.find({specialty, c});
    return it == table_.end() ? nullptr : &it->second;
}

const LognormalParams& DurationTable::at(const std::string& specialty, PatientClass c) const {
    if (const auto* p = find(specialty, c)) return *p;
    fail(ErrorKind::MissingParams, "no " + std::string(to_string(c)) + " duration parameters for '" + specialty + "'");
}

DurationTable DurationTable::from_fixture(const Fixture& fx) {
    DurationTable t;
    for (const auto& row : fx.durations) t.set(row.specialty, row.patient_class, row.params);
    return t;
}

std::string_view to_string(CancellationCause c) noexcept {
    switch (c) {
        case CancellationCause::waitlist: return "patient_waitlist";
        case CancellationCause::patient_day_of: return "patient_day_of";
        case CancellationCause::or_breakdown: return "or_breakdown";
        case CancellationCause::surgeon_leave: return "surgeon_leave";
        case CancellationCause::anaesthetist_leave: return "anaesthetist_leave";
    }
    return "unknown";
}

namespace {

double lognormal_draw(const LognormalParams& p, std::normal_distribution<double>& z, Rng& rng) {
    if (p.degenerate()) return std::exp(p.mu);
    return std::exp(p.mu + std::sqrt(p.sigma2) * z(rng));
}

struct Replicate {
    double overtime_hours = 0.0;
    std::array<double, kAllCauses.size()> cancelled{};
};

}  // namespace

SimOutcome simulate_week(const MasterSchedule& schedule, const DurationTable& durations,
                         std::span<const RateSchedule> rate_schedules, const CancellationModel& cancel_model,
                         const SimOptions& options) {
    schedule.validate();
    cancel_model.validate();
    require(options.replicates >= 1, "simulation needs at least one replicate");

    std::vector<const LognormalParams*> params;
    params.reserve(schedule.blocks.size());
    for (const auto& b : schedule.blocks) params.push_back(&durations.at(b.specialty, b.patient_class));

    const auto rooms = schedule.operating_rooms();
    const std::size_t n_blocks = schedule.blocks.size();
    const std::size_t R = options.replicates;

    std::set<std::string> names;
    for (const auto& b : schedule.blocks) names.insert(b.specialty);
    for (const auto& s : rate_schedules) names.insert(s.specialty);
    const std::vector<std::string> specialties(names.begin(), names.end());
    auto specialty_index = [&](const std::string& s) {
        return static_cast<std::size_t>(std::lower_bound(specialties.begin(), specialties.end(), s) -
                                        specialties.begin());
    };
    std::vector<std::size_t> block_spec(n_blocks), sched_spec(rate_schedules.size());
    for (std::size_t i = 0; i < n_blocks; ++i) block_spec[i] = specialty_index(schedule.blocks[i].specialty);
    for (std::size_t i = 0; i < rate_schedules.size(); ++i) sched_spec[i] = specialty_index(rate_schedules[i].specialty);
    const std::size_t n_spec = specialties.size();

    std::vector<Replicate> reps(R);
    std::vector<std::uint8_t> overtime(R * n_blocks, 0);
    std::vector<double> unmet(R * n_spec, 0.0);

    detail::parallel_for(R, options.parallelism.workers, [&](std::size_t begin, std::size_t end) {
        std::vector<double> demand(n_spec), completed(n_spec);
        std::vector<std::uint8_t> broken;
        for (std::size_t r = begin; r < end; ++r) {
            Rng rng = Rng::substream(options.seed, r);
            std::normal_distribution<double> z;
            Replicate& rep = reps[r];
            std::fill(demand.begin(), demand.end(), 0.0);
            std::fill(completed.begin(), completed.end(), 0.0);

            for (std::size_t s = 0; s < rate_schedules.size(); ++s) {
                const auto& sched = rate_schedules[s];
                const bool elective = patient_class_of(sched.category) == PatientClass::elective;
                for (Day d : kWeek) {
                    const std::uint64_t k = generate_requests(sched, d, rng);
                    const std::uint64_t w = elective ? cancellations(k, cancel_model.p_patient_waitlist, rng) : 0;
                    rep.cancelled[0] += static_cast<double>(w);
                    demand[sched_spec[s]] += static_cast<double>(k - w);
                }
            }

            broken.assign(7 * schedule.n_operating_rooms, 0);
            for (auto& b : broken) b = rng.bernoulli(cancel_model.p_or_breakdown) ? 1 : 0;

            for (std::size_t i = 0; i < n_blocks; ++i) {
                const auto& blk = schedule.blocks[i];
                const double n = static_cast<double>(blk.n_assigned);
                bool surgeon_away = false;
                for (std::size_t k = 0; k < blk.n_surgeons; ++k) {
                    surgeon_away = rng.bernoulli(cancel_model.p_surgeon_leave) || surgeon_away;
                }
                bool anaesthetist_away = false;
                for (std::size_t k = 0; k < blk.n_anaesthetists; ++k) {
                    anaesthetist_away = rng.bernoulli(cancel_model.p_anaesthetist_leave) || anaesthetist_away;
                }
                if (broken[index(blk.day) * schedule.n_operating_rooms + rooms[i]]) {
                    rep.cancelled[2] += n;
                    continue;
                }
                if (surgeon_away) {
                    rep.cancelled[3] += n;
                    continue;
                }
                if (anaesthetist_away) {
                    rep.cancelled[4] += n;
                    continue;
                }
                std::uint64_t operated = blk.n_assigned;
                if (blk.patient_class == PatientClass::elective) {
                    const std::uint64_t c = cancellations(operated, cancel_model.p_patient_day_of, rng);
                    rep.cancelled[1] += static_cast<double>(c);
                    operated -= c;
                }
                double total = 0.0;
                for (std::uint64_t k = 0; k < operated; ++k) total += lognormal_draw(*params[i], z, rng);
                completed[block_spec[i]] += static_cast<double>(operated);
                if (total > blk.length_hours) {
                    overtime[r * n_blocks + i] = 1;
                    rep.overtime_hours += total - blk.length_hours;
                }
            }
            for (std::size_t s = 0; s < n_spec; ++s) unmet[r * n_spec + s] = std::max(0.0, demand[s] - completed[s]);
        }
    });

    // Reduce in replicate order so the sums do not depend on the partitioning.
    SimOutcome out;
    out.replicates = R;
    out.seed = options.seed;
    const double inv = 1.0 / static_cast<double>(R);
    std::vector<double> ot_count(n_blocks, 0.0), unmet_sum(n_spec, 0.0);
    std::array<double, kAllCauses.size()> cancel_sum{};
    double ot_hours = 0.0;
    for (std::size_t r = 0; r < R; ++r) {
        ot_hours += reps[r].overtime_hours;
        for (std::size_t c = 0; c < cancel_sum.size(); ++c) cancel_sum[c] += reps[r].cancelled[c];
        for (std::size_t i = 0; i < n_blocks; ++i) ot_count[i] += overtime[r * n_blocks + i];
        for (std::size_t s = 0; s < n_spec; ++s) unmet_sum[s] += unmet[r * n_spec + s];
    }
    out.overtime_probability_per_block.resize(n_blocks);
    for (std::size_t i = 0; i < n_blocks; ++i) out.overtime_probability_per_block[i] = ot_count[i] * inv;
    out.expected_overtime_hours = ot_hours * inv;
    for (std::size_t c = 0; c < kAllCauses.size(); ++c) {
        out.expected_cancellations_by_cause[std::string(to_string(kAllCauses[c]))] = cancel_sum[c] * inv;
    }
    for (std::size_t s = 0; s < n_spec; ++s) out.unmet_demand_by_specialty[specialties[s]] = unmet_sum[s] * inv;
    return out;
}

namespace {

std::string record_id(std::size_t n) {
    std::string digits = std::to_string(n);
    if (digits.size() < 8) digits.insert(0, 8 - digits.size(), '0');
    return "S" + digits;
}

}  // namespace

SyntheticDataset generate_dataset(const DurationTable& durations, std::span<const RateSchedule> rate_schedules,
                                  const CancellationModel& cancel_model, const GenerateOptions& options) {
    require(options.weeks >= 1, "generate_dataset needs at least one week");
    cancel_model.validate();
    std::vector<const LognormalParams*> params;
    for (const auto& s : rate_schedules) params.push_back(&durations.at(s.specialty, patient_class_of(s.category)));

    const std::size_t S = rate_schedules.size();
    SyntheticDataset out;
    out.tallies.reserve(options.weeks * S);
    std::vector<std::array<std::vector<SurgicalRecord>, 7>> buffers(S);
    std::size_t next_id = 1;

    for (std::size_t w = 0; w < options.weeks; ++w) {
        const Date week_start = options.start + std::chrono::days(7 * static_cast<long long>(w));
        for (std::size_t s = 0; s < S; ++s) {
            const auto& sched = rate_schedules[s];
            const PatientClass cls = patient_class_of(sched.category);
            const auto target = target_days(sched.category);
            Rng rng = Rng::substream(options.seed, static_cast<std::uint64_t>(w) * S + s);
            std::normal_distribution<double> z;
            GenerationTally tally{sched.specialty, sched.category, w, 0, 0, 0};
            for (int d = 0; d < 7; ++d) {
                auto& bucket = buffers[s][d];
                bucket.clear();
                const Date date = week_start + std::chrono::days(d);
                const std::uint64_t k = generate_requests(sched, day_of_week(date), rng);
                tally.requested += k;
                for (std::uint64_t i = 0; i < k; ++i) {
                    SurgicalRecord rec;
                    rec.specialty = sched.specialty;
                    rec.patient_class = cls;
                    rec.request_date = date;
                    if (cls == PatientClass::elective) {
                        if (rng.bernoulli(cancel_model.p_patient_waitlist)) {
                            ++tally.waitlist_cancelled;
                            continue;
                        }
                        rec.urgency = urgency_number(sched.category);
                        const auto wait = 1 + static_cast<long long>(rng.below(static_cast<std::uint64_t>(*target)));
                        rec.surgery_date = date + std::chrono::days(wait);
                        if (rng.bernoulli(cancel_model.p_patient_day_of)) {
                            rec.cancelled = true;
                            rec.cancellation_code = kDayOfSurgeryCode;
                        }
                    } else {
                        rec.surgery_date = date + std::chrono::days(static_cast<long long>(rng.below(2)));
                    }
                    if (!rec.cancelled) rec.duration_hours = lognormal_draw(*params[s], z, rng);
                    bucket.push_back(std::move(rec));
                    ++tally.emitted;
                }
            }
            out.tallies.push_back(std::move(tally));
        }
        // Emit in request-date order, schedules in input order within a day.
        for (int d = 0; d < 7; ++d) {
            for (std::size_t s = 0; s < S; ++s) {
                for (auto& rec : buffers[s][d]) {
                    rec.record_id = record_id(next_id++);
                    out.records.push_back(std::move(rec));
                }
            }
        }
    }
    return out;
}

SyntheticWorld synthetic_world(const Fixture& fx, double weekend_fraction) {
    DemandRow totals;
    if (fx.demand_printed_total) {
        totals = *fx.demand_printed_total;
    } else {
        for (const auto& r : fx.demand) {
            totals.cat1 += r.cat1;
            totals.cat2 += r.cat2;
            totals.cat3 += r.cat3;
            totals.non_elective += r.non_elective;
        }
    }
    const double cat_sum = totals.cat1 + totals.cat2 + totals.cat3;
    require(cat_sum > 0.0, "demand table has no elective requests");
    const std::array<double, 3> share = {totals.cat1 / cat_sum, totals.cat2 / cat_sum, totals.cat3 / cat_sum};

    double elective_count = 0.0, non_elective_count = 0.0;
    for (const auto& row : fx.durations) {
        (row.patient_class == PatientClass::elective ? elective_count : non_elective_count) +=
            static_cast<double>(row.count);
    }

    SyntheticWorld world;
    world.durations = DurationTable::from_fixture(fx);
    for (const auto& row : fx.durations) {
        if (row.patient_class == PatientClass::elective) {
            const double weekly = cat_sum * static_cast<double>(row.count) / elective_count;
            for (std::size_t c = 0; c < 3; ++c) {
                const auto cat = kAllCategories[c];
                world.schedules.push_back(schedule_from_weekly_total(row.specialty, weekly * share[c], cat,
                                                                     default_pattern(cat), weekend_fraction));
            }
        } else {
            const double weekly = totals.non_elective * static_cast<double>(row.count) / non_elective_count;
            world.schedules.push_back(schedule_from_weekly_total(row.specialty, weekly, UrgencyCategory::non_elective,
                                                                 default_pattern(UrgencyCategory::non_elective),
                                                                 weekend_fraction));
        }
    }
    return world;
}

CapacityComparison compare_capacity_methods(const CapacitySource& source, double block_hours,
                                            const CapacityOptions& options, std::string specialty) {
    CapacityComparison out;
    out.bootstrap = max_patients(source, block_hours, CapacityMethod::bootstrap, options, specialty);
    out.approx = max_patients(source, block_hours, CapacityMethod::lognormal_approx, options, std::move(specialty));
    out.agree = out.bootstrap.max_patients == out.approx.max_patients;
    return out;
}

}  // namespace surgstat
