#include <pybind11/gil_safe_call_once.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "surgstat/demand.hpp"
#include "surgstat/distfit.hpp"
#include "surgstat/error.hpp"
#include "surgstat/fixture.hpp"
#include "surgstat/gof.hpp"
#include "surgstat/resample.hpp"
#include "surgstat/sim.hpp"

namespace py = pybind11;
using namespace surgstat;

namespace {

PatientClass parse_class(const std::string& s) {
    auto c = patient_class_from_string(s);
    if (!c) fail(ErrorKind::DomainError, "unknown patient class '" + s + "'");
    return *c;
}

Family parse_family(const std::string& s) {
    for (auto f : kAllFamilies) {
        if (to_string(f) == s) return f;
    }
    fail(ErrorKind::DomainError, "unknown family '" + s + "'");
}

py::dict report_dict(const TestReport& r) {
    py::dict d;
    d["test_name"] = r.test_name;
    d["statistic"] = r.statistic;
    d["p_value"] = r.p_value;
    d["n"] = r.n;
    d["notes"] = r.notes;
    d["degrees_of_freedom"] = r.degrees_of_freedom;
    d["simulated"] = r.simulated;
    d["replicates"] = r.replicates;
    return d;
}

py::dict fit_dict(const FitResult& f) {
    py::dict d;
    d["family"] = std::string(to_string(f.family));
    d["params"] = f.params;
    d["log_likelihood"] = f.log_likelihood;
    d["aic"] = f.aic;
    d["n"] = f.n;
    return d;
}

DurationSample sample_of(std::vector<double> x) {
    return DurationSample("sample", PatientClass::elective, std::move(x));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Surgical duration fitting, capacity and schedule simulation";

    // Library errors surface as SurgstatError("<Kind>: message").
    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
    error_type.call_once_and_store_result(
        [&] { return py::exception<Error>(m, "SurgstatError", PyExc_RuntimeError); });
    py::register_local_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            const std::string msg = std::string(to_string(e.kind())) + ": " + e.what();
            py::set_error(error_type.get_stored(), msg.c_str());
        }
    });

    m.def("lognormal_moments", [](double mu, double sigma2) {
        const auto mo = lognormal_moments({mu, sigma2});
        return py::make_tuple(mo.mean, mo.variance);
    }, py::arg("mu"), py::arg("sigma2"));

    m.def("fit_family", [](std::vector<double> x, const std::string& family) {
        return fit_dict(fit_family(sample_of(std::move(x)), parse_family(family)));
    }, py::arg("durations"), py::arg("family"));

    m.def("select_best", [](std::vector<double> x, std::size_t min_obs) -> py::object {
        const auto sel = select_best(sample_of(std::move(x)), min_obs);
        if (!sel.best) return py::none();
        py::list ranked;
        for (const auto& f : sel.ranked) ranked.append(fit_dict(f));
        return ranked;
    }, py::arg("durations"), py::arg("min_obs") = kDefaultMinObs,
       "Fits ranked by ascending AIC, or None below min_obs.");

    m.def("shapiro_wilk", [](const std::vector<double>& x) { return report_dict(shapiro_wilk(x)); });
    m.def("anderson_darling_normal", [](const std::vector<double>& x) { return report_dict(anderson_darling_normal(x)); });
    m.def("lilliefors", [](const std::vector<double>& x) { return report_dict(lilliefors(x)); });
    m.def("normality_test", [](const std::vector<double>& x) { return report_dict(normality_test(x)); });
    m.def("two_sample_t", [](const std::vector<double>& a, const std::vector<double>& b) {
        return report_dict(two_sample_t(a, b));
    });
    m.def("exact_multinomial", [](const std::vector<std::uint64_t>& counts, const std::vector<double>& probs,
                                  std::size_t mc_replicates, std::uint64_t seed) {
        return report_dict(exact_multinomial(counts, probs, {.mc_replicates = mc_replicates, .seed = seed}));
    }, py::arg("counts"), py::arg("probs"), py::arg("mc_replicates") = 100000, py::arg("seed") = 0);

    m.def("bootstrap_percentile", [](const std::vector<double>& x, std::size_t n, double q, std::size_t replicates,
                                     std::uint64_t seed, unsigned workers) {
        py::gil_scoped_release release;
        return bootstrap_percentile(x, n, q, replicates, seed, Parallelism{workers});
    }, py::arg("durations"), py::arg("n_patients"), py::arg("q") = 0.95, py::arg("replicates") = kDefaultReplicates,
       py::arg("seed") = 0, py::arg("workers") = 1);

    m.def("lognormal_sum_percentile", [](double mu, double sigma2, std::size_t n, double q) {
        return lognormal_sum_percentile({mu, sigma2}, n, q);
    }, py::arg("mu"), py::arg("sigma2"), py::arg("n_patients"), py::arg("q") = 0.95);

    m.def("max_patients", [](double mu, double sigma2, double block_hours, const std::string& method, double alpha,
                             std::size_t replicates, std::uint64_t seed) {
        CapacityMethod cm;
        if (method == "bootstrap") cm = CapacityMethod::bootstrap;
        else if (method == "approx") cm = CapacityMethod::lognormal_approx;
        else fail(ErrorKind::DomainError, "method must be 'bootstrap' or 'approx'");
        py::gil_scoped_release release;
        return max_patients(LognormalParams{mu, sigma2}, block_hours, cm,
                            {.alpha = alpha, .replicates = replicates, .seed = seed})
            .max_patients;
    }, py::arg("mu"), py::arg("sigma2"), py::arg("block_hours"), py::arg("method") = "approx",
       py::arg("alpha") = kDefaultAlpha, py::arg("replicates") = kDefaultReplicates, py::arg("seed") = 0);

    m.def("breakdown_day_probability", &breakdown_day_probability, py::arg("breakdown_days"),
          py::arg("observation_days"), py::arg("operating_rooms") = 1.0);

    m.def("fixture_durations", [] {
        py::list rows;
        for (const auto& r : Fixture::builtin().durations) {
            py::dict d;
            d["specialty"] = r.specialty;
            d["patient_class"] = std::string(to_string(r.patient_class));
            d["count"] = r.count;
            d["p_value"] = r.p_value;
            d["mean"] = r.mean;
            d["variance"] = r.variance;
            d["mu"] = r.params.mu;
            d["sigma2"] = r.params.sigma2;
            rows.append(d);
        }
        return rows;
    });

    m.def("simulate_week", [](const std::vector<py::dict>& blocks, std::size_t n_operating_rooms,
                              std::size_t replicates, std::uint64_t seed, unsigned workers) {
        MasterSchedule schedule;
        schedule.n_operating_rooms = n_operating_rooms;
        for (const auto& b : blocks) {
            Block blk;
            blk.specialty = b["specialty"].cast<std::string>();
            const auto day = day_from_string(b["day"].cast<std::string>());
            if (!day) fail(ErrorKind::MalformedInput, "block day must be one of Mon..Sun");
            blk.day = *day;
            blk.n_assigned = b["n_assigned"].cast<std::size_t>();
            if (b.contains("length_hours")) blk.length_hours = b["length_hours"].cast<double>();
            if (b.contains("patient_class")) blk.patient_class = parse_class(b["patient_class"].cast<std::string>());
            schedule.blocks.push_back(std::move(blk));
        }
        const auto world = synthetic_world(Fixture::builtin());
        SimOutcome out;
        {
            py::gil_scoped_release release;
            out = simulate_week(schedule, world.durations, world.schedules, CancellationModel{},
                                {.replicates = replicates, .seed = seed, .parallelism = {workers}});
        }
        py::dict d;
        d["overtime_probability_per_block"] = out.overtime_probability_per_block;
        d["expected_overtime_hours"] = out.expected_overtime_hours;
        d["expected_cancellations_by_cause"] = out.expected_cancellations_by_cause;
        d["unmet_demand_by_specialty"] = out.unmet_demand_by_specialty;
        return d;
    }, py::arg("blocks"), py::arg("n_operating_rooms") = 1, py::arg("replicates") = kDefaultReplicates,
       py::arg("seed") = 0, py::arg("workers") = 1,
       "Simulates a week using the built-in tables; blocks are dicts with specialty, day, n_assigned.");
}
