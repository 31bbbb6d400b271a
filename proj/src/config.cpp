#include "surgstat/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "surgstat/error.hpp"

namespace surgstat {

using nlohmann::json;

void RunConfig::validate() const {
    auto check = [](bool ok, const char* field) {
        if (!ok) fail(ErrorKind::DomainError, std::string("config field '") + field + "' outside its domain");
    };
    check(min_obs >= 2, "min_obs");
    check(bootstrap_replicates >= 1, "bootstrap_replicates");
    check(alpha > 0.0 && alpha < 1.0, "alpha");
    check(std::isfinite(block_hours.half_day) && block_hours.half_day > 0.0, "block_hours.half_day");
    check(std::isfinite(block_hours.full_day) && block_hours.full_day > 0.0, "block_hours.full_day");
    check(weekend_fraction >= 0.0 && weekend_fraction <= 1.0, "weekend_fraction");
    check(mc_fallback_replicates >= 1, "mc_fallback_replicates");
}

RunConfig RunConfig::from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorKind::MalformedInput, std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) fail(ErrorKind::MalformedInput, "config must be a JSON object");

    RunConfig c;
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "min_obs") {
                c.min_obs = value.get<std::size_t>();
            } else if (key == "bootstrap_replicates") {
                c.bootstrap_replicates = value.get<std::size_t>();
            } else if (key == "alpha") {
                c.alpha = value.get<double>();
            } else if (key == "block_hours") {
                if (!value.is_object()) fail(ErrorKind::MalformedInput, "block_hours must be an object");
                for (const auto& [bk, bv] : value.items()) {
                    if (bk == "half_day") {
                        c.block_hours.half_day = bv.get<double>();
                    } else if (bk == "full_day") {
                        c.block_hours.full_day = bv.get<double>();
                    } else {
                        fail(ErrorKind::MalformedInput, "unknown block_hours key '" + bk + "'");
                    }
                }
            } else if (key == "weekend_fraction") {
                c.weekend_fraction = value.get<double>();
            } else if (key == "seed") {
                if (!value.is_null()) c.seed = value.get<std::uint64_t>();
            } else if (key == "mc_fallback_replicates") {
                c.mc_fallback_replicates = value.get<std::size_t>();
            } else {
                fail(ErrorKind::MalformedInput, "unknown config key '" + key + "'");
            }
        }
    } catch (const json::exception& e) {
        fail(ErrorKind::MalformedInput, std::string("config value has the wrong type: ") + e.what());
    }
    c.validate();
    return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::FileNotFound, "cannot open config '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

std::string RunConfig::to_json() const {
    json j = {{"min_obs", min_obs},
              {"bootstrap_replicates", bootstrap_replicates},
              {"alpha", alpha},
              {"block_hours", {{"half_day", block_hours.half_day}, {"full_day", block_hours.full_day}}},
              {"weekend_fraction", weekend_fraction},
              {"mc_fallback_replicates", mc_fallback_replicates}};
    j["seed"] = seed ? json(*seed) : json(nullptr);
    return j.dump(2);
}

}  // namespace surgstat
