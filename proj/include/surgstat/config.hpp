#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "surgstat/demand.hpp"
#include "surgstat/distfit.hpp"
#include "surgstat/resample.hpp"

namespace surgstat {

struct BlockHours {
    double half_day = kHalfDayHours;
    double full_day = kFullDayHours;
};

struct RunConfig {
    std::size_t min_obs = kDefaultMinObs;
    std::size_t bootstrap_replicates = kDefaultReplicates;
    double alpha = kDefaultAlpha;
    BlockHours block_hours;
    double weekend_fraction = kDefaultWeekendFraction;
    std::optional<std::uint64_t> seed;
    std::size_t mc_fallback_replicates = 100000;

    /// DomainError naming the first field outside its domain.
    void validate() const;

    /// JSON object with the fields above; absent keys keep their defaults,
    /// unknown keys are rejected (MalformedInput).
    static RunConfig from_json(std::string_view text);
    static RunConfig load(const std::filesystem::path& path);
    std::string to_json() const;
};

}  // namespace surgstat
