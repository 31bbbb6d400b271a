#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace surgstat {

enum class PatientClass { elective, non_elective };

enum class Day { mon, tue, wed, thu, fri, sat, sun };

inline constexpr std::array<Day, 7> kWeek = {Day::mon, Day::tue, Day::wed, Day::thu,
                                             Day::fri, Day::sat, Day::sun};

std::string_view to_string(PatientClass c) noexcept;
std::optional<PatientClass> patient_class_from_string(std::string_view s);

std::string_view to_string(Day d) noexcept;
std::optional<Day> day_from_string(std::string_view s);

constexpr std::size_t index(Day d) noexcept { return static_cast<std::size_t>(d); }

}  // namespace surgstat
