#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace dltv {

enum class ScheduleKind { constant, decaying };

/// Exploration-bonus multiplier sequence c_t. The constant kind returns c at
/// every step; the decaying kind returns c * sqrt(log(t) / t).
struct Schedule {
    ScheduleKind kind = ScheduleKind::decaying;
    double c = 50.0;

    Schedule() = default;
    Schedule(ScheduleKind kind_, double c_) : kind(kind_), c(c_) {
        if (!(c > 0.0) || !std::isfinite(c))
            throw std::invalid_argument("Schedule: c must be finite and > 0");
    }

    static Schedule constant(double c) { return {ScheduleKind::constant, c}; }
    static Schedule decaying(double c) { return {ScheduleKind::decaying, c}; }
};

/// Value of the schedule at step t. Time is indexed from t = 1, where the
/// decaying kind yields 0 (log 1 = 0); t = 0 is rejected.
inline double schedule_value(const Schedule& schedule, std::int64_t t) {
    if (t < 1) throw std::invalid_argument("schedule_value: t must be >= 1");
    if (schedule.kind == ScheduleKind::constant) return schedule.c;
    const auto td = static_cast<double>(t);
    return schedule.c * std::sqrt(std::log(td) / td);
}

}  // namespace dltv
