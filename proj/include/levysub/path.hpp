#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace levysub {

/// Explicit jump representation: strictly increasing jump times inside
/// (0, horizon), positive sizes, plus a linear drift.
struct JumpList {
    std::vector<double> times;
    std::vector<double> sizes;
    double drift = 0.0;
};

/// Grid representation: S accumulates `increments[i]` at the right endpoint
/// of the i-th cell of width `step`. Resolution of jump times is `step`.
struct GridIncrements {
    double step = 0.0;
    std::vector<double> increments;
};

/// One simulated subordinator trajectory on [0, horizon]. If kill_time is
/// set and <= horizon, evaluation at or beyond it yields +infinity.
struct SubordinatorPath {
    double horizon = 0.0;
    std::variant<JumpList, GridIncrements> repr;
    std::optional<double> kill_time;

    bool killed_within_horizon() const { return kill_time && *kill_time <= horizon; }
};

/// Right-continuous evaluation S(s).
inline double evaluate(const SubordinatorPath& path, double s) {
    if (!(s >= 0.0) || s > path.horizon * (1.0 + 1e-12) + 1e-300)
        throw std::domain_error("evaluate: time outside [0, horizon]");
    if (path.kill_time && s >= *path.kill_time)
        return std::numeric_limits<double>::infinity();
    if (const auto* jl = std::get_if<JumpList>(&path.repr)) {
        double value = jl->drift * s;
        for (std::size_t i = 0; i < jl->times.size() && jl->times[i] <= s; ++i)
            value += jl->sizes[i];
        return value;
    }
    const auto& grid = std::get<GridIncrements>(path.repr);
    const auto cells = static_cast<std::size_t>(
        std::min(std::floor(s / grid.step + 1e-9), static_cast<double>(grid.increments.size())));
    double value = 0.0;
    for (std::size_t i = 0; i < cells; ++i) value += grid.increments[i];
    return value;
}

}  // namespace levysub
