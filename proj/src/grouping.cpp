#include "transformloc/grouping.hpp"

#include <stdexcept>

namespace transformloc {

std::size_t region_boundary_check(std::span<const Vec2> amav_positions, const Vec2 &point) {
    if (amav_positions.empty()) {
        throw std::invalid_argument("region_boundary_check: no AMAVs");
    }
    std::size_t best = 0;
    double best_d2 = (amav_positions[0] - point).squaredNorm();
    for (std::size_t j = 1; j < amav_positions.size(); ++j) {
        const double d2 = (amav_positions[j] - point).squaredNorm();
        if (d2 < best_d2) {
            best = j;
            best_d2 = d2;
        }
    }
    return best;
}

GroupAssignment assign_groups(std::span<const Vec2> amav_positions, std::span<const Vec2> bmav_positions,
                              long epoch_start, int duration) {
    if (amav_positions.empty()) {
        throw std::invalid_argument("assign_groups: at least one AMAV is required");
    }
    GroupAssignment out;
    out.epoch_start = epoch_start;
    out.duration = duration;
    out.groups.resize(amav_positions.size());
    out.fallback.assign(amav_positions.size(), false);
    out.region_of.reserve(bmav_positions.size());

    for (std::size_t i = 0; i < bmav_positions.size(); ++i) {
        const std::size_t j = region_boundary_check(amav_positions, bmav_positions[i]);
        out.region_of.push_back(j);
        out.groups[j].push_back(i);
    }

    // An AMAV with an empty cell serves everyone for this interval.
    for (std::size_t j = 0; j < out.groups.size(); ++j) {
        if (out.groups[j].empty() && !bmav_positions.empty()) {
            out.fallback[j] = true;
            for (std::size_t i = 0; i < bmav_positions.size(); ++i) {
                out.groups[j].push_back(i);
            }
        }
    }
    return out;
}

}  // namespace transformloc
