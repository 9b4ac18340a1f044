#pragma once

#include "transformloc/world.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace transformloc {

/// Which BMAVs each AMAV serves during one command interval.
struct GroupAssignment {
    /// groups[j] lists the BMAV indices served by AMAV j, ascending.
    std::vector<std::vector<std::size_t>> groups;
    /// region_of[i] is the AMAV whose Voronoi cell contains BMAV i.
    std::vector<std::size_t> region_of;
    /// fallback[j] is set when AMAV j's own cell was empty and it was handed
    /// the whole swarm instead.
    std::vector<bool> fallback;
    long epoch_start = 0;
    int duration = 1;
};

/// Index of the nearest AMAV (lowest index on exact ties).
std::size_t region_boundary_check(std::span<const Vec2> amav_positions, const Vec2 &point);

/// Nearest-AMAV grouping. An AMAV whose cell holds no BMAV is assigned every
/// BMAV. Throws std::invalid_argument for an empty AMAV list.
GroupAssignment assign_groups(std::span<const Vec2> amav_positions, std::span<const Vec2> bmav_positions,
                              long epoch_start = 0, int duration = 1);

}  // namespace transformloc
