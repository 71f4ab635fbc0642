// SPDX-License-Identifier: Apache-2.0
//
// hydrolink - underwater acoustic link simulation and target detection

#pragma once

#include <cstddef>
#include <filesystem>
#include <utility>
#include <vector>

#include "hydro/geo.hpp"

namespace hydro {

/// Receiver lattice of one grid map: inclusive [min, max] in range and
/// depth at fixed steps. Range may start at 0; a lattice point coinciding
/// with the source produces an empty (degenerate) cell.
struct LatticeSpec {
    double range_min = 1.0;
    double range_max = 50.0;
    double range_step = 0.5;
    double depth_min = 0.0;
    double depth_max = 40.0;
    double depth_step = 0.5;

    std::size_t n_range() const;
    std::size_t n_depth() const;
    double range_at(std::size_t i) const { return range_min + static_cast<double>(i) * range_step; }
    double depth_at(std::size_t j) const { return depth_min + static_cast<double>(j) * depth_step; }
    void validate() const;
};

/// Full pre-computation request: one lattice shared by a set of uniformly
/// spaced source depths.
struct GridSpec {
    LatticeSpec lattice;
    std::vector<double> source_depths; // ascending, uniform spacing
    void validate() const;
    /// Source-depth spacing; 0 for a single depth.
    double source_depth_step() const;
};

/// Pre-computed arrival sets on the receiver lattice for one source depth.
/// Cells are row-major with range as the slow index.
struct GridMap {
    double source_depth = 0.0;
    LatticeSpec lattice;
    Environment env;
    unsigned max_bounces = 6;
    std::vector<ArrivalSet> cells;
    // lattice points coinciding with the source; their cells are empty
    std::vector<std::pair<std::size_t, std::size_t>> degenerate_cells;

    const ArrivalSet &cell(std::size_t range_idx, std::size_t depth_idx) const {
        return cells[range_idx * lattice.n_depth() + depth_idx];
    }
};

/// Fill every lattice cell via compute_arrivals with the source at range 0.
/// Cells are computed independently and in parallel; output is deterministic.
GridMap build_gridmap(const Environment &env, double source_depth, const LatticeSpec &lattice,
                      unsigned max_bounces);

/// Binary persistence, bit-exact round trip ("HGRD" format).
void save_gridmap(const GridMap &map, const std::filesystem::path &path);
GridMap load_gridmap(const std::filesystem::path &path);

/// A set of single-depth maps plus a JSON manifest, keyed by source depth.
class GridMapSet {
  public:
    GridMapSet() = default;
    explicit GridMapSet(std::vector<GridMap> maps);

    /// Build maps for every source depth in the spec.
    static GridMapSet build(const Environment &env, const GridSpec &spec, unsigned max_bounces);

    /// Write per-depth map files plus manifest.json into a directory.
    void save(const std::filesystem::path &dir) const;

    /// Load all maps listed by a manifest file (or a directory holding one).
    static GridMapSet load(const std::filesystem::path &manifest_or_dir);

    /// Map whose source depth is nearest to the query; ties resolve toward
    /// the shallower map. ConfigError when the set is empty.
    const GridMap &nearest(double source_depth) const;

    const std::vector<GridMap> &maps() const { return maps_; }
    bool empty() const { return maps_.empty(); }

  private:
    std::vector<GridMap> maps_; // ascending source depth
};

} // namespace hydro
