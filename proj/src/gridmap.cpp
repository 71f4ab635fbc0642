// SPDX-License-Identifier: Apache-2.0
//
// hydrolink - underwater acoustic link simulation and target detection

#include "hydro/gridmap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "hydro/dsp.hpp"
#include "hydro/io.hpp"

#include "json.hpp"

namespace hydro {

namespace {

std::size_t axis_count(double lo, double hi, double step) {
    return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

constexpr char kGridMagic[4] = {'H', 'G', 'R', 'D'};
constexpr std::uint32_t kGridVersion = 1;

} // namespace

std::size_t LatticeSpec::n_range() const {
    return axis_count(range_min, range_max, range_step);
}

std::size_t LatticeSpec::n_depth() const {
    return axis_count(depth_min, depth_max, depth_step);
}

void LatticeSpec::validate() const {
    if (range_min < 0.0 || depth_min < 0.0)
        throw DomainError("lattice: min coordinates must be nonnegative");
    if (!(range_step > 0.0) || !(depth_step > 0.0))
        throw DomainError("lattice: steps must be positive");
    if (range_max < range_min || depth_max < depth_min)
        throw DomainError("lattice: max must be >= min");
}

void GridSpec::validate() const {
    lattice.validate();
    if (source_depths.empty())
        throw DomainError("grid spec: at least one source depth required");
    if (!std::is_sorted(source_depths.begin(), source_depths.end()))
        throw DomainError("grid spec: source depths must ascend");
    if (source_depths.size() > 2) {
        const double step = source_depths[1] - source_depths[0];
        for (std::size_t i = 2; i < source_depths.size(); ++i)
            if (std::abs(source_depths[i] - source_depths[i - 1] - step) > 1e-9)
                throw DomainError("grid spec: source depths must be uniformly spaced");
    }
}

double GridSpec::source_depth_step() const {
    return source_depths.size() >= 2 ? source_depths[1] - source_depths[0] : 0.0;
}

GridMap build_gridmap(const Environment &env, double source_depth, const LatticeSpec &lattice,
                      unsigned max_bounces) {
    env.validate();
    lattice.validate();
    if (source_depth < 0.0 || source_depth > env.water_depth)
        throw DomainError("source depth outside waveguide");

    GridMap map;
    map.source_depth = source_depth;
    map.lattice = lattice;
    map.env = env;
    map.max_bounces = max_bounces;

    const std::size_t nr = lattice.n_range();
    const std::size_t nd = lattice.n_depth();
    map.cells.resize(nr * nd);

    dsp::parallel_for(nr * nd, [&](std::size_t idx) {
        const std::size_t ir = idx / nd;
        const std::size_t id = idx % nd;
        const double r = lattice.range_at(ir);
        const double z = lattice.depth_at(id);
        if (r == 0.0 && z == source_depth)
            return; // degenerate cell, left empty and recorded below
        map.cells[idx] = compute_arrivals_rz(env, source_depth, z, r, max_bounces);
    });

    for (std::size_t ir = 0; ir < nr; ++ir)
        for (std::size_t id = 0; id < nd; ++id)
            if (map.cells[ir * nd + id].empty())
                map.degenerate_cells.emplace_back(ir, id);
    return map;
}

void save_gridmap(const GridMap &map, const std::filesystem::path &path) {
    io::Writer w;
    w.magic(kGridMagic);
    w.u32(kGridVersion);
    w.f64(map.env.water_depth);
    w.f64(map.env.sound_speed);
    w.c128(map.env.surface_reflection);
    w.c128(map.env.bottom_reflection);
    w.f64(map.source_depth);
    w.f64(map.lattice.range_min);
    w.f64(map.lattice.range_max);
    w.f64(map.lattice.range_step);
    w.f64(map.lattice.depth_min);
    w.f64(map.lattice.depth_max);
    w.f64(map.lattice.depth_step);
    w.u32(map.max_bounces);
    w.u32(static_cast<std::uint32_t>(map.lattice.n_range()));
    w.u32(static_cast<std::uint32_t>(map.lattice.n_depth()));
    for (const auto &cell : map.cells) {
        w.u32(static_cast<std::uint32_t>(cell.size()));
        for (const auto &a : cell) {
            w.f64(a.delay);
            w.c128(a.amplitude);
            w.f64(a.departure_angle);
            w.f64(a.incident_angle);
            w.u16(a.surface_bounces);
            w.u16(a.bottom_bounces);
        }
    }
    const std::uint32_t crc = dsp::crc32(w.bytes().data(), w.bytes().size());
    w.u32(crc);
    io::atomic_write(path, w.bytes().data(), w.bytes().size());
}

GridMap load_gridmap(const std::filesystem::path &path) {
    const auto buf = io::read_file(path);
    io::Reader r(buf);
    r.expect_magic(kGridMagic, "grid map");
    const std::uint32_t version = r.u32();
    if (version != kGridVersion)
        throw VersionError("grid map: unsupported version " + std::to_string(version));

    GridMap map;
    map.env.water_depth = r.f64();
    map.env.sound_speed = r.f64();
    map.env.surface_reflection = r.c128();
    map.env.bottom_reflection = r.c128();
    map.source_depth = r.f64();
    map.lattice.range_min = r.f64();
    map.lattice.range_max = r.f64();
    map.lattice.range_step = r.f64();
    map.lattice.depth_min = r.f64();
    map.lattice.depth_max = r.f64();
    map.lattice.depth_step = r.f64();
    map.max_bounces = r.u32();
    const std::size_t nr = r.u32();
    const std::size_t nd = r.u32();
    if (nr != map.lattice.n_range() || nd != map.lattice.n_depth())
        throw FormatError("grid map: cell counts disagree with lattice spec");

    map.cells.resize(nr * nd);
    for (auto &cell : map.cells) {
        const std::uint32_t count = r.u32();
        cell.resize(count);
        for (auto &a : cell) {
            a.delay = r.f64();
            a.amplitude = r.c128();
            a.departure_angle = r.f64();
            a.incident_angle = r.f64();
            a.surface_bounces = r.u16();
            a.bottom_bounces = r.u16();
        }
    }
    const std::size_t payload_end = r.pos();
    const std::uint32_t stored = r.u32();
    if (r.remaining() != 0)
        throw FormatError("grid map: trailing bytes after checksum");
    const std::uint32_t computed = dsp::crc32(buf.data(), payload_end);
    if (stored != computed)
        throw ChecksumError("grid map: checksum mismatch");

    for (std::size_t ir = 0; ir < nr; ++ir)
        for (std::size_t id = 0; id < nd; ++id)
            if (map.cells[ir * nd + id].empty())
                map.degenerate_cells.emplace_back(ir, id);
    return map;
}

GridMapSet::GridMapSet(std::vector<GridMap> maps) : maps_(std::move(maps)) {
    std::sort(maps_.begin(), maps_.end(),
              [](const GridMap &a, const GridMap &b) { return a.source_depth < b.source_depth; });
}

GridMapSet GridMapSet::build(const Environment &env, const GridSpec &spec, unsigned max_bounces) {
    spec.validate();
    std::vector<GridMap> maps;
    maps.reserve(spec.source_depths.size());
    for (double d : spec.source_depths)
        maps.push_back(build_gridmap(env, d, spec.lattice, max_bounces));
    return GridMapSet(std::move(maps));
}

void GridMapSet::save(const std::filesystem::path &dir) const {
    std::filesystem::create_directories(dir);
    nlohmann::json manifest;
    manifest["format"] = "hydrolink-gridmap-set";
    manifest["version"] = 1;
    auto depths = nlohmann::json::array();
    auto files = nlohmann::json::array();
    for (std::size_t i = 0; i < maps_.size(); ++i) {
        char name[64];
        std::snprintf(name, sizeof name, "map_%03zu.hgrd", i);
        save_gridmap(maps_[i], dir / name);
        depths.push_back(maps_[i].source_depth);
        files.push_back(name);
    }
    manifest["source_depths"] = depths;
    manifest["files"] = files;
    io::atomic_write(dir / "manifest.json", manifest.dump(2) + "\n");
}

GridMapSet GridMapSet::load(const std::filesystem::path &manifest_or_dir) {
    auto path = manifest_or_dir;
    if (std::filesystem::is_directory(path))
        path /= "manifest.json";
    const auto buf = io::read_file(path);
    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(buf.begin(), buf.end());
    } catch (const nlohmann::json::parse_error &e) {
        throw FormatError(std::string("manifest: ") + e.what());
    }
    if (manifest.value("format", "") != "hydrolink-gridmap-set")
        throw FormatError("manifest: unrecognized format field");
    std::vector<GridMap> maps;
    for (const auto &name : manifest.at("files"))
        maps.push_back(load_gridmap(path.parent_path() / name.get<std::string>()));
    return GridMapSet(std::move(maps));
}

const GridMap &GridMapSet::nearest(double source_depth) const {
    if (maps_.empty())
        throw ConfigError("grid map set is empty");
    const GridMap *best = &maps_.front();
    double best_dist = std::abs(maps_.front().source_depth - source_depth);
    for (const auto &m : maps_) {
        const double d = std::abs(m.source_depth - source_depth);
        if (d < best_dist - 1e-12) { // strict improvement keeps the shallower map on ties
            best = &m;
            best_dist = d;
        }
    }
    return *best;
}

} // namespace hydro
