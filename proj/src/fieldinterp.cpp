// SPDX-License-Identifier: Apache-2.0
//
// hydrolink - underwater acoustic link simulation and target detection

#include "hydro/fieldinterp.hpp"

#include <algorithm>
#include <cmath>

namespace hydro {

namespace {

struct CellLocation {
    std::size_t ix = 0; // low range index
    std::size_t iz = 0; // low depth index
    double w1 = 0.0;    // fractional position along range
    double w2 = 0.0;    // fractional position along depth
};

std::size_t bracket(double v, double lo, double hi, double step, std::size_t n, const char *axis) {
    if (v < lo - 1e-9 || v > hi + 1e-9)
        throw OutOfBoundsError(std::string("receiver ") + axis + " outside lattice hull");
    if (n == 1)
        return 0;
    auto idx = static_cast<std::ptrdiff_t>(std::floor((v - lo) / step));
    idx = std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(n) - 2);
    return static_cast<std::size_t>(idx);
}

CellLocation locate(const LatticeSpec &lat, double range, double depth) {
    CellLocation loc;
    loc.ix = bracket(range, lat.range_min, lat.range_max, lat.range_step, lat.n_range(), "range");
    loc.iz = bracket(depth, lat.depth_min, lat.depth_max, lat.depth_step, lat.n_depth(), "depth");
    loc.w1 = lat.n_range() == 1 ? 0.0 : (range - lat.range_at(loc.ix)) / lat.range_step;
    loc.w2 = lat.n_depth() == 1 ? 0.0 : (depth - lat.depth_at(loc.iz)) / lat.depth_step;
    return loc;
}

std::array<double, 4> corner_weights(const CellLocation &loc) {
    const double w1 = loc.w1, w2 = loc.w2;
    // order: (low,low), (low,high), (high,low), (high,high)
    return {(1.0 - w1) * (1.0 - w2), (1.0 - w1) * w2, w1 * (1.0 - w2), w1 * w2};
}

bool arrival_before(const Arrival &a, const Arrival &b) {
    if (a.delay != b.delay)
        return a.delay < b.delay;
    if (a.total_bounces() != b.total_bounces())
        return a.total_bounces() < b.total_bounces();
    return a.surface_bounces < b.surface_bounces;
}

// Angle between the ray to the image source and the corner-to-receiver
// offset, per corner role: (1,1) low range/low depth ... (2,2) high/high.
// Only the cosine is needed; the four-case tables collapse to
//   cos(gamma_11) = -cos(theta+beta),  cos(gamma_12) = -cos(theta-beta),
//   cos(gamma_21) =  cos(theta-beta),  cos(gamma_22) =  cos(theta+beta),
// with beta = atan(|dz|/|dx|) in [0, pi/2].
double cos_gamma(int corner, double cos_t, double sin_t, double cos_b, double sin_b) {
    const double cos_sum = cos_t * cos_b - sin_t * sin_b;
    const double cos_diff = cos_t * cos_b + sin_t * sin_b;
    switch (corner) {
    case 0: return -cos_sum;  // low range, low depth
    case 1: return -cos_diff; // low range, high depth
    case 2: return cos_diff;  // high range, low depth
    default: return cos_sum;  // high range, high depth
    }
}

// Shared receiver-side interpolation over four (possibly source-adjusted)
// corner arrival lists.
InterpolatedField receiver_interp_core(const LatticeSpec &lat, const CellLocation &loc,
                                       const std::array<const ArrivalSet *, 4> &corner_arrivals,
                                       double range, double depth, double c, InterpMode mode) {
    InterpolatedField out;
    out.weights = corner_weights(loc);

    const std::array<double, 2> xs = {lat.range_at(loc.ix),
                                      lat.range_at(std::min(loc.ix + 1, lat.n_range() - 1))};
    const std::array<double, 2> zs = {lat.depth_at(loc.iz),
                                      lat.depth_at(std::min(loc.iz + 1, lat.n_depth() - 1))};

    for (int corner = 0; corner < 4; ++corner) {
        const double w = out.weights[corner];
        if (w == 0.0)
            continue;
        const double cx = xs[corner >> 1];
        const double cz = zs[corner & 1];
        const double dx = range - cx;
        const double dz = depth - cz;
        const double d2 = std::hypot(dx, dz);

        for (const Arrival &a : *corner_arrivals[corner]) {
            Arrival b = a;
            b.amplitude *= w;
            if (mode == InterpMode::PlaneWave) {
                // projection of the offset onto the propagation direction
                // (cos theta_i, -sin theta_i) in (range, depth)
                b.delay += (dx * std::cos(a.incident_angle) - dz * std::sin(a.incident_angle)) / c;
            } else if (d2 > 0.0) {
                const double d1 = c * a.delay;
                const double cg = cos_gamma(corner, std::cos(a.incident_angle),
                                            std::sin(a.incident_angle), std::abs(dx) / d2,
                                            std::abs(dz) / d2);
                const double d3 = std::sqrt(d1 * d1 + d2 * d2 - 2.0 * d1 * d2 * cg);
                b.delay += (d3 - d1) / c;
            }
            out.arrivals.push_back(b);
        }
    }
    std::sort(out.arrivals.begin(), out.arrivals.end(), arrival_before);
    return out;
}

std::array<const ArrivalSet *, 4> stored_corners(const GridMap &map, const CellLocation &loc) {
    const std::size_t ix2 = std::min(loc.ix + 1, map.lattice.n_range() - 1);
    const std::size_t iz2 = std::min(loc.iz + 1, map.lattice.n_depth() - 1);
    return {&map.cell(loc.ix, loc.iz), &map.cell(loc.ix, iz2), &map.cell(ix2, loc.iz),
            &map.cell(ix2, iz2)};
}

double sgn(double v) {
    return (v > 0.0) - (v < 0.0);
}

} // namespace

InterpolatedField plane_receiver_interp(const GridMap &map, double range, double depth) {
    const CellLocation loc = locate(map.lattice, range, depth);
    return receiver_interp_core(map.lattice, loc, stored_corners(map, loc), range, depth,
                                map.env.sound_speed, InterpMode::PlaneWave);
}

InterpolatedField spherical_receiver_interp(const GridMap &map, double range, double depth) {
    const CellLocation loc = locate(map.lattice, range, depth);
    return receiver_interp_core(map.lattice, loc, stored_corners(map, loc), range, depth,
                                map.env.sound_speed, InterpMode::SphericalWave);
}

ArrivalSet plane_source_adjust(const ArrivalSet &arrivals, double delta_d, double sound_speed) {
    ArrivalSet out = arrivals;
    for (Arrival &a : out)
        a.delay -= delta_d * std::sin(a.departure_angle) / sound_speed;
    return out;
}

ArrivalSet spherical_source_adjust(const ArrivalSet &arrivals, double delta_d, double sound_speed) {
    ArrivalSet out = arrivals;
    if (delta_d == 0.0)
        return out;
    const double ad = std::abs(delta_d);
    for (Arrival &a : out) {
        const double d1 = sound_speed * a.delay;
        if (d1 <= ad)
            throw DegenerateGeometryError("source displacement exceeds image-receiver distance");
        // Cosine rule against the vertical displacement. The angle between
        // the displacement and the ray is pi/2 -/+ theta_i for a source
        // moved toward / away from the surface.
        const double cos_psi =
            delta_d < 0.0 ? std::sin(a.incident_angle) : -std::sin(a.incident_angle);
        const double d2 = std::sqrt(d1 * d1 + delta_d * delta_d - 2.0 * d1 * ad * cos_psi);
        const double dtau = (d2 - d1) / sound_speed;
        const double cos_gi =
            std::clamp((d1 * d1 + d2 * d2 - delta_d * delta_d) / (2.0 * d1 * d2), -1.0, 1.0);
        const double gamma_i = std::acos(cos_gi);
        a.incident_angle += sgn(a.incident_angle) * sgn(dtau) * gamma_i;
        a.delay += dtau;
    }
    return out;
}

InterpolatedField interpolate_field(const GridMapSet &maps, const Position &source,
                                    const Position &receiver, InterpMode mode) {
    const GridMap &map = maps.nearest(source.depth);
    const double range = horizontal_range(source, receiver);
    const double c = map.env.sound_speed;
    const CellLocation loc = locate(map.lattice, range, receiver.depth);
    const auto stored = stored_corners(map, loc);

    const double delta_depth = source.depth - map.source_depth;
    if (delta_depth == 0.0)
        return receiver_interp_core(map.lattice, loc, stored, range, receiver.depth, c, mode);

    std::array<ArrivalSet, 4> adjusted;
    std::array<const ArrivalSet *, 4> ptrs{};
    for (int i = 0; i < 4; ++i) {
        adjusted[i] = mode == InterpMode::PlaneWave
                          ? plane_source_adjust(*stored[i], -delta_depth, c)
                          : spherical_source_adjust(*stored[i], delta_depth, c);
        ptrs[i] = &adjusted[i];
    }
    return receiver_interp_core(map.lattice, loc, ptrs, range, receiver.depth, c, mode);
}

double msd_interp(const std::vector<std::complex<double>> &cir_est,
                  const std::vector<std::complex<double>> &cir_true) {
    if (cir_est.size() != cir_true.size())
        throw DomainError("msd_interp: length mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < cir_true.size(); ++i) {
        const double d = std::abs(cir_est[i]) - std::abs(cir_true[i]);
        num += d * d;
        den += std::norm(cir_true[i]);
    }
    if (den == 0.0)
        throw DomainError("msd_interp: reference CIR is all-zero");
    if (num == 0.0)
        return -300.0;
    return 10.0 * std::log10(num / den);
}

FieldCursor::FieldCursor(const GridMapSet &maps, InterpMode mode, bool need_angles)
    : maps_(maps), mode_(mode), need_angles_(need_angles) {
    if (maps.empty())
        throw ConfigError("field cursor: empty grid map set");
}

void FieldCursor::rebuild_cache(const GridMap &map, std::size_t ix, std::size_t iz,
                                double source_depth) {
    const double c = map.env.sound_speed;
    const double delta_depth = source_depth - map.source_depth;
    const std::size_t ix2 = std::min(ix + 1, map.lattice.n_range() - 1);
    const std::size_t iz2 = std::min(iz + 1, map.lattice.n_depth() - 1);
    const std::array<const ArrivalSet *, 4> stored = {&map.cell(ix, iz), &map.cell(ix, iz2),
                                                      &map.cell(ix2, iz), &map.cell(ix2, iz2)};
    const std::array<std::size_t, 4> cix = {ix, ix, ix2, ix2};
    const std::array<std::size_t, 4> ciz = {iz, iz2, iz, iz2};

    for (int cnr = 0; cnr < 4; ++cnr) {
        CornerCache &cc = corners_[cnr];
        cc.corner_range = map.lattice.range_at(cix[cnr]);
        cc.corner_depth = map.lattice.depth_at(ciz[cnr]);
        ArrivalSet adjusted;
        const ArrivalSet *src = stored[cnr];
        if (delta_depth != 0.0) {
            adjusted = mode_ == InterpMode::PlaneWave
                           ? plane_source_adjust(*src, -delta_depth, map.env.sound_speed)
                           : spherical_source_adjust(*src, delta_depth, map.env.sound_speed);
            src = &adjusted;
        }
        const std::size_t n = src->size();
        cc.delay.resize(n);
        cc.amplitude.resize(n);
        cc.cos_inc.resize(n);
        cc.sin_inc.resize(n);
        cc.d1.resize(n);
        cc.departure.resize(need_angles_ ? n : 0);
        cc.incident.resize(need_angles_ ? n : 0);
        for (std::size_t m = 0; m < n; ++m) {
            const Arrival &a = (*src)[m];
            cc.delay[m] = a.delay;
            cc.amplitude[m] = a.amplitude;
            cc.cos_inc[m] = std::cos(a.incident_angle);
            cc.sin_inc[m] = std::sin(a.incident_angle);
            cc.d1[m] = c * a.delay;
            if (need_angles_) {
                cc.departure[m] = a.departure_angle;
                cc.incident[m] = a.incident_angle;
            }
        }
    }
    cached_map_ = &map;
    cached_ix_ = ix;
    cached_iz_ = iz;
    cached_source_depth_ = source_depth;
}

const FieldSample &FieldCursor::eval(const Position &source, const Position &receiver) {
    const GridMap &map = maps_.nearest(source.depth);
    const double range = horizontal_range(source, receiver);
    const double c = map.env.sound_speed;
    const CellLocation loc = locate(map.lattice, range, receiver.depth);

    if (&map != cached_map_ || loc.ix != cached_ix_ || loc.iz != cached_iz_ ||
        source.depth != cached_source_depth_)
        rebuild_cache(map, loc.ix, loc.iz, source.depth);

    const auto weights = corner_weights(loc);
    out_.clear();
    for (int cnr = 0; cnr < 4; ++cnr) {
        const double w = weights[cnr];
        if (w == 0.0)
            continue;
        const CornerCache &cc = corners_[cnr];
        const std::size_t n = cc.delay.size();
        if (n == 0)
            continue;
        const double dx = range - cc.corner_range;
        const double dz = receiver.depth - cc.corner_depth;
        const std::size_t base = out_.delay.size();
        out_.delay.resize(base + n);
        out_.amplitude.resize(base + n);
        if (need_angles_) {
            out_.departure_angle.resize(base + n);
            out_.incident_angle.resize(base + n);
        }
        double *dst = out_.delay.data() + base;

        if (mode_ == InterpMode::PlaneWave) {
            const double inv_c = 1.0 / c;
            for (std::size_t m = 0; m < n; ++m)
                dst[m] = cc.delay[m] + (dx * cc.cos_inc[m] - dz * cc.sin_inc[m]) * inv_c;
        } else {
            const double d2sq = dx * dx + dz * dz;
            const double d2 = std::sqrt(d2sq);
            if (d2 == 0.0) {
                for (std::size_t m = 0; m < n; ++m)
                    dst[m] = cc.delay[m];
            } else {
                const double cb = std::abs(dx) / d2;
                const double sb = std::abs(dz) / d2;
                // corner-role signs of cos(gamma) as in cos_gamma()
                const double s_cos = (cnr >> 1) ? 1.0 : -1.0;
                const double s_sin = ((cnr == 0) || (cnr == 3)) ? -1.0 : 1.0;
                const double inv_c = 1.0 / c;
                for (std::size_t m = 0; m < n; ++m) {
                    const double cg = s_cos * (cc.cos_inc[m] * cb + s_sin * cc.sin_inc[m] * sb);
                    const double d1 = cc.d1[m];
                    const double d3 = std::sqrt(d1 * d1 + d2sq - 2.0 * d1 * d2 * cg);
                    dst[m] = cc.delay[m] + (d3 - d1) * inv_c;
                }
            }
        }
        for (std::size_t m = 0; m < n; ++m)
            out_.amplitude[base + m] = cc.amplitude[m] * w;
        if (need_angles_) {
            std::copy(cc.departure.begin(), cc.departure.end(), out_.departure_angle.begin() + base);
            std::copy(cc.incident.begin(), cc.incident.end(), out_.incident_angle.begin() + base);
        }
    }
    return out_;
}

} // namespace hydro
