// SPDX-License-Identifier: Apache-2.0
//
// hydrolink - underwater acoustic link simulation and target detection

#pragma once

#include <array>
#include <complex>
#include <vector>

#include "hydro/gridmap.hpp"

namespace hydro {

enum class InterpMode { PlaneWave, SphericalWave };

/// Arrival set reconstructed at an off-grid position, together with the
/// bilinear corner weights that produced it. Weight order: (low range, low
/// depth), (low range, high depth), (high range, low depth), (high range,
/// high depth). Weights lie in [0, 1] and sum to 1; corners with exactly
/// zero weight contribute no arrivals.
struct InterpolatedField {
    ArrivalSet arrivals;
    std::array<double, 4> weights{};
};

/// Plane-wave receiver interpolation: each corner arrival's delay is shifted
/// by the projection of the receiver offset onto the arrival direction, and
/// amplitudes are scaled by the bilinear weights. The lattice plane is
/// (range, depth); incident angles are positive toward the surface, so the
/// depth offset enters the projection with a minus sign.
InterpolatedField plane_receiver_interp(const GridMap &map, double range, double depth);

/// Spherical-wave receiver interpolation via the cosine rule: for each
/// corner arrival the image-source distance d1 = c*tau is combined with the
/// corner-to-receiver offset d2 through the angle between them, which is
/// exact in the vertical plane given the stored incident angle. A receiver
/// exactly on a grid point gets d2 = 0 and no adjustment.
InterpolatedField spherical_receiver_interp(const GridMap &map, double range, double depth);

/// Plane-wave source-depth delay adjustment. delta_d follows the conventions
/// of the interpolation scheme's vertical axis: positive when the source
/// moves toward the surface. Angles and amplitudes are unchanged.
ArrivalSet plane_source_adjust(const ArrivalSet &arrivals, double delta_d, double sound_speed);

/// Spherical-wave source-depth adjustment. delta_d is the source depth
/// deviation from the map's depth (positive downward, new minus map).
/// Delays move by the cosine-rule distance change to the image receiver,
/// and incident angles are updated by the subtended angle. Requires
/// c*tau > |delta_d| for every arrival.
ArrivalSet spherical_source_adjust(const ArrivalSet &arrivals, double delta_d, double sound_speed);

/// Full interpolation for arbitrary source and receiver positions:
/// nearest source-depth map (ties toward the shallower one), source-depth
/// adjustment of the four corner cells, then receiver interpolation, all
/// in the vertical plane through the two positions.
InterpolatedField interpolate_field(const GridMapSet &maps, const Position &source,
                                    const Position &receiver, InterpMode mode);

/// Magnitude-domain normalized deviation in dB between a CIR estimate and
/// its reference: 10*log10(sum(|est|-|ref|)^2 / sum|ref|^2), clamped to
/// -300 dB when the numerator is exactly zero.
double msd_interp(const std::vector<std::complex<double>> &cir_est,
                  const std::vector<std::complex<double>> &cir_true);

/// Flat arrival stream for per-sample simulation; avoids per-call
/// allocation and skips delay sorting.
struct FieldSample {
    std::vector<double> delay;
    std::vector<std::complex<double>> amplitude;
    std::vector<double> departure_angle; // filled only when angles requested
    std::vector<double> incident_angle;

    void clear() {
        delay.clear();
        amplitude.clear();
        departure_angle.clear();
        incident_angle.clear();
    }
    std::size_t size() const { return delay.size(); }
};

/// Streaming evaluator of interpolate_field for slowly moving geometry.
/// Source-depth adjustment of the four corner cells is cached while the
/// query stays within one lattice cell at one source depth, which reduces
/// the per-sample work to the receiver-offset adjustment.
class FieldCursor {
  public:
    FieldCursor(const GridMapSet &maps, InterpMode mode, bool need_angles = true);

    /// Evaluate the interpolated field; result stays valid until next call.
    const FieldSample &eval(const Position &source, const Position &receiver);

  private:
    struct CornerCache {
        double corner_range = 0.0;
        double corner_depth = 0.0;
        std::vector<double> delay;
        std::vector<std::complex<double>> amplitude;
        std::vector<double> cos_inc, sin_inc;
        std::vector<double> departure, incident;
        std::vector<double> d1;
    };

    void rebuild_cache(const GridMap &map, std::size_t ix, std::size_t iz, double source_depth);

    const GridMapSet &maps_;
    InterpMode mode_;
    bool need_angles_;
    const GridMap *cached_map_ = nullptr;
    std::size_t cached_ix_ = static_cast<std::size_t>(-1);
    std::size_t cached_iz_ = static_cast<std::size_t>(-1);
    double cached_source_depth_ = 0.0;
    std::array<CornerCache, 4> corners_;
    FieldSample out_;
};

} // namespace hydro
