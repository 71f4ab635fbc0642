// SPDX-License-Identifier: Apache-2.0
//
// hydrolink - underwater acoustic link simulation and target detection

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "hydro/errors.hpp"

namespace hydro {

/// Iso-velocity waveguide with a flat surface at depth 0 and a flat bottom.
struct Environment {
    double water_depth = 100.0;                     // m
    double sound_speed = 1500.0;                    // m/s
    std::complex<double> surface_reflection{-1.0};  // pressure-release surface
    std::complex<double> bottom_reflection{0.5};

    void validate() const;
};

/// 3-D scenario coordinate; depth grows downward from the surface.
struct Position {
    double x = 0.0;
    double y = 0.0;
    double depth = 0.0;
};

/// Horizontal distance between two positions.
double horizontal_range(const Position &a, const Position &b);

/// One eigenray. Angles are measured from the horizontal in the vertical
/// plane through source and receiver; positive points toward the surface.
struct Arrival {
    double delay = 0.0;                  // s
    std::complex<double> amplitude{0.0}; // pressure at unit source level
    double departure_angle = 0.0;        // rad, [-pi/2, pi/2]
    double incident_angle = 0.0;         // rad, [-pi/2, pi/2]
    std::uint16_t surface_bounces = 0;
    std::uint16_t bottom_bounces = 0;

    std::uint32_t total_bounces() const {
        return static_cast<std::uint32_t>(surface_bounces) + bottom_bounces;
    }
};

/// Eigenrays sorted ascending by delay.
using ArrivalSet = std::vector<Arrival>;

/// All image-source eigenrays between two depths at horizontal range r,
/// up to max_bounces boundary interactions, sorted by delay.
///
/// Amplitudes follow spherical spreading (1/path_length, unit pressure at
/// 1 m) times the product of boundary reflection coefficients. Delays are
/// exact: delay * sound_speed equals the unfolded image-path length.
ArrivalSet compute_arrivals_rz(const Environment &env, double source_depth, double receiver_depth,
                               double range, unsigned max_bounces);

/// 3-D wrapper: reduces to the vertical plane through the two points.
ArrivalSet compute_arrivals(const Environment &env, const Position &source,
                            const Position &receiver, unsigned max_bounces);

} // namespace hydro
