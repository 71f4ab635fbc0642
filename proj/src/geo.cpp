// SPDX-License-Identifier: Apache-2.0
//
// hydrolink - underwater acoustic link simulation and target detection

#include "hydro/geo.hpp"

#include <algorithm>
#include <cmath>

namespace hydro {

void Environment::validate() const {
    if (!(water_depth > 0.0))
        throw DomainError("environment: water_depth must be positive");
    if (!(sound_speed > 0.0))
        throw DomainError("environment: sound_speed must be positive");
    if (std::abs(surface_reflection) > 1.0 + 1e-12)
        throw DomainError("environment: |surface_reflection| must be <= 1");
    if (std::abs(bottom_reflection) > 1.0 + 1e-12)
        throw DomainError("environment: |bottom_reflection| must be <= 1");
}

double horizontal_range(const Position &a, const Position &b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

namespace {

void check_depth(const Environment &env, double depth, const char *what) {
    if (depth < 0.0 || depth > env.water_depth)
        throw DomainError(std::string(what) + " depth outside waveguide");
}

} // namespace

ArrivalSet compute_arrivals_rz(const Environment &env, double source_depth, double receiver_depth,
                               double range, unsigned max_bounces) {
    env.validate();
    check_depth(env, source_depth, "source");
    check_depth(env, receiver_depth, "receiver");
    if (range < 0.0)
        throw DomainError("range must be nonnegative");
    if (range == 0.0 && source_depth == receiver_depth)
        throw DegenerateGeometryError("source and receiver coincide");

    const double big_d = env.water_depth;
    const double c = env.sound_speed;

    // Reflection-coefficient powers up to the largest bounce count needed.
    const unsigned max_per_boundary = max_bounces / 2 + 1;
    std::vector<std::complex<double>> surf_pow(max_per_boundary + 1), bot_pow(max_per_boundary + 1);
    surf_pow[0] = bot_pow[0] = 1.0;
    for (unsigned i = 1; i <= max_per_boundary; ++i) {
        surf_pow[i] = surf_pow[i - 1] * env.surface_reflection;
        bot_pow[i] = bot_pow[i - 1] * env.bottom_reflection;
    }

    ArrivalSet out;
    out.reserve(2 * max_bounces + 1);

    // One image per (n_s, n_b) reflection sequence, |n_s - n_b| <= 1.
    // The unfolded straight line runs from the image at z_img to the
    // receiver; the last real segment coincides with its receiver end, so
    // the incident angle reads off the unfolded line directly. The first
    // segment is mirrored once per reflection, flipping the departure
    // angle's vertical sense when the bounce count is odd.
    auto add_image = [&](double z_img, unsigned n_s, unsigned n_b) {
        const double dz = receiver_depth - z_img;
        const double len = std::hypot(range, dz);
        Arrival a;
        a.delay = len / c;
        a.amplitude = surf_pow[n_s] * bot_pow[n_b] / len;
        a.incident_angle = std::atan2(-dz, range);
        const unsigned n = n_s + n_b;
        a.departure_angle = (n % 2 == 0) ? a.incident_angle : -a.incident_angle;
        a.surface_bounces = static_cast<std::uint16_t>(n_s);
        a.bottom_bounces = static_cast<std::uint16_t>(n_b);
        out.push_back(a);
    };

    for (unsigned n = 0; n <= max_bounces; ++n) {
        if (n == 0) {
            add_image(source_depth, 0, 0);
        } else if (n % 2 == 1) {
            const unsigned k = (n - 1) / 2;
            add_image(-source_depth - 2.0 * k * big_d, k + 1, k);       // surface first
            add_image(2.0 * (k + 1) * big_d - source_depth, k, k + 1);  // bottom first
        } else {
            const unsigned k = n / 2;
            add_image(source_depth + 2.0 * k * big_d, k, k);            // up first, ends down
            add_image(source_depth - 2.0 * k * big_d, k, k);            // down first, ends up
        }
    }

    std::sort(out.begin(), out.end(), [](const Arrival &a, const Arrival &b) {
        if (a.delay != b.delay)
            return a.delay < b.delay;
        if (a.total_bounces() != b.total_bounces())
            return a.total_bounces() < b.total_bounces();
        return a.surface_bounces < b.surface_bounces;
    });
    return out;
}

ArrivalSet compute_arrivals(const Environment &env, const Position &source,
                            const Position &receiver, unsigned max_bounces) {
    return compute_arrivals_rz(env, source.depth, receiver.depth, horizontal_range(source, receiver),
                               max_bounces);
}

} // namespace hydro
