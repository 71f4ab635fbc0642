// SPDX-License-Identifier: Apache-2.0
//
// hydrolink - underwater acoustic link simulation and target detection

#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hydro/fieldinterp.hpp"
#include "hydro/gridmap.hpp"

namespace hydro {

using cplx = std::complex<double>;

/// Piecewise-linear position track. A single waypoint describes a static
/// node valid at all times.
struct Trajectory {
    struct Waypoint {
        double time = 0.0;
        Position pos;
    };
    std::vector<Waypoint> waypoints;
    double sample_rate = 12000.0;

    static Trajectory fixed(const Position &p);
    void validate() const;
    Position at(double t) const; // ExtentError outside the waypoint span
    double start_time() const;
    double end_time() const;
};

/// Piecewise-linear positions at instants i/rate for i = 0 .. floor(duration*rate).
std::vector<Position> resample_trajectory(const Trajectory &traj, double rate, double duration);

/// Rigid sphere scatterer. The wavenumber is derived from the wavelength,
/// keeping w = 2*pi/lambda exact.
struct TargetModel {
    double radius = 0.1;         // m
    double wavelength = 0.0451;  // m, carrier wavelength

    double wavenumber() const;
    void validate() const;
};

/// Directional gain as a function of elevation angle; omnidirectional by
/// default. The omni flag lets hot paths skip angle bookkeeping.
struct Beampattern {
    std::function<double(double)> gain_fn;
    bool omni = true;

    double gain(double angle) const { return omni ? 1.0 : gain_fn(angle); }
    static Beampattern omnidirectional() { return {}; }
    static Beampattern from_function(std::function<double(double)> fn);
};

/// One time instant of the channel: complex taps at spacing
/// 1 / (taps.size() * bin_spacing_hz).
struct CirSnapshot {
    double time = 0.0;
    std::vector<cplx> taps;
    double bin_spacing_hz = 0.0;

    double tap_spacing() const {
        return 1.0 / (static_cast<double>(taps.size()) * bin_spacing_hz);
    }
};

/// Uniform-cadence sequence of CIR snapshots for one link.
struct CirSeries {
    std::string link_id;
    double period = 1.0;  // s between snapshots
    double start = 0.0;   // s of first snapshot
    std::vector<CirSnapshot> snapshots;
};

/// Bistatic angle at the target between the directions to source and to
/// receiver, in the horizontal plane. A target on the source-receiver
/// segment gives pi (forward scattering); a receiver colocated with the
/// source gives 0 (backscatter).
double bistatic_angle(const Position &source, const Position &target, const Position &receiver);

/// Rigid-sphere target strength as a function of the bistatic angle.
double target_strength(double alpha, const TargetModel &model);

/// Baseband-equivalent arrival amplitude: beampattern gains applied to the
/// field amplitude and rotated by the carrier phase of the delay.
cplx baseband_amplitude(const Arrival &arr, const Beampattern &source_bp,
                        const Beampattern &receiver_bp, double carrier_hz);

/// Tapped-delay-line filtering of a baseband input through a per-sample
/// arrival stream (Fig.-4-style link). Fractional delays are read from the
/// input by local cubic spline; samples before the signal start are zero.
std::vector<cplx> link_output(const std::vector<cplx> &input,
                              const std::function<const ArrivalSet &(std::size_t)> &fields,
                              double carrier_hz, double sample_rate,
                              const Beampattern &source_bp = {}, const Beampattern &receiver_bp = {});

/// Time-invariant convenience overload.
std::vector<cplx> link_output(const std::vector<cplx> &input, const ArrivalSet &field,
                              double carrier_hz, double sample_rate,
                              const Beampattern &source_bp = {}, const Beampattern &receiver_bp = {});

/// y = r1 + r3, elementwise.
std::vector<cplx> received_signal(const std::vector<cplx> &r1, const std::vector<cplx> &r3);

/// Baseband frequency response of one link on the two-sided bins
/// k = -bins/2 .. bins/2 (bins+1 values) at spacing delta_f.
std::vector<cplx> link_frequency_response(const ArrivalSet &field, double carrier_hz,
                                          std::size_t bins, double delta_f,
                                          const Beampattern &source_bp = {},
                                          const Beampattern &receiver_bp = {});
std::vector<cplx> link_frequency_response(const FieldSample &field, double carrier_hz,
                                          std::size_t bins, double delta_f);

/// Combined three-link response H1 + sigma_ts * H2 .* H3 on the two-sided bins.
std::vector<cplx> channel_frequency_response(const ArrivalSet &link1, const ArrivalSet &link2,
                                             const ArrivalSet &link3, double sigma_ts,
                                             double carrier_hz, std::size_t bins, double delta_f);

/// Spread the two-sided bins k = -B/2..B/2 into FFT order of length
/// fft_size (k = 0..B/2 in front, negative bins at the back).
std::vector<cplx> place_two_sided(const std::vector<cplx> &two_sided, std::size_t fft_size);

/// Inverse FFT (1/K normalization) of an FFT-ordered frequency response.
CirSnapshot cir_snapshot(const std::vector<cplx> &fft_ordered, double delta_f = 0.0,
                         double time = 0.0);

/// Everything simulate_link needs for one source-receiver pair.
struct LinkScenario {
    const GridMapSet *maps = nullptr;
    InterpMode mode = InterpMode::SphericalWave;
    Trajectory source;
    Trajectory receiver;
    std::optional<Trajectory> target;
    TargetModel target_model;
    std::optional<double> sigma_override; // force sigma_ts (e.g. 0 or 1)
    Beampattern source_bp;
    Beampattern receiver_bp;
    double carrier_hz = 32e3;
    double bandwidth_hz = 6e3; // F_d, spanned by the CIR bins
    double sample_rate = 12e3;
    double duration = 1.0;
    double packet_period = 1.0; // CIR snapshot cadence
    double start_offset = 0.0;  // time of first snapshot
    std::size_t cir_bins = 72;
    std::size_t cir_fft_size = 2048;
    std::optional<double> cir_noise_msd_db;
    std::uint64_t noise_seed = 1;
    std::string link_id = "link";

    void validate() const;
};

struct LinkResult {
    std::vector<cplx> received; // empty in CIR-only runs
    CirSeries cir;
};

/// Per-packet CIR snapshots (Fig.-4 three-link structure), and optionally
/// the received baseband signal when an input transmit stream is supplied.
/// Geometry leaving the grid coverage raises CoverageError with the sample
/// or snapshot instant.
LinkResult simulate_link(const LinkScenario &scenario,
                         const std::vector<cplx> *transmit_stream = nullptr);

} // namespace hydro
