// SPDX-License-Identifier: Apache-2.0
//
// hydrolink - underwater acoustic link simulation and target detection

#include "hydro/channelsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hydro/dsp.hpp"

namespace hydro {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Trajectory Trajectory::fixed(const Position &p) {
    Trajectory t;
    t.waypoints.push_back({0.0, p});
    return t;
}

void Trajectory::validate() const {
    if (waypoints.empty())
        throw DomainError("trajectory: no waypoints");
    for (std::size_t i = 1; i < waypoints.size(); ++i)
        if (!(waypoints[i].time > waypoints[i - 1].time))
            throw DomainError("trajectory: waypoint times must strictly increase");
}

Position Trajectory::at(double t) const {
    validate();
    if (waypoints.size() == 1)
        return waypoints.front().pos;
    if (t < waypoints.front().time - 1e-9 || t > waypoints.back().time + 1e-9)
        throw ExtentError("trajectory does not cover time " + std::to_string(t));
    t = std::clamp(t, waypoints.front().time, waypoints.back().time);
    auto it = std::upper_bound(waypoints.begin(), waypoints.end(), t,
                               [](double v, const Waypoint &w) { return v < w.time; });
    if (it == waypoints.begin())
        return waypoints.front().pos;
    if (it == waypoints.end())
        return waypoints.back().pos;
    const Waypoint &b = *it;
    const Waypoint &a = *(it - 1);
    const double f = (t - a.time) / (b.time - a.time);
    return {a.pos.x + f * (b.pos.x - a.pos.x), a.pos.y + f * (b.pos.y - a.pos.y),
            a.pos.depth + f * (b.pos.depth - a.pos.depth)};
}

double Trajectory::start_time() const {
    return waypoints.front().time;
}

double Trajectory::end_time() const {
    return waypoints.back().time;
}

std::vector<Position> resample_trajectory(const Trajectory &traj, double rate, double duration) {
    traj.validate();
    if (traj.waypoints.size() > 1 &&
        (traj.start_time() > 0.0 || traj.end_time() < duration - 1e-9))
        throw ExtentError("trajectory span does not cover the requested duration");
    const auto n = static_cast<std::size_t>(std::floor(duration * rate + 1e-9)) + 1;
    std::vector<Position> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = traj.at(static_cast<double>(i) / rate);
    return out;
}

double TargetModel::wavenumber() const {
    return kTwoPi / wavelength;
}

void TargetModel::validate() const {
    if (!(radius > 0.0))
        throw DomainError("target: radius must be positive");
    if (!(wavelength > 0.0))
        throw DomainError("target: wavelength must be positive");
}

Beampattern Beampattern::from_function(std::function<double(double)> fn) {
    Beampattern b;
    b.gain_fn = std::move(fn);
    b.omni = false;
    return b;
}

double bistatic_angle(const Position &source, const Position &target, const Position &receiver) {
    const double usx = source.x - target.x, usy = source.y - target.y;
    const double urx = receiver.x - target.x, ury = receiver.y - target.y;
    const double ns = std::hypot(usx, usy);
    const double nr = std::hypot(urx, ury);
    if (ns == 0.0 || nr == 0.0)
        throw DegenerateGeometryError("bistatic angle: target horizontally coincident with a node");
    const double dot = usx * urx + usy * ury;
    const double cross = usx * ury - usy * urx;
    return std::atan2(std::abs(cross), dot); // in [0, pi]
}

double target_strength(double alpha, const TargetModel &model) {
    model.validate();
    const double a = model.radius;
    const double w = model.wavenumber();
    if (alpha == std::numbers::pi)
        return a * a / 4.0 * (1.0 + w * w * a * a);
    const double t = std::tan(alpha / 2.0);
    const double j1 = std::cyl_bessel_j(1.0, w * a * std::sin(alpha));
    return a * a / 4.0 * (1.0 + t * t * j1 * j1);
}

cplx baseband_amplitude(const Arrival &arr, const Beampattern &source_bp,
                        const Beampattern &receiver_bp, double carrier_hz) {
    const double phase = -kTwoPi * carrier_hz * arr.delay;
    return source_bp.gain(arr.departure_angle) * receiver_bp.gain(arr.incident_angle) *
           arr.amplitude * cplx{std::cos(phase), std::sin(phase)};
}

std::vector<cplx> link_output(const std::vector<cplx> &input,
                              const std::function<const ArrivalSet &(std::size_t)> &fields,
                              double carrier_hz, double sample_rate, const Beampattern &source_bp,
                              const Beampattern &receiver_bp) {
    std::vector<cplx> out(input.size(), cplx{});
    for (std::size_t i = 0; i < input.size(); ++i) {
        const ArrivalSet &set = fields(i);
        cplx acc{};
        for (const Arrival &a : set) {
            if (a.delay < 0.0)
                throw CausalityError("negative arrival delay at sample " + std::to_string(i));
            const double pos = static_cast<double>(i) - a.delay * sample_rate;
            acc += baseband_amplitude(a, source_bp, receiver_bp, carrier_hz) *
                   dsp::spline_at(input, pos);
        }
        out[i] = acc;
    }
    return out;
}

std::vector<cplx> link_output(const std::vector<cplx> &input, const ArrivalSet &field,
                              double carrier_hz, double sample_rate, const Beampattern &source_bp,
                              const Beampattern &receiver_bp) {
    return link_output(
        input, [&](std::size_t) -> const ArrivalSet & { return field; }, carrier_hz, sample_rate,
        source_bp, receiver_bp);
}

std::vector<cplx> received_signal(const std::vector<cplx> &r1, const std::vector<cplx> &r3) {
    if (r1.size() != r3.size())
        throw DomainError("received_signal: length mismatch");
    std::vector<cplx> y(r1.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] = r1[i] + r3[i];
    return y;
}

namespace {

// H(k) = sum_m A~_m exp(-j 2 pi k df tau_m), accumulated by phasor
// recurrence over the two-sided bins.
void accumulate_frequency_response(std::vector<cplx> &h, double delay, cplx amp, double delta_f) {
    const int half = static_cast<int>(h.size() - 1) / 2;
    const double step_phase = -kTwoPi * delta_f * delay;
    const cplx step{std::cos(step_phase), std::sin(step_phase)};
    const double start_phase = -step_phase * static_cast<double>(half);
    cplx w = amp * cplx{std::cos(start_phase), std::sin(start_phase)}; // bin k = -half
    for (auto &bin : h) {
        bin += w;
        w *= step;
    }
}

} // namespace

std::vector<cplx> link_frequency_response(const ArrivalSet &field, double carrier_hz,
                                          std::size_t bins, double delta_f,
                                          const Beampattern &source_bp,
                                          const Beampattern &receiver_bp) {
    std::vector<cplx> h(bins + 1, cplx{});
    for (const Arrival &a : field)
        accumulate_frequency_response(h, a.delay,
                                      baseband_amplitude(a, source_bp, receiver_bp, carrier_hz),
                                      delta_f);
    return h;
}

std::vector<cplx> link_frequency_response(const FieldSample &field, double carrier_hz,
                                          std::size_t bins, double delta_f) {
    std::vector<cplx> h(bins + 1, cplx{});
    for (std::size_t m = 0; m < field.size(); ++m) {
        const double phase = -kTwoPi * carrier_hz * field.delay[m];
        const cplx amp = field.amplitude[m] * cplx{std::cos(phase), std::sin(phase)};
        accumulate_frequency_response(h, field.delay[m], amp, delta_f);
    }
    return h;
}

std::vector<cplx> channel_frequency_response(const ArrivalSet &link1, const ArrivalSet &link2,
                                             const ArrivalSet &link3, double sigma_ts,
                                             double carrier_hz, std::size_t bins, double delta_f) {
    std::vector<cplx> h = link_frequency_response(link1, carrier_hz, bins, delta_f);
    if (sigma_ts != 0.0) {
        const auto h2 = link_frequency_response(link2, carrier_hz, bins, delta_f);
        const auto h3 = link_frequency_response(link3, carrier_hz, bins, delta_f);
        for (std::size_t k = 0; k < h.size(); ++k)
            h[k] += sigma_ts * h2[k] * h3[k];
    }
    return h;
}

std::vector<cplx> place_two_sided(const std::vector<cplx> &two_sided, std::size_t fft_size) {
    if (two_sided.size() > fft_size)
        throw DomainError("place_two_sided: fft size smaller than bin count");
    const std::size_t half = (two_sided.size() - 1) / 2;
    std::vector<cplx> h(fft_size, cplx{});
    for (std::size_t k = 0; k <= half; ++k)
        h[k] = two_sided[half + k]; // k = 0 .. +half
    for (std::size_t k = 1; k <= half; ++k)
        h[fft_size - k] = two_sided[half - k]; // k = -1 .. -half
    return h;
}

CirSnapshot cir_snapshot(const std::vector<cplx> &fft_ordered, double delta_f, double time) {
    CirSnapshot snap;
    snap.time = time;
    snap.bin_spacing_hz = delta_f;
    snap.taps = fft_ordered;
    dsp::ifft(snap.taps);
    return snap;
}

void LinkScenario::validate() const {
    if (maps == nullptr || maps->empty())
        throw ConfigError("link scenario: grid maps missing");
    if (!(sample_rate > 0.0) || !(carrier_hz > 0.0))
        throw ConfigError("link scenario: rates must be positive");
    if (!(packet_period > 0.0))
        throw ConfigError("link scenario: packet period must be positive");
    if (!dsp::is_pow2(cir_fft_size) || cir_fft_size < cir_bins + 1)
        throw ConfigError("link scenario: cir_fft_size must be a power of two >= bins+1");
    if (target.has_value())
        target_model.validate();
}

namespace {

double sigma_at(const LinkScenario &sc, const Position &src, const Position &tgt,
                const Position &rcv) {
    if (sc.sigma_override.has_value())
        return *sc.sigma_override;
    return target_strength(bistatic_angle(src, tgt, rcv), sc.target_model);
}

} // namespace

LinkResult simulate_link(const LinkScenario &sc, const std::vector<cplx> *transmit_stream) {
    sc.validate();
    const bool with_target = sc.target.has_value();
    const bool omni = sc.source_bp.omni && sc.receiver_bp.omni;
    FieldCursor cur1(*sc.maps, sc.mode, !omni);
    FieldCursor cur2(*sc.maps, sc.mode, !omni);
    FieldCursor cur3(*sc.maps, sc.mode, !omni);

    const double delta_f = sc.bandwidth_hz / static_cast<double>(sc.cir_bins);
    LinkResult res;
    res.cir.link_id = sc.link_id;
    res.cir.period = sc.packet_period;
    res.cir.start = sc.start_offset;

    // ---- CIR snapshots at packet epochs -----------------------------------
    for (double t = sc.start_offset; t <= sc.duration + 1e-9; t += sc.packet_period) {
        Position src, rcv;
        try {
            src = sc.source.at(t);
            rcv = sc.receiver.at(t);
        } catch (const ExtentError &e) {
            throw CoverageError(std::string("snapshot at t=") + std::to_string(t) + ": " + e.what());
        }
        std::vector<cplx> h;
        try {
            const FieldSample &f1 = cur1.eval(src, rcv);
            h = link_frequency_response(f1, sc.carrier_hz, sc.cir_bins, delta_f);
            if (with_target) {
                const Position tgt = sc.target->at(t);
                const double sig = sigma_at(sc, src, tgt, rcv);
                if (sig != 0.0) {
                    const FieldSample &f2 = cur2.eval(src, tgt);
                    const auto h2 = link_frequency_response(f2, sc.carrier_hz, sc.cir_bins, delta_f);
                    const FieldSample &f3 = cur3.eval(tgt, rcv);
                    const auto h3 = link_frequency_response(f3, sc.carrier_hz, sc.cir_bins, delta_f);
                    for (std::size_t k = 0; k < h.size(); ++k)
                        h[k] += sig * h2[k] * h3[k];
                }
            }
        } catch (const OutOfBoundsError &e) {
            throw CoverageError(std::string("snapshot at t=") + std::to_string(t) +
                                " left grid coverage: " + e.what());
        }
        CirSnapshot snap = cir_snapshot(place_two_sided(h, sc.cir_fft_size), delta_f, t);
        res.cir.snapshots.push_back(std::move(snap));
    }

    if (sc.cir_noise_msd_db.has_value()) {
        const double lin = std::pow(10.0, *sc.cir_noise_msd_db / 10.0);
        for (std::size_t p = 0; p < res.cir.snapshots.size(); ++p) {
            auto &taps = res.cir.snapshots[p].taps;
            double energy = 0.0;
            for (const auto &v : taps)
                energy += std::norm(v);
            const double scale = std::sqrt(lin * energy / static_cast<double>(taps.size()));
            dsp::Rng rng(sc.noise_seed + 0x9E3779B97F4A7C15ull * (p + 1));
            for (auto &v : taps)
                v += scale * rng.cnormal();
        }
    }

    // ---- received-signal synthesis ----------------------------------------
    if (transmit_stream != nullptr) {
        const auto &s = *transmit_stream;
        const std::size_t n = s.size();
        res.received.assign(n, cplx{});
        std::vector<cplx> scattered(with_target ? n : 0, cplx{}); // sigma * r2 stream
        for (std::size_t i = 0; i < n; ++i) {
            const double t = static_cast<double>(i) / sc.sample_rate;
            Position src, rcv;
            try {
                src = sc.source.at(t);
                rcv = sc.receiver.at(t);
            } catch (const ExtentError &e) {
                throw CoverageError("sample " + std::to_string(i) + ": " + e.what());
            }
            try {
                const FieldSample &f1 = cur1.eval(src, rcv);
                cplx y{};
                for (std::size_t m = 0; m < f1.size(); ++m) {
                    if (f1.delay[m] < 0.0)
                        throw CausalityError("negative delay at sample " + std::to_string(i));
                    const double phase = -kTwoPi * sc.carrier_hz * f1.delay[m];
                    cplx amp = f1.amplitude[m] * cplx{std::cos(phase), std::sin(phase)};
                    if (!omni)
                        amp *= sc.source_bp.gain(f1.departure_angle[m]) *
                               sc.receiver_bp.gain(f1.incident_angle[m]);
                    y += amp * dsp::spline_at(s, static_cast<double>(i) - f1.delay[m] * sc.sample_rate);
                }
                if (with_target) {
                    const Position tgt = sc.target->at(t);
                    const double sig = sigma_at(sc, src, tgt, rcv);
                    // link 2 output scaled by the target filter feeds link 3
                    const FieldSample &f2 = cur2.eval(src, tgt);
                    cplx r2{};
                    for (std::size_t m = 0; m < f2.size(); ++m) {
                        const double phase = -kTwoPi * sc.carrier_hz * f2.delay[m];
                        cplx amp = f2.amplitude[m] * cplx{std::cos(phase), std::sin(phase)};
                        if (!omni)
                            amp *= sc.source_bp.gain(f2.departure_angle[m]);
                        r2 += amp *
                              dsp::spline_at(s, static_cast<double>(i) - f2.delay[m] * sc.sample_rate);
                    }
                    scattered[i] = sig * r2;
                    const FieldSample &f3 = cur3.eval(tgt, rcv);
                    cplx r3{};
                    for (std::size_t m = 0; m < f3.size(); ++m) {
                        const double pos = static_cast<double>(i) - f3.delay[m] * sc.sample_rate;
                        if (pos > static_cast<double>(i) - 2.0)
                            throw CausalityError(
                                "scatter path shorter than the spline window at sample " +
                                std::to_string(i));
                        const double phase = -kTwoPi * sc.carrier_hz * f3.delay[m];
                        cplx amp = f3.amplitude[m] * cplx{std::cos(phase), std::sin(phase)};
                        if (!omni)
                            amp *= sc.receiver_bp.gain(f3.incident_angle[m]);
                        r3 += amp * dsp::spline_at(scattered, pos);
                    }
                    y += r3;
                }
                res.received[i] = y;
            } catch (const OutOfBoundsError &e) {
                throw CoverageError("sample " + std::to_string(i) + " left grid coverage: " +
                                    e.what());
            }
        }
    }
    return res;
}

} // namespace hydro
