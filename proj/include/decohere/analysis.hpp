#pragma once

// Post-processing of coherence time series: the large-bath two-step formula,
// envelope extraction and decay-law fits.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace decohere {

struct TwoStepParams {
    double b = 0.0;     // N Delta^2 / 4
    double c = 0.0;     // b / 2
    double omega = 0.0; // J - Delta
};

TwoStepParams two_step_params(int n_bath, double J, double delta);

/// Envelope factor 1/6 + (1 - b t^2) / 3 * exp(-c t^2).
double two_step_envelope(double t, double b, double c);

/// Re rho_23(t) = two_step_envelope(t, b, c) * cos(omega t) for an isotropic
/// central-bath coupling Delta in the large-bath limit.
double gaussian_two_step(double t, int n_bath, double J, double delta);

struct Envelope {
    std::vector<double> t;
    std::vector<double> value;
    std::size_t peak_count = 0;
    bool undersampled = false; // fewer than 10 samples per oscillation period
};

/// Upper envelope of |value|: 3-point local maxima (the first sample counts when
/// it is not below its neighbour, the last never does) refined by a parabola through
/// the neighbours (capped at max |value|), joined by linear interpolation and
/// held constant before the first and after the last peak.
///
/// When omega is given the sampling check uses the period 2 pi / |omega|;
/// otherwise it uses the median spacing of the detected peaks (half a period
/// of |cos|).
Envelope extract_envelope(std::span<const double> t, std::span<const double> value,
                          std::optional<double> omega = std::nullopt);

struct FitWindow {
    double t_start = 0.0;
    double t_end = 0.0;
};

/// Starts where the envelope first falls below start_below and ends where it
/// first falls below end_below afterwards (or at the last sample). Throws
/// UsageError if the envelope never drops below start_below.
FitWindow select_exponential_window(std::span<const double> t, std::span<const double> envelope,
                                    double start_below = 0.45, double end_below = 0.02);

enum class DecayModel : std::uint8_t { exponential, gaussian_two_step };

std::string_view to_string(DecayModel m);
DecayModel parse_decay_model(std::string_view text);

struct DecayFit {
    DecayModel model = DecayModel::exponential;
    FitWindow window;
    std::size_t points = 0;

    // exponential: envelope = amplitude * exp(-rate t)
    double amplitude = 0.5;
    double rate = 0.0;

    // gaussian_two_step
    double b = 0.0;
    double c = 0.0;
    double omega = 0.0;
    bool c_free = false;

    double residual_rms = 0.0;     // linear residual RMS divided by the envelope scale 1/2
    double log_residual_rms = 0.0; // exponential only: RMS of the log-space residual
};

/// Least squares on log(envelope) with the intercept fixed at log(1/2):
/// rate = -sum t y / sum t^2, y = log(2 envelope). Clamped at 0. Throws
/// UsageError on non-positive envelope values or fewer than 2 points in the window.
DecayFit fit_exponential(std::span<const double> t, std::span<const double> envelope,
                         FitWindow window);

/// Levenberg-Marquardt fit of two_step_envelope to the envelope over the window.
/// With c_free the Gaussian rate c is fitted independently, otherwise c = b / 2.
/// The start is the best of b = 0 and a log grid around N Delta^2 / 4, since the
/// model returns to 1/6 for large b and a poor start can run off there.
/// n_bath, J and delta also fix omega in the result.
DecayFit fit_gaussian(std::span<const double> t, std::span<const double> envelope,
                      FitWindow window, int n_bath, double J, double delta, bool c_free = false);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
};

/// Ordinary least-squares line y = slope x + intercept.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

} // namespace decohere
