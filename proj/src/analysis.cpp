#include "decohere/analysis.hpp"

#include "decohere/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace decohere {
namespace {

void check_series(std::span<const double> t, std::span<const double> v) {
    if (t.size() != v.size()) {
        throw UsageError("time and value series differ in length");
    }
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (!(t[i] > t[i - 1])) {
            throw UsageError("time series must be strictly increasing");
        }
    }
}

std::vector<std::size_t> window_indices(std::span<const double> t, FitWindow w) {
    if (!(w.t_end > w.t_start)) {
        throw UsageError("fit window must satisfy t_start < t_end");
    }
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] >= w.t_start && t[i] <= w.t_end) {
            idx.push_back(i);
        }
    }
    if (idx.size() < 2) {
        throw UsageError("fit window holds fewer than 2 samples");
    }
    return idx;
}

} // namespace

TwoStepParams two_step_params(int n_bath, double J, double delta) {
    const double b = n_bath * delta * delta / 4.0;
    return {b, b / 2.0, J - delta};
}

double two_step_envelope(double t, double b, double c) {
    const double t2 = t * t;
    return 1.0 / 6.0 + (1.0 - b * t2) / 3.0 * std::exp(-c * t2);
}

double gaussian_two_step(double t, int n_bath, double J, double delta) {
    const auto p = two_step_params(n_bath, J, delta);
    return two_step_envelope(t, p.b, p.c) * std::cos(p.omega * t);
}

Envelope extract_envelope(std::span<const double> t, std::span<const double> value,
                          std::optional<double> omega) {
    check_series(t, value);
    Envelope env;
    env.t.assign(t.begin(), t.end());
    env.value.assign(t.size(), 0.0);
    const std::size_t n = t.size();
    if (n == 0) {
        return env;
    }
    std::vector<double> a(n);
    std::transform(value.begin(), value.end(), a.begin(), [](double v) { return std::abs(v); });
    const double top = *std::max_element(a.begin(), a.end());

    std::vector<double> peak_t;
    std::vector<double> peak_v;
    for (std::size_t i = 0; i < n; ++i) {
        const bool left = i == 0 || a[i] >= a[i - 1];
        // The last sample is never a peak: it may sit on a rising edge.
        const bool right = i + 1 < n && a[i] > a[i + 1];
        if (!(left && right) || a[i] == 0.0) {
            continue;
        }
        double tp = t[i];
        double vp = a[i];
        if (i > 0 && i + 1 < n) {
            // parabola through three points, vertex location and height
            const double x0 = t[i - 1] - t[i];
            const double x2 = t[i + 1] - t[i];
            const double y0 = a[i - 1] - a[i];
            const double y2 = a[i + 1] - a[i];
            const double den = x0 * x2 * (x0 - x2);
            const double qa = (x2 * y0 - x0 * y2) / den;
            const double qb = (x0 * x0 * y2 - x2 * x2 * y0) / den;
            if (qa < 0.0) {
                const double dx = std::clamp(-qb / (2.0 * qa), x0, x2);
                tp = t[i] + dx;
                vp = std::min(a[i] + qa * dx * dx + qb * dx, top);
            }
        }
        peak_t.push_back(tp);
        peak_v.push_back(vp);
    }
    env.peak_count = peak_t.size();

    if (peak_t.empty()) {
        std::fill(env.value.begin(), env.value.end(), top);
    } else {
        std::size_t k = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = t[i];
            if (x <= peak_t.front()) {
                env.value[i] = peak_v.front();
            } else if (x >= peak_t.back()) {
                env.value[i] = peak_v.back();
            } else {
                while (peak_t[k + 1] < x) {
                    ++k;
                }
                const double f = (x - peak_t[k]) / (peak_t[k + 1] - peak_t[k]);
                env.value[i] = peak_v[k] + f * (peak_v[k + 1] - peak_v[k]);
            }
        }
    }

    if (n >= 2) {
        const double dt = (t.back() - t.front()) / static_cast<double>(n - 1);
        if (omega && *omega != 0.0) {
            env.undersampled = dt > 2.0 * std::numbers::pi / std::abs(*omega) / 10.0;
        } else if (peak_t.size() >= 3) {
            std::vector<double> gaps;
            for (std::size_t i = 1; i < peak_t.size(); ++i) {
                gaps.push_back(peak_t[i] - peak_t[i - 1]);
            }
            std::nth_element(gaps.begin(), gaps.begin() + static_cast<std::ptrdiff_t>(gaps.size() / 2),
                             gaps.end());
            env.undersampled = gaps[gaps.size() / 2] < 5.0 * dt;
        }
    }
    return env;
}

FitWindow select_exponential_window(std::span<const double> t, std::span<const double> envelope,
                                    double start_below, double end_below) {
    check_series(t, envelope);
    std::size_t i = 0;
    while (i < t.size() && !(envelope[i] < start_below)) {
        ++i;
    }
    if (i == t.size()) {
        throw UsageError("envelope never drops below the window start level");
    }
    std::size_t j = i;
    while (j + 1 < t.size() && !(envelope[j] < end_below)) {
        ++j;
    }
    return {t[i], t[j]};
}

std::string_view to_string(DecayModel m) {
    return m == DecayModel::exponential ? "exp" : "gauss";
}

DecayModel parse_decay_model(std::string_view text) {
    if (text == "exp" || text == "exponential") {
        return DecayModel::exponential;
    }
    if (text == "gauss" || text == "gaussian" || text == "gaussian_two_step") {
        return DecayModel::gaussian_two_step;
    }
    throw UsageError("unknown decay model '" + std::string(text) + "'");
}

DecayFit fit_exponential(std::span<const double> t, std::span<const double> envelope,
                         FitWindow window) {
    check_series(t, envelope);
    const auto idx = window_indices(t, window);
    double sty = 0.0;
    double stt = 0.0;
    for (std::size_t i : idx) {
        if (!(envelope[i] > 0.0)) {
            throw UsageError("exponential fit needs a positive envelope inside the window");
        }
        const double y = std::log(2.0 * envelope[i]);
        sty += t[i] * y;
        stt += t[i] * t[i];
    }
    if (stt == 0.0) {
        throw UsageError("exponential fit window contains only t = 0");
    }
    DecayFit fit;
    fit.model = DecayModel::exponential;
    fit.window = window;
    fit.points = idx.size();
    fit.rate = std::max(0.0, -sty / stt);
    double lin = 0.0;
    double log_res = 0.0;
    for (std::size_t i : idx) {
        const double model = 0.5 * std::exp(-fit.rate * t[i]);
        lin += (envelope[i] - model) * (envelope[i] - model);
        const double r = std::log(2.0 * envelope[i]) + fit.rate * t[i];
        log_res += r * r;
    }
    const double m = static_cast<double>(idx.size());
    fit.residual_rms = std::sqrt(lin / m) / 0.5;
    fit.log_residual_rms = std::sqrt(log_res / m);
    return fit;
}

DecayFit fit_gaussian(std::span<const double> t, std::span<const double> envelope,
                      FitWindow window, int n_bath, double J, double delta, bool c_free) {
    check_series(t, envelope);
    const auto idx = window_indices(t, window);
    const auto guess = two_step_params(n_bath, J, delta);
    const Eigen::Index m = static_cast<Eigen::Index>(idx.size());
    const Eigen::Index np = c_free ? 2 : 1;

    Eigen::VectorXd p(np);
    auto residuals = [&](const Eigen::VectorXd& q, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
        const double b = q(0);
        const double c = c_free ? q(1) : b / 2.0;
        for (Eigen::Index k = 0; k < m; ++k) {
            const double x = t[idx[static_cast<std::size_t>(k)]];
            const double x2 = x * x;
            const double e = std::exp(-c * x2);
            r(k) = two_step_envelope(x, b, c) - envelope[idx[static_cast<std::size_t>(k)]];
            if (jac) {
                const double dc = -(1.0 - b * x2) / 3.0 * e * x2;
                (*jac)(k, 0) = -x2 / 3.0 * e + (c_free ? 0.0 : 0.5 * dc);
                if (c_free) {
                    (*jac)(k, 1) = dc;
                }
            }
        }
    };

    Eigen::VectorXd r(m);
    Eigen::MatrixXd jac(m, np);
    {
        const double center = std::max(guess.b, 1e-6);
        double best_b = 0.0;
        double best_cost = std::numeric_limits<double>::infinity();
        for (int k = -21; k <= 20; ++k) {
            const double b = k == -21 ? 0.0 : center * std::exp2(k);
            p(0) = b;
            if (c_free) {
                p(1) = b / 2.0;
            }
            residuals(p, r, nullptr);
            if (r.squaredNorm() < best_cost) {
                best_cost = r.squaredNorm();
                best_b = b;
            }
        }
        p(0) = best_b;
        if (c_free) {
            p(1) = best_b / 2.0;
        }
    }
    residuals(p, r, &jac);
    double cost = r.squaredNorm();
    double lambda = 1e-3;
    for (int iter = 0; iter < 200; ++iter) {
        const Eigen::MatrixXd jtj = jac.transpose() * jac;
        const Eigen::VectorXd g = jac.transpose() * r;
        Eigen::MatrixXd a = jtj;
        a.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-30);
        const Eigen::VectorXd step = a.ldlt().solve(-g);
        Eigen::VectorXd trial = (p + step).cwiseMax(0.0);
        Eigen::VectorXd r_trial(m);
        residuals(trial, r_trial, nullptr);
        const double trial_cost = r_trial.squaredNorm();
        if (trial_cost < cost) {
            const double rel = (trial - p).norm() / std::max(p.norm(), 1e-12);
            p = trial;
            cost = trial_cost;
            residuals(p, r, &jac);
            lambda = std::max(lambda / 3.0, 1e-12);
            if (rel < 1e-12) {
                break;
            }
        } else {
            lambda *= 4.0;
            if (lambda > 1e12) {
                break;
            }
        }
    }

    DecayFit fit;
    fit.model = DecayModel::gaussian_two_step;
    fit.window = window;
    fit.points = idx.size();
    fit.b = p(0);
    fit.c = c_free ? p(1) : p(0) / 2.0;
    fit.c_free = c_free;
    fit.omega = guess.omega;
    fit.residual_rms = std::sqrt(cost / static_cast<double>(m)) / 0.5;
    return fit;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw UsageError("fit_line needs two equally long series with at least 2 points");
    }
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double den = n * sxx - sx * sx;
    if (den == 0.0) {
        throw UsageError("fit_line: x values are all equal");
    }
    LineFit f;
    f.slope = (n * sxy - sx * sy) / den;
    f.intercept = (sy - f.slope * sx) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.slope * x[i] + f.intercept);
        ss += r * r;
    }
    f.residual_rms = std::sqrt(ss / n);
    return f;
}

} // namespace decohere
