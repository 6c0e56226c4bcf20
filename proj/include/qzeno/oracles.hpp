// oracles.hpp — closed-form references for the two solvable regimes, plus the
// exponential-rate fit. Deliberately shares no code with the numerical engine
// (only the plain data types): engine-vs-oracle agreement is the evidence the
// test suites rest on.

#pragma once

#include "qzeno/series.hpp"
#include "qzeno/types.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qzeno::oracles {

// Two identical resonant modes with coupling g; omega0 enters only as a
// global phase and is excluded.
template <typename Scalar>
struct CaseIParams {
    Scalar g{};
};

template <typename Scalar>
void validate(const CaseIParams<Scalar>& p) {
    if (!std::isfinite(static_cast<double>(p.g)) || p.g <= Scalar(0))
        throw std::invalid_argument("CaseIParams: g must be finite and positive");
}

// P(t) = cos^2(g t)
template <typename Scalar>
Scalar case1_probability(const CaseIParams<Scalar>& p, Scalar t) {
    const Scalar c = std::cos(p.g * t);
    return c * c;
}

// P_ent(t+tau) = cos^2 g(t+tau) + (1/2) sin(2gt) sin(2g tau)
template <typename Scalar>
Scalar case1_entangled(const CaseIParams<Scalar>& p, Scalar t, Scalar tau) {
    const Scalar c = std::cos(p.g * (t + tau));
    return c * c + Scalar(0.5) * std::sin(2 * p.g * t) * std::sin(2 * p.g * tau);
}

// -d/dtau P_ent = g cos(2gt) sin(2g tau), tau > 0
template <typename Scalar>
Scalar case1_entangled_rate(const CaseIParams<Scalar>& p, Scalar t, Scalar tau) {
    return p.g * std::cos(2 * p.g * t) * std::sin(2 * p.g * tau);
}

// P^(N)(N dt) = (1 + cos^N(2g dt)) / 2 — unobserved ancillas, back-feeding kept
template <typename Scalar>
Scalar zeno_incoherent_closed(const CaseIParams<Scalar>& p, int n, Scalar dt) {
    return Scalar(0.5) * (Scalar(1) + std::pow(std::cos(2 * p.g * dt), Scalar(n)));
}

// Q^(N)(N dt) = cos^(2N)(g dt) — reduction postulate after each event
template <typename Scalar>
Scalar zeno_filtered_closed(const CaseIParams<Scalar>& p, int n, Scalar dt) {
    const Scalar c = std::cos(p.g * dt);
    return std::pow(c * c, Scalar(n));
}

// Exponential-decay regime: rate gamma, line center omega_center.
template <typename Scalar>
struct CaseIIParams {
    Scalar gamma{};
    Scalar omega_center{};
};

template <typename Scalar>
void validate(const CaseIIParams<Scalar>& p) {
    if (!std::isfinite(static_cast<double>(p.gamma)) || p.gamma <= Scalar(0))
        throw std::invalid_argument("CaseIIParams: gamma must be finite and positive");
}

// Normalized Lorentzian weight density (per unit frequency):
// (1/2pi) gamma / ((omega - omega_center)^2 + gamma^2/4)
template <typename Scalar>
Scalar breit_wigner_density(const CaseIIParams<Scalar>& p, Scalar omega) {
    const Scalar d = omega - p.omega_center;
    return p.gamma / (Scalar(2) * std::numbers::pi_v<Scalar>) /
           (d * d + p.gamma * p.gamma / Scalar(4));
}

// A(t) = exp(-gamma t / 2), optionally carrying the center-frequency phase
// exp(-i omega_center t) (off by default). Factorizes: A(t+tau) = A(t) A(tau).
template <typename Scalar>
std::complex<Scalar> exponential_amplitude(const CaseIIParams<Scalar>& p, Scalar t,
                                           bool include_phase = false) {
    const Scalar mag = std::exp(-p.gamma * t / Scalar(2));
    if (!include_phase) return {mag, Scalar(0)};
    return std::polar(mag, -p.omega_center * t);
}

// -dP/dtau at tau=0 after decaying for t: gamma exp(-gamma t)
template <typename Scalar>
Scalar exponential_rate(const CaseIIParams<Scalar>& p, Scalar t) {
    return p.gamma * std::exp(-p.gamma * t);
}

// Golden-rule rate for a uniform grid: gamma = 2 pi g^2 / spacing
// (density of states dn/dOmega = 1/spacing).
template <typename Scalar>
Scalar golden_rule_gamma(Scalar coupling, Scalar spacing) {
    if (!(coupling > Scalar(0)) || !(spacing > Scalar(0)))
        throw std::invalid_argument("golden_rule_gamma: coupling and spacing must be positive");
    return Scalar(2) * std::numbers::pi_v<Scalar> * coupling * coupling / spacing;
}

// ----------------------------- exponential fit -------------------------------

template <typename Scalar>
struct GammaFit {
    Scalar gamma{};         // least-squares slope of -2 log|A(t)|
    Scalar residual_rms{};  // RMS of the fit residuals
};

// Unweighted least squares of -2 log|A| against t over [t_lo, t_hi]. The
// window must lie on the grid, contain at least two distinct times, and keep
// |A| > 1e-6 throughout. A non-exponential series is reported through a large
// residual, not an error.
template <typename Scalar>
GammaFit<Scalar> fit_gamma(const AmplitudeSeries<Scalar>& s, Scalar t_lo, Scalar t_hi) {
    if (!(t_lo < t_hi))
        throw std::invalid_argument("fit_gamma: window must satisfy t_lo < t_hi");

    std::vector<Scalar> t, y;
    for (Index i = 0; i < s.size(); ++i) {
        if (s.times[i] < t_lo || s.times[i] > t_hi) continue;
        const Scalar mag = std::abs(s.values[i]);
        if (!(mag > Scalar(1e-6)))
            throw std::domain_error("fit_gamma: amplitude below 1e-6 inside the fit window");
        t.push_back(s.times[i]);
        y.push_back(Scalar(-2) * std::log(mag));
    }
    if (t.size() < 2)
        throw std::invalid_argument("fit_gamma: window selects fewer than two grid points");

    const Scalar n = Scalar(t.size());
    Scalar mean_t = 0, mean_y = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        mean_t += t[i];
        mean_y += y[i];
    }
    mean_t /= n;
    mean_y /= n;

    Scalar stt = 0, sty = 0;
    bool constant = true;
    for (std::size_t i = 0; i < t.size(); ++i) {
        stt += (t[i] - mean_t) * (t[i] - mean_t);
        sty += (t[i] - mean_t) * (y[i] - mean_y);
        if (y[i] != y[0]) constant = false;
    }
    if (stt == Scalar(0) || constant)
        throw std::invalid_argument("fit_gamma: degenerate (constant) series in window");

    GammaFit<Scalar> fit;
    fit.gamma = sty / stt;
    const Scalar intercept = mean_y - fit.gamma * mean_t;
    Scalar ss = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const Scalar r = y[i] - (fit.gamma * t[i] + intercept);
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / n);
    return fit;
}

} // namespace qzeno::oracles
