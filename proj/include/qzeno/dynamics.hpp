// dynamics.hpp — survival amplitude A(t), decayed-component overlap B_t(tau),
// probabilities and decay rates, all evaluated from the spectral sum. No time
// stepping anywhere: every quantity is an explicit function of the eigensystem,
// so evolution is exactly unitary at any t and trivially parallel over grids.

#pragma once

#include "qzeno/sector.hpp"
#include "qzeno/series.hpp"
#include "qzeno/types.hpp"

#include <cmath>
#include <complex>
#include <ostream>

namespace qzeno {

// A(t) = sum_n |a_n|^2 exp(-i Omega_n t). A(-t) = conj(A(t)), |A| <= 1, A(0) = 1.
template <typename Scalar>
std::complex<Scalar> survival_amplitude(const EigenSystem<Scalar>& e, Scalar t) {
    std::complex<Scalar> acc{};
    for (Index n = 0; n < e.dimension(); ++n) {
        const Scalar w = e.overlaps[n] * e.overlaps[n];
        acc += w * std::polar(Scalar(1), -e.frequencies[n] * t);
    }
    return acc;
}

// dA/dt = -i sum_n |a_n|^2 Omega_n exp(-i Omega_n t); derivatives are taken
// term-wise, never by finite differences.
template <typename Scalar>
std::complex<Scalar> amplitude_derivative(const EigenSystem<Scalar>& e, Scalar t) {
    std::complex<Scalar> acc{};
    const std::complex<Scalar> minus_i(0, -1);
    for (Index n = 0; n < e.dimension(); ++n) {
        const Scalar w = e.overlaps[n] * e.overlaps[n];
        acc += w * (minus_i * e.frequencies[n]) * std::polar(Scalar(1), -e.frequencies[n] * t);
    }
    return acc;
}

// B_t(tau) = <initial| exp(-iH tau) |decayed component at t> = A(t+tau) - A(t) A(tau).
// Vanishes at t = 0 and at tau = 0.
template <typename Scalar>
std::complex<Scalar> orthogonal_amplitude(const EigenSystem<Scalar>& e, Scalar t, Scalar tau) {
    return survival_amplitude(e, t + tau) -
           survival_amplitude(e, t) * survival_amplitude(e, tau);
}

template <typename Scalar>
Scalar survival_probability(const EigenSystem<Scalar>& e, Scalar t) {
    return std::norm(survival_amplitude(e, t));
}

// Three-term split of P(t+tau): |A(t)|^2 |A(tau)|^2 + |B_t(tau)|^2
// + 2 Re[A(t) A(tau) B_t^*(tau)]. An algebraic identity with P(t+tau); the
// cross term is the piece an intervening dephasing event erases.
template <typename Scalar>
Scalar recompose_probability(const EigenSystem<Scalar>& e, Scalar t, Scalar tau) {
    const std::complex<Scalar> at = survival_amplitude(e, t);
    const std::complex<Scalar> atau = survival_amplitude(e, tau);
    const std::complex<Scalar> b = survival_amplitude(e, t + tau) - at * atau;
    return std::norm(at) * std::norm(atau) + std::norm(b) +
           Scalar(2) * std::real(at * atau * std::conj(b));
}

// Instantaneous decay rate -dP/dt expressed through the coherence of the
// undecayed and decayed components: -2 Re[A(t) conj(dB_t/dtau|_0)] with
// dB_t/dtau|_0 = A'(t) + i <H> A(t). Zero at t = 0 for every finite model.
template <typename Scalar>
Scalar decay_rate(const EigenSystem<Scalar>& e, Scalar t) {
    const std::complex<Scalar> a = survival_amplitude(e, t);
    const std::complex<Scalar> ap = amplitude_derivative(e, t);
    const std::complex<Scalar> db0 = ap + std::complex<Scalar>(0, 1) * mean_energy(e) * a;
    return Scalar(-2) * std::real(a * std::conj(db0));
}

// Survival probability after a dephasing event at time t followed by free
// evolution for tau: P(t) P(tau) + |B_t(tau)|^2 — the recomposition without
// its cross term.
template <typename Scalar>
Scalar entangled_probability(const EigenSystem<Scalar>& e, Scalar t, Scalar tau) {
    const std::complex<Scalar> at = survival_amplitude(e, t);
    const std::complex<Scalar> atau = survival_amplitude(e, tau);
    const std::complex<Scalar> b = survival_amplitude(e, t + tau) - at * atau;
    return std::norm(at) * std::norm(atau) + std::norm(b);
}

// -d/dtau of entangled_probability, assembled from term-wise derivatives.
// Zero at tau = 0 for any finite model: the event resets the rate.
template <typename Scalar>
Scalar entangled_decay_rate(const EigenSystem<Scalar>& e, Scalar t, Scalar tau) {
    const std::complex<Scalar> at = survival_amplitude(e, t);
    const std::complex<Scalar> atau = survival_amplitude(e, tau);
    const std::complex<Scalar> aptau = amplitude_derivative(e, tau);
    const std::complex<Scalar> b = survival_amplitude(e, t + tau) - at * atau;
    const std::complex<Scalar> bp = amplitude_derivative(e, t + tau) - at * aptau;
    const Scalar dp_tau = Scalar(2) * std::real(std::conj(atau) * aptau);
    const Scalar db2 = Scalar(2) * std::real(std::conj(b) * bp);
    return -(std::norm(at) * dp_tau + db2);
}

// First-order short-time behavior 1 - i t <H>; documented as first order only.
template <typename Scalar>
std::complex<Scalar> short_time_expansion(const EigenSystem<Scalar>& e, Scalar t) {
    return std::complex<Scalar>(1, 0) - std::complex<Scalar>(0, 1) * t * mean_energy(e);
}

// ------------------------------- grid sampling ------------------------------

template <typename Scalar, typename Derived>
AmplitudeSeries<Scalar> sample_amplitudes(const EigenSystem<Scalar>& e,
                                          const Eigen::MatrixBase<Derived>& times) {
    AmplitudeSeries<Scalar> s;
    s.times = times.template cast<Scalar>();
    for (Index i = 1; i < s.times.size(); ++i)
        if (!(s.times[i] > s.times[i - 1]))
            throw std::invalid_argument("sample_amplitudes: time grid must ascend");
    s.values.resize(s.times.size());
    for (Index i = 0; i < s.times.size(); ++i)
        s.values[i] = survival_amplitude(e, s.times[i]);
    s.source = e.label;
    return s;
}

// CSV emission, header `t,reA,imA,P,rate`, 17 significant digits, LF endings.
template <typename Scalar>
void write_series_csv(std::ostream& out, const EigenSystem<Scalar>& e,
                      const AmplitudeSeries<Scalar>& s) {
    out.precision(17);
    out << "t,reA,imA,P,rate\n";
    for (Index i = 0; i < s.size(); ++i) {
        const Scalar t = s.times[i];
        const std::complex<Scalar> a = s.values[i];
        out << t << "," << a.real() << "," << a.imag() << "," << std::norm(a) << ","
            << decay_rate(e, t) << "\n";
    }
}

} // namespace qzeno
