// zeno.hpp — iterated entanglement events on the sector density matrix.
// Each event, with the ancilla unobserved, acts as the pinching map
// rho -> P rho P + Q rho Q (P projects on basis state 0); observing and
// keeping only the undecayed outcome is the filtering map P rho P with its
// trace as branch weight. Ancilla registers are never represented: the
// pinching map is exactly the ancilla-traced entanglement for every
// observable computed here, at polynomial cost instead of 2^N branches.

#pragma once

#include "qzeno/sector.hpp"
#include "qzeno/types.hpp"

#include <cmath>
#include <complex>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace qzeno {

// Hermitian PSD matrix on the sector basis (same ordering as
// SectorHamiltonian). Trace 1, or the retained branch weight after filtering.
template <typename Scalar>
struct SectorDensityMatrix {
    MatrixXC<Scalar> entries;

    Index dimension() const { return entries.rows(); }
};

enum class ZenoMode { incoherent, filtered };

inline const char* to_string(ZenoMode m) {
    return m == ZenoMode::incoherent ? "incoherent" : "filtered";
}

template <typename Scalar>
struct ZenoSchedule {
    int n_events{};     // N >= 1
    Scalar delta_t{};   // free evolution between events, > 0
    ZenoMode mode{ZenoMode::incoherent};
};

// survival[k] after k events, k = 0..N; survival[0] = 1. In filtered mode the
// values are the cumulative retained weight (the product of per-event
// weights), i.e. the survival probability of the whole history.
template <typename Scalar>
struct ZenoRunResult {
    ZenoSchedule<Scalar> schedule;
    std::vector<Scalar> survival;
};

// ------------------------------- state maps ---------------------------------

// Rank-1 projector onto basis state 0 (single photon, environment in vacuum).
template <typename Scalar>
SectorDensityMatrix<Scalar> initial_state(const EigenSystem<Scalar>& e) {
    SectorDensityMatrix<Scalar> rho;
    rho.entries = MatrixXC<Scalar>::Zero(e.dimension(), e.dimension());
    rho.entries(0, 0) = std::complex<Scalar>(1, 0);
    return rho;
}

// U(tau) = V exp(-i Omega tau) V^T from the eigensystem; build once and reuse
// when many events share the same interval.
template <typename Scalar>
MatrixXC<Scalar> propagator(const EigenSystem<Scalar>& e, Scalar tau) {
    VectorXC<Scalar> phases(e.dimension());
    for (Index n = 0; n < e.dimension(); ++n)
        phases[n] = std::polar(Scalar(1), -e.frequencies[n] * tau);
    const MatrixXC<Scalar> vc = e.vectors.template cast<std::complex<Scalar>>();
    return vc * phases.asDiagonal() * vc.transpose();
}

template <typename Scalar>
SectorDensityMatrix<Scalar> evolve(const SectorDensityMatrix<Scalar>& rho,
                                   const EigenSystem<Scalar>& e, Scalar tau) {
    if (rho.dimension() != e.dimension())
        throw std::invalid_argument("evolve: density matrix and eigensystem dimensions differ");
    const MatrixXC<Scalar> u = propagator(e, tau);
    SectorDensityMatrix<Scalar> out;
    out.entries = u * rho.entries * u.adjoint();
    return out;
}

// Pinching map P rho P + Q rho Q: zeroes the row-0/column-0 coherences and
// nothing else. Trace-preserving and idempotent.
template <typename Scalar>
SectorDensityMatrix<Scalar> dephase(const SectorDensityMatrix<Scalar>& rho) {
    SectorDensityMatrix<Scalar> out = rho;
    const Index n = out.dimension();
    out.entries.row(0).tail(n - 1).setZero();
    out.entries.col(0).tail(n - 1).setZero();
    return out;
}

// Reduction-postulate branch: (P rho P, tr(P rho P)). The surviving branch is
// returned unnormalized so repeated filtering accumulates the history weight.
template <typename Scalar>
std::pair<SectorDensityMatrix<Scalar>, Scalar> filter(const SectorDensityMatrix<Scalar>& rho) {
    SectorDensityMatrix<Scalar> out;
    out.entries = MatrixXC<Scalar>::Zero(rho.dimension(), rho.dimension());
    out.entries(0, 0) = std::complex<Scalar>(rho.entries(0, 0).real(), 0);
    return {out, rho.entries(0, 0).real()};
}

// tr(P rho): probability of finding the excitation back in the main mode.
template <typename Scalar>
Scalar survival_weight(const SectorDensityMatrix<Scalar>& rho) {
    return rho.entries(0, 0).real();
}

// ------------------------------ schedule runner ------------------------------

template <typename Scalar>
void validate(const ZenoSchedule<Scalar>& s) {
    if (s.n_events < 1)
        throw std::invalid_argument("ZenoSchedule: need at least one event");
    if (!std::isfinite(static_cast<double>(s.delta_t)) || s.delta_t <= Scalar(0))
        throw std::invalid_argument("ZenoSchedule: delta_t must be finite and positive");
}

// Alternate evolve(delta_t) and the event map, recording the survival after
// each event. Every event uses a fresh, independent ancilla, which is what
// makes the repeated pinching maps multiplicatively independent.
template <typename Scalar>
ZenoRunResult<Scalar> run_schedule(const EigenSystem<Scalar>& e, const ZenoSchedule<Scalar>& s) {
    validate(s);
    const MatrixXC<Scalar> u = propagator(e, s.delta_t);

    ZenoRunResult<Scalar> result;
    result.schedule = s;
    result.survival.reserve(static_cast<std::size_t>(s.n_events) + 1);
    result.survival.push_back(Scalar(1));

    SectorDensityMatrix<Scalar> rho = initial_state(e);
    for (int k = 0; k < s.n_events; ++k) {
        rho.entries = u * rho.entries * u.adjoint();
        if (s.mode == ZenoMode::incoherent) {
            rho = dephase(rho);
            result.survival.push_back(survival_weight(rho));
        } else {
            auto [kept, weight] = filter(rho);
            rho = std::move(kept);
            result.survival.push_back(weight);
        }
    }
    return result;
}

// ------------------------------- limit scans --------------------------------

enum class LimitProtocol {
    shrinking_interval,  // delta_t = total_t / N: freezing limit
    fixed_interval       // delta_t fixed: back-feeding saturates P at 1/2
};

template <typename Scalar>
struct ZenoLimitRow {
    int n_events{};
    Scalar incoherent{};  // P^(N)
    Scalar filtered{};    // Q^(N)
};

// Final survivals for each N under the chosen protocol. time_param is the
// total time (shrinking_interval) or the fixed repetition interval.
template <typename Scalar>
std::vector<ZenoLimitRow<Scalar>> zeno_limit_scan(const EigenSystem<Scalar>& e,
                                                  LimitProtocol protocol, Scalar time_param,
                                                  const std::vector<int>& n_values) {
    if (!std::isfinite(static_cast<double>(time_param)) || time_param <= Scalar(0))
        throw std::invalid_argument("zeno_limit_scan: time parameter must be finite and positive");
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        if (n_values[i] < 1)
            throw std::invalid_argument("zeno_limit_scan: N values must be >= 1");
        if (i > 0 && n_values[i] <= n_values[i - 1])
            throw std::invalid_argument("zeno_limit_scan: N values must ascend");
    }

    std::vector<ZenoLimitRow<Scalar>> table;
    table.reserve(n_values.size());
    for (int n : n_values) {
        const Scalar dt = protocol == LimitProtocol::shrinking_interval
                              ? time_param / Scalar(n)
                              : time_param;
        ZenoLimitRow<Scalar> row;
        row.n_events = n;
        row.incoherent = run_schedule(e, {n, dt, ZenoMode::incoherent}).survival.back();
        row.filtered = run_schedule(e, {n, dt, ZenoMode::filtered}).survival.back();
        table.push_back(row);
    }
    return table;
}

// CSV emission, header `k,t,survival,mode`, one row per event count.
template <typename Scalar>
void write_zeno_csv(std::ostream& out, const ZenoRunResult<Scalar>& r) {
    out.precision(17);
    out << "k,t,survival,mode\n";
    for (std::size_t k = 0; k < r.survival.size(); ++k)
        out << k << "," << Scalar(k) * r.schedule.delta_t << "," << r.survival[k] << ","
            << to_string(r.schedule.mode) << "\n";
}

} // namespace qzeno
