// sector.hpp — single-excitation sector: arrowhead Hamiltonian and its eigensystem

#pragma once

#include "qzeno/spectral.hpp"
#include "qzeno/types.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace qzeno {

// (K+1)x(K+1) real symmetric arrowhead matrix on the single-excitation basis.
// Basis state 0 carries the main-mode excitation; state k the k-th
// environment mode's. Only row/column 0 has off-diagonal entries.
template <typename Scalar>
struct SectorHamiltonian {
    Scalar omega0{};
    VectorX<Scalar> mode_freqs;  // ascending, matches the source model
    VectorX<Scalar> couplings;   // arrow entries linking state 0 to state k
    std::string label;

    Index dimension() const { return mode_freqs.size() + 1; }

    MatrixX<Scalar> dense() const {
        const Index n = dimension();
        MatrixX<Scalar> h = MatrixX<Scalar>::Zero(n, n);
        h(0, 0) = omega0;
        h.col(0).tail(n - 1) = couplings;
        h.row(0).tail(n - 1) = couplings.transpose();
        h.diagonal().tail(n - 1) = mode_freqs;
        return h;
    }
};

template <typename Scalar>
SectorHamiltonian<Scalar> assemble_hamiltonian(const SpectralModel<Scalar>& m) {
    validate(m);
    SectorHamiltonian<Scalar> h;
    h.omega0 = m.omega0;
    h.label = m.label;
    const Index k = m.mode_count();
    h.mode_freqs.resize(k);
    h.couplings.resize(k);
    for (Index i = 0; i < k; ++i) {
        h.mode_freqs[i] = m.modes[static_cast<std::size_t>(i)].omega;
        h.couplings[i] = m.modes[static_cast<std::size_t>(i)].coupling;
    }
    return h;
}

// Eigenfrequencies Omega_n (ascending), orthonormal eigenvectors (columns),
// and the initial-state overlaps a_n = <Omega_n|basis 0>. Signs are fixed so
// a_n >= 0 wherever |a_n| > 1e-14, else the first nonzero component is made
// positive; diagonalize is therefore deterministic bit-for-bit.
template <typename Scalar>
struct EigenSystem {
    VectorX<Scalar> frequencies;
    VectorX<Scalar> overlaps;
    MatrixX<Scalar> vectors;
    std::string label;

    Index dimension() const { return frequencies.size(); }

    // |a_n|^2, the spectral weights of the initial state
    auto weights() const { return overlaps.array().square(); }
};

template <typename Scalar>
EigenSystem<Scalar> diagonalize(const SectorHamiltonian<Scalar>& h) {
    const MatrixX<Scalar> dense = h.dense();
    Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> solver(dense);
    if (solver.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "diagonalize: eigensolver failed to converge (dim=" << h.dimension()
            << ", diag range [" << dense.diagonal().minCoeff() << ", "
            << dense.diagonal().maxCoeff() << "], max coupling "
            << h.couplings.cwiseAbs().maxCoeff() << ")";
        throw numerical_error(msg.str());
    }

    EigenSystem<Scalar> e;
    e.label = h.label;
    e.frequencies = solver.eigenvalues();
    e.vectors = solver.eigenvectors();

    const Scalar sign_tol = Scalar(1e-14);
    const Index n = e.dimension();
    for (Index col = 0; col < n; ++col) {
        Scalar lead = e.vectors(0, col);
        if (std::abs(lead) <= sign_tol) {
            for (Index row = 0; row < n; ++row) {
                if (e.vectors(row, col) != Scalar(0)) {
                    lead = e.vectors(row, col);
                    break;
                }
            }
        }
        if (lead < Scalar(0)) e.vectors.col(col) = -e.vectors.col(col);
    }
    e.overlaps = e.vectors.row(0).transpose();
    return e;
}

// <basis 0|H|basis 0> recovered from the spectral data: sum_n |a_n|^2 Omega_n.
// Equals the source model's omega0 up to roundoff.
template <typename Scalar>
Scalar mean_energy(const EigenSystem<Scalar>& e) {
    return (e.weights() * e.frequencies.array()).sum();
}

// CSV dump of (Omega_n, |a_n|^2), header `omega,weight`, LF endings.
template <typename Scalar>
void write_spectrum_csv(std::ostream& out, const EigenSystem<Scalar>& e) {
    out.precision(17);
    out << "omega,weight\n";
    for (Index n = 0; n < e.dimension(); ++n)
        out << e.frequencies[n] << "," << e.overlaps[n] * e.overlaps[n] << "\n";
}

} // namespace qzeno
