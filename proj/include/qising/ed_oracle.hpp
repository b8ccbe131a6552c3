#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <lapacke.h>

#include "qising/chain.hpp"
#include "qising/errors.hpp"
#include "qising/spectrum.hpp"

// Brute-force exact diagonalization of the spin chain on the full 2^N basis.
// Ground truth for the analytic spectrum and the perturbative corrections at
// small N.

namespace qising {

inline constexpr int kMaxOracleQubits = 16;

// Operator convention carried by every matrix this module builds:
//   H = Gamma sum_i S_z^i + J_1 sum_i S_x^i S_x^{i+1}
//       + J_2 sum_i S_x^i sigma_z^{i+1} S_x^{i+2} + sum_i h_i S_x^i
// with S = sigma/2 on the field and coupling endpoints, the bare Pauli
// sigma_z in the middle of the three-site term, and J_j = 2 Gamma lambda_j.
// Under this normalization the quasiparticle energies come out in units of
// Gamma and a decoupled chain has gap exactly Gamma.
inline constexpr const char* kConventionTag =
    "spin-half endpoints; pauli-z mid-string; J_j = 2*Gamma*lambda_j; field h_i*S_x";

enum class Boundary { Periodic, Open };

struct DenseHamiltonian {
    int n_qubits = 0;
    std::size_t dim = 0;
    std::vector<double> a; // dense symmetric, row-major dim x dim
    std::string convention_tag = kConventionTag;

    double at(std::size_t r, std::size_t c) const { return a[r * dim + c]; }
    double& at(std::size_t r, std::size_t c) { return a[r * dim + c]; }
};

// Basis convention: bit i of the index set <=> spin up on site i (S_z = +1/2),
// so the decoupled ground state is the all-zeros index.
inline DenseHamiltonian build_hamiltonian(const ChainSpec& spec,
                                          Boundary boundary = Boundary::Periodic) {
    if (spec.n_qubits > kMaxOracleQubits)
        throw capacity_error("dense oracle capped at N <= " +
                             std::to_string(kMaxOracleQubits) + ", got N=" +
                             std::to_string(spec.n_qubits));
    if (spec.profile.m_neighbours() > 2)
        throw unsupported_interaction_error(
            "dense oracle implements couplings up to the next-nearest neighbour only");

    const int n = spec.n_qubits;
    const std::size_t dim = std::size_t{1} << n;
    DenseHamiltonian h;
    h.n_qubits = n;
    h.dim = dim;
    h.a.assign(dim * dim, 0.0);

    const double gamma = spec.gamma;
    const double j1 = 2.0 * gamma * spec.profile.lambda(1);
    const double j2 = 2.0 * gamma * spec.profile.lambda(2);

    for (std::size_t b = 0; b < dim; ++b) {
        const int ups = std::popcount(b);
        h.at(b, b) += gamma * (ups - 0.5 * n);
        for (int i = 0; i < n; ++i) {
            const double hi = spec.h_field.at(i + 1);
            if (hi != 0.0) h.at(b ^ (std::size_t{1} << i), b) += 0.5 * hi;
            const int i1 = (i + 1) % n;
            const int i2 = (i + 2) % n;
            const bool wrap1 = i1 < i;
            const bool wrap2 = i2 < i;
            if (j1 != 0.0 && (boundary == Boundary::Periodic || !wrap1)) {
                const std::size_t m = (std::size_t{1} << i) | (std::size_t{1} << i1);
                h.at(b ^ m, b) += 0.25 * j1;
            }
            if (j2 != 0.0 && (boundary == Boundary::Periodic || !wrap2)) {
                const std::size_t m = (std::size_t{1} << i) | (std::size_t{1} << i2);
                const double mid = (b >> i1) & 1 ? 1.0 : -1.0;
                h.at(b ^ m, b) += 0.25 * j2 * mid;
            }
        }
    }
    return h;
}

struct OracleSpectrum {
    std::vector<double> eigenvalues; // ascending, the lowest n_levels
    double gap = 0.0;                // E_1 - E_0
    bool parity_even_in_h = false;   // diagnostic, filled on request
};

namespace detail {

inline double norm1(const DenseHamiltonian& h) {
    double best = 0.0;
    for (std::size_t c = 0; c < h.dim; ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < h.dim; ++r) s += std::abs(h.at(r, c));
        best = std::max(best, s);
    }
    return best;
}

// Lowest n_levels eigenpairs of a dense symmetric matrix.  The input matrix is
// preserved; vectors are returned column-major dim x n_levels.
inline void lowest_eigenpairs(const DenseHamiltonian& h, int n_levels,
                              std::vector<double>& w, std::vector<double>& z) {
    const auto n = static_cast<lapack_int>(h.dim);
    std::vector<double> work = h.a; // destroyed by the solver
    w.assign(h.dim, 0.0);
    z.assign(h.dim * static_cast<std::size_t>(n_levels), 0.0);
    std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(n_levels));
    lapack_int found = 0;
    // the matrix is symmetric and fully stored, so the column-major view is valid
    const lapack_int info = LAPACKE_dsyevr(
        LAPACK_COL_MAJOR, 'V', n_levels == n ? 'A' : 'I', 'L', n, work.data(), n,
        0.0, 0.0, 1, n_levels, 0.0, &found, w.data(), z.data(), n, isuppz.data());
    if (info != 0)
        throw solver_error("dsyevr failed with info=" + std::to_string(info));
    if (found < n_levels)
        throw solver_error("dsyevr returned fewer eigenpairs than requested");
    w.resize(static_cast<std::size_t>(n_levels));
}

inline std::vector<double> all_eigenvalues(const DenseHamiltonian& h) {
    const auto n = static_cast<lapack_int>(h.dim);
    std::vector<double> work = h.a;
    std::vector<double> w(h.dim, 0.0);
    std::vector<double> z(1, 0.0); // not referenced with jobz='N'
    std::vector<lapack_int> isuppz(2 * h.dim);
    lapack_int found = 0;
    const lapack_int info =
        LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'N', 'A', 'L', n, work.data(), n, 0.0, 0.0,
                       1, n, 0.0, &found, w.data(), z.data(), n, isuppz.data());
    if (info != 0)
        throw solver_error("dsyevr failed with info=" + std::to_string(info));
    return w;
}

} // namespace detail

// Lowest n_levels eigenvalues with a per-pair residual check
// ||H v - w v|| <= 1e-9 ||H||.
inline OracleSpectrum oracle_spectrum(const DenseHamiltonian& h, int n_levels) {
    if (n_levels < 1 || static_cast<std::size_t>(n_levels) > h.dim)
        throw domain_error("oracle_spectrum: n_levels out of range");
    std::vector<double> w, z;
    detail::lowest_eigenpairs(h, n_levels, w, z);
    const double bound = 1e-9 * detail::norm1(h);
    std::vector<double> hv(h.dim);
    for (int j = 0; j < n_levels; ++j) {
        const double* v = z.data() + static_cast<std::size_t>(j) * h.dim;
        double res2 = 0.0;
        for (std::size_t r = 0; r < h.dim; ++r) {
            double s = 0.0;
            for (std::size_t c = 0; c < h.dim; ++c) s += h.at(r, c) * v[c];
            const double d = s - w[static_cast<std::size_t>(j)] * v[r];
            res2 += d * d;
        }
        if (std::sqrt(res2) > bound)
            throw solver_error("eigenpair " + std::to_string(j) + " residual " +
                               std::to_string(std::sqrt(res2)) + " exceeds bound " +
                               std::to_string(bound));
    }
    OracleSpectrum s;
    s.eigenvalues = std::move(w);
    s.gap = n_levels >= 2 ? s.eigenvalues[1] - s.eigenvalues[0] : 0.0;
    return s;
}

// Largest absolute difference between the full spectra at +h and -h; zero in
// exact arithmetic since flipping the field is a basis rotation.
inline double spectrum_h_parity_deviation(const ChainSpec& spec,
                                          Boundary boundary = Boundary::Periodic) {
    std::vector<double> neg;
    if (spec.h_field.is_uniform()) {
        neg.assign(static_cast<std::size_t>(spec.n_qubits), -spec.h_field.uniform_value());
    } else {
        neg.resize(static_cast<std::size_t>(spec.n_qubits));
        for (int i = 1; i <= spec.n_qubits; ++i)
            neg[static_cast<std::size_t>(i) - 1] = -spec.h_field.at(i);
    }
    const auto wp = detail::all_eigenvalues(build_hamiltonian(spec, boundary));
    const auto wm = detail::all_eigenvalues(
        build_hamiltonian(spec.with_field(LongitudinalField::per_site(neg)), boundary));
    double dev = 0.0;
    for (std::size_t i = 0; i < wp.size(); ++i) dev = std::max(dev, std::abs(wp[i] - wm[i]));
    return dev;
}

// Convenience: build + solve, optionally with the +-h parity diagnostic.
inline OracleSpectrum oracle_spectrum(const ChainSpec& spec, Boundary boundary,
                                      int n_levels, bool check_parity = false) {
    OracleSpectrum s = oracle_spectrum(build_hamiltonian(spec, boundary), n_levels);
    if (check_parity)
        s.parity_even_in_h = spectrum_h_parity_deviation(spec, boundary) <= 1e-12;
    return s;
}

struct DiscrepancyReport {
    double gap_oracle;
    double gap_analytic;
    double discrepancy;       // |gap_oracle - gap_analytic|
    double scaled_discrepancy; // N * discrepancy / Gamma
};

// Oracle gap (with the spec's field) against the closed-form gap of the
// field-free theory.  The leftover measures the neglected boundary terms.
inline DiscrepancyReport compare_to_analytic(const ChainSpec& spec,
                                             Boundary boundary = Boundary::Periodic) {
    const auto oracle = oracle_spectrum(spec, boundary, 8);
    const auto analytic = spectrum(spec.without_field());
    DiscrepancyReport r;
    r.gap_oracle = oracle.gap;
    r.gap_analytic = analytic.gap;
    r.discrepancy = std::abs(r.gap_oracle - r.gap_analytic);
    r.scaled_discrepancy = spec.n_qubits * r.discrepancy / spec.gamma;
    return r;
}

// Least-squares slope of log(gap(h) - gap(0)) against log(h); equals the
// leading power of the field in the gap shift.
inline double fit_gap_exponent(const ChainSpec& base, const std::vector<double>& hs,
                               Boundary boundary = Boundary::Periodic) {
    if (hs.size() < 2) throw domain_error("fit_gap_exponent needs at least two field values");
    const double gap0 =
        oracle_spectrum(base.without_field(), boundary, 2).gap;
    std::vector<double> lx, ly;
    for (double h : hs) {
        if (!(h > 0.0)) throw domain_error("fit_gap_exponent needs h > 0");
        const double gap =
            oracle_spectrum(base.with_field(LongitudinalField::uniform(h)), boundary, 2).gap;
        lx.push_back(std::log(h));
        ly.push_back(std::log(std::abs(gap - gap0)));
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(lx.size());
    my /= static_cast<double>(ly.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        num += (lx[i] - mx) * (ly[i] - my);
        den += (lx[i] - mx) * (lx[i] - mx);
    }
    return num / den;
}

} // namespace qising
