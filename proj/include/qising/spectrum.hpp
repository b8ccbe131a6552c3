#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "qising/chain.hpp"
#include "qising/errors.hpp"

// Free-fermion solution of the extended transverse-field Ising chain with
// couplings to M neighbours and no longitudinal field.  Single-quasiparticle
// energies Lambda_k are dimensionless (units of Gamma).

namespace qising {

// Momentum grid: N even -> -N/2 .. (N-2)/2, N odd -> -(N-1)/2 .. (N-1)/2.
inline std::vector<int> momentum_indices(int n_qubits) {
    if (n_qubits < 3)
        throw invalid_chain_error("momentum grid needs N >= 3, got N=" +
                                  std::to_string(n_qubits));
    const int lo = (n_qubits % 2 == 0) ? -n_qubits / 2 : -(n_qubits - 1) / 2;
    std::vector<int> ks(static_cast<std::size_t>(n_qubits));
    for (int i = 0; i < n_qubits; ++i) ks[static_cast<std::size_t>(i)] = lo + i;
    return ks;
}

inline bool on_momentum_grid(int n_qubits, int k) {
    if (n_qubits % 2 == 0) return k >= -n_qubits / 2 && k <= (n_qubits - 2) / 2;
    return 2 * std::abs(k) <= n_qubits - 1;
}

namespace detail {

// The two quadrature sums entering Lambda_k^2: alternating-sign couplings
// against cos and sin of the j-th harmonic.
struct Brackets {
    double c; // 1 + sum_j (-1)^{j+1} lambda_j cos(2 pi j k / N)
    double s; //     sum_j (-1)^{j+1} lambda_j sin(2 pi j k / N)
};

inline Brackets coupling_brackets(const CouplingProfile& profile, int n_qubits, int k) {
    Brackets b{1.0, 0.0};
    const auto& ls = profile.lambdas();
    for (int j = 1; j <= static_cast<int>(ls.size()); ++j) {
        const double sign = (j % 2 == 1) ? 1.0 : -1.0;
        const double arg = 2.0 * std::numbers::pi * j * k / n_qubits;
        b.c += sign * ls[static_cast<std::size_t>(j) - 1] * std::cos(arg);
        b.s += sign * ls[static_cast<std::size_t>(j) - 1] * std::sin(arg);
    }
    return b;
}

inline void require_on_grid(int n_qubits, int k, const char* what) {
    if (!on_momentum_grid(n_qubits, k))
        throw domain_error(std::string(what) + ": momentum index " + std::to_string(k) +
                           " outside the grid for N=" + std::to_string(n_qubits));
}

} // namespace detail

// Single-quasiparticle energy Lambda_k >= 0 in units of Gamma.
inline double lambda_k(const ChainSpec& spec, int k) {
    detail::require_on_grid(spec.n_qubits, k, "lambda_k");
    const auto b = detail::coupling_brackets(spec.profile, spec.n_qubits, k);
    return std::hypot(b.c, b.s);
}

struct SpectrumResult {
    std::vector<int> k_values;      // momentum grid, ascending
    std::vector<double> lambda_k;   // Lambda_k per grid entry, units of Gamma
    double e_ground;                // -(Gamma/2) sum_k Lambda_k
    int gap_index;                  // argmin_k Lambda_k, ties resolved to k > 0
    std::vector<int> min_indices;   // all grid indices attaining the minimum
    double gap;                     // Gamma * min_k Lambda_k
    bool degenerate;                // min_k Lambda_k <= kDegenerateTol
};

inline SpectrumResult spectrum(const ChainSpec& spec) {
    SpectrumResult r;
    r.k_values = momentum_indices(spec.n_qubits);
    r.lambda_k.reserve(r.k_values.size());
    double sum = 0.0;
    double min_lambda = std::numeric_limits<double>::infinity();
    for (int k : r.k_values) {
        const double l = lambda_k(spec, k);
        r.lambda_k.push_back(l);
        sum += l;
        min_lambda = std::min(min_lambda, l);
    }
    r.e_ground = -0.5 * spec.gamma * sum;
    r.gap = spec.gamma * min_lambda;
    r.degenerate = min_lambda <= kDegenerateTol;
    r.gap_index = 0;
    bool first = true;
    for (std::size_t i = 0; i < r.k_values.size(); ++i) {
        if (r.lambda_k[i] == min_lambda) {
            r.min_indices.push_back(r.k_values[i]);
            // +k and -k are exactly degenerate; report the positive one
            if (first || r.k_values[i] > r.gap_index) r.gap_index = r.k_values[i];
            first = false;
        }
    }
    return r;
}

// phi_ki of the Bogoliubov eigenvector, defined for any integer k:
// sin branch for k > 0, cos branch for k <= 0.  Site index i is 1-based.
inline double mode_phi(int n_qubits, int k, int site) {
    const double norm = std::sqrt(2.0 / n_qubits);
    const double arg = 2.0 * std::numbers::pi * site * k / n_qubits;
    return k > 0 ? norm * std::sin(arg) : norm * std::cos(arg);
}

struct ModeComponents {
    double phi;
    double psi;
};

// (phi_ki, psi_ki) for momentum k and site i (1-based).  psi carries 1/Lambda_k
// and is undefined at a zero mode.
inline ModeComponents eigenvector_components(const ChainSpec& spec, int k, int site) {
    detail::require_on_grid(spec.n_qubits, k, "eigenvector_components");
    if (site < 1 || site > spec.n_qubits)
        throw domain_error("eigenvector_components: site index out of range");
    const auto b = detail::coupling_brackets(spec.profile, spec.n_qubits, k);
    const double lam = std::hypot(b.c, b.s);
    if (lam <= kDegenerateTol)
        throw degenerate_mode_error("eigenvector_components: Lambda_k vanishes at k=" +
                                    std::to_string(k));
    const double phi = mode_phi(spec.n_qubits, k, site);
    const double phi_neg = mode_phi(spec.n_qubits, -k, site);
    return {phi, -(b.c * phi + b.s * phi_neg) / lam};
}

struct ClosedFormGap {
    double exact;   // square-root form, equals Gamma * Lambda_{(N-1)/2}
    double large_n; // N >> 1 approximation
};

// Closed-form energy gap for couplings up to the next-nearest neighbour,
// N odd and lambda_2 < 1 (minimum sits at k = +-(N-1)/2).
inline ClosedFormGap gap_closed_form(const ChainSpec& spec) {
    if (spec.profile.m_neighbours() > 2)
        throw domain_error("gap_closed_form covers at most next-nearest neighbours");
    if (spec.n_qubits % 2 == 0)
        throw domain_error("gap_closed_form requires N odd");
    const double l1 = spec.profile.lambda(1);
    const double l2 = spec.profile.lambda(2);
    if (l2 >= 1.0)
        throw unsupported_regime_error(
            "lambda_2 >= 1: the minimum moves to k = 0 and the closed form does not apply");
    const double n = spec.n_qubits;
    const double pi = std::numbers::pi;
    const double exact2 = 1.0 + l1 * l1 + l2 * l2 -
                          2.0 * l1 * (1.0 - l2) * std::cos(pi / n) -
                          2.0 * l2 * std::cos(2.0 * pi / n);
    const double approx2 = (l1 + l2 - 1.0) * (l1 + l2 - 1.0) +
                           (l1 - l1 * l2 + 4.0 * l2) * (pi / n) * (pi / n);
    return {spec.gamma * std::sqrt(std::max(exact2, 0.0)),
            spec.gamma * std::sqrt(std::max(approx2, 0.0))};
}

// Minimum gap at the critical point sum_j lambda_j = 1:
// (pi Gamma / N) * sum_j j lambda_j.
inline double min_gap_at_criticality(const CouplingProfile& profile, double gamma, int n_qubits) {
    if (std::abs(profile.lambda_sum() - 1.0) > 1e-9)
        throw constraint_error("min_gap_at_criticality requires sum(lambda) = 1, got " +
                               std::to_string(profile.lambda_sum()));
    if (n_qubits % 2 == 0)
        throw domain_error("min_gap_at_criticality requires N odd");
    if (2 * profile.m_neighbours() >= n_qubits)
        throw invalid_chain_error("interaction range M must satisfy M < N/2");
    if (!(gamma > 0.0))
        throw invalid_chain_error("transverse scale Gamma must be positive");
    return std::numbers::pi * gamma / n_qubits * profile.weighted_moment();
}

} // namespace qising
