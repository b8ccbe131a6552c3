#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qising/errors.hpp"

namespace qising {

// |sum(lambda) - 1| below this counts as sitting exactly at the critical point.
inline constexpr double kCriticalTol = 1e-12;

// Quasiparticle energies below this are treated as an exact zero mode.
inline constexpr double kDegenerateTol = 1e-12;

enum class ProfileKind { Explicit, LinearDecay, ExponentialDecay };

// Dimensionless couplings lambda_j = J_j / (2 Gamma) to the j-th neighbour,
// j = 1..M.  The decay profiles are normalized so that sum_j lambda_j = 1.
class CouplingProfile {
public:
    static CouplingProfile explicit_profile(std::vector<double> lambdas) {
        for (double l : lambdas) {
            if (!std::isfinite(l))
                throw invalid_chain_error("coupling profile contains a non-finite lambda");
        }
        return CouplingProfile(ProfileKind::Explicit, std::move(lambdas));
    }

    // lambda_j = c / j with c fixed by sum_j lambda_j = 1.
    static CouplingProfile linear_decay(int m_neighbours) {
        return decay(ProfileKind::LinearDecay, m_neighbours,
                     [](int j) { return 1.0 / j; });
    }

    // lambda_j = c * exp(-j) with c fixed by sum_j lambda_j = 1.
    static CouplingProfile exponential_decay(int m_neighbours) {
        return decay(ProfileKind::ExponentialDecay, m_neighbours,
                     [](int j) { return std::exp(-static_cast<double>(j)); });
    }

    ProfileKind kind() const { return kind_; }
    int m_neighbours() const { return static_cast<int>(lambdas_.size()); }
    const std::vector<double>& lambdas() const { return lambdas_; }

    // 1-based neighbour index; couplings beyond M are zero.
    double lambda(int j) const {
        if (j < 1) throw domain_error("neighbour index must be >= 1");
        return j <= m_neighbours() ? lambdas_[static_cast<std::size_t>(j) - 1] : 0.0;
    }

    double lambda_sum() const {
        double s = 0.0;
        for (double l : lambdas_) s += l;
        return s;
    }

    // weighted moment sum_j j * lambda_j; controls the gap at criticality
    double weighted_moment() const {
        double s = 0.0;
        for (int j = 1; j <= m_neighbours(); ++j) s += j * lambdas_[static_cast<std::size_t>(j) - 1];
        return s;
    }

    bool critical() const { return std::abs(lambda_sum() - 1.0) <= kCriticalTol; }

private:
    CouplingProfile(ProfileKind kind, std::vector<double> lambdas)
        : kind_(kind), lambdas_(std::move(lambdas)) {}

    template <typename WeightFn>
    static CouplingProfile decay(ProfileKind kind, int m, WeightFn w) {
        if (m < 1) throw invalid_chain_error("decay profiles need at least one neighbour");
        std::vector<double> ls(static_cast<std::size_t>(m));
        double norm = 0.0;
        for (int j = 1; j <= m; ++j) norm += w(j);
        for (int j = 1; j <= m; ++j) ls[static_cast<std::size_t>(j) - 1] = w(j) / norm;
        return CouplingProfile(kind, std::move(ls));
    }

    ProfileKind kind_;
    std::vector<double> lambdas_;
};

// Longitudinal field along x: a uniform scalar h or one value per site.
class LongitudinalField {
public:
    LongitudinalField() = default; // zero uniform field

    static LongitudinalField uniform(double h) {
        if (!std::isfinite(h)) throw invalid_chain_error("field value must be finite");
        LongitudinalField f;
        f.uniform_ = true;
        f.h_ = h;
        return f;
    }

    static LongitudinalField per_site(std::vector<double> values) {
        for (double v : values) {
            if (!std::isfinite(v)) throw invalid_chain_error("field value must be finite");
        }
        LongitudinalField f;
        f.uniform_ = false;
        f.values_ = std::move(values);
        return f;
    }

    bool is_uniform() const { return uniform_; }

    double uniform_value() const {
        if (!uniform_) throw domain_error("field is site-dependent, no single value");
        return h_;
    }

    // 1-based site index.
    double at(int site) const {
        if (uniform_) return h_;
        if (site < 1 || site > static_cast<int>(values_.size()))
            throw domain_error("field site index out of range");
        return values_[static_cast<std::size_t>(site) - 1];
    }

    int n_sites() const { return uniform_ ? -1 : static_cast<int>(values_.size()); }

    double max_abs() const {
        if (uniform_) return std::abs(h_);
        double m = 0.0;
        for (double v : values_) m = std::max(m, std::abs(v));
        return m;
    }

    bool is_zero() const { return max_abs() == 0.0; }

private:
    bool uniform_ = true;
    double h_ = 0.0;
    std::vector<double> values_;
};

// The physical chain: qubit count N, transverse scale Gamma (sets the energy
// unit), coupling profile, and longitudinal field.
struct ChainSpec {
    int n_qubits;
    double gamma;
    CouplingProfile profile;
    LongitudinalField h_field;

    ChainSpec(int n, double gamma_, CouplingProfile profile_,
              LongitudinalField field = LongitudinalField())
        : n_qubits(n), gamma(gamma_), profile(std::move(profile_)), h_field(std::move(field)) {
        if (n_qubits < 3)
            throw invalid_chain_error("chain needs at least three sites, got N=" +
                                      std::to_string(n_qubits));
        if (!(gamma > 0.0) || !std::isfinite(gamma))
            throw invalid_chain_error("transverse scale Gamma must be positive and finite");
        // boundary terms are negligible only for interaction range well below N/2
        if (2 * profile.m_neighbours() >= n_qubits)
            throw invalid_chain_error("interaction range M must satisfy M < N/2");
        if (!h_field.is_uniform() && h_field.n_sites() != n_qubits)
            throw invalid_chain_error("site-dependent field must provide exactly N values");
    }

    ChainSpec with_field(LongitudinalField f) const {
        return ChainSpec(n_qubits, gamma, profile, std::move(f));
    }

    ChainSpec without_field() const { return with_field(LongitudinalField()); }
};

} // namespace qising
