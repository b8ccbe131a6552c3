#pragma once

#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qising/chain.hpp"
#include "qising/ec3.hpp"
#include "qising/ed_oracle.hpp"
#include "qising/perturbation.hpp"
#include "qising/spectrum.hpp"
#include "qising/table.hpp"

// Subcommand logic behind the command-line tool.  Each runner renders the
// complete output file as a string; writing is the caller's job, so failed
// runs never leave files behind.

namespace qising {

inline constexpr const char* kVersion = "0.1.0";

// Flat key=value configuration with '#' comments; flags override file values.
class RunConfig {
public:
    RunConfig() = default;

    static RunConfig from_file(const std::string& path) {
        std::ifstream is(path);
        if (!is) throw domain_error("cannot open config file " + path);
        RunConfig cfg;
        std::string line;
        int lineno = 0;
        while (std::getline(is, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const auto trimmed = trim(line);
            if (trimmed.empty()) continue;
            const auto eq = trimmed.find('=');
            if (eq == std::string::npos)
                throw domain_error(path + ":" + std::to_string(lineno) +
                                   ": expected key=value, got '" + std::string(trimmed) + "'");
            const auto key = trim(trimmed.substr(0, eq));
            const auto value = trim(trimmed.substr(eq + 1));
            if (key.empty())
                throw domain_error(path + ":" + std::to_string(lineno) + ": empty key");
            cfg.kv_[std::string(key)] = std::string(value);
        }
        return cfg;
    }

    void set(const std::string& key, const std::string& value) { kv_[key] = value; }
    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    std::string get(const std::string& key, const std::string& def) const {
        const auto it = kv_.find(key);
        return it == kv_.end() ? def : it->second;
    }

    double get_double(const std::string& key, double def) const {
        const auto it = kv_.find(key);
        return it == kv_.end() ? def : parse_double(key, it->second);
    }

    long long get_int(const std::string& key, long long def) const {
        const auto it = kv_.find(key);
        return it == kv_.end() ? def : parse_int(key, it->second);
    }

    std::vector<double> get_double_list(const std::string& key,
                                        const std::string& def) const {
        std::vector<double> out;
        for (const auto& tok : split_list(get(key, def)))
            out.push_back(parse_double(key, tok));
        return out;
    }

    std::vector<int> get_int_list(const std::string& key, const std::string& def) const {
        std::vector<int> out;
        for (const auto& tok : split_list(get(key, def)))
            out.push_back(static_cast<int>(parse_int(key, tok)));
        return out;
    }

    // Reject keys this subcommand does not understand.
    void require_known(std::initializer_list<std::string_view> known) const {
        for (const auto& [key, value] : kv_) {
            bool ok = false;
            for (auto k : known)
                if (k == key) ok = true;
            if (!ok) throw domain_error("unknown config field '" + key + "'");
        }
    }

    const std::map<std::string, std::string>& entries() const { return kv_; }

private:
    static std::string_view trim(std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
            s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
            s.remove_suffix(1);
        return s;
    }

    static std::vector<std::string> split_list(const std::string& s) {
        std::vector<std::string> out;
        std::string tok;
        std::istringstream is(s);
        while (std::getline(is, tok, ',')) {
            const auto t = trim(tok);
            if (!t.empty()) out.emplace_back(t);
        }
        return out;
    }

    static double parse_double(const std::string& key, const std::string& s) {
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &pos);
        } catch (const std::exception&) {
            throw domain_error("config field '" + key + "': not a number: '" + s + "'");
        }
        if (pos != s.size())
            throw domain_error("config field '" + key + "': trailing junk in '" + s + "'");
        return v;
    }

    static long long parse_int(const std::string& key, const std::string& s) {
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(s, &pos);
        } catch (const std::exception&) {
            throw domain_error("config field '" + key + "': not an integer: '" + s + "'");
        }
        if (pos != s.size())
            throw domain_error("config field '" + key + "': trailing junk in '" + s + "'");
        return v;
    }

    std::map<std::string, std::string> kv_;
};

namespace detail {

inline void add_header(Table& t, const std::string& command, std::uint64_t seed, char sep,
                       const std::vector<std::pair<std::string, std::string>>& resolved) {
    t.add_comment("qising " + command + " " + kVersion);
    t.add_comment(std::string("format=") + (sep == '\t' ? "tsv" : "csv"));
    t.add_comment("seed=" + std::to_string(seed));
    for (const auto& [k, v] : resolved) t.add_comment(k + "=" + v);
}

} // namespace detail

// Single-quasiparticle levels on a lambda_1 sweep: columns (lambda1, k, Lambda_k).
inline std::string run_spectrum(const RunConfig& cfg, std::uint64_t seed, char sep) {
    cfg.require_known({"n", "gamma", "lambda2", "lambda1_min", "lambda1_max", "lambda1_step"});
    const int n = static_cast<int>(cfg.get_int("n", 51));
    const double gamma = cfg.get_double("gamma", 1.0);
    const double l2 = cfg.get_double("lambda2", 0.1);
    const double l1_min = cfg.get_double("lambda1_min", 0.0);
    const double l1_max = cfg.get_double("lambda1_max", 1.2);
    const double l1_step = cfg.get_double("lambda1_step", 0.01);
    if (!(l1_step > 0.0)) throw domain_error("config field 'lambda1_step': must be positive");
    if (l1_max < l1_min) throw domain_error("config field 'lambda1_max': below lambda1_min");

    Table t({"lambda1", "k", "Lambda_k"});
    detail::add_header(t, "spectrum", seed, sep,
                       {{"gamma", format_double(gamma)},
                        {"lambda1_max", format_double(l1_max)},
                        {"lambda1_min", format_double(l1_min)},
                        {"lambda1_step", format_double(l1_step)},
                        {"lambda2", format_double(l2)},
                        {"n", std::to_string(n)}});
    const auto ks = momentum_indices(n);
    const int steps = static_cast<int>((l1_max - l1_min) / l1_step + 0.5) + 1;
    for (int i = 0; i < steps; ++i) {
        const double l1 = l1_min + i * l1_step;
        const ChainSpec spec(n, gamma, CouplingProfile::explicit_profile({l1, l2}));
        for (int k : ks)
            t.add_row({format_double(l1), std::to_string(k), format_double(lambda_k(spec, k))});
    }
    return t.render(sep);
}

// Minimum gap as a function of the interaction range M for normalized decay
// profiles: columns (M, profile, mingap_over_Gamma).
inline std::string run_mingap(const RunConfig& cfg, std::uint64_t seed, char sep) {
    cfg.require_known({"n", "gamma", "h_over_gamma", "m_min", "m_max", "profile"});
    const int n = static_cast<int>(cfg.get_int("n", 51));
    const double gamma = cfg.get_double("gamma", 1.0);
    const double h_over_gamma = cfg.get_double("h_over_gamma", 0.1);
    const int m_min = static_cast<int>(cfg.get_int("m_min", 1));
    const int m_max = static_cast<int>(cfg.get_int("m_max", 14));
    const std::string which = cfg.get("profile", "both");
    if (which != "both" && which != "linear" && which != "exponential")
        throw domain_error("config field 'profile': expected linear, exponential, or both");
    if (m_min < 1 || m_max < m_min)
        throw domain_error("config field 'm_min'/'m_max': need 1 <= m_min <= m_max");

    Table t({"M", "profile", "mingap_over_Gamma"});
    detail::add_header(t, "mingap", seed, sep,
                       {{"gamma", format_double(gamma)},
                        {"h_over_gamma", format_double(h_over_gamma)},
                        {"m_max", std::to_string(m_max)},
                        {"m_min", std::to_string(m_min)},
                        {"n", std::to_string(n)},
                        {"profile", which}});
    double worst_ratio = 0.0;
    for (int m = m_min; m <= m_max; ++m) {
        for (const char* name : {"linear", "exponential"}) {
            if (which != "both" && which != name) continue;
            const auto profile = std::string(name) == "linear"
                                     ? CouplingProfile::linear_decay(m)
                                     : CouplingProfile::exponential_decay(m);
            const ChainSpec spec(n, gamma, profile,
                                 LongitudinalField::uniform(h_over_gamma * gamma));
            const auto rep = min_gap_with_field(spec);
            worst_ratio = std::max(worst_ratio, rep.validity_ratio);
            t.add_row({std::to_string(m), name, format_double(rep.min_gap_total)});
        }
    }
    t.add_comment("worst_validity_ratio=" + format_double(worst_ratio));
    return t.render(sep);
}

// Dense-diagonalization sweep against the closed-form gap: columns
// (N, lambda1, lambda2, h, gap_oracle, gap_analytic, discrepancy, fit_exponent).
inline std::string run_oracle(const RunConfig& cfg, std::uint64_t seed, char sep) {
    cfg.require_known({"n_list", "gamma", "lambda1", "lambda2", "h_list", "boundary"});
    const auto n_list = cfg.get_int_list("n_list", "9,11,13");
    const double gamma = cfg.get_double("gamma", 1.0);
    const double l1 = cfg.get_double("lambda1", 0.5);
    const double l2 = cfg.get_double("lambda2", 0.0);
    const auto h_list = cfg.get_double_list("h_list", "0");
    const std::string bname = cfg.get("boundary", "periodic");
    if (bname != "periodic" && bname != "open")
        throw domain_error("config field 'boundary': expected periodic or open");
    const Boundary boundary = bname == "periodic" ? Boundary::Periodic : Boundary::Open;

    Table t({"N", "lambda1", "lambda2", "h", "gap_oracle", "gap_analytic", "discrepancy",
             "fit_exponent"});
    detail::add_header(t, "oracle", seed, sep,
                       {{"boundary", bname},
                        {"gamma", format_double(gamma)},
                        {"h_list", cfg.get("h_list", "0")},
                        {"lambda1", format_double(l1)},
                        {"lambda2", format_double(l2)},
                        {"n_list", cfg.get("n_list", "9,11,13")}});
    for (int n : n_list) {
        std::vector<double> positive_h;
        for (double h : h_list)
            if (h > 0.0) positive_h.push_back(h);
        std::string exponent;
        if (positive_h.size() >= 2) {
            const ChainSpec base(n, gamma, CouplingProfile::explicit_profile({l1, l2}));
            exponent = format_double(fit_gap_exponent(base, positive_h, boundary));
        }
        for (std::size_t i = 0; i < h_list.size(); ++i) {
            const double h = h_list[i];
            const ChainSpec spec(n, gamma, CouplingProfile::explicit_profile({l1, l2}),
                                 LongitudinalField::uniform(h));
            const auto rep = compare_to_analytic(spec, boundary);
            const bool last = i + 1 == h_list.size();
            t.add_row({std::to_string(n), format_double(l1), format_double(l2),
                       format_double(h), format_double(rep.gap_oracle),
                       format_double(rep.gap_analytic), format_double(rep.discrepancy),
                       last ? exponent : std::string()});
        }
    }
    return t.render(sep);
}

// Reconstruction-error grid: columns (N, K, M, p, runs, p_E, half_width, seed).
inline std::string run_ec3(const RunConfig& cfg, std::uint64_t seed, char sep) {
    cfg.require_known({"n", "k", "m_list", "p_list", "runs", "pool"});
    const int n = static_cast<int>(cfg.get_int("n", 12));
    const int k = static_cast<int>(cfg.get_int("k", 20));
    const auto m_list = cfg.get_int_list("m_list", "1,2,3,4,5,6,7,8");
    const auto p_list = cfg.get_double_list("p_list", "0.2,0.3,0.4,0.5");
    const int runs = static_cast<int>(cfg.get_int("runs", 1000));
    const int pool = static_cast<int>(cfg.get_int("pool", 500));

    Table t({"N", "K", "M", "p", "runs", "p_E", "half_width", "seed"});
    detail::add_header(t, "ec3", seed, sep,
                       {{"k", std::to_string(k)},
                        {"m_list", cfg.get("m_list", "1,2,3,4,5,6,7,8")},
                        {"n", std::to_string(n)},
                        {"p_list", cfg.get("p_list", "0.2,0.3,0.4,0.5")},
                        {"pool", std::to_string(pool)},
                        {"runs", std::to_string(runs)}});
    std::uint64_t cell_index = 0;
    for (double p : p_list) {
        for (int m : m_list) {
            std::uint64_t state = seed ^ (0x6C62272E07BB0142ULL * (cell_index + 1));
            const std::uint64_t cell_seed = splitmix64(state);
            SimParams params;
            params.n_bits = n;
            params.k_clauses = k;
            params.m_restriction = m;
            params.p_one = p;
            const SimReport rep = estimate_pe(params, runs, cell_seed, pool);
            t.add_row({std::to_string(n), std::to_string(k), std::to_string(m),
                       format_double(p), std::to_string(runs), format_double(rep.p_e),
                       format_double(rep.half_width), std::to_string(cell_seed)});
            ++cell_index;
        }
    }
    return t.render(sep);
}

} // namespace qising
