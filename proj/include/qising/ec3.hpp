#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qising/errors.hpp"
#include "qising/rng.hpp"

// Monte Carlo study of Exact Cover 3 with locality-restricted clauses on a
// cyclic chain: how often do K restricted clauses fail to pin down a planted
// bit string uniquely?

namespace qising {

// A clause over three distinct 1-based bit positions a < b < c, satisfied when
// exactly one of the three bits is 1.
struct Clause {
    int a = 0, b = 0, c = 0;

    friend bool operator==(const Clause&, const Clause&) = default;
    friend auto operator<=>(const Clause&, const Clause&) = default;
};

inline bool clause_satisfied(const Clause& cl, const std::vector<std::uint8_t>& bits) {
    return bits[static_cast<std::size_t>(cl.a) - 1] + bits[static_cast<std::size_t>(cl.b) - 1] +
               bits[static_cast<std::size_t>(cl.c) - 1] ==
           1;
}

// Restriction predicate on a cyclic chain of n bits: the three positions fit
// inside some arc of length 2M, i.e.
//   c-a <= 2M  or  (a+n)-b <= 2M  or  (b+n)-c <= 2M.
inline bool clause_restricted(const Clause& cl, int m, int n) {
    return (cl.c - cl.a <= 2 * m) || ((cl.a + n) - cl.b <= 2 * m) ||
           ((cl.b + n) - cl.c <= 2 * m);
}

// N independent Bernoulli(p) bits.
inline std::vector<std::uint8_t> plant_bitstring(int n_bits, double p, std::mt19937_64& rng) {
    if (!(p > 0.0) || !(p < 1.0))
        throw domain_error("plant_bitstring requires p in (0, 1)");
    if (n_bits < 1) throw domain_error("plant_bitstring requires at least one bit");
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n_bits));
    for (auto& b : bits) b = bernoulli(rng, p) ? 1 : 0;
    return bits;
}

// All clauses satisfied by the given string, in lexicographic order.
inline std::vector<Clause> satisfied_triples(const std::vector<std::uint8_t>& planted) {
    const int n = static_cast<int>(planted.size());
    std::vector<Clause> out;
    for (int a = 1; a <= n - 2; ++a)
        for (int b = a + 1; b <= n - 1; ++b)
            for (int c = b + 1; c <= n; ++c) {
                const Clause cl{a, b, c};
                if (clause_satisfied(cl, planted)) out.push_back(cl);
            }
    return out;
}

// `count` distinct clauses satisfied by the planted string, sampled uniformly
// over the satisfied set.
inline std::vector<Clause> sample_satisfied_clauses(const std::vector<std::uint8_t>& planted,
                                                    int count, std::mt19937_64& rng) {
    int ones = 0;
    for (auto b : planted) ones += b;
    const int zeros = static_cast<int>(planted.size()) - ones;
    if (ones < 1 || zeros < 2)
        throw domain_error("no satisfied clause exists: need at least one 1-bit and two 0-bits");
    if (count < 0) throw domain_error("clause count must be non-negative");
    std::vector<Clause> valid = satisfied_triples(planted);
    if (static_cast<std::size_t>(count) > valid.size())
        throw insufficient_clauses_error(
            "requested " + std::to_string(count) + " distinct satisfied clauses but only " +
            std::to_string(valid.size()) + " exist");
    // partial Fisher-Yates
    for (int i = 0; i < count; ++i) {
        const auto j = i + static_cast<int>(uniform_below(rng, valid.size() - static_cast<std::size_t>(i)));
        std::swap(valid[static_cast<std::size_t>(i)], valid[static_cast<std::size_t>(j)]);
    }
    valid.resize(static_cast<std::size_t>(count));
    return valid;
}

// Clauses passing the restriction predicate, order preserved.
inline std::vector<Clause> restrict_clauses(const std::vector<Clause>& clauses, int m, int n) {
    std::vector<Clause> out;
    out.reserve(clauses.size());
    for (const auto& cl : clauses)
        if (clause_restricted(cl, m, n)) out.push_back(cl);
    return out;
}

struct UniquenessResult {
    bool unique = false;
    std::optional<std::vector<std::uint8_t>> witness; // a second satisfying string, if any
};

// Exhaustive scan over all 2^N assignments.
inline UniquenessResult has_unique_solution(const std::vector<Clause>& clauses, int n_bits) {
    if (n_bits < 1 || n_bits > 24)
        throw domain_error("exhaustive uniqueness check supports 1 <= N <= 24");
    std::vector<std::uint32_t> masks;
    masks.reserve(clauses.size());
    for (const auto& cl : clauses)
        masks.push_back((1u << (cl.a - 1)) | (1u << (cl.b - 1)) | (1u << (cl.c - 1)));
    std::uint32_t found[2] = {0, 0};
    int count = 0;
    const std::uint32_t end = std::uint32_t{1} << n_bits;
    for (std::uint32_t x = 0; x < end; ++x) {
        bool ok = true;
        for (std::uint32_t m : masks) {
            if (std::popcount(x & m) != 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            found[count] = x;
            if (++count == 2) break;
        }
    }
    UniquenessResult r;
    r.unique = count == 1;
    if (count >= 2) {
        std::vector<std::uint8_t> w(static_cast<std::size_t>(n_bits));
        for (int i = 0; i < n_bits; ++i) w[static_cast<std::size_t>(i)] = (found[1] >> i) & 1;
        r.witness = std::move(w);
    }
    return r;
}

struct ClauseCounts {
    std::vector<int> per_site;          // N_alpha, index 0 <-> site 1
    std::vector<std::vector<int>> per_pair; // M_{alpha,beta}, symmetric, zero diagonal
};

// Occurrence counts: how many clauses involve each site / each pair of sites.
inline ClauseCounts clause_counts(const std::vector<Clause>& clauses, int n_bits) {
    ClauseCounts cc;
    cc.per_site.assign(static_cast<std::size_t>(n_bits), 0);
    cc.per_pair.assign(static_cast<std::size_t>(n_bits),
                       std::vector<int>(static_cast<std::size_t>(n_bits), 0));
    auto bump_pair = [&cc](int x, int y) {
        cc.per_pair[static_cast<std::size_t>(x) - 1][static_cast<std::size_t>(y) - 1] += 1;
        cc.per_pair[static_cast<std::size_t>(y) - 1][static_cast<std::size_t>(x) - 1] += 1;
    };
    for (const auto& cl : clauses) {
        cc.per_site[static_cast<std::size_t>(cl.a) - 1] += 1;
        cc.per_site[static_cast<std::size_t>(cl.b) - 1] += 1;
        cc.per_site[static_cast<std::size_t>(cl.c) - 1] += 1;
        bump_pair(cl.a, cl.b);
        bump_pair(cl.a, cl.c);
        bump_pair(cl.b, cl.c);
    }
    return cc;
}

// A concrete problem instance: planted string plus a restricted clause set.
struct Ec3Instance {
    int n_bits = 0;
    std::vector<std::uint8_t> planted;
    std::vector<Clause> clauses;
    int m_restriction = 0;
    bool cyclic = true;

    void validate() const {
        if (n_bits < 3) throw domain_error("instance needs at least three bits");
        if (static_cast<int>(planted.size()) != n_bits)
            throw domain_error("planted string length differs from n_bits");
        std::set<Clause> seen;
        for (const auto& cl : clauses) {
            if (!(1 <= cl.a && cl.a < cl.b && cl.b < cl.c && cl.c <= n_bits))
                throw domain_error("clause positions must satisfy 1 <= a < b < c <= N");
            if (!clause_satisfied(cl, planted))
                throw domain_error("clause not satisfied by the planted string");
            if (!clause_restricted(cl, m_restriction, n_bits))
                throw domain_error("clause violates the locality restriction");
            if (!seen.insert(cl).second) throw domain_error("duplicate clause");
        }
    }
};

struct SimParams {
    int n_bits = 12;
    int m_restriction = 1;
    double p_one = 0.3; // probability of a planted bit being 1
    int k_clauses = 20;
};

struct SimReport {
    double p_e = 0.0;      // errors / runs, exactly
    int runs = 0;
    std::uint64_t seed = 0;
    double half_width = 0.0; // binomial 95% half-width
    SimParams params;
    int shortage_runs = 0;   // runs that could not collect K restricted clauses
};

// One reconstruction experiment per run:
//   plant a string (degenerate strings are redrawn), draw a pool of satisfied
//   clauses with replacement, keep the restricted ones, pick K of those pool
//   entries, and test whether the planted string is the unique solution.
//   A run errs when it is not, or when no K restricted entries can be
//   collected after doubling the pool up to max_doublings times.
// Each run uses its own stream derived from (seed, run index), so results do
// not depend on execution order.
inline SimReport estimate_pe(const SimParams& params, int runs, std::uint64_t seed,
                             int initial_pool = 500, int max_doublings = 8) {
    if (runs < 1) throw domain_error("estimate_pe requires runs >= 1");
    if (params.k_clauses < 1) throw domain_error("estimate_pe requires K >= 1");
    if (params.n_bits < 3 || params.n_bits > 24)
        throw domain_error("estimate_pe supports 3 <= N <= 24");
    if (!(params.p_one > 0.0) || !(params.p_one < 1.0))
        throw domain_error("estimate_pe requires p in (0, 1)");
    if (initial_pool < 1) throw domain_error("estimate_pe requires a positive pool size");

    int errors = 0;
    int shortages = 0;
    for (int run = 0; run < runs; ++run) {
        auto rng = make_stream(seed, static_cast<std::uint64_t>(run));

        // plant, redrawing strings that admit no satisfied clause
        std::vector<std::uint8_t> planted;
        for (;;) {
            planted = plant_bitstring(params.n_bits, params.p_one, rng);
            int ones = 0;
            for (auto b : planted) ones += b;
            if (ones >= 1 && params.n_bits - ones >= 2) break;
        }
        const std::vector<Clause> valid = satisfied_triples(planted);

        // pool of satisfied clauses drawn with replacement; keep restricted entries
        std::vector<const Clause*> chosen;
        long long pool_size = initial_pool;
        for (int attempt = 0; attempt <= max_doublings; ++attempt, pool_size *= 2) {
            std::vector<const Clause*> restricted_entries;
            for (long long d = 0; d < pool_size; ++d) {
                const Clause& cl = valid[uniform_below(rng, valid.size())];
                if (clause_restricted(cl, params.m_restriction, params.n_bits))
                    restricted_entries.push_back(&cl);
            }
            if (static_cast<int>(restricted_entries.size()) < params.k_clauses) continue;
            for (int i = 0; i < params.k_clauses; ++i) {
                const auto j =
                    i + static_cast<long long>(uniform_below(
                            rng, restricted_entries.size() - static_cast<std::size_t>(i)));
                std::swap(restricted_entries[static_cast<std::size_t>(i)],
                          restricted_entries[static_cast<std::size_t>(j)]);
            }
            restricted_entries.resize(static_cast<std::size_t>(params.k_clauses));
            chosen = std::move(restricted_entries);
            break;
        }

        if (chosen.empty()) {
            // a chain that cannot even be covered cannot be reconstructed
            ++errors;
            ++shortages;
            continue;
        }
        std::vector<Clause> clause_set;
        clause_set.reserve(chosen.size());
        for (const Clause* cl : chosen) clause_set.push_back(*cl);
        std::sort(clause_set.begin(), clause_set.end());
        clause_set.erase(std::unique(clause_set.begin(), clause_set.end()), clause_set.end());
        if (!has_unique_solution(clause_set, params.n_bits).unique) ++errors;
    }

    SimReport rep;
    rep.params = params;
    rep.runs = runs;
    rep.seed = seed;
    rep.shortage_runs = shortages;
    rep.p_e = static_cast<double>(errors) / runs;
    rep.half_width = 1.96 * std::sqrt(rep.p_e * (1.0 - rep.p_e) / runs);
    return rep;
}

// Plain-text instance format: "N M" header, planted bits, one clause per line.
inline void write_instance(std::ostream& os, const Ec3Instance& inst) {
    os << inst.n_bits << ' ' << inst.m_restriction << '\n';
    for (auto b : inst.planted) os << (b ? '1' : '0');
    os << '\n';
    for (const auto& cl : inst.clauses) os << cl.a << ' ' << cl.b << ' ' << cl.c << '\n';
}

inline Ec3Instance read_instance(std::istream& is) {
    Ec3Instance inst;
    std::string line;
    if (!std::getline(is, line)) throw domain_error("instance stream is empty");
    {
        std::istringstream header(line);
        if (!(header >> inst.n_bits >> inst.m_restriction))
            throw domain_error("bad instance header, expected 'N M'");
    }
    if (!std::getline(is, line)) throw domain_error("missing planted string");
    if (static_cast<int>(line.size()) != inst.n_bits)
        throw domain_error("planted string length differs from header N");
    for (char ch : line) {
        if (ch != '0' && ch != '1') throw domain_error("planted string must be 0/1 literals");
        inst.planted.push_back(ch == '1' ? 1 : 0);
    }
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        Clause cl;
        if (!(row >> cl.a >> cl.b >> cl.c)) throw domain_error("bad clause line: " + line);
        inst.clauses.push_back(cl);
    }
    inst.validate();
    return inst;
}

} // namespace qising
