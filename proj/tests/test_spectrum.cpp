#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "qising/spectrum.hpp"

using namespace qising;

namespace {

// Independent route for M <= 2: the expanded quadratic form
//   Lambda^2 = 1 + l1^2 + l2^2 + 2 l1 (1 - l2) cos(2 pi k/N) - 2 l2 cos(4 pi k/N),
// evaluated in extended precision.
double lambda_expanded(double l1, double l2, int n, int k) {
    const long double pi = std::numbers::pi_v<long double>;
    const long double c1 = std::cos(2.0L * pi * k / n);
    const long double c2 = std::cos(4.0L * pi * k / n);
    const long double v = 1.0L + (long double)l1 * l1 + (long double)l2 * l2 +
                          2.0L * l1 * (1.0L - (long double)l2) * c1 - 2.0L * l2 * c2;
    return static_cast<double>(std::sqrt(v));
}

ChainSpec two_neighbour(int n, double l1, double l2, double gamma = 1.0) {
    return ChainSpec(n, gamma, CouplingProfile::explicit_profile({l1, l2}));
}

} // namespace

TEST_CASE("momentum grid endpoints and length") {
    CHECK(momentum_indices(4) == std::vector<int>{-2, -1, 0, 1});
    CHECK(momentum_indices(3) == std::vector<int>{-1, 0, 1});
    const auto ks = momentum_indices(51);
    REQUIRE(ks.size() == 51);
    CHECK(ks.front() == -25);
    CHECK(ks.back() == 25);
    CHECK_THROWS_AS(momentum_indices(2), invalid_chain_error);
}

TEST_CASE("lambda_k is 1 for a decoupled chain") {
    for (int n : {3, 4, 7, 10}) {
        const ChainSpec spec(n, 2.0, CouplingProfile::explicit_profile({}));
        for (int k : momentum_indices(n)) CHECK(lambda_k(spec, k) == 1.0);
    }
}

TEST_CASE("lambda_k rejects momenta off the grid") {
    const auto spec = two_neighbour(9, 0.5, 0.1);
    CHECK_THROWS_AS(lambda_k(spec, 5), domain_error);
    CHECK_THROWS_AS(lambda_k(spec, -5), domain_error);
    CHECK_NOTHROW(lambda_k(spec, 4));
}

TEST_CASE("zone-edge mode is gapless at criticality for even N") {
    // sum(lambda) = 1 and k = -N/2 make the quadrature brackets cancel
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 2 * (5 + static_cast<int>(u(gen) * 6)); // even, 10..20
        const int m = 1 + static_cast<int>(u(gen) * 4);
        std::vector<double> ls(m);
        double s = 0.0;
        for (auto& l : ls) {
            l = 0.05 + u(gen);
            s += l;
        }
        for (auto& l : ls) l /= s;
        const ChainSpec spec(n, 1.0, CouplingProfile::explicit_profile(ls));
        CHECK(lambda_k(spec, -n / 2) <= 1e-12);
    }
    CHECK(lambda_k(ChainSpec(4, 1.0, CouplingProfile::explicit_profile({1.0})), -2) <= 1e-12);
}

TEST_CASE("generalized form reduces to the expanded two-neighbour form") {
    std::mt19937 gen(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 1000; ++rep) {
        const int n = 5 + static_cast<int>(u(gen) * 60);
        const double l1 = 2.4 * u(gen) - 1.2;
        const double l2 = 2.4 * u(gen) - 1.2;
        const auto ks = momentum_indices(n);
        const int k = ks[static_cast<std::size_t>(u(gen) * ks.size())];
        const double got = lambda_k(two_neighbour(n, l1, l2), k);
        const double want = lambda_expanded(l1, l2, n, k);
        CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("spectrum is symmetric under k -> -k") {
    std::mt19937 gen(13);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
        const int n = 7 + 2 * static_cast<int>((u(gen) + 1.0) * 10);
        std::vector<double> ls;
        for (int j = 0; j < 5 && 2 * (j + 1) < n / 2; ++j) ls.push_back(u(gen));
        const ChainSpec spec(n, 1.0, CouplingProfile::explicit_profile(ls));
        for (int k : momentum_indices(n)) {
            if (-k > (n - 1) / 2 || (n % 2 == 0 && -k > (n - 2) / 2)) continue;
            CHECK(std::abs(lambda_k(spec, k) - lambda_k(spec, -k)) <= 1e-12);
        }
    }
}

TEST_CASE("decoupled three-site chain") {
    const ChainSpec spec(3, 2.0, CouplingProfile::explicit_profile({}));
    const auto r = spectrum(spec);
    CHECK(r.e_ground == -3.0);        // -(Gamma/2) * 3
    CHECK(r.gap == 2.0);              // Gamma
    CHECK_FALSE(r.degenerate);
}

TEST_CASE("near-critical two-neighbour chain at N=51") {
    const auto spec = two_neighbour(51, 0.9, 0.1);
    const auto r = spectrum(spec);

    // independent minimization over the grid via the expanded form
    double best = 1e300;
    int best_k = 0;
    for (int k : momentum_indices(51)) {
        const double v = lambda_expanded(0.9, 0.1, 51, k);
        if (v < best) {
            best = v;
            best_k = std::abs(k);
        }
    }
    CHECK(best_k == 25);
    CHECK(r.gap_index == 25);
    CHECK(std::abs(r.gap - best) <= 1e-12);
    CHECK(std::abs(r.gap - 0.067738508336111) <= 1e-12);
    // close to the large-N value (pi/N)(1 + lambda2)
    CHECK(std::abs(r.gap - std::numbers::pi / 51 * 1.1) < 2e-4);
    // ground energy is the plain half-sum
    double sum = 0.0;
    for (double l : r.lambda_k) sum += l;
    CHECK(r.e_ground == -0.5 * sum);
}

TEST_CASE("degenerate flag at the critical even chain") {
    const auto r = spectrum(ChainSpec(4, 1.0, CouplingProfile::explicit_profile({1.0})));
    CHECK(r.degenerate);
    CHECK(r.gap <= 1e-12);
}

TEST_CASE("eigenvector components") {
    const auto spec = two_neighbour(9, 0.3, 0.1);
    SECTION("k = 0 is the flat cosine mode") {
        for (int i = 1; i <= 9; ++i)
            CHECK(eigenvector_components(spec, 0, i).phi ==
                  Catch::Approx(std::sqrt(2.0 / 9)).epsilon(1e-14));
    }
    SECTION("decoupled chain has psi = -phi") {
        const ChainSpec free_chain(8, 1.0, CouplingProfile::explicit_profile({}));
        for (int k : momentum_indices(8))
            for (int i : {1, 3, 8}) {
                const auto mc = eigenvector_components(free_chain, k, i);
                CHECK(mc.psi == Catch::Approx(-mc.phi).margin(1e-14));
            }
    }
    SECTION("three-site sine mode") {
        const ChainSpec s3(3, 1.0, CouplingProfile::explicit_profile({}));
        CHECK(eigenvector_components(s3, 1, 1).phi ==
              Catch::Approx(std::sqrt(2.0 / 3) * std::sin(2 * std::numbers::pi / 3))
                  .epsilon(1e-14));
    }
    SECTION("zero mode is rejected") {
        const ChainSpec crit(4, 1.0, CouplingProfile::explicit_profile({1.0}));
        CHECK_THROWS_AS(eigenvector_components(crit, -2, 1), degenerate_mode_error);
    }
    SECTION("site range is checked") {
        CHECK_THROWS_AS(eigenvector_components(spec, 1, 0), domain_error);
        CHECK_THROWS_AS(eigenvector_components(spec, 1, 10), domain_error);
    }
}

TEST_CASE("closed-form gap") {
    SECTION("nearest-neighbour critical chain") {
        const auto g = gap_closed_form(two_neighbour(51, 1.0, 0.0));
        CHECK(std::abs(g.exact - 0.061590117112341) <= 1e-13);
        CHECK(g.large_n == Catch::Approx(std::numbers::pi / 51).epsilon(1e-12));
    }
    SECTION("decoupled chain") {
        const auto g = gap_closed_form(ChainSpec(9, 1.0, CouplingProfile::explicit_profile({})));
        CHECK(g.exact == Catch::Approx(1.0).epsilon(1e-14));
    }
    SECTION("critical line has large-N gap (pi/N)(1 + lambda2)") {
        for (double l2 : {0.0, 0.2, 0.5, 0.8}) {
            const auto g = gap_closed_form(two_neighbour(51, 1.0 - l2, l2));
            CHECK(g.large_n ==
                  Catch::Approx(std::numbers::pi / 51 * (1.0 + l2)).epsilon(1e-12));
        }
    }
    SECTION("matches the grid minimum in the decaying-coupling regime") {
        std::mt19937 gen(17);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int rep = 0; rep < 200; ++rep) {
            const int n = 9 + 2 * static_cast<int>(u(gen) * 22);
            const double l1 = 0.1 + 1.1 * u(gen);
            const double l2 = 0.9 * u(gen) * std::min(1.0, l1);
            const auto spec = two_neighbour(n, l1, l2);
            const auto g = gap_closed_form(spec);
            const auto full = spectrum(spec);
            CHECK(std::abs(g.exact - full.gap) <= 1e-12 * std::max(1.0, full.gap));
        }
    }
    SECTION("regime checks") {
        CHECK_THROWS_AS(gap_closed_form(two_neighbour(51, 0.2, 1.1)), unsupported_regime_error);
        CHECK_THROWS_AS(gap_closed_form(two_neighbour(50, 0.5, 0.1)), domain_error);
        CHECK_THROWS_AS(
            gap_closed_form(ChainSpec(51, 1.0, CouplingProfile::explicit_profile({0.3, 0.3, 0.4}))),
            domain_error);
    }
}

TEST_CASE("minimum gap at criticality") {
    SECTION("nearest neighbour only") {
        const double g = min_gap_at_criticality(CouplingProfile::explicit_profile({1.0}), 1.0, 51);
        CHECK(g == Catch::Approx(std::numbers::pi / 51).epsilon(1e-14));
        CHECK(std::abs(g - 0.0616) < 1e-4);
    }
    SECTION("two equal neighbours") {
        const double g =
            min_gap_at_criticality(CouplingProfile::explicit_profile({0.5, 0.5}), 1.0, 51);
        CHECK(g == Catch::Approx(1.5 * std::numbers::pi / 51).epsilon(1e-14));
    }
    SECTION("normalized linear decay, three neighbours") {
        const auto p = CouplingProfile::linear_decay(3);
        CHECK(p.lambdas()[0] == Catch::Approx(6.0 / 11).epsilon(1e-14));
        CHECK(p.weighted_moment() == Catch::Approx(18.0 / 11).epsilon(1e-14));
        const double g = min_gap_at_criticality(p, 1.0, 51);
        CHECK(g == Catch::Approx(std::numbers::pi / 51 * 18.0 / 11).epsilon(1e-14));
        CHECK(std::abs(g - 0.100799764286304) <= 1e-13);
    }
    SECTION("constraint violations") {
        CHECK_THROWS_AS(
            min_gap_at_criticality(CouplingProfile::explicit_profile({0.7, 0.2}), 1.0, 51),
            constraint_error);
        CHECK_THROWS_AS(min_gap_at_criticality(CouplingProfile::explicit_profile({1.0}), 1.0, 50),
                        domain_error);
    }
    SECTION("strictly grows with the interaction range for both decay laws") {
        for (bool linear : {true, false}) {
            double prev = 0.0;
            for (int m = 1; m <= 14; ++m) {
                const auto p = linear ? CouplingProfile::linear_decay(m)
                                      : CouplingProfile::exponential_decay(m);
                const double g = min_gap_at_criticality(p, 1.0, 51);
                CHECK(g > prev);
                prev = g;
            }
        }
    }
}

TEST_CASE("chain validation") {
    CHECK_THROWS_AS(ChainSpec(2, 1.0, CouplingProfile::explicit_profile({})),
                    invalid_chain_error);
    CHECK_THROWS_AS(ChainSpec(9, 0.0, CouplingProfile::explicit_profile({})),
                    invalid_chain_error);
    // M < N/2
    CHECK_THROWS_AS(ChainSpec(6, 1.0, CouplingProfile::explicit_profile({0.1, 0.1, 0.1})),
                    invalid_chain_error);
    CHECK_THROWS_AS(ChainSpec(9, 1.0, CouplingProfile::explicit_profile({}),
                              LongitudinalField::per_site({0.1, 0.2})),
                    invalid_chain_error);
    const auto p = CouplingProfile::explicit_profile({0.3, 0.7});
    CHECK(p.critical());
    CHECK_FALSE(CouplingProfile::explicit_profile({0.3, 0.6}).critical());
}
