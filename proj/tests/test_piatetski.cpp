#include <catch2/catch_amalgamated.hpp>

#include <memory>

#include "expsums/piatetski.hpp"

using namespace expsums;

namespace {

const TauTable& tau_table() {
    static TauTable t = compute_tau(20000);
    return t;
}

// independent floor(n^c): 80-bit extended evaluation via exp/log
std::uint64_t floor_pow_brute(std::uint64_t n, double c) {
    long double y = expl(static_cast<long double>(c) * logl(static_cast<long double>(n)));
    return static_cast<std::uint64_t>(floorl(y));
}

} // namespace

TEST_CASE("config validation enforces the exponent window") {
    PSConfig bad{0.99, 100};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.c = 12.0 / 11.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.c = 1.05;
    bad.N = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.N = 100;
    CHECK_NOTHROW(bad.validate());
}

TEST_CASE("verified floors agree with a long-double cross-check") {
    for (double c : {1.02, 1.05, 1.08}) {
        for (std::uint64_t n = 1; n <= 5000; ++n) {
            CHECK(detail::floor_pow_verified(n, c) == floor_pow_brute(n, c));
        }
    }
    CHECK(detail::floor_pow_verified(0, 1.05) == 0);
    CHECK(detail::floor_pow_verified(1, 1.05) == 1);
    CHECK(detail::ceil_pow_verified(1, 0.95) == 1);
}

TEST_CASE("exponent one reduces the enumeration to the primes") {
    PSConfig cfg{1.0, 1000};
    auto hits = ps_enumerate(cfg);
    auto ps = primes_in(1, 1000).primes;
    REQUIRE(hits.size() == ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) {
        CHECK(hits[i].n == ps[i]);
        CHECK(hits[i].p == ps[i]);
        CHECK(hits[i].is_prime);
    }
}

TEST_CASE("enumerated floors are prime and ascending") {
    PSConfig cfg{1.05, 4000};
    auto hits = ps_enumerate(cfg);
    REQUIRE_FALSE(hits.empty());
    std::uint64_t prev_n = 0;
    for (const auto& rec : hits) {
        CHECK(rec.n > prev_n);
        prev_n = rec.n;
        CHECK(rec.p == detail::floor_pow_verified(rec.n, cfg.c));
        CHECK(is_prime(rec.p));
    }
}

TEST_CASE("counting identity is exact on interior primes") {
    for (double c : {1.05, 1.08}) {
        PSConfig cfg{c, 2000};
        auto rep = counting_identity_check(cfg);
        CHECK(rep.max_discrepancy_interior == 0);
        CHECK(rep.interior_checked > 0);
    }
}

TEST_CASE("saw tooth point values and periodicity") {
    CHECK(sawtooth(3.25) == Catch::Approx(-0.75));
    CHECK(sawtooth(3.0) == Catch::Approx(-1.0));
    CHECK(sawtooth(0.5) == Catch::Approx(-0.5));
    CHECK(sawtooth(7.9) == Catch::Approx(sawtooth(0.9)).margin(1e-12));
}

TEST_CASE("fourier truncation converges away from the jumps") {
    CHECK_THROWS_AS(sawtooth_fourier(0.3, 0), std::invalid_argument);
    const int J = 1000;
    for (double x = 0.01; x < 1.0; x += 0.013) {
        double dist = std::min(x, 1.0 - x);
        if (dist < 0.01) continue;
        CHECK(std::abs(sawtooth_fourier(x, J) - sawtooth(x)) <= 0.05);
    }
    // tail bound scales like 1/(pi J dist)
    CHECK(std::abs(sawtooth_fourier(0.5, 50) - sawtooth(0.5)) <= 0.01);
}

TEST_CASE("interval-weight comparison is exact at exponent one") {
    CoefficientSequence hecke(CoeffKind::hecke,
                              std::make_shared<const TauTable>(tau_table()));
    PSConfig cfg{1.0, 3000};
    auto rep = theorem3_check(cfg, hecke);
    CHECK(rep.lhs == Catch::Approx(rep.main).margin(1e-9));
}

TEST_CASE("interval-weight comparison error stays small relative to N") {
    CoefficientSequence hecke(CoeffKind::hecke,
                              std::make_shared<const TauTable>(tau_table()));
    for (std::uint64_t N : {2000ULL, 5000ULL, 10000ULL}) {
        PSConfig cfg{1.05, N};
        auto rep = theorem3_check(cfg, hecke);
        CHECK(std::abs(rep.diff) / static_cast<double>(N) < 0.01);
    }
}

TEST_CASE("eigenvalue second-moment report is internally consistent") {
    PSConfig cfg{1.05, 10000};
    auto rep = theorem5_report(cfg, tau_table());
    CHECK(rep.ps_count > 0);
    CHECK(rep.identity_checked > 0);
    CHECK(rep.identity_gap <= 1e-9);
    CHECK(rep.main_term == Catch::Approx(10000.0 / (1.05 * std::log(10000.0))));
    CHECK(rep.ratio == Catch::Approx(rep.sum_lambda_sq / rep.main_term));
    CHECK(rep.ratio > 0.5);
    CHECK(rep.ratio < 1.5);
}
