#include <catch2/catch_amalgamated.hpp>

#include <memory>
#include <random>

#include <mpfr.h>

#include "expsums/expsum.hpp"

using namespace expsums;

namespace {

std::shared_ptr<const TauTable> tau_table(std::uint32_t n_max) {
    static std::shared_ptr<const TauTable> t =
        std::make_shared<const TauTable>(compute_tau(4000));
    REQUIRE(t->n_max >= n_max);
    return t;
}

// 256-bit oracle for sum_{N < n <= N'} a_n e(j n^gamma)
std::complex<double> direct_sum_mpfr(const SumRequest& req) {
    mpfr_t g, jj, x, ph, re, im, sre, sim;
    mpfr_inits2(256, g, jj, x, ph, re, im, sre, sim, (mpfr_ptr)nullptr);
    mpfr_set_d(g, req.f.gamma(), MPFR_RNDN);
    mpfr_set_d(jj, req.f.j(), MPFR_RNDN);
    mpfr_set_zero(sre, 1);
    mpfr_set_zero(sim, 1);
    std::vector<bool> flags;
    if (req.prime_only) {
        flags.assign(req.N_prime - req.N, false);
        for (std::uint64_t p : primes_in(req.N, req.N_prime).primes)
            flags[p - req.N - 1] = true;
    }
    for (std::uint64_t n = req.N + 1; n <= req.N_prime; ++n) {
        if (req.prime_only && !flags[n - req.N - 1]) continue;
        double a = req.coeff(n);
        if (a == 0.0) continue;
        mpfr_set_ui(x, n, MPFR_RNDN);
        mpfr_pow(x, x, g, MPFR_RNDN);   // n^gamma
        mpfr_mul(ph, x, jj, MPFR_RNDN); // j n^gamma
        mpfr_const_pi(x, MPFR_RNDN);
        mpfr_mul_2ui(x, x, 1, MPFR_RNDN); // 2 pi
        mpfr_mul(ph, ph, x, MPFR_RNDN);
        mpfr_sin_cos(im, re, ph, MPFR_RNDN);
        mpfr_mul_d(re, re, a, MPFR_RNDN);
        mpfr_mul_d(im, im, a, MPFR_RNDN);
        mpfr_add(sre, sre, re, MPFR_RNDN);
        mpfr_add(sim, sim, im, MPFR_RNDN);
    }
    std::complex<double> out(mpfr_get_d(sre, MPFR_RNDN), mpfr_get_d(sim, MPFR_RNDN));
    mpfr_clears(g, jj, x, ph, re, im, sre, sim, (mpfr_ptr)nullptr);
    return out;
}

} // namespace

TEST_CASE("default smoothing order follows the defining formula") {
    SumRequest req;
    req.f = PowerAmplitude{2.0, 0.95};
    req.N = 10000;
    req.N_prime = 20000;
    double fN = 2.0 * std::pow(10000.0, 0.95);
    CHECK(req.Q() == Catch::Approx(std::sqrt(10000.0) / std::cbrt(fN)));
    req.explicit_Q = 42.0;
    CHECK(req.Q() == 42.0);
}

TEST_CASE("request validation rejects malformed ranges") {
    SumRequest req;
    req.coeff = CoefficientSequence(CoeffKind::unit, nullptr);
    req.f = PowerAmplitude{1.0, 0.95};
    req.N = 100;
    req.N_prime = 100; // need N < N'
    CHECK_THROWS_AS(req.validate(), std::invalid_argument);
    req.N_prime = 201; // > 2N
    CHECK_THROWS_AS(req.validate(), std::invalid_argument);
    req.N_prime = 150;
    CHECK_NOTHROW(req.validate());
    req.coeff = CoefficientSequence(CoeffKind::hecke, tau_table(200));
    req.N = 3000;
    req.N_prime = 5000; // table too small
    CHECK_THROWS_AS(req.validate(), std::out_of_range);
}

TEST_CASE("direct evaluation matches a 256-bit oracle") {
    auto tau = tau_table(2000);
    std::mt19937_64 rng(0x5eed200);
    for (int t = 0; t < 6; ++t) {
        SumRequest req;
        req.coeff = (t % 2 == 0) ? CoefficientSequence(CoeffKind::unit, nullptr)
                                 : CoefficientSequence(CoeffKind::hecke, tau);
        req.f = PowerAmplitude{1.0 + (t % 3), (t % 2 == 0) ? 0.95 : 0.92};
        req.N = 200 + rng() % 600;
        req.N_prime = req.N + 1 + rng() % req.N;
        req.prime_only = (t >= 4);
        auto got = direct_sum(req);
        auto want = direct_sum_mpfr(req);
        double scale = std::max(1.0, got.abs_sum);
        CHECK(std::abs(got.value - want) <= 1e-8 * scale);
    }
}

TEST_CASE("prime restriction keeps exactly the primes in range") {
    SumRequest req;
    req.coeff = CoefficientSequence(CoeffKind::unit, nullptr);
    req.f = PowerAmplitude{1.0, 0.95};
    req.N = 100;
    req.N_prime = 200;
    req.prime_only = true;
    auto res = direct_sum(req);
    CHECK(res.n_terms == 21); // pi(200) - pi(100)
    CHECK(res.abs_sum == Catch::Approx(21.0));
}

TEST_CASE("bound ratio is reported only in the admissible window") {
    SumRequest req;
    req.coeff = CoefficientSequence(CoeffKind::unit, nullptr);
    req.N = 1000;
    req.N_prime = 2000;

    req.f = PowerAmplitude{1.0, 0.95}; // f(N) = N^0.95, admissible
    CHECK(bound_tracking_admissible(req));
    auto res = direct_sum(req);
    CHECK(res.bound_ratio >= 0.0);
    double scale = std::pow(1000.0, 0.75) * std::pow(req.f.value(1000.0), 1.0 / 6.0);
    CHECK(res.bound_ratio == Catch::Approx(std::abs(res.value) / scale));

    req.f = PowerAmplitude{1.0, 0.5}; // below the window
    CHECK_FALSE(bound_tracking_admissible(req));
    CHECK(direct_sum(req).bound_ratio == -1.0);
}

TEST_CASE("arc regrouping reproduces the direct sum") {
    auto tau = tau_table(4000);
    std::mt19937_64 rng(0x5eed201);
    for (int t = 0; t < 10; ++t) {
        SumRequest req;
        req.coeff = (t % 2 == 0) ? CoefficientSequence(CoeffKind::unit, nullptr)
                                 : CoefficientSequence(CoeffKind::hecke, tau);
        req.f = PowerAmplitude{1.0 + (t % 2), (t % 3 == 0) ? 0.92 : 0.95};
        req.N = 500 + rng() % 1500;
        req.N_prime = req.N + req.N / 2 + rng() % (req.N / 2);
        req.prime_only = (t % 4 == 3);
        auto a = direct_sum(req);
        auto b = farey_decomposed_sum(req, true);
        auto c = farey_decomposed_sum(req, false);
        double scale = std::max(1.0, a.abs_sum);
        CHECK(std::abs(a.value - b.value) <= 1e-9 * scale);
        CHECK(std::abs(a.value - c.value) <= 1e-9 * scale);
        CHECK(a.n_terms == b.n_terms);
    }
}

TEST_CASE("per-arc diagnostics reassemble and have tiny phase residuals") {
    SumRequest req;
    req.coeff = CoefficientSequence(CoeffKind::unit, nullptr);
    req.f = PowerAmplitude{1.0, 0.95};
    req.N = 2000;
    req.N_prime = 4000;
    auto res = farey_decomposed_sum(req, true, true);
    REQUIRE_FALSE(res.per_arc.empty());
    std::complex<double> rebuilt = 0;
    std::uint64_t terms = 0;
    double worst = 0;
    for (const auto& d : res.per_arc) {
        rebuilt += d.factorized;
        terms += d.n_terms;
        worst = std::max(worst, d.max_phase_residual);
    }
    CHECK(std::abs(rebuilt - res.value) <= 1e-9 * std::max(1.0, res.abs_sum));
    CHECK(terms == res.n_terms);
    CHECK(worst <= 1e-10);
}
