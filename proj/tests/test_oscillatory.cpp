#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "expsums/amplitude.hpp"
#include "expsums/eigenforms.hpp"
#include "expsums/oscillatory.hpp"

using namespace expsums;

namespace {

Phase poly_phase(double c2, double c1, double c0) {
    return Phase({[=](double x) { return c2 * x * x + c1 * x + c0; },
                  [=](double x) { return 2 * c2 * x + c1; },
                  [=](double x) { return 2 * c2; }});
}

} // namespace

TEST_CASE("zero phase integrates to the interval length") {
    Phase zero({[](double) { return 0.0; }, [](double) { return 0.0; }});
    auto r = integrate(zero, 0.0, 1.0, 1e-12);
    CHECK(r.converged);
    CHECK(r.value.real() == Catch::Approx(1.0).margin(1e-12));
    CHECK(std::abs(r.value.imag()) < 1e-12);
}

TEST_CASE("linear phase has a closed form") {
    double t = 3.7;
    Phase lin({[=](double x) { return t * x; }, [=](double) { return t; }});
    auto r = integrate(lin, 0.0, 1.0, 1e-12);
    std::complex<double> i2pit(0.0, kTwoPi * t);
    std::complex<double> want = (std::exp(i2pit) - 1.0) / i2pit;
    CHECK(std::abs(r.value - want) < 1e-10);
}

TEST_CASE("quadratic phase matches a finer-tolerance oracle") {
    Phase quad = poly_phase(1.0, 0.0, 0.0);
    auto coarse = integrate(quad, 0.0, 30.0, 1e-8);
    auto fine = integrate(quad, 0.0, 30.0, 1e-12);
    CHECK(coarse.converged);
    CHECK(std::abs(coarse.value - fine.value) < 1e-8);
}

TEST_CASE("halving the tolerance moves results less than the error estimate") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u01(0, 1);
    for (int t = 0; t < 20; ++t) {
        Phase ph = poly_phase(0.1 + 3 * u01(rng), -5 + 10 * u01(rng), u01(rng));
        double a = u01(rng), b = a + 1 + 20 * u01(rng);
        double tol = 1e-6;
        auto r1 = integrate(ph, a, b, tol);
        auto r2 = integrate(ph, a, b, tol / 2);
        CHECK(std::abs(r1.value - r2.value) <= std::max(r1.error, 1e-12) * 10);
    }
}

TEST_CASE("first-derivative ratio obeys the closed-form bound") {
    Phase lin({[](double x) { return 10.0 * x; }, [](double) { return 10.0; },
               [](double) { return 0.0; }});
    double ratio = vdc_bound_check(lin, 1, 0.0, 1.0);
    CHECK(ratio <= 1.0 / M_PI + 1e-9);
}

TEST_CASE("fresnel-type ratio stays under the frozen second-derivative constant") {
    Phase quad = poly_phase(1.0, 0.0, 0.0);
    double ratio = vdc_bound_check(quad, 2, 1.0, 50.0);
    CHECK(ratio <= 1.40);
}

TEST_CASE("vanishing derivative is reported as degenerate") {
    Phase cubic({[](double x) { return x * x * x; }, [](double x) { return 3 * x * x; }});
    CHECK_THROWS_AS(vdc_bound_check(cubic, 1, -1.0, 1.0), degenerate_phase_error);
}

TEST_CASE("perron recovers trivial partial sums") {
    PerronSetup z;
    z.coeffs.assign(10, 0.0);
    z.x1 = 0.5;
    z.x2 = 8.0;
    z.T0 = 100;
    CHECK(std::abs(perron_truncated(z, 5.5)) == 0.0);

    PerronSetup s;
    s.coeffs = {1.0};
    s.x1 = 0.5;
    s.x2 = 2.0;
    s.T0 = 1e3;
    s.sigma = 1.05;
    CHECK(std::abs(perron_truncated(s, 1.5) - std::complex<double>(1.0)) < 5e-3);

    CHECK_THROWS_AS(perron_truncated(s, 0.4), std::invalid_argument);
}

TEST_CASE("perron counts coefficients in a window") {
    PerronSetup s;
    s.coeffs.assign(50, 1.0);
    s.x1 = 10.5;
    s.x2 = 40.0;
    s.T0 = 1e4;
    s.sigma = 1.05;
    CHECK(std::abs(perron_truncated(s, 30.5) - std::complex<double>(20.0)) < 2e-2);
}

TEST_CASE("partial summation identity: constant weight") {
    std::vector<std::complex<double>> C = {1.0, 2.0, -0.5, 3.0};
    auto [direct, rhs] = partial_summation_check(
        C, 2, [](double) { return std::complex<double>(1.0); },
        [](double) { return std::complex<double>(0.0); }, 1.5, 6.5);
    CHECK(std::abs(direct - std::complex<double>(5.5)) < 1e-12);
    CHECK(std::abs(direct - rhs) < 1e-12);
}

TEST_CASE("partial summation identity: linear weight") {
    std::vector<std::complex<double>> C(5, 1.0); // n = 1..5
    auto [direct, rhs] = partial_summation_check(
        C, 1, [](double u) { return std::complex<double>(u); },
        [](double) { return std::complex<double>(1.0); }, 0.5, 5.5);
    CHECK(std::abs(direct - std::complex<double>(15.0)) < 1e-12);
    CHECK(std::abs(direct - rhs) < 1e-9);
}

TEST_CASE("partial summation identity: oscillating weight from a real arc") {
    auto tau = compute_tau(200);
    PowerAmplitude f{1.0, 0.95};
    auto ap = build_approximation(f, 5, 9);
    auto Z = [&](double u) { return e_of(fg_diff(f, ap, static_cast<float128>(u))); };
    auto Zp = [&](double u) {
        double d1 = f.derivative(u, 1) - ap.g_prime(u);
        return std::complex<double>(0.0, kTwoPi * d1) * Z(u);
    };
    std::vector<std::complex<double>> C;
    for (std::uint64_t n = 1; n <= 100; ++n) C.push_back(hecke_lambda(tau, n));
    double x1 = ap.x0 - 50.5, x2 = ap.x0 + 49.5;
    // shift the coefficient window onto the arc
    std::int64_t n0 = static_cast<std::int64_t>(std::floor(x1)) + 1;
    auto [direct, rhs] = partial_summation_check(C, n0, Z, Zp, x1, x2);
    double scale = 0;
    for (auto c : C) scale += std::abs(c);
    CHECK(std::abs(direct - rhs) <= 1e-9 * scale);
}
