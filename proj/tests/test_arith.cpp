#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "expsums/arith.hpp"

using namespace expsums;

TEST_CASE("is_prime matches known values") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(97));
    CHECK(is_prime(7919));
    CHECK(is_prime((std::uint64_t(1) << 61) - 1)); // Mersenne
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(561));   // Carmichael
    CHECK_FALSE(is_prime(62745)); // Carmichael
    CHECK_FALSE(is_prime(1000000));
}

TEST_CASE("prime count to 1e6") {
    auto r = primes_in(1, 1000000);
    CHECK(r.primes.size() == 78498);
    CHECK(r.primes.front() == 2);
    CHECK(r.primes.back() == 999983);
}

TEST_CASE("segmented sieve agrees with Miller-Rabin on a high window") {
    auto r = primes_in(1000000, 1001000);
    std::vector<std::uint64_t> oracle;
    for (std::uint64_t n = 1000001; n <= 1001000; ++n)
        if (is_prime(n)) oracle.push_back(n);
    CHECK(r.primes == oracle);
}

TEST_CASE("primes_in rejects bad ranges") {
    CHECK_THROWS_AS(primes_in(5, 5), std::invalid_argument);
    CHECK_THROWS_AS(primes_in(0, 10), std::invalid_argument);
    CHECK_THROWS_AS(primes_in(1, kSieveCeiling + 1), std::invalid_argument);
}

TEST_CASE("factorize reconstructs and yields primes") {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 200; ++t) {
        std::uint64_t n = 1 + rng() % 1000000;
        auto f = factorize(n);
        std::uint64_t prod = 1;
        std::uint64_t prev = 0;
        for (auto [p, e] : f.factors) {
            CHECK(is_prime(p));
            CHECK(p > prev);
            prev = p;
            for (int i = 0; i < e; ++i) prod *= p;
        }
        CHECK(prod == n);
    }
    CHECK(factorize(1).factors.empty());
    CHECK_THROWS_AS(factorize(0), std::invalid_argument);
}

TEST_CASE("totient basics and multiplicativity") {
    CHECK(totient(1) == 1);
    CHECK(totient(2) == 1);
    CHECK(totient(97) == 96);
    CHECK(totient(100) == 40);
    std::mt19937_64 rng(43);
    for (int t = 0; t < 100; ++t) {
        std::uint64_t a = 1 + rng() % 1000, b = 1 + rng() % 1000;
        if (std::gcd(a, b) != 1) continue;
        CHECK(totient(a * b) == totient(a) * totient(b));
    }
}

TEST_CASE("modular helpers agree with wide arithmetic") {
    std::mt19937_64 rng(44);
    for (int t = 0; t < 200; ++t) {
        std::uint64_t m = 2 + rng() % ~std::uint64_t(1);
        std::uint64_t a = rng() % m, b = rng() % m;
        unsigned __int128 wide = static_cast<unsigned __int128>(a) * b % m;
        CHECK(detail::mulmod_u64(a, b, m) == static_cast<std::uint64_t>(wide));
    }
    // Fermat: a^(p-1) = 1 mod p
    for (std::uint64_t p : {1000003ULL, 998244353ULL, (1ULL << 61) - 1}) {
        CHECK(detail::powmod_u64(12345, p - 1, p) == 1);
    }
}
