#ifndef EXPSUMS_ARITH_HPP
#define EXPSUMS_ARITH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "expsums/errors.hpp"

namespace expsums {

// Prime range ceiling: segmented sieving keeps memory at O(sqrt(hi)) plus
// one segment, but we still cap the absolute range.
inline constexpr std::uint64_t kSieveCeiling = std::uint64_t(1) << 50;
inline constexpr std::size_t kSieveSegment = std::size_t(1) << 20;

struct PrimeRange {
    std::uint64_t lo = 0; // exclusive
    std::uint64_t hi = 0; // inclusive
    std::vector<std::uint64_t> primes;
};

struct Factorization {
    std::uint64_t n = 1;
    std::vector<std::pair<std::uint64_t, int>> factors; // (prime, exponent), primes ascending
};

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// Simple sieve of the interval [0, n].
inline std::vector<bool> sieve_flags(std::uint64_t n) {
    std::vector<bool> comp(n + 1, false);
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (comp[p]) continue;
        for (std::uint64_t m = p * p; m <= n; m += p) comp[m] = true;
    }
    comp[0] = true;
    if (n >= 1) comp[1] = true;
    return comp;
}

} // namespace detail

// Deterministic Miller-Rabin, valid for all n < 2^64 with the standard
// 12-witness set.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = detail::powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = detail::mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

// Primes in the half-open range (lo, hi], ascending, by segmented sieve.
inline PrimeRange primes_in(std::uint64_t lo, std::uint64_t hi) {
    if (lo < 1 || lo >= hi) throw std::invalid_argument("primes_in: need 1 <= lo < hi");
    if (hi > kSieveCeiling) throw std::invalid_argument("primes_in: hi exceeds sieve ceiling");

    PrimeRange out;
    out.lo = lo;
    out.hi = hi;

    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 2;
    while (root * root > hi + 1) --root;
    auto base_comp = detail::sieve_flags(root);
    std::vector<std::uint64_t> base;
    for (std::uint64_t p = 2; p <= root; ++p)
        if (!base_comp[p]) base.push_back(p);

    std::vector<bool> seg;
    for (std::uint64_t start = lo + 1; start <= hi; start += kSieveSegment) {
        std::uint64_t end = std::min(hi, start + kSieveSegment - 1);
        seg.assign(end - start + 1, false);
        for (std::uint64_t p : base) {
            if (p * p > end) break;
            std::uint64_t first = std::max(p * p, ((start + p - 1) / p) * p);
            for (std::uint64_t m = first; m <= end; m += p) seg[m - start] = true;
        }
        for (std::uint64_t v = start; v <= end; ++v)
            if (!seg[v - start] && v >= 2) out.primes.push_back(v);
    }
    return out;
}

// Canonical factorization by trial division; n = 1 yields an empty list.
inline Factorization factorize(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be >= 1");
    Factorization f;
    f.n = n;
    std::uint64_t m = n;
    for (std::uint64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (m % p) continue;
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        f.factors.emplace_back(p, e);
    }
    if (m > 1) f.factors.emplace_back(m, 1);
    return f;
}

inline std::uint64_t totient(std::uint64_t q) {
    if (q == 0) throw std::invalid_argument("totient: q must be >= 1");
    std::uint64_t phi = q;
    for (const auto& [p, e] : factorize(q).factors) phi = phi / p * (p - 1);
    return phi;
}

} // namespace expsums

#endif
